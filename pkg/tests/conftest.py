import pytest

from paramodforms.jacobi import from_series
from paramodforms.paramodular import gritsenko_lift
from paramodforms.theta import ThetaBlockSpec, tb_expand

PHI37 = "TB(2; 1,1,1,2,2,2,3,3,4,5)"


def jacobi_tb(notation, weight, index, precision, holomorphy="cusp"):
    return from_series(tb_expand(ThetaBlockSpec.parse(notation), precision), weight, index,
                       holomorphy)


def partitions_into_squares(total, parts, largest):
    """Non-increasing tuples of ``parts`` positive integers with sum of squares ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for r in range(min(largest, int(total ** 0.5)), 0, -1):
        if r * r * parts < total:
            break
        for rest in partitions_into_squares(total - r * r, parts - 1, r):
            yield (r,) + rest


@pytest.fixture(scope="session")
def phi37():
    return jacobi_tb(PHI37, 2, 37, 32)


@pytest.fixture(scope="session")
def lift37(phi37):
    return gritsenko_lift(phi37, 330)
