"""Time the numba kernels against the pure-numpy fallback.

Each backend runs in a child process because the choice is made at import
time from ``PARAMODFORMS_NO_NUMBA``.  Usage::

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys
import time

CHILD = r"""
import json, sys, time
import numpy as np
from paramodforms import kernels, theta
from paramodforms.theta import ThetaBlockSpec

repeat = int(sys.argv[1])
p = (1 << 61) - 1
rng = np.random.default_rng(0)

def best(fn):
    fn()  # warm-up, includes JIT compilation
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return min(out)

A0 = rng.integers(0, 1000, size=(200, 161), dtype=np.int64)
def binom():
    A = A0.copy()
    for a in range(1, 40):
        kernels.mul_binomial(A, a, a % 7 - 3, p)
        kernels.div_binomial(A, a, (a + 2) % 5 - 2, p)

M = rng.integers(0, 1000, size=(150, 200), dtype=np.int64)
X = rng.integers(0, 1000, size=(60, 81), dtype=np.int64)
Y = rng.integers(0, 1000, size=(60, 81), dtype=np.int64)
spec = ThetaBlockSpec.parse("TB(2; 8,5,4,3,3,2,2,1,1,1)")

res = {
    "backend": kernels.backend(),
    "binomial_mul_div": best(binom),
    "rank_mod_p_150x200": best(lambda: kernels.rank_mod_p(M, 1000003)),
    "conv2d_60x81": best(lambda: kernels.conv2d_mod_p(X, Y, 1000003)),
    "residue_scan_1e6": best(lambda: kernels.residue_scan(-10**6, 10**6, 7, 996)),
    "tb_expand_weight2_P60": best(lambda: theta.tb_expand(spec, 60)),
}
print(json.dumps(res))
"""


def run(no_numba, repeat):
    env = dict(os.environ, PARAMODFORMS_NO_NUMBA="1" if no_numba else "0")
    out = subprocess.run([sys.executable, "-c", CHILD, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    t = time.perf_counter()
    nb, np_ = run(False, args.repeat), run(True, args.repeat)
    print(f"{'kernel':28s} {nb['backend']:>10s} {np_['backend']:>10s} {'speedup':>8s}")
    for key in nb:
        if key == "backend":
            continue
        print(f"{key:28s} {nb[key]:10.4f} {np_[key]:10.4f} {np_[key] / nb[key]:8.1f}x")
    print(f"total wall time {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
