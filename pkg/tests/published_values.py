"""Published values used as fixed expectations (singular parts and Humbert tables)."""


def _symmetric(zero_row, higher, c00=4):
    out = {(0, 0): c00}
    for r, c in zero_row.items():
        out[(0, r)] = out[(0, -r)] = c
    for (n, r), c in higher.items():
        out[(n, r)] = out[(n, -r)] = c
    return out


PSI249 = "8/1,18/6,14/7"
PSI295 = "12/3,15/5,12/6,14/7"

SINGULAR_249 = _symmetric(
    {1: 3, 2: 2, 3: 2, 4: 2, 5: 2, 6: 3, 7: 2, 8: 1, 9: 1, 10: 1, 11: 1, 12: 1, 13: 1},
    {(2, 45): 1, (5, 71): 1, (6, 78): 1, (7, 84): 1, (8, 90): 1, (24, 155): 1,
     (26, 161): 1, (28, 167): 1, (43, 207): -1, (54, 232): 1})

SINGULAR_295 = _symmetric(
    {1: 2, 2: 2, 3: 3, 4: 2, 5: 2, 6: 2, 7: 2, 8: 1, 9: 1, 10: 2, 11: 1, 13: 1, 16: 1},
    {(4, 69): 1, (7, 91): -1, (10, 109): 1, (11, 114): 1, (12, 119): 1, (25, 172): 1,
     (27, 179): 1, (28, 182): 1, (29, 185): 2, (37, 209): -1, (41, 220): 1,
     (42, 223): 1, (44, 228): 1, (46, 233): 1, (59, 264): 1})

# the published row (3, 2) is read as (4, 2): d = 3, r = 2 is not realizable at 249
HUMBERT_249 = [
    (1, 1, 22), (1, 167, 10), (4, 2, 10), (4, 164, 4), (9, 3, 7), (12, 192, 1),
    (16, 4, 4), (16, 170, 1), (21, 207, 0), (25, 5, 3), (25, 161, 1), (33, 45, 2),
    (36, 6, 4), (40, 232, 1), (49, 7, 2), (61, 71, 1), (64, 8, 1), (81, 9, 1),
    (84, 84, 1), (100, 10, 1), (108, 78, 1), (121, 11, 1), (121, 155, 1), (132, 90, 1),
    (144, 12, 1), (169, 13, 1)]

HUMBERT_295 = [
    (1, 1, 22), (1, 119, 10), (4, 2, 10), (4, 238, 4), (5, 185, 3), (9, 3, 6),
    (9, 233, 2), (16, 4, 4), (16, 114, 2), (20, 220, 1), (21, 91, 0), (21, 209, 0),
    (25, 5, 4), (36, 6, 2), (41, 69, 1), (49, 7, 2), (64, 8, 2), (64, 228, 1),
    (76, 264, 1), (81, 9, 1), (81, 109, 1), (84, 172, 1), (84, 182, 1), (100, 10, 2),
    (121, 11, 1), (169, 13, 1), (169, 223, 1), (181, 179, 1), (256, 16, 1)]

INVARIANTS = {249: (2, 2, 63, 498, 0, 1), 295: (2, 2, 68, 590, 0, 1)}

EULER_FACTORS = [((-2, 0, 2), "1+2T+3T^2+4T^3+4T^4"),
                 ((0, -3, 5), "1+2T^2+25T^4"),
                 ((-1, 0, 3), "1+T+3T^3+9T^4")]
