"""K_0 differential tables transcribed as data (mod 2, signs dropped).

CFK row k: the source offsets (di, dj) of [x_k, i + di, i + dj] and the
terms (target, n_w, n_z), where n_w and n_z are the drops of the two
coordinates.
"""

CFK_K0 = {
    1: ((1, 0), ((7, 2, 0), (10, 1, 0), (21, 1, 1), (24, 0, 1))),
    2: ((1, 1), ((1, 0, 1), (3, 1, 0), (9, 1, 0), (23, 0, 1))),
    3: ((0, 1), ((7, 1, 1), (8, 1, 0), (21, 0, 2), (22, 0, 1))),
    4: ((0, 0), ((7, 1, 0), (21, 0, 1))),
    5: ((0, 1), ((4, 0, 1), (6, 1, 0), (20, 0, 1))),
    6: ((-1, 1), ((7, 0, 1), (19, 0, 1))),
    7: ((-1, 0), ((18, 0, 1),)),
    8: ((-1, 1), ((17, 0, 1),)),
    9: ((0, 1), ((8, 1, 0), (10, 0, 1), (16, 0, 1))),
    10: ((0, 0), ((15, 0, 1),)),
    11: ((-1, 0), ((14, 0, 1),)),
    12: ((0, 0), ((11, 1, 0), (13, 0, 1))),
    13: ((0, -1), ((14, 1, 0),)),
    14: ((-1, -1), ()),
    15: ((0, -1), ()),
    16: ((0, 0), ((15, 0, 1), (17, 1, 0))),
    17: ((-1, 0), ()),
    18: ((-1, -1), ()),
    19: ((-1, 0), ((18, 0, 1),)),
    20: ((0, 0), ((19, 1, 0), (21, 0, 1))),
    21: ((0, -1), ((18, 1, 0),)),
    22: ((0, 0), ((17, 1, 0),)),
    23: ((1, 0), ((16, 1, 0), (22, 1, 0), (24, 0, 1))),
    24: ((1, -1), ((15, 1, 0),)),
    25: ((0, -1), ((14, 1, 0),)),
    26: ((1, -1), ((13, 1, 0), (25, 1, 0))),
    27: ((1, 0), ((12, 1, 0), (26, 0, 1), (28, 1, 0))),
    28: ((0, 0), ((11, 1, 0), (25, 0, 1))),
    29: ((1, 0), ((10, 1, 0), (11, 2, 0), (24, 0, 1), (25, 1, 1))),
    30: ((1, 1), ((9, 1, 0), (23, 0, 1), (29, 0, 1), (31, 1, 0))),
    31: ((0, 1), ((8, 1, 0), (11, 1, 1), (22, 0, 1), (25, 0, 2))),
}
HAT_S3_K0 = {
    1: (24,),
    2: (1, 23),
    3: (21, 22),
    4: (21,),
    5: (4, 20),
    6: (7, 19),
    7: (18,),
    8: (17,),
    9: (10, 16),
    10: (15,),
    11: (14,),
    12: (13,),
    13: (),
    14: (),
    15: (),
    16: (15,),
    17: (),
    18: (),
    19: (18,),
    20: (21,),
    21: (),
    22: (),
    23: (24,),
    24: (),
    25: (),
    26: (),
    27: (26,),
    28: (25,),
    29: (24,),
    30: (23, 29),
    31: (22, 25),
}
