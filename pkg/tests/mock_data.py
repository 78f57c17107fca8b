"""Mock input data for unit tests."""

from copy import deepcopy

# no dependencies
MOCK_ERROR_MSG = "SYSTEM HANDLER"
MOCK_ERROR_MSG_CUSTOM_HANDLER = "CUSTOM HANDLER"
MOCK_GRID_IMAGES = [0, 4, 1, 5, 2, 6, 3, 7]
MOCK_GRID_CYCLES = "(1 4 2)(3 5 6)"
MOCK_TRANSPOSITION = [1, 0]
MOCK_DOUBLE_TRANSPOSITION = [1, 0, 3, 2]
MOCK_PERMUTATION_INVALID = [0, 0]
MOCK_N = {
    "rank": 1,
    "generators": [[1]],
}
MOCK_NN2 = {
    "rank": 2,
    "generators": [[1, 0], [0, 1]],
}
MOCK_NUMERICAL = {
    "rank": 1,
    "generators": [[2], [3]],
}
MOCK_Z = {
    "rank": 1,
    "generators": [[1], [-1]],
}
MOCK_DIAGONAL = {
    "rank": 2,
    "generators": [[1, 1], [1, 2]],
}
MOCK_IDEMPOTENT = {
    "size": 2,
    "table": [[0, 1], [1, 1]],
    "zero": 0,
}
MOCK_Z3_TABLE = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
MOCK_Z2_TABLE = [[0, 1], [1, 0]]
MOCK_RHO_Z3 = {
    "p": 2,
    "coordinates": [[0, 2, 1], [0, 2, 1]],
    "witnesses": [0],
}
MOCK_TRIVIAL_BIALGEBRA = {
    "p": 2,
    "D": 0,
    "W": 0,
    "basis": [{"name": "1", "degree": 0, "weight": 0}],
    "mult": [[0, 0, [[0, 1]]]],
    "comult": [[0, [[0, 0, 1]]]],
    "unit": 0,
    "counit": [[0, 1]],
}
MOCK_SKEW_BIALGEBRA = {
    "p": 2,
    "D": 1,
    "W": 0,
    "basis": [
        {"name": "1", "degree": 0, "weight": 0},
        {"name": "e", "degree": 0, "weight": 0},
        {"name": "x", "degree": 1, "weight": 0},
    ],
    "mult": [
        [0, 0, [[0, 1]]],
        [0, 1, [[1, 1]]],
        [1, 0, [[1, 1]]],
        [1, 1, [[1, 1]]],
        [0, 2, [[2, 1]]],
        [2, 0, [[2, 1]]],
    ],
    "comult": [
        [0, [[0, 0, 1]]],
        [1, [[1, 1, 1]]],
        [2, [[2, 1, 1], [0, 2, 1]]],
    ],
    "unit": 0,
    "counit": [[0, 1], [1, 1]],
}

# with dependencies
MOCK_MONOID_INVALID = deepcopy(MOCK_IDEMPOTENT)
MOCK_MONOID_INVALID['table'] = [[0, 1], [0, 1]]
MOCK_AFFINE_INVALID = deepcopy(MOCK_NN2)
MOCK_AFFINE_INVALID['generators'] = [[1, 0], [1]]
MOCK_RHO_NOT_DIAGONAL = deepcopy(MOCK_RHO_Z3)
MOCK_RHO_NOT_DIAGONAL['coordinates'] = [[0, 1, 2], [0, 1, 2]]
MOCK_RHO_MALFORMED = deepcopy(MOCK_RHO_Z3)
MOCK_RHO_MALFORMED['p'] = 1
MOCK_ACTION_Z2_ON_Z3 = {
    "group": {"size": 2, "table": MOCK_Z2_TABLE},
    "module": {"size": 3, "table": MOCK_Z3_TABLE},
    "action": [[0, 1, 2], [0, 2, 1]],
}
MOCK_HOM_N_IDENTITY = {
    "source": MOCK_N,
    "target": MOCK_N,
    "type": "affine",
    "images": [[1]],
}
MOCK_HOM_IDEMPOTENT_IDENTITY = {
    "source": MOCK_IDEMPOTENT,
    "target": MOCK_IDEMPOTENT,
    "type": "finite",
    "images": [0, 1],
}
MOCK_HOM_WRONG_TYPE = deepcopy(MOCK_HOM_N_IDENTITY)
MOCK_HOM_WRONG_TYPE['type'] = 'finite'
