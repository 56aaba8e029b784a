"""Small shared helpers for the test modules."""

import numpy as np


def uniform(n, seed):
    return np.random.default_rng(seed).random((n, 2))


#: one "PASS/FAIL criterion N: ..." line per acceptance test, in run order
VERDICTS: list[str] = []
