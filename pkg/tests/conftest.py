import math
from fractions import Fraction
from itertools import product

import pytest

from polyface.matroid import catalog, uniform
from polyface.setfn import RankVector, mask_of

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def cat():
    return catalog(6)


def axiom_violations(h):
    """Brute-force check of normalization, monotonicity and submodularity over all pairs."""
    n = h.n
    v = h.values
    bad = []
    if v[0] != 0:
        bad.append(("normalization",))
    for A, B in product(range(1 << n), repeat=2):
        if v[A] < 0:
            bad.append(("nonneg", A))
        if A & B == A and v[A] > v[B] + 1e-12:
            bad.append(("monotone", A, B))
        if v[A] + v[B] < v[A & B] + v[A | B] - 1e-12:
            bad.append(("submodular", A, B))
    return bad


def U(k, alpha, n):
    """Rank vector of U_{k,|alpha|}^{alpha,n}; alpha given as a list of elements."""
    return uniform(k, mask_of(alpha), n).rank_vector


def rv(n, values):
    return RankVector(n, [Fraction(x) for x in values])


LN2 = math.log(2)
LN3 = math.log(3)
