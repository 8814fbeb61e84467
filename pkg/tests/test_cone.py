from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from polyface.cone import (
    FacetId,
    NotExtremeRayError,
    NotPolymatroidError,
    ProportionalRaysError,
    enumerate_facets,
    facet_count,
    is_extreme_ray,
    is_two_face,
    minimal_face_dim,
    modular_or_tight_check,
    slack,
    tight_set,
)
from polyface.linalg import nullity, rank
from polyface.setfn import RankVector

from conftest import U, rv


def oracle_face_dim(h):
    """Nullity of the tight polymatroid axioms (all pairs A, B, not just elemental
    ones), computed by sympy over the 2^n - 1 nonempty-subset coordinates."""
    n = h.n
    v = h.values
    rows = []
    for A, B in product(range(1 << n), repeat=2):
        if A & B == A and A != B and v[A] == v[B]:
            rows.append({B: 1, A: -1})
        if A < B and v[A] + v[B] == v[A & B] + v[A | B] and A & B != A and A & B != B:
            r = {}
            for m, c in ((A, 1), (B, 1), (A & B, -1), (A | B, -1)):
                r[m] = r.get(m, 0) + c
            rows.append(r)
    cols = (1 << n) - 1
    if not rows:
        return cols
    M = sympy.Matrix([[r.get(m, 0) for m in range(1, 1 << n)] for r in rows])
    return cols - M.rank()


def test_facet_examples():
    assert len(enumerate_facets(3)) == 9
    assert len(enumerate_facets(4)) == 28
    assert [str(f) for f in enumerate_facets(2)] == ["F(1)", "F(2)", "F(1;2|)"]
    for n in range(1, 9):
        assert len(enumerate_facets(n)) == facet_count(n)


def test_facet_strings_round_trip():
    for f in enumerate_facets(4):
        assert FacetId.parse(str(f)) == f
    assert FacetId.parse("F(1;2|∅)") == FacetId.parse("F(1;2|)")
    assert str(FacetId.parse("F(1;2|3,4)")) == "F(1;2|3,4)"


def test_facets_sorted_and_distinct():
    fs = enumerate_facets(5)
    assert fs == sorted(fs)
    assert len(set(fs)) == len(fs)


def test_slack_examples():
    u23 = U(2, [1, 2, 3], 3)
    assert slack(u23, FacetId.parse("F(1)")) == 0
    assert slack(u23, FacetId.parse("F(1;2|3)")) == 1
    assert slack(U(1, [1], 3), FacetId.parse("F(1)")) == 1


def test_tight_set_examples():
    got = [str(f) for f in tight_set(U(2, [1, 2, 3], 3))]
    assert got == ["F(1)", "F(2)", "F(3)", "F(1;2|)", "F(1;3|)", "F(2;3|)"]
    modular = RankVector.from_function(3, lambda m: sum(i + 1 for i in range(3) if m >> i & 1))
    assert all(f.kind == "submodular" for f in tight_set(modular))
    assert len(tight_set(modular)) == 6
    assert tight_set(RankVector.zero(3)) == enumerate_facets(3)
    with pytest.raises(NotPolymatroidError):
        tight_set(rv(2, [0, 1, 1, 3]))


def test_face_dim_examples():
    u23 = U(2, [1, 2, 3], 3)
    assert minimal_face_dim(u23) == 1
    assert minimal_face_dim(u23 + U(1, [1], 3)) == 2
    assert minimal_face_dim(u23 + U(1, [1, 2, 3], 3)) == 4
    assert oracle_face_dim(u23 + U(1, [1, 2, 3], 3)) == 4


def test_extreme_examples():
    u23 = U(2, [1, 2, 3], 3)
    assert is_extreme_ray(u23)
    assert is_extreme_ray(U(1, [1, 2, 3], 3))
    assert not is_extreme_ray(u23 + U(1, [1], 3))
    with pytest.raises(ValueError):
        is_extreme_ray(RankVector.zero(3))


def test_two_face_examples():
    assert is_two_face(U(2, [1, 2, 3], 3), U(1, [1], 3))
    assert is_two_face(U(2, [1, 2, 3, 4], 4), U(1, [1, 2], 4))
    assert not is_two_face(U(2, [1, 2, 3], 3), U(1, [1, 2, 3], 3))


def test_two_face_preconditions():
    u23 = U(2, [1, 2, 3], 3)
    with pytest.raises(NotExtremeRayError):
        is_two_face(u23 + U(1, [1], 3), u23)
    with pytest.raises(ProportionalRaysError):
        is_two_face(u23, u23.scale(3))


def test_modular_or_tight_examples():
    assert modular_or_tight_check(U(1, [2], 4))
    assert modular_or_tight_check(U(2, [1, 2, 3], 3))
    assert modular_or_tight_check(U(3, [1, 2, 3, 4], 4))


def test_face_dim_matches_oracle_on_catalog_pairs(cat):
    small = [M for M in cat if M.n <= 4 and M.rank >= 1]
    checked = 0
    for M in small[::3]:
        for alpha in (1, 0b11, (1 << M.n) - 1):
            h = M.rank_vector + U(1, [i + 1 for i in range(M.n) if alpha >> i & 1], M.n)
            assert minimal_face_dim(h) == oracle_face_dim(h), (M, alpha)
            checked += 1
    assert checked > 20


# generators of Gamma_3: uniform matroids on subsets
_gens3 = [U(k, a, 3) for k, a in [(1, [1]), (1, [2]), (1, [3]), (1, [1, 2]), (1, [2, 3]),
                                  (1, [1, 3]), (1, [1, 2, 3]), (2, [1, 2, 3])]]
polymatroids3 = st.lists(st.integers(0, 2), min_size=8, max_size=8).map(
    lambda cs: RankVector(3, [sum(c * g.values[m] for c, g in zip(cs, _gens3))
                              for m in range(8)]))


@settings(max_examples=60, deadline=None)
@given(polymatroids3)
def test_face_dim_against_sympy(h):
    assert minimal_face_dim(h) == oracle_face_dim(h)


@given(polymatroids3, st.fractions(min_value=Fraction(1, 5), max_value=9))
def test_face_invariant_under_scaling(h, c):
    assert tight_set(h.scale(c)) == tight_set(h)
    assert minimal_face_dim(h.scale(c)) == minimal_face_dim(h)


@settings(deadline=None)
@given(st.sampled_from(_gens3), st.sampled_from(_gens3))
def test_sum_of_distinct_rays_has_dim_at_least_two(h1, h2):
    if h1 != h2:
        assert minimal_face_dim(h1 + h2) >= 2


@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=6))
def test_linalg_rank_against_sympy(rows):
    sparse = [{j: x for j, x in enumerate(r) if x} for r in rows]
    assert rank(sparse) == sympy.Matrix(rows).rank()
    assert nullity(sparse, 5) == 5 - sympy.Matrix(rows).rank()


def test_linalg_fractions():
    rows = [{0: Fraction(1, 2), 1: Fraction(1, 3)}, {0: 3, 1: 2}]
    assert rank(rows) == 1
