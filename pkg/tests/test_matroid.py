from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from polyface.cone import is_extreme_ray
from polyface.matroid import (
    Matroid,
    MatroidError,
    UniformSpec,
    as_uniform,
    circuit_noncontainment_check,
    circuits,
    direct_sum,
    extend,
    is_connected_after_loop_deletion,
    loops,
    parallel_classes,
    parallel_pairs,
    rank_from_circuits,
    simplification,
    uniform,
)
from polyface.setfn import mask_of, popcount


def brute_circuits(M):
    dependent = [A for A in range(1, 1 << M.n) if M.r(A) < popcount(A)]
    return sorted(A for A in dependent
                  if not any(B != A and B & A == B for B in dependent))


def brute_rank(n, circs, A):
    best = 0
    for B in range(1 << n):
        if B & A == B and not any(C & B == C for C in circs):
            best = max(best, popcount(B))
    return best


def test_uniform_examples():
    M = uniform(1, mask_of([1, 2]), 3)
    assert M.r(0b011) == 1 and M.r(0b100) == 0
    assert uniform(2, 3).r(0b111) == 2
    M = uniform(UniformSpec(1, mask_of([2]), 3))
    assert M.r(0b010) == 1 and M.r(0b101) == 0


def test_uniform_spec_validation():
    with pytest.raises(MatroidError):
        UniformSpec(3, 0b11, 3)
    with pytest.raises(MatroidError):
        UniformSpec(1, 0b1000, 3)
    with pytest.raises(MatroidError):
        UniformSpec(0, 0b1, 3)


def test_matroid_validation():
    with pytest.raises(MatroidError):
        Matroid(2, [0, 2, 1, 2])
    with pytest.raises(MatroidError):
        Matroid(2, [0, 1, 1, 0])


def test_circuit_examples():
    assert circuits(uniform(2, 3)) == [0b111]
    assert sorted(circuits(uniform(1, mask_of([1, 2]), 3))) == sorted([0b011, 0b100])
    assert set(circuits(uniform(2, 5))) == {mask_of(c) for c in combinations(range(1, 6), 3)}


def test_rank_from_circuits_examples():
    assert rank_from_circuits(3, [[1, 2, 3]]) == uniform(2, 3)
    M = rank_from_circuits(3, [[3]])
    assert all(M.r(A) == popcount(A & 0b011) for A in range(8))
    assert rank_from_circuits(2, []) == uniform(2, 2)


def test_rank_from_circuits_rejects_bad_families():
    with pytest.raises(MatroidError, match="circuit axioms violated"):
        rank_from_circuits(4, [[1, 2], [2, 3, 4]])  # elimination fails: {1,3,4} must be dependent
    with pytest.raises(MatroidError):
        rank_from_circuits(3, [[1, 2], [1, 2, 3]])  # not an antichain


def test_loops_and_parallel():
    M = uniform(1, mask_of([1, 2]), 3)
    assert loops(M) == 0b100
    assert parallel_pairs(M) == [(1, 2)]
    assert loops(uniform(2, 3)) == 0 and parallel_pairs(uniform(2, 3)) == []
    assert parallel_pairs(uniform(1, 3)) == [(1, 2), (1, 3), (2, 3)]
    assert parallel_classes(M) == [0b011]


def test_connectivity_examples():
    assert is_connected_after_loop_deletion(uniform(2, 4))
    assert not is_connected_after_loop_deletion(direct_sum(uniform(1, 1), uniform(1, 1)))
    assert is_connected_after_loop_deletion(uniform(1, mask_of([2]), 4))


def test_noncontainment_examples():
    assert circuit_noncontainment_check(uniform(2, 3), uniform(1, mask_of([1, 2]), 3))
    assert circuit_noncontainment_check(uniform(2, 4), uniform(3, 4))
    with pytest.raises(ValueError):
        circuit_noncontainment_check(uniform(2, 3), uniform(2, 3))


def test_simplification():
    M = extend(uniform(2, 3), [1, 1, 2, 0, 3])
    simple, image = simplification(M)
    assert as_uniform(simple) == (2, 3)
    assert image == [1, 1, 2, 0, 3]


def test_relabel():
    M = uniform(1, mask_of([1, 2]), 3)
    assert M.relabel([3, 1, 2]) == uniform(1, mask_of([3, 1]), 3)


def test_catalog_size(cat):
    assert len(cat) >= 60
    assert len(set(cat)) == len(cat)
    assert all(M.n <= 6 for M in cat)
    assert any(not is_connected_after_loop_deletion(M) for M in cat)


def test_catalog_circuits_brute_force(cat):
    for M in cat:
        if M.n <= 5:
            assert sorted(circuits(M)) == brute_circuits(M), M


def test_catalog_round_trip(cat):
    for M in cat:
        assert rank_from_circuits(M.n, M.circuits) == M


def test_rank_from_circuits_brute_force(cat):
    for M in cat:
        if M.n <= 4:
            C = M.circuits
            assert all(M.r(A) == brute_rank(M.n, C, A) for A in range(1 << M.n))


def test_uniform_circuit_formula():
    for n in range(1, 6):
        for alpha in range(1, 1 << n):
            a = [i + 1 for i in range(n) if alpha >> i & 1]
            for k in range(1, len(a) + 1):
                want = {mask_of(c) for c in combinations(a, k + 1)}
                want |= {1 << i for i in range(n) if not alpha >> i & 1}
                assert set(circuits(uniform(k, alpha, n))) == want


def test_connected_iff_extreme(cat):
    for M in cat:
        if M.rank >= 1:
            assert is_extreme_ray(M.rank_vector) == is_connected_after_loop_deletion(M), M


@given(st.sampled_from([uniform(2, 4), extend(uniform(2, 3), [1, 2, 3, 0]),
                        uniform(1, mask_of([1, 3]), 4), direct_sum(uniform(1, 2), uniform(1, 2))]),
       st.permutations([1, 2, 3, 4]))
def test_relabel_preserves_structure(M, perm):
    N = M.relabel(perm)
    assert sorted(popcount(c) for c in circuits(N)) == sorted(popcount(c) for c in circuits(M))
    assert is_connected_after_loop_deletion(N) == is_connected_after_loop_deletion(M)
    assert popcount(loops(N)) == popcount(loops(M))
