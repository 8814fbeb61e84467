"""Property sweeps over the bundled matroid catalog."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cone import (
    enumerate_facets,
    facet_count,
    is_extreme_ray,
    minimal_face_dim,
    modular_or_tight_check,
    proportional,
)
from .matroid import (
    Matroid,
    catalog,
    circuit_noncontainment_check,
    circuits,
    is_connected_after_loop_deletion,
    rank_from_circuits,
    uniform,
)
from .setfn import elements_of, mask_of


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<40} {self.checked - len(self.failures)}/{self.checked}"


def connected(cat: list[Matroid]) -> list[Matroid]:
    return [M for M in cat if M.rank >= 1 and is_connected_after_loop_deletion(M)]


def facet_counts(max_n: int = 6) -> SweepResult:
    res = SweepResult("facet count n + C(n,2) 2^(n-2)")
    for n in range(2, max_n + 1):
        res.checked += 1
        got = len(enumerate_facets(n))
        if got != facet_count(n):
            res.failures.append((n, got))
    return res


def extreme_iff_connected(cat: list[Matroid]) -> SweepResult:
    res = SweepResult("extreme ray <=> connected")
    for M in cat:
        res.checked += 1
        if is_extreme_ray(M.rank_vector) != is_connected_after_loop_deletion(M):
            res.failures.append(M)
    return res


def rank_one_faces(cat: list[Matroid], size: int, max_n: int = 6) -> SweepResult:
    """minimal_face_dim(r_M + r_U) == 2 for U = U_{1,size}^{alpha,n}, every alpha."""
    res = SweepResult(f"(M, U_1,{size}) spans a 2-face")
    for M in connected(cat):
        if M.n > max_n or M.n < size:
            continue
        for alpha in combinations(range(1, M.n + 1), size):
            U = uniform(1, mask_of(alpha), M.n)
            if proportional(M.rank_vector, U.rank_vector):
                continue
            res.checked += 1
            d = minimal_face_dim(M.rank_vector + U.rank_vector)
            if d != 2:
                res.failures.append((M, alpha, d))
    return res


def modular_or_tight(cat: list[Matroid]) -> SweepResult:
    res = SweepResult("extreme rays are modular or tight")
    for M in cat:
        if M.rank >= 1 and is_extreme_ray(M.rank_vector):
            res.checked += 1
            if not modular_or_tight_check(M.rank_vector):
                res.failures.append(M)
    return res


def circuit_noncontainment(cat: list[Matroid]) -> SweepResult:
    res = SweepResult("circuit families never nested")
    conn = connected(cat)
    for M1, M2 in combinations(conn, 2):
        if M1.n != M2.n:
            continue
        res.checked += 1
        if not circuit_noncontainment_check(M1, M2):
            res.failures.append((M1, M2))
    return res


def circuit_round_trip(cat: list[Matroid]) -> SweepResult:
    res = SweepResult("rank_from_circuits round trip")
    for M in cat:
        res.checked += 1
        if rank_from_circuits(M.n, M.circuits) != M:
            res.failures.append(M)
    return res


def uniform_circuits(max_n: int = 6) -> SweepResult:
    """Circuits of U_{k,|alpha|}^{alpha,n}: (k+1)-subsets of alpha plus loops."""
    res = SweepResult("uniform matroid circuits")
    for n in range(1, max_n + 1):
        for alpha in range(1, 1 << n):
            a = elements_of(alpha)
            for k in range(1, len(a) + 1):
                res.checked += 1
                expected = {mask_of(c) for c in combinations(a, k + 1)}
                expected |= {1 << (e - 1) for e in range(1, n + 1) if e not in a}
                if set(circuits(uniform(k, alpha, n))) != expected:
                    res.failures.append((k, a, n))
    return res


def run_all(max_n: int = 6) -> list[SweepResult]:
    cat = [M for M in catalog(max_n)]
    return [
        facet_counts(max_n),
        extreme_iff_connected(cat),
        rank_one_faces(cat, 1, max_n=min(max_n, 5)),
        rank_one_faces(cat, 2, max_n=max_n),
        modular_or_tight(cat),
        circuit_noncontainment(cat),
        circuit_round_trip(cat),
        uniform_circuits(max_n),
    ]
