"""Matroids on ``N_n`` given by integer rank vectors.

Circuits, loops, parallel classes and connectivity are all derived from the
rank table by brute force over subsets, which is fine for ``n <= 16``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .setfn import (
    RankVector,
    check_n,
    elements_of,
    format_set,
    full_mask,
    is_polymatroid,
    mask_of,
    popcount,
)


class MatroidError(ValueError):
    pass


@dataclass(frozen=True)
class UniformSpec:
    """``U_{k,|alpha|}^{alpha,n}``: uniform of rank ``k`` on ``alpha``, loops elsewhere."""

    k: int
    alpha: int
    n: int

    def __post_init__(self):
        check_n(self.n)
        if not 0 < self.alpha <= full_mask(self.n):
            raise MatroidError(f"alpha must be a nonempty subset of N_{self.n}")
        if not 1 <= self.k <= popcount(self.alpha):
            raise MatroidError(f"need 1 <= k <= |alpha|, got k={self.k}, |alpha|={popcount(self.alpha)}")


@dataclass(frozen=True, eq=False)
class Matroid:
    n: int
    ranks: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = check_n(self.n)
        ranks = tuple(int(r) for r in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if len(ranks) != 1 << n:
            raise MatroidError(f"expected {1 << n} ranks, got {len(ranks)}")
        for m, r in enumerate(ranks):
            if not 0 <= r <= popcount(m):
                raise MatroidError(f"rank {r} of {format_set(m)} outside [0, |A|]")
        if not is_polymatroid(self.rank_vector):
            raise MatroidError("rank function violates the polymatroid axioms")

    def __eq__(self, other) -> bool:
        return isinstance(other, Matroid) and self.n == other.n and self.ranks == other.ranks

    def __hash__(self) -> int:
        return hash((self.n, self.ranks))

    def __repr__(self) -> str:
        label = self.name or f"Matroid(n={self.n})"
        return f"<{label} rank={self.rank}>"

    def r(self, A: int) -> int:
        return self.ranks[A]

    @property
    def rank(self) -> int:
        return self.ranks[-1]

    @cached_property
    def rank_vector(self) -> RankVector:
        return RankVector(self.n, self.ranks)

    @cached_property
    def circuits(self) -> tuple[int, ...]:
        return tuple(circuits(self))

    @property
    def loops(self) -> int:
        return loops(self)

    def relabel(self, perm: Sequence[int]) -> "Matroid":
        """Element ``i`` becomes element ``perm[i-1]``."""
        new = [0] * (1 << self.n)
        for m in range(1 << self.n):
            new[mask_of(perm[i - 1] for i in elements_of(m))] = self.ranks[m]
        return Matroid(self.n, new, self.name)


def from_rank_vector(h: RankVector, name: str = "") -> Matroid:
    if not h.is_integer():
        raise MatroidError("matroid ranks must be integers")
    return Matroid(h.n, [int(x) for x in h.values], name)


def uniform(spec: UniformSpec | int, alpha: int | None = None, n: int | None = None) -> Matroid:
    """Rank ``min(k, |A & alpha|)``.  Accepts a UniformSpec or ``(k, alpha, n)``."""
    if not isinstance(spec, UniformSpec):
        if n is None:
            n = alpha
            alpha = full_mask(n)
        spec = UniformSpec(spec, alpha, n)
    k, a, n = spec.k, spec.alpha, spec.n
    name = f"U_{{{k},{popcount(a)}}}"
    if a != full_mask(n):
        name += f"^{{{''.join(map(str, elements_of(a)))},{n}}}"
    return Matroid(n, [min(k, popcount(m & a)) for m in range(1 << n)], name)


def circuits(M: Matroid) -> list[int]:
    """Minimal dependent sets, by increasing size then mask value."""
    found: list[int] = []
    by_size = sorted(range(1, 1 << M.n), key=lambda m: (popcount(m), m))
    for m in by_size:
        if M.ranks[m] == popcount(m):
            continue
        if any(c & m == c for c in found):
            continue
        found.append(m)
    return found


def rank_from_circuits(n: int, circuit_family: Iterable[int | Iterable[int]]) -> Matroid:
    """Rebuild a matroid from its circuits and check the round trip."""
    n = check_n(n)
    fam = sorted({c if isinstance(c, int) else mask_of(c) for c in circuit_family},
                 key=lambda m: (popcount(m), m))
    for c in fam:
        if not 0 < c <= full_mask(n):
            raise MatroidError(f"circuit {c} is not a nonempty subset of N_{n}")
    for a, b in combinations(fam, 2):
        if a & b == a or a & b == b:
            raise MatroidError("circuit axioms violated: family is not an antichain")
    ranks = [0] * (1 << n)
    for m in range(1, 1 << n):
        if any(c & m == c for c in fam):
            ranks[m] = max(ranks[m & ~(1 << i)] for i in range(n) if m >> i & 1)
        else:
            ranks[m] = popcount(m)
    try:
        M = Matroid(n, ranks)
    except MatroidError as exc:
        raise MatroidError(f"circuit axioms violated: {exc}") from None
    if list(M.circuits) != fam:
        raise MatroidError("circuit axioms violated: circuits do not round-trip")
    return M


def loops(M: Matroid) -> int:
    return mask_of(i + 1 for i in range(M.n) if M.ranks[1 << i] == 0)


def parallel_pairs(M: Matroid) -> list[tuple[int, int]]:
    out = []
    for e, f in combinations(range(1, M.n + 1), 2):
        be, bf = 1 << (e - 1), 1 << (f - 1)
        if M.ranks[be] == M.ranks[bf] == M.ranks[be | bf] == 1:
            out.append((e, f))
    return out


def parallel_classes(M: Matroid) -> list[int]:
    """Partition of the non-loop elements into parallel classes."""
    classes: list[int] = []
    for e in range(1, M.n + 1):
        be = 1 << (e - 1)
        if M.ranks[be] == 0:
            continue
        for idx, cls in enumerate(classes):
            rep = cls & -cls
            if M.ranks[rep | be] == 1:
                classes[idx] = cls | be
                break
        else:
            classes.append(be)
    return classes


def is_connected_after_loop_deletion(M: Matroid) -> bool:
    """Every two non-loop elements share a circuit.

    With at most one non-loop element the answer is ``True``; such matroids
    (``U_{1,1}`` plus loops) span extreme rays of the modular face.
    """
    nonloops = elements_of(full_mask(M.n) & ~loops(M))
    if len(nonloops) <= 1:
        return True
    # union-find over "lies in a common circuit"; connectivity is transitive
    parent = {e: e for e in nonloops}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in M.circuits:
        els = elements_of(c)
        for e in els[1:]:
            parent[find(e)] = find(els[0])
    return len({find(e) for e in nonloops}) == 1


def circuit_noncontainment_check(M1: Matroid, M2: Matroid) -> bool:
    """Neither circuit family contains the other."""
    if M1 == M2:
        raise MatroidError("matroids must be distinct")
    if M1.n != M2.n:
        raise MatroidError("matroids must share a ground set")
    for M in (M1, M2):
        if M.rank < 1 or not is_connected_after_loop_deletion(M):
            raise MatroidError(f"{M!r} is not connected of rank >= 1")
    c1, c2 = set(M1.circuits), set(M2.circuits)
    return not (c1 <= c2 or c2 <= c1)


def simplification(M: Matroid) -> tuple[Matroid, list[int]]:
    """Loop-free, parallel-free matroid on one representative per class.

    Returns the simple matroid (elements numbered by class, in order of their
    smallest member) and, for each element of ``M``, its class number or 0
    for loops.
    """
    classes = parallel_classes(M)
    if not classes:
        raise MatroidError("matroid of rank 0 has no simplification")
    image = [0] * M.n
    for idx, cls in enumerate(classes, start=1):
        for e in elements_of(cls):
            image[e - 1] = idx
    reps = [cls & -cls for cls in classes]
    k = len(classes)
    ranks = []
    for m in range(1 << k):
        A = 0
        for j in range(k):
            if m >> j & 1:
                A |= reps[j]
        ranks.append(M.ranks[A])
    return Matroid(k, ranks), image


def as_uniform(M: Matroid) -> tuple[int, int] | None:
    """``(k, m)`` if ``M`` is exactly ``U_{k,m}`` with no loops."""
    k = M.rank
    if k < 1:
        return None
    if all(M.ranks[m] == min(k, popcount(m)) for m in range(1 << M.n)):
        return k, M.n
    return None


def extend(M: Matroid, image: Sequence[int], name: str = "") -> Matroid:
    """Matroid on ``len(image)`` elements; element ``e`` behaves as ``image[e-1]`` of ``M``.

    ``image`` entries of 0 give loops; repeated entries give parallel copies.
    """
    n = len(image)
    ranks = []
    for m in range(1 << n):
        A = mask_of(image[e - 1] for e in elements_of(m) if image[e - 1])
        ranks.append(M.ranks[A])
    return Matroid(n, ranks, name)


def direct_sum(M1: Matroid, M2: Matroid, name: str = "") -> Matroid:
    n = M1.n + M2.n
    lo = full_mask(M1.n)
    ranks = [M1.ranks[m & lo] + M2.ranks[m >> M1.n] for m in range(1 << n)]
    return Matroid(n, ranks, name or f"{M1.name or 'M1'}+{M2.name or 'M2'}")


def catalog(max_n: int = 6) -> list[Matroid]:
    """Deterministic corpus of small matroids, deduplicated.

    Contains every ``U_{k,n'}^{alpha,n}`` with ``n <= max_n``, loop and parallel
    extensions of ``U_{2,3}`` and ``U_{2,4}``, and direct sums that are not
    connected.
    """
    out: list[Matroid] = []
    seen: set[Matroid] = set()

    def add(M: Matroid) -> None:
        if M not in seen:
            seen.add(M)
            out.append(M)

    for n in range(1, max_n + 1):
        for alpha in range(1, 1 << n):
            for k in range(1, popcount(alpha) + 1):
                add(uniform(k, alpha, n))

    u23, u24 = uniform(2, 3), uniform(2, 4)
    base_images = {
        "U23": (u23, [(1, 2, 3, 1), (1, 2, 3, 3), (1, 1, 2, 3), (1, 2, 3, 0),
                      (1, 2, 3, 1, 2), (1, 2, 3, 1, 0), (1, 1, 2, 2, 3, 3), (0, 1, 2, 3, 3)]),
        "U24": (u24, [(1, 2, 3, 4, 1), (1, 2, 3, 4, 0), (1, 1, 2, 3, 4), (1, 2, 3, 4, 4, 0)]),
    }
    for label, (base, images) in base_images.items():
        for image in images:
            if len(image) <= max_n:
                add(extend(base, image, f"{label}{list(image)}"))

    free2 = uniform(2, 2)
    sums = [
        direct_sum(uniform(1, 1), uniform(1, 1), "U11+U11"),
        direct_sum(uniform(1, 2), uniform(1, 2), "U12+U12"),
        direct_sum(u23, uniform(1, 1), "U23+U11"),
        direct_sum(u23, uniform(1, 2), "U23+U12"),
        direct_sum(u23, u23, "U23+U23"),
        direct_sum(free2, uniform(1, 1), "U22+U11"),
    ]
    for M in sums:
        if M.n <= max_n:
            add(M)
    return out

