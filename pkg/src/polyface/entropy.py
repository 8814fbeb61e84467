"""Finite joint distributions, their entropy vectors, and explicit constructions.

Masses are exact fractions; entropies are floats in nats.  The constructions
here are the certificates behind every "entropic" verdict in
:mod:`polyface.classify`: a claim is only made if a distribution realizing it
can be built and its entropy vector recomputed.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as cartesian
from typing import Mapping, Sequence

from . import gf
from .matroid import Matroid, as_uniform, circuits, loops, simplification, uniform
from .setfn import (
    TOL,
    EntropyVector,
    _SetFunction,
    combine,
    elements_of,
    format_set,
    full_mask,
    popcount,
)

BISECT_TOL = 1e-12
BISECT_MAXITER = 200


class NoConstructionError(ValueError):
    pass


class NotOnFaceError(ValueError):
    def __init__(self, message: str, residual: float, worst_subset: int):
        super().__init__(message)
        self.residual = residual
        self.worst_subset = worst_subset


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """pmf over ``prod(range(s) for s in alphabets)``; only positive masses are stored."""

    alphabets: tuple[int, ...]
    pmf: Mapping[tuple[int, ...], Fraction]

    def __post_init__(self):
        alph = tuple(int(s) for s in self.alphabets)
        if not alph or any(s < 1 for s in alph):
            raise ValueError("need at least one coordinate and alphabet sizes >= 1")
        pmf = {}
        for x, p in self.pmf.items():
            x = tuple(int(s) for s in x)
            p = Fraction(p)
            if len(x) != len(alph):
                raise ValueError(f"outcome {x} has wrong length for {len(alph)} coordinates")
            if any(not 0 <= s < a for s, a in zip(x, alph)):
                raise ValueError(f"outcome {x} outside alphabets {alph}")
            if p < 0:
                raise ValueError(f"negative mass {p} at {x}")
            if p > 0:
                pmf[x] = pmf.get(x, 0) + p
        if sum(pmf.values()) != 1:
            raise ValueError(f"masses sum to {sum(pmf.values())}, not 1")
        object.__setattr__(self, "alphabets", alph)
        object.__setattr__(self, "pmf", dict(sorted(pmf.items())))

    @property
    def n(self) -> int:
        return len(self.alphabets)

    @property
    def support(self) -> list[tuple[int, ...]]:
        return list(self.pmf)

    def __eq__(self, other) -> bool:
        return (isinstance(other, JointDistribution) and self.alphabets == other.alphabets
                and self.pmf == other.pmf)

    @classmethod
    def uniform_on(cls, alphabets: Sequence[int], support) -> "JointDistribution":
        support = sorted(set(map(tuple, support)))
        p = Fraction(1, len(support))
        return cls(tuple(alphabets), {x: p for x in support})


def _marginal_masses(D: JointDistribution, S: int) -> dict[tuple, Fraction]:
    idx = [e - 1 for e in elements_of(S)]
    out: dict[tuple, Fraction] = defaultdict(Fraction)
    for x, p in D.pmf.items():
        out[tuple(x[i] for i in idx)] += p
    return out


def _entropy(masses) -> float:
    return math.fsum(-p * math.log(p) for p in (float(m) for m in masses) if p > 0)


def entropy_vector(D: JointDistribution) -> EntropyVector:
    """``h(A) = H(X_A)`` in nats for every subset ``A``."""
    vals = [0.0] * (1 << D.n)
    for S in range(1, 1 << D.n):
        vals[S] = _entropy(sorted(_marginal_masses(D, S).values()))
    return EntropyVector(D.n, vals)


def marginal(D: JointDistribution, S: int) -> JointDistribution:
    if not 0 < S <= full_mask(D.n):
        raise ValueError("marginal needs a nonempty subset of the coordinates")
    alph = tuple(D.alphabets[e - 1] for e in elements_of(S))
    return JointDistribution(alph, _marginal_masses(D, S))


def product(D1: JointDistribution, D2: JointDistribution) -> JointDistribution:
    """Independent coupling, coordinate ``i`` taking values in the pairs of both alphabets."""
    if D1.n != D2.n:
        raise ValueError(f"coordinate counts differ: {D1.n} vs {D2.n}")
    alph = tuple(a * b for a, b in zip(D1.alphabets, D2.alphabets))
    pmf = {}
    for x, p in D1.pmf.items():
        for y, q in D2.pmf.items():
            z = tuple(xi * b + yi for xi, yi, b in zip(x, y, D2.alphabets))
            pmf[z] = p * q
    return JointDistribution(alph, pmf)


def map_coordinates(D: JointDistribution, image: Sequence[int]) -> JointDistribution:
    """New coordinate ``e`` copies old coordinate ``image[e-1]``; 0 means a constant."""
    for src in image:
        if not 0 <= src <= D.n:
            raise ValueError(f"coordinate {src} outside 0..{D.n}")
    alph = tuple(D.alphabets[s - 1] if s else 1 for s in image)
    pmf: dict[tuple, Fraction] = defaultdict(Fraction)
    for x, p in D.pmf.items():
        pmf[tuple(x[s - 1] if s else 0 for s in image)] += p
    return JointDistribution(alph, pmf)


def add_loop(D: JointDistribution, position: int) -> JointDistribution:
    """Insert a constant coordinate so that it becomes coordinate ``position``."""
    if not 1 <= position <= D.n + 1:
        raise ValueError(f"loop position must be in 1..{D.n + 1}, got {position}")
    image = list(range(1, D.n + 1))
    image.insert(position - 1, 0)
    return map_coordinates(D, image)


def parallel_extend(D: JointDistribution, source: int) -> JointDistribution:
    """Append an exact copy of coordinate ``source``."""
    if not 1 <= source <= D.n:
        raise ValueError(f"source coordinate must be in 1..{D.n}, got {source}")
    return map_coordinates(D, list(range(1, D.n + 1)) + [source])


def point_mass(n: int) -> JointDistribution:
    return JointDistribution((1,) * n, {(0,) * n: Fraction(1)})


# --- uniform matroid constructions -------------------------------------------

def uniform_matroid_dist(k: int, n: int, v: int) -> JointDistribution:
    """Uniform distribution whose entropy vector is ``ln(v) * rank(U_{k,n})``.

    ``k = 1``: one symbol copied n times.  ``k = n - 1``: n-1 free symbols
    and their sum mod v.  ``k = n``: n free symbols.  Otherwise an extended
    Reed-Solomon code per prime-power factor of ``v``, paired coordinatewise;
    this needs ``n <= q + 1`` for every factor ``q``.
    """
    if v < 2:
        raise ValueError("alphabet size v must be at least 2")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    alph = (v,) * n
    if k == 1:
        return JointDistribution.uniform_on(alph, [(s,) * n for s in range(v)])
    if k == n:
        return JointDistribution.uniform_on(alph, cartesian(range(v), repeat=n))
    if k == n - 1:
        return JointDistribution.uniform_on(
            alph, [x + (sum(x) % v,) for x in cartesian(range(v), repeat=n - 1)])
    factors = gf.factor_prime_powers(v)
    if any(n > q + 1 for q in factors):
        raise NoConstructionError(
            f"no construction available for U_{{{k},{n}}} over an alphabet of size {v}")
    dist = None
    for q in factors:
        part = JointDistribution.uniform_on((q,) * n, gf.rs_codewords(k, n, q))
        dist = part if dist is None else product(dist, part)
    return dist


def matroid_dist(M: Matroid, v: int) -> JointDistribution:
    """Uniform distribution realizing ``ln(v) * rank(M)``.

    Works whenever the simplification of ``M`` is uniform; loops become
    constants and parallel elements become copies.
    """
    if M.rank == 0:
        return point_mass(M.n)
    simple, image = simplification(M)
    ku = as_uniform(simple)
    if ku is None:
        raise NoConstructionError(f"no construction for {M!r}: simplification is not uniform")
    return map_coordinates(uniform_matroid_dist(ku[0], ku[1], v), image)


# --- one-parameter pmfs ------------------------------------------------------

def two_level_pmf(size: int, target: float) -> list[Fraction]:
    """pmf ``(p, (1-p)/(size-1), ...)`` with entropy ``target`` nats.

    Bisection on ``p`` in ``[1/size, 1]``, where the entropy falls from
    ``ln(size)`` to 0.
    """
    if size < 1:
        raise ValueError("size must be positive")
    top = math.log(size)
    if target < -BISECT_TOL or target > top + BISECT_TOL:
        raise ValueError(f"entropy {target} outside [0, ln {size}]")
    if size == 1 or target <= BISECT_TOL:
        return [Fraction(1)] + [Fraction(0)] * (size - 1)
    if abs(target - top) <= BISECT_TOL:
        return [Fraction(1, size)] * size

    def H(p: float) -> float:
        q = (1 - p) / (size - 1)
        return _entropy([p] + [q] * (size - 1))

    lo, hi = 1.0 / size, 1.0
    p = lo
    for _ in range(BISECT_MAXITER):
        p = (lo + hi) / 2
        h = H(p)
        if abs(h - target) <= BISECT_TOL:
            break
        if h > target:
            lo = p
        else:
            hi = p
    P = Fraction(p)
    rest = (1 - P) / (size - 1)
    return [P] + [rest] * (size - 1)


def rank_one_dist(alpha: int, n: int, b: float) -> JointDistribution:
    """Distribution with entropy vector ``b * rank(U_{1,|alpha|}^{alpha,n})``."""
    if b < -BISECT_TOL:
        raise ValueError("entropy must be nonnegative")
    if b <= BISECT_TOL:
        return point_mass(n)
    size = max(2, math.ceil(math.exp(b)))
    pmf = two_level_pmf(size, b)
    alph = tuple(size if alpha >> i & 1 else 1 for i in range(n))
    return JointDistribution(alph, {
        tuple(s if alpha >> i & 1 else 0 for i in range(n)): p
        for s, p in enumerate(pmf) if p > 0
    })


# --- certificates -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Certificate:
    """An explicit distribution claimed to realize ``a*r_M + b*r_U`` on the face (M, U)."""

    distribution: JointDistribution
    matroid: Matroid
    alpha: int
    a: float
    b: float
    residual: float
    v: int | None = None
    construction: str = ""
    notes: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.matroid.n

    @property
    def rank_one(self) -> Matroid:
        return uniform(1, self.alpha, self.n)

    def target(self) -> EntropyVector:
        return combine(self.a, self.matroid.rank_vector, self.b, self.rank_one.rank_vector)

    def recompute_residual(self) -> float:
        return entropy_vector(self.distribution).max_abs_diff(self.target())

    @property
    def valid(self) -> bool:
        return self.residual < TOL


def _certificate(D, M, alpha, a, b, v, construction, notes=()) -> Certificate:
    target = combine(a, M.rank_vector, b, uniform(1, alpha, M.n).rank_vector)
    residual = entropy_vector(D).max_abs_diff(target)
    return Certificate(D, M, alpha, float(a), float(b), residual, v, construction, list(notes))


def designated_coordinate(M: Matroid, alpha: int) -> int:
    """The coordinate whose marginal entropy is tuned in :func:`matus_boundary_dist`."""
    outside = full_mask(M.n) & ~alpha & ~loops(M)
    if outside:
        return elements_of(outside)[-1]
    cs = [c for c in circuits(M) if popcount(c) >= 2]
    matus = [c for c in cs if popcount(c) == 3 and popcount(c & alpha) == 2]
    chosen = (matus or cs)[0]
    return elements_of(chosen)[-1]


def matus_boundary_dist(M: Matroid, alpha: int, v: int, a: float) -> Certificate:
    """Realize the point ``(a, ln v - a)`` on the face ``(M, U_{1,|alpha|}^{alpha,n})``.

    Start from a uniform distribution ``Y`` on a support ``S`` with entropy
    vector ``ln(v) * r_M``.  Keep ``S``, give the designated coordinate a
    two-level marginal with entropy ``a``, and spread each of its values
    uniformly over the ``v**(rank-1)`` support points that carry it.
    """
    try:
        Y = matroid_dist(M, v)
    except NoConstructionError as exc:
        raise NoConstructionError(f"v={v} not certified in chi_M: {exc}") from None
    lnv = math.log(v)
    if not 0 < a <= lnv + BISECT_TOL:
        raise ValueError(f"a out of range: need 0 < a <= ln {v} = {lnv}, got {a}")
    a = min(a, lnv)
    d = designated_coordinate(M, alpha)
    used = sorted({x[d - 1] for x in Y.support})
    if len(used) != v:
        raise NoConstructionError(f"coordinate {d} is not uniform on {v} symbols")
    weights = dict(zip(used, two_level_pmf(v, a)))
    per_value = Fraction(1, v ** (M.rank - 1))
    pmf = {x: weights[x[d - 1]] * per_value for x in Y.support}
    D = JointDistribution(Y.alphabets, pmf)
    return _certificate(D, M, alpha, a, lnv - a, v, "matus-boundary",
                        [f"designated coordinate {d}"])


def lattice_value(a: float, tol: float = TOL) -> int | None:
    """Integer ``v >= 2`` with ``|a - ln v| <= tol``, if any."""
    if a <= 0:
        return None
    v = round(math.exp(a))
    if v >= 2 and abs(a - math.log(v)) <= tol:
        return v
    return None


def certify_point(M: Matroid, alpha: int, a: float, b: float) -> Certificate:
    """Build a distribution for ``a*r_M + b*r_U`` from the constructions available.

    Tries, in order: pure ``U`` ray (``a = 0``); rank-1 ``M`` (two rank-1
    pieces); ``a = ln v`` via ``matroid_dist`` plus a rank-1 piece; otherwise
    the boundary construction for the smallest workable ``v`` with
    ``a <= ln v <= a + b`` plus a rank-1 piece.
    """
    n = M.n
    if a < 0 or b < 0:
        raise ValueError("face coordinates must be nonnegative")
    if a <= BISECT_TOL:
        return _certificate(rank_one_dist(alpha, n, b), M, alpha, 0.0, b, None, "rank-one ray")
    if M.rank == 1:
        nonloop = full_mask(n) & ~loops(M)
        D = product(rank_one_dist(nonloop, n, a), rank_one_dist(alpha, n, b))
        return _certificate(D, M, alpha, a, b, None, "rank-one sum")
    v = lattice_value(a)
    if v is not None:
        try:
            D = matroid_dist(M, v)
        except NoConstructionError:
            pass
        else:
            a = math.log(v)
            if b > BISECT_TOL:
                D = product(D, rank_one_dist(alpha, n, b))
            return _certificate(D, M, alpha, a, b, v, "matroid ray + rank-one ray")
    v = max(2, math.ceil(math.exp(a) - TOL))
    while math.log(v) <= a + b + TOL:
        try:
            cert = matus_boundary_dist(M, alpha, v, a)
        except NoConstructionError:
            v += 1
            continue
        if cert.valid:
            extra = b - cert.b
            D = cert.distribution
            if extra > BISECT_TOL:
                D = product(D, rank_one_dist(alpha, n, extra))
            return _certificate(D, M, alpha, a, b, v, "matus-boundary + rank-one ray",
                                cert.notes)
        v += 1
    raise NoConstructionError(f"no construction for ({a}, {b}) on this face")


# --- diagnostics ----------------------------------------------------------------

@dataclass
class SupportGraphReport:
    coords: list[int]
    components: list[list[tuple[int, int]]]
    complete: list[bool]
    equal_vertex_mass: list[bool]
    equal_edge_mass: list[bool]

    @property
    def passed(self) -> bool:
        return all(self.complete)


def support_graph_diagnostic(D: JointDistribution, coords: Sequence[int] | None = None
                             ) -> SupportGraphReport:
    """Multipartite compatibility graph of the used symbols.

    Vertices are ``(coordinate, symbol)`` pairs with positive marginal mass; two
    vertices on different coordinates are adjacent when their pairwise marginal
    is positive.  Each connected component is checked for being complete
    multipartite, and for equal vertex and equal edge masses.
    """
    coords = list(coords) if coords is not None else list(range(1, D.n + 1))
    if len(coords) < 2:
        raise ValueError("need at least two coordinates")
    vmass: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    emass: dict[tuple, Fraction] = defaultdict(Fraction)
    for x, p in D.pmf.items():
        for c in coords:
            vmass[(c, x[c - 1])] += p
        for c1, c2 in combinations(coords, 2):
            emass[((c1, x[c1 - 1]), (c2, x[c2 - 1]))] += p
    verts = sorted(vmass)
    adj: dict = {u: set() for u in verts}
    for (u, w) in emass:
        adj[u].add(w)
        adj[w].add(u)
    seen: set = set()
    comps, complete, eq_v, eq_e = [], [], [], []
    for start in verts:
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comp.sort()
        cs = set(comp)
        full = all(w in adj[u] for u in comp for w in comp if w[0] != u[0])
        edges = [m for (u, w), m in emass.items() if u in cs]
        comps.append(comp)
        complete.append(full)
        eq_v.append(len({vmass[u] for u in comp}) == 1)
        eq_e.append(len(set(edges)) <= 1)
    return SupportGraphReport(coords, comps, complete, eq_v, eq_e)


def check_face_membership(h: _SetFunction, r1: _SetFunction, r2: _SetFunction,
                          tol: float = TOL) -> tuple[float, float]:
    """Coordinates ``(a, b)`` with ``h = a*r1 + b*r2``, or :class:`NotOnFaceError`.

    ``a, b`` are solved from the first pair of subsets (in mask order) on which
    ``r1, r2`` are linearly independent, then every entry is checked.
    """
    if not h.n == r1.n == r2.n:
        raise ValueError("ground set sizes differ")
    x1, x2 = r1.values, r2.values
    pair = None
    for A, B in combinations(range(1, 1 << h.n), 2):
        if x1[A] * x2[B] - x1[B] * x2[A] != 0:
            pair = (A, B)
            break
    if pair is None:
        raise ValueError("the two rank vectors are linearly dependent")
    A, B = pair
    det = float(x1[A] * x2[B] - x1[B] * x2[A])
    hA, hB = float(h.values[A]), float(h.values[B])
    a = (hA * float(x2[B]) - hB * float(x2[A])) / det
    b = (float(x1[A]) * hB - float(x1[B]) * hA) / det
    worst, worst_mask = 0.0, 0
    for m in range(1 << h.n):
        dev = abs(float(h.values[m]) - a * float(x1[m]) - b * float(x2[m]))
        if dev > worst:
            worst, worst_mask = dev, m
    if worst >= tol:
        raise NotOnFaceError(
            f"not on the face: deviation {worst:.3g} at {format_set(worst_mask)}",
            worst, worst_mask)
    return a, b
