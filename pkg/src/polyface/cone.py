"""The Shannon cone as an H-representation by elemental inequalities.

Every point of a polyhedral cone lies in the relative interior of its minimal
face, and that face is cut out by the inequalities tight at the point.  So the
dimension of the minimal face is the nullity of the tight equalities, which
:func:`minimal_face_dim` computes exactly.  No extreme-ray enumeration is
needed for the extreme-ray and 2-face tests built on it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from . import linalg
from .setfn import (
    TOL,
    RankVector,
    check_n,
    elements_of,
    full_mask,
    is_modular,
    is_polymatroid,
    is_tight,
    mask_of,
    minimal_integer,
)

MONOTONE = "monotone"
SUBMODULAR = "submodular"


class NotPolymatroidError(ValueError):
    pass


class NotExtremeRayError(ValueError):
    pass


class ProportionalRaysError(ValueError):
    pass


@dataclass(frozen=True)
class FacetId:
    """One elemental inequality: ``F(i)`` or ``F(i;j|K)``."""

    kind: str
    i: int
    j: int = 0
    K: int = 0

    def __post_init__(self):
        if self.kind == MONOTONE:
            if self.j or self.K:
                raise ValueError("F(i) takes no j or K")
        elif self.kind == SUBMODULAR:
            if not 1 <= self.i < self.j:
                raise ValueError(f"need 1 <= i < j, got i={self.i}, j={self.j}")
            if self.K >> (self.i - 1) & 1 or self.K >> (self.j - 1) & 1:
                raise ValueError("K must avoid i and j")
        else:
            raise ValueError(f"unknown facet kind {self.kind!r}")

    def sort_key(self):
        return (0 if self.kind == MONOTONE else 1, self.i, self.j, self.K)

    def __lt__(self, other: "FacetId") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.kind == MONOTONE:
            return f"F({self.i})"
        ks = ",".join(str(e) for e in elements_of(self.K))
        return f"F({self.i};{self.j}|{ks})"

    @classmethod
    def parse(cls, s: str) -> "FacetId":
        s = s.strip()
        m = re.fullmatch(r"F\((\d+)\)", s)
        if m:
            return cls(MONOTONE, int(m.group(1)))
        m = re.fullmatch(r"F\((\d+);(\d+)\|([\d,\s]*|∅)\)", s)
        if not m:
            raise ValueError(f"malformed facet id {s!r}")
        ks = m.group(3).replace("∅", "")
        K = mask_of(int(x) for x in ks.split(",") if x.strip())
        return cls(SUBMODULAR, int(m.group(1)), int(m.group(2)), K)

    def row(self, n: int) -> dict[int, int]:
        """Coefficients of the slack as a linear form in the values h(A), A != {}."""
        coeffs: dict[int, int] = {}

        def add(mask: int, c: int) -> None:
            if mask:
                coeffs[mask] = coeffs.get(mask, 0) + c

        if self.kind == MONOTONE:
            top = full_mask(n)
            add(top, 1)
            add(top ^ (1 << (self.i - 1)), -1)
        else:
            bi, bj = 1 << (self.i - 1), 1 << (self.j - 1)
            add(self.K | bi, 1)
            add(self.K | bj, 1)
            add(self.K, -1)
            add(self.K | bi | bj, -1)
        return {k: v for k, v in coeffs.items() if v}


@lru_cache(maxsize=None)
def _facets(n: int) -> tuple[FacetId, ...]:
    out = [FacetId(MONOTONE, i) for i in range(1, n + 1)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rest = full_mask(n) & ~(1 << (i - 1)) & ~(1 << (j - 1))
            K = 0
            # every submask of rest, increasing
            while True:
                out.append(FacetId(SUBMODULAR, i, j, K))
                if K == rest:
                    break
                K = (K - rest) & rest
    return tuple(out)


def enumerate_facets(n: int) -> list[FacetId]:
    """All ``n + C(n,2) 2^(n-2)`` elemental inequalities in canonical order."""
    return list(_facets(check_n(n)))


def facet_count(n: int) -> int:
    return n + (comb(n, 2) << (n - 2) if n >= 2 else 0)


def slack(h, f: FacetId):
    v = h.values
    if f.kind == MONOTONE:
        top = full_mask(h.n)
        return v[top] - v[top ^ (1 << (f.i - 1))]
    bi, bj = 1 << (f.i - 1), 1 << (f.j - 1)
    return v[f.K | bi] + v[f.K | bj] - v[f.K] - v[f.K | bi | bj]


def tight_set(h, tol: float = TOL) -> list[FacetId]:
    """Facets on which ``h`` has zero slack (exactly, for exact vectors)."""
    eps = 0 if h.exact else tol
    out = []
    for f in _facets(h.n):
        s = slack(h, f)
        if s < -eps:
            raise NotPolymatroidError(f"not a polymatroid: slack {s} < 0 on {f}")
        if s <= eps:
            out.append(f)
    return out


def minimal_face_dim(h, tol: float = TOL) -> int:
    """Dimension of the smallest face of the Shannon cone containing ``h``."""
    tight = tight_set(h, tol)
    ncols = (1 << h.n) - 1
    return linalg.nullity((f.row(h.n) for f in tight), ncols)


def is_extreme_ray(h, tol: float = TOL) -> bool:
    if all(abs(x) <= (0 if h.exact else tol) for x in h.values):
        raise ValueError("the zero vector spans no ray")
    return minimal_face_dim(h, tol) == 1


def proportional(h1: RankVector, h2: RankVector) -> bool:
    if h1.n != h2.n:
        return False
    if h1.is_zero() or h2.is_zero():
        return h1.is_zero() and h2.is_zero()
    return minimal_integer(h1) == minimal_integer(h2)


def is_two_face(h1: RankVector, h2: RankVector) -> bool:
    """Whether the rays through ``h1`` and ``h2`` span a 2-dimensional face.

    Both inputs must be extreme rays and not proportional; violations raise
    :class:`NotExtremeRayError` or :class:`ProportionalRaysError`.
    """
    if h1.n != h2.n:
        raise ValueError(f"ground set sizes differ: {h1.n} vs {h2.n}")
    for name, h in (("first", h1), ("second", h2)):
        if not is_polymatroid(h):
            raise NotPolymatroidError(f"{name} vector is not a polymatroid")
        if h.is_zero() or not is_extreme_ray(h):
            raise NotExtremeRayError(f"{name} vector does not span an extreme ray")
    if proportional(h1, h2):
        raise ProportionalRaysError("the two vectors lie on the same ray")
    s = h1 + h2
    if not is_polymatroid(s):
        raise NotPolymatroidError("sum is not a polymatroid")
    return minimal_face_dim(s) == 2


def modular_or_tight_check(h) -> bool:
    return is_modular(h) or is_tight(h)
