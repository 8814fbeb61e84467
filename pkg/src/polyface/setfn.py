"""Set functions on small ground sets and the polymatroid axioms.

A set function on ``N_n = {1, ..., n}`` is stored as a flat array of ``2**n``
values indexed by bitmask: element ``i`` belongs to the subset ``A`` iff bit
``i - 1`` of ``A`` is set.  So ``values[0b101]`` is ``h({1, 3})``.

Two flavours share that layout:

* :class:`RankVector` holds exact :class:`fractions.Fraction` entries and is
  used for every polyhedral decision.
* :class:`EntropyVector` holds float entries in nats and is what joint
  distributions produce.  Comparisons on it use :data:`TOL`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

MAX_N = 16
TOL = 1e-9

def check_n(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_N:
        raise ValueError(f"ground set size must be an integer in [1, {MAX_N}], got {n!r}")
    return int(n)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(elements: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based elements."""
    m = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are labelled from 1, got {e}")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> list[int]:
    """Sorted 1-based elements of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def format_set(mask: int) -> str:
    return "{" + ",".join(str(e) for e in elements_of(mask)) + "}"


class _SetFunction:
    n: int
    values: Sequence

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, mask: int):
        return self.evaluate(mask)

    def evaluate(self, mask: int):
        if not 0 <= mask < (1 << self.n):
            raise IndexError(f"subset outside ground set: mask {mask} for n={self.n}")
        return self.values[mask]

    def singletons(self) -> list:
        return [self.values[1 << i] for i in range(self.n)]

    @property
    def exact(self) -> bool:
        return isinstance(self, RankVector)


@dataclass(frozen=True)
class RankVector(_SetFunction):
    """Exact set function ``h: 2^{N_n} -> Q``."""

    n: int
    values: tuple

    def __post_init__(self):
        n = check_n(self.n)
        vals = tuple(_to_fraction(v) for v in self.values)
        if len(vals) != 1 << n:
            raise ValueError(f"expected {1 << n} values for n={n}, got {len(vals)}")
        if vals[0] != 0:
            raise ValueError("h(empty set) must be 0")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, n: int, f) -> "RankVector":
        """Tabulate ``f(mask)`` over all subsets."""
        return cls(n, [f(m) for m in range(1 << n)])

    @classmethod
    def zero(cls, n: int) -> "RankVector":
        return cls(n, [0] * (1 << n))

    def __add__(self, other: "RankVector") -> "RankVector":
        if not isinstance(other, RankVector):
            return NotImplemented
        _same_n(self, other)
        return RankVector(self.n, [x + y for x, y in zip(self.values, other.values)])

    def scale(self, c) -> "RankVector":
        c = _to_fraction(c)
        return RankVector(self.n, [c * x for x in self.values])

    def __rmul__(self, c):
        if isinstance(c, float):
            return EntropyVector(self.n, c * self.as_float())
        return self.scale(c)

    def as_float(self) -> np.ndarray:
        return np.array([float(x) for x in self.values])

    def to_entropy(self) -> "EntropyVector":
        return EntropyVector(self.n, self.as_float())

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.values)

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for x in self.values)

    def __repr__(self) -> str:
        body = ", ".join(str(x) for x in self.values)
        return f"RankVector(n={self.n}, [{body}])"


@dataclass(frozen=True, eq=False)
class EntropyVector(_SetFunction):
    """Float set function in nats; the twin of :class:`RankVector`."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        n = check_n(self.n)
        vals = np.asarray(self.values, dtype=float).copy()
        if vals.shape != (1 << n,):
            raise ValueError(f"expected {1 << n} values for n={n}, got shape {vals.shape}")
        if abs(vals[0]) > TOL:
            raise ValueError("h(empty set) must be 0")
        vals[0] = 0.0
        vals.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", vals)

    def __add__(self, other) -> "EntropyVector":
        _same_n(self, other)
        return EntropyVector(self.n, self.values + _floats(other))

    def __sub__(self, other) -> "EntropyVector":
        _same_n(self, other)
        return EntropyVector(self.n, self.values - _floats(other))

    def scale(self, c: float) -> "EntropyVector":
        return EntropyVector(self.n, float(c) * self.values)

    def max_abs_diff(self, other) -> float:
        _same_n(self, other)
        return float(np.max(np.abs(self.values - _floats(other))))

    def allclose(self, other, tol: float = TOL) -> bool:
        return self.max_abs_diff(other) < tol

    def __eq__(self, other) -> bool:
        if not isinstance(other, (EntropyVector, RankVector)) or other.n != self.n:
            return False
        return bool(np.array_equal(self.values, _floats(other)))

    def __repr__(self) -> str:
        return f"EntropyVector(n={self.n}, {np.array2string(self.values, precision=6)})"


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        # floats only enter exact vectors when they are integral
        if v.is_integer():
            return Fraction(int(v))
        raise TypeError(f"refusing to convert non-integral float {v} to an exact rank value")
    raise TypeError(f"cannot convert {v!r} to Fraction")


def _floats(h) -> np.ndarray:
    if isinstance(h, EntropyVector):
        return h.values
    if isinstance(h, RankVector):
        return h.as_float()
    return np.asarray(h, dtype=float)


def _same_n(h1, h2) -> None:
    if not isinstance(h2, _SetFunction):
        h2 = np.asarray(h2)
        if h2.shape != (1 << h1.n,):
            raise ValueError(f"expected an array of length {1 << h1.n}, got shape {h2.shape}")
        return
    if h1.n != h2.n:
        raise ValueError(f"ground set sizes differ: {h1.n} vs {h2.n}")


def evaluate(h: _SetFunction, A: int):
    return h.evaluate(A)


def polymatroid_violation(h: _SetFunction, tol: float = TOL):
    """First elemental inequality violated by ``h``, or ``None``.

    Facets are scanned in the canonical order of
    :func:`polyface.cone.enumerate_facets`.  Exact vectors are compared with no
    tolerance at all.
    """
    from .cone import enumerate_facets, slack

    eps = 0 if h.exact else tol
    for f in enumerate_facets(h.n):
        if slack(h, f) < -eps:
            return f
    return None


def is_polymatroid(h: _SetFunction, tol: float = TOL) -> bool:
    return polymatroid_violation(h, tol) is None


def is_integer_minimal(h: RankVector) -> bool:
    """True for integer vectors whose entries have gcd 1."""
    if not isinstance(h, RankVector) or not h.is_integer():
        return False
    g = reduce(gcd, (abs(x.numerator) for x in h.values), 0)
    return g == 1


def minimal_integer(h: RankVector) -> RankVector:
    """Scale a nonzero rational vector to the minimal integer point on its ray."""
    if h.is_zero():
        raise ValueError("zero vector has no minimal integer point")
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in h.values), 1)
    ints = [int(x * den) for x in h.values]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    return RankVector(h.n, [x // g for x in ints])


def _close(x, y, exact: bool, tol: float) -> bool:
    return x == y if exact else abs(x - y) <= tol


def is_modular(h: _SetFunction, tol: float = TOL) -> bool:
    """``h(A) = sum of h(i) over i in A`` for every ``A``."""
    single = h.singletons()
    for m in range(1, 1 << h.n):
        total = sum(single[i - 1] for i in elements_of(m))
        if not _close(h.values[m], total, h.exact, tol):
            return False
    return True


def is_tight(h: _SetFunction, tol: float = TOL) -> bool:
    """``h(N) = h(N - i)`` for every element ``i``."""
    top = full_mask(h.n)
    return all(_close(h.values[top], h.values[top ^ (1 << i)], h.exact, tol)
               for i in range(h.n))


def combine(a: float, h1: _SetFunction, b: float, h2: _SetFunction) -> EntropyVector:
    """The point ``a*h1 + b*h2`` as a float vector."""
    if a < 0 or b < 0:
        raise ValueError("combination coefficients must be nonnegative")
    _same_n(h1, h2)
    return EntropyVector(h1.n, float(a) * _floats(h1) + float(b) * _floats(h2))


def restrict(h: _SetFunction, S: int):
    """Restriction of ``h`` to ``S``, relabelled ``1..|S|`` in increasing order."""
    if not 0 < S < (1 << h.n):
        raise ValueError(f"restriction set must be a nonempty subset of N_{h.n}")
    pos = elements_of(S)
    k = len(pos)
    vals = []
    for local in range(1 << k):
        glob = 0
        for j in range(k):
            if local >> j & 1:
                glob |= 1 << (pos[j] - 1)
        vals.append(h.values[glob])
    if h.exact:
        return RankVector(k, vals)
    return EntropyVector(k, vals)


def permute(h: _SetFunction, perm: Sequence[int]):
    """Relabel elements: element ``i`` of ``h`` becomes element ``perm[i-1]``."""
    n = h.n
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm}")
    vals = [None] * (1 << n)
    for m in range(1 << n):
        vals[mask_of(perm[i - 1] for i in elements_of(m))] = h.values[m]
    if h.exact:
        return RankVector(n, vals)
    return EntropyVector(n, vals)


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    return mask_of(perm[i - 1] for i in elements_of(mask))
