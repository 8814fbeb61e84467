"""Small finite fields GF(p^m) and extended Reed-Solomon codewords."""

from __future__ import annotations

from functools import lru_cache
from itertools import product


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, m)`` with ``q == p**m`` for prime ``p``, else ``None``."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return (p, m) if q == 1 else None


def factor_prime_powers(v: int) -> list[int]:
    """``v`` as a product of pairwise coprime prime powers, ascending."""
    out = []
    d = 2
    while d * d <= v:
        if v % d == 0:
            q = 1
            while v % d == 0:
                v //= d
                q *= d
            out.append(q)
        d += 1
    if v > 1:
        out.append(v)
    return sorted(out)


class GF:
    """GF(q) with elements ``0..q-1`` (base-p digits are polynomial coefficients)."""

    def __init__(self, q: int):
        pm = prime_power(q)
        if pm is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.m = pm
        self.modulus = _irreducible(self.p, self.m)
        self._mul = [[self._slow_mul(a, b) for b in range(q)] for a in range(q)]

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.m)]

    def _from_digits(self, ds) -> int:
        return sum(d * self.p ** i for i, d in enumerate(ds))

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self._from_digits((x + y) % self.p for x, y in zip(self._digits(a), self._digits(b)))

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def _slow_mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus, highest degree first
        for deg in range(2 * m - 2, m - 1, -1):
            c = prod[deg]
            if c:
                for i, mc in enumerate(self.modulus):
                    prod[deg - m + i] = (prod[deg - m + i] - c * mc) % p
        return self._from_digits(prod[:m])

    def power(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r


@lru_cache(maxsize=None)
def _irreducible(p: int, m: int) -> tuple[int, ...]:
    """Coefficients (low to high, monic) of the first irreducible of degree ``m``."""
    if m == 1:
        return (0, 1)
    for low in product(range(p), repeat=m):
        poly = tuple(low) + (1,)
        if poly[0] == 0:
            continue
        # irreducible iff no monic factor of degree <= m//2
        if not _has_factor(poly, p, m):
            return poly
    raise RuntimeError(f"no irreducible polynomial of degree {m} over GF({p})")


def _polymod(num: list[int], den: tuple[int, ...], p: int) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    inv = pow(den[-1], p - 2, p)
    for deg in range(len(num) - 1, dd - 1, -1):
        c = num[deg] * inv % p
        if c:
            for i, x in enumerate(den):
                num[deg - dd + i] = (num[deg - dd + i] - c * x) % p
    return num[:dd]


def _has_factor(poly: tuple[int, ...], p: int, m: int) -> bool:
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            div = tuple(low) + (1,)
            if not any(_polymod(list(poly), div, p)):
                return True
    return False


@lru_cache(maxsize=None)
def rs_codewords(k: int, n: int, q: int) -> tuple[tuple[int, ...], ...]:
    """All ``q**k`` codewords of an extended Reed-Solomon ``[n, k]`` code over GF(q).

    Any ``k`` coordinates of a uniformly chosen codeword are independent and
    uniform.  Needs ``1 <= k <= n <= q + 1``.
    """
    if not 1 <= k <= n <= q + 1:
        raise ValueError(f"no extended RS code with k={k}, n={n}, q={q}")
    F = GF(q)
    points = list(range(min(n, q)))
    infinity = n == q + 1
    words = []
    for msg in product(range(q), repeat=k):
        word = []
        for x in points:
            acc = 0
            for i, c in enumerate(msg):
                acc = F.add(acc, F.mul(c, F.power(x, i)))
            word.append(acc)
        if infinity:
            word.append(msg[-1])
        words.append(tuple(word))
    return tuple(words)
