"""Exact rank of sparse integer systems by fraction-free elimination."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping


def _normalize(row: dict[int, int], lead: int) -> dict[int, int]:
    g = gcd(*row.values())
    if row[lead] < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _integer_row(row: Mapping[int, object]) -> dict[int, int]:
    if all(type(v) is int for v in row.values()):
        return {c: v for c, v in row.items() if v}
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    out = {}
    for c, v in row.items():
        v = Fraction(v) * den
        if v != 0:
            out[c] = int(v)
    return out


def echelon(rows: Iterable[Mapping[int, object]]) -> dict[int, dict[int, int]]:
    """Row-echelon basis of the span of ``rows``.

    Rows are sparse mappings ``column -> coefficient`` with integer or rational
    entries.  They are inserted in the given order; each one is reduced against
    the pivots found so far, smallest pivot column first, using the integer
    update ``row <- p*row - q*pivot`` followed by division by the row content.
    Returns ``{pivot column: normalized pivot row}``.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = _integer_row(raw)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = _normalize(row, c)
                break
            p, q = piv[c], row[c]
            new = {k: p * v for k, v in row.items()}
            for k, v in piv.items():
                x = new.get(k, 0) - q * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            row = _normalize(new, min(new)) if new else new
    return pivots


def rank(rows: Iterable[Mapping[int, object]]) -> int:
    return len(echelon(rows))


def nullity(rows: Iterable[Mapping[int, object]], ncols: int) -> int:
    """Dimension of ``{x in Q^ncols : row . x = 0 for every row}``."""
    return ncols - rank(rows)
