"""Exact linear algebra over the rationals.

Forward elimination is fraction-free (Bareiss) on integer rows obtained by
clearing denominators row by row; pivots are the first nonzero entry in the
column, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

__all__ = ["Inconsistent", "Solution", "rank", "rref", "solve"]


class Inconsistent(ArithmeticError):
    """The linear system has no solution."""

    def __init__(self, rank: int, augmented_rank: int):
        super().__init__(f"inconsistent system: rank {rank}, augmented rank {augmented_rank}")
        self.rank = rank
        self.augmented_rank = augmented_rank


@dataclass(frozen=True)
class Solution:
    particular: tuple[Fraction, ...]
    nullspace: tuple[tuple[Fraction, ...], ...]
    rank: int

    @property
    def unique(self) -> bool:
        return not self.nullspace


def _integer_row(row: Sequence) -> list[int]:
    fr = [Fraction(x) for x in row]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    return [x.numerator * (den // x.denominator) for x in fr]


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    prev = 1
    r = 0
    for col in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][col]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][col]
        for i in range(r + 1, len(m)):
            f = m[i][col]
            row_i = m[i]
            row_r = m[r]
            for j in range(col, ncols):
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
            # entries left of col in rows below r are already zero
        prev = piv
        pivots.append(col)
        r += 1
    return m[: len(pivots)], pivots


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of the nonzero part and its pivot columns."""
    ech, pivots = _bareiss([_integer_row(r) for r in rows], ncols)
    out = [[Fraction(x) for x in row] for row in ech]
    for i in range(len(out) - 1, -1, -1):
        c = pivots[i]
        p = out[i][c]
        out[i] = [x / p for x in out[i]]
        for k in range(i):
            f = out[k][c]
            if f:
                out[k] = [x - f * y for x, y in zip(out[k], out[i])]
    return out, pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(_bareiss([_integer_row(r) for r in rows], ncols)[1])


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> Solution:
    """All solutions of ``A x = b`` as particular solution plus nullspace basis.

    The particular solution sets every free variable to zero; the nullspace
    basis is in reduced echelon form.  Raises ``Inconsistent`` otherwise.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        raise Inconsistent(len(pivots) - 1, len(pivots))
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, pivots):
            v[c] = -row[f]
        basis.append(tuple(v))
    if basis:
        nred, _ = rref(basis, ncols)
        basis = [tuple(r) for r in nred]
    return Solution(tuple(x), tuple(basis), len(pivots))
