"""Derivations on expansions: D = q d/dq, the Serre derivative, the heat
operator and its modular correction, and iterated heat chains."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import QZSeries, mul

__all__ = ["D", "OperatorChain", "e2_for", "heat", "heat_k", "heat_multiplier", "iterate", "serre"]


def e2_for(f: QZSeries) -> QZSeries:
    """E2 to enough precision that ``E2 * f`` keeps the truncation of ``f``."""
    from .catalog import form

    return form("E2", max(24, f.trunc24 - min(0, f.ord24)))


def _require_index(f: QZSeries, zero: bool) -> None:
    if zero and f.index2 != 0:
        raise ValueError("D and the Serre derivative act on pure q-series (index 0); use heat")
    if not zero and f.index2 <= 0:
        raise ValueError("the heat operator needs positive index")


def D(f: QZSeries) -> QZSeries:
    _require_index(f, zero=True)
    return f.map_terms(lambda n, l: Fraction(n, 24), weight2=f.weight2 + 4, quasi=True)


def serre(f: QZSeries, k2: int | None = None) -> QZSeries:
    """D_k(f) = D(f) - (k/12) E2 f, with k = k2/2 (default: the weight of f)."""
    _require_index(f, zero=True)
    if k2 is None:
        k2 = f.weight2
    out = D(f) - mul(e2_for(f), f).scale(Fraction(k2, 24))
    return out.with_meta(quasi=f.quasi or k2 != f.weight2)


def heat_multiplier(n24: int, l2: int, index2: int) -> Fraction:
    """(3/m)(4nm - l^2) at n = n24/24, l = l2/2, m = index2/2."""
    return Fraction(n24 * index2 - 3 * l2 * l2, 2 * index2)


def heat(phi: QZSeries) -> QZSeries:
    """H = 12 q d/dq - (3/m)(zeta d/dzeta)^2."""
    _require_index(phi, zero=False)
    i2 = phi.index2
    return phi.map_terms(lambda n, l: heat_multiplier(n, l, i2), weight2=phi.weight2 + 4, quasi=True)


def heat_k(phi: QZSeries, k2: int | None = None) -> QZSeries:
    """H_k(phi) = H(phi) - ((2k-1)/2) E2 phi, with k = k2/2.

    ``k2`` defaults to the weight of ``phi``; any other value gives a
    quasi-modular result and is flagged as such.
    """
    _require_index(phi, zero=False)
    if k2 is None:
        k2 = phi.weight2
    out = heat(phi) - mul(e2_for(phi), phi).scale(Fraction(k2 - 1, 2)).with_meta(weight2=phi.weight2 + 4)
    return out.with_meta(quasi=phi.quasi or k2 != phi.weight2)


@dataclass(frozen=True)
class OperatorChain:
    base_weight2: int
    base_index2: int
    produced: tuple[QZSeries, ...]

    @property
    def length(self) -> int:
        return len(self.produced) - 1

    def __getitem__(self, j: int) -> QZSeries:
        return self.produced[j]

    def weight2(self, j: int) -> int:
        return self.base_weight2 + 4 * j


def iterate(phi: QZSeries, k2: int | None = None, r: int = 1) -> OperatorChain:
    """[phi, H_k phi, H_{k+2} H_k phi, ...] with r applications."""
    if r < 0:
        raise ValueError("chain length must be non-negative")
    if k2 is None:
        k2 = phi.weight2
    out = [phi]
    for j in range(r):
        out.append(heat_k(out[-1], k2 + 4 * j))
    return OperatorChain(k2, phi.index2, tuple(out))
