"""Truncated bigraded Fourier expansions in q and zeta with exact coefficients.

Gradings are stored as integers: a key ``(n24, l2)`` stands for the monomial
``q^(n24/24) * zeta^(l2/2)``.  Weight and index are likewise doubled
(``weight2``, ``index2``).  ``trunc24`` is exclusive: every coefficient with
``n24 < trunc24`` is known, nothing above it is stored.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from types import MappingProxyType
from typing import Iterable, Mapping

Rational = Fraction

__all__ = [
    "BidegreeError",
    "QZSeries",
    "Rational",
    "TruncationError",
    "add",
    "div_exact",
    "is_zero_to",
    "make_monomial",
    "mul",
    "q_slice",
    "zero",
]


class TruncationError(ValueError):
    """A request reaches beyond the computed truncation."""


class BidegreeError(ValueError):
    """Series of different weight, index or q-exponent class were combined."""


def _frac(c) -> Fraction:
    return c if type(c) is Fraction else Fraction(c)


class QZSeries:
    """Immutable truncated expansion ``sum a(n, l) q^n zeta^l``.

    ``char24`` is the common residue of all ``n24`` modulo 24 (the power of
    eta in the multiplier system); ``quasi`` marks expressions involving E2
    or raw derivatives, which are not Jacobi forms.
    Terms at or beyond ``trunc24`` are dropped on construction, zero
    coefficients are never stored.
    """

    __slots__ = ("weight2", "index2", "trunc24", "quasi", "char24", "_terms", "_slices")

    def __init__(
        self,
        terms: Mapping[tuple[int, int], object],
        weight2: int,
        index2: int,
        trunc24: int,
        *,
        quasi: bool = False,
        char24: int | None = None,
    ):
        clean = {}
        for key, c in terms.items():
            if key[0] < trunc24 and c:
                clean[key] = _frac(c)
        keys = sorted(clean)
        if char24 is None:
            char24 = keys[0][0] % 24 if keys else 0
        char24 %= 24
        for n24, _ in keys:
            if n24 % 24 != char24:
                raise BidegreeError(f"q-exponent {n24}/24 is not in class {char24} mod 24")
        self.weight2 = int(weight2)
        self.index2 = int(index2)
        self.trunc24 = int(trunc24)
        self.quasi = bool(quasi)
        self.char24 = char24
        self._terms = {k: clean[k] for k in keys}
        self._slices = None

    # -- access -----------------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple[int, int], Fraction]:
        return MappingProxyType(self._terms)

    def slices(self) -> dict[int, dict[int, Fraction]]:
        """Nonzero q-slices keyed by ``n24``, ascending."""
        if self._slices is None:
            out: dict[int, dict[int, Fraction]] = {}
            for (n, l), c in self._terms.items():
                out.setdefault(n, {})[l] = c
            self._slices = out
        return self._slices

    @property
    def ord24(self) -> int:
        """Lowest q-exponent present; ``trunc24`` for a series known to be zero."""
        for n, _ in self._terms:
            return n
        return self.trunc24

    def coefficient(self, n24: int, l2: int) -> Fraction:
        if n24 >= self.trunc24:
            raise TruncationError(f"q^({n24}/24) is beyond truncation {self.trunc24}/24")
        return self._terms.get((n24, l2), Fraction(0))

    def q_slice(self, n24: int) -> dict[int, Fraction]:
        return q_slice(self, n24)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    # -- derived series ---------------------------------------------------

    def _new(self, terms, **meta) -> QZSeries:
        kw = dict(
            weight2=self.weight2,
            index2=self.index2,
            trunc24=self.trunc24,
            quasi=self.quasi,
            char24=self.char24,
        )
        kw.update(meta)
        return QZSeries(terms, **kw)

    def truncate(self, trunc24: int) -> QZSeries:
        if trunc24 > self.trunc24:
            raise TruncationError(f"cannot extend truncation {self.trunc24} to {trunc24}")
        return self._new(self._terms, trunc24=trunc24)

    def scale(self, c) -> QZSeries:
        c = _frac(c)
        return self._new({k: v * c for k, v in self._terms.items()})

    def with_meta(self, **meta) -> QZSeries:
        return self._new(self._terms, **meta)

    def map_terms(self, fn, **meta) -> QZSeries:
        """Multiply each coefficient by ``fn(n24, l2)``."""
        return self._new({(n, l): c * fn(n, l) for (n, l), c in self._terms.items()}, **meta)

    # -- operators --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, QZSeries):
            return add(self, other)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, QZSeries):
            return add(self, other, 1, -1)
        return NotImplemented

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, QZSeries):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QZSeries):
            return div_exact(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / _frac(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = make_monomial(0, 0, 1, 0, 0, self.trunc24 + 24 * k)
        base, e = self, k
        while e:
            if e & 1:
                result = mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
        return result

    def __eq__(self, other):
        if not isinstance(other, QZSeries):
            return NotImplemented
        return (
            self.weight2 == other.weight2
            and self.index2 == other.index2
            and self.trunc24 == other.trunc24
            and self.quasi == other.quasi
            and self.char24 == other.char24
            and self._terms == other._terms
        )

    __hash__ = None

    def __repr__(self):
        shown = ", ".join(f"({n},{l}): {c}" for (n, l), c in list(self._terms.items())[:6])
        more = ", ..." if len(self._terms) > 6 else ""
        return (
            f"QZSeries(weight2={self.weight2}, index2={self.index2}, trunc24={self.trunc24}, "
            f"quasi={self.quasi}, terms={{{shown}{more}}})"
        )


def zero(weight2: int, index2: int, trunc24: int, *, char24: int = 0, quasi: bool = False) -> QZSeries:
    return QZSeries({}, weight2, index2, trunc24, char24=char24, quasi=quasi)


def make_monomial(n24: int, l2: int, c, weight2: int, index2: int, trunc24: int) -> QZSeries:
    if trunc24 <= n24:
        raise TruncationError(f"term q^({n24}/24) lies beyond truncation {trunc24}/24")
    return QZSeries({(n24, l2): c}, weight2, index2, trunc24, char24=n24 % 24)


def _check_bidegree(a: QZSeries, b: QZSeries) -> None:
    if a.weight2 != b.weight2 or a.index2 != b.index2:
        raise BidegreeError(
            f"bidegree mismatch: (weight2={a.weight2}, index2={a.index2}) vs "
            f"(weight2={b.weight2}, index2={b.index2})"
        )
    if a.char24 != b.char24 and a._terms and b._terms:
        raise BidegreeError(f"q-exponent classes differ: {a.char24} vs {b.char24} mod 24")


def add(a: QZSeries, b: QZSeries, ca=1, cb=1) -> QZSeries:
    """Linear combination ``ca*a + cb*b`` of series of equal bidegree."""
    _check_bidegree(a, b)
    ca, cb = _frac(ca), _frac(cb)
    trunc = min(a.trunc24, b.trunc24)
    out: dict[tuple[int, int], Fraction] = {}
    if ca:
        for k, v in a._terms.items():
            if k[0] < trunc:
                out[k] = ca * v
    if cb:
        for k, v in b._terms.items():
            if k[0] < trunc:
                out[k] = out.get(k, 0) + cb * v
    char24 = a.char24 if a._terms or not b._terms else b.char24
    return QZSeries(out, a.weight2, a.index2, trunc, quasi=a.quasi or b.quasi, char24=char24)


def linear_combination(pairs: Iterable[tuple[object, QZSeries]]) -> QZSeries:
    """``sum c_i * s_i`` over equal-bidegree series."""
    it = iter(pairs)
    c0, acc = next(it)
    acc = acc.scale(c0)
    for c, s in it:
        acc = add(acc, s, 1, c)
    return acc


def _integral_slices(s: QZSeries) -> tuple[int, list[tuple[int, list[tuple[int, int]]]]]:
    den = lcm(*(c.denominator for c in s._terms.values())) if s._terms else 1
    rows = []
    for n, sl in s.slices().items():
        rows.append((n, [(l, c.numerator * (den // c.denominator)) for l, c in sl.items()]))
    return den, rows


def mul(a: QZSeries, b: QZSeries) -> QZSeries:
    """Cauchy product, complete below ``min(a.trunc + ord b, b.trunc + ord a)``."""
    trunc = min(a.trunc24 + b.ord24, b.trunc24 + a.ord24)
    meta = dict(
        weight2=a.weight2 + b.weight2,
        index2=a.index2 + b.index2,
        trunc24=trunc,
        quasi=a.quasi or b.quasi,
        char24=(a.char24 + b.char24) % 24,
    )
    if not a._terms or not b._terms:
        return QZSeries({}, **meta)
    da, sa = _integral_slices(a)
    db, sb = _integral_slices(b)
    acc: dict[int, dict[int, int]] = {}
    for na, la in sa:
        if na + sb[0][0] >= trunc:
            break
        for nb, lb in sb:
            n = na + nb
            if n >= trunc:
                break
            row = acc.setdefault(n, {})
            for l1, c1 in la:
                for l2, c2 in lb:
                    k = l1 + l2
                    row[k] = row.get(k, 0) + c1 * c2
    den = da * db
    terms = {}
    for n in sorted(acc):
        row = acc[n]
        for l in sorted(row):
            v = row[l]
            if v:
                terms[(n, l)] = Fraction(v, den)
    return QZSeries(terms, **meta)


def div_exact(a: QZSeries, b: QZSeries) -> QZSeries:
    """The series ``x`` with ``b * x = a``, by long division on q-slices.

    The lowest q-slice of ``b`` must be a single monomial.
    """
    if not b._terms:
        raise ZeroDivisionError("division by a series known to be zero")
    s = b.ord24
    lead = b.slices()[s]
    if len(lead) != 1:
        raise ValueError("lowest q-slice of the divisor is not a monomial")
    ((t, c),) = lead.items()
    inv_c = 1 / c
    ord_x = a.ord24 - s
    trunc = min(a.trunc24 - s, b.trunc24 - s + ord_x)
    tail = [(n - s, sl) for n, sl in b.slices().items() if n != s]
    a_sl = a.slices()
    x: dict[int, dict[int, Fraction]] = {}
    for e in range(ord_x, trunc):
        r = dict(a_sl.get(e + s, ()))
        for off, sl in tail:
            if e - off < ord_x:
                break
            xs = x.get(e - off)
            if not xs:
                continue
            for l1, c1 in sl.items():
                for l2, c2 in xs.items():
                    k = l1 + l2
                    r[k] = r.get(k, 0) - c1 * c2
        nz = {l - t: v * inv_c for l, v in r.items() if v}
        if nz:
            x[e] = nz
    terms = {(n, l): v for n in sorted(x) for l, v in sorted(x[n].items())}
    return QZSeries(
        terms,
        a.weight2 - b.weight2,
        a.index2 - b.index2,
        trunc,
        quasi=a.quasi or b.quasi,
        char24=(a.char24 - b.char24) % 24,
    )


def q_slice(a: QZSeries, n24: int) -> dict[int, Fraction]:
    if n24 >= a.trunc24:
        raise TruncationError(f"slice q^({n24}/24) is beyond truncation {a.trunc24}/24")
    return dict(a.slices().get(n24, {}))


def is_zero_to(a: QZSeries, bound24: int) -> bool:
    if bound24 > a.trunc24:
        raise TruncationError(f"cannot claim vanishing to {bound24}/24 with data to {a.trunc24}/24")
    return a.ord24 >= bound24
