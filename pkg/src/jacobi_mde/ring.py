"""Structure-theorem bases of weak Jacobi forms, exact coordinates, and
vanishing certificates.

Even weight and integral index: monomials E4^a E6^b phi_-2_1^c phi_0_1^d.
Odd weight or half-integral index reduce to that case through exactly one
prefactor (phi_-1_2, phi_-1_1_half or phi_0_3_half).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .catalog import eisenstein_monomial, form
from .series import QZSeries, linear_combination, mul

__all__ = [
    "JacobiBasis",
    "Monomial",
    "NotInSpan",
    "Underdetermined",
    "ZeroCertificate",
    "basis",
    "certify_zero",
    "coordinates",
    "modular_basis",
    "required_bound24",
    "vanishing_bound",
]

CERTIFIED_ZERO = "certified_zero"
NOT_ZERO = "not_zero"
INCONCLUSIVE = "inconclusive"

# prefactor name -> (weight2, index2)
PREFACTORS = {"phi_-1_2": (-2, 4), "phi_-1_1_half": (-2, 1), "phi_0_3_half": (0, 3)}


class NotInSpan(ValueError):
    pass


class Underdetermined(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Monomial:
    a: int  # E4
    b: int  # E6
    c: int  # phi_-2_1
    d: int  # phi_0_1
    prefactor: str | None = None

    @property
    def weight2(self) -> int:
        w = 8 * self.a + 12 * self.b - 4 * self.c
        return w + (PREFACTORS[self.prefactor][0] if self.prefactor else 0)

    @property
    def index2(self) -> int:
        i = 2 * (self.c + self.d)
        return i + (PREFACTORS[self.prefactor][1] if self.prefactor else 0)

    def series(self, trunc24: int) -> QZSeries:
        out = eisenstein_monomial(self.a, self.b, trunc24)
        for name, k in (("phi_-2_1", self.c), ("phi_0_1", self.d)):
            for _ in range(k):
                out = mul(out, form(name, trunc24))
        if self.prefactor:
            out = mul(out, form(self.prefactor, trunc24))
        return out.truncate(trunc24)

    def label(self) -> str:
        parts = []
        for name, k in (("E4", self.a), ("E6", self.b), ("phi_-2_1", self.c), ("phi_0_1", self.d)):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        if self.prefactor:
            parts.append(self.prefactor)
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class JacobiBasis:
    weight2: int
    index2: int
    monomials: tuple[Monomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def series(self, trunc24: int) -> list[QZSeries]:
        return [m.series(trunc24) for m in self.monomials]


def _even_integral(weight2: int, index2: int, prefactor: str | None) -> list[Monomial]:
    k, m = weight2 // 2, index2 // 2
    out = []
    for c in range(m + 1):
        rest = k + 2 * c  # 4a + 6b
        if rest < 0 or rest % 2:
            continue
        for b in range(rest // 6 + 1):
            r = rest - 6 * b
            if r % 4 == 0:
                out.append(Monomial(r // 4, b, c, m - c, prefactor))
    # most phi_-2_1 factors first, then fewest E6
    return sorted(out, key=lambda mo: (-mo.c, mo.b))


def basis(weight2: int, index2: int) -> JacobiBasis:
    """Monomial basis of J_{k,m} with k = weight2/2, m = index2/2."""
    mons: list[Monomial] = []
    if index2 >= 0 and weight2 % 2 == 0:
        odd_weight = (weight2 // 2) % 2 == 1
        w, i, pre = weight2, index2, None
        if index2 % 2:
            pre = "phi_-1_1_half" if odd_weight else "phi_0_3_half"
        elif odd_weight:
            pre = "phi_-1_2"
        if pre:
            w, i = w - PREFACTORS[pre][0], i - PREFACTORS[pre][1]
        if i >= 0:
            mons = _even_integral(w, i, pre)
    return JacobiBasis(weight2, index2, tuple(mons))


def modular_basis(weight2: int) -> list[tuple[int, int]]:
    """Exponents (a, b) of the monomials E4^a E6^b spanning M_k, k = weight2/2."""
    return [(m.a, m.b) for m in basis(weight2, 0).monomials]


def vanishing_bound(weight2: int, index2: int) -> int:
    """Least t with J_{k-12t, m} = 0: a form of this bidegree vanishing to q^t is zero."""
    t = 0
    while basis(weight2 - 24 * t, index2).dimension:
        t += 1
    return t


@dataclass(frozen=True)
class ZeroCertificate:
    weight2: int
    index2: int
    vanish_order24: int
    required_bound24: int | None
    verdict: str
    first_nonzero: tuple[int, int] | None = None
    method: str = "delta-division"

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED_ZERO


def _quasi_monomials(weight2: int, index2: int) -> list[tuple[int, Monomial]]:
    out = []
    j = 0
    while weight2 - 4 * j >= -2 * index2 - 2:
        out += [(j, m) for m in basis(weight2 - 4 * j, index2)]
        j += 1
    return out


def _quasi_slices_needed(weight2: int, index2: int) -> int | None:
    """Number of leading q-slices on which the E2-polynomial span injects."""
    mons = _quasi_monomials(weight2, index2)
    if not mons:
        return 0
    t = 24 * (2 * len(mons) + 4)
    vecs = []
    for j, m in mons:
        s = m.series(t)
        if j:
            s = mul(s, form("E2", t) ** j).truncate(t)
        vecs.append(s)
    for slices in range(1, t // 24 + 1):
        keys = sorted({k for v in vecs for k in v.terms if k[0] < 24 * slices})
        rows = [[v.terms.get(k, 0) for v in vecs] for k in keys]
        if rows and linalg.rank(rows, len(vecs)) == len(vecs):
            return slices
    return None


def required_bound24(weight2: int, index2: int, char24: int = 0, quasi: bool = False) -> int | None:
    """q-order (in 1/24 units) up to which vanishing proves a form of this type is zero.

    The eta^char24 factor is split off first so the remaining form has
    integral q-exponents and lies in the structure-theorem ring.
    ``None`` means no certificate is available for this type.
    """
    w = weight2 - char24
    if w % 2:
        return None
    if quasi:
        s = _quasi_slices_needed(w, index2)
        return None if s is None else (char24 + 24 * s if s else 0)
    t = vanishing_bound(w, index2)
    return char24 + 24 * t if t else 0


def certify_zero(phi: QZSeries) -> ZeroCertificate:
    """Prove ``phi`` is identically zero from finitely many vanishing slices.

    Assumes ``phi`` was built from catalog forms by ring operations and the
    operators of this package, so that ``phi / eta^char24`` is a weak Jacobi
    form (or an E2-polynomial in such forms if ``phi.quasi``).
    """
    req = required_bound24(phi.weight2, phi.index2, phi.char24, phi.quasi)
    method = "e2-rank" if phi.quasi else "delta-division"
    if phi.terms:
        first = next(iter(phi.terms))
        return ZeroCertificate(phi.weight2, phi.index2, first[0], req, NOT_ZERO, first, method)
    ok = req is not None and phi.trunc24 >= req
    return ZeroCertificate(
        phi.weight2, phi.index2, phi.trunc24, req, CERTIFIED_ZERO if ok else INCONCLUSIVE, None, method
    )


def coordinates(phi: QZSeries, basis_: JacobiBasis | None = None) -> tuple[Fraction, ...]:
    """Exact coordinates of ``phi`` over ``basis(phi.weight2, phi.index2)``."""
    if phi.quasi:
        raise ValueError("quasi-modular series have no coordinates over a Jacobi basis")
    if phi.char24:
        raise ValueError("series carries an eta multiplier; divide it out first")
    B = basis_ or basis(phi.weight2, phi.index2)
    t0 = vanishing_bound(phi.weight2, phi.index2)
    need = 24 * (t0 + 1)
    if phi.trunc24 < need:
        raise Underdetermined(f"need data below q^{t0 + 1}, have {phi.trunc24}/24")
    vecs = B.series(phi.trunc24)
    x = solve_in_span(phi, vecs, need)
    recon = linear_combination(zip(x, vecs)).terms if vecs else {}
    if dict(recon) != dict(phi.terms):
        raise NotInSpan("re-expansion differs from the input")
    return x


def solve_in_span(phi: QZSeries, vecs: Sequence[QZSeries], bound24: int) -> tuple[Fraction, ...]:
    keys = sorted({k for v in [phi, *vecs] for k in v.terms if k[0] < bound24})
    rows = [[v.terms.get(k, 0) for v in vecs] for k in keys]
    rhs = [phi.terms.get(k, 0) for k in keys]
    if not vecs:
        if any(rhs):
            raise NotInSpan("the space is zero but the series is not")
        return ()
    try:
        sol = linalg.solve(rows, rhs, len(vecs))
    except linalg.Inconsistent as exc:
        raise NotInSpan(str(exc)) from None
    if not sol.unique:
        raise Underdetermined(f"rank {sol.rank} < dimension {len(vecs)}")
    return sol.particular
