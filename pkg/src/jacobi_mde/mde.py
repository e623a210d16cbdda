"""Modular differential equations by q^0-cancellation.

``ledger()`` lists known equations and identities as buildable left-hand
sides; ``verify_equation`` proves each one vanishes with a ``ZeroCertificate``.
``discover`` searches for the monic heat-operator equation of least degree
with holomorphic modular coefficients, and ``elliptic_genus`` solves for the
weight-0 Jacobi form with given chi_y data.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from . import linalg
from .catalog import eisenstein_monomial, eta_power, form
from .operators import OperatorChain, heat, heat_k, iterate, serre
from .ring import (
    CERTIFIED_ZERO,
    NOT_ZERO,
    JacobiBasis,
    ZeroCertificate,
    basis,
    certify_zero,
    modular_basis,
    vanishing_bound,
)
from .series import QZSeries, linear_combination, mul

__all__ = [
    "DiscoveryResult",
    "EquationSpec",
    "GenusInput",
    "GenusResult",
    "Infeasible",
    "InconsistentHodgeData",
    "MDEquation",
    "NonIntegralWarning",
    "VerificationResult",
    "assemble",
    "discover",
    "elliptic_genus",
    "format_equation",
    "ledger",
    "verify_all",
    "verify_equation",
]

F = Fraction
Coeffs = Mapping[int, Mapping[tuple[int, int], Fraction]]


# --------------------------------------------------------------------------
# formatting


def _weight_label(k2: int) -> str:
    return str(k2 // 2) if k2 % 2 == 0 else f"{{{k2}/2}}"


def eis_label(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("E4" if a == 1 else f"E4^{a}")
    if b:
        parts.append("E6" if b == 1 else f"E6^{b}")
    return "*".join(parts) or "1"


def _chain_label(base_weight2: int, j: int, name: str) -> str:
    if j == 0:
        return name
    ops = " ".join(f"H_{_weight_label(base_weight2 + 4 * i)}" for i in range(j - 1, -1, -1))
    return f"{ops}({name})"


def _signed(c: Fraction, body: str, first: bool) -> str:
    mag = abs(c)
    text = f"{mag} {body}" if mag != 1 else body
    if first:
        return text if c > 0 else f"-{text}"
    return f" {'+' if c > 0 else '-'} {text}"


def format_equation(name: str, base_weight2: int, degree: int, coeffs: Coeffs) -> str:
    """Render a monic heat-operator equation, e.g. ``H_2 H_0(f) - 5/4 E4 f = 0``."""
    out = _chain_label(base_weight2, degree, name)
    for i in sorted(coeffs):
        for (a, b), c in sorted(coeffs[i].items()):
            if c:
                out += _signed(F(c), f"{eis_label(a, b)} {_chain_label(base_weight2, degree - i, name)}", False)
    return out + " = 0"


# --------------------------------------------------------------------------
# equation records


def assemble(chain: OperatorChain, coeffs: Coeffs) -> QZSeries:
    """psi_r + sum_i g_{2i} psi_{r-i} for the chain psi_0, ..., psi_r."""
    r = chain.length
    top = chain[r]
    t = top.trunc24
    terms = [(F(1), top)]
    for i in sorted(coeffs):
        for (a, b), c in sorted(coeffs[i].items()):
            if c:
                terms.append((F(c), mul(eisenstein_monomial(a, b, t), chain[r - i]).truncate(t)))
    return linear_combination(terms)


@dataclass(frozen=True)
class Infeasible:
    degree: int
    rank: int
    augmented_rank: int
    unknowns: int
    conditions: int


@dataclass(frozen=True)
class MDEquation:
    base_form: str
    weight2: int
    index2: int
    degree: int
    coeffs: Mapping[int, Mapping[tuple[int, int], Fraction]]
    certificate: ZeroCertificate
    nullspace: tuple[dict[int, dict[tuple[int, int], Fraction]], ...] = ()

    @property
    def unique(self) -> bool:
        return not self.nullspace

    def coefficient_vectors(self) -> list[tuple[Fraction, ...]]:
        """For i = 2..r, coordinates of g_{2i} over ``modular_basis(4 i)``."""
        return [
            tuple(F(self.coeffs.get(i, {}).get(ab, 0)) for ab in modular_basis(4 * i))
            for i in range(2, self.degree + 1)
        ]

    def __str__(self) -> str:
        return format_equation(self.base_form, self.weight2, self.degree, self.coeffs)


@dataclass(frozen=True)
class DiscoveryResult:
    form: str
    equation: MDEquation | None
    infeasible: tuple[Infeasible, ...]
    inconclusive_degree: int | None = None


@dataclass(frozen=True)
class EquationSpec:
    id: str
    title: str
    build: Callable[[int], list[QZSeries]]
    base: str | None = None
    degree: int | None = None
    coeffs: Coeffs | None = None
    note: str = ""
    literal: Callable[[int], list[QZSeries]] | None = None

    def signature(self) -> list[tuple[int, int, int, bool]]:
        """(weight2, index2, char24, quasi) of each component."""
        return _signature(self.id)

    def required_trunc24(self) -> int | None:
        from .ring import required_bound24

        reqs = [required_bound24(*sig) for sig in self.signature()]
        if any(r is None for r in reqs):
            return None
        return max(reqs, default=0)


@lru_cache(maxsize=None)
def _signature(entry_id: str) -> list[tuple[int, int, int, bool]]:
    spec = _LEDGER_BY_ID[entry_id]
    return [(s.weight2, s.index2, s.char24, s.quasi) for s in spec.build(48)]


@dataclass(frozen=True)
class VerificationResult:
    id: str
    status: str
    certificates: tuple[ZeroCertificate, ...]
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


# --------------------------------------------------------------------------
# ledger


def _E(a: int, b: int, t: int) -> QZSeries:
    return eisenstein_monomial(a, b, t)


def _m(*factors: QZSeries) -> QZSeries:
    out = factors[0]
    for f in factors[1:]:
        out = mul(out, f)
    return out


def _combo(*pairs) -> QZSeries:
    t = min(s.trunc24 for _, s in pairs)
    return linear_combination((F(c), s.truncate(t)) for c, s in pairs)


def _mde_spec(id_, title, base, degree, coeffs, note="", literal=None) -> EquationSpec:
    coeffs = {i: {ab: F(c) for ab, c in v.items()} for i, v in coeffs.items()}

    def build(t):
        return [assemble(iterate(form(base, t), None, degree), coeffs)]

    return EquationSpec(id_, title, build, base, degree, coeffs, note, literal)


def _literal_chain(base: str, k2s: Sequence[int], lower: Sequence[tuple[Fraction, tuple[int, int], int | None]]):
    """Left-hand side with explicitly given heat subscripts (twice the weight).

    ``lower`` holds (coefficient, (a, b), k2 or None) for the terms
    c * E4^a E6^b * H_{k2/2}(f) or c * E4^a E6^b * f.
    """

    def build(t):
        f = form(base, t)
        top = f
        for k2 in k2s:
            top = heat_k(top, k2)
        terms = [(F(1), top)]
        for c, (a, b), k2 in lower:
            inner = f if k2 is None else heat_k(f, k2)
            terms.append((F(c), mul(_E(a, b, t), inner).with_meta(weight2=top.weight2)))
        return [linear_combination(terms)]

    return build


def _k3_expanded(base: str, c_h: Fraction, c_e2e4: Fraction, c_e6: Fraction):
    # H^3 f - 9/2 E2 H^2 f + (9/4 E2^2 + c_h E4) H f + (3/8 E2^3 + c_e2e4 E2 E4 + c_e6 E6) f
    def build(t):
        f = form(base, t)
        h1 = heat(f)
        h2 = heat(h1)
        h3 = heat(h2)
        e2, e4, e6 = form("E2", t), form("E4", t), form("E6", t)
        e22 = mul(e2, e2)
        return [
            _combo(
                (1, h3),
                (F(-9, 2), mul(e2, h2)),
                (F(9, 4), mul(e22, h1)),
                (c_h, mul(e4, h1)),
                (F(3, 8), _m(e22, e2, f)),
                (c_e2e4, _m(e2, e4, f)),
                (c_e6, mul(e6, f)),
            )
        ]

    return build


def _kz_e4(t):
    e4 = form("E4", t)
    k = 4
    lhs = serre(serre(e4))
    return [_combo((1, lhs), (F(-k * (k + 2), 144), mul(e4, e4)))]


def _serre_identity(name, c, rhs):
    def build(t):
        f = form(name, t)
        return [_combo((1, serre(f)), (c, rhs(t)))]

    return build


def _serre_eta(t):
    return [serre(eta_power(k, t)) for k in range(1, 25)]


def _heat_kernel(name):
    # at weight 1/2 the correction term (2k-1)/2 E2 vanishes, so H_{1/2} = H
    return lambda t: [heat_k(form(name, t), 1)]


def _h(name, t, k2=None):
    return heat_k(form(name, t), k2)


def _build_ledger() -> list[EquationSpec]:
    L: list[EquationSpec] = []
    L.append(
        _mde_spec("deq:CY3", "H_0(phi_0_3/2) = 0, i.e. H(phi_0_3/2) + 1/2 E2 phi_0_3/2 = 0", "phi_0_3_half", 1, {})
    )
    L.append(
        _mde_spec("deq:K3", "elliptic genus of K3: degree 3", "phi_0_1", 3, {2: {(1, 0): F(-101, 4)}, 3: {(0, 1): 10}})
    )
    L.append(
        _mde_spec(
            "deq:CY5",
            "elliptic genus of CY5: degree 3",
            "phi_0_5_half",
            3,
            {2: {(1, 0): F(-611, 25)}, 3: {(0, 1): F(88, 25)}},
        )
    )
    L.append(
        EquationSpec(
            "deq:K3:E2",
            "K3 equation in powers of H with E2-polynomial coefficients",
            _k3_expanded("phi_0_1", F(-99, 4), F(-99, 8), F(12)),
            note="certified by injectivity of the E2-polynomial span on leading slices",
        )
    )
    L.append(
        EquationSpec(
            "deq:CY5:E2",
            "CY5 equation in powers of H with E2-polynomial coefficients",
            _k3_expanded("phi_0_5_half", F(-1197, 50), F(-1197, 100), F(138, 25)),
            note="literal variant has 1997/50 and 1997/100; expanding H_4 H_2 H_0 with g4 = -611/25 E4 gives 1197",
            literal=_k3_expanded("phi_0_5_half", F(-1997, 50), F(-1997, 100), F(138, 25)),
        )
    )
    L.append(EquationSpec("deq:KZ:E4", "Kaneko-Zagier: D_6 D_4(E4) - 24/144 E4 E4 = 0", _kz_e4))
    L.append(_mde_spec("deq:E_4_1", "Jacobi-Eisenstein E_4_1: degree 2", "E_4_1", 2, {2: {(1, 0): F(-77, 4)}}))
    L.append(_mde_spec("deq:phi_-2_1", "phi_-2_1: degree 2", "phi_-2_1", 2, {2: {(1, 0): F(-5, 4)}}))
    L.append(_mde_spec("deq:theta_pow2", "theta^2: H_3 H_1 - 5/4 E4", "theta_pow2", 2, {2: {(1, 0): F(-5, 4)}}))
    L.append(
        _mde_spec(
            "deq:phi_10_1",
            "phi_10_1 = eta^18 theta^2: H_12 H_10 - 5/4 E4",
            "phi_10_1",
            2,
            {2: {(1, 0): F(-5, 4)}},
            note="literal variant reuses the theta^2 subscripts H_3 H_1; weight 10 needs H_12 H_10",
            literal=_literal_chain("phi_10_1", [2, 6], [(F(-5, 4), (1, 0), None)]),
        )
    )
    L.append(
        _mde_spec(
            "deq:phi_12_1", "phi_12_1 = delta phi_0_1: degree 3", "phi_12_1", 3, {2: {(1, 0): F(-101, 4)}, 3: {(0, 1): 10}}
        )
    )
    L.append(
        _mde_spec(
            "deq:theta_theta_2z", "theta(z) theta(2z): H_3 H_1 - 11/25 E4", "theta_theta_2z", 2, {2: {(1, 0): F(-11, 25)}}
        )
    )
    L.append(
        _mde_spec(
            "deq:theta_pow3",
            "theta^3: H_7/2 H_3/2 - 3 E4",
            "theta_pow3",
            2,
            {2: {(1, 0): F(-3)}},
            note="literal variant H_{5/2} H_{3/2}; after H_{3/2} the weight is 7/2, so the outer operator is H_{7/2}",
            literal=_literal_chain("theta_pow3", [3, 5], [(F(-3), (1, 0), None)]),
        )
    )
    L.append(
        _mde_spec(
            "deq:theta_pow2_theta_2z",
            "theta(z)^2 theta(2z): H_7/2 H_3/2 - 5/4 E4",
            "theta_pow2_theta_2z",
            2,
            {2: {(1, 0): F(-5, 4)}},
        )
    )
    L.append(
        _mde_spec(
            "deq:theta_pow4",
            "theta^4: H_6 H_4 H_2 - 23/4 E4 H_2 + 81/4 E6",
            "theta_pow4",
            3,
            {2: {(1, 0): F(-23, 4)}, 3: {(0, 1): F(81, 4)}},
            note="literal variant H_6 H_4 H_1; the chain on a weight-2 form is H_6 H_4 H_2",
            literal=_literal_chain("theta_pow4", [2, 8, 12], [(F(-23, 4), (1, 0), 4), (F(81, 4), (0, 1), None)]),
        )
    )
    L.append(
        _mde_spec(
            "deq:phi_-2_1_pow2",
            "phi_-2_1^2: H_0 H_-2 H_-4 - 23/4 E4 H_-4 + 81/4 E6",
            "phi_-2_1_pow2",
            3,
            {2: {(1, 0): F(-23, 4)}, 3: {(0, 1): F(81, 4)}},
        )
    )
    L.append(
        _mde_spec("deq:phi_0_2", "phi_0_2: degree 3", "phi_0_2", 3, {2: {(1, 0): F(-47, 4)}, 3: {(0, 1): F(13, 4)}})
    )
    L.append(
        _mde_spec("deq:psi_0_2", "psi_0_2: degree 3", "psi_0_2", 3, {2: {(1, 0): F(-263, 4)}, 3: {(0, 1): F(121, 4)}})
    )
    L.append(
        _mde_spec(
            "deq:rho_0_2", "rho_0_2: degree 3", "rho_0_2", 3, {2: {(1, 0): F(-335, 4)}, 3: {(0, 1): F(-275, 4)}}
        )
    )
    L.append(
        _mde_spec(
            "deq:phi_0_3",
            "phi_0_3: degree 4",
            "phi_0_3",
            4,
            {2: {(1, 0): F(-29, 2)}, 3: {(0, 1): F(22)}, 4: {(2, 0): F(-119, 16)}},
        )
    )

    def phi03_cubic(t):
        ch = iterate(form("phi_0_3", t), None, 3)
        lhs = assemble(ch, {2: {(1, 0): F(-33, 4)}, 3: {(0, 1): F(3, 2)}})
        p = form("phi_-2_1", t)
        return [_combo((1, lhs), (-60, _m(form("delta", t), p, p, p)))]

    L.append(
        EquationSpec("id:phi_0_3:delta", "H_4 H_2 H_0(phi_0_3) - 33/4 E4 H_0 + 3/2 E6 = 60 delta phi_-2_1^3", phi03_cubic)
    )
    L.append(
        _mde_spec(
            "deq:phi_0_4", "phi_0_4: degree 3", "phi_0_4", 3, {2: {(1, 0): F(-107, 16)}, 3: {(0, 1): F(23, 32)}}
        )
    )
    L.append(
        EquationSpec(
            "id:D4_E4", "D_4(E4) = -1/3 E6", _serre_identity("E4", F(1, 3), lambda t: form("E6", t))
        )
    )
    L.append(
        EquationSpec(
            "id:D6_E6", "D_6(E6) = -1/2 E4^2", _serre_identity("E6", F(1, 2), lambda t: _E(2, 0, t))
        )
    )
    L.append(EquationSpec("id:D12_delta", "D_12(delta) = 0", lambda t: [serre(form("delta", t))]))
    L.append(EquationSpec("id:D_eta", "D_{k/2}(eta^k) = 0 for k = 1..24", _serre_eta))
    L.append(EquationSpec("id:heat_theta", "H(theta) = 0", _heat_kernel("theta")))
    L.append(EquationSpec("id:heat_eta_phi_0_3_half", "H(eta phi_0_3/2) = 0", _heat_kernel("eta_phi_0_3_half")))
    L.append(
        EquationSpec(
            "id:H_phi_-2_1",
            "H_-2(phi_-2_1) = -1/2 phi_0_1",
            lambda t: [_combo((1, _h("phi_-2_1", t)), (F(1, 2), form("phi_0_1", t)))],
            note="phi_0_1 is constructed from this identity; its expansion is checked separately",
        )
    )
    L.append(
        EquationSpec(
            "id:H_phi_0_1",
            "H_0(phi_0_1) = -5/2 E4 phi_-2_1",
            lambda t: [_combo((1, _h("phi_0_1", t)), (F(5, 2), _m(form("E4", t), form("phi_-2_1", t))))],
        )
    )

    def h2h0_phi01(t):
        lhs = iterate(form("phi_0_1", t), None, 2)[2]
        return [
            _combo(
                (1, lhs),
                (-10, _m(form("E6", t), form("phi_-2_1", t))),
                (F(-5, 4), _m(form("E4", t), form("phi_0_1", t))),
            )
        ]

    L.append(EquationSpec("id:H2H0_phi_0_1", "H_2 H_0(phi_0_1) = 10 E6 phi_-2_1 + 5/4 E4 phi_0_1", h2h0_phi01))

    def h0_phi052(t):
        rhs = _m(form("E4", t), form("phi_-2_1", t), form("phi_0_3_half", t))
        return [_combo((1, _h("phi_0_5_half", t)), (F(11, 5), rhs))]

    L.append(EquationSpec("id:H_phi_0_5_half", "H_0(phi_0_5/2) = -11/5 E4 phi_-2_1 phi_0_3/2", h0_phi052))

    def h_m21_032(t):
        x = _m(form("phi_-2_1", t), form("phi_0_3_half", t))
        return [_combo((1, heat_k(x)), (F(1, 5), form("phi_0_5_half", t)))]

    L.append(
        EquationSpec("id:H_phi_-2_1_phi_0_3_half", "H_-2(phi_-2_1 phi_0_3/2) = -1/5 phi_0_1 phi_0_3/2", h_m21_032)
    )

    def h2h0_phi052(t):
        lhs = iterate(form("phi_0_5_half", t), None, 2)[2]
        x = _m(form("E6", t), form("phi_-2_1", t), form("phi_0_3_half", t))
        return [_combo((1, lhs), (F(-44, 5), x), (F(-11, 25), _m(form("E4", t), form("phi_0_5_half", t))))]

    L.append(
        EquationSpec(
            "id:H2H0_phi_0_5_half",
            "H_2 H_0(phi_0_5/2) = 44/5 E6 phi_-2_1 phi_0_3/2 + 11/25 E4 phi_0_5/2",
            h2h0_phi052,
        )
    )

    def theta3_steps(t):
        a = _m(form("phi_-1_1_half", t), form("phi_-2_1", t))
        b = _m(form("phi_-1_1_half", t), form("phi_0_1", t))
        return [
            _combo((1, heat_k(a)), (1, b)),
            _combo((1, heat_k(b)), (3, _m(form("E4", t), a))),
        ]

    L.append(
        EquationSpec(
            "id:theta_pow3:steps",
            "H_-3(phi_-1_1/2 phi_-2_1) = -phi_-1_1/2 phi_0_1, H_-1(phi_-1_1/2 phi_0_1) = -3 E4 phi_-1_1/2 phi_-2_1",
            theta3_steps,
        )
    )

    def theta22z_steps(t):
        a = _m(form("phi_-1_2", t), form("phi_-2_1", t))
        b = _m(form("phi_-1_2", t), form("phi_0_1", t))
        return [
            _combo((1, heat_k(a)), (F(1, 2), b)),
            _combo((1, heat_k(b)), (F(5, 2), _m(form("E4", t), a))),
        ]

    L.append(
        EquationSpec(
            "id:theta_pow2_theta_2z:steps",
            "H_-3(phi_-1_2 phi_-2_1) = -1/2 phi_-1_2 phi_0_1, H_-1(phi_-1_2 phi_0_1) = -5/2 E4 phi_-1_2 phi_-2_1",
            theta22z_steps,
        )
    )

    def h_powers(t):
        p, q = form("phi_-2_1", t), form("phi_0_1", t)
        out = []
        for n in (2, 3, 4):
            pn = p**n
            rhs = mul(p ** (n - 1), q)
            out.append(_combo((1, heat_k(pn.truncate(t))), (n - F(1, 2), rhs)))
        return out

    L.append(
        EquationSpec("id:H_phi_-2_1_pow_n", "H_-2n(phi_-2_1^n) = (1/2 - n) phi_-2_1^(n-1) phi_0_1, n = 2, 3, 4", h_powers)
    )

    def ring_relation(t):
        return [
            _combo(
                (4, form("phi_0_4", t)),
                (-1, _m(form("phi_0_1", t), form("phi_0_3", t))),
                (1, _m(form("phi_0_2", t), form("phi_0_2", t))),
            )
        ]

    L.append(EquationSpec("id:ring_relation", "4 phi_0_4 = phi_0_1 phi_0_3 - phi_0_2^2", ring_relation))

    def quotients(t):
        th = form("theta", t)
        return [
            _combo((1, _m(form("phi_0_3_half", t), th)), (-1, form("theta_2z", t))),
            _combo((1, _m(form("phi_0_4", t), th)), (-1, form("theta_3z", t))),
        ]

    L.append(
        EquationSpec("id:theta_quotients", "phi_0_3/2 theta(z) = theta(2z), phi_0_4 theta(z) = theta(3z)", quotients)
    )
    return L


_LEDGER = _build_ledger()
_LEDGER_BY_ID = {e.id: e for e in _LEDGER}


def ledger() -> list[EquationSpec]:
    return list(_LEDGER)


def get_entry(entry_id: str) -> EquationSpec:
    try:
        return _LEDGER_BY_ID[entry_id]
    except KeyError:
        raise KeyError(f"unknown ledger entry {entry_id!r}") from None


def verify_equation(entry: str | EquationSpec, trunc24: int, *, literal: bool = False) -> VerificationResult:
    """Build the entry's left-hand side(s) and certify that they vanish.

    With ``literal=True`` the entry's literal variant (operator subscripts
    or coefficients as commonly quoted) is checked instead.
    """
    spec = get_entry(entry) if isinstance(entry, str) else entry
    build = spec.build
    if literal:
        if spec.literal is None:
            raise ValueError(f"{spec.id} has no literal variant")
        build = spec.literal
    certs = tuple(certify_zero(s) for s in build(trunc24))
    verdicts = {c.verdict for c in certs}
    if NOT_ZERO in verdicts:
        status = "FAIL"
    elif verdicts <= {CERTIFIED_ZERO}:
        status = "PASS"
    else:
        status = "INCONCLUSIVE"
    return VerificationResult(spec.id, status, certs, spec.note)


def verify_all(trunc24: int) -> list[VerificationResult]:
    return [verify_equation(e, trunc24) for e in _LEDGER]


# --------------------------------------------------------------------------
# discovery


def _unknown_layout(degree: int) -> list[tuple[int, tuple[int, int]]]:
    return [(i, ab) for i in range(2, degree + 1) for ab in modular_basis(4 * i)]


def discover(
    target: str | QZSeries, max_degree: int, trunc24: int, *, name: str | None = None
) -> DiscoveryResult:
    """Least-degree monic equation H^r f + sum g_{2i} H^{r-i} f = 0, g_{2i} in M_{2i}.

    Unknowns are the coordinates of each g_{2i} over E4^a E6^b.  All Fourier
    coefficients of the combination up to and including the certificate
    slice are forced to vanish; a solution is then certified on every slice
    below ``trunc24``.
    """
    if isinstance(target, str):
        phi = form(target, trunc24)
        label = target
    else:
        phi = target.truncate(trunc24) if target.trunc24 > trunc24 else target
        label = name or "f"
    if phi.index2 <= 0:
        raise ValueError("discovery needs a Jacobi form of positive index")
    e = phi.char24
    infeasible: list[Infeasible] = []
    chain = iterate(phi, None, 0)
    for r in range(1, max_degree + 1):
        chain = OperatorChain(chain.base_weight2, chain.base_index2, chain.produced + (heat_k(chain[r - 1]),))
        top = chain[r]
        w = top.weight2 - e
        t0 = vanishing_bound(w, phi.index2) if w % 2 == 0 else None
        if t0 is None:
            raise ValueError("form is outside the structure-theorem ring after removing its eta factor")
        bound = e + 24 * (t0 + 1)
        if top.trunc24 < bound:
            return DiscoveryResult(label, None, tuple(infeasible), inconclusive_degree=r)
        layout = _unknown_layout(r)
        cols = [mul(eisenstein_monomial(a, b, top.trunc24), chain[r - i]) for i, (a, b) in layout]
        keys = sorted({k for s in [top, *cols] for k in s.terms if k[0] < bound})
        rows = [[s.terms.get(k, 0) for s in cols] for k in keys]
        rhs = [-top.terms.get(k, 0) for k in keys]
        try:
            sol = linalg.solve(rows, rhs, len(cols)) if cols else _solve_empty(rhs)
        except linalg.Inconsistent as exc:
            infeasible.append(Infeasible(r, exc.rank, exc.augmented_rank, len(cols), len(keys)))
            continue
        coeffs = _unflatten(layout, sol.particular)
        cert = certify_zero(assemble(chain, coeffs))
        if cert.verdict != CERTIFIED_ZERO:
            raise ArithmeticError(f"solution at degree {r} failed re-verification: {cert}")
        null = tuple(_unflatten(layout, v) for v in sol.nullspace)
        eq = MDEquation(label, chain.base_weight2, phi.index2, r, coeffs, cert, null)
        return DiscoveryResult(label, eq, tuple(infeasible))
    return DiscoveryResult(label, None, tuple(infeasible))


def _solve_empty(rhs) -> linalg.Solution:
    if any(rhs):
        raise linalg.Inconsistent(0, 1)
    return linalg.Solution((), (), 0)


def _unflatten(layout, vec) -> dict[int, dict[tuple[int, int], Fraction]]:
    out: dict[int, dict[tuple[int, int], Fraction]] = {}
    for (i, ab), c in zip(layout, vec):
        out.setdefault(i, {})[ab] = F(c)
    return out


# --------------------------------------------------------------------------
# elliptic genus


class InconsistentHodgeData(ValueError):
    pass


class NonIntegralWarning(UserWarning):
    pass


@dataclass(frozen=True)
class GenusInput:
    dimension: int
    euler: Fraction | None = None
    chi: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.euler is None and self.chi is None:
            raise ValueError("give the Euler number or the chi_p list")
        if self.euler is not None:
            object.__setattr__(self, "euler", F(self.euler))
        if self.chi is not None:
            object.__setattr__(self, "chi", tuple(F(c) for c in self.chi))


@dataclass(frozen=True)
class GenusResult:
    series: QZSeries
    basis: JacobiBasis
    coordinates: tuple[Fraction, ...]
    unique: bool = True
    nonintegral: bool = False


def elliptic_genus(inp: GenusInput, trunc24: int) -> GenusResult:
    d = inp.dimension
    if not 2 <= d <= 12:
        raise ValueError("dimension must be between 2 and 12")
    B = basis(0, d)
    vecs = B.series(trunc24)
    q0 = [v.q_slice(0) for v in vecs]
    unique = True
    if inp.chi is not None:
        chi = inp.chi
        if len(chi) != d + 1:
            raise ValueError(f"expected {d + 1} values chi_0..chi_{d}, got {len(chi)}")
        for p in range(d + 1):
            if chi[p] != (-1) ** d * chi[d - p]:
                raise InconsistentHodgeData(f"chi_{p} = {chi[p]} but (-1)^d chi_{d - p} = {(-1) ** d * chi[d - p]}")
        if inp.euler is not None and sum((-1) ** p * c for p, c in enumerate(chi)) != inp.euler:
            raise InconsistentHodgeData("Euler number disagrees with the alternating sum of chi_p")
        target = {d - 2 * p: (-1) ** p * chi[p] for p in range(d + 1)}
        keys = sorted(set(target) | {l for s in q0 for l in s})
        rows = [[s.get(l, 0) for s in q0] for l in keys]
        rhs = [target.get(l, 0) for l in keys]
        try:
            sol = linalg.solve(rows, rhs, len(vecs))
        except linalg.Inconsistent as exc:
            raise InconsistentHodgeData(f"no weight-0 index-{F(d, 2)} form has this q^0 slice ({exc})") from None
        x = sol.particular
        unique = sol.unique
    else:
        if B.dimension != 1:
            raise ValueError("the Euler number alone determines the genus only in dimensions 2, 3 and 5")
        at_zero = sum(q0[0].values())
        x = (inp.euler / at_zero,)
    series = linear_combination(zip(x, vecs))
    nonintegral = any(c.denominator != 1 for c in series.terms.values())
    if nonintegral:
        warnings.warn("elliptic genus has non-integral Fourier coefficients", NonIntegralWarning, stacklevel=2)
    return GenusResult(series, B, tuple(F(c) for c in x), unique, nonintegral)
