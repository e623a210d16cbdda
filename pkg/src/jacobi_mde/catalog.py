"""Named modular and Jacobi forms as exact truncated expansions.

Every constructor takes the exclusive truncation ``trunc24`` of the result
and over-computes its inputs so that quotients are complete to that order.
Results are memoised per ``(name, trunc24)``; set ``JACOBI_MDE_NO_CACHE=1``
to bypass the cache.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .series import QZSeries, div_exact, make_monomial, mul

__all__ = [
    "CATALOG",
    "CatalogEntry",
    "UnknownForm",
    "eisenstein",
    "eisenstein_monomial",
    "eta",
    "eta_power",
    "form",
    "one",
    "sigma",
    "theta",
    "theta_product",
]


class UnknownForm(KeyError):
    pass


def sigma(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n)."""
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
        d += 1
    return total


def one(trunc24: int) -> QZSeries:
    return make_monomial(0, 0, 1, 0, 0, trunc24)


def _euler_product(n_max: int, power: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n)^power up to q^n_max."""
    c = [0] * (n_max + 1)
    c[0] = 1
    for n in range(1, n_max + 1):
        for _ in range(power):
            for j in range(n_max, n - 1, -1):
                c[j] -= c[j - n]
    return c


def eta_power(k: int, trunc24: int) -> QZSeries:
    """eta(tau)^k = q^(k/24) prod (1 - q^n)^k."""
    if k < 0:
        raise ValueError("eta power must be non-negative")
    if trunc24 <= k:
        return QZSeries({}, k, 0, trunc24, char24=k % 24)
    n_max = (trunc24 - 1 - k) // 24
    coeffs = _euler_product(n_max, k)
    terms = {(k + 24 * j, 0): c for j, c in enumerate(coeffs) if c}
    return QZSeries(terms, k, 0, trunc24, char24=k % 24)


def eta(trunc24: int) -> QZSeries:
    if trunc24 < 1:
        raise ValueError("eta needs trunc24 >= 1")
    return eta_power(1, trunc24)


_EISENSTEIN = {2: (-24, 1), 4: (240, 3), 6: (-504, 5)}


def eisenstein(k: int, trunc24: int) -> QZSeries:
    """E2, E4, E6 via divisor sums; E2 is flagged quasi-modular."""
    if k not in _EISENSTEIN:
        raise ValueError(f"E{k} is not a basic Eisenstein series; build it from E4 and E6")
    if trunc24 < 24:
        raise ValueError("Eisenstein series need trunc24 >= 24")
    c, p = _EISENSTEIN[k]
    terms = {(0, 0): 1}
    for n in range(1, (trunc24 - 1) // 24 + 1):
        terms[(24 * n, 0)] = c * sigma(p, n)
    return QZSeries(terms, 2 * k, 0, trunc24, quasi=(k == 2))


def eisenstein_monomial(a: int, b: int, trunc24: int) -> QZSeries:
    """E4^a E6^b."""
    out = one(trunc24)
    for _ in range(a):
        out = mul(out, form("E4", trunc24))
    for _ in range(b):
        out = mul(out, form("E6", trunc24))
    return out


def theta(dilation: int, trunc24: int) -> QZSeries:
    """theta(tau, a z) = q^(1/8) zeta^(a/2) sum (-1)^n q^(n(n+1)/2) zeta^(a n)."""
    if dilation not in (1, 2, 3):
        raise ValueError("supported dilations are 1, 2, 3")
    if trunc24 < 3:
        raise ValueError("theta needs trunc24 >= 3")
    terms = {}
    n = 0
    while 3 + 12 * n * (n + 1) < trunc24:
        for m in {n, -n - 1}:
            terms[(3 + 12 * m * (m + 1), dilation * (2 * m + 1))] = (-1) ** (m % 2)
        n += 1
    return QZSeries(terms, 1, dilation * dilation, trunc24, char24=3)


def _product(lead: QZSeries, factors: list[dict[tuple[int, int], int]], trunc24: int) -> QZSeries:
    out = lead
    for f in factors:
        out = mul(out, QZSeries(f, 0, 0, trunc24))
    return out.truncate(trunc24)


def theta_product(trunc24: int) -> QZSeries:
    """theta(tau, z) from the triple product q^(1/8)(z^(1/2)-z^(-1/2)) prod (1-q^n z)(1-q^n/z)(1-q^n)."""
    lead = QZSeries({(3, 1): 1, (3, -1): -1}, 1, 1, trunc24)
    factors = []
    for n in range(1, (trunc24 - 1) // 24 + 1):
        factors += [{(0, 0): 1, (24 * n, 2): -1}, {(0, 0): 1, (24 * n, -2): -1}, {(0, 0): 1, (24 * n, 0): -1}]
    return _product(lead, factors, trunc24)


def _phi_0_3_half(t: int) -> QZSeries:
    # theta(2z)/theta(z) = (z^(1/2) + z^(-1/2)) prod (1 + q^n z)(1 + q^n/z)(1 - q^(2n-1) z^2)(1 - q^(2n-1)/z^2)
    lead = QZSeries({(0, 1): 1, (0, -1): 1}, 0, 3, t)
    factors = []
    for n in range(1, (t - 1) // 24 + 1):
        factors += [{(0, 0): 1, (24 * n, 2): 1}, {(0, 0): 1, (24 * n, -2): 1}]
    for n in range(1, (t - 1) // 48 + 2):
        if 24 * (2 * n - 1) < t:
            factors += [{(0, 0): 1, (24 * (2 * n - 1), 4): -1}, {(0, 0): 1, (24 * (2 * n - 1), -4): -1}]
    return _product(lead, factors, t)


def _phi_0_4(t: int) -> QZSeries:
    # theta(3z)/theta(z) = (z + 1 + 1/z) prod (1 - q^n z^3)(1 - q^n/z^3) / ((1 - q^n z)(1 - q^n/z));
    # the denominator has constant lowest slice 1, so long division applies
    lead = QZSeries({(0, 2): 1, (0, 0): 1, (0, -2): 1}, 0, 8, t)
    num, den = [], []
    for n in range(1, (t - 1) // 24 + 1):
        for s in (1, -1):
            num.append({(0, 0): 1, (24 * n, 6 * s): -1})
            den.append({(0, 0): 1, (24 * n, 2 * s): -1})
    return div_exact(_product(lead, num, t), _product(one(t), den, t))


def _phi_m2_1(t: int) -> QZSeries:
    th = form("theta", t + 3)
    return div_exact(mul(th, th), eta_power(6, t + 6))


def _phi_0_1(t: int) -> QZSeries:
    from .operators import heat_k

    return heat_k(form("phi_-2_1", t), -4).scale(-2)


def _e41(t: int) -> QZSeries:
    a = mul(form("E4", t), form("phi_0_1", t))
    b = mul(form("E6", t), form("phi_-2_1", t))
    return (a - b).scale(Fraction(1, 12))


def _phi_0_2(t: int) -> QZSeries:
    p01 = form("phi_0_1", t)
    p21 = form("phi_-2_1", t)
    return (mul(p01, p01) - mul(form("E4", t), mul(p21, p21))).scale(Fraction(1, 24))


def _psi_0_2(t: int) -> QZSeries:
    p01 = form("phi_0_1", t)
    return mul(p01, p01) - form("phi_0_2", t).scale(20)


def _rho_0_2(t: int) -> QZSeries:
    return form("psi_0_2", t).scale(2) - form("phi_0_2", t).scale(11)


def _prod(*names: str) -> Callable[[int], QZSeries]:
    def build(t: int) -> QZSeries:
        out = form(names[0], t)
        for n in names[1:]:
            out = mul(out, form(n, t))
        return out

    return build


def _quot(num: str, eta_k: int) -> Callable[[int], QZSeries]:
    def build(t: int) -> QZSeries:
        return div_exact(form(num, t + eta_k), eta_power(eta_k, t + eta_k))

    return build


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    weight2: int
    index2: int
    parity: str  # behaviour under z -> -z
    integral: bool
    recipe: Callable[[int], QZSeries]
    source: str
    quasi: bool = False
    char24: int = 0

    def build(self, trunc24: int) -> QZSeries:
        s = self.recipe(trunc24)
        if s.trunc24 < trunc24:
            raise ArithmeticError(f"recipe for {self.name} came out short: {s.trunc24} < {trunc24}")
        s = s.truncate(trunc24)
        if (s.weight2, s.index2) != (self.weight2, self.index2):
            raise ArithmeticError(f"recipe for {self.name} produced the wrong bidegree")
        return s


def _E(name, k2, recipe, source, quasi=False):
    return CatalogEntry(name, k2, 0, "even", True, recipe, source, quasi=quasi)


_ENTRIES = [
    CatalogEntry("eta", 1, 0, "even", True, eta, "q^(1/24) prod (1 - q^n)", char24=1),
    _E("delta", 24, lambda t: eta_power(24, t), "eta^24"),
    _E("E2", 4, lambda t: eisenstein(2, t), "1 - 24 sum sigma_1(n) q^n", quasi=True),
    _E("E4", 8, lambda t: eisenstein(4, t), "1 + 240 sum sigma_3(n) q^n"),
    _E("E6", 12, lambda t: eisenstein(6, t), "1 - 504 sum sigma_5(n) q^n"),
    _E("E8", 16, lambda t: eisenstein_monomial(2, 0, t), "E4^2"),
    _E("E10", 20, lambda t: eisenstein_monomial(1, 1, t), "E4 E6"),
    _E("E14", 28, lambda t: eisenstein_monomial(2, 1, t), "E4^2 E6"),
    CatalogEntry("theta", 1, 1, "odd", True, lambda t: theta(1, t), "theta(tau, z), sum form", char24=3),
    CatalogEntry("theta_2z", 1, 4, "odd", True, lambda t: theta(2, t), "theta(tau, 2z)", char24=3),
    CatalogEntry("theta_3z", 1, 9, "odd", True, lambda t: theta(3, t), "theta(tau, 3z)", char24=3),
    CatalogEntry("theta_pow2", 2, 2, "even", True, _prod("theta", "theta"), "theta^2", char24=6),
    CatalogEntry("theta_pow3", 3, 3, "odd", True, _prod("theta", "theta", "theta"), "theta^3", char24=9),
    CatalogEntry("theta_pow4", 4, 4, "even", True, _prod("theta_pow2", "theta_pow2"), "theta^4", char24=12),
    CatalogEntry("theta_theta_2z", 2, 5, "even", True, _prod("theta", "theta_2z"), "theta(z) theta(2z)", char24=6),
    CatalogEntry(
        "theta_pow2_theta_2z", 3, 6, "odd", True, _prod("theta_pow2", "theta_2z"), "theta(z)^2 theta(2z)", char24=9
    ),
    CatalogEntry("phi_-2_1", -4, 2, "even", True, _phi_m2_1, "theta^2 / eta^6"),
    CatalogEntry("phi_0_1", 0, 2, "even", True, _phi_0_1, "-2 H_{-2}(phi_-2_1)"),
    CatalogEntry("phi_-1_1_half", -2, 1, "odd", True, _quot("theta", 3), "theta / eta^3"),
    CatalogEntry("phi_-1_2", -2, 4, "odd", True, _quot("theta_2z", 3), "theta(2z) / eta^3"),
    CatalogEntry(
        "phi_0_3_half", 0, 3, "even", True, _phi_0_3_half, "theta(2z)/theta(z) as a division-free product"
    ),
    CatalogEntry("phi_0_2", 0, 4, "even", True, _phi_0_2, "(phi_0_1^2 - E4 phi_-2_1^2) / 24"),
    CatalogEntry("phi_0_3", 0, 6, "even", True, _prod("phi_0_3_half", "phi_0_3_half"), "phi_0_3_half^2"),
    CatalogEntry(
        "phi_0_4", 0, 8, "even", True, _phi_0_4, "theta(3z)/theta(z) from the triple product"
    ),
    CatalogEntry("phi_0_5_half", 0, 5, "even", True, _prod("phi_0_1", "phi_0_3_half"), "phi_0_1 phi_0_3_half"),
    CatalogEntry("psi_0_2", 0, 4, "even", True, _psi_0_2, "phi_0_1^2 - 20 phi_0_2"),
    CatalogEntry("rho_0_2", 0, 4, "even", True, _rho_0_2, "2 psi_0_2 - 11 phi_0_2"),
    CatalogEntry("E_4_1", 8, 2, "even", True, _e41, "(E4 phi_0_1 - E6 phi_-2_1) / 12"),
    CatalogEntry("phi_10_1", 20, 2, "even", True, lambda t: mul(eta_power(18, t), form("theta_pow2", t)), "eta^18 theta^2"),
    CatalogEntry("phi_12_1", 24, 2, "even", True, _prod("delta", "phi_0_1"), "delta phi_0_1"),
    CatalogEntry("phi_-2_1_pow2", -8, 4, "even", True, _prod("phi_-2_1", "phi_-2_1"), "phi_-2_1^2"),
    CatalogEntry(
        "eta_phi_0_3_half", 1, 3, "even", True, _prod("eta", "phi_0_3_half"), "eta phi_0_3_half", char24=1
    ),
]

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


@lru_cache(maxsize=None)
def _cached(name: str, trunc24: int) -> QZSeries:
    return CATALOG[name].build(trunc24)


def form(name: str, trunc24: int) -> QZSeries:
    """The named form, complete below ``q^(trunc24/24)``."""
    if name not in CATALOG:
        raise UnknownForm(name)
    if trunc24 < 24:
        raise ValueError(f"{name} needs trunc24 >= 24")
    if os.environ.get("JACOBI_MDE_NO_CACHE"):
        return CATALOG[name].build(trunc24)
    return _cached(name, trunc24)
