import random
import warnings
from fractions import Fraction as F

import pytest

from jacobi_mde.catalog import form
from jacobi_mde.mde import (
    GenusInput,
    InconsistentHodgeData,
    NonIntegralWarning,
    discover,
    elliptic_genus,
    format_equation,
    _mde_spec,
    get_entry,
    ledger,
    verify_all,
    verify_equation,
)
from jacobi_mde.ring import basis
from jacobi_mde.series import linear_combination

T = 24 * 12

MDE_ENTRIES = [e for e in ledger() if e.base is not None]


def test_ledger_shape():
    ids = [e.id for e in ledger()]
    assert len(ids) >= 24
    assert len(set(ids)) == len(ids)
    assert "deq:K3" in ids and "deq:CY3" in ids


def test_entry_lookup():
    assert get_entry("deq:K3").coeffs == {2: {(1, 0): F(-101, 4)}, 3: {(0, 1): 10}}
    with pytest.raises(KeyError):
        get_entry("deq:nope")


@pytest.mark.parametrize("entry", ledger(), ids=lambda e: e.id)
def test_entry_passes(entry):
    r = verify_equation(entry, T)
    assert r.status == "PASS", r
    assert all(c.certified for c in r.certificates)


@pytest.mark.parametrize("entry", ledger(), ids=lambda e: e.id)
def test_required_truncation_within_default(entry):
    req = entry.required_trunc24()
    assert req is not None and req <= T


@pytest.mark.parametrize("entry", MDE_ENTRIES, ids=lambda e: e.id)
def test_chain_weight_bookkeeping(entry):
    (lhs,) = entry.build(48)
    base = form(entry.base, 48)
    assert lhs.weight2 == base.weight2 + 4 * entry.degree
    assert lhs.index2 == base.index2
    assert not lhs.quasi


@pytest.mark.parametrize("entry_id", ["deq:theta_pow4", "deq:theta_pow3", "deq:phi_10_1", "deq:CY5:E2"])
def test_literal_variants_fail(entry_id):
    assert verify_equation(entry_id, T, literal=True).status == "FAIL"
    assert verify_equation(entry_id, T).status == "PASS"


def test_literal_requires_record():
    with pytest.raises(ValueError):
        verify_equation("deq:K3", T, literal=True)


def test_wrong_coefficient_fails():
    bad = _mde_spec("x", "K3 off by 1/4", "phi_0_1", 3, {2: {(1, 0): F(-100, 4)}, 3: {(0, 1): 10}})
    r = verify_equation(bad, T)
    assert r.status == "FAIL"
    assert r.certificates[0].first_nonzero[0] == 0


def test_low_truncation_is_inconclusive():
    # a degree-4 combination at index 3 needs two full q-slices
    r = verify_equation("deq:phi_0_3", 24)
    assert r.status == "INCONCLUSIVE"


def test_verify_all_in_order():
    res = verify_all(T)
    assert [r.id for r in res] == [e.id for e in ledger()]


@pytest.mark.parametrize("entry", MDE_ENTRIES, ids=lambda e: e.id)
def test_discovery_matches_ledger(entry):
    res = discover(entry.base, entry.degree, T)
    eq = res.equation
    assert eq is not None and eq.degree == entry.degree
    assert eq.unique
    clean = {i: {ab: c for ab, c in v.items() if c} for i, v in eq.coeffs.items()}
    clean = {i: v for i, v in clean.items() if v}
    assert clean == {i: v for i, v in entry.coeffs.items() if v}
    assert [i.degree for i in res.infeasible] == list(range(1, entry.degree))


def test_discovery_examples():
    eq = discover("phi_0_3_half", 1, T).equation
    assert eq.degree == 1 and eq.coeffs == {}
    eq = discover("phi_0_3", 4, T).equation
    assert eq.coefficient_vectors() == [(F(-29, 2),), (F(22),), (F(-119, 16),)]
    assert str(eq).startswith("H_6 H_4 H_2 H_0(phi_0_3) - 29/2 E4 H_2 H_0(phi_0_3)")


def test_discovery_negative_results():
    for name, lowest in [("phi_0_1", 3), ("phi_0_5_half", 3), ("phi_0_3", 4), ("phi_0_2", 3), ("psi_0_2", 3),
                         ("rho_0_2", 3), ("phi_0_4", 3)]:
        res = discover(name, lowest - 1, T)
        assert res.equation is None
        assert [i.degree for i in res.infeasible] == list(range(1, lowest))
        for i in res.infeasible:
            assert i.augmented_rank == i.rank + 1


def test_discovery_inconclusive():
    res = discover("phi_0_3", 4, 24)
    assert res.equation is None
    assert res.inconclusive_degree is not None


def test_discovery_rejects_index_zero():
    with pytest.raises(ValueError):
        discover(form("E4", T), 2, T)


def test_discovery_generic_index_2_small():
    rng = random.Random(3)
    for _ in range(4):
        x, y = rng.randint(-9, 9), rng.randint(1, 9)
        f = form("phi_0_2", T).scale(x) + form("psi_0_2", T).scale(y)
        eq = discover(f, 5, T, name="f").equation
        assert eq is not None and eq.degree <= 5


def test_format_equation():
    s = format_equation("f", 0, 2, {2: {(1, 0): F(-5, 4)}})
    assert s == "H_2 H_0(f) - 5/4 E4 f = 0"
    assert format_equation("g", 3, 1, {}) == "H_{3/2}(g) = 0"


# elliptic genus


def _chi_of(series, d):
    sl = series.q_slice(0)
    return [(-1) ** p * sl.get(d - 2 * p, 0) for p in range(d + 1)]


def test_genus_k3():
    g = elliptic_genus(GenusInput(2, euler=24), T)
    assert g.series == form("phi_0_1", T).scale(2)
    assert g.series.q_slice(0) == {-2: 2, 0: 20, 2: 2}


@pytest.mark.filterwarnings("ignore::jacobi_mde.mde.NonIntegralWarning")
@pytest.mark.parametrize("e", [-200, -6, 2, 6, 48, 96])
def test_genus_cy3_cy5_linear(e):
    g3 = elliptic_genus(GenusInput(3, euler=e), T)
    assert g3.series == form("phi_0_3_half", T).scale(F(e, 2))
    g5 = elliptic_genus(GenusInput(5, euler=e), T)
    assert g5.series == form("phi_0_5_half", T).scale(F(e, 24))


def test_genus_cy5_nonintegral_warns():
    with pytest.warns(NonIntegralWarning):
        g = elliptic_genus(GenusInput(5, euler=23), T)
    assert g.nonintegral
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        elliptic_genus(GenusInput(5, euler=48), T)


@pytest.mark.filterwarnings("ignore::jacobi_mde.mde.NonIntegralWarning")
@pytest.mark.parametrize("a,b", [(1, 0), (0, 1), (3, -2), (F(1, 2), 5)])
def test_genus_d4_chi(a, b):
    chi = [a, -b, 22 * a + 4 * b, -b, a]
    g = elliptic_genus(GenusInput(4, chi=chi), T)
    expected = form("psi_0_2", T).scale(a) + form("phi_0_2", T).scale(b)
    assert g.series == expected


def test_genus_d4_inconsistent():
    with pytest.raises(InconsistentHodgeData):
        elliptic_genus(GenusInput(4, chi=[1, 0, 0, 0, 1]), T)
    with pytest.raises(InconsistentHodgeData):
        elliptic_genus(GenusInput(4, chi=[1, 0, 22, 0, 2]), T)
    with pytest.raises(InconsistentHodgeData):
        elliptic_genus(GenusInput(4, euler=3, chi=[1, 0, 22, 0, 1]), T)


def test_genus_input_errors():
    with pytest.raises(ValueError):
        GenusInput(4)
    with pytest.raises(ValueError):
        elliptic_genus(GenusInput(4, euler=24), T)
    with pytest.raises(ValueError):
        elliptic_genus(GenusInput(13, euler=24), T)
    with pytest.raises(ValueError):
        elliptic_genus(GenusInput(4, chi=[1, 2]), T)


@pytest.mark.parametrize("d", range(2, 12))
def test_genus_round_trip(d):
    for phi in basis(0, d).series(T):
        g = elliptic_genus(GenusInput(d, chi=_chi_of(phi, d)), T)
        assert g.series == phi
        assert g.unique


def test_genus_d12_not_unique():
    phi = linear_combination(zip([1, 2, 3, 4, 5, 6, 7], basis(0, 12).series(T)))
    g = elliptic_genus(GenusInput(12, chi=_chi_of(phi, 12)), T)
    assert not g.unique
    assert g.series.q_slice(0) == phi.q_slice(0)
