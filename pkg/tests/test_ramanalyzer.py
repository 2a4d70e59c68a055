from fractions import Fraction

import pytest
import sympy as sp

from oracles import X, vp
from ramify import ramanalyzer as ra
from ramify.errors import ValidationError
from ramify.localfield import FieldTower, cyclotomic


def test_cyclotomic3_cube_root_scan():
    s = ra.scan(ra.TowerFamily("cyclotomic", 3), n_range=range(1, 4))
    assert s.kprime == "x^3 - 3"
    assert s.sequence == [Fraction(4, 3), Fraction(2, 3), Fraction(2, 9)]
    assert all(e.agree for e in s.entries)
    assert s.verdict == ra.DEEPLY_RAMIFIED and s.basis == "evidence"


def test_first_cyclotomic_cube_root_value_by_discriminant():
    # Q_3(ζ_3, 3^{1/3}) = Q_3(γ) with γ^6 = -3, so v(δ) over Q_3 is v(disc(x^6 + 3))/6;
    # subtracting v(δ(Q_3(ζ_3)/Q_3)) = 1/2 leaves the first scan value
    total = Fraction(vp(sp.discriminant(sp.Poly(X ** 6 + 3, X)), 3), 6)
    assert total - Fraction(1, 2) == Fraction(4, 3)


def test_constant_family_scan():
    s = ra.scan(ra.TowerFamily("constant", 5), ra.KPrimeRecipe(0, (-5, 0, 1), "x^2 - 5"), range(1, 6))
    assert s.sequence == [Fraction(1, 2)] * 5
    assert s.verdict == ra.NOT_DEEPLY_RAMIFIED
    assert s.eventually_constant and s.monotone


def test_unramified_family_scan_and_parallel_determinism():
    fam = ra.TowerFamily("unramified", 2)
    s1 = ra.scan(fam, n_range=range(1, 4))
    s2 = ra.scan(fam, n_range=range(1, 4), workers=3)
    assert s1.sequence == s2.sequence == [Fraction(3, 2)] * 3
    assert s1.verdict == s2.verdict == ra.NOT_DEEPLY_RAMIFIED
    assert s1.basis == "closed-form"


@pytest.mark.parametrize("p", [3, 5])
def test_radical_family_matches_tame_formula(p):
    # F_n(ζ_p)/F_n is tame of index p-1 over a field of absolute index p^n
    s = ra.scan(ra.TowerFamily("p_radical", p), n_range=range(1, 4))
    assert s.sequence == [Fraction(p - 2, (p - 1) * p ** n) for n in range(1, 4)]


def test_cyclotomic2_default_is_tame_cube_root():
    s = ra.scan(ra.TowerFamily("cyclotomic", 2))
    assert s.kprime == "x^3 - 2"
    assert s.sequence == [Fraction(2, 3 * 2 ** (n - 1)) for n in range(1, 5)]


@pytest.mark.parametrize("family, p, verdict", [
    ("cyclotomic", 2, ra.DEEPLY_RAMIFIED),
    ("cyclotomic", 3, ra.DEEPLY_RAMIFIED),
    ("p_radical", 2, ra.DEEPLY_RAMIFIED),
    ("p_radical", 3, ra.DEEPLY_RAMIFIED),
    ("constant", 2, ra.NOT_DEEPLY_RAMIFIED),
    ("constant", 3, ra.NOT_DEEPLY_RAMIFIED),
    ("unramified", 2, ra.NOT_DEEPLY_RAMIFIED),
    ("unramified", 3, ra.NOT_DEEPLY_RAMIFIED),
])
def test_default_scans_are_monotone_with_expected_verdicts(family, p, verdict):
    s = ra.scan(ra.TowerFamily(family, p))
    assert s.complete
    assert s.non_increasing, s.sequence
    assert s.verdict == verdict


def test_threshold_is_configuration():
    fam = ra.TowerFamily("cyclotomic", 3)
    s = ra.scan(fam, n_range=range(1, 4), threshold=Fraction(1, 10))
    assert s.verdict == ra.INCONCLUSIVE and s.threshold == Fraction(1, 10)
    with pytest.raises(ValidationError):
        ra.scan(fam, threshold=0)


def test_failures_are_kept_per_level():
    fam = ra.TowerFamily("cyclotomic", 3)
    recipe = ra.KPrimeRecipe(2, (-3, 0, 0, 1), "over level 2")
    s = ra.scan(fam, recipe, range(1, 4))
    assert s.entries[0].error is not None and s.entries[0].v_delta is None
    assert s.entries[1].v_delta is not None
    assert not s.complete and s.verdict == ra.INCONCLUSIVE


def test_absolute_differents():
    assert ra.absolute_different(ra.TowerFamily("cyclotomic", 3), 1).value == Fraction(1, 2)
    a = ra.absolute_different(ra.TowerFamily("cyclotomic", 2), 3)
    assert a.value == 2 and a.agree
    for n in range(3):
        assert ra.absolute_different(ra.TowerFamily("unramified", 3), n).value == 0
    a = ra.absolute_different(ra.TowerFamily("p_radical", 2), 2)
    assert a.value == Fraction(11, 4) and a.agree


def test_frobenius_trivial_target():
    fam = ra.TowerFamily("cyclotomic", 3)
    w = ra.frobenius_witness(fam, 1, 1)
    assert w.status == ra.WITNESS and w.level == 1 and w.witness == fam.level(1).one()


def test_frobenius_witness_for_zeta3_minus_one():
    fam = ra.TowerFamily("cyclotomic", 3)
    w = ra.frobenius_witness(fam, 1, fam.level(1).gen(), m_max=2)
    assert w.level == 2 and w.witness == fam.level(2).gen() and w.verified
    assert w.levels_searched == [1, 2]


def test_frobenius_budget_and_levels():
    fam = ra.TowerFamily("cyclotomic", 3)
    x = fam.level(1).gen()
    w = ra.frobenius_witness(fam, 1, x, m_max=2, budget=5)
    assert w.status == ra.BUDGET_EXHAUSTED and w.tried == 5
    w = ra.frobenius_witness(fam, 1, x, m_max=1)
    assert w.status == ra.LEVELS_EXHAUSTED and w.tried == 9


def test_frobenius_constant_field_has_no_cube_root_of_uniformizer():
    fam = ra.TowerFamily.constant(cyclotomic(3, 1))
    w = ra.frobenius_witness(fam, 0, fam.level(0).gen(), m_max=4)
    # the constant family has one distinct level, searched once
    assert w.levels_searched == [0] and w.tried == 9
    assert w.status == ra.LEVELS_EXHAUSTED


def test_frobenius_validation():
    fam = ra.TowerFamily("cyclotomic", 3)
    with pytest.raises(ValidationError):
        ra.frobenius_witness(fam, 2, 1, m_max=1)
    with pytest.raises(ValidationError):
        ra.frobenius_witness(fam, 1, fam.level(1).gen().inverse())
    with pytest.raises(ValidationError):
        ra.frobenius_witness(ra.TowerFamily.constant(FieldTower.laurent(3)), 0, 1)
    with pytest.raises(ValidationError):
        ra.TowerFamily("mystery", 3)
