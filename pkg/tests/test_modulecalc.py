from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import determinantal_invariants
from ramify import modulecalc as mc
from ramify import valuegroup as vg
from ramify.errors import PrecisionExhausted, ValidationError
from ramify.localfield import EISENSTEIN, FieldTower

Z3 = FieldTower.padic(3)
G3 = vg.ValueGroup((3,))


def test_diagonal_snf_and_fitting():
    M = mc.PresentedModule.diagonal(Z3, [3, 9])
    assert M.invariants == [1, 2]
    assert mc.fitting_ideals(M) == [3, 1, 0]
    assert M.length == 3


def test_rank_deficient_presentation():
    M = mc.PresentedModule([[3, 3], [3, 3]], Z3)
    assert M.invariants == [1]
    assert M.free_rank == 1
    assert M.snf.redundant_relations == 1
    assert mc.fitting_ideals(M) == [None, 1, 0]


def test_unit_determinant_matrix_is_zero_module():
    M = mc.PresentedModule([[2, 1], [1, 2]], Z3)
    # det = 3, so O^2/M ≅ O/(3)
    assert M.invariants == [0, 1]
    assert not M.is_zero()
    assert mc.PresentedModule([[1, 0], [0, 2]], Z3).is_zero()


def test_certificate():
    A = [[6, 3, 9], [3, 27, 0]]
    res = mc.smith_normal_form(A, Z3)
    assert mc.check_certificate(A, res, Z3)
    assert mc.determinant_unit(res.U) and mc.determinant_unit(res.V)


def test_snf_over_ramified_level():
    T = FieldTower.padic(2).extend([-2, 0, 1], EISENSTEIN)
    th = T.gen()
    M = mc.PresentedModule([[th, 0], [0, th ** 3]], T)
    assert M.invariants == [Fraction(1, 2), Fraction(3, 2)]


def test_guard_against_unresolved_zero_block():
    T = FieldTower.padic(3, 8)
    tiny = T(3 ** 8) * T(1)  # zero at precision 8
    low = tiny.with_precision(2)
    with pytest.raises(PrecisionExhausted):
        mc.smith_normal_form([[low]], T)


def test_inverse_matrix():
    A = [[Z3(2), Z3(1)], [Z3(1), Z3(2)]]
    inv = mc.inverse_matrix(A)
    prod = mc.matmul(A, inv)
    assert all((prod[i][j] - (1 if i == j else 0)).is_zero() for i in range(2) for j in range(2))
    with pytest.raises(PrecisionExhausted):
        mc.inverse_matrix([[Z3(1), Z3(1)], [Z3(1), Z3(1)]])


entries = st.sampled_from([0, 1, -1, 2, 3, -3, 6, 9, 18, 27, 5, 12])


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))))
def test_invariants_match_determinantal_divisors(m):
    res = mc.smith_normal_form(m, Z3)
    assert res.invariants == determinantal_invariants(m, 3)


@given(st.lists(st.sampled_from([1, 3, 9, 27, 2, 6]), min_size=1, max_size=3),
       st.lists(st.sampled_from([1, 3, 9, 27, 2, 6]), min_size=1, max_size=3))
def test_fitting_zero_is_additive(a, b):
    M, N = mc.PresentedModule.diagonal(Z3, a), mc.PresentedModule.diagonal(Z3, b)
    assert mc.fitting_ideals(M.direct_sum(N))[0] == mc.fitting_ideals(M)[0] + mc.fitting_ideals(N)[0]


# -- cut modules and defect ----------------------------------------------------------------------


def test_cut_modules_need_dense_rank_one():
    Z = vg.ValueGroup(("Z",))
    with pytest.raises(ValidationError):
        mc.CutModule(((vg.Cut.closed(Z, 0), vg.Cut.closed(Z, 1)),))
    with pytest.raises(ValidationError):
        mc.CutModule(((vg.Cut.closed(G3, 1), vg.Cut.closed(G3, 0)),))


def test_annihilator_gap_and_almost_zero():
    I, J = vg.Cut.open(G3, 0), vg.Cut.closed(G3, 0)
    M = mc.CutModule(((J, I),))
    assert M.gaps() == [0] and mc.is_almost_zero(M)
    M = mc.CutModule(((vg.Cut.closed(G3, Fraction(1, 3)), vg.Cut.open(G3, 1)),))
    assert M.gaps() == [Fraction(2, 3)] and not mc.is_almost_zero(M)


def test_star_closes_open_boundaries():
    assert mc.star(vg.Cut.open(G3, 0)).canonical == ((Fraction(0),), True)
    c = vg.Cut.closed(G3, 1)
    assert mc.star(c) is c


def test_defect_examples():
    r = mc.defect_classify([Fraction(1, 3 ** k) for k in range(1, 5)], 3, infimum=0)
    assert r.verdict == mc.INDEPENDENT and r.omega_zero and r.gap == 0
    r = mc.defect_classify([Fraction(4, 3), Fraction(10, 9)], 3, infimum=1, attained=False)
    assert r.verdict == mc.DEPENDENT and r.gap == 2 and not r.omega_zero
    r = mc.defect_classify([2], 3, infimum=2)
    assert r.verdict == mc.DEPENDENT and r.gap == 4
    assert r.ideal.canonical == ((Fraction(2),), True)


def test_defect_needs_infimum():
    with pytest.raises(ValidationError):
        mc.defect_classify([1], 3)


@given(st.integers(0, 30), st.integers(0, 3), st.sampled_from([2, 3, 5]))
def test_gap_is_p_minus_one_times_infimum(n, k, p):
    sigma = Fraction(n, p ** k)
    terms = [sigma + Fraction(1, p ** j) for j in range(1, 4)]
    r = mc.defect_classify(terms, p, vg.ValueGroup((p,)), sigma, False)
    assert r.gap == (p - 1) * sigma
    assert (r.verdict == mc.INDEPENDENT) == (sigma == 0)
