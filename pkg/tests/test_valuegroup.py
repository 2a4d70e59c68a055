from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramify import valuegroup as vg
from ramify.errors import InconsistentInfimum, Undecidable, ValidationError

G3 = vg.ValueGroup((3,))


def test_parse_and_str():
    G = vg.ValueGroup.parse("Z[1/3] x Z")
    assert G.divisibility == (3, "Z")
    assert str(G) == "Z[1/3] x Z"
    assert vg.ValueGroup.parse("Q").rank == 1
    with pytest.raises(ValidationError):
        vg.ValueGroup.parse("R")
    with pytest.raises(ValidationError):
        vg.ValueGroup((4,))


def test_json_round_trip():
    for G in vg.group_grid((2, 3), 2):
        assert vg.ValueGroup.from_json(G.to_json()) == G


def test_membership():
    assert (Fraction(1, 9),) in G3
    assert (Fraction(1, 2),) not in G3
    assert (Fraction(1, 2),) not in vg.ValueGroup(("Z",))
    assert (Fraction(5, 7),) in vg.ValueGroup(("Q",))


def test_convex_chain_and_quotients():
    G = vg.ValueGroup.parse("Z[1/3] x Z")
    chain = vg.convex_subgroups(G)
    assert [str(H) for H in chain] == ["0", "0 x Z", "Z[1/3] x Z"]
    assert vg.consecutive_quotients(G) == ["Z", 3]
    assert vg.rank(G) == 2


@pytest.mark.parametrize(
    "text, expected",
    [("Z", False), ("Z[1/2]", True), ("Q", True), ("Z[1/2] x Z", False), ("Q x Z[1/5]", True), ("Z x Q", False)],
)
def test_dr_condition(text, expected):
    assert vg.dr_valuegroup_condition(vg.ValueGroup.parse(text)) is expected


@pytest.mark.parametrize("k", range(1, 6))
def test_chain_length_of_lex_power(k):
    assert len(vg.convex_subgroups(vg.ValueGroup(("Z",) * k))) == k + 1


def test_open_cut_in_discrete_group_is_closed_at_successor():
    Z = vg.ValueGroup(("Z",))
    c = vg.Cut.open(Z, 2)
    assert c.canonical == ((Fraction(3),), True)
    assert vg.cut_equal(c, vg.Cut.closed(Z, 3))


def test_open_cut_in_dense_group():
    c = vg.Cut.open(G3, Fraction(1, 3))
    assert c.canonical == ((Fraction(1, 3),), False)
    assert Fraction(1, 3) not in c and Fraction(10, 27) in c


def test_limit_cut_attainment_rules():
    terms = [Fraction(1, 3 ** k) for k in range(1, 5)]
    c = vg.Cut.limit(G3, terms, 0, False)
    assert c.canonical == ((Fraction(0),), False)
    with pytest.raises(Undecidable):
        _ = vg.Cut.limit(G3, terms, 0).canonical
    # the infimum as the last term forces attainment
    d = vg.Cut.limit(G3, terms + [0], 0)
    assert d.canonical == ((Fraction(0),), True)


def test_limit_cut_rejects_inconsistent_data():
    with pytest.raises(InconsistentInfimum):
        vg.Cut.limit(G3, [1, Fraction(1, 3)], Fraction(1, 2))
    with pytest.raises(InconsistentInfimum):
        vg.Cut.limit(G3, [1, 0], 0, attained=False)
    with pytest.raises(ValidationError):
        vg.Cut.limit(G3, [Fraction(1, 3), 1], 0)
    with pytest.raises(InconsistentInfimum):
        vg.Cut.limit(vg.ValueGroup(("Z",)), [3, 2], 1, attained=False)
    with pytest.raises(ValidationError):
        vg.Cut.limit(vg.ValueGroup(("Z", "Z")), [(1, 0)], (0, 0))


def test_cut_json_round_trip():
    for c in (vg.Cut.closed(G3, 1), vg.Cut.open(G3, Fraction(2, 3)),
              vg.Cut.limit(G3, [Fraction(4, 3), Fraction(10, 9)], 1, False)):
        back = vg.Cut.from_json(c.to_json())
        assert vg.cut_equal(back, c)


def test_cut_power():
    c = vg.Cut.limit(G3, [Fraction(4, 3), Fraction(10, 9)], 1, False)
    c3 = vg.cut_power(c, 3)
    assert c3.canonical == ((Fraction(3),), False)
    assert vg.cut_contains(c, c3) and not vg.cut_contains(c3, c)


def test_negative_boundary_rejected():
    with pytest.raises(ValidationError):
        vg.Cut.closed(G3, -1)


rationals3 = st.builds(lambda n, k: Fraction(n, 3 ** k), st.integers(0, 60), st.integers(0, 4))


@given(rationals3, st.booleans(), st.integers(1, 5))
def test_power_scales_boundary(b, closed, m):
    c = vg.Cut.closed(G3, b) if closed else vg.Cut.open(G3, b)
    pb, pclosed = vg.cut_power(c, m).canonical
    assert pb == (m * b,)
    assert pclosed == closed


@given(rationals3, st.booleans(), rationals3, st.booleans())
def test_containment_is_a_total_preorder_matching_membership(a, ca, b, cb):
    A = vg.cut_from_canonical(G3, (a,), ca)
    B = vg.cut_from_canonical(G3, (b,), cb)
    assert vg.cut_contains(A, B) or vg.cut_contains(B, A)
    if vg.cut_contains(A, B):
        for x in (b, b + Fraction(1, 81), a, a + Fraction(1, 81)):
            if x in B:
                assert x in A


@given(rationals3, st.booleans())
def test_canonical_form_is_stable(b, closed):
    c = vg.cut_from_canonical(G3, (b,), closed)
    assert vg.cut_from_canonical(G3, *c.canonical).canonical == c.canonical
