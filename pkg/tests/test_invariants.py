import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    brute_state_sum_at_one,
    figure8_pd,
    hopf_pd,
    kinked_unknot,
    left_trefoil_pd,
    right_trefoil_pd,
)
from knotcert.errors import BoundExceeded, InputError
from knotcert.invariants import (
    DELTA,
    ONE,
    ComponentPD,
    LaurentPoly,
    add_kink,
    braid_closure,
    check_pd,
    classify_knot,
    jones_normalized,
    kauffman_bracket,
    linking_number,
    mirror_pd,
    reverse_component,
    skein_bracket,
    unknot_pd,
    writhe,
)

RIGHT_TREFOIL_BRACKET = LaurentPoly({5: -1, -3: -1, -7: 1})
RIGHT_TREFOIL_JONES = LaurentPoly({-4: 1, -12: 1, -16: -1})  # -t^4 + t^3 + t
FIGURE8_JONES = LaurentPoly({8: 1, 4: -1, 0: 1, -4: -1, -8: 1})


# -- LaurentPoly --------------------------------------------------------------

def test_poly_text_form():
    assert RIGHT_TREFOIL_BRACKET.to_text() == "-A^5 - A^-3 + A^-7"
    assert ONE.to_text() == "1"
    assert LaurentPoly().to_text() == "0"
    assert LaurentPoly({1: 2, 0: -3}).to_text() == "2A - 3"
    assert RIGHT_TREFOIL_JONES.t_form().to_text("t") == "-t^4 + t^3 + t"
    assert FIGURE8_JONES.t_form().to_text("t") == "t^2 - t + 1 - t^-1 + t^-2"
    assert LaurentPoly({3: 1}).t_form() is None


def test_poly_json_form():
    obj = RIGHT_TREFOIL_BRACKET.to_json_obj()
    assert obj == {"A": {"-7": 1, "-3": -1, "5": -1}}
    assert LaurentPoly.from_json_obj(obj) == RIGHT_TREFOIL_BRACKET


polys = st.builds(
    LaurentPoly,
    st.dictionaries(st.integers(-8, 8), st.integers(-9, 9), max_size=6),
)


@given(polys, polys, polys)
@settings(max_examples=150)
def test_poly_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + LaurentPoly() == p
    assert p * ONE == p
    assert p - p == LaurentPoly()
    assert all(v != 0 for v in (p * q).coeffs().values())


@given(polys)
def test_poly_mirror_involution(p):
    assert p.subs_inverse().subs_inverse() == p
    assert p.eval_at_unit(1) == p.subs_inverse().eval_at_unit(1)


# -- bracket oracles ----------------------------------------------------------

def test_bracket_trivial_loops():
    assert kauffman_bracket(unknot_pd()) == ONE
    two = ComponentPD((("u",), ("v",)), {}, ((), ()))
    assert kauffman_bracket(two) == DELTA


def test_bracket_kinks():
    assert kauffman_bracket(kinked_unknot([1])) == LaurentPoly({3: -1})
    assert kauffman_bracket(kinked_unknot([-1])) == LaurentPoly({-3: -1})


def test_bracket_right_trefoil():
    assert kauffman_bracket(right_trefoil_pd()) == RIGHT_TREFOIL_BRACKET


def test_bracket_bound():
    with pytest.raises(BoundExceeded):
        kauffman_bracket(kinked_unknot([1] * 17))
    assert kauffman_bracket(kinked_unknot([1] * 17), max_crossings=17) is not None


def test_bracket_checksum_at_one(pd_zoo):
    for pd in pd_zoo:
        assert kauffman_bracket(pd).eval_at_unit(1) == brute_state_sum_at_one(pd)


def test_statesum_matches_skein(pd_zoo):
    for pd in pd_zoo:
        if len(pd.crossings) <= 10:
            assert kauffman_bracket(pd) == skein_bracket(pd)


def test_mirror_property(pd_zoo):
    for pd in pd_zoo:
        assert kauffman_bracket(mirror_pd(pd)) == kauffman_bracket(pd).subs_inverse()


# -- writhe -------------------------------------------------------------------

def test_writhe_basics(pd_zoo):
    assert writhe(unknot_pd()) == 0
    assert writhe(right_trefoil_pd()) == 3
    assert writhe(left_trefoil_pd()) == -3
    assert writhe(kinked_unknot([1, -1, 1])) == 1
    for pd in pd_zoo:
        assert writhe(mirror_pd(pd)) == -writhe(pd)


def test_writhe_orientation_independent_for_knots(pd_zoo):
    for pd in pd_zoo:
        if len(pd.components) == 1 and pd.passages[0]:
            assert writhe(reverse_component(pd, 0)) == writhe(pd)


# -- jones --------------------------------------------------------------------

def test_jones_kinked_unknots():
    for n in range(1, 8):
        signs = [1 if i % 2 else -1 for i in range(n)]
        assert jones_normalized(kinked_unknot(signs)) == ONE
        assert jones_normalized(kinked_unknot([1] * n)) == ONE


def test_jones_trefoil_and_figure8():
    assert jones_normalized(right_trefoil_pd()) == RIGHT_TREFOIL_JONES
    assert jones_normalized(left_trefoil_pd()) == RIGHT_TREFOIL_JONES.subs_inverse()
    f8 = jones_normalized(figure8_pd())
    assert f8 == FIGURE8_JONES
    assert f8 == f8.subs_inverse()  # amphichiral


# -- classification -----------------------------------------------------------

def test_classify_trefoil_and_unknots():
    verdict = classify_knot(right_trefoil_pd())
    assert verdict.kind == "knotted"
    assert verdict.witness == RIGHT_TREFOIL_JONES
    assert classify_knot(kinked_unknot([1] * 7)).kind == "unknot"
    assert classify_knot(unknot_pd()).kind == "unknot"


def test_classify_inconclusive_beyond_bound():
    big = kinked_unknot([1] * 20)
    verdict = classify_knot(big)
    assert verdict.kind == "inconclusive"
    assert "20" in verdict.reason
    assert classify_knot(big, max_certified_crossings=20).kind == "unknot"


def test_classify_rejects_links():
    with pytest.raises(InputError):
        classify_knot(hopf_pd())


# -- linking numbers ----------------------------------------------------------

def test_linking_split_and_hopf():
    split = ComponentPD((("u",), ("v",)), {}, ((), ()))
    assert linking_number(split) == 0
    hopf = hopf_pd()
    assert linking_number(hopf) == 1
    assert linking_number(mirror_pd(hopf)) == -1


def test_linking_symmetry_and_orientation():
    hopf = hopf_pd()
    swapped = ComponentPD(
        tuple(reversed(hopf.components)), dict(hopf.crossings),
        tuple(reversed(hopf.passages)))
    check_pd(swapped)
    assert linking_number(swapped) == linking_number(hopf)
    assert linking_number(reverse_component(hopf, 0)) == -linking_number(hopf)
    assert linking_number(reverse_component(hopf, 1)) == -linking_number(hopf)


def test_linking_requires_two_components():
    with pytest.raises(InputError):
        linking_number(right_trefoil_pd())


def test_linking_intra_crossings_ignored():
    # a kink on one hopf component changes nothing
    kinked = add_kink(hopf_pd(), 0, 0, 1, "kk", "kn")
    assert linking_number(kinked) == 1


# -- Reidemeister invariance --------------------------------------------------

def test_reidemeister_one():
    for base in (unknot_pd(), right_trefoil_pd()):
        v = jones_normalized(base)
        for sign in (1, -1):
            kinked = add_kink(base, 0, 0, sign, "r1", "r1n")
            assert jones_normalized(kinked) == v
            # the raw bracket moves by exactly -A^(3*sign)
            assert kauffman_bracket(kinked) == \
                LaurentPoly({3 * sign: -1}) * kauffman_bracket(base)


def test_reidemeister_two():
    # single-component closures keep the automatic orientation canonical
    pairs = [
        ([(1, 1), (1, -1), (1, 1), (2, 1)], [(1, 1), (2, 1)], 3),
        ([(1, 1), (1, -1), (1, 1)], [(1, 1)], 2),
    ]
    for before, after, strands in pairs:
        assert jones_normalized(braid_closure(before, strands)) == \
            jones_normalized(braid_closure(after, strands))


def test_reidemeister_three():
    suffixes = [[(1, 1)], [(2, 1)]]
    for suffix in suffixes:
        lhs = braid_closure([(1, 1), (2, 1), (1, 1)] + suffix, 3)
        rhs = braid_closure([(2, 1), (1, 1), (2, 1)] + suffix, 3)
        assert jones_normalized(lhs) == jones_normalized(rhs)


# -- structural sanity --------------------------------------------------------

def test_zoo_is_structurally_valid(pd_zoo):
    for pd in pd_zoo:
        check_pd(pd)


def test_make_pd_rejects_bad_multiplicity():
    from knotcert.invariants import make_pd_from_crossings
    with pytest.raises(InputError):
        make_pd_from_crossings({"x": (["a", "a", "a", "b"], 0)})
