import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sheafcalc.chow import (
    P3,
    QUADRIC,
    QUINTIC,
    ChernData,
    ChowClass,
    ThreefoldData,
    ch_to_chern,
    chern_to_ch,
    chi_at_twist,
    dual_chern,
    hrr_chi,
    line_chern,
    load_threefold,
    reflexive_dual_rank2,
    ses_third,
    sum_chern,
    threefold_from_dict,
    threefold_to_dict,
    twist_chern,
)
from sheafcalc.errors import (
    ArityError,
    DomainError,
    NonIntegralChernClass,
    UnsupportedRank,
)

TX = ChernData(3, 4, 6, 4)

chern_data = st.builds(
    ChernData,
    rank=st.integers(0, 3),
    c1=st.integers(-(10**6), 10**6),
    n2=st.integers(-(10**6), 10**6),
    n3=st.integers(-(10**6), 10**6),
)
threefolds = st.sampled_from([P3, QUINTIC, QUADRIC])

# sums of line bundles: Chern data guaranteed to come from an actual sheaf,
# so Euler characteristics are defined on every preset
line_sums = st.lists(st.integers(-8, 8), min_size=1, max_size=3).map(
    lambda ts: [line_chern(t) for t in ts]
)


def _sheaf_like(parts, X):
    return sum_chern(parts, X)


def test_ch_of_trivial_bundle():
    assert chern_to_ch(line_chern(0), P3) == ChowClass.of(1, 0, 0, 0)


def test_ch_of_line_bundle_is_exp():
    for t in range(-5, 6):
        assert chern_to_ch(line_chern(t), P3) == ChowClass.exp_divisor(t)


def test_ch_of_tangent_top_piece():
    assert chern_to_ch(TX, P3).a3 == Fraction(2, 3)


def test_euler_sequence_recovers_tangent_bundle():
    four_lines = sum_chern([line_chern(1)] * 4, P3)
    assert ses_third(line_chern(0), four_lines, None, P3) == TX


def test_ch_round_trip_example():
    c = ChernData(2, 1, 3, 5)
    assert ch_to_chern(chern_to_ch(c, P3), P3) == c


def test_fractional_rank_rejected():
    with pytest.raises(NonIntegralChernClass):
        ch_to_chern(ChowClass.of(Fraction(3, 2)), P3)


@given(chern_data, threefolds)
def test_ch_round_trip(c, X):
    assert ch_to_chern(chern_to_ch(c, X), X) == c


def test_hrr_line_bundles_match_binomials():
    # chi(O(t)) on P^3 is the cubic (t+1)(t+2)(t+3)/6 for every t
    for t in range(-20, 21):
        expected = (t + 1) * (t + 2) * (t + 3) // 6
        assert hrr_chi(line_chern(t), P3) == expected


def test_hrr_presets_trivial_bundle():
    assert hrr_chi(line_chern(0), P3) == 1
    assert hrr_chi(line_chern(0), QUINTIC) == 0
    assert hrr_chi(line_chern(0), QUADRIC) == 1


def test_hrr_tangent_bundle():
    assert hrr_chi(TX, P3) == 15


def test_hrr_quadric_hyperplane():
    assert hrr_chi(line_chern(1), QUADRIC) == 5


def test_twist_examples():
    assert twist_chern(ChernData(2, 1, 3, 5), -1, P3) == ChernData(2, -1, 3, 5)
    assert twist_chern(TX, -2, P3) == ChernData(3, -2, 2, 0)
    c = ChernData(2, 7, -3, 11)
    assert twist_chern(c, 0, P3) == c


def test_twist_rejects_rank_4():
    with pytest.raises(UnsupportedRank):
        twist_chern(ChernData(4, 0, 0, 0), 1, P3)


@given(chern_data, st.integers(-20, 20), st.integers(-20, 20), threefolds)
def test_twist_group_law(c, a, b, X):
    assert twist_chern(twist_chern(c, a, X), b, X) == twist_chern(c, a + b, X)


@given(chern_data, st.integers(-20, 20), threefolds)
def test_twist_matches_character_route(c, t, X):
    # closed formulas against multiplication by exp(tH) in the graded ring
    ch = chern_to_ch(c, X) * ChowClass.exp_divisor(t)
    assert ch_to_chern(ch, X) == twist_chern(c, t, X)


@given(st.integers(-50, 50), st.integers(-(10**6), 10**6),
       st.integers(-(10**6), 10**6), st.integers(-20, 20), threefolds)
def test_rank2_c3_twist_invariance(c1, n2, n3, t, X):
    c = ChernData(2, c1, n2, n3)
    assert twist_chern(c, t, X).n3 == c.n3


def test_dual_examples():
    assert dual_chern(ChernData(2, 1, 3, 5)) == ChernData(2, -1, 3, -5)
    assert dual_chern(line_chern(7)) == line_chern(-7)


@given(chern_data)
def test_dual_is_involution(c):
    assert dual_chern(dual_chern(c)) == c


def test_reflexive_dual_examples():
    assert reflexive_dual_rank2(ChernData(2, 1, 3, 5)) == ChernData(2, -1, 3, 5)
    assert reflexive_dual_rank2(ChernData(2, 0, 9, 4)) == ChernData(2, 0, 9, 4)
    assert reflexive_dual_rank2(ChernData(2, 2, 2, 0)) == ChernData(2, -2, 2, 0)


def test_reflexive_dual_rejects_other_ranks():
    with pytest.raises(UnsupportedRank):
        reflexive_dual_rank2(TX)


@given(st.integers(-30, 30), st.integers(-(10**4), 10**4),
       st.integers(-(10**4), 10**4), threefolds)
def test_reflexive_dual_is_the_minus_c1_twist(c1, n2, n3, X):
    c = ChernData(2, c1, n2, n3)
    assert reflexive_dual_rank2(c) == twist_chern(c, -c.c1, X)
    assert reflexive_dual_rank2(reflexive_dual_rank2(c)) == c


def test_ses_third_middle_from_ends():
    # direct sum with the zero sheaf is the degenerate sequence
    a = ChernData(2, 1, 3, 5)
    zero = ChernData(0, 0, 0, 0)
    assert ses_third(a, None, zero, P3) == a


def test_ses_third_quotient_of_cotangent():
    # O(-4) inside the cotangent bundle leaves the degree-2 tangent sheaf
    omega1 = dual_chern(TX)
    f = ses_third(line_chern(-4), omega1, None, P3)
    assert f == ChernData(2, 0, 6, 20)


def test_ses_third_arity():
    with pytest.raises(ArityError):
        ses_third(TX, None, None, P3)
    with pytest.raises(ArityError):
        ses_third(TX, TX, TX, P3)


@given(line_sums, line_sums, threefolds)
def test_hrr_additive_over_sequences(a_parts, c_parts, X):
    a, c = _sheaf_like(a_parts, X), _sheaf_like(c_parts, X)
    b = ses_third(a, None, c, X)
    assert hrr_chi(b, X) == hrr_chi(a, X) + hrr_chi(c, X)


@given(line_sums, st.integers(-15, 15), threefolds)
def test_chi_at_twist_matches_twist_chern(parts, t, X):
    c = _sheaf_like(parts, X)
    assert chi_at_twist(c, t, X) == hrr_chi(twist_chern(c, t, X), X)


# ---------------------------------------------------------------------------
# Presets and the JSON document interface.


def test_preset_invariants():
    assert P3.is_p3
    assert not QUINTIC.is_p3
    assert QUINTIC.h3 == 5 and QUINTIC.cX == 0
    assert QUADRIC.rhoX is None and QUADRIC.gammaX is None


def test_threefold_json_round_trip(tmp_path):
    path = tmp_path / "quintic.json"
    path.write_text(json.dumps(threefold_to_dict(QUINTIC)))
    assert load_threefold(path) == QUINTIC


def test_threefold_document_validation():
    doc = threefold_to_dict(P3)
    with pytest.raises(DomainError):
        threefold_from_dict({**doc, "extra": 1})
    incomplete = dict(doc)
    del incomplete["rhoX"]
    with pytest.raises(DomainError):
        threefold_from_dict(incomplete)
    with pytest.raises(DomainError):
        threefold_from_dict({**doc, "h3": "one"})


def test_threefold_consistency_checks():
    with pytest.raises(DomainError):
        ThreefoldData("bad", 0, 4, 6, 4)
    with pytest.raises(DomainError):
        ThreefoldData("bad", 1, 4, 6, 4, rhoX=2, gammaX=1)
    with pytest.raises(DomainError):
        # stability forces cX < 3 rho
        ThreefoldData("bad", 1, 7, 6, 4, rhoX=2, tx_stable="stable")
