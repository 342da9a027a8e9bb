from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from strategies import towers
from ramcalc import galois as gl
from ramcalc.biherbrand import BiSpec, bi_herbrand
from ramcalc.errors import (InconsistentLayer, MalformedProfile, NotIntegralFirstJump,
                            NotSingleJump, TameConflict, TooFewJumps)
from ramcalc.herbrand import RamTower
from ramcalc.pl import PLFun


def golden_a():
    return gl.profile_from_jumps(2, 2, 25, [(F(13, 3), 4), (F(31, 6), 4)])


def golden_b():
    return gl.profile_from_jumps(2, 2, 17, [(1, 2), (3, 4), (4, 2)])


def single(sw=7, r=1):
    q = 2 ** r
    return gl.profile_from_jumps(2, r, sw, [(F(sw, 1 + q), q * q)])


def test_analyze_two_jump():
    rep = gl.analyze_profile(golden_a())
    assert rep.c_sigma == F(19, 4) and not rep.c_is_jump
    assert rep.dim_core == 1 and rep.L_tower == RamTower(2, ((F(13, 3), 2),))
    assert rep.sw_core == 12 and rep.core_jump is None


def test_analyze_jump_at_crossing():
    rep = gl.analyze_profile(golden_b())
    assert rep.c_sigma == 3 and rep.c_is_jump and rep.dim_core == 2
    assert rep.L_tower == RamTower(2, ((1, 1),))
    assert rep.sw_core == 15 and rep.core_jump == 5


def test_analyze_single_jump():
    rep = gl.analyze_profile(single())
    assert rep.c_sigma == F(7, 3) and rep.dim_core == 2
    assert rep.L_tower == RamTower(2) and rep.sw_core == 7 and rep.core_jump == F(7, 3)


def test_restriction_table_single_jump():
    rows = gl.restriction_table(single())
    assert len(rows) == 1
    row = rows[0]
    assert (row.x, row.d, row.d_plus, row.w) == (F(7, 3), 1, 4, 4)


@pytest.mark.parametrize("g", [golden_a(), golden_b(), single(), single(15, 2)])
def test_restriction_heights_multiply(g):
    prod = 1
    for row in gl.restriction_table(g):
        assert row.d <= row.d_plus
        prod *= row.w
    assert prod == g.q ** 2


def test_restriction_table_has_midpoints():
    rows = gl.restriction_table(golden_b())
    assert [r.x for r in rows] == [1, 2, 3, F(7, 2), 4]
    assert [r.is_jump for r in rows] == [True, False, True, False, True]


def test_descend_three_jumps():
    layer, inner = gl.descend_once(golden_b())
    assert layer == (1, 2)
    assert inner.r == 1 and inner.sw == 15
    jt = inner.jumps()
    assert jt.xs == [5] and jt.heights == [4]
    assert 5 + inner.psi(5) == F(15, 2)


def test_descend_to_character():
    g = gl.profile_from_jumps(2, 2, 75, [(13, 4), (F(31, 2), 4)])
    layer, inner = gl.descend_once(g)
    assert layer == (13, 4) and inner == gl.Character(F(36))


def test_descend_needs_integral_first_jump():
    with pytest.raises(NotIntegralFirstJump):
        gl.descend_once(golden_a())
    lifted = gl.tame_lift_profile(golden_a(), 3)
    layer, inner = gl.descend_once(lifted)
    assert layer == (13, 4) and inner == gl.Character(F(36))
    with pytest.raises(TooFewJumps):
        gl.descend_once(single())


def test_ascend_inverts_descend():
    layer, inner = gl.descend_once(golden_b())
    assert gl.ascend_once(layer, inner, 2) == golden_b()
    g = gl.profile_from_jumps(2, 2, 75, [(13, 4), (F(31, 2), 4)])
    assert gl.ascend_once((13, 4), gl.Character(F(36)), 2) == g


def test_ascend_rejects_tampered_inner():
    with pytest.raises(InconsistentLayer):
        gl.ascend_once((13, 4), gl.Character(F(37)), 2)
    with pytest.raises(InconsistentLayer):
        gl.ascend_once((1, 8), single(15, 1), 2)
    with pytest.raises(InconsistentLayer):
        gl.ascend_once((1, 2), single(15, 2), 2)
    # a different but coherent inner profile ascends to a different profile
    assert gl.ascend_once((1, 2), single(13, 1), 2).sw == 15


def test_h_singular_examples():
    rep = gl.h_singular_check(single())
    assert rep.passed and rep.facts["a"] == F(7, 3) and rep.facts["pair_swan"] == 7
    rep = gl.h_singular_check(single(15, 1))
    assert rep.passed and rep.facts["a"] == 5 and rep.facts["pair_swan"] == 15
    with pytest.raises(NotSingleJump):
        gl.h_singular_check(golden_a())


def test_tame_integrality_examples():
    assert gl.tame_integrality(golden_a().jumps()) == [(F(13, 3), 3), (F(31, 6), 6)]
    assert all(e == 1 for _, e in gl.tame_integrality(golden_b().jumps()))
    assert gl.tame_integrality([F(7, 2)]) == [(F(7, 2), 2)]


def test_tame_lift_rejects_wild_index():
    with pytest.raises(TameConflict):
        gl.tame_lift_profile(golden_a(), 2)


def test_malformed_profiles():
    with pytest.raises(MalformedProfile):
        gl.GaloisProfile(2, 1, 7, PLFun(0, F(1, 2), ((2, 2),), F(7, 2)))
    with pytest.raises(MalformedProfile):
        gl.GaloisProfile(2, 1, 8, PLFun(0, F(1, 2), ((F(8, 3), 2),), 4))


def test_descent_chain_golden_b():
    layers, end = gl.descent_chain(golden_b())
    assert layers == [(1, 2)]
    assert gl.h_singular_check(end).facts["a"] == 5


@st.composite
def profiles(draw):
    t = draw(towers(primes=(2, 3), max_r=3, integral=True))
    m = draw(st.integers(1, 90).filter(lambda m: m % t.p))
    return gl.GaloisProfile(t.p, t.r, m, bi_herbrand(BiSpec(t, m)))


@settings(max_examples=60, deadline=None)
@given(profiles())
def test_descent_round_trip(g):
    jt = g.jumps()
    if len(jt) < 2:
        assert gl.h_singular_check(g).passed
        return
    e = jt[0].x.denominator
    if e > 1:
        g = gl.tame_lift_profile(g, e)
    layer, inner = gl.descend_once(g)
    assert gl.ascend_once(layer, inner, g.r) == g


@settings(max_examples=60, deadline=None)
@given(profiles())
def test_restriction_product_on_random_profiles(g):
    prod = 1
    for row in gl.restriction_table(g):
        prod *= row.w
    assert prod == g.q ** 2


def test_character_group_bound():
    assert gl.character_group_bound(gl.analyze_profile(golden_b())) == 4
    assert gl.character_group_bound(gl.analyze_profile(golden_a())) is None
    assert gl.character_group_bound(gl.analyze_profile(single(15, 2))) == 16
