from fractions import Fraction as F

import pytest
from hypothesis import given, settings

import oracles
from strategies import bispecs
from ramcalc import biherbrand as bh
from ramcalc.errors import DomainError, NoAdmissibleM
from ramcalc.herbrand import RamTower, wild_exponent
from ramcalc.pl import PLFun, identity, jump_table, reflect


def spec(p, layers, m):
    return bh.BiSpec(RamTower(p, tuple(layers)), m)


def test_single_jump_bi():
    b = bh.bi_herbrand(spec(2, [(3, 1)], 7))
    assert b.break_xs() == [F(7, 3)]
    assert b.slopes() == [F(1, 2), 2]


def test_even_case_middle_piece():
    b = bh.bi_herbrand(spec(2, [(1, 1)], 7))
    assert jump_table(b).xs == [1, 3]
    for x in (1, 2, 3):
        assert b(x) == x - F(1, 2)


def test_three_jump_case():
    b = bh.bi_herbrand(spec(2, [(1, 1), (5, 1)], 17))
    jt = jump_table(b)
    assert jt.xs == [1, 3, 4] and jt.heights == [2, 4, 2]


def test_crossing_examples():
    s = spec(2, [(3, 1)], 7)
    assert bh.crossing_point(s) == 2 * s.sigma / 3
    assert bh.crossing_point(spec(2, [(1, 1)], 7)) == 2
    assert bh.crossing_point(spec(2, [(5, 2)], 25)) == 5


def test_structure_function_examples():
    assert bh.structure_function(2, 1, 1).value_at_zero == F(1, 4)
    phi = bh.structure_function(2, 1, 7)
    assert phi(0) == F(7, 4) and phi(F(7, 2)) == F(7, 2)
    assert bh.structure_function(3, 1, 7).value_at_zero == F(14, 9)


def test_decomposition_function_examples():
    psi = bh.bi_herbrand(spec(2, [(3, 1)], 7))
    sig = bh.decomposition_function(psi, 2, 1, 7)
    assert sig(0) == F(7, 4)
    assert sig.slopes() == [F(1, 4), 1]
    with pytest.raises(DomainError):
        bh.decomposition_function(identity(), 2, 0, 7)
    three = bh.bi_herbrand(spec(2, [(1, 1), (5, 1)], 17))
    assert bh.decomposition_function(three, 2, 2, 17).slopes() == [F(1, 16), F(1, 8), F(1, 2), 1]


def test_symmetry_examples():
    assert bh.verify_symmetry(identity(5), 5).passed
    bad = bh.verify_symmetry(PLFun(-1, F(1, 2), ((2, 1),)), 3)
    assert not bad.passed
    lopsided = PLFun(0, F(1, 2), ((1, F(3, 2)),), 3)
    rep = bh.verify_symmetry(lopsided, 2)
    assert not rep.passed and rep.failures()[0].witness is not None


def test_jump_checks_examples():
    two = PLFun(0, F(1, 4), ((F(13, 3), 1), (F(31, 6), 4)), F(25, 4))
    assert bh.carayol_jump_checks(two, 2, 2, 25).passed
    one = PLFun(0, F(1, 2), ((F(7, 3), 2),), F(7, 2))
    assert bh.carayol_jump_checks(one, 2, 1, 7).passed
    moved = PLFun(0, F(1, 4), ((F(13, 3), 1), (F(16, 3), 4)), F(25, 4))
    assert not bh.carayol_jump_checks(moved, 2, 2, 25).passed


def test_scenario_two_readings():
    sc = bh.scenario_97(1, 6)
    assert sc.printed.m == 15 and sc.printed.c == F(13, 6) and sc.printed.three_c == F(13, 2)
    assert sc.printed.consistent and sc.printed.z == F(7, 2)
    assert sc.equation_at_printed_m.c == F(8, 3) and not sc.equation_at_printed_m.consistent
    # the equation reading reaches admissibility earlier than the printed one
    assert sc.equation.m == 7 and not sc.equation.consistent
    for br in (sc.equation, sc.printed, sc.equation_at_printed_m):
        assert br.z.denominator == 2
    assert F(8, 3) in sc.printed.true_jumps


def test_scenario_no_admissible_m():
    with pytest.raises(NoAdmissibleM):
        bh.scenario_97(1, 2)


def test_bispec_rejects():
    with pytest.raises(DomainError):
        spec(2, [(1, 1)], 8)
    with pytest.raises(DomainError):
        bh.BiSpec(RamTower(2, (), 1), 3)


@settings(max_examples=120, deadline=None)
@given(bispecs())
def test_bi_matches_pointwise_oracle(s):
    b = bh.bi_herbrand(s)
    for x in oracles.grid(s.sigma, 24):
        assert b(x) == oracles.bi_value(s.p, s.tower.layers, s.m, x)


@settings(max_examples=120, deadline=None)
@given(bispecs())
def test_bi_mirror_on_grid(s):
    assert oracles.satisfies_mirror(bh.bi_herbrand(s), s.sigma, 24)


@settings(max_examples=120, deadline=None)
@given(bispecs())
def test_crossing_matches_oracle(s):
    assert bh.crossing_point(s) == oracles.crossing(s.p, s.tower.layers, s.m)


@settings(max_examples=100, deadline=None)
@given(bispecs())
def test_branches_reflect_into_each_other(s):
    b = bh.bi_components(s)
    assert reflect(bh.lower_branch(s), s.sigma) == b.psi_plus
    assert b.psi_times == bh.lower_branch(s).restrict(s.sigma)


@settings(max_examples=100, deadline=None)
@given(bispecs())
def test_parity_and_middle_piece(s):
    b = bh.bi_components(s)
    jt = jump_table(b.bi)
    j = s.tower.jumps[-1]
    assert (len(jt) % 2 == 0) == (j < b.c)
    if j < b.c:
        w = wild_exponent(s.tower)
        mid = (j + b.jbar_infinity) / 2
        assert b.bi(mid) == mid - bh.middle_piece_offset(s) == mid - w / s.p ** s.r
    if wild_exponent(s.tower) >= bh.odd_case_threshold(s):
        assert bh.parity_case(s) == "odd"


@settings(max_examples=100, deadline=None)
@given(bispecs())
def test_jump_checks_hold(s):
    assert bh.carayol_jump_checks(bh.bi_herbrand(s), s.p, s.r, s.m).passed
