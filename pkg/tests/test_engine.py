import pytest
from hypothesis import given
from hypothesis import strategies as st

from brwdec.arith import round_up
from brwdec.cnf import GT, LT, W, cnf_compare, cnf_parse, w_pow
from brwdec.core import OMEGA, ZERO, Lim, OrdinalSeq, embed, from_nat, strip, succ
from brwdec.engine import (Budget, Exhausted, Outcome, bisim, check_strict_increase_prefix,
                           ladder_levels, leq, lt, probe_ge, run_slice)
from brwdec.characteristic import family_const, psi
from strategies import cnfs


def test_leq_examples():
    assert leq(from_nat(1), OMEGA, 1).proven
    assert leq(OMEGA, from_nat(3), 100).refuted
    assert leq(strip(OMEGA), from_nat(3), 100).refuted
    v = leq(embed(W * 2 + 1), embed(w_pow(2)), 1)
    assert v.proven and "annotation" in v.note


def test_lt_examples():
    assert lt(ZERO, from_nat(1), 10).proven
    assert lt(OMEGA, OMEGA, 100).refuted
    assert lt(strip(OMEGA), strip(OMEGA), 100).refuted
    assert lt(from_nat(2), OMEGA, 10).proven


def test_bisim_examples():
    assert bisim(OMEGA, OMEGA, 1).proven
    assert bisim(OMEGA, succ(OMEGA), 100).refuted
    assert bisim(strip(OMEGA), succ(strip(OMEGA)), 100).refuted
    assert bisim(round_up(from_nat(1)), OMEGA, 100).proven


def test_probe_examples():
    assert probe_ge(psi(family_const(True)), W * 3, 1000).summary.proven
    report = probe_ge(OMEGA, w_pow(2), 10_000, k_max=4)
    assert not report.summary.proven
    levels = {str(r.level): r.verdict for r in report.per_level}
    assert levels["w*2"].refuted
    assert probe_ge(embed(w_pow(2)), w_pow(2), 1).summary.proven


def test_probe_rejects_non_cnf_target():
    with pytest.raises(TypeError):
        probe_ge(OMEGA, "w", 10)


def test_ladder_levels_increase_and_stay_below_target():
    assert ladder_levels(w_pow(2), 4) == [W, W * 2, W * 3, W * 4]
    assert ladder_levels(W * 2 + 1, 6) == [W, W * 2]
    assert ladder_levels(cnf_parse("3"), 6) == []


def test_zero_fuel_is_unknown():
    v = leq(strip(OMEGA), strip(embed(W * 2)), 0)
    assert v.outcome is Outcome.UNKNOWN


def test_unknown_reports_spent_fuel():
    # w^2 <= w^3 holds but the bare trees give no proof of a limit below a limit
    v = leq(strip(embed(w_pow(2))), strip(embed(w_pow(3))), 500)
    assert v.unknown and v.spent == 500


def test_limit_below_limit_only_refuted_by_search():
    a, b = strip(embed(W * 3)), strip(embed(W * 2))
    assert leq(a, b, 10_000).refuted
    assert not leq(b, a, 10_000).refuted


def test_same_sequence_is_reflexive():
    s = OrdinalSeq(lambda n: from_nat(2 * n))
    assert leq(Lim(s), Lim(s), 1).proven


def test_offset_limits_compare_by_their_bases():
    # delta + w <= eps + w  iff  down(delta) <= down(eps)
    for k in range(1, 12):
        x = strip(embed(W * (k + 1)))
        assert leq(embed(W * k), x, 1000).proven
        assert leq(strip(embed(W * k)), x, 1000).proven
        assert leq(x, strip(embed(W * k)), 1000).refuted
    assert bisim(strip(embed(W * 3)), strip(embed(W * 3)), 1000).proven
    assert leq(strip(embed(W + 5)), strip(embed(W * 2)), 1000).proven


def test_search_finds_element_above_offset():
    # w*3 + w <= x needs an element of x above w*3; x's sequence is w*n
    x = strip(embed(w_pow(2)))
    assert leq(embed(W * 4), x, 10_000).proven


def test_budget_slices():
    b = Budget(10)
    assert run_slice(b, 3, lambda bu: (bu.spend(2), True)[1]) is True
    assert b.remaining == 8
    assert run_slice(b, 3, lambda bu: (bu.spend(5), True)[1]) is None
    assert b.remaining == 5
    with pytest.raises(Exhausted):
        run_slice(b, 20, lambda bu: (bu.spend(6), True)[1])


@given(cnfs(), cnfs())
def test_stripped_leq_never_contradicts_oracle(a, b):
    v = leq(strip(embed(a)), strip(embed(b)), 2000)
    truth = cnf_compare(a, b) != GT
    assert not (v.proven and not truth)
    assert not (v.refuted and truth)


@given(cnfs(), cnfs())
def test_annotated_leq_is_the_oracle(a, b):
    v = leq(embed(a), embed(b), 1)
    assert v.proven == (cnf_compare(a, b) != GT)
    assert not v.unknown


@given(cnfs(), st.integers(0, 3))
def test_finite_side_always_decided(a, n):
    x = strip(embed(a))
    assert not leq(from_nat(n), x, 10_000).unknown
    assert not leq(x, from_nat(n), 10_000).unknown


@given(cnfs(), cnfs(), st.integers(1, 2000))
def test_fuel_monotone(a, b, f):
    x, y = strip(embed(a)), strip(embed(b))
    v = leq(x, y, f)
    if not v.unknown:
        assert leq(x, y, 3 * f).outcome is v.outcome


@given(cnfs(2), cnfs(2))
def test_bisim_is_both_directions(a, b):
    v = bisim(strip(embed(a)), strip(embed(b)), 2000)
    if v.proven:
        assert a == b
    if a != b:
        assert not v.proven


@given(cnfs(2), cnfs(2))
def test_probe_summary_sound(a, t):
    report = probe_ge(strip(embed(a)), t, 2000, 3)
    truth = cnf_compare(t, a) != GT
    assert not (report.summary.proven and not truth)
    assert not (report.summary.refuted and truth)
    for r in report.per_level:
        assert cnf_compare(r.level, t) != GT


def test_strict_increase_refutes_equal_elements():
    s = OrdinalSeq(lambda n: embed(W) if n >= 2 else from_nat(n))
    assert check_strict_increase_prefix(s, 4, 1000).refuted
    assert check_strict_increase_prefix(s, 1, 1000).proven


def test_verdict_text():
    assert str(leq(from_nat(1), from_nat(2), 10)).startswith("Proven")
    assert "spent" in str(leq(strip(embed(w_pow(2))), strip(embed(w_pow(3))), 5))
    assert cnf_compare(cnf_parse("w"), W) != LT
