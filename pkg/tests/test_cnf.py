import pytest
from hypothesis import given
from hypothesis import strategies as st

from brwdec.cnf import (EQ, GT, LT, W, CnfForm, ParseError, cnf_add, cnf_compare, cnf_exp,
                        cnf_mul, cnf_parse, cnf_print, cnf_round_down, cnf_round_up,
                        fundamental_seq, nat, w_pow)
from strategies import cnfs, deep_cnfs


def p(text):
    return cnf_parse(text)


# -- comparison ------------------------------------------------------------------

def test_compare_examples():
    assert cnf_compare(p("w^2"), p("w*5 + 3")) == GT
    assert cnf_compare(nat(0), nat(0)) == EQ
    assert cnf_compare(W, p("w + 1")) == LT


@given(cnfs(), cnfs())
def test_compare_trichotomy(a, b):
    c, d = cnf_compare(a, b), cnf_compare(b, a)
    assert c == -d
    assert (c == EQ) == (a == b)


@given(cnfs(), cnfs(), cnfs())
def test_compare_transitive(a, b, c):
    if cnf_compare(a, b) != GT and cnf_compare(b, c) != GT:
        assert cnf_compare(a, c) != GT


def test_finite_compare_matches_integers():
    for i in range(6):
        for j in range(6):
            assert cnf_compare(nat(i), nat(j)) == (i > j) - (i < j)


def test_non_normal_terms_rejected():
    with pytest.raises(ValueError):
        CnfForm(((nat(1), 1), (nat(2), 1)))
    with pytest.raises(ValueError):
        CnfForm(((nat(1), 0),))


# -- arithmetic ------------------------------------------------------------------

def test_add_examples():
    assert cnf_add(nat(1), W) == W
    assert cnf_add(W, nat(1)) == p("w + 1")
    assert cnf_add(p("w^2 + w*3"), p("w*2 + 1")) == p("w^2 + w*5 + 1")
    assert cnf_add(p("w + 5"), p("w^2")) == p("w^2")


def test_mul_examples():
    assert cnf_mul(W, nat(2)) == W * 2
    assert cnf_mul(nat(2), W) == W
    assert cnf_mul(p("w + 1"), p("w + 1")) == p("w^2 + w + 1")
    assert cnf_mul(nat(0), W) == nat(0)


def test_exp_examples():
    assert cnf_exp(W, nat(2)) == w_pow(2)
    assert cnf_exp(nat(2), W) == W
    assert cnf_exp(nat(1), W) == nat(1)
    assert cnf_exp(W, nat(0)) == nat(1)
    assert cnf_exp(p("w + 1"), nat(2)) == p("w^2 + w + 1")


@given(cnfs(2), cnfs(2), cnfs(2))
def test_add_associative(a, b, c):
    assert cnf_add(cnf_add(a, b), c) == cnf_add(a, cnf_add(b, c))


@given(cnfs(2, 3), cnfs(2, 3), cnfs(2, 3))
def test_mul_associative_and_left_distributive(a, b, c):
    assert cnf_mul(cnf_mul(a, b), c) == cnf_mul(a, cnf_mul(b, c))
    assert cnf_mul(a, cnf_add(b, c)) == cnf_add(cnf_mul(a, b), cnf_mul(a, c))


@given(cnfs(), cnfs())
def test_add_monotone_right(a, b):
    # a <= a + b and b <= a + b
    s = cnf_add(a, b)
    assert cnf_compare(a, s) != GT and cnf_compare(b, s) != GT


@given(cnfs(2, 3), st.integers(0, 3), st.integers(0, 3))
def test_exp_adds_exponents(a, m, n):
    assert cnf_mul(cnf_exp(a, nat(m)), cnf_exp(a, nat(n))) == cnf_exp(a, nat(m + n))


# -- rounding and fundamental sequences -----------------------------------------------

def test_rounding():
    assert cnf_round_down(p("w*2 + 3")) == W * 2
    assert cnf_round_up(p("w*2 + 3")) == W * 3
    assert cnf_round_up(nat(4)) == W
    assert cnf_round_up(nat(0)) == nat(0)


def test_fundamental_seq_examples():
    assert [fundamental_seq(W, n) for n in range(3)] == [nat(0), nat(1), nat(2)]
    assert fundamental_seq(w_pow(2), 3) == W * 3
    assert fundamental_seq(p("w^2 + w"), 4) == p("w^2 + 4")
    assert fundamental_seq(p("w^w"), 3) == w_pow(3)
    with pytest.raises(ValueError):
        fundamental_seq(p("w + 1"), 0)


@given(deep_cnfs(), st.integers(0, 6))
def test_fundamental_seq_increasing_and_below(a, n):
    if not a.is_limit:
        return
    x, y = fundamental_seq(a, n), fundamental_seq(a, n + 1)
    assert cnf_compare(x, y) == LT
    assert cnf_compare(y, a) == LT


# -- text -----------------------------------------------------------------------------

def test_parse_examples():
    a = p("w^2*3 + w*4 + 5")
    assert a.terms == ((nat(2), 3), (nat(1), 4), (nat(0), 5))
    assert p("0").terms == ()
    assert p("w + w^2") == w_pow(2)
    assert p("w*2+w") == W * 3
    assert p("  w ^ ( w + 1 ) ") == w_pow(W + 1)


def test_print_examples():
    assert cnf_print(p("w^(w*2) + w^w*3 + 1")) == "w^(w*2) + w^w*3 + 1"
    assert cnf_print(nat(0)) == "0"
    assert cnf_print(p("w^2*2 + w")) == "w^2*2 + w"


@given(deep_cnfs())
def test_print_parse_round_trip(a):
    assert cnf_parse(cnf_print(a)) == a


@pytest.mark.parametrize("text, pos", [("w +", 3), ("w $ 1", 2), ("(w", 2), ("w 1", 2), ("", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        cnf_parse(text)
    assert info.value.pos == pos
