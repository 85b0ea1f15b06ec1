import pytest

from brwdec.cnf import W, ParseError, cnf_parse, w_pow
from brwdec.core import embed
from brwdec.engine import leq, probe_ge
from brwdec.subject import RegistryError, family_names, parse_family, parse_family_2d, parse_subject


def test_pure_cnf_gives_shared_embedding():
    for text in ["0", "7", "w", "w*2 + 3", "w^2 + w", "w^(w + 1)"]:
        assert parse_subject(text) is embed(cnf_parse(text))


def test_named_constructions():
    assert parse_subject("psi(const-true)").cnf == w_pow(2)
    assert parse_subject("psi-n(const-true, 3)").cnf == W * 4
    assert parse_subject("lim-min(w*2, w^2)").cnf == W * 2
    assert parse_subject("lim-max(w*2 + 1, w*3)").cnf == W * 3
    assert parse_subject("round-up(w + 2)").cnf == W * 2
    assert parse_subject("round-down(w*2 + 5)").cnf == W * 2
    assert parse_subject("lim-jump(001:zeros)").cnf == W * 2
    assert parse_subject("lim-double-jump(zeros)").cnf == W


def test_mixed_arithmetic():
    x = parse_subject("psi(const-false) + 3")
    assert x.cnf == W * 2 + 3
    y = parse_subject("psi(twin-primes(100)) + 1")
    assert y.cnf is None
    assert probe_ge(y, W + 1, 10_000, 0).summary.proven


def test_unannotated_subjects_still_compare():
    x = parse_subject("lim-min(psi(twin-primes(200)), w*3)")
    assert leq(embed(W), x, 10_000).proven


@pytest.mark.parametrize("text", ["psi(", "lim-min(w)", "w +", "psi-n(const-true)", "foo(w)",
                                  "psi(single-true)", "psi(single-true(x))", "lim-jump(2:zeros)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_subject(text)


def test_error_positions_point_into_input():
    with pytest.raises(ParseError) as info:
        parse_subject("w + lim-jump(01x:zeros)")
    assert info.value.pos == 15


def test_registry():
    assert parse_family("single-true(3)").truth(3) is True
    assert parse_family_2d("threshold(5)").monotone
    with pytest.raises(RegistryError) as info:
        parse_family("nope")
    assert "twin-primes" in str(info.value)
    with pytest.raises(RegistryError):
        parse_family("threshold(5)")
    one, two = family_names()
    assert "const-true" in one and "diagonal" in two
