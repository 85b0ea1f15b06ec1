import threading

from hypothesis import given
from hypothesis import strategies as st

from brwdec.cnf import W, cnf_parse, w_pow
from brwdec.core import (OMEGA, ZERO, Finite, Infinite, IsLim, IsSucc, IsZero, Lim, OrdinalSeq,
                         Succ, classify, decide_finite, embed, from_nat, omega, reconstruct,
                         seq_get, strip, succ)
from brwdec.engine import bisim, check_strict_increase_prefix, leq
from brwdec.minmax import lim_min
from brwdec.semidec import constant, jump
from strategies import cnfs


def test_classify_heads():
    assert classify(ZERO) == IsZero()
    assert classify(succ(OMEGA)) == IsSucc(OMEGA)
    c = classify(OMEGA)
    assert isinstance(c, IsLim)
    assert c.seq[0] is ZERO and c.seq[1] is from_nat(1)


@given(cnfs(2))
def test_classify_reconstruct_bisimilar(a):
    o = embed(a)
    assert bisim(reconstruct(classify(o)), o, 2000).proven


def test_decide_finite():
    assert decide_finite(from_nat(5)) == Finite(5)
    assert decide_finite(OMEGA) == Infinite()
    assert decide_finite(succ(OMEGA)) == Infinite()
    assert decide_finite(embed(w_pow(2))) == Infinite()
    assert decide_finite(strip(embed(W + 3))) == Infinite()
    assert decide_finite(Succ(Succ(ZERO))) == Finite(2)


@given(st.integers(0, 30))
def test_decide_finite_agrees_with_order(n):
    o = strip(from_nat(n))
    assert decide_finite(o) == Finite(n)
    assert leq(o, from_nat(n), 1000).proven and leq(from_nat(n), o, 1000).proven


def test_from_nat_shares_nodes():
    assert from_nat(0) is ZERO
    assert from_nat(7) is from_nat(7)
    assert from_nat(7).pred is from_nat(6)
    assert omega() is OMEGA


def test_sequence_access():
    assert seq_get(OMEGA.seq, 3) is from_nat(3)
    assert seq_get(OMEGA.seq, 7) is from_nat(7)
    s = jump(constant(0))
    assert s[4] is from_nat(4)


def test_sequence_memoized_and_called_once():
    calls = []

    def gen(n):
        calls.append(n)
        return from_nat(n)

    s = OrdinalSeq(gen)
    first = s[5]
    assert s[5] is first
    assert calls == [5]


def test_sequence_memo_is_thread_safe():
    s = OrdinalSeq(lambda n: Lim(OrdinalSeq(lambda k: from_nat(n + k))))
    seen = []

    def worker():
        seen.append(s[3])

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(x is seen[0] for x in seen)


def test_strict_increase_checks():
    assert check_strict_increase_prefix(OMEGA.seq, 10, 1000).proven
    assert check_strict_increase_prefix(OrdinalSeq(lambda n: ZERO), 1, 1000).refuted
    m = lim_min(embed(w_pow(2)), embed(W * 3))
    assert check_strict_increase_prefix(m.seq, 5, 10_000).proven


def test_builtin_sequences_strictly_increase():
    for text in ["w", "w*2", "w^2", "w^2 + w", "w^w", "w^(w + 1)*2"]:
        o = embed(cnf_parse(text))
        assert check_strict_increase_prefix(o.seq, 32, 10_000).proven, text


@given(cnfs(2))
def test_embed_annotated_and_strip_removes(a):
    o = embed(a)
    assert o.cnf == a
    bare = strip(o)
    assert bare.cnf is None
    assert decide_finite(bare) == decide_finite(o)


def test_embed_omega_matches_omega():
    assert bisim(embed(W), OMEGA, 1000).proven
    assert bisim(strip(embed(W)), strip(OMEGA), 1000).proven
    assert embed(cnf_parse("3")) is from_nat(3)


def test_strip_preserves_sharing():
    o = embed(W * 2 + 2)
    bare = strip(o)
    assert strip(o) is bare
    assert isinstance(bare, Succ) and bare.pred is strip(o.pred)
