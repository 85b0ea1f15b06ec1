"""Binary sequences as semidecision data, the jump encodings, and witnesses.

A :class:`BitSeq` stands for the proposition "some bit is 1". A
:class:`DecWitness` pairs a level ``alpha`` (a CNF) with an ordinal ``y`` and
stands for "alpha <= y".
"""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from .arith import round_down, round_up
from .cnf import W, CnfForm, ParseError, cnf_round_up, cnf_sub_finite
from .core import (OMEGA, ZERO, Finite, Lim, Ordinal, OrdinalSeq, Succ, Zero, decide_finite,
                   embed, from_nat, succ)
from .engine import ProbeReport, probe_ge
from .minmax import lim_max, lim_min


class BitSeq:
    """A total, memoized ``N -> {0, 1}``.

    ``eventually=(start, bit)`` declares that every index ``>= start`` holds
    ``bit``. ``truth`` declares whether a 1 occurs at all; it is derived from
    ``eventually`` when not given. Both are optional promises used for
    annotations; nothing is inferred by searching.
    """

    __slots__ = ("_gen", "_memo", "_lock", "eventually", "_truth", "label")

    def __init__(self, generator: Callable[[int], int], *,
                 eventually: Optional[Tuple[int, int]] = None,
                 truth: Optional[bool] = None, label: str = ""):
        self._gen = generator
        self._memo: dict = {}
        self._lock = threading.Lock()
        self.eventually = eventually
        self._truth = truth
        self.label = label

    def __getitem__(self, i: int) -> int:
        try:
            return self._memo[i]
        except KeyError:
            pass
        if i < 0:
            raise IndexError(i)
        if self.eventually is not None and i >= self.eventually[0]:
            bit = self.eventually[1]
        else:
            bit = 1 if self._gen(i) else 0
        with self._lock:
            return self._memo.setdefault(i, bit)

    def prefix(self, n: int) -> list:
        return [self[i] for i in range(n)]

    def first_one(self, bound: int) -> Optional[int]:
        """Least ``i < bound`` with a 1, if any."""
        for i in range(bound):
            if self[i]:
                return i
        return None

    def truth(self) -> Optional[bool]:
        """Declared truth value, or None when only a search could tell."""
        if self._truth is not None:
            return self._truth
        if self.eventually is None:
            return None
        start, bit = self.eventually
        return bit == 1 or self.first_one(start) is not None

    def known_first_one(self) -> Optional[int]:
        """Index of the first 1 when the declarations pin it down."""
        if self.eventually is None:
            return None
        start, bit = self.eventually
        hit = self.first_one(start)
        if hit is None and bit == 1:
            return start
        return hit

    def opaque(self) -> "BitSeq":
        """Same bits with the declarations dropped."""
        return BitSeq(self.__getitem__, label=self.label)

    def __repr__(self):
        return f"BitSeq({self.label or self.prefix(8)})"


def constant(bit: int) -> BitSeq:
    bit = 1 if bit else 0
    return BitSeq(lambda i: bit, eventually=(0, bit), label="ones" if bit else "zeros")


def first_one_at(j: int) -> BitSeq:
    return BitSeq(lambda i: i == j, eventually=(j + 1, 0), label=f"first-one({j})")


def from_prefix(bits, tail: int) -> BitSeq:
    bits = [1 if b else 0 for b in bits]
    tail = 1 if tail else 0
    text = "".join(map(str, bits)) + (":ones" if tail else ":zeros")
    return BitSeq(lambda i: bits[i] if i < len(bits) else tail,
                  eventually=(len(bits), tail), label=text)


_NAMED = re.compile(r"^\s*first-one\(\s*(\d+)\s*\)\s*$")


def parse_bitseq(text: str) -> BitSeq:
    """``PREFIX:zeros``, ``PREFIX:ones``, ``zeros``, ``ones`` or ``first-one(j)``."""
    t = text.strip()
    if t == "zeros":
        return constant(0)
    if t == "ones":
        return constant(1)
    m = _NAMED.match(t)
    if m:
        return first_one_at(int(m.group(1)))
    if ":" not in t:
        raise ParseError("bit sequence needs a ':zeros' or ':ones' suffix", len(text))
    prefix, _, suffix = t.partition(":")
    for i, ch in enumerate(prefix):
        if ch not in "01":
            raise ParseError(f"unexpected character {ch!r} in bit prefix", text.index(t) + i)
    if suffix not in ("zeros", "ones"):
        raise ParseError(f"unknown suffix {suffix!r}", text.index(t) + len(prefix) + 1)
    return from_prefix([int(ch) for ch in prefix], suffix == "ones")


# -- jump encodings ------------------------------------------------------------

def _jump(s: BitSeq, target: Ordinal, label: str) -> OrdinalSeq:
    def gen(n):
        if n == 0:
            return ZERO
        hit = s.first_one(n)
        if hit is None:
            return from_nat(n)
        if n == hit + 1:
            return target
        for j in range(hit + 2, n):
            seq[j]  # fill the memo so the chain below stays shallow
        return succ(seq[n - 1])

    offset = ZERO if s.truth() is False else None
    seq = OrdinalSeq(gen, offset_base=offset, label=label)
    return seq


def jump(s: BitSeq) -> OrdinalSeq:
    """``0, 1, ..., n`` until the first 1 at index ``n``, then ``w, w+1, ...``."""
    return _jump(s, OMEGA, f"jump({s.label})")


def double_jump(s: BitSeq) -> OrdinalSeq:
    """Like :func:`jump` but the first 1 sends the sequence to ``w*2``."""
    return _jump(s, embed(W * 2), f"double-jump({s.label})")


def lim_jump(s: BitSeq) -> Lim:
    """``Lim(jump(s))``: ``w*2`` if s has a 1, else ``w``."""
    truth = s.truth()
    ann = None if truth is None else (W * 2 if truth else W)
    return Lim(jump(s), ann)


def lim_double_jump(s: BitSeq) -> Lim:
    truth = s.truth()
    ann = None if truth is None else (W * 3 if truth else W)
    return Lim(double_jump(s), ann)


def unjump(t: OrdinalSeq) -> BitSeq:
    """Bit ``n`` is 1 exactly when ``t(n)`` is infinite."""
    return BitSeq(lambda n: not isinstance(decide_finite(t[n]), Finite),
                  label=f"unjump({t.label})")


# -- witnesses -------------------------------------------------------------------

W_PLUS_1 = W + 1


@dataclass(frozen=True)
class DecWitness:
    """The proposition ``level <= ordinal``."""
    level: CnfForm
    ordinal: Ordinal

    @property
    def rounded_level(self) -> CnfForm:
        return cnf_round_up(self.level)

    def probe(self, fuel: int, k_max: int = 6) -> ProbeReport:
        return probe_ge(self.ordinal, self.level, fuel, k_max)


def semidec_to_witness(s: BitSeq) -> DecWitness:
    return DecWitness(W_PLUS_1, lim_jump(s))


def _case_split(y: Ordinal) -> BitSeq:
    if isinstance(y, Zero):
        return constant(0)
    if isinstance(y, Succ):
        return constant(0 if isinstance(decide_finite(y.pred), Finite) else 1)
    return unjump(y.seq)


def witness_to_semidec(w: DecWitness) -> BitSeq:
    """Recover bits from a witness at level ``w+1`` (or its rounded form ``w*2``)."""
    if w.level == W_PLUS_1:
        return _case_split(w.ordinal)
    if w.level == W * 2:
        # w*2 <= v  iff  w+1 <= round_up(v)
        return _case_split(round_up(w.ordinal))
    raise ValueError(f"expected a witness at level w + 1 or w*2, got {w.level}")


# -- moving between levels ---------------------------------------------------------

def raise_level(w: DecWitness, n: int = 1) -> DecWitness:
    """From level ``a+1`` to ``a+1+n``: successors get one more successor."""
    if not w.level.is_successor:
        raise ValueError(f"level {w.level} is not a successor")
    y = w.ordinal
    for _ in range(n):
        if isinstance(y, Succ):
            y = succ(y)
    return DecWitness(w.level + n, y)


def lower_level(w: DecWitness, n: int = 1) -> DecWitness:
    """From level ``a+1+n`` to ``a+1``: peel one successor per step."""
    if w.level.finite_part() <= n:
        raise ValueError(f"cannot lower {w.level} by {n} and stay above a limit")
    y = w.ordinal
    for _ in range(n):
        if isinstance(y, Succ):
            y = y.pred
    return DecWitness(cnf_sub_finite(w.level, n), y)


def round_witness(w: DecWitness) -> DecWitness:
    """Same proposition at the rounded-up level ``lambda + w``."""
    if not w.level.is_successor:
        return w
    w = lower_level(w, w.level.finite_part() - 1)
    return DecWitness(cnf_round_up(w.level), round_up(w.ordinal))


def limit_witness(w: DecWitness) -> DecWitness:
    """Zero/limit level and zero/limit ordinal for the same proposition."""
    w = round_witness(w)
    return DecWitness(w.level, round_down(w.ordinal))


def at_level(w: DecWitness, level: CnfForm) -> DecWitness:
    """Move ``w`` to any ``level`` with the same rounded-up form."""
    lw = limit_witness(w)
    if cnf_round_up(level) != lw.level:
        raise ValueError(f"levels {w.level} and {level} round to different limits")
    if not level.is_successor:
        return lw
    # lambda + w <= v  iff  lambda + 1 <= v  for zero/limit v
    base = DecWitness(cnf_sub_finite(level, level.finite_part() - 1), lw.ordinal)
    return raise_level(base, level.finite_part() - 1)


def conj_witness(p: DecWitness, q: DecWitness) -> DecWitness:
    if p.level != q.level:
        raise ValueError(f"levels differ: {p.level} vs {q.level}")
    lp, lq = limit_witness(p), limit_witness(q)
    return at_level(DecWitness(lp.level, lim_min(lp.ordinal, lq.ordinal)), p.level)


def _is_wk_plus_n(level: CnfForm) -> bool:
    return all(e.is_finite and e.as_int() <= 1 for e, _ in level.terms)


def disj_witness(p: DecWitness, q: DecWitness) -> DecWitness:
    if p.level != q.level:
        raise ValueError(f"levels differ: {p.level} vs {q.level}")
    if not _is_wk_plus_n(p.level):
        raise ValueError(f"disjunction needs a level w*k + n, got {p.level}")
    lp, lq = limit_witness(p), limit_witness(q)
    return at_level(DecWitness(lp.level, lim_max(lp.ordinal, lq.ordinal)), p.level)
