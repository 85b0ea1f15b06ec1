"""The Sierpinski type as a lazy join structure.

A value is Bot, Top, or the join of a memoized sequence of values; it is
"true" when it is Top or some joined element is true. Truth is
semidecidable: a Join can be confirmed but never refuted in finite time.
"""
from __future__ import annotations

import heapq
import threading
import weakref
from typing import Callable

from .cnf import cnf_round_down
from .core import Ordinal, OrdinalSeq, Succ, Zero, embed
from .engine import Budget, Verdict, run_bounded
from .semidec import BitSeq


class Sierpinski:
    __slots__ = ()


class _Bot(Sierpinski):
    __slots__ = ()

    def __repr__(self):
        return "Bot"


class _Top(Sierpinski):
    __slots__ = ()

    def __repr__(self):
        return "Top"


BOT = _Bot()
TOP = _Top()


class Join(Sierpinski):
    __slots__ = ("seq", "label")

    def __init__(self, generator: Callable[[int], Sierpinski], label: str = ""):
        # OrdinalSeq only type-checks Ordinal values, so keep a plain memo here
        self.seq = _SierpSeq(generator)
        self.label = label

    def __repr__(self):
        return f"Join({self.label})"


class _SierpSeq:
    __slots__ = ("_gen", "_memo")

    def __init__(self, gen):
        self._gen = gen
        self._memo = {}

    def __getitem__(self, i):
        hit = self._memo.get(i)
        if hit is None:
            hit = self._memo.setdefault(i, self._gen(i))
        return hit


def _eval(s: Sierpinski, budget: Budget) -> bool:
    """Fair best-first search for a Top below ``s``.

    Frontier entries are "child ``i`` of join ``J``" weighted by path depth
    plus indices, so every node at finite depth is reached eventually and
    each node is expanded once. The order is fixed, which keeps the result
    independent of the budget.
    """
    budget.spend()
    if s is TOP:
        return True
    if s is BOT:
        return False
    tick = 0
    frontier = [(1, tick, s, 0)]
    while True:
        budget.spend()
        weight, _, join, i = heapq.heappop(frontier)
        child = join.seq[i]
        tick += 1
        heapq.heappush(frontier, (weight + 1, tick, join, i + 1))
        if child is TOP:
            return True
        if isinstance(child, Join):
            tick += 1
            heapq.heappush(frontier, (weight + 1, tick, child, 0))


def eval_top(s: Sierpinski, fuel: int) -> Verdict:
    """Proven for Top or a Join with a true branch, Refuted only for Bot."""
    return run_bounded(lambda bu: _eval(s, bu), fuel)


def from_bitseq(s: BitSeq) -> Join:
    return Join(lambda i: TOP if s[i] else BOT, f"bits({s.label})")


_BASE: "weakref.WeakKeyDictionary[Ordinal, Ordinal]" = weakref.WeakKeyDictionary()
_BASE_LOCK = threading.Lock()


def _limit_base(a: Ordinal) -> Ordinal:
    """``a`` with its trailing successors removed, memoized along shared chains."""
    chain = []
    node = a
    with _BASE_LOCK:
        while isinstance(node, Succ):
            hit = _BASE.get(node)
            if hit is not None:
                node = hit
                break
            if node.cnf is not None:
                node = embed(cnf_round_down(node.cnf))
                break
            chain.append(node)
            node = node.pred
        for c in chain:
            _BASE[c] = node
    return node


def s_n_of(n: int, a: Ordinal) -> Sierpinski:
    """A value that is Top exactly when ``a >= w*n``."""
    if n < 0:
        raise ValueError("n must be a natural number")
    if n == 0:
        return TOP
    base = _limit_base(a)
    if isinstance(base, Zero):
        return BOT
    if n == 1:
        return TOP
    f: OrdinalSeq = base.seq
    return Join(lambda i: s_n_of(n - 1, f[i]), f"s{n}")
