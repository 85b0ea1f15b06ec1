"""limMin and limMax.

``lim_min`` is the binary minimum on zero/limit ordinals. ``lim_max`` is a
maximum only with respect to levels ``w*k``. Successor inputs are accepted
and their finite tails are discarded as the defining clauses dictate; no
general maximum is attempted.
"""
from __future__ import annotations

from .arith import add, round_down
from .cnf import cnf_max, cnf_min, cnf_round_down
from .core import ZERO, Lim, Ordinal, OrdinalSeq, Zero, from_nat


def _min_ann(a: Ordinal, b: Ordinal):
    if a.cnf is None or b.cnf is None:
        return None
    return cnf_min(cnf_round_down(a.cnf), cnf_round_down(b.cnf))


def _max_ann(a: Ordinal, b: Ordinal):
    # a, b already stripped of successors by the clauses; a is a limit here
    if a.cnf is None or b.cnf is None:
        return None
    return cnf_max(cnf_round_down(a.cnf), cnf_round_down(b.cnf))


def lim_min(a: Ordinal, b: Ordinal) -> Ordinal:
    a = round_down(a)
    if isinstance(a, Zero):
        return ZERO
    b = round_down(b)
    if isinstance(b, Zero):
        return ZERO
    f, g = a.seq, b.seq
    return Lim(OrdinalSeq(lambda n: add(lim_min(f[n], g[n]), from_nat(n)), label="limMin"),
               _min_ann(a, b))


def lim_max(a: Ordinal, b: Ordinal) -> Ordinal:
    a = round_down(a)
    if isinstance(a, Zero):
        return b
    b = round_down(b)
    if isinstance(b, Zero):
        return a
    f, g = a.seq, b.seq
    return Lim(OrdinalSeq(lambda n: add(lim_max(f[n], g[n]), from_nat(n)), label="limMax"),
               _max_ann(a, b))
