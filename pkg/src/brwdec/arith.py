"""Ordinal arithmetic on Brouwer trees, rounding, and the limit + finite split.

All operations recurse on the right argument. Annotations are carried along
whenever both inputs have one, so results built from embedded CNFs stay
comparable on the engine's fast path.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cnf import cnf_add, cnf_exp, cnf_mul
from .core import (OMEGA, ZERO, Lim, Ordinal, OrdinalSeq, Succ, Zero, from_nat, omega,
                   succ)

__all__ = ["add", "mul", "exp", "from_nat", "omega", "round_up", "round_down",
           "split", "SplitResult", "add_nat"]


def _ann(fn, a: Ordinal, b: Ordinal):
    if a.cnf is None or b.cnf is None:
        return None
    return fn(a.cnf, b.cnf)


def _peel(b: Ordinal):
    """Return (base, k) with b = base + k and base not a successor."""
    k = 0
    while isinstance(b, Succ):
        b = b.pred
        k += 1
    return b, k


def add_nat(a: Ordinal, k: int) -> Ordinal:
    if a.cnf is not None and a.cnf.is_finite:
        return from_nat(a.cnf.as_int() + k)
    for _ in range(k):
        a = succ(a)
    return a


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    base, k = _peel(b)
    if isinstance(base, Zero):
        out = a
    elif isinstance(a, Zero):
        out = base
    else:
        g = base.seq
        out = Lim(OrdinalSeq(lambda n: add(a, g[n]),
                             offset_base=add(a, g.offset_base) if g.offset_base is not None else None),
                  _ann(cnf_add, a, base))
    return add_nat(out, k)


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    base, k = _peel(b)
    if isinstance(base, Zero) or isinstance(a, Zero):
        out = ZERO
    else:
        g = base.seq
        # a > 0, so n -> a*g(n) is strictly increasing with g
        out = Lim(OrdinalSeq(lambda n: mul(a, g[n])), _ann(cnf_mul, a, base))
    for _ in range(k):
        out = add(out, a)
    return out


def _is_one(a: Ordinal) -> bool:
    return isinstance(a, Succ) and isinstance(a.pred, Zero)


def exp(a: Ordinal, b: Ordinal) -> Ordinal:
    base, k = _peel(b)
    if isinstance(base, Zero):
        out = from_nat(1)
    elif isinstance(a, Zero):
        out = ZERO
    elif _is_one(a):
        out = from_nat(1)
    else:
        g = base.seq
        # a >= 2, so exponentiation is strictly increasing in the exponent
        out = Lim(OrdinalSeq(lambda n: exp(a, g[n])), _ann(cnf_exp, a, base))
    for _ in range(k):
        out = mul(out, a)
    return out


def round_up(a: Ordinal) -> Ordinal:
    """Zero and limits are fixed; ``x + 1`` goes to ``x + w``."""
    if isinstance(a, Succ):
        return add(a.pred, OMEGA)
    return a


def round_down(a: Ordinal) -> Ordinal:
    """Strip all trailing successors."""
    base, _ = _peel(a)
    return base


@dataclass(frozen=True)
class SplitResult:
    limit_part: Ordinal
    finite_part: int


def split(a: Ordinal) -> SplitResult:
    base, k = _peel(a)
    return SplitResult(base, k)
