"""Cantor normal forms below epsilon-zero.

A :class:`CnfForm` is a finite sum ``w^e1*c1 + ... + w^ek*ck`` with strictly
decreasing exponents (themselves CNFs) and positive integer coefficients.
The order is decidable, which is what makes this module usable as an oracle
for the fuel-bounded engine.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Tuple

LT, EQ, GT = -1, 0, 1


class ParseError(ValueError):
    """Raised by :func:`cnf_parse` (and the subject parser) with a 0-based column."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.message = message
        self.pos = pos


@total_ordering
@dataclass(frozen=True, eq=False)
class CnfForm:
    terms: Tuple[Tuple["CnfForm", int], ...] = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        prev = None
        for term in terms:
            if len(term) != 2:
                raise ValueError(f"bad CNF term {term!r}")
            exponent, coeff = term
            if not isinstance(exponent, CnfForm):
                raise TypeError("CNF exponents must be CnfForm values")
            if isinstance(coeff, bool) or not isinstance(coeff, int) or coeff <= 0:
                raise ValueError(f"CNF coefficients must be positive naturals, got {coeff!r}")
            if prev is not None and cnf_compare(prev, exponent) != GT:
                raise ValueError("CNF exponents must be strictly decreasing")
            prev = exponent
        object.__setattr__(self, "_hash", hash(terms))

    # value semantics: normal forms are unique, so structural equality is equality
    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = nat(other) if other >= 0 else None
        if not isinstance(other, CnfForm):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        if isinstance(other, int):
            other = nat(other)
        if not isinstance(other, CnfForm):
            return NotImplemented
        return cnf_compare(self, other) == LT

    def __add__(self, other):
        return cnf_add(self, _coerce(other))

    def __radd__(self, other):
        return cnf_add(_coerce(other), self)

    def __mul__(self, other):
        return cnf_mul(self, _coerce(other))

    def __rmul__(self, other):
        return cnf_mul(_coerce(other), self)

    def __pow__(self, other):
        return cnf_exp(self, _coerce(other))

    def __rpow__(self, other):
        return cnf_exp(_coerce(other), self)

    def __repr__(self):
        return f"CnfForm({cnf_print(self)!r})"

    def __str__(self):
        return cnf_print(self)

    # -- shape queries -------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    def finite_part(self) -> int:
        if self.is_successor:
            return self.terms[-1][1]
        return 0

    def as_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is not finite")
        return self.finite_part()


def _coerce(x) -> CnfForm:
    if isinstance(x, CnfForm):
        return x
    if isinstance(x, int) and not isinstance(x, bool) and x >= 0:
        return nat(x)
    raise TypeError(f"cannot use {x!r} as a CNF ordinal")


ZERO = CnfForm(())
ONE = CnfForm(((ZERO, 1),))
W = CnfForm(((ONE, 1),))

_NATS = [ZERO]


def nat(n: int) -> CnfForm:
    if n < 0:
        raise ValueError("naturals only")
    while len(_NATS) <= n and n < 4096:
        _NATS.append(CnfForm(((ZERO, len(_NATS)),)))
    if n < len(_NATS):
        return _NATS[n]
    return CnfForm(((ZERO, n),))


def w_pow(exponent, coeff: int = 1) -> CnfForm:
    """The single term ``w^exponent * coeff``."""
    if coeff == 0:
        return ZERO
    return CnfForm(((_coerce(exponent), coeff),))


def cnf_compare(a: CnfForm, b: CnfForm) -> int:
    """Return LT, EQ or GT; lexicographic on (exponent, coefficient) terms."""
    if a is b:
        return EQ
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = cnf_compare(ea, eb)
        if c != EQ:
            return c
        if ca != cb:
            return LT if ca < cb else GT
    la, lb = len(a.terms), len(b.terms)
    if la == lb:
        return EQ
    return LT if la < lb else GT


def cnf_max(a: CnfForm, b: CnfForm) -> CnfForm:
    return b if cnf_compare(a, b) == LT else a


def cnf_min(a: CnfForm, b: CnfForm) -> CnfForm:
    return a if cnf_compare(a, b) == LT else b


def cnf_add(a: CnfForm, b: CnfForm) -> CnfForm:
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    lead_exp, lead_coeff = b.terms[0]
    kept = []
    for e, c in a.terms:
        cmp = cnf_compare(e, lead_exp)
        if cmp == GT:
            kept.append((e, c))
        elif cmp == EQ:
            kept.append((e, c + lead_coeff))
            return CnfForm(tuple(kept) + b.terms[1:])
        else:
            break
    return CnfForm(tuple(kept) + b.terms)


def _mul_by_term(a: CnfForm, e: CnfForm, c: int) -> CnfForm:
    # a * w^e * c for nonzero a
    lead_exp, lead_coeff = a.terms[0]
    if e.is_zero:
        return CnfForm(((lead_exp, lead_coeff * c),) + a.terms[1:])
    return CnfForm(((cnf_add(lead_exp, e), c),))


def cnf_mul(a: CnfForm, b: CnfForm) -> CnfForm:
    if a.is_zero or b.is_zero:
        return ZERO
    result = ZERO
    for e, c in b.terms:
        result = cnf_add(result, _mul_by_term(a, e, c))
    return result


def _trusted(terms) -> CnfForm:
    # skip validation for terms already known to be in normal form
    obj = object.__new__(CnfForm)
    object.__setattr__(obj, "terms", terms)
    object.__setattr__(obj, "_hash", hash(terms))
    return obj


def cnf_succ(a: CnfForm) -> CnfForm:
    terms = a.terms
    if terms and terms[-1][0].is_zero:
        return _trusted(terms[:-1] + ((ZERO, terms[-1][1] + 1),))
    return _trusted(terms + ((ZERO, 1),))


def cnf_sub_finite(a: CnfForm, k: int) -> CnfForm:
    """Remove ``k`` from the finite tail of ``a``; requires finite_part >= k."""
    if k == 0:
        return a
    n = a.finite_part()
    if n < k:
        raise ValueError(f"{a} has finite part {n} < {k}")
    if n == k:
        return CnfForm(a.terms[:-1])
    return CnfForm(a.terms[:-1] + ((ZERO, n - k),))


def cnf_round_down(a: CnfForm) -> CnfForm:
    return cnf_sub_finite(a, a.finite_part())


def cnf_round_up(a: CnfForm) -> CnfForm:
    """x + w for a successor x+1, identity on zero and limits."""
    if not a.is_successor:
        return a
    return cnf_add(cnf_sub_finite(a, 1), W)


def _divide_by_w(a: CnfForm) -> Tuple[CnfForm, int]:
    """Write a = w*q + r with r finite and return (q, r)."""
    terms = []
    r = 0
    for e, c in a.terms:
        if e.is_zero:
            r = c
        elif e.is_finite:
            terms.append((nat(e.as_int() - 1), c))
        else:
            terms.append((e, c))
    return CnfForm(tuple(terms)), r


def _power_finite(a: CnfForm, k: int) -> CnfForm:
    result = ONE
    base = a
    while k:
        if k & 1:
            result = cnf_mul(result, base)
        k >>= 1
        if k:
            base = cnf_mul(base, base)
    return result


def cnf_exp(a: CnfForm, b: CnfForm) -> CnfForm:
    if b.is_zero:
        return ONE
    if a.is_zero:
        return ZERO
    if a == ONE:
        return ONE
    q, r = _divide_by_w(b)
    if a.is_finite:
        # n^(w*q + r) = w^q * n^r for finite n >= 2
        head = w_pow(q) if not q.is_zero else ONE
        return cnf_mul(head, nat(a.as_int() ** r) if r else ONE)
    # a^(w*q) = w^(lead(a) * w * q) for infinite a
    lead_exp = a.terms[0][0]
    head = w_pow(cnf_mul(lead_exp, cnf_mul(W, q))) if not q.is_zero else ONE
    return cnf_mul(head, _power_finite(a, r))


def fundamental_seq(a: CnfForm, n: int) -> CnfForm:
    """Canonical n-th element of the fundamental sequence of a limit ``a``."""
    if not a.is_limit:
        raise ValueError(f"{a} is not a limit ordinal")
    e, c = a.terms[-1]
    delta = CnfForm(a.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
    if e.is_successor:
        return cnf_add(delta, w_pow(cnf_sub_finite(e, 1), n)) if n else delta
    return cnf_add(delta, w_pow(fundamental_seq(e, n)))


# -- printing ------------------------------------------------------------------

def _exponent_text(e: CnfForm) -> str:
    if e.is_finite or e == W:
        return str(e.as_int()) if e.is_finite else "w"
    return f"({cnf_print(e)})"


def cnf_print(a: CnfForm) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero:
            parts.append(str(c))
            continue
        base = "w" if e == ONE else f"w^{_exponent_text(e)}"
        parts.append(base if c == 1 else f"{base}*{c}")
    return " + ".join(parts)


# -- parsing -------------------------------------------------------------------

class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("num", int(text[i:j]), i))
                i = j
            elif ch in "+*^()w":
                self.toks.append((ch, ch, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", i)
        self.toks.append(("eof", None, len(text)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "eof" else repr(kind)
            raise ParseError(f"expected {want}", tok[2])
        self.i += 1
        return tok


def _parse_sum(ts):
    val = _parse_prod(ts)
    while ts.peek()[0] == "+":
        ts.take()
        val = cnf_add(val, _parse_prod(ts))
    return val


def _parse_prod(ts):
    val = _parse_pow(ts)
    while ts.peek()[0] == "*":
        ts.take()
        val = cnf_mul(val, _parse_pow(ts))
    return val


def _parse_pow(ts):
    base = _parse_atom(ts)
    if ts.peek()[0] == "^":
        ts.take()
        return cnf_exp(base, _parse_pow(ts))
    return base


def _parse_atom(ts):
    kind, val, pos = ts.peek()
    if kind == "num":
        ts.take()
        return nat(val)
    if kind == "w":
        ts.take()
        return W
    if kind == "(":
        ts.take()
        inner = _parse_sum(ts)
        ts.take(")")
        return inner
    if kind == "eof":
        raise ParseError("unexpected end of input", pos)
    raise ParseError(f"unexpected {val!r}", pos)


def cnf_parse(text: str) -> CnfForm:
    """Parse and normalize an expression over ``0``, naturals, ``w``, ``+ * ^``.

    ``^`` binds tighter than ``*`` which binds tighter than ``+``; ``+`` and
    ``*`` associate to the left, ``^`` to the right.
    """
    ts = _Tokens(text)
    val = _parse_sum(ts)
    ts.take("eof")
    return val


def cnf_terms(a: CnfForm) -> Iterable[Tuple[CnfForm, int]]:
    return iter(a.terms)
