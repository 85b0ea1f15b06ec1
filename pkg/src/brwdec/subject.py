"""Parser for probe subjects: the CNF grammar plus named constructions.

::

    expr  := prod ('+' prod)*
    prod  := pow ('*' pow)*
    pow   := atom ('^' pow)?
    atom  := NAT | 'w' | '(' expr ')' | call
    call  := 'psi(' FAMILY ')' | 'psi-n(' FAMILY ',' NAT ')'
           | 'lim-min(' expr ',' expr ')' | 'lim-max(' expr ',' expr ')'
           | 'round-up(' expr ')' | 'round-down(' expr ')'
           | 'lim-jump(' BITS ')' | 'lim-double-jump(' BITS ')'
    FAMILY := NAME | NAME '(' NAT (',' NAT)* ')'

Arithmetic on two annotated values is done on their normal forms, so pure
CNF input yields the shared embedded node.
"""
from __future__ import annotations

import re
from typing import Callable, List, Tuple

from .arith import add, exp, mul, round_down, round_up
from .characteristic import FAMILIES, FAMILIES_2D, PropFamily, PropFamily2D, psi, psi_n
from .cnf import ParseError, W, cnf_add, cnf_exp, cnf_mul, nat
from .core import Ordinal, embed
from .minmax import lim_max, lim_min
from .semidec import BitSeq, lim_double_jump, lim_jump, parse_bitseq

_IDENT = re.compile(r"[a-z][a-z0-9]*(?:-[a-z0-9]+)*")
_FAMILY = re.compile(r"\s*([a-z][a-z0-9-]*)\s*(?:\(([^()]*)\))?\s*$")


class RegistryError(LookupError):
    """Unknown family name; the message lists what is available."""


def _parse_family_text(text: str, table: dict, kind: str, offset: int = 0):
    m = _FAMILY.match(text)
    if not m:
        raise ParseError(f"malformed family {text.strip()!r}", offset)
    name, argtext = m.group(1), m.group(2)
    if name not in table:
        raise RegistryError(f"unknown {kind} family {name!r}; available: {', '.join(sorted(table))}")
    arity, ctor = table[name]
    args: List[int] = []
    if argtext is not None and argtext.strip():
        for part in argtext.split(","):
            part = part.strip()
            if not part.isdigit():
                raise ParseError(f"family argument must be a natural number, got {part!r}",
                                 offset + text.index(argtext))
            args.append(int(part))
    if len(args) != arity:
        raise ParseError(f"family {name!r} takes {arity} argument(s), got {len(args)}", offset)
    return ctor(*args)


def parse_family(text: str) -> PropFamily:
    return _parse_family_text(text, FAMILIES, "one-parameter")


def parse_family_2d(text: str) -> PropFamily2D:
    return _parse_family_text(text, FAMILIES_2D, "two-parameter")


def family_names() -> Tuple[List[str], List[str]]:
    return sorted(FAMILIES), sorted(FAMILIES_2D)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    # -- lexing helpers
    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise ParseError(f"expected {ch!r}, found {found}", self.i)
        self.i += 1

    def raw_until_close(self) -> Tuple[str, int]:
        """Text up to the parenthesis closing the one just consumed."""
        start = self.i
        depth = 0
        while self.i < len(self.text):
            ch = self.text[self.i]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    raw = self.text[start:self.i]
                    self.i += 1
                    return raw, start
                depth -= 1
            self.i += 1
        raise ParseError("missing ')'", self.i)

    # -- grammar
    def expr(self) -> Ordinal:
        val = self.prod()
        while self.peek() == "+":
            self.i += 1
            val = _combine(val, self.prod(), cnf_add, add)
        return val

    def prod(self) -> Ordinal:
        val = self.pow()
        while self.peek() == "*":
            self.i += 1
            val = _combine(val, self.pow(), cnf_mul, mul)
        return val

    def pow(self) -> Ordinal:
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            return _combine(base, self.pow(), cnf_exp, exp)
        return base

    def atom(self) -> Ordinal:
        ch = self.peek()
        pos = self.i
        if not ch:
            raise ParseError("unexpected end of input", pos)
        if ch.isdigit():
            j = pos
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            self.i = j
            return embed(nat(int(self.text[pos:j])))
        if ch == "(":
            self.i += 1
            val = self.expr()
            self.expect(")")
            return val
        m = _IDENT.match(self.text, pos)
        if not m:
            raise ParseError(f"unexpected {ch!r}", pos)
        name = m.group(0)
        self.i = m.end()
        if name == "w":
            return embed(W)
        return self.call(name, pos)

    def call(self, name: str, pos: int) -> Ordinal:
        self.expect("(")
        if name in ("psi", "psi-n"):
            raw, start = self.raw_until_close()
            if name == "psi":
                return psi(_parse_family_text(raw, FAMILIES, "one-parameter", start))
            fam_text, sep, n_text = raw.rpartition(",")
            if not sep or not n_text.strip().isdigit():
                raise ParseError("psi-n takes a family and a natural number", start)
            fam = _parse_family_text(fam_text, FAMILIES, "one-parameter", start)
            return psi_n(fam, int(n_text))
        if name in ("lim-jump", "lim-double-jump"):
            raw, start = self.raw_until_close()
            try:
                bits: BitSeq = parse_bitseq(raw)
            except ParseError as exc:
                raise ParseError(exc.message, start + exc.pos) from None
            return lim_jump(bits) if name == "lim-jump" else lim_double_jump(bits)
        unary: dict = {"round-up": round_up, "round-down": round_down}
        binary: dict = {"lim-min": lim_min, "lim-max": lim_max}
        if name in unary:
            arg = self.expr()
            self.expect(")")
            return unary[name](arg)
        if name in binary:
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return binary[name](a, b)
        known = ["psi", "psi-n", "lim-min", "lim-max", "round-up", "round-down",
                 "lim-jump", "lim-double-jump"]
        raise ParseError(f"unknown function {name!r}; available: {', '.join(known)}", pos)


def _combine(a: Ordinal, b: Ordinal, cnf_op: Callable, tree_op: Callable) -> Ordinal:
    if a.cnf is not None and b.cnf is not None:
        return embed(cnf_op(a.cnf, b.cnf))
    return tree_op(a, b)


def parse_subject(text: str) -> Ordinal:
    p = _Parser(text)
    val = p.expr()
    if p.peek():
        raise ParseError(f"unexpected {p.peek()!r}", p.i)
    return val
