"""Brouwer-tree ordinals with lazy, memoized limit sequences."""
from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union

from .cnf import CnfForm, ZERO as CNF_ZERO, W as CNF_W, cnf_sub_finite, cnf_succ, fundamental_seq, nat as cnf_nat


class OrdinalSeq:
    """A total, memoized sequence ``N -> Ordinal``.

    Lim nodes only accept sequences that are strictly increasing; this is a
    contract on the generator and can be spot-checked with
    :func:`brwdec.engine.check_strict_increase_prefix`.

    ``offset_base`` marks sequences that are known, by construction, to be
    ``n -> offset_base + n``. The engine uses it to decide limits of such
    sequences by a single existential search.
    """

    __slots__ = ("_gen", "_memo", "_lock", "offset_base", "label")

    def __init__(self, generator: Callable[[int], "Ordinal"], *,
                 offset_base: Optional["Ordinal"] = None, label: str = ""):
        self._gen = generator
        self._memo: dict = {}
        self._lock = threading.Lock()
        self.offset_base = offset_base
        self.label = label

    def __getitem__(self, n: int) -> "Ordinal":
        try:
            return self._memo[n]
        except KeyError:
            pass
        if n < 0:
            raise IndexError(n)
        value = self._gen(n)
        if not isinstance(value, Ordinal):
            raise TypeError(f"sequence generator returned {type(value).__name__}")
        with self._lock:
            return self._memo.setdefault(n, value)

    def prefix(self, n: int) -> list:
        return [self[i] for i in range(n)]

    def map(self, fn: Callable[["Ordinal"], "Ordinal"], **kw) -> "OrdinalSeq":
        return OrdinalSeq(lambda n: fn(self[n]), **kw)

    def __repr__(self):
        return f"OrdinalSeq({self.label or hex(id(self))})"


class Ordinal:
    """Base class of the three point constructors.

    Equality is identity: use :func:`brwdec.engine.bisim` for the semantic
    notion. ``cnf`` is an optional annotation stating that the tree is
    bisimilar to the embedding of that Cantor normal form.
    """

    __slots__ = ("cnf", "chain", "__weakref__")

    def __init__(self, cnf: Optional[CnfForm] = None):
        self.cnf = cnf
        # (key, index): nodes sharing a key are <= each other in index order,
        # a fact established by the construction that created them
        self.chain = None

    def __repr__(self):
        if self.cnf is not None:
            return f"<{type(self).__name__} {self.cnf}>"
        return f"<{type(self).__name__} {hex(id(self))}>"


class Zero(Ordinal):
    __slots__ = ()


class Succ(Ordinal):
    __slots__ = ("pred",)

    def __init__(self, pred: Ordinal, cnf: Optional[CnfForm] = None):
        super().__init__(cnf)
        self.pred = pred


class Lim(Ordinal):
    __slots__ = ("seq",)

    def __init__(self, seq: OrdinalSeq, cnf: Optional[CnfForm] = None):
        super().__init__(cnf)
        if not isinstance(seq, OrdinalSeq):
            seq = OrdinalSeq(seq)
        self.seq = seq


ZERO = Zero(CNF_ZERO)


def succ(o: Ordinal) -> Succ:
    """Successor, annotated when ``o`` is."""
    return Succ(o, cnf_succ(o.cnf) if o.cnf is not None else None)


def lim(generator: Union[OrdinalSeq, Callable[[int], Ordinal]],
        cnf: Optional[CnfForm] = None) -> Lim:
    return Lim(generator if isinstance(generator, OrdinalSeq) else OrdinalSeq(generator), cnf)


_NAT_CACHE = [ZERO]
_NAT_LOCK = threading.Lock()


def from_nat(n: int) -> Ordinal:
    """Canonical embedding: ``n`` nested successors over Zero (shared nodes)."""
    if n < 0:
        raise ValueError("naturals only")
    if n < len(_NAT_CACHE):
        return _NAT_CACHE[n]
    with _NAT_LOCK:
        while len(_NAT_CACHE) <= n:
            k = len(_NAT_CACHE)
            _NAT_CACHE.append(Succ(_NAT_CACHE[-1], cnf_nat(k)))
    return _NAT_CACHE[n]


OMEGA = Lim(OrdinalSeq(from_nat, offset_base=ZERO, label="id"), CNF_W)


def omega() -> Lim:
    return OMEGA


# -- classification --------------------------------------------------------------

@dataclass(frozen=True)
class IsZero:
    pass


@dataclass(frozen=True)
class IsSucc:
    pred: Ordinal


@dataclass(frozen=True)
class IsLim:
    seq: OrdinalSeq


Classification = Union[IsZero, IsSucc, IsLim]


def classify(o: Ordinal) -> Classification:
    if isinstance(o, Succ):
        return IsSucc(o.pred)
    if isinstance(o, Lim):
        return IsLim(o.seq)
    return IsZero()


def reconstruct(c: Classification) -> Ordinal:
    if isinstance(c, IsSucc):
        return succ(c.pred)
    if isinstance(c, IsLim):
        return Lim(c.seq)
    return ZERO


@dataclass(frozen=True)
class Finite:
    n: int


@dataclass(frozen=True)
class Infinite:
    pass


FinitenessResult = Union[Finite, Infinite]


def decide_finite(o: Ordinal) -> FinitenessResult:
    """Count successors down to Zero; any Lim underneath means infinite."""
    n = 0
    while isinstance(o, Succ):
        if o.cnf is not None:
            break
        o = o.pred
        n += 1
    if o.cnf is not None:
        return Finite(n + o.cnf.as_int()) if o.cnf.is_finite else Infinite()
    if isinstance(o, Lim):
        return Infinite()
    return Finite(n)


def is_finite(o: Ordinal) -> bool:
    return isinstance(decide_finite(o), Finite)


def seq_get(s: OrdinalSeq, n: int) -> Ordinal:
    return s[n]


# -- CNF bridge ------------------------------------------------------------------

@lru_cache(maxsize=None)
def embed(a: CnfForm) -> Ordinal:
    """Brouwer tree of a CNF, annotated; limits use the canonical fundamental sequence.

    Results are cached, so equal CNFs share one node; the engine's reflexivity
    rule depends on that sharing.
    """
    if a.is_zero:
        return ZERO
    if a.is_finite:
        return from_nat(a.as_int())
    if a.is_successor:
        k = a.finite_part()
        limit_part = cnf_sub_finite(a, k)
        # warm the cache bottom-up so the recursion below stays one level deep
        for j in range(1, k):
            embed(limit_part + j)
        return Succ(embed(cnf_sub_finite(a, 1)), a)
    e, _ = a.terms[-1]
    offset = None
    if e == cnf_nat(1):
        # a = delta + w: the fundamental sequence is n -> delta + n
        offset = embed(fundamental_seq(a, 0))
    return Lim(OrdinalSeq(lambda n: embed(fundamental_seq(a, n)), offset_base=offset,
                          label=f"fs({a})"), a)


_STRIP_MEMO: "weakref.WeakKeyDictionary[Ordinal, Ordinal]" = weakref.WeakKeyDictionary()
_STRIP_LOCK = threading.RLock()


def strip(o: Ordinal) -> Ordinal:
    """Copy of ``o`` with every annotation removed, sharing preserved.

    Structural facts (``offset_base`` tags, construction chains) survive;
    only CNF annotations are dropped.
    """
    with _STRIP_LOCK:
        hit = _STRIP_MEMO.get(o)
        if hit is not None:
            return hit
        chain = []
        node = o
        while isinstance(node, Succ) and node not in _STRIP_MEMO:
            chain.append(node)
            node = node.pred
        if node in _STRIP_MEMO:
            base = _STRIP_MEMO[node]
        elif isinstance(node, Lim):
            src = node.seq
            off = src.offset_base
            base = Lim(OrdinalSeq(lambda n, src=src: strip(src[n]),
                                  offset_base=strip(off) if off is not None else None,
                                  label=f"strip({src.label})"))
            base.chain = node.chain
            _STRIP_MEMO[node] = base
        else:
            base = Zero()
            _STRIP_MEMO[node] = base
        for n in reversed(chain):
            base = Succ(base)
            base.chain = n.chain
            _STRIP_MEMO[n] = base
        return base
