"""Characteristic ordinals of families of semidecidable propositions.

``psi_n(P, n)`` counts, in a limit, how many of ``P_0 .. P_{n-1}`` hold:
it is ``w*(T+1)`` where ``T`` is that count. ``psi(P)`` is the limit of
``psi_n(P, n) + n`` and reaches ``w^2`` exactly when every member holds
(after downward normalization). From these come witnesses for countable
meets (level ``w^2``), joins (``w*3``) and ``exists m. forall n``
(``w^2 + w``).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple

from .arith import add, from_nat
from .cnf import W, CnfForm, w_pow
from .core import ZERO, Lim, Ordinal, OrdinalSeq, embed
from .semidec import BitSeq, DecWitness, constant

W2 = w_pow(2)


@dataclass(eq=False)
class PropFamily:
    """``n -> BitSeq``. ``tail=(start, truth)`` declares the truth of every
    member from ``start`` on; it is what lets ``psi`` carry an annotation."""
    members: Callable[[int], BitSeq]
    description: str = ""
    tail: Optional[Tuple[int, bool]] = None
    # optional shortcut for member truths that avoids building the member
    facts: Optional[Callable[[int], Optional[bool]]] = field(default=None, repr=False)
    _memo: Dict[int, BitSeq] = field(default_factory=dict, init=False, repr=False)
    _psi: Dict[int, Ordinal] = field(default_factory=dict, init=False, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, init=False, repr=False)
    _whole: Optional[Ordinal] = field(default=None, init=False, repr=False)

    def __getitem__(self, n: int) -> BitSeq:
        hit = self._memo.get(n)
        if hit is None:
            with self._lock:
                hit = self._memo.setdefault(n, self.members(n))
        return hit

    def truth(self, n: int) -> Optional[bool]:
        if self.tail is not None and n >= self.tail[0]:
            return self.tail[1]
        if self.facts is not None:
            return self.facts(n)
        return self[n].truth()

    def shift(self, k: int) -> "PropFamily":
        """The family ``i -> P_{i+k}``."""
        tail = None
        if self.tail is not None:
            tail = (max(0, self.tail[0] - k), self.tail[1])
        return PropFamily(lambda i: self[i + k], f"shift({self.description}, {k})", tail)

    def opaque(self) -> "PropFamily":
        """Same bits, every declaration dropped."""
        return PropFamily(lambda i: self[i].opaque(), f"opaque({self.description})")


@dataclass(eq=False)
class PropFamily2D:
    """``(n, m) -> BitSeq``; ``monotone`` asserts ``P(n,m) -> P(n,m+1)``.

    ``column_tail(m)`` may declare the tail of column ``m`` (see PropFamily).
    """
    members: Callable[[int, int], BitSeq]
    monotone: bool = False
    description: str = ""
    column_tail: Optional[Callable[[int], Optional[Tuple[int, bool]]]] = None
    _columns: Dict[int, PropFamily] = field(default_factory=dict, init=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)

    def column(self, m: int) -> PropFamily:
        col = self._columns.get(m)
        if col is None:
            tail = self.column_tail(m) if self.column_tail else None
            col = PropFamily(lambda n: self.members(n, m), f"{self.description}[*, {m}]", tail)
            with self._lock:
                col = self._columns.setdefault(m, col)
        return col

    def check_monotone(self, n_max: int, m_max: int, bound: int) -> bool:
        """Bit-level upward closure in ``m`` on a finite window."""
        for n in range(n_max):
            for m in range(m_max):
                lo = self.members(n, m).first_one(bound)
                if lo is not None and self.members(n, m + 1).first_one(lo + 1) is None:
                    return False
        return True


# -- normalization -----------------------------------------------------------------

class _Prefix:
    """Running fold of declared facts over ``P_0 .. P_i``, extended on demand."""

    def __init__(self, P: PropFamily, step, init):
        self.P = P
        self.step = step
        self.values = []
        self.acc = init
        self.lock = threading.Lock()

    def __getitem__(self, i):
        with self.lock:
            while len(self.values) <= i:
                j = len(self.values)
                self.acc = self.step(self.acc, self.P.truth(j), self.P[j])
                self.values.append(self.acc)
            return self.values[i]


def _and_step(acc, truth, s):
    # acc = (truth of the conjunction or None, max first-hit index or None)
    t, hit = acc
    if t is False or truth is False:
        return (False, None)
    t = True if (t is True and truth is True) else None
    h = s.known_first_one()
    hit = None if (h is None or hit is None) else max(hit, h)
    return (t, hit)


def _or_step(acc, truth, s):
    # acc = (truth of the disjunction or None, eventually of the OR or None)
    t, ev = acc
    if t is True or truth is True:
        t = True
    elif t is False and truth is False:
        t = False
    else:
        t = None
    if ev is not None and s.eventually is not None:
        ev = (max(ev[0], s.eventually[0]), max(ev[1], s.eventually[1]))
    else:
        ev = None
    return (t, ev)


def normalize_down(P: PropFamily) -> PropFamily:
    """``Q_i = P_0 and ... and P_i``; bit ``k`` of ``Q_i`` is 1 once every
    ``P_j`` (``j <= i``) has shown a 1 at an index ``<= k``."""
    facts = _Prefix(P, _and_step, (True, 0))

    def member(i):
        parts = [P[j] for j in range(i + 1)]
        truth, hit = facts[i]
        eventually = (0, 0) if truth is False else ((hit, 1) if truth and hit is not None else None)
        return BitSeq(lambda k: all(s.first_one(k + 1) is not None for s in parts),
                      eventually=eventually, truth=truth, label=f"Q{i}")

    tail = None
    if P.tail is not None:
        start, b = P.tail
        if start == 0:
            tail = (0, b)
        else:
            truth, _ = facts[start - 1]
            if truth is True:
                tail = (start, b)
            elif truth is False:
                first_false = next(j for j in range(start) if facts[j][0] is False)
                tail = (first_false, False)
    return PropFamily(member, f"down({P.description})", tail, facts=lambda i: facts[i][0])


def normalize_up(P: PropFamily) -> PropFamily:
    """``Q_i = P_0 or ... or P_i``, bitwise OR of the members."""
    facts = _Prefix(P, _or_step, (False, (0, 0)))

    def member(i):
        parts = [P[j] for j in range(i + 1)]
        truth, eventually = facts[i]
        return BitSeq(lambda k: any(s[k] for s in parts), eventually=eventually,
                      truth=truth, label=f"Q{i}")

    tail = None
    if P.tail is not None:
        start, b = P.tail
        if start == 0:
            tail = (0, b)
        else:
            truth, _ = facts[start - 1]
            if truth is False:
                tail = (start, b)
            elif truth is True:
                tail = (next(j for j in range(start) if facts[j][0] is True), True)
    return PropFamily(member, f"up({P.description})", tail, facts=lambda i: facts[i][0])


# -- the characteristic ordinal ------------------------------------------------------

def _psi_n_build(P: PropFamily, n: int) -> Ordinal:
    members = [P[i] for i in range(n)]
    hits: list = [None] * n          # first index with a 1, once found
    scanned = [0] * n                # indices checked so far per member

    def count(k):
        t = 0
        for i, s in enumerate(members):
            if hits[i] is None:
                while scanned[i] <= k:
                    if s[scanned[i]]:
                        hits[i] = scanned[i]
                        break
                    scanned[i] += 1
            if hits[i] is not None and hits[i] <= k:
                t += 1
        return t

    lock = threading.Lock()

    def gen(k):
        with lock:
            t = count(k)
        return embed(W * t + k)

    truths = [P.truth(i) for i in range(n)]
    ann = None
    if all(t is not None for t in truths):
        ann = W * (sum(truths) + 1)
    node = Lim(OrdinalSeq(gen, offset_base=ZERO if n == 0 else None,
                          label=f"psi_{n}({P.description})"), ann)
    return node


def psi_n(P: PropFamily, n: int) -> Ordinal:
    """``Lim(k -> w*t_k + k)`` with ``t_k`` the number of ``P_i`` (``i < n``)
    showing a 1 by index ``k``. Cached per family; the values are weakly
    increasing in ``n``, recorded as a chain certificate."""
    hit = P._psi.get(n)
    if hit is not None:
        return hit
    node = _psi_n_build(P, n)
    node.chain = (("psi_n", id(P)), n)
    with P._lock:
        return P._psi.setdefault(n, node)


def _psi_annotation(P: PropFamily) -> Optional[CnfForm]:
    if P.tail is None:
        return None
    start, b = P.tail
    truths = [P.truth(i) for i in range(start)]
    if any(t is None for t in truths):
        return None
    if b:
        return W2
    return W * (sum(truths) + 2)


def psi(P: PropFamily) -> Ordinal:
    """``Lim(n -> psi_n(P, n) + n)``."""
    if P._whole is not None:
        return P._whole
    node = Lim(OrdinalSeq(lambda n: add(psi_n(P, n), from_nat(n)), label=f"psi({P.description})"),
               _psi_annotation(P))
    with P._lock:
        if P._whole is None:
            P._whole = node
    return P._whole


# -- witnesses -------------------------------------------------------------------------

def forall_witness(P: PropFamily) -> DecWitness:
    """``forall n. P_n`` iff ``psi(normalize_down(P)) >= w^2``."""
    return DecWitness(W2, psi(normalize_down(P)))


def exists_witness(P: PropFamily) -> DecWitness:
    """``exists n. P_n`` iff ``psi(P) >= w*3``."""
    return DecWitness(W * 3, psi(P))


def exists_forall_witness(P: PropFamily2D) -> DecWitness:
    """``exists m. forall n. P(n, m)`` iff the limit of
    ``m -> psi(column m) + m`` is ``>= w^2 + w``; columns are normalized
    downward so each column's psi reaches ``w^2`` exactly when the column is
    all true."""
    if not P.monotone:
        raise ValueError("exists_forall_witness needs a family marked monotone in m")
    key = ("column-psi", id(P))

    def column_psi(m):
        node = psi(normalize_down(P.column(m)))
        # monotone in m gives psi(column m) <= psi(column m+1)
        if node.chain is None:
            node.chain = (key, m)
        return add(node, from_nat(m))

    return DecWitness(W2 + W, Lim(OrdinalSeq(column_psi, label=f"exists-forall({P.description})")))


def column_witness(P: PropFamily2D, m: int) -> DecWitness:
    """The ``forall n. P(n, m)`` witness for a single column."""
    return forall_witness(P.column(m))


def negation_witness(s: BitSeq) -> DecWitness:
    """``not (exists i. s_i = 1)`` as the meet of ``s_n = 0`` over all n."""
    tail = None
    if s.eventually is not None:
        tail = (s.eventually[0], s.eventually[1] == 0)
    fam = PropFamily(lambda n: constant(1 - s[n]), f"not({s.label})", tail)
    return forall_witness(fam)


# -- named families ------------------------------------------------------------------------

@lru_cache(maxsize=None)
def prime_table(limit: int) -> bytearray:
    """Sieve of Eratosthenes: ``table[i] == 1`` iff ``i`` is prime, ``i <= limit``."""
    table = bytearray([1]) * (limit + 1)
    table[0:2] = b"\x00\x00"[: min(2, limit + 1)]
    i = 2
    while i * i <= limit:
        if table[i]:
            table[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
        i += 1
    return table


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def is_twin(i: int, table: Optional[bytearray] = None) -> bool:
    if table is not None and i + 2 < len(table):
        return bool(table[i] and table[i + 2])
    return is_prime(i) and is_prime(i + 2)


def family_twin_primes(cap: int) -> PropFamily:
    """Member ``n`` has bit ``i`` set iff ``n < i <= cap`` and ``i, i+2`` are prime.

    No eventual-constancy is declared: the bits past ``cap`` are zero, but
    the point of this family is to make the engine search.
    """
    table = prime_table(cap + 2)

    def member(n):
        return BitSeq(lambda i: n < i <= cap and is_twin(i, table), label=f"twin>{n}")
    return PropFamily(member, f"twin-primes({cap})")


def family_const(truth: bool) -> PropFamily:
    return PropFamily(lambda n: constant(1 if truth else 0),
                      "const-true" if truth else "const-false", (0, truth))


def family_single_true(j: int) -> PropFamily:
    return PropFamily(lambda n: constant(1 if n == j else 0), f"single-true({j})", (j + 1, False))


def family_from_truths(truths, tail: bool = False, hit_at: int = 0) -> PropFamily:
    """Finitely many listed truth values, then ``tail``; true members first
    show a 1 at ``hit_at``."""
    truths = list(truths)

    def member(n):
        t = truths[n] if n < len(truths) else tail
        if not t:
            return constant(0)
        return BitSeq(lambda i: i >= hit_at, eventually=(hit_at, 1), label=f"from({hit_at})")
    return PropFamily(member, "listed", (len(truths), tail))


def family_threshold(m0: int) -> PropFamily2D:
    """``P(n, m) = (m >= m0)``."""
    return PropFamily2D(lambda n, m: constant(1 if m >= m0 else 0), True, f"threshold({m0})",
                        lambda m: (0, m >= m0))


def family_diagonal() -> PropFamily2D:
    """``P(n, m) = (n < m)``."""
    return PropFamily2D(lambda n, m: constant(1 if n < m else 0), True, "diagonal",
                        lambda m: (m, False))


def family_twin_counterexample() -> PropFamily2D:
    """``P(n, m) = (n >= m implies not both n and n+2 prime)``; column tails are unknown."""
    return PropFamily2D(lambda n, m: constant(1 if n < m or not is_twin(n) else 0), True,
                        "twin-counterexample")


# name -> (number of integer arguments, constructor)
FAMILIES = {
    "twin-primes": (1, family_twin_primes),
    "const-true": (0, lambda: family_const(True)),
    "const-false": (0, lambda: family_const(False)),
    "single-true": (1, family_single_true),
}
FAMILIES_2D = {
    "threshold": (1, family_threshold),
    "diagonal": (0, family_diagonal),
    "twin-counterexample": (0, family_twin_counterexample),
}
