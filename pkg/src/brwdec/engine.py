"""Sound, fuel-bounded semidecision of the order on Brouwer trees.

Every query runs against a :class:`Budget`. The search is written so that its
trace does not depend on how much fuel is available: a run with fuel ``F``
either finishes exactly as an unbounded run would, or stops with
``Unknown``. Monotonicity in fuel follows from that, not from tuning.

Sub-searches are dovetailed. A candidate gets a *slice* of fuel; running out
of a slice only abandons that candidate for this round, while running out of
the caller's budget aborts the whole query.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .cnf import EQ, GT, LT, CnfForm, W, cnf_compare, cnf_round_down, nat
from .core import Lim, Ordinal, OrdinalSeq, Succ, Zero, embed, succ


class Outcome(enum.Enum):
    PROVEN = "Proven"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    spent: int
    note: str = ""

    @property
    def proven(self) -> bool:
        return self.outcome is Outcome.PROVEN

    @property
    def refuted(self) -> bool:
        return self.outcome is Outcome.REFUTED

    @property
    def unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    def __str__(self):
        text = self.outcome.value
        if self.unknown:
            text += f" (spent {self.spent})"
        elif self.note:
            text += f" ({self.note})"
        return text


# internal results: True = proven, False = refuted
_P, _R = True, False


class Exhausted(Exception):
    def __init__(self, budget: "Budget"):
        super().__init__("fuel exhausted")
        self.budget = budget


class Budget:
    """A fuel counter. ``spend`` raises :class:`Exhausted` past the limit."""

    __slots__ = ("limit", "spent", "cache")

    def __init__(self, limit: int, cache: Optional[dict] = None):
        self.limit = limit
        self.spent = 0
        # (op, a, b) -> (result, cost) for sub-queries that ran to completion
        self.cache = {} if cache is None else cache

    @property
    def remaining(self) -> int:
        return self.limit - self.spent

    def spend(self, n: int = 1):
        self.spent += n
        if self.spent > self.limit:
            self.spent = self.limit
            raise Exhausted(self)


def run_slice(budget: Budget, slice_: int, fn: Callable[[Budget], bool]) -> Optional[bool]:
    """Run ``fn`` on at most ``slice_`` fuel; None if the slice ran out.

    If the caller has less than ``slice_`` left, exhaustion is the caller's
    and propagates.
    """
    remaining = budget.remaining
    child = Budget(min(slice_, remaining), budget.cache)
    try:
        result = fn(child)
    except Exhausted as exc:
        if exc.budget is not child:
            raise
        if remaining < slice_:
            budget.spend(remaining + 1)
        budget.spend(child.spent)
        return None
    budget.spend(child.spent)
    return result


@dataclass
class Task:
    """A dovetailed sub-query. ``on_true``/``on_false`` give the overall
    answer when the sub-query settles that way; None means "no information,
    drop this task".
    """
    run: Callable[[Budget], bool]
    on_true: Optional[bool]
    on_false: Optional[bool]


def _cached(budget: Budget, key, fn: Callable[[Budget], bool]) -> bool:
    hit = budget.cache.get(key)
    if hit is not None:
        result, cost = hit
        budget.spend(cost)
        return result
    start = budget.spent
    result = fn(budget)
    budget.cache[key] = (result, budget.spent - start)
    return result


SLICE_BASE = 4


def fetch_cost(index: int) -> int:
    """Fuel charged for reading element ``index`` of a limit sequence.

    Building late elements (``x + n``, n-th column of a family, ...) takes
    work proportional to the index, so reads are priced the same way.
    """
    return 1 + index


def dovetail(budget: Budget, tasks: Callable[[int], Optional[Task]],
             count: Optional[int] = None) -> bool:
    """Fair search over tasks 0, 1, 2, ...; returns the first decisive answer.

    Round ``r`` admits tasks ``0 .. (r+1)**2 - 1`` and gives each unsettled
    one a slice of ``SLICE_BASE * 2**r``. New candidates arrive slowly
    because building a late sequence element can itself be expensive. Settled tasks are skipped afterwards, so
    the schedule is deterministic and independent of the total budget. Only
    budget exhaustion ends a search with no decisive task.
    """
    settled = set()
    built: dict = {}
    r = 0
    while True:
        width = (r + 1) ** 2
        slice_ = SLICE_BASE << r
        upper = width if count is None else min(width, count)
        for i in range(upper):
            if i in settled:
                continue
            task = built.get(i)
            if task is None:
                budget.spend()
                task = tasks(i)
                if task is None:
                    settled.add(i)
                    continue
                built[i] = task
            res = run_slice(budget, slice_, task.run)
            if res is None:
                continue
            answer = task.on_true if res else task.on_false
            if answer is not None:
                return answer
            settled.add(i)
            del built[i]
        if count is not None and len(settled) >= count:
            # finite task list exhausted with no decisive answer: spin until fuel ends
            while True:
                budget.spend(budget.remaining + 1)
        r += 1


# -- the order -----------------------------------------------------------------

def _peel_common(a: Ordinal, b: Ordinal, budget: Budget) -> Tuple[Ordinal, Ordinal]:
    while isinstance(a, Succ) and isinstance(b, Succ):
        budget.spend()
        a, b = a.pred, b.pred
        if a is b:
            break
    return a, b


def _finite(o: Ordinal, budget: Budget) -> bool:
    budget.spend()
    if o.cnf is not None:
        return o.cnf.is_finite
    while isinstance(o, Succ):
        o = o.pred
        if o.cnf is not None:
            return o.cnf.is_finite
    return not isinstance(o, Lim)


def _leq(a: Ordinal, b: Ordinal, budget: Budget) -> bool:
    budget.spend()
    if a is b:
        return _P
    if a.cnf is not None and b.cnf is not None:
        return cnf_compare(a.cnf, b.cnf) != GT
    return _cached(budget, ("leq", a, b), lambda bu: _leq_struct(a, b, bu))


def _leq_struct(a: Ordinal, b: Ordinal, budget: Budget) -> bool:
    a, b = _peel_common(a, b, budget)
    if a is b:
        return _P
    if a.cnf is not None and b.cnf is not None:
        return cnf_compare(a.cnf, b.cnf) != GT
    if isinstance(a, Zero):
        return _P
    if isinstance(a, Succ):
        if isinstance(b, Zero):
            return _R
        if isinstance(b, Succ):
            return _leq(a, b, budget)
        return _succ_leq_lim(a, b, budget)
    # a is a limit
    while isinstance(b, Succ):
        budget.spend()
        b = b.pred
        if a is b:
            return _P
    if isinstance(b, Zero):
        return _R
    if a.cnf is not None and b.cnf is not None:
        return cnf_compare(a.cnf, b.cnf) != GT
    return _lim_leq_lim(a, b, budget)


def _limit_part(o: Ordinal, budget: Budget) -> Ordinal:
    if o.cnf is not None:
        return embed(cnf_round_down(o.cnf))
    while isinstance(o, Succ):
        budget.spend()
        o = o.pred
        if o.cnf is not None:
            return embed(cnf_round_down(o.cnf))
    return o


def _succ_leq_lim(a: Succ, b: Lim, budget: Budget) -> bool:
    if _finite(a, budget):
        return _P
    g = b.seq
    pred = a.pred
    base = _offset_base(b)
    if base is not None:
        # pred < delta + w  iff  down(pred) <= down(delta)
        return _leq(_limit_part(pred, budget), _limit_part(base, budget), budget)

    def task(i):
        if i == 0:
            # semantically exactly one of a <= b and b <= pred holds
            return Task(lambda bu: _leq(b, pred, bu), on_true=_R, on_false=None)
        m = i - 1

        def run(bu):
            bu.spend(fetch_cost(m))
            return _leq(a, g[m], bu)
        return Task(run, on_true=_P, on_false=None)

    return dovetail(budget, task)


def _offset_base(a: Lim) -> Optional[Ordinal]:
    """If ``a`` is known to be ``delta + w``, return an ordinal equal to delta."""
    if a.seq.offset_base is not None:
        return a.seq.offset_base
    if a.cnf is not None:
        e, c = a.cnf.terms[-1]
        if e == nat(1):
            return embed(CnfForm(a.cnf.terms[:-1] + (((e, c - 1),) if c > 1 else ())))
    return None


def _lim_leq_lim(a: Lim, b: Lim, budget: Budget) -> bool:
    if a.seq is b.seq:
        return _P
    if a.chain is not None and b.chain is not None and a.chain[0] == b.chain[0]:
        if a.chain[1] <= b.chain[1]:
            return _P
    delta = _offset_base(a)
    if delta is not None:
        # delta + w <= lim g  iff  delta < lim g  (g strictly increasing)
        return _succ_leq_lim_delta(delta, b, budget)
    f = a.seq

    def task(n):
        def run(bu):
            bu.spend(fetch_cost(n))
            return _leq(f[n], b, bu)
        return Task(run, on_true=None, on_false=_R)

    return dovetail(budget, task)


def _succ_leq_lim_delta(delta: Ordinal, b: Lim, budget: Budget) -> bool:
    key = ("succ", delta)
    node = budget.cache.get(key)
    if node is None:
        node = budget.cache[key] = succ(delta)
    return _leq(node, b, budget)


# -- public API ------------------------------------------------------------------

def _note(a: Ordinal, b: Ordinal) -> str:
    if a is b:
        return "reflexivity"
    if a.cnf is not None and b.cnf is not None:
        return {LT: "LT", EQ: "EQ", GT: "GT"}[cnf_compare(a.cnf, b.cnf)] + " via annotation"
    return ""


def _top(fn: Callable[[Budget], bool], fuel: int, note: str = "") -> Verdict:
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    budget = Budget(fuel)
    try:
        res = fn(budget)
    except Exhausted:
        return Verdict(Outcome.UNKNOWN, budget.limit)
    except RecursionError:
        return Verdict(Outcome.UNKNOWN, budget.spent, "recursion limit")
    return Verdict(Outcome.PROVEN if res else Outcome.REFUTED, budget.spent, note)


def run_bounded(fn: Callable[[Budget], bool], fuel: int, note: str = "") -> Verdict:
    """Run a budgeted search to a Verdict; exhaustion becomes Unknown."""
    return _top(fn, fuel, note)


def leq(a: Ordinal, b: Ordinal, fuel: int) -> Verdict:
    """Three-valued ``a <= b``. Proven and Refuted are always correct."""
    return _top(lambda bu: _leq(a, b, bu), fuel, _note(a, b))


def lt(a: Ordinal, b: Ordinal, fuel: int) -> Verdict:
    return leq(succ(a), b, fuel)


def bisim(a: Ordinal, b: Ordinal, fuel: int) -> Verdict:
    """Both directions of ``<=``, interleaved so neither starves the other."""
    def run(budget: Budget) -> bool:
        if a is b:
            budget.spend()
            return _P
        done = set()
        r = 0
        while True:
            slice_ = SLICE_BASE << r
            for i, (x, y) in enumerate(((a, b), (b, a))):
                if i in done:
                    continue
                res = run_slice(budget, slice_, lambda bu, x=x, y=y: _leq(x, y, bu))
                if res is None:
                    continue
                if res is _R:
                    return _R
                done.add(i)
            if len(done) == 2:
                return _P
            r += 1
    return _top(run, fuel, _note(a, b))


def decide_leq_cnf(a: CnfForm, b: CnfForm) -> bool:
    return cnf_compare(a, b) != GT


# -- probes ----------------------------------------------------------------------

@dataclass
class LevelResult:
    level: CnfForm
    verdict: Verdict


@dataclass
class ProbeReport:
    target: CnfForm
    per_level: List[LevelResult] = field(default_factory=list)
    summary: Verdict = None

    def as_rows(self):
        return [(str(r.level), r.verdict) for r in self.per_level]


def ladder_levels(target: CnfForm, k_max: int) -> List[CnfForm]:
    """Levels ``w*k`` (1 <= k <= k_max) that do not exceed ``target``."""
    levels = []
    for k in range(1, k_max + 1):
        level = W * k
        if cnf_compare(level, target) == GT:
            break
        levels.append(level)
    return levels


def probe_ge(o: Ordinal, target: CnfForm, fuel: int, k_max: int = 6) -> ProbeReport:
    """Decide ``o >= target`` where possible, with a ``w*k`` ladder below it.

    The summary comes from the full target only. For ``target = delta + w``
    and a limit ``o`` the engine searches for an element of ``o`` above
    ``delta``; targets like ``w^2`` can only be refuted or settled through
    annotations.
    """
    if not isinstance(target, CnfForm):
        raise TypeError("probe targets must be CnfForm values")
    report = ProbeReport(target)
    report.summary = leq(embed(target), o, fuel)
    for level in ladder_levels(target, k_max):
        verdict = report.summary if level == target else leq(embed(level), o, fuel)
        report.per_level.append(LevelResult(level, verdict))
    return report


def check_strict_increase_prefix(s: OrdinalSeq, n: int, fuel: int) -> Verdict:
    """Check ``s[i] < s[i+1]`` for all ``i < n`` on one shared budget."""
    def run(budget):
        for i in range(n):
            budget.spend()
            if not _leq(succ(s[i]), s[i + 1], budget):
                return _R
        return _P
    return _top(run, fuel)
