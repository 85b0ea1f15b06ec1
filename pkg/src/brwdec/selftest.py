"""Acceptance checks, runnable from the CLI (``ord selftest``) and pytest.

Each check returns a :class:`CriterionResult`; nothing here raises on a
failed property, so a run always reports every criterion.
"""
from __future__ import annotations

import io
import json
import random
import time
from dataclasses import dataclass
from typing import Callable, List

from .arith import add, exp, mul, round_down
from .characteristic import (column_witness, exists_forall_witness, exists_witness,
                             family_const, family_diagonal, family_from_truths,
                             family_single_true, family_threshold, family_twin_primes,
                             forall_witness, psi_n)
from .cnf import GT, LT, W, CnfForm, cnf_add, cnf_compare, cnf_mul, cnf_parse, cnf_print, cnf_round_down, nat, w_pow
from .core import OMEGA, embed, strip
from .engine import bisim, check_strict_increase_prefix, leq, lt, probe_ge
from .minmax import lim_max, lim_min
from .semidec import from_prefix, semidec_to_witness, witness_to_semidec
from .sierpinski import eval_top, s_n_of



@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.name}: {self.detail} ({self.seconds:.1f}s)"


def random_cnf(rng: random.Random, max_exp: int = 3, max_coeff: int = 5,
               p_term: float = 0.5) -> CnfForm:
    """Random CNF below ``w^(max_exp+1)`` with coefficients ``<= max_coeff``."""
    terms = []
    for e in range(max_exp, -1, -1):
        if rng.random() < p_term:
            terms.append((nat(e), rng.randint(1, max_coeff)))
    return CnfForm(tuple(terms))


def random_limit(rng: random.Random, max_exp: int = 3, max_coeff: int = 5) -> CnfForm:
    """Zero or a limit CNF."""
    return cnf_round_down(random_cnf(rng, max_exp, max_coeff))


# -- 1 --------------------------------------------------------------------------------

def criterion_oracle_soundness(n: int = 1000, fuel: int = 10_000, seed: int = 1) -> CriterionResult:
    rng = random.Random(seed)
    wrong = undecided_required = required = decided = 0
    for _ in range(n):
        a, b = random_cnf(rng), random_cnf(rng)
        v = leq(strip(embed(a)), strip(embed(b)), fuel)
        truth = cnf_compare(a, b) != GT
        if (v.proven and not truth) or (v.refuted and truth):
            wrong += 1
        decided += not v.unknown
        # finite on either side, or the same limit part with different finite tails
        if a.is_finite or b.is_finite or cnf_round_down(a) == cnf_round_down(b):
            required += 1
            undecided_required += v.unknown
    ok = wrong == 0 and undecided_required == 0
    return CriterionResult(1, "oracle soundness", ok,
                           f"{n} pairs, {wrong} contradictions, {decided} decided, "
                           f"{required - undecided_required}/{required} finite/tail cases decided")


# -- 2 --------------------------------------------------------------------------------

def criterion_arith_homomorphism(n: int = 300, fuel: int = 10_000, seed: int = 2) -> CriterionResult:
    rng = random.Random(seed)
    failures = refuted_stripped = 0
    for _ in range(n):
        a, b = random_cnf(rng, 2), random_cnf(rng, 2)
        e = random_cnf(rng, 1)  # exponent below w^2
        cases = [
            (add(embed(a), embed(b)), cnf_add(a, b), add(strip(embed(a)), strip(embed(b)))),
            (mul(embed(a), embed(b)), cnf_mul(a, b), mul(strip(embed(a)), strip(embed(b)))),
            (exp(OMEGA, embed(e)), w_pow(e), exp(strip(OMEGA), strip(embed(e)))),
        ]
        for tree, cnf, bare in cases:
            if not bisim(tree, embed(cnf), fuel).proven:
                failures += 1
            # without annotations the engine may not prove it, but must never refute it
            if bisim(bare, strip(embed(cnf)), 300).refuted:
                refuted_stripped += 1
    ok = failures == 0 and refuted_stripped == 0
    return CriterionResult(2, "arithmetic homomorphism", ok,
                           f"{3 * n} cases, {failures} not proven, "
                           f"{refuted_stripped} refuted without annotations")


# -- 3 --------------------------------------------------------------------------------

def criterion_limmin_laws(n: int = 200, fuel: int = 10_000, seed: int = 3) -> CriterionResult:
    rng = random.Random(seed)
    violations = 0
    for _ in range(n):
        a, b = random_limit(rng), random_limit(rng)
        ea, eb = embed(a), embed(b)
        m = lim_min(ea, eb)
        if not leq(m, ea, fuel).proven or not leq(m, eb, fuel).proven:
            violations += 1
        if not bisim(lim_min(ea, ea), round_down(ea), fuel).proven:
            violations += 1
        for _ in range(3):
            g = random_cnf(rng)
            want = cnf_compare(g, a) != GT and cnf_compare(g, b) != GT
            v = leq(embed(g), m, fuel)
            if v.unknown or v.proven != want:
                violations += 1
            # stripped structure must never contradict the oracle
            vs = leq(strip(embed(g)), lim_min(strip(ea), strip(eb)), 500)
            if (vs.proven and not want) or (vs.refuted and want):
                violations += 1
    return CriterionResult(3, "limMin laws", violations == 0, f"{n} pairs, {violations} violations")


# -- 4 --------------------------------------------------------------------------------

def criterion_limmax_property(n: int = 200, fuel: int = 10_000, seed: int = 4) -> CriterionResult:
    rng = random.Random(seed)
    violations = searched = 0
    for _ in range(n):
        a, b = random_cnf(rng, 2), random_cnf(rng, 2)
        ea, eb = embed(a), embed(b)
        mx = lim_max(ea, eb)
        bare = lim_max(strip(ea), strip(eb))
        for k in range(1, 6):
            level = W * k
            va = probe_ge(ea, level, fuel, 0).summary
            vb = probe_ge(eb, level, fuel, 0).summary
            vm = probe_ge(mx, level, fuel, 0).summary
            either = va.proven or vb.proven
            both_refuted = va.refuted and vb.refuted
            if vm.unknown or (either and not vm.proven) or (both_refuted and not vm.refuted):
                violations += 1
            want = cnf_compare(a, level) != LT or cnf_compare(b, level) != LT
            vs = probe_ge(bare, level, fuel, 0).summary
            searched += vs.proven
            if (vs.proven and not want) or (vs.refuted and want):
                violations += 1
    return CriterionResult(4, "limMax at w*k", violations == 0,
                           f"{n} pairs x k<=5, {violations} violations, "
                           f"{searched} proven without annotations")


# -- 5 --------------------------------------------------------------------------------

def _random_bits(rng: random.Random):
    prefix = [int(rng.random() < 0.15) for _ in range(rng.randint(0, 12))]
    return from_prefix(prefix, int(rng.random() < 0.3))


def criterion_semidec_roundtrip(n: int = 100, fuel: int = 10_000, seed: int = 5,
                                bound: int = 64) -> CriterionResult:
    rng = random.Random(seed)
    bad = 0
    for _ in range(n):
        s = _random_bits(rng)
        has_one = s.first_one(bound) is not None
        for seq in (s, s.opaque()):
            v = semidec_to_witness(seq).probe(fuel).summary
            if v.proven != has_one or (has_one and v.refuted):
                bad += 1
        back = witness_to_semidec(semidec_to_witness(s.opaque()))
        if (back.first_one(bound) is not None) != has_one:
            bad += 1
    return CriterionResult(5, "semidecidable <-> (w+1)-decidable", bad == 0,
                           f"{n} sequences, {bad} mismatches")


# -- 6 --------------------------------------------------------------------------------

def criterion_psi_n_exact(fuel: int = 10_000) -> CriterionResult:
    fam = family_const(True)
    bare = fam.opaque()
    bad = []
    for n in range(9):
        x, target = psi_n(fam, n), embed(W * (n + 1))
        if not (leq(x, target, fuel).proven and leq(target, x, fuel).proven):
            bad.append(n)
        # the family's declarations are not needed for the lower bound
        if not leq(target, psi_n(bare, n), fuel).proven:
            bad.append(n)
        # fully stripped search may give up but must not disagree
        if leq(strip(target), psi_n(bare, n), fuel).refuted:
            bad.append(n)
    return CriterionResult(6, "psi_n(all true) = w*(n+1)", not bad,
                           "n = 0..8 both directions" + (f", failed at {bad}" if bad else ""))


# -- 7 --------------------------------------------------------------------------------

def criterion_psi_n_reaches_w2(fuel: int = 100_000) -> CriterionResult:
    missing = []
    for j in range(17):
        fam = family_single_true(j).opaque()
        found = any(probe_ge(psi_n(fam, n), W * 2, fuel, 0).summary.proven for n in range(j + 2))
        if not found:
            missing.append(j)
    leaks = 0
    for fam in (family_const(False), family_const(False).opaque()):
        for n in range(17):
            for k in range(2, 7):
                if probe_ge(psi_n(fam, n), W * k, fuel, 0).summary.proven:
                    leaks += 1
    ok = not missing and leaks == 0
    return CriterionResult(7, "some psi_n reaches w*2 iff a member holds", ok,
                           f"single-true j<=16: {17 - len(missing)}/17 found; "
                           f"all-false: {leaks} proven levels >= w*2")


# -- 8 --------------------------------------------------------------------------------

def build_join_families(seed: int = 8):
    """50 families with known truth of ``exists n. P_n``."""
    rng = random.Random(seed)
    fams = []
    for j in range(15):
        fam = family_single_true(j)
        fams.append((fam if j % 2 else fam.opaque(), True))
    fams += [(family_const(True), True), (family_const(True).opaque(), True),
             (family_const(False), False), (family_const(False).opaque(), False)]
    while len(fams) < 50:
        truths = [rng.random() < 0.2 for _ in range(rng.randint(0, 10))]
        fam = family_from_truths(truths, False, rng.randint(0, 5))
        fams.append((fam if rng.random() < 0.5 else fam.opaque(), any(truths)))
    return fams


def criterion_exists_witness(fuel: int = 100_000) -> CriterionResult:
    bad = 0
    for fam, truth in build_join_families():
        v = exists_witness(fam).probe(fuel, 0).summary
        if v.proven != truth or (truth and v.refuted):
            bad += 1
    return CriterionResult(8, "exists-witness at w*3", bad == 0, f"50 families, {bad} mismatches")


# -- 9 --------------------------------------------------------------------------------

def criterion_twin_primes(cap: int = 5000, fuel: int = 200_000, k_max: int = 8) -> CriterionResult:
    start = time.perf_counter()
    report = forall_witness(family_twin_primes(cap)).probe(fuel, k_max)
    elapsed = time.perf_counter() - start
    proven = [str(r.level) for r in report.per_level if r.verdict.proven]
    ok = len(proven) == k_max and elapsed < 10
    return CriterionResult(9, "twin-prime ladder", ok,
                           f"levels proven: {', '.join(proven) or 'none'}; "
                           f"summary at w^2 {report.summary.outcome.value}; {elapsed:.2f}s")


# -- 10 -------------------------------------------------------------------------------

def criterion_exists_forall(fuel: int = 100_000, k_max: int = 6) -> CriterionResult:
    thr = family_threshold(5)
    summary = exists_forall_witness(thr).probe(fuel, 0).summary
    column = None
    for m in range(16):
        report = column_witness(thr, m).probe(fuel, k_max)
        if all(r.verdict.proven for r in report.per_level):
            column = m
            break
    diag = exists_forall_witness(family_diagonal()).probe(fuel, 0).summary
    ok = summary.proven and column is not None and not diag.proven
    return CriterionResult(10, "exists-forall at w^2 + w", ok,
                           f"threshold(5): {summary.outcome.value} via column {column}; "
                           f"diagonal: {diag.outcome.value}")


# -- 11 -------------------------------------------------------------------------------

SIERP_SAMPLES = [W * k for k in range(7)] + [w_pow(2)]


def criterion_sierpinski(fuel: int = 10_000) -> CriterionResult:
    mismatches = contradictions = 0
    for n in range(7):
        for a in SIERP_SAMPLES:
            want = cnf_compare(a, W * n) != LT
            s = s_n_of(n, embed(a))
            if eval_top(s, fuel).proven != want:
                mismatches += 1
            for f in (1, 10, 100, 1000):
                v = eval_top(s, f)
                if (v.proven and not want) or (v.refuted and want):
                    contradictions += 1
    ok = mismatches == 0 and contradictions == 0
    return CriterionResult(11, "Sierpinski s_n agreement", ok,
                           f"{7 * len(SIERP_SAMPLES)} cases, {mismatches} mismatches, "
                           f"{contradictions} contradictions")


# -- 12 -------------------------------------------------------------------------------

def _monotonicity_case(rng: random.Random):
    kind = rng.randrange(6)
    a, b = strip(embed(random_cnf(rng))), strip(embed(random_cnf(rng)))
    if kind == 0:
        return "leq", lambda f: leq(a, b, f)
    if kind == 1:
        return "lt", lambda f: lt(a, b, f)
    if kind == 2:
        return "bisim", lambda f: bisim(a, b, f)
    if kind == 3:
        target = random_cnf(rng, 2)
        return "probe_ge", lambda f: probe_ge(a, target, f, 0).summary
    if kind == 4:
        n = rng.randrange(5)
        x = embed(random_cnf(rng, 2))
        return "eval_top", lambda f: eval_top(s_n_of(n, x), f)
    lim = strip(embed(random_limit(rng) + W))
    return "strict_increase", lambda f: check_strict_increase_prefix(lim.seq, 8, f)


def criterion_fuel_monotonicity(n: int = 500, seed: int = 12) -> CriterionResult:
    rng = random.Random(seed)
    unstable = decisive = 0
    for _ in range(n):
        _, op = _monotonicity_case(rng)
        f = rng.randint(1, 3000)
        v = op(f)
        if v.unknown:
            continue
        decisive += 1
        for g in (f + rng.randint(1, 500), 2 * f, 5 * f):
            if op(g).outcome is not v.outcome:
                unstable += 1
    return CriterionResult(12, "fuel monotonicity", unstable == 0,
                           f"{n} cases ({decisive} decisive at the low fuel), {unstable} changed")


# -- 13 -------------------------------------------------------------------------------

CLI_CORPUS = ["0", "1", "42", "w", "w + 1", "w*2", "w*2 + 3", "w^2", "w^2 + w", "w^2*3 + w*4 + 5",
              "w^w", "w^(w + 1)", "w^(w*2) + w^w*3 + 1", "w^(w^2)", "w^(w^w)", "w^3*2 + w^2 + 7"]


def cli_corpus(seed: int = 13, size: int = 50) -> List[str]:
    rng = random.Random(seed)
    corpus = list(CLI_CORPUS)
    while len(corpus) < size:
        a = random_cnf(rng, 3, 9)
        if rng.random() < 0.3:
            a = cnf_add(w_pow(random_cnf(rng, 1, 3)), a)
        corpus.append(cnf_print(a))
    return corpus


def _run_cli(argv):
    from .cli import run
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def criterion_cli() -> CriterionResult:
    import jsonschema

    from .cli import REPORT_SCHEMA, exit_code
    problems = []
    for text in cli_corpus():
        a = cnf_parse(text)
        if cnf_parse(cnf_print(a)) != a or cnf_print(a) != text:
            problems.append(f"round-trip {text!r}")
        code, out, _ = _run_cli(["eval", text])
        if code != 0 or out.strip() != text:
            problems.append(f"eval {text!r}")
    runs = [
        (["cmp", "w*2", "w^2", "--fuel", "1000"], 0),
        (["cmp", "w^2", "w*2"], 1),
        (["probe", "w", "w^2", "--k-max", "4"], 1),
        (["probe", "psi(twin-primes(5000))", "w*4", "--fuel", "200000"], 0),
        (["probe", "psi-n(const-false, 3)", "w*2", "--fuel", "2000"], 1),
        (["probe", "lim-jump(zeros) + 0", "w + 1", "--fuel", "500"], 1),
        (["probe", "lim-min(psi(twin-primes(100)), w^2)", "w^2", "--fuel", "500"], 2),
        (["jump", "001:zeros"], 0),
        (["psi", "threshold(5)", "--mode", "exists-forall"], 0),
        (["psi", "diagonal", "--mode", "exists-forall", "--fuel", "2000"], 2),
        (["sierp", "2", "w*2"], 0),
        (["sierp", "3", "0"], 1),
    ]
    for argv, want in runs:
        code, out, _ = _run_cli(argv + ["--format", "json"])
        if code != want:
            problems.append(f"exit {code} != {want} for {argv}")
            continue
        report = json.loads(out)
        try:
            jsonschema.validate(report, REPORT_SCHEMA)
        except jsonschema.ValidationError as exc:
            problems.append(f"schema {argv}: {exc.message}")
        if exit_code(report["summary"]) != code:
            problems.append(f"exit not a function of summary for {argv}")
        text_code, _, _ = _run_cli(argv)
        if text_code != code:
            problems.append(f"text/json exit differ for {argv}")
    for argv in (["cmp", "w +", "1"], ["probe", "w", "psi(w)"], ["psi", "nope"], ["bogus"],
                 ["probe", "w", "w", "--fuel", "0"], ["jump", "012:zeros"]):
        code, _, err = _run_cli(argv)
        if code != 64 or not err:
            problems.append(f"usage error not reported for {argv}")
    detail = f"{len(cli_corpus())} expressions, {len(runs)} exit/schema runs"
    if problems:
        detail += "; " + "; ".join(problems[:4])
    return CriterionResult(13, "CLI contract", not problems, detail)


CRITERIA: List[Callable[[], CriterionResult]] = [
    criterion_oracle_soundness, criterion_arith_homomorphism, criterion_limmin_laws,
    criterion_limmax_property, criterion_semidec_roundtrip, criterion_psi_n_exact,
    criterion_psi_n_reaches_w2, criterion_exists_witness, criterion_twin_primes,
    criterion_exists_forall, criterion_sierpinski, criterion_fuel_monotonicity, criterion_cli,
]


def timed(fn: Callable[[], CriterionResult]) -> CriterionResult:
    start = time.perf_counter()
    result = fn()
    result.seconds = time.perf_counter() - start
    return result


def run_all() -> List[CriterionResult]:
    return [timed(fn) for fn in CRITERIA]
