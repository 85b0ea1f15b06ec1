"""Brouwer-tree ordinals with a fuel-bounded order engine and a CNF oracle."""
from .arith import SplitResult, add, exp, mul, round_down, round_up, split
from .cnf import CnfForm, ParseError, cnf_compare, cnf_parse, cnf_print
from .core import (OMEGA, ZERO, Finite, Infinite, Lim, Ordinal, OrdinalSeq, Succ, Zero,
                   classify, decide_finite, embed, from_nat, omega, seq_get, strip)
from .engine import (Outcome, ProbeReport, Verdict, bisim, check_strict_increase_prefix, leq,
                     lt, probe_ge)
from .minmax import lim_max, lim_min

__version__ = "0.1.0"

__all__ = [
    "SplitResult", "add", "exp", "mul", "round_down", "round_up", "split",
    "CnfForm", "ParseError", "cnf_compare", "cnf_parse", "cnf_print",
    "OMEGA", "ZERO", "Finite", "Infinite", "Lim", "Ordinal", "OrdinalSeq", "Succ", "Zero",
    "classify", "decide_finite", "embed", "from_nat", "omega", "seq_get", "strip",
    "Outcome", "ProbeReport", "Verdict", "bisim", "check_strict_increase_prefix", "leq",
    "lt", "probe_ge", "lim_max", "lim_min",
]
