"""A bit sequence as an (w+1)-decidable proposition, and back.

"Some bit is 1" becomes "Lim(jump(s)) >= w + 1". The jump sequence counts
0, 1, 2, ... until the first 1 and then leaps to w. The ordinal built from
an all-zero sequence is w itself, so the probe can search forever without
success, while any 1 is found after finitely many steps.
"""
from brwdec.core import Finite, decide_finite
from brwdec.semidec import jump, parse_bitseq, semidec_to_witness, witness_to_semidec


def show(o):
    if o.cnf is not None:
        return str(o.cnf)
    r = decide_finite(o)
    return str(r.n) if isinstance(r, Finite) else "<infinite>"


for text in ["zeros", "001:zeros", "ones", "first-one(12)"]:
    s = parse_bitseq(text)
    print(f"{text}: jump = {', '.join(show(x) for x in jump(s).prefix(6))}, ...")
    for fuel in (50, 5000):
        verdict = semidec_to_witness(s.opaque()).probe(fuel, 0).summary
        print(f"  probe at w + 1 with fuel {fuel}: {verdict}")
    back = witness_to_semidec(semidec_to_witness(s.opaque()))
    print(f"  recovered bits: {back.prefix(16)}")
