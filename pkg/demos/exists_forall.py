"""exists m. forall n. P(n, m) at level w^2 + w.

The witness is the limit of m -> psi(column m) + m. Reaching w^2 + w means
some element passes w^2, and the engine looks for that element. For
threshold(m0) every column from m0 on is all true, so the search ends. For
the diagonal P(n, m) = n < m no column is all true, and each column's
ladder stops at w*(m+2).
"""
from brwdec.characteristic import (column_witness, exists_forall_witness, family_diagonal,
                                   family_threshold)

FUEL = 100_000

for name, fam in [("threshold(5)", family_threshold(5)), ("diagonal", family_diagonal())]:
    summary = exists_forall_witness(fam).probe(FUEL, 0).summary
    print(f"{name}: exists-forall at w^2 + w -> {summary}")
    for m in range(7):
        levels = column_witness(fam, m).probe(FUEL, 6).per_level
        proven = [str(r.level) for r in levels if r.verdict.proven]
        print(f"  column {m}: proven up to {proven[-1] if proven else '-'}")
