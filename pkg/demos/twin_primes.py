"""Probe the "twin primes above every n" witness at increasing w*k levels.

The proposition "for all n there is a twin prime pair above n" holds iff
psi(normalize_down(P)) >= w^2. That target is out of reach for any finite
search, but each level w*k below it is an existential question the engine
can settle. With cap C the family only sees pairs up to C, so the ladder
climbs as far as the bounded search allows.
"""
import sys
import time

from brwdec.characteristic import family_twin_primes, forall_witness

cap = int(sys.argv[1]) if len(sys.argv) > 1 else 5000
fuel = int(sys.argv[2]) if len(sys.argv) > 2 else 200_000

start = time.perf_counter()
witness = forall_witness(family_twin_primes(cap))
report = witness.probe(fuel, k_max=8)
print(f"forall n. twin pair above n (cap {cap}) at level {witness.level}, fuel {fuel}")
for row in report.per_level:
    print(f"  {str(row.level):<5} {row.verdict}")
print(f"target {report.target}: {report.summary}")
print(f"{time.perf_counter() - start:.2f}s")
