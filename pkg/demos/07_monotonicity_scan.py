"""Search semigroup rings for a decreasing Hilbert function."""
import time

from mcmhilbert.numsgp import monotonicity_scan

t0 = time.perf_counter()
rep = monotonicity_scan(max_multiplicity=8, max_embdim=3, max_frobenius=60, min_embdim=3)
print(f"{rep.checked} semigroups of embedding dimension 3 in {time.perf_counter() - t0:.1f}s")
print("violations:", rep.violations)

# in embedding dimension 4 the search is open-ended; nothing is asserted here
rep = monotonicity_scan(max_multiplicity=7, max_embdim=4, max_frobenius=20, min_embdim=4)
print(f"{rep.checked} semigroups of embedding dimension 4, violations: {len(rep.violations)}")
for item in rep.violations[:3]:
    print(" ", item.generators, item.values)
