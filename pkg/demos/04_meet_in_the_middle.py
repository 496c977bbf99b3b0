"""Trading memory for square tests.

Splitting the modulus as m1 * m2 and sorting the two lifted residue lists
lets every candidate below the bound be found by binary search, so only
values that are actually small reach the expensive square test.
"""
import time

from hyperfactor.numeric import ceil_sqrt
from hyperfactor.sieve import FactoredModulus, sieve_cardinality
from hyperfactor.tradeoff import (
    build_meet_lists,
    factor_tradeoff,
    meet_candidates,
    split_modulus,
    survivor_estimate,
)

N = 17344343992304993085649094809
lam = 55870214400
split = split_modulus(lam, N)
print(f"m1 = {split.m1}  ({sieve_cardinality(N, split.m1)} residues)")
print(f"m2 = {split.m2}  ({sieve_cardinality(N, split.m2)} residues)")

lists = build_meet_lists(N, split, 1, ceil_sqrt(4 * N))
survivors = sum(1 for _ in meet_candidates(lists, lam))
estimate = survivor_estimate(N, FactoredModulus.from_int(55870214400), split.modulus)
print(f"candidates below the bound: {survivors} (halving heuristic predicts {float(estimate):.0f})")

start = time.perf_counter()
report = factor_tradeoff(N, lam, split=split)
print(f"-> {report.divisor} * {report.cofactor} after {report.square_tests} square tests, "
      f"{time.perf_counter() - start:.1f}s")
