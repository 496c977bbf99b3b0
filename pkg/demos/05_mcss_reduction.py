"""Factoring as a multiple-choice subset-sum problem.

Each prime-power factor of the modulus contributes one class of weights and
exactly one weight is chosen per class.  The selection that the true offset
induces satisfies the target; the solver also finds spurious selections
when the sub-moduli are small, which the square test then discards.
"""
import warnings

from hyperfactor.mcss import (
    build_exact_instance,
    build_max_instance,
    first_factoring,
    induced_selection,
    serialize,
    solve_small,
    verify_selection,
)
from hyperfactor.sieve import FactoredModulus

F = FactoredModulus.from_primes
N = 7909787  # offset z = 267

inst = build_exact_instance(N, F([3, 5, 7, 11, 13, 17]), F([19, 23, 29]))
sel = induced_selection(inst, 267)
print("classes:", [len(c.weights) for c in inst.classes])
print("selection induced by z = 267:", sel, verify_selection(inst, sel))
sols = solve_small(inst)
hit = first_factoring(inst, sols)
print(f"{len(sols)} selections hit the target; the first that factors gives "
      f"offset {hit[1]} and divisor {hit[2]}")

print("\nshrinking V raises the number of spurious solutions:")
for V in ([19, 23, 29], [19, 23], [19]):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        small = build_exact_instance(N, F([3, 5, 7, 11, 13, 17]), F(V))
    print(f"  V = {F(V)}: {len(solve_small(small))} solutions")

inst = build_max_instance(N, F([3, 5, 7, 11, 13]), bound=267)
print("\nmaximization form, capacity", inst.capacity, "->",
      first_factoring(inst, solve_small(inst)))
print("\nserialized instance starts with:")
print("\n".join(serialize(inst).splitlines()[:8]))
