"""Streaming a huge residue set one element at a time.

The sieve set modulo a product of prime powers is the CRT product of small
per-factor sets.  The enumerator walks that product like an odometer, one
modular addition per step, without ever storing the product.
"""
import itertools
import time

from hyperfactor.crt import prepare
from hyperfactor.numeric import ceil_sqrt
from hyperfactor.sieve import FactoredModulus, build_sieve_set

en = prepare([(3, [1, 2]), (5, [2, 3])])
print("x mod 3 in {1,2} and x mod 5 in {2,3}:", list(en))

N = 17344343992304993085649094809
m = FactoredModulus(((2, 8), (3, 3), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1)))
shifted = build_sieve_set(N, m, 1, ceil_sqrt(4 * N))
print(f"\nshifted sieve set modulo {m.value}: {shifted.cardinality} elements")
for rho, res in shifted.classes():
    print(f"  modulo {rho:4d}: {len(res)} residues")

en = shifted.enumerator()
start = time.perf_counter()
head = list(itertools.islice(en, 5))
count = 5 + sum(1 for _ in en)
elapsed = time.perf_counter() - start
print(f"first elements {head}")
print(f"drained {count} elements in {elapsed:.2f}s using {en.additions} additions")
