"""Sieve sets from the modular hyperbola xy = N (mod m).

Every factorization N = u*v puts u + v mod m into L(N, m, 1), so the sum of
the two factors is confined to a small set of residues.  This walk-through
builds the sets for N = 7909787 and checks the closed-form sizes.
"""
from hyperfactor.sieve import (
    FactoredModulus,
    card_prime,
    card_prime_power,
    card_two_power,
    hyperbola,
    sieve_cardinality,
    sieve_enumerate,
)

N = 7909787  # = 2069 * 3823

print("points of xy = N on the hyperbola mod 5:", sorted(hyperbola(N, 5)))
print("so u + v mod 5 is one of", sieve_enumerate(N, 5))

m = FactoredModulus.from_int(4620)
residues = sieve_enumerate(N, m.value)
print(f"\nmodulo {m} = {m.value} only {len(residues)} residues survive")
print("the true sum 2069 + 3823 = 5892 reduces to", 5892 % 4620, "->", 5892 % 4620 in residues)

print("\nclosed forms versus enumeration")
for r in (3, 5, 7, 11, 13):
    print(f"  r={r:2d}  formula={card_prime(N, r)}  enumerated={len(sieve_enumerate(N, r))}")
for r, e in ((3, 4), (5, 3), (7, 2)):
    print(f"  {r}^{e}  formula={card_prime_power(N, r, e)}  "
          f"enumerated={len(sieve_enumerate(N, r**e))}")
for e in range(1, 11):
    print(f"  2^{e:<2d} formula={card_two_power(N, e)}  enumerated={len(sieve_enumerate(N, 2**e))}")

big = FactoredModulus(((2, 8), (3, 3), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1)))
print(f"\n|L(N, {big})| = {sieve_cardinality(N, big)} out of {big.value} residues")
