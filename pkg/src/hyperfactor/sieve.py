"""Modular hyperbolas and the hyperbolic sieve sets built from them.

For ``gcd(N*k, m) = 1`` the sieve set is

    L(N, m, k) = { k*x + y mod m : x*y = N (mod m) }.

Every factorization ``N = u*v`` puts ``k*u + v mod m`` in the set, and the set
is much smaller than ``m`` when ``m`` has many small prime factors.  Direct
enumeration serves as the reference; closed-form sizes and per-factor
residue lists handle the large moduli.
"""
import math
from dataclasses import dataclass, field

from . import config
from .crt import CrtEnumerator
from .errors import BudgetExceededError, CommonFactorError
from .numeric import factorize_small, legendre, valuation

NU_INFINITY = math.inf


@dataclass(frozen=True)
class FactoredModulus:
    """A modulus kept as its prime-power factorization."""

    factors: tuple

    def __post_init__(self):
        factors = tuple((int(p), int(e)) for p, e in self.factors)
        primes = [p for p, _ in factors]
        if any(b <= a for a, b in zip(primes, primes[1:])):
            raise ValueError("primes must be strictly increasing")
        if any(e < 1 for _, e in factors):
            raise ValueError("exponents must be positive")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_int(cls, m):
        return cls(tuple(factorize_small(m)) if m > 1 else ())

    @classmethod
    def from_primes(cls, primes):
        return cls(tuple((p, 1) for p in sorted(primes)))

    @property
    def value(self):
        return math.prod(p**e for p, e in self.factors)

    @property
    def omega(self):
        return len(self.factors)

    @property
    def phi(self):
        return math.prod(p ** (e - 1) * (p - 1) for p, e in self.factors)

    @property
    def prime_powers(self):
        return [p**e for p, e in self.factors]

    @property
    def primes(self):
        return [p for p, _ in self.factors]

    def exponent(self, p):
        return dict(self.factors).get(p, 0)

    def with_exponent(self, p, e):
        """Copy with prime ``p`` raised (or lowered) to exponent ``e``; 0 drops it."""
        d = dict(self.factors)
        if e:
            d[p] = e
        else:
            d.pop(p, None)
        return FactoredModulus(tuple(sorted(d.items())))

    def __mul__(self, other):
        d = dict(self.factors)
        for p, e in other.factors:
            d[p] = d.get(p, 0) + e
        return FactoredModulus(tuple(sorted(d.items())))

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def _check_coprime(N, k, m):
    g = math.gcd(N, m)
    if g != 1:
        raise CommonFactorError(g, f"N shares the factor {g} with the modulus {m}")
    g = math.gcd(k, m)
    if g != 1:
        raise CommonFactorError(g, f"k shares the factor {g} with the modulus {m}")


def _check_budget(m, budget_name, override):
    limit = config.budget(budget_name, override)
    if m > limit:
        raise BudgetExceededError(f"modulus {m} exceeds the enumeration budget {limit}")


def hyperbola(N, m, budget=None):
    """All pairs ``(x, y)`` mod ``m`` with ``x*y = N``; there are ``phi(m)`` of them."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return [(0, 0)]
    _check_coprime(N, 1, m)
    _check_budget(m, "ENUM_BUDGET", budget)
    n = N % m
    return [(x, n * pow(x, -1, m) % m) for x in range(1, m) if math.gcd(x, m) == 1]


def sieve_enumerate(N, m, k=1, budget=None):
    """Sorted sieve set ``L(N, m, k)`` by walking the whole hyperbola."""
    if m == 1:
        return [0]
    _check_coprime(N, k, m)
    k %= m
    return sorted({(k * x + y) % m for x, y in hyperbola(N, m, budget)})


def sieve_factor_residues(N, rho, k=1, budget=None):
    """Sorted ``L(N, rho, k)`` for one prime-power factor of a larger modulus."""
    _check_budget(rho, "FACTOR_BUDGET", budget)
    return sieve_enumerate(N, rho, k, budget=max(rho, 1))


def _kinv_symbol(N, r, k):
    _check_coprime(N, k, r)
    return legendre(N * pow(k, -1, r), r)


def card_prime(N, r, k=1):
    """``|L(N, r, k)| = (r + (N/k | r)) / 2`` for an odd prime ``r``."""
    return (r + _kinv_symbol(N, r, k)) // 2


def card_prime_power(N, r, e, k=1):
    """``|L(N, r**e, k)|`` for an odd prime ``r`` via the level-by-level recurrence.

    Going from ``r**j`` to ``r**(j+1)`` multiplies by ``r`` when ``N/k`` is a
    non-residue.  Otherwise ``(2 if j is odd else 1) * (r - 1)`` is subtracted
    from the product.
    """
    if e < 1:
        raise ValueError("exponent must be at least 1")
    symbol = _kinv_symbol(N, r, k)
    count = (r + symbol) // 2
    for j in range(1, e):
        count *= r
        if symbol == 1:
            count -= 2 ** (j % 2) * (r - 1)
    return count


def card_prime_power_literal(N, r, e, k=1):
    """The same recurrence with the subtrahend exponent ``(j + 1) mod 2``.

    This form disagrees with enumeration (already at ``L(7, 9, 1)``); it is
    kept so the disagreement stays visible in the test suite.
    """
    symbol = _kinv_symbol(N, r, k)
    count = (r + symbol) // 2
    for j in range(1, e):
        count *= r
        if symbol == 1:
            count -= 2 ** ((j + 1) % 2) * (r - 1)
    return count


def card_two_power(N, e, k=1):
    """``|L(N, 2**e, k)|`` for odd ``N`` and ``k``."""
    if N % 2 == 0 or k % 2 == 0:
        raise CommonFactorError(2, "N and k must both be odd for a power-of-two modulus")
    if e < 1:
        raise ValueError("exponent must be at least 1")
    if e <= 2:
        return 1
    if e == 3:
        return 1 if (N - 3 * k) % 4 == 0 else 2
    if e == 4:
        return 2
    doubling = (N - 3 * k) % 4 == 0 or (N - 5 * k) % 8 == 0
    count = 2 if (N - 5 * k) % 8 == 0 else 4
    for j in range(5, e):
        if doubling:
            count *= 2
        else:
            count = (count - 2 ** (j % 2)) * 2
    return count


def card_factor(N, p, e, k=1):
    """Closed-form ``|L(N, p**e, k)|`` for any prime ``p``."""
    if p == 2:
        return card_two_power(N, e, k)
    return card_prime_power(N, p, e, k)


def sieve_cardinality(N, modulus, k=1):
    """Closed-form ``|L(N, m, k)|`` as the product over the prime-power factors."""
    return math.prod(card_factor(N, p, e, k) for p, e in modulus.factors)


@dataclass(frozen=True)
class SieveSet:
    """``L(N, m, k)`` (or its translate by ``-shift``) held factor by factor.

    ``per_factor[i]`` lists the residues modulo the ``i``-th prime power; the
    full set is their CRT product and is never materialized here.
    """

    modulus: FactoredModulus
    k: int
    shift: int
    per_factor: tuple = field(repr=False)

    @property
    def cardinality(self):
        return math.prod(len(res) for res in self.per_factor)

    def classes(self):
        return list(zip(self.modulus.prime_powers, self.per_factor))

    def enumerator(self):
        if not self.per_factor:
            return CrtEnumerator([(1, [0])])
        return CrtEnumerator(self.classes())

    def __contains__(self, x):
        return all(
            (x % rho) in set(res) for rho, res in zip(self.modulus.prime_powers, self.per_factor)
        )


def build_sieve_set(N, modulus, k=1, shift=0, budget=None):
    """Per-factor residue lists of ``{s - shift mod m : s in L(N, m, k)}``."""
    _check_coprime(N, k, modulus.value)
    per_factor = []
    for rho in modulus.prime_powers:
        res = sieve_factor_residues(N, rho, k, budget)
        if shift:
            res = sorted((s - shift) % rho for s in res)
        per_factor.append(tuple(res))
    return SieveSet(modulus, k % modulus.value if modulus.value > 1 else 0, shift, tuple(per_factor))


def linear_combination_set(N, m, a, b):
    """``{a*x + b*y mod m : x*y = N}``; equals ``L(N, m, a*b)`` for units ``a``, ``b``."""
    return sorted({(a * x + b * y) % m for x, y in hyperbola(N, m)})


def squares_mod(m):
    """Set of squares modulo ``m``, zero included."""
    return {x * x % m for x in range(m)}


def qr_candidates(N, m, k=1):
    """``{x mod m : x*x - 4*k*N is a square mod m}``; contains ``L(N, m, k)``."""
    sq = squares_mod(m)
    c = 4 * k * N
    return sorted(x for x in range(m) if (x * x - c) % m in sq)


@dataclass(frozen=True)
class NuProfile:
    """Minimal ``r``-adic valuation of ``k*x - y`` over the pairs representing ``element``."""

    element: int
    nu: float
    pair_count: int


def nu_value(N, r, e, k, a):
    """ν-value of ``a`` in ``L(N, r**e, k)``; ``NU_INFINITY`` when some pair has ``k*x = y``."""
    m = r**e
    a %= m
    pairs = [(x, y) for x, y in hyperbola(N, m) if (k * x + y) % m == a]
    if not pairs:
        raise ValueError(f"{a} is not in L(N, {r}^{e}, k)")
    nu = NU_INFINITY
    for x, y in pairs:
        diff = (k * x - y) % m
        if diff:
            nu = min(nu, valuation(diff, r))
    return NuProfile(a, nu, len(pairs))


def induced_count(N, r, e, k, a):
    """How many elements of ``L(N, r**(e+1), k)`` reduce to ``a`` modulo ``r**e``."""
    m = r**e
    if a % m not in set(sieve_enumerate(N, m, k)):
        raise ValueError(f"{a} is not in L(N, {r}^{e}, k)")
    return sum(1 for s in sieve_enumerate(N, m * r, k) if s % m == a % m)


def predicted_induced_count(nu, r, e):
    """Number of lifts of an element with ν-value ``nu`` one level up, from its case table."""
    if nu < e / 2:
        return r
    if nu == e / 2:
        return (r + 1) // 2
    return 1


def shifted_qr_card(t, r, e):
    """``|{x mod r**e : x*x - t is a square}|`` through ``L(t/4, r**e, 1)``."""
    m = r**e
    if math.gcd(t, r) != 1:
        raise CommonFactorError(r, f"t must be coprime to {r}")
    return card_prime_power(t * pow(4, -1, m) % m, r, e, 1)
