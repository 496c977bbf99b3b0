"""Meet-in-the-middle variant of the sieve-driven Fermat search.

The modulus is split as ``M = m1 * m2``.  Each shifted sieve set modulo a
part is lifted to the multiple of the other part with the right residue, so
that every element of the full set modulo ``M`` is ``alpha1 + alpha2 mod M``
for one ``alpha1`` in ``N1`` and one ``alpha2`` in ``N2``.  With both lists
sorted, the pairs whose sum falls below ``lam`` are found by two binary
searches per ``alpha1``; only those survivors are square-tested.
"""
import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from . import config
from .errors import BudgetExceededError, CommonFactorError, LambdaTooSmall
from .fermat import FactorReport, _check_odd, _gcd_screen, _pair, build_modulus
from .numeric import ceil_sqrt, is_square, small_primes
from .sieve import FactoredModulus, build_sieve_set, sieve_cardinality


@dataclass(frozen=True)
class SplitModulus:
    m1: FactoredModulus
    m2: FactoredModulus

    def __post_init__(self):
        if math.gcd(self.m1.value, self.m2.value) != 1:
            raise ValueError("the two halves of a split modulus must be coprime")

    @property
    def M(self):
        return self.m1.value * self.m2.value

    @property
    def modulus(self):
        return self.m1 * self.m2


def _next_primes(after, count, k, exclude=()):
    out = []
    for r in small_primes(after + 1):
        if k % r == 0 or r in exclude:
            continue
        out.append(r)
        if len(out) == count:
            return out


def _second_half_size(lam, m1):
    # ceil(log2(lam / m1)), but never below one prime
    w = 1
    while (1 << w) * m1 < lam:
        w += 1
    return w


def split_modulus(lam, N, k=1, tuned=True, base=None):
    """Split a sieve modulus into ``m1 * m2 > lam`` with balanced list sizes.

    Starting from ``base`` (default: the modulus :func:`build_modulus` picks
    for ``lam - 1``, since ``m2`` already pushes the product past ``lam``),
    the largest prime is moved out of ``m1`` and ``m2`` becomes
    the product of the ``ceil(log2(lam / m1))`` primes following those of
    ``m1``.  This repeats while ``|N2| < |N1| / 2``.  If ``m1`` runs out of
    primes first, the last split tried is returned.
    """
    if base is None:
        base = build_modulus(max(lam - 1, 1), N, k, tuned)
    m1 = base
    split = None
    while m1.omega > 1:
        m1 = m1.with_exponent(m1.primes[-1], 0)
        w = _second_half_size(lam, m1.value)
        m2 = FactoredModulus.from_primes(_next_primes(m1.primes[-1], w, k, m1.primes))
        split = SplitModulus(m1, m2)
        n1 = sieve_cardinality(N, m1, k)
        n2 = sieve_cardinality(N, m2, k)
        if 2 * n2 >= n1:
            break
    if split is None:
        # a single prime power cannot be split; pair it with the next prime
        m2 = FactoredModulus.from_primes(_next_primes(base.primes[-1], 1, k))
        split = SplitModulus(base, m2)
    return split


@dataclass(frozen=True)
class MeetLists:
    """Sorted lifts ``N1`` (multiples of ``m2``) and ``N2`` (multiples of ``m1``)."""

    N1: list
    N2: list
    m1: int
    m2: int

    @property
    def M(self):
        return self.m1 * self.m2


def _lift(N, part, other, k, L):
    sieve_set = build_sieve_set(N, part, k, L)
    p, q = part.value, other.value
    if p == 1:
        return [0]
    inv = pow(q, -1, p)
    return sorted((x * inv % p) * q for x in sieve_set.enumerator())


def build_meet_lists(N, split, k, L, budget=None):
    """Build ``N1`` and ``N2`` for the shifted sieve sets modulo ``m1`` and ``m2``."""
    g = math.gcd(N * k, split.M)
    if g != 1:
        raise CommonFactorError(g, f"N*k shares the factor {g} with the modulus")
    limit = config.budget("MEET_BUDGET", budget)
    size = sieve_cardinality(N, split.m1, k) + sieve_cardinality(N, split.m2, k)
    if size > limit:
        raise BudgetExceededError(f"meet lists would hold {size} elements (budget {limit})")
    return MeetLists(
        _lift(N, split.m1, split.m2, k, L),
        _lift(N, split.m2, split.m1, k, L),
        split.m1.value,
        split.m2.value,
    )


def meet_candidates(lists, lam):
    """Yield every ``alpha1 + alpha2 mod M`` below ``lam``, ``alpha1`` ascending.

    For each ``alpha1`` the window ``[0, lam - alpha1)`` is searched first,
    then the wrapped window ``[M - alpha1, M + lam - alpha1)``.
    """
    M = lists.M
    N2 = lists.N2
    for a1 in lists.N1:
        if a1 < lam:
            hi = bisect_left(N2, lam - a1)
            for j in range(hi):
                yield a1 + N2[j]
        lo = bisect_left(N2, M - a1)
        hi = bisect_left(N2, M + lam - a1)
        for j in range(lo, hi):
            yield a1 + N2[j] - M


def factor_tradeoff(N, lam, a=1, b=1, *, split=None, tuned=True):
    """Factor ``N`` by square-testing only the meet-in-the-middle survivors below ``lam``.

    Succeeds whenever ``lam`` exceeds the offset bound of some
    decomposition; otherwise raises LambdaTooSmall.
    """
    _check_odd(N)
    if split is None:
        split = split_modulus(lam, N, a * b, tuned)
    modulus = split.modulus
    hit = _gcd_screen(N, modulus, "tradeoff")
    if hit is not None:
        return hit
    if split.M <= lam:
        raise ValueError(f"split modulus {split.M} must exceed lambda {lam}")
    g = math.gcd(a * b, split.M * N)
    if g != 1:
        raise CommonFactorError(g, f"a*b shares the factor {g} with M*N")
    F = 4 * a * b * N
    L = ceil_sqrt(F)
    lists = build_meet_lists(N, split, a * b, L)
    tests = 0
    for alpha in meet_candidates(lists, lam):
        s = alpha + L
        tests += 1
        y = is_square(s * s - F)
        if y is not None:
            d = math.gcd(s - y, N)
            if 1 < d < N:
                d, e = _pair(N, d)
                report = FactorReport(N, d, e, alpha, y, tests, modulus, L, a, b,
                                      method="tradeoff")
                return report.check()
    raise LambdaTooSmall(f"no factor of {N} with offset below {lam}", tests, modulus)


def survivor_estimate(N, m, M, k=1):
    """Heuristic count of elements of the shifted set modulo ``M`` below ``m``.

    Each prime of ``M`` outside ``m`` is assumed to halve the survivors, giving
    ``|L(N, m, k)| / 2**omega(M/m)``.
    """
    quotient = dict(M.factors)
    for p, e in m.factors:
        if quotient.get(p, 0) < e:
            raise ValueError(f"{m} does not divide {M}")
        quotient[p] -= e
    extra = sum(1 for e in quotient.values() if e > 0)
    return Fraction(sieve_cardinality(N, m, k), 2**extra)
