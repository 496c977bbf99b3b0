"""Fermat/Lawrence factorization driven by the hyperbolic sieve.

For ``N = u*v`` and multipliers ``a``, ``b`` write ``a*u + b*v = L + z`` with
``L = ceil(2*sqrt(a*b*N))``.  The offset ``z`` is small when ``a*u`` and
``b*v`` are close, and ``z mod m`` lies in the shifted sieve set
``{s - L : s in L(N, m, a*b)}``.  Scanning only that set, streamed through a
CRT odometer, replaces Fermat's linear walk over every offset.
"""
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
import multiprocessing

from .errors import CommonFactorError, LambdaTooSmall, LikelyPrime
from .numeric import ceil_sqrt, is_square, small_primes
from .sieve import FactoredModulus, build_sieve_set, card_factor, squares_mod

POWER_PRIMES = (2, 3, 5, 7)


@dataclass(frozen=True)
class OffsetBound:
    """The value ``numerator / (4 * sqrt(radicand))``, kept exact.

    ``numerator = (a*u - b*v)**2`` for the minimizing decomposition ``(u, v)``.
    Comparisons against integers and fractions are exact.
    """

    numerator: int
    radicand: int
    u: int
    v: int

    def __float__(self):
        return self.numerator / (4 * math.sqrt(self.radicand))

    def _cmp(self, other):
        # sign of (self - other) for a non-negative rational other
        other = Fraction(other)
        if other < 0:
            return 1
        # numerator / (4 sqrt R)  vs  p/q   <=>   numerator * q  vs  4 p sqrt R
        lhs = (self.numerator * other.denominator) ** 2
        rhs = 16 * other.numerator**2 * self.radicand
        return (lhs > rhs) - (lhs < rhs)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0


def _divisors(N):
    small = [d for d in range(1, math.isqrt(N) + 1) if N % d == 0]
    return sorted(set(small + [N // d for d in small]))


def lambda_bound(N, a=1, b=1, divisors=None):
    """Smallest ``(a*u - b*v)**2 / (4*sqrt(a*b*N))`` over non-trivial ``N = u*v``.

    The divisors of ``N`` are found by trial division unless supplied, which
    is only allowed up to ``N = 10**12``.
    """
    if divisors is None:
        if N > 10**12:
            raise ValueError("pass the divisors of N explicitly above 10**12")
        divisors = _divisors(N)
    best = None
    for u in divisors:
        if u in (1, N) or N % u:
            continue
        v = N // u
        diff = abs(a * u - b * v)
        if best is None or diff < best[0]:
            best = (diff, u, v)
    if best is None:
        raise ValueError(f"{N} has no non-trivial decomposition")
    diff, u, v = best
    return OffsetBound(diff * diff, a * b * N, u, v)


def _untuned_modulus(lam):
    m, primes = 1, []
    for r in small_primes(3):
        primes.append(r)
        m *= r
        if m > lam:
            return FactoredModulus.from_primes(primes)


def _tuned_modulus(lam, N, k, power_primes):
    exps = {}
    cards = {}

    def card(p, e):
        return 1 if e == 0 else card_factor(N, p, e, k)

    prime_iter = (r for r in small_primes(3) if k % r)
    upcoming = next(prime_iter)
    m = 1
    while m <= lam:
        # (|L| growth, m growth, prime, new exponent)
        steps = []
        if N % upcoming == 0:
            steps.append((1, upcoming, upcoming, 1))
        else:
            steps.append((card(upcoming, 1), upcoming, upcoming, 1))
        for p in power_primes:
            e = exps.get(p, 0)
            if (p != 2 and e == 0) or N % p == 0 or k % p == 0:
                continue
            # powers of 2 alternate good and bad steps, so also look two ahead
            for s in (1, 2) if p == 2 else (1,):
                steps.append((Fraction(card(p, e + s), card(p, e)), p**s, p, e + s))
        finishing = [st for st in steps if m * st[1] > lam]
        if finishing:
            choice = min(finishing, key=lambda st: (st[0], st[1]))
        else:
            choice = min(steps, key=lambda st: (Fraction(st[0]) / st[1], st[1]))
        _, growth, p, e = choice
        exps[p] = e
        m *= growth
        if p == upcoming:
            upcoming = next(prime_iter)
    return FactoredModulus(tuple(sorted(exps.items())))


def build_modulus(lam, N=None, k=1, tuned=False, power_primes=POWER_PRIMES):
    """Smallest sieve modulus exceeding ``lam``.

    Untuned, this is ``3*5*7*...*B`` for the least ``B`` with product above
    ``lam``.  Tuned, steps are taken greedily: either append the next prime
    or raise a small prime's exponent, whichever multiplies the sieve
    density ``|L|/m`` by less.  The step that finally crosses ``lam`` is the
    one adding the fewest candidates.  Tuning needs ``N`` and ``k``.
    """
    if lam < 1:
        raise ValueError("lambda must be at least 1")
    if not tuned:
        return _untuned_modulus(lam)
    if N is None:
        raise ValueError("tuned moduli depend on N")
    if N % 2 == 0 or k % 2 == 0:
        power_primes = tuple(p for p in power_primes if p != 2)
    return _tuned_modulus(lam, N, k, power_primes)


@dataclass(frozen=True)
class FermatParams:
    N: int
    a: int
    b: int
    lam: int
    L: int
    k: int
    modulus: FactoredModulus

    @classmethod
    def create(cls, N, lam, a, b, modulus):
        m = modulus.value
        if m <= lam:
            raise ValueError(f"modulus {m} must exceed lambda {lam}")
        g = math.gcd(a * b, m * N)
        if g != 1:
            raise CommonFactorError(g, f"a*b shares the factor {g} with m*N")
        L = ceil_sqrt(4 * a * b * N)
        return cls(N, a, b, lam, L, a * b % m, modulus)


@dataclass
class FactorReport:
    """Outcome of a successful run; ``z`` and ``y`` are None for a gcd hit."""

    N: int
    divisor: int
    cofactor: int
    z: int
    y: int
    square_tests: int
    modulus_used: FactoredModulus
    L: int = None
    a: int = 1
    b: int = 1
    gcd_hit: bool = False
    method: str = "fermat"

    def check(self):
        if self.divisor * self.cofactor != self.N or not 1 < self.divisor < self.N:
            raise AssertionError(f"bad divisor pair for {self.N}")
        if not self.gcd_hit:
            lhs = (self.z + self.L) ** 2 - 4 * self.a * self.b * self.N
            if lhs != self.y**2:
                raise AssertionError("square relation does not hold")
        return self


def _pair(N, d):
    d, e = sorted((d, N // d))
    return d, e


def _gcd_screen(N, modulus, method):
    g = math.gcd(N, modulus.value)
    if g == 1:
        return None
    for p in [g] + modulus.primes:
        if N % p == 0 and 1 < p < N:
            d, e = _pair(N, p)
            return FactorReport(N, d, e, None, None, 0, modulus, gcd_hit=True, method=method).check()
    raise LikelyPrime(f"{N} is a prime dividing the modulus", 0, modulus)


def _scan(params, shard=None, stop=None):
    """Return ``(z, y, divisor, tests)``; ``z`` is None when nothing was found."""
    N, L = params.N, params.L
    F = 4 * params.a * params.b * N
    sieve_set = build_sieve_set(N, params.modulus, params.k, L)
    stream = sieve_set.enumerator()
    if shard is not None:
        stream = stream.shard(*shard)
    tests = 0
    for i in stream:
        s = i + L
        tests += 1
        y = is_square(s * s - F)
        if y is not None:
            g = math.gcd(s - y, N)
            if 1 < g < N:
                return i, y, g, tests
        if stop is not None and not tests & 0xFFF and stop.is_set():
            break
    return None, None, None, tests


def _scan_worker(params, shard, stop):
    result = _scan(params, shard, stop)
    if result[0] is not None:
        stop.set()
    return result


def _parallel_scan(params, workers):
    with multiprocessing.Manager() as manager:
        stop = manager.Event()
        with ProcessPoolExecutor(workers) as pool:
            futures = [
                pool.submit(_scan_worker, params, (i, workers), stop) for i in range(workers)
            ]
            results = [f.result() for f in futures]
    tests = sum(r[3] for r in results)
    for z, y, g, _ in results:
        if z is not None:
            return z, y, g, tests
    return None, None, None, tests


def run_params(params, workers=1):
    """Scan the shifted sieve set for ``params``; raise LambdaTooSmall on failure."""
    if workers > 1:
        z, y, g, tests = _parallel_scan(params, workers)
    else:
        z, y, g, tests = _scan(params)
    if z is None:
        raise LambdaTooSmall(
            f"no factor of {params.N} with offset below {params.lam}", tests, params.modulus
        )
    d, e = _pair(params.N, g)
    report = FactorReport(
        params.N, d, e, z, y, tests, params.modulus, params.L, params.a, params.b
    )
    return report.check()


def _check_odd(N):
    if N < 3 or N % 2 == 0:
        raise ValueError("N must be odd and at least 3")


def factor_with_lambda(N, lam, a=1, b=1, *, modulus=None, tuned=False, workers=1):
    """Find a proper factor of ``N`` assuming the Fermat offset is below ``lam``.

    Returns a FactorReport.  Raises LambdaTooSmall when every candidate of
    the shifted sieve set fails, which is guaranteed not to happen once
    ``lam`` exceeds :func:`lambda_bound`.
    """
    _check_odd(N)
    if modulus is None:
        modulus = build_modulus(lam, N, a * b, tuned)
    hit = _gcd_screen(N, modulus, "fermat")
    if hit is not None:
        return hit
    params = FermatParams.create(N, lam, a, b, modulus)
    return run_params(params, workers)


def _prime_ceiling_passed(N, m):
    # m > (N/3 - 3)**2 / (4 sqrt N), the largest offset bound any N = u*v can have
    if N <= 9:
        return True
    return 1296 * m * m * N > (N - 9) ** 4


def factor_auto(N, workers=1):
    """Factor ``N`` with ``a = b = 1`` and moduli ``3, 3*5, 3*5*7, ...`` until success.

    Raises LikelyPrime once the modulus exceeds the largest offset any
    non-trivial decomposition of ``N`` could have.
    """
    _check_odd(N)
    modulus = FactoredModulus(())
    tests = 0
    for r in small_primes(3):
        modulus = modulus * FactoredModulus(((r, 1),))
        hit = _gcd_screen(N, modulus, "auto")
        if hit is not None:
            hit.square_tests = tests
            return hit
        params = FermatParams.create(N, modulus.value - 1, 1, 1, modulus)
        try:
            report = run_params(params, workers)
        except LambdaTooSmall as exc:
            tests += exc.square_tests
        else:
            report.square_tests += tests
            report.method = "auto"
            return report
        if _prime_ceiling_passed(N, modulus.value):
            raise LikelyPrime(f"no factor found; {N} is likely prime", tests, modulus)


def classical_candidates(N, m, a=1, b=1):
    """Offsets ``i mod m`` with ``(i + L)**2 - 4abN`` a square modulo ``m``.

    This is the older residue-table sieve that the hyperbolic sieve refines.
    """
    L = ceil_sqrt(4 * a * b * N)
    sq = squares_mod(m)
    F = 4 * a * b * N
    return sorted(i for i in range(m) if ((i + L) ** 2 - F) % m in sq)
