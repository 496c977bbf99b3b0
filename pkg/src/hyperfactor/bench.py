"""Semiprime generation and timing/density measurements for the two sieve algorithms."""
import csv
import io
import math
import random
import time
from dataclasses import dataclass

from .fermat import factor_with_lambda, lambda_bound
from .numeric import ceil_sqrt, next_prime, primes_upto
from .sieve import FactoredModulus, build_sieve_set, sieve_cardinality
from .tradeoff import SplitModulus, build_meet_lists, factor_tradeoff, meet_candidates


def semiprime(bits, delta, rng=None):
    """Return ``(p, q)`` with ``p`` a random ``bits``-bit prime and ``q`` the next prime after ``p + delta``."""
    rng = rng or random.Random()
    if bits < 3:
        raise ValueError("need at least 3 bits")
    p = next_prime(rng.randrange(1 << (bits - 1), 1 << bits))
    q = next_prime(p + max(delta, 1) - 1)
    if q == p:
        q = next_prime(p)
    return p, q


def offset_lambda(p, q, a=1, b=1):
    """An integer search bound strictly above the offset of ``N = p*q``."""
    N = p * q
    bound = lambda_bound(N, a, b, divisors=[1, p, q, N])
    return math.floor(float(bound)) + 2


@dataclass
class BenchRow:
    algo: str
    delta: int
    n: int
    modulus: str
    candidates: int
    seconds: float


def run_bench(deltas, bits=32, seed=0, repeats=1):
    """Time the tuned sieve scan and the meet-in-the-middle search per divisor gap."""
    rng = random.Random(seed)
    rows = []
    for delta in deltas:
        for _ in range(repeats):
            p, q = semiprime(bits, delta, rng)
            N = p * q
            lam = offset_lambda(p, q)
            for algo, fn in (("fermat", lambda: factor_with_lambda(N, lam, tuned=True)),
                             ("tradeoff", lambda: factor_tradeoff(N, lam))):
                start = time.perf_counter()
                report = fn()
                elapsed = time.perf_counter() - start
                rows.append(BenchRow(algo, q - p, N, str(report.modulus_used),
                                     report.square_tests, elapsed))
    return rows


def rows_to_csv(rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["algo", "delta", "n", "modulus", "candidates", "seconds"])
    for r in rows:
        writer.writerow([r.algo, r.delta, r.n, r.modulus, r.candidates, f"{r.seconds:.4f}"])
    return out.getvalue()


@dataclass
class DensityRow:
    B: int
    modulus: int
    cardinality: int
    ratio: float
    window_count: int


def _count_below(N, modulus, limit):
    # elements of the shifted sieve set (offsets) below limit, counted exactly
    L = ceil_sqrt(4 * N)
    m = modulus.value
    if m <= limit:
        residues = sorted(build_sieve_set(N, modulus, 1, L).enumerator())
        full, rest = divmod(limit, m)
        return full * len(residues) + sum(1 for x in residues if x < rest)
    primes = modulus.primes
    half = len(primes) // 2
    split = SplitModulus(FactoredModulus.from_primes(primes[:half]),
                         FactoredModulus.from_primes(primes[half:]))
    lists = build_meet_lists(N, split, 1, L)
    return sum(1 for _ in meet_candidates(lists, limit))


def density_profile(N, bounds=(11, 13, 17, 19, 23, 29, 31), window=10**7):
    """For ``m`` = product of odd primes up to each ``B``: cardinality, normalized
    density ``|L| * 2**omega / (m * log B)`` and the exact number of offsets in
    ``[0, window)`` that survive the sieve."""
    rows = []
    for B in bounds:
        modulus = FactoredModulus.from_primes([r for r in primes_upto(B) if r > 2])
        card = sieve_cardinality(N, modulus)
        ratio = card * 2**modulus.omega / (modulus.value * math.log(B))
        rows.append(DensityRow(B, modulus.value, card, ratio, _count_below(N, modulus, window)))
    return rows


def shrink_factors(rows):
    """Per-added-prime shrink of the window count, and their geometric mean."""
    factors = []
    for prev, cur in zip(rows, rows[1:]):
        added = len([r for r in primes_upto(cur.B) if r > prev.B])
        factors.append((prev.window_count / cur.window_count) ** (1 / added))
    mean = math.exp(sum(map(math.log, factors)) / len(factors))
    return factors, mean
