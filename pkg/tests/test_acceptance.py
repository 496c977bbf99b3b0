"""One test per acceptance criterion; each prints a single PASS/FAIL line."""
import math
import random
import time
from contextlib import contextmanager

from conftest import ACCEPTANCE_LINES, N45, N_SMALL, P45, P_SMALL, Q45, Q_SMALL
from hyperfactor.bench import density_profile, semiprime, shrink_factors
from hyperfactor.crt import prepare
from hyperfactor.fermat import build_modulus, factor_auto, factor_with_lambda
from hyperfactor.mcss import (
    build_exact_instance,
    default_split,
    deserialize,
    factor_from_selection,
    induced_selection,
    reconstruct_offset,
    serialize,
    solve_small,
)
from hyperfactor.numeric import ceil_sqrt, is_square, legendre, primes_upto
from hyperfactor.sieve import (
    FactoredModulus,
    build_sieve_set,
    card_prime,
    card_prime_power,
    card_prime_power_literal,
    card_two_power,
    induced_count,
    nu_value,
    predicted_induced_count,
    qr_candidates,
    sieve_enumerate,
)
from hyperfactor.fermat import classical_candidates
from hyperfactor.tradeoff import factor_tradeoff, split_modulus


class Check:
    def __init__(self):
        self.ok = True
        self.notes = []

    def that(self, cond, note):
        if not cond:
            self.ok = False
            self.notes.append(note)


@contextmanager
def criterion(number, title, limit):
    check = Check()
    start = time.perf_counter()
    yield check
    elapsed = time.perf_counter() - start
    check.that(elapsed <= limit, f"took {elapsed:.1f}s > {limit}s")
    status = "PASS" if check.ok else "FAIL"
    detail = f" [{'; '.join(check.notes[:3])}]" if check.notes else ""
    line = f"criterion {number}: {status} {title} ({elapsed:.2f}s){detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert check.ok, line


def coprime_pair(rng, m, hi=10**9):
    while True:
        N, k = rng.randrange(1, hi), rng.randrange(1, hi)
        if math.gcd(N * k, m) == 1:
            return N, k


def test_criterion_01_intro_example():
    with criterion(1, "|L(7909787, 4620, 1)| = 40 and 1272 is a member", 1) as c:
        s = sieve_enumerate(N_SMALL, 4620)
        c.that(len(s) == 40, f"size {len(s)}")
        c.that((P_SMALL + Q_SMALL) % 4620 == 1272 and 1272 in s, "1272 missing")
        c.that(build_sieve_set(N_SMALL, FactoredModulus.from_int(4620)).cardinality == 40,
               "closed form differs")


def test_criterion_02_prime_cardinality_oracle():
    rng = random.Random(2)
    with criterion(2, "card_prime equals enumeration for odd r < 100", 10) as c:
        for r in primes_upto(100)[1:]:
            for _ in range(50):
                N, k = coprime_pair(rng, r)
                got, want = card_prime(N, r, k), len(sieve_enumerate(N, r, k))
                c.that(got == want, f"r={r} N={N} k={k}: {got} != {want}")


def test_criterion_03_prime_power_recurrence():
    rng = random.Random(3)
    with criterion(3, "corrected prime-power recurrence; literal form fails at L(7, 9, 1)", 30) as c:
        for r in (3, 5, 7, 11):
            e = 1
            while r**e <= 2 * 10**4:
                for _ in range(20):
                    N, k = coprime_pair(rng, r)
                    got, want = card_prime_power(N, r, e, k), len(sieve_enumerate(N, r**e, k))
                    c.that(got == want, f"r={r} e={e} N={N} k={k}")
                e += 1
        truth = len(sieve_enumerate(7, 9, 1))
        c.that(card_prime_power(7, 3, 2, 1) == truth == 2, "corrected form wrong at 7 mod 9")
        c.that(card_prime_power_literal(7, 3, 2, 1) != truth, "literal form unexpectedly agrees")


def test_criterion_04_two_powers():
    rng = random.Random(4)
    with criterion(4, "power-of-two table and recurrence; N45 sequence 2,4,4,6,8,14,24", 10) as c:
        for _ in range(50):
            N, k = rng.randrange(1, 10**9, 2), rng.randrange(1, 10**9, 2)
            for e in range(1, 13):
                got, want = card_two_power(N, e, k), len(sieve_enumerate(N, 2**e, k))
                c.that(got == want, f"e={e} N={N} k={k}")
        seq = [card_two_power(N45, e) for e in range(4, 11)]
        c.that(seq == [2, 4, 4, 6, 8, 14, 24], f"N45 sequence {seq}")


def random_crt_instance(rng):
    while True:
        moduli = []
        for _ in range(rng.randint(1, 4)):
            for _ in range(50):
                m = rng.randint(2, 100)
                if all(math.gcd(m, o) == 1 for o in moduli):
                    moduli.append(m)
                    break
        if math.prod(moduli) <= 10**6:
            return [(m, sorted(rng.sample(range(m), rng.randint(1, m)))) for m in moduli]


def brute_crt(classes):
    M = math.prod(m for m, _ in classes)
    (m0, a0), rest = classes[0], classes[1:]
    tables = [(m, set(a)) for m, a in rest]
    return {x for a in a0 for x in range(a, M, m0) if all(x % m in s for m, s in tables)}


def test_criterion_05_crt_enumerator():
    rng = random.Random(5)
    with criterion(5, "CRT enumerator covers the product set with bounded additions", 20) as c:
        for _ in range(200):
            classes = random_crt_instance(rng)
            en = prepare(classes)
            out = list(en)
            total = math.prod(len(a) for _, a in classes)
            c.that(len(out) == total and len(set(out)) == total, "length or duplicates")
            c.that(set(out) == brute_crt(classes), "set differs from scan")
            c.that(en.additions <= 2 * total + sum(len(a) for _, a in classes), "too many additions")


def test_criterion_06_square_filter():
    rng = random.Random(6)
    with criterion(6, "sieve set equals the shifted-QR set; m = 20 example", 10) as c:
        for _ in range(100):
            m = rng.randrange(3, 10**4 + 1, 2)
            N, k = coprime_pair(rng, m)
            c.that(sieve_enumerate(N, m, k) == qr_candidates(N, m, k), f"m={m} N={N} k={k}")
        c.that(classical_candidates(N_SMALL, 20) == [2, 3, 7, 8, 12, 13, 17, 18], "m = 20 example")


def test_criterion_07_powers_example():
    with criterion(7, "tuned modulus 55870214400, |L| = 1935360, the sieve scan factors N45", 600) as c:
        lam = 40406162576
        m = build_modulus(lam, N45, 1, tuned=True)
        c.that(m.value == 55870214400, f"modulus {m}")
        card = build_sieve_set(N45, m, 1, ceil_sqrt(4 * N45)).cardinality
        c.that(card == 1935360, f"cardinality {card}")
        report = factor_with_lambda(N45, lam, modulus=m)
        c.that((report.divisor, report.cofactor) == (P45, Q45), "wrong factors")
        c.that(report.square_tests <= card, f"{report.square_tests} tests")


def test_criterion_08_trade_example():
    with criterion(8, "split sizes 215040/399168 and the meet-in-the-middle scan within 4e5 tests", 300) as c:
        lam = 55870214400
        split = split_modulus(lam, N45)
        c.that(str(split.m1) == "2^8*3^3*5^2*7*11*13*17", f"m1 {split.m1}")
        c.that(str(split.m2) == "19*23*29*31*37", f"m2 {split.m2}")
        L = ceil_sqrt(4 * N45)
        n1 = build_sieve_set(N45, split.m1, 1, L).cardinality
        n2 = build_sieve_set(N45, split.m2, 1, L).cardinality
        c.that((n1, n2) == (215040, 399168), f"sizes {(n1, n2)}")
        report = factor_tradeoff(N45, lam, split=split)
        c.that((report.divisor, report.cofactor) == (P45, Q45), "wrong factors")
        c.that(report.square_tests <= 4 * 10**5, f"{report.square_tests} tests")
        print(f"    square tests: {report.square_tests}")


def test_criterion_09_fermat_sweep():
    rng = random.Random(9)
    with criterion(9, "factor_auto on 100 semiprimes below 1e12 with q - p <= 1e4", 100) as c:
        done = 0
        while done < 100:
            p, q = semiprime(rng.randint(8, 19), rng.randint(2, 9000), rng)
            N = p * q
            if q - p > 10**4 or N >= 10**12:
                continue
            done += 1
            start = time.perf_counter()
            report = factor_auto(N)
            elapsed = time.perf_counter() - start
            c.that(elapsed < 1, f"N={N} took {elapsed:.2f}s")
            c.that(report.divisor * report.cofactor == N and 1 < report.divisor < N, f"N={N}")
            if not report.gcd_hit:
                c.that((report.z + report.L) ** 2 - 4 * N == report.y**2, f"relation N={N}")


def test_criterion_10_lift_counts():
    rng = random.Random(10)
    with criterion(10, "lift counts follow the nu-value table; two elements with nu >= e/2", 60) as c:
        for r in (3, 5):
            for e in range(1, 5):
                for _ in range(20):
                    N, k = coprime_pair(rng, r, 10**6)
                    elements = sieve_enumerate(N, r**e, k)
                    nus = []
                    for a in elements:
                        nu = nu_value(N, r, e, k, a).nu
                        nus.append(nu)
                        got = induced_count(N, r, e, k, a)
                        c.that(got == predicted_induced_count(nu, r, e), f"r={r} e={e} a={a}")
                    if legendre(N * pow(k, -1, r), r) == 1:
                        high = [min(v, e) for v in nus if v >= e / 2]
                        c.that(high == [math.ceil(e / 2)] * 2, f"r={r} e={e} high={high}")


def test_criterion_11_mcss_round_trip():
    rng = random.Random(11)
    primes = [p for p in primes_upto(999) if p >= 100]
    with criterion(11, "exact MCSS instances recover the offset and a factor", 60) as c:
        done = 0
        while done < 20:
            p, q = sorted(rng.sample(primes, 2))
            N = p * q
            if p + q > 3 * math.isqrt(N):
                continue
            done += 1
            U, V = default_split(N)
            inst = build_exact_instance(N, U, V)
            s = p + q - ceil_sqrt(4 * N)
            sel = induced_selection(inst, s)
            sols = solve_small(inst)
            c.that(sel in sols, f"N={N}: induced selection not found")
            c.that(reconstruct_offset(inst, sel) == s, f"N={N}: offset")
            y = is_square((s + ceil_sqrt(4 * N)) ** 2 - 4 * N)
            c.that(y is not None, f"N={N}: square test")
            hit = factor_from_selection(inst, sel)
            c.that(hit is not None and hit[1] in (p, q), f"N={N}: factor")
            c.that(deserialize(serialize(inst)) == inst, f"N={N}: round trip")


def test_criterion_12_density_trend():
    with criterion(12, "density ratio <= 10 and window counts shrink >= 1.7x per prime", 60) as c:
        for N in (N45, N_SMALL * 1000003):
            rows = density_profile(N)
            ratios = [r.ratio for r in rows]
            c.that(max(ratios) <= 10, f"ratios {ratios}")
            c.that(ratios[-1] <= 2 * ratios[0], "ratio grows with B")
            _, mean = shrink_factors(rows)
            c.that(mean >= 1.7, f"mean shrink {mean:.3f}")
            print("    " + " ".join(f"B={r.B}:{r.window_count}" for r in rows) + f" mean={mean:.3f}")
