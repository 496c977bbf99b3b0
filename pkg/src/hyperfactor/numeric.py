"""Integer primitives used throughout the package.

Python integers are already arbitrary precision, so there is no wrapper type;
every function here takes and returns plain ``int``.
"""
import math

from .errors import NotInvertibleError


def isqrt(n):
    """Return the largest ``s`` with ``s*s <= n``."""
    if n < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(n)


def ceil_sqrt(n):
    """Return the smallest ``s`` with ``s*s >= n``."""
    if n <= 0:
        if n < 0:
            raise ValueError("ceil_sqrt of a negative number")
        return 0
    return math.isqrt(n - 1) + 1


def _square_table(m):
    table = bytearray(m)
    for x in range(m):
        table[x * x % m] = 1
    return bytes(table)


# Residue filters for is_square. Together they pass about 1 in 160 non-squares.
_SQ64 = _square_table(64)
_SQ63 = _square_table(63)
_SQ65 = _square_table(65)
_SQ11 = _square_table(11)


def is_square(n):
    """Return ``isqrt(n)`` if ``n`` is a perfect square, else ``None``.

    Cheap residue lookups modulo 64, 63, 65 and 11 reject most non-squares
    before the exact root is taken.
    """
    if n < 0:
        return None
    if not _SQ64[n & 63]:
        return None
    if not (_SQ63[n % 63] and _SQ65[n % 65] and _SQ11[n % 11]):
        return None
    s = math.isqrt(n)
    if s * s == n:
        return s
    return None


def mod_inverse(a, m):
    """Return ``x`` in ``[0, m)`` with ``a*x = 1 (mod m)``.

    Raises NotInvertibleError carrying ``gcd(a, m)`` when no inverse exists.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    g = math.gcd(a, m)
    if g != 1:
        raise NotInvertibleError(a, m, g)
    return pow(a, -1, m)


def jacobi(a, n):
    """Jacobi symbol ``(a|n)`` for odd ``n >= 1``."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive lower argument")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a, r):
    """Legendre symbol ``(a|r)`` for an odd prime ``r``; 0 when ``r`` divides ``a``."""
    if r < 3 or r % 2 == 0:
        raise ValueError(f"Legendre symbol needs an odd prime, got {r}")
    return jacobi(a, r)


def primes_upto(bound):
    """All primes ``<= bound`` in ascending order."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytes(len(range(p * p, bound + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def small_primes(start=2):
    """Yield the primes ``>= start`` in order, without an upper limit."""
    limit = max(64, 2 * start)
    seen = start
    while True:
        for p in primes_upto(limit):
            if p >= seen:
                yield p
        seen = limit + 1
        limit *= 2


def valuation(x, r):
    """Largest ``v`` with ``r**v`` dividing ``x``; ``x`` must be non-zero."""
    if x == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while x % r == 0:
        x //= r
        v += 1
    return v


def factorize_small(n):
    """Trial-division factorization of a small positive integer as ``[(p, e), ...]``."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n):
    """Miller-Rabin with the first 13 prime bases.

    Deterministic below 3.3 * 10**24; used only to generate test semiprimes.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n):
    """Smallest probable prime strictly greater than ``n``."""
    c = max(n + 1, 2)
    if c > 2 and c % 2 == 0:
        c += 1
    while not is_probable_prime(c):
        c += 1 if c == 2 else 2
    return c
