"""Factorization as a multiple-choice subset-sum (MCSS) instance.

Write the modulus as a product of coprime prime powers ``rho_i`` and let
``B_i`` be the CRT basis element for ``rho_i``.  Every element of the shifted
sieve set modulo ``M`` is ``sum_i a_i * B_i mod M`` with ``a_i`` drawn from
the per-factor set, so picking one ``a_i * B_i`` per class is an MCSS choice.
The offset ``s`` of a balanced semiprime is the (heuristically unique) small
element, which is what both instance shapes below encode:

* ``max``: classes of ``a * M_i mod M`` plus an offset class
  ``{0, M, ..., (k-1)M}``; maximize the total under ``(k-1)*M + bound``.
* ``exact``: ``M = U * V``; U-side classes ``(a * U_i mod U) mod V``, an offset class
  ``{-j*U mod V}``, and V-side classes ``-b * V_i mod V``; hit 0 modulo ``V``.

Class 0 is always the offset class.  Its ``rho`` is 1 in ``max`` mode and
``U`` in ``exact`` mode.
"""
import json
import math
import warnings
from dataclasses import dataclass
from itertools import product

from . import config
from .crt import crt_combine
from .errors import BudgetExceededError, CommonFactorError, InstanceFormatError
from .numeric import ceil_sqrt, is_square
from .sieve import FactoredModulus, sieve_factor_residues

FORMAT_VERSION = 1


@dataclass(frozen=True)
class MCSSClass:
    rho: int
    weights: tuple


@dataclass(frozen=True)
class MCSSInstance:
    """One weight per class must be chosen.

    ``modulus`` is ``M`` in ``max`` mode and ``V`` in ``exact`` mode.  ``bound``
    is the capacity (``max``) or the target residue (``exact``).
    """

    mode: str
    n: int
    modulus: int
    bound: int
    classes: tuple

    @property
    def capacity(self):
        return self.bound if self.mode == "max" else None

    @property
    def target(self):
        return self.bound if self.mode == "exact" else None

    @property
    def shift(self):
        return ceil_sqrt(4 * self.n)

    def sizes(self):
        return [len(c.weights) for c in self.classes]


@dataclass(frozen=True)
class Verdict:
    satisfied: bool
    total: int


def _basis(modulus, rho):
    rest = modulus // rho
    return rest * pow(rest, -1, rho) % modulus


def _shifted_residues(n, rho, shift):
    return sorted((s - shift) % rho for s in sieve_factor_residues(n, rho, 1))


def build_max_instance(N, M, k_sum=None, bound=None):
    """Maximization instance over the prime-power factors of ``M``.

    There is one class per factor of ``M`` plus the offset class
    ``{0, M, ..., (k_sum-1)*M}``, and the capacity is ``(k_sum-1)*M + bound``.
    ``k_sum`` defaults to the number of factors, which is also its minimum:
    the raw class sum can reach that many multiples of ``M``.
    """
    if bound is None:
        raise TypeError("bound is required")
    m = M.value
    g = math.gcd(N, m)
    if g != 1:
        raise CommonFactorError(g)
    shift = ceil_sqrt(4 * N)
    k = M.omega if k_sum is None else k_sum
    if k < max(M.omega, 1):
        raise ValueError(f"k_sum must be at least the number of factors ({M.omega})")
    classes = [MCSSClass(1, tuple(j * m for j in range(k)))]
    for rho in M.prime_powers:
        basis = _basis(m, rho)
        res = _shifted_residues(N, rho, shift)
        classes.append(MCSSClass(rho, tuple(a * basis % m for a in res)))
    return MCSSInstance("max", N, m, (k - 1) * m + bound, tuple(classes))


def build_exact_instance(N, U, V):
    """Exact-target instance (target 0 modulo ``V``) for the split ``M = U*V``."""
    u, v = U.value, V.value
    for part in (u, v):
        g = math.gcd(N, part)
        if g != 1:
            raise CommonFactorError(g)
    if math.gcd(u, v) != 1:
        raise ValueError("U and V must be coprime")
    root = ceil_sqrt(N)
    if u <= root or v <= root:
        warnings.warn(
            f"U and V should both exceed sqrt(N) ~ {root}; expect spurious solutions",
            stacklevel=2,
        )
    shift = ceil_sqrt(4 * N)
    k = U.omega
    classes = [MCSSClass(u, tuple(-j * u % v for j in range(k + 1)))]
    for rho in U.prime_powers:
        basis = _basis(u, rho)
        res = _shifted_residues(N, rho, shift)
        # reduce modulo U first so that sum - j*U equals the offset exactly
        classes.append(MCSSClass(rho, tuple(a * basis % u % v for a in res)))
    for rho in V.prime_powers:
        basis = _basis(v, rho)
        res = _shifted_residues(N, rho, shift)
        classes.append(MCSSClass(rho, tuple(-b * basis % v for b in res)))
    return MCSSInstance("exact", N, v, 0, tuple(classes))


def _check_selection(instance, selection):
    if len(selection) != len(instance.classes):
        raise ValueError(
            f"selection has {len(selection)} entries for {len(instance.classes)} classes"
        )
    for i, (j, cls) in enumerate(zip(selection, instance.classes)):
        if not isinstance(j, int) or not 0 <= j < len(cls.weights):
            raise ValueError(f"selection index {j!r} out of range for class {i}")


def verify_selection(instance, selection):
    """Check the capacity (``max``) or the target congruence (``exact``)."""
    _check_selection(instance, selection)
    total = sum(cls.weights[j] for j, cls in zip(selection, instance.classes))
    if instance.mode == "max":
        return Verdict(total <= instance.bound, total)
    return Verdict((total - instance.bound) % instance.modulus == 0, total)


def _residue_lists(instance):
    shift = instance.shift
    return [None] + [_shifted_residues(instance.n, c.rho, shift) for c in instance.classes[1:]]


def induced_selection(instance, s):
    """The selection that a known offset ``s`` induces."""
    lists = _residue_lists(instance)
    picks = [None]
    for cls, res in zip(instance.classes[1:], lists[1:]):
        picks.append(res.index(s % cls.rho))
    if instance.mode == "max":
        m = instance.modulus
        k = len(instance.classes[0].weights)
        raw = sum(c.weights[j] for j, c in zip(picks[1:], instance.classes[1:]))
        picks[0] = (k - 1) - (raw - s % m) // m
    else:
        u = instance.classes[0].rho
        raw = 0
        for j, c, res in zip(picks[1:], instance.classes[1:], lists[1:]):
            if u % c.rho == 0:
                raw += res[j] * _basis(u, c.rho) % u
        picks[0] = (raw - s) // u
    selection = tuple(picks)
    _check_selection(instance, selection)
    return selection


def reconstruct_offset(instance, selection):
    """Recover the offset a selection encodes, by CRT over its per-factor residues."""
    _check_selection(instance, selection)
    lists = _residue_lists(instance)
    moduli = [c.rho for c in instance.classes[1:]]
    residues = [res[j] for j, res in zip(selection[1:], lists[1:])]
    return crt_combine(residues, moduli)


def factor_from_selection(instance, selection):
    """Return ``(offset, divisor)`` if the selection's offset yields a square, else None."""
    s = reconstruct_offset(instance, selection)
    N = instance.n
    L = instance.shift
    y = is_square((s + L) ** 2 - 4 * N)
    if y is None:
        return None
    d = math.gcd(s + L - y, N)
    if 1 < d < N:
        return s, min(d, N // d)
    return None


def first_factoring(instance, selections):
    """First selection whose offset factors ``n``, as ``(selection, offset, divisor)``."""
    for sel in selections:
        hit = factor_from_selection(instance, sel)
        if hit is not None:
            return sel, hit[0], hit[1]
    return None


def _rotate(bits, w, size, mask):
    w %= size
    if not w:
        return bits
    return ((bits << w) | (bits >> (size - w))) & mask


def _solve_exact_dp(instance, limit):
    V = instance.modulus
    mask = (1 << V) - 1
    levels = [1]
    for cls in instance.classes:
        bits = 0
        for w in set(cls.weights):
            bits |= _rotate(levels[-1], w, V, mask)
        levels.append(bits)
    nbytes = (V + 7) // 8
    tables = [lvl.to_bytes(nbytes, "little") for lvl in levels]

    def reachable(level, r):
        return tables[level][r >> 3] >> (r & 7) & 1

    solutions = []
    chosen = [0] * len(instance.classes)

    def walk(level, r):
        if limit is not None and len(solutions) >= limit:
            return
        if level == 0:
            solutions.append(tuple(chosen))
            return
        for j, w in enumerate(instance.classes[level - 1].weights):
            prev = (r - w) % V
            if reachable(level - 1, prev):
                chosen[level - 1] = j
                walk(level - 1, prev)

    target = instance.bound % V
    if reachable(len(instance.classes), target):
        walk(len(instance.classes), target)
    return sorted(solutions)


def _solve_exhaustive(instance, limit):
    out = []
    for sel in product(*(range(n) for n in instance.sizes())):
        if verify_selection(instance, sel).satisfied:
            out.append(sel)
            if limit is not None and len(out) >= limit:
                break
    return out


def _solve_max(instance):
    classes = instance.classes
    cap = instance.bound
    n = len(classes)
    rest_min = [0] * (n + 1)
    rest_max = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        rest_min[i] = rest_min[i + 1] + min(classes[i].weights)
        rest_max[i] = rest_max[i + 1] + max(classes[i].weights)
    order = [sorted(range(len(c.weights)), key=lambda j, c=c: -c.weights[j]) for c in classes]
    best = [-1, []]
    chosen = [0] * n

    def walk(i, total):
        if total + rest_min[i] > cap or total + rest_max[i] < best[0]:
            return
        if i == n:
            if total > best[0]:
                best[0], best[1] = total, []
            best[1].append(tuple(chosen))
            return
        for j in order[i]:
            chosen[i] = j
            walk(i + 1, total + classes[i].weights[j])

    walk(0, 0)
    return sorted(best[1])


def solve_small(instance, limit=None):
    """All satisfying (``exact``) or all optimal (``max``) selections at desk scale.

    Exact instances use a reachable-residue dynamic program when the modulus
    fits the DP budget and exhaustive search otherwise; max instances use a
    depth-first search pruned by the remaining minimum and maximum weight.
    ``limit`` caps the number of exact-mode solutions returned.
    """
    space = math.prod(instance.sizes())
    if instance.mode == "exact" and instance.modulus <= config.budget("MCSS_DP_BUDGET"):
        return _solve_exact_dp(instance, limit)
    cap = config.budget("MCSS_PRODUCT_BUDGET")
    if space > cap:
        raise BudgetExceededError(f"search space {space} exceeds budget {cap}")
    if instance.mode == "exact":
        return _solve_exhaustive(instance, limit)
    return _solve_max(instance)


def serialize(instance):
    """JSON text with every integer as a decimal string."""
    doc = {
        "version": FORMAT_VERSION,
        "mode": instance.mode,
        "n": str(instance.n),
        "modulus": str(instance.modulus),
        ("capacity" if instance.mode == "max" else "target"): str(instance.bound),
        "classes": [
            {"rho": str(c.rho), "weights": [str(w) for w in c.weights]} for c in instance.classes
        ],
    }
    return json.dumps(doc, indent=1)


def _int_field(value, where):
    if not isinstance(value, str) or not value.isdigit() or not value.isascii():
        raise InstanceFormatError("expected a non-negative decimal string", where)
    return int(value)


def deserialize(text):
    """Parse and validate an instance document; errors carry their location."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc.msg}",
                                  f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise InstanceFormatError("document must be a JSON object", "$")
    if doc.get("version") != FORMAT_VERSION:
        raise InstanceFormatError(f"unsupported version {doc.get('version')!r}", "$.version")
    mode = doc.get("mode")
    if mode not in ("max", "exact"):
        raise InstanceFormatError(f"unknown mode {mode!r}", "$.mode")
    key = "capacity" if mode == "max" else "target"
    for name in ("n", "modulus", key, "classes"):
        if name not in doc:
            raise InstanceFormatError(f"missing field {name!r}", "$")
    n = _int_field(doc["n"], "$.n")
    modulus = _int_field(doc["modulus"], "$.modulus")
    if modulus < 1:
        raise InstanceFormatError("modulus must be positive", "$.modulus")
    bound = _int_field(doc[key], f"$.{key}")
    raw_classes = doc["classes"]
    if not isinstance(raw_classes, list) or not raw_classes:
        raise InstanceFormatError("classes must be a non-empty array", "$.classes")
    classes = []
    for i, raw in enumerate(raw_classes):
        where = f"$.classes[{i}]"
        if not isinstance(raw, dict) or "rho" not in raw or "weights" not in raw:
            raise InstanceFormatError("class needs rho and weights", where)
        rho = _int_field(raw["rho"], where + ".rho")
        if rho < 1:
            raise InstanceFormatError("rho must be positive", where + ".rho")
        if not isinstance(raw["weights"], list) or not raw["weights"]:
            raise InstanceFormatError("weights must be a non-empty array", where + ".weights")
        weights = tuple(_int_field(w, f"{where}.weights[{j}]") for j, w in enumerate(raw["weights"]))
        offset_class = i == 0
        if not offset_class or mode == "max":
            if modulus % rho == 0:
                step = modulus // rho
                for j, w in enumerate(weights):
                    if w % step:
                        raise InstanceFormatError(
                            f"weight {w} is not divisible by modulus/rho = {step}",
                            f"{where}.weights[{j}]",
                        )
        if not offset_class:
            for j, w in enumerate(weights):
                if w >= modulus:
                    raise InstanceFormatError("weight not reduced modulo the modulus",
                                              f"{where}.weights[{j}]")
        classes.append(MCSSClass(rho, weights))
    return MCSSInstance(mode, n, modulus, bound, tuple(classes))


def default_split(N, extra=0):
    """Coprime ``U``, ``V`` built from consecutive odd primes, each just above ``sqrt(N)``.

    ``extra`` appends that many further primes to ``V``.  Primes dividing
    ``N`` are skipped.
    """
    from .numeric import small_primes

    root = ceil_sqrt(N)
    primes = (r for r in small_primes(3) if N % r)
    halves = []
    for _ in range(2):
        chosen, value = [], 1
        while value <= root:
            r = next(primes)
            chosen.append(r)
            value *= r
        halves.append(chosen)
    halves[1] += [next(primes) for _ in range(extra)]
    return FactoredModulus.from_primes(halves[0]), FactoredModulus.from_primes(halves[1])
