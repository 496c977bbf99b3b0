"""Streaming Chinese remaindering.

Given pairwise coprime moduli ``m_i`` and residue lists ``A_i``, the set of
``x mod M`` (``M = prod m_i``) with ``x mod m_i`` in ``A_i`` is produced one
element at a time.  Only one difference table per class is stored, so memory
is ``O(sum |A_i|)`` however large the product set is.
"""
import math
from itertools import combinations

from .errors import CommonFactorError


class CrtEnumerator:
    """Odometer over the CRT product of residue classes.

    ``classes`` is a sequence of ``(modulus, residues)`` pairs.  Classes are
    re-ordered internally by decreasing size so the fastest-turning counter
    belongs to the largest class; the emitted set does not depend on the
    input order, but the emission order does.

    Iterating yields each element of the product set exactly once, in
    odometer order (not sorted).  ``next(enum, None)`` returns ``None`` once
    all ``total`` elements have been produced.
    """

    def __init__(self, classes):
        classes = [(int(m), list(res)) for m, res in classes]
        if not classes:
            raise ValueError("need at least one residue class")
        for m, res in classes:
            if m < 1:
                raise ValueError(f"modulus must be positive, got {m}")
            if not res:
                raise ValueError(f"empty residue list for modulus {m}")
            for a in res:
                if not 0 <= a < m:
                    raise ValueError(f"residue {a} not reduced modulo {m}")
        for (m1, _), (m2, _) in combinations(classes, 2):
            g = math.gcd(m1, m2)
            if g != 1:
                raise CommonFactorError(g, f"moduli {m1} and {m2} share the factor {g}")

        classes.sort(key=lambda c: len(c[1]), reverse=True)
        self.moduli = [m for m, _ in classes]
        self.residues = [res for _, res in classes]
        self.kappas = [len(res) for res in self.residues]
        self.M = math.prod(self.moduli)
        self.total = math.prod(self.kappas)

        M = self.M
        self.bases = []
        self.deltas = []
        for m, res in classes:
            rest = M // m
            base = rest * pow(rest, -1, m) % M if m > 1 else 0
            self.bases.append(base)
            kappa = len(res)
            table = [(res[0] - res[-1]) * base % M]
            table += [(res[l + 1] - res[l]) * base % M for l in range(kappa - 1)]
            self.deltas.append(table)

        self.counters = [0] * len(classes)
        x = 0
        for res, base in zip(self.residues, self.bases):
            x += res[0] * base
        self.additions = len(classes)
        self.current = x % M
        self.emitted = 0
        # classes of size one never turn; drop them from the odometer
        self._wheels = sum(1 for k in self.kappas if k > 1)

    def __iter__(self):
        return self

    def __next__(self):
        if self.emitted >= self.total:
            raise StopIteration
        if self.emitted:
            counters = self.counters
            kappas = self.kappas
            deltas = self.deltas
            x = self.current
            i = 0
            while i < self._wheels:
                r = counters[i] + 1
                if r == kappas[i]:
                    r = 0
                counters[i] = r
                x += deltas[i][r]
                self.additions += 1
                if r:
                    break
                i += 1
            self.current = x % self.M
        self.emitted += 1
        return self.current

    def __len__(self):
        return self.total - self.emitted

    def shard(self, index, count):
        """Independent enumerator over slice ``index`` of ``count`` of the largest class.

        The shards partition the full product set, so they can be drained
        concurrently.  A shard whose slice would be empty has ``total == 0``.
        """
        if not 0 <= index < count:
            raise ValueError("shard index out of range")
        head = self.residues[0]
        size, extra = divmod(len(head), count)
        lo = index * size + min(index, extra)
        hi = lo + size + (1 if index < extra else 0)
        if lo == hi:
            return _EmptyEnumerator(self.M)
        classes = [(self.moduli[0], head[lo:hi])]
        classes += list(zip(self.moduli[1:], self.residues[1:]))
        return CrtEnumerator(classes)


class _EmptyEnumerator:
    def __init__(self, M):
        self.M = M
        self.total = 0
        self.emitted = 0
        self.additions = 0

    def __iter__(self):
        return self

    def __next__(self):
        raise StopIteration

    def __len__(self):
        return 0


def prepare(classes):
    """Build a CrtEnumerator positioned before its first element."""
    return CrtEnumerator(classes)


def crt_combine(residues, moduli):
    """Solve ``x = residues[i] (mod moduli[i])`` for pairwise coprime moduli."""
    M = math.prod(moduli)
    x = 0
    for a, m in zip(residues, moduli):
        rest = M // m
        if m > 1:
            x += a * rest * pow(rest, -1, m)
    return x % M
