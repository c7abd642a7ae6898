"""Partitions, conjugacy classes of S_d and the transposition class matrix.

Permutations are tuples of images of ``0..d-1``.  Composition follows the
usual right-to-left rule: ``compose(p, s)`` applies ``s`` first, then ``p``.
So the product ``tau * sigma`` in the class matrix means "apply sigma, then
tau".

Partitions are weakly decreasing tuples of positive ints.  The canonical class
order is reverse-lexicographic, i.e. ``(d)`` first and ``(1, ..., 1)`` last.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, factorial

from . import linalg

__all__ = [
    "BudgetExceeded",
    "partitions",
    "partition_count",
    "transpose",
    "content_sum",
    "frobenius_coordinates",
    "frobenius_eigenvalue",
    "z_lambda",
    "class_size",
    "compose",
    "inverse",
    "cycle_type",
    "class_representative",
    "transpositions",
    "ClassMatrix",
    "build_Md",
    "trace_power",
    "charpoly_Md",
    "enumerate_phi",
    "connected_count",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


# partitions ---------------------------------------------------------------


def _partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions(d: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of ``d`` in reverse-lexicographic order."""
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"partitions() needs d >= 1, got {d!r}")
    return tuple(_partitions(d, d))


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """Number of partitions of ``n`` (``p(0) = 1``), via Euler's pentagonal recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total, k = 0, 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def transpose(lam) -> tuple[int, ...]:
    """Conjugate partition."""
    lam = tuple(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def content_sum(lam) -> int:
    """``sum (j - i)`` over the cells ``(i, j)`` of the Young diagram."""
    return sum(j - i for i, row in enumerate(lam) for j in range(row))


def frobenius_coordinates(lam) -> tuple[list[Fraction], list[Fraction]]:
    """Modified Frobenius coordinates ``(u_i, v_i)``, ``i`` up to the diagonal rank.

    ``u_i = lam_i - i + 1/2`` and ``v_i = lam'_i - i + 1/2`` (1-based ``i``).
    """
    lam = tuple(lam)
    lt = transpose(lam)
    r = sum(1 for i, p in enumerate(lam, 1) if p >= i)
    half = Fraction(1, 2)
    u = [lam[i - 1] - i + half for i in range(1, r + 1)]
    v = [lt[i - 1] - i + half for i in range(1, r + 1)]
    return u, v


def frobenius_eigenvalue(lam) -> Fraction:
    """Eigenvalue of transposition-class multiplication on the irrep ``lam``.

    Computed as ``(1/2) sum (u_i**2 - v_i**2)``; equals :func:`content_sum`.
    """
    u, v = frobenius_coordinates(lam)
    return sum((a * a - b * b for a, b in zip(u, v)), Fraction(0)) / 2


def z_lambda(lam) -> int:
    """Centralizer order ``prod_k m_k! k**m_k``."""
    z = 1
    for k, m in Counter(lam).items():
        z *= factorial(m) * k**m
    return z


def class_size(lam) -> int:
    """Number of permutations with cycle type ``lam``."""
    return factorial(sum(lam)) // z_lambda(lam)


# permutations -------------------------------------------------------------


def compose(p, s):
    """``p o s``: apply ``s`` first, then ``p``."""
    return tuple(p[x] for x in s)


def inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def cycle_type(p) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def class_representative(lam) -> tuple[int, ...]:
    """Permutation made of cycles on consecutive blocks, e.g. (2,1) -> (0 1)(2)."""
    images = []
    start = 0
    for part in lam:
        images.extend(start + (i + 1) % part for i in range(part))
        start += part
    return tuple(images)


def transpositions(d: int) -> list[tuple[int, ...]]:
    out = []
    for a, b in combinations(range(d), 2):
        t = list(range(d))
        t[a], t[b] = b, a
        out.append(tuple(t))
    return out


# class matrix ---------------------------------------------------------------


@dataclass(frozen=True)
class ClassMatrix:
    """``entries[i][j] = #{tau transposition : tau * sigma_i in class j}``."""

    d: int
    classes: tuple[tuple[int, ...], ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.classes)

    def index(self, lam) -> int:
        return self.classes.index(tuple(lam))

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.entries]

    def to_dict(self) -> dict:
        return {"d": self.d, "classes": [list(c) for c in self.classes], "entries": [list(r) for r in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data) -> "ClassMatrix":
        return cls(int(data["d"]), tuple(tuple(c) for c in data["classes"]),
                   tuple(tuple(int(x) for x in r) for r in data["entries"]))


@lru_cache(maxsize=None)
def build_Md(d: int) -> ClassMatrix:
    """Tally cycle types of ``tau * sigma_i`` over all transpositions ``tau``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    classes = partitions(d)
    idx = {c: i for i, c in enumerate(classes)}
    trans = transpositions(d)
    rows = []
    for lam in classes:
        sigma = class_representative(lam)
        row = [0] * len(classes)
        for tau in trans:
            row[idx[cycle_type(compose(tau, sigma))]] += 1
        rows.append(tuple(row))
    return ClassMatrix(d, classes, tuple(rows))


def trace_power(M: ClassMatrix, k: int) -> int:
    """``Tr(M**k)`` in exact integer arithmetic."""
    if k < 0:
        raise ValueError("k must be >= 0")
    P = linalg.matpow([list(r) for r in M.entries], k)
    return sum(P[i][i] for i in range(M.size))


def charpoly_Md(M: ClassMatrix) -> list[Fraction]:
    """``det(x I - M)`` coefficients, lowest degree first."""
    return linalg.charpoly(M.entries)


# brute-force oracles --------------------------------------------------------


def _check_budget(work: int, budget: int, what: str):
    if work > budget:
        raise BudgetExceeded(
            f"{what} needs about {work} steps (budget {budget}); use the class-matrix trace path instead"
        )


def _commutator(t, s):
    return compose(compose(t, s), compose(inverse(t), inverse(s)))


def _product_distribution(b: int, d: int) -> Counter:
    dist = Counter({tuple(range(d)): 1})
    trans = transpositions(d)
    for _ in range(b):
        nxt = Counter()
        for p, n in dist.items():
            for t in trans:
                nxt[compose(p, t)] += n
        dist = nxt
    return dist


def enumerate_phi(b: int, d: int, budget: int = DEFAULT_BUDGET) -> int:
    """``#{(tau_1..tau_b, tau, sigma) : tau_1...tau_b = tau sigma tau^-1 sigma^-1}``.

    Every ``tau_i`` ranges over transpositions, ``tau`` and ``sigma`` over S_d.
    Counting is exact: the left side is tallied by product, the right side by
    commutator, and matching tallies are multiplied.
    """
    if b < 0 or b % 2:
        raise ValueError("b must be even and >= 0")
    if d < 1:
        raise ValueError("d must be >= 1")
    n_fact = factorial(d)
    _check_budget(b * n_fact * comb(d, 2) + n_fact**2, budget, f"enumerate_phi(b={b}, d={d})")
    left = _product_distribution(b, d)
    group = list(permutations(range(d)))
    right = Counter(_commutator(t, s) for t in group for s in group)
    return sum(n * right.get(p, 0) for p, n in left.items())


def _orbits(d: int, gens) -> tuple[int, ...]:
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(d):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return tuple(find(x) for x in range(d))


def _join_is_transitive(d: int, p1, p2) -> bool:
    return len(set(_orbits(d, [p1, p2]))) == 1


def connected_count(b: int, d: int, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Tuples as in :func:`enumerate_phi` whose generated group is transitive, over ``d!``."""
    if b < 0 or b % 2:
        raise ValueError("b must be even and >= 0")
    if d < 1:
        raise ValueError("d must be >= 1")
    n_fact = factorial(d)
    _check_budget(comb(d, 2) ** b + n_fact**2, budget, f"connected_count(b={b}, d={d})")
    trans = transpositions(d)
    ident = tuple(range(d))
    # the orbit labelling of a generating set is a map 0..d-1 -> block minimum,
    # which is itself a valid idempotent "generator" for a later join
    left = Counter()
    for taus in product(trans, repeat=b):
        p = ident
        for t in taus:
            p = compose(p, t)
        left[p, _orbits(d, taus)] += 1
    group = list(permutations(range(d)))
    right = Counter()
    for t in group:
        for s in group:
            right[_commutator(t, s), _orbits(d, (t, s))] += 1
    by_product: dict = {}
    for (p, orb), n in right.items():
        by_product.setdefault(p, []).append((orb, n))
    total = 0
    for (p, orb1), n1 in left.items():
        for orb2, n2 in by_product.get(p, ()):
            if _join_is_transitive(d, orb1, orb2):
                total += n1 * n2
    return Fraction(total, n_fact)
