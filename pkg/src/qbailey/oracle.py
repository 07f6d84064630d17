"""Signed partition counts by direct combinatorial enumeration.

No q-series algebra is used here.  The fast path is a knapsack-style dynamic
program over part sizes; ``naive_counts`` lists the objects one by one and is
only practical for small n.

Families (sign is (-1)^j):

P  m distinct parts with largest part j (j = 0 for m = 0), plus any number
   of copies of 2m+1.
Q  (mu, lam): mu an overpartition into even parts <= 2m, j = number of parts
   of mu, overlined ones included; lam has every odd part < 2m+1 with positive
   even multiplicity and 2m+1 with any multiplicity.
R  as Q, but each odd part < 2m+1 occurs at least once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

FAMILIES = ("P", "Q", "R")


@dataclass(frozen=True)
class SignedCountTable:
    family: str
    n_max: int
    counts: tuple[int, ...]
    slices: dict[int, tuple[int, ...]] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if len(self.counts) != self.n_max + 1:
            raise ValueError("counts must cover 0..n_max")

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def perturbed(self, n: int, delta: int = 1) -> "SignedCountTable":
        c = list(self.counts)
        c[n] += delta
        return SignedCountTable(self.family, self.n_max, tuple(c))


def _add_part(poly: list[int], part: int, weight: Callable[[int], int], min_mult: int = 0) -> list[int]:
    """Convolve poly with sum_{k >= min_mult} weight(k) x^(k*part)."""
    n_max = len(poly) - 1
    out = [0] * (n_max + 1)
    k = min_mult
    while k * part <= n_max:
        w = weight(k)
        if w:
            shift = k * part
            for s in range(n_max + 1 - shift):
                if poly[s]:
                    out[s + shift] += w * poly[s]
        k += 1
    return out


def _repeat(poly: list[int], part: int) -> list[int]:
    # any number of copies of one part: g[s] = poly[s] + g[s - part]
    out = list(poly)
    for s in range(part, len(out)):
        out[s] += out[s - part]
    return out


def _signed_distinct_by_largest(n_max: int) -> dict[int, list[int]]:
    """m -> sum over sets of m distinct parts of (-1)^(largest part) x^(sum)."""
    m_top = 0
    while (m_top + 1) * (m_top + 2) // 2 <= n_max:
        m_top += 1
    # subsets[k][s]: k-subsets of {1..j-1} with sum s
    subsets = [[0] * (n_max + 1) for _ in range(m_top + 1)]
    subsets[0][0] = 1
    out = {m: [0] * (n_max + 1) for m in range(m_top + 1)}
    out[0][0] = 1
    for j in range(1, n_max + 1):
        sign = -1 if j % 2 else 1
        for m in range(1, m_top + 1):
            src = subsets[m - 1]
            dst = out[m]
            for s in range(n_max + 1 - j):
                if src[s]:
                    dst[s + j] += sign * src[s]
        for k in range(m_top, 0, -1):
            row, prev = subsets[k], subsets[k - 1]
            for s in range(n_max, j - 1, -1):
                if prev[s - j]:
                    row[s] += prev[s - j]
    return out


def _slice_P(m: int, distinct: list[int]) -> list[int]:
    return _repeat(distinct, 2 * m + 1)


def _overpartition_even(m: int, n_max: int) -> list[int]:
    poly = [1] + [0] * n_max
    for i in range(1, m + 1):
        # multiplicity k >= 1 comes overlined or not: 2 choices, sign (-1)^k
        poly = _add_part(poly, 2 * i, lambda k: 1 if k == 0 else 2 * (-1) ** k)
    return poly


def _slice_Q(m: int, n_max: int) -> list[int]:
    poly = _overpartition_even(m, n_max)
    for i in range(1, m + 1):
        poly = _add_part(poly, 2 * i - 1, lambda k: 1 if k % 2 == 0 else 0, min_mult=2)
    return _repeat(poly, 2 * m + 1)


def _slice_R(m: int, n_max: int) -> list[int]:
    poly = _overpartition_even(m, n_max)
    for i in range(1, m + 1):
        poly = _add_part(poly, 2 * i - 1, lambda k: 1, min_mult=1)
    return _repeat(poly, 2 * m + 1)


def _min_size(family: str, m: int) -> int:
    return {"P": m * (m + 1) // 2, "Q": 2 * m * m, "R": m * m}[family]


def _build(family: str, n_max: int) -> SignedCountTable:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    total = [0] * (n_max + 1)
    slices = {}
    distinct = _signed_distinct_by_largest(n_max) if family == "P" else None
    m = 0
    while _min_size(family, m) <= n_max:
        if family == "P":
            sl = _slice_P(m, distinct[m])
        elif family == "Q":
            sl = _slice_Q(m, n_max)
        else:
            sl = _slice_R(m, n_max)
        slices[m] = tuple(sl)
        total = [a + b for a, b in zip(total, sl)]
        m += 1
    return SignedCountTable(family, n_max, tuple(total), slices)


def enumerate_P(n_max: int) -> SignedCountTable:
    return _build("P", n_max)


def enumerate_Q(n_max: int) -> SignedCountTable:
    return _build("Q", n_max)


def enumerate_R(n_max: int) -> SignedCountTable:
    return _build("R", n_max)


def enumerate_family(family: str, n_max: int) -> SignedCountTable:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    return _build(family, n_max)


# --- naive listing ------------------------------------------------------------

def _multiplicities(parts, n_left, allowed):
    """Yield tuples of multiplicities (one per part) with total size <= n_left."""
    if not parts:
        yield ()
        return
    p, rest = parts[0], parts[1:]
    k = 0
    while k * p <= n_left:
        if allowed(p, k):
            for tail in _multiplicities(rest, n_left - k * p, allowed):
                yield (k,) + tail
        k += 1


def _overpartitions(parts, n_left):
    """Yield (size, number_of_parts) for each overpartition using the given parts."""
    for mults in _multiplicities(parts, n_left, lambda p, k: True):
        used = [k for k in mults if k]
        size = sum(k * p for k, p in zip(mults, parts))
        count = sum(mults)
        # each used part size may have its first copy overlined
        for _overline_mask in range(1 << len(used)):
            yield size, count


def naive_counts(family: str, n_max: int) -> tuple[int, ...]:
    """Signed counts by listing every object; exponential, for small n_max."""
    counts = [0] * (n_max + 1)
    m = 0
    while _min_size(family, m) <= n_max:
        top = 2 * m + 1
        if family == "P":
            for combo in combinations(range(1, n_max + 1), m):
                s = sum(combo)
                if s > n_max:
                    continue
                j = combo[-1] if combo else 0
                for k in range((n_max - s) // top + 1):
                    counts[s + k * top] += (-1) ** j
        else:
            odd = list(range(1, top, 2))
            if family == "Q":
                ok = lambda p, k: k >= 2 and k % 2 == 0
            else:
                ok = lambda p, k: k >= 1
            evens = list(range(2, 2 * m + 1, 2))
            for lam in _multiplicities(odd, n_max, ok):
                ls = sum(k * p for k, p in zip(lam, odd))
                for k in range((n_max - ls) // top + 1):
                    base = ls + k * top
                    for size, parts in _overpartitions(evens, n_max - base):
                        counts[base + size] += (-1) ** parts
        m += 1
    return tuple(counts)
