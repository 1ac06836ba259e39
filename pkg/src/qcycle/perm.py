"""Permutations of {0, ..., n-1} in one-line notation (tuples of images)."""

from __future__ import annotations

from math import lcm
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_permutation(images: Sequence[int]) -> bool:
    """True iff the sequence hits every index in range(len(images)) exactly once."""
    n = len(images)
    seen = [False] * n
    for v in images:
        if not 0 <= v < n or seen[v]:
            return False
        seen[v] = True
    return True


def compose(p: Perm, q: Perm) -> Perm:
    """Composite permutation applying q first, then p."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return tuple(p[v] for v in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Sorted cycle lengths of p, fixed points included."""
    n = len(p)
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        v = start
        while not seen[v]:
            seen[v] = True
            v = p[v]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def perm_order(p: Perm) -> int:
    """Least k >= 1 with p applied k times equal to the identity."""
    return lcm(*cycle_type(p)) if p else 1


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    """Permutation of degree n from disjoint cycles, e.g. from_cycles(4, [(0, 1, 3)])."""
    out = list(range(n))
    touched = set()
    for cyc in cycles:
        for i, v in enumerate(cyc):
            if not 0 <= v < n:
                raise ValueError(f"cycle entry {v} out of range for degree {n}")
            if v in touched:
                raise ValueError(f"point {v} appears in two cycles")
            touched.add(v)
            out[v] = cyc[(i + 1) % len(cyc)]
    return tuple(out)
