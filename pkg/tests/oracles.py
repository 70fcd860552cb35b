"""Independent reference implementations used to cross-check the package.

Everything here recomputes results with a different algorithm and a
different representation (numpy uint8 arrays, itertools search) so that
a shared bug between package and test is unlikely.
"""

from __future__ import annotations

import itertools

import numpy as np


def np_rank2(a: np.ndarray) -> int:
    """GF(2) rank by plain numpy forward elimination."""
    a = (np.asarray(a, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if a[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        hits = a[:, c].astype(bool).copy()
        hits[rank] = False
        a[hits] ^= a[rank]
        rank += 1
    return rank


def np_rref2(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2), numpy version."""
    a = (np.asarray(a, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    rank = 0
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if a[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        hits = a[:, c].astype(bool).copy()
        hits[rank] = False
        a[hits] ^= a[rank]
        pivots.append(c)
        rank += 1
    return a, pivots


def np_nullspace2(a: np.ndarray) -> np.ndarray:
    """Basis of the right null space over GF(2), one row per free column."""
    reduced, pivots = np_rref2(a)
    cols = reduced.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for idx, f in enumerate(free):
        basis[idx, f] = 1
        for row, p in enumerate(pivots):
            basis[idx, p] = reduced[row, f]
    return basis


def dual_codewords_upto(parity_rows: list[int], max_weight: int) -> set[int]:
    """All nonzero row-space vectors of weight <= max_weight, found by
    walking the whole space in Gray-code order.  Rows are bit-packed ints
    (column 0 is the least significant bit)."""
    m = len(parity_rows)
    if (1 << m) > (1 << 22):
        raise ValueError(f"row space of dimension {m} is too large to walk")
    vec = 0
    found: set[int] = set()
    for g in range(1, 1 << m):
        vec ^= parity_rows[(g & -g).bit_length() - 1]
        if 0 < vec.bit_count() <= max_weight:
            found.add(vec)
    return found


def brute_minimum_hitting_set(sets: list[frozenset[int]]) -> set[int]:
    """Smallest set intersecting every member, by exhausting subsets of the
    ground set in increasing size."""
    if not sets:
        return set()
    if any(not s for s in sets):
        raise ValueError("an empty member set cannot be hit")
    ground = sorted(set().union(*sets))
    for size in range(1, len(ground) + 1):
        for combo in itertools.combinations(ground, size):
            chosen = set(combo)
            if all(chosen & s for s in sets):
                return chosen
    raise AssertionError("unreachable: the full ground set hits everything")


def brute_repair_degree(gen_cols: list[int], k: int, i: int,
                        cap: int) -> int | None:
    """Smallest w-1 such that some weight-w dual codeword covers i, found by
    testing every support directly; None if nothing shows up by weight
    cap+1.  A support S is a dual support iff its generator columns XOR
    to zero."""
    n = len(gen_cols)
    others = [j for j in range(n) if j != i]
    for w in range(2, cap + 2):
        for combo in itertools.combinations(others, w - 1):
            acc = gen_cols[i]
            for j in combo:
                acc ^= gen_cols[j]
            if acc == 0:
                return w - 1
    return None
