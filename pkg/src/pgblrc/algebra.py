"""Exact linear algebra over GF(2), plus small finite fields GF(q), q <= 16.

Binary matrices are bit-packed: each row is a Python int whose bit ``j``
(least significant first) holds the entry in column ``j``, so a row
operation is a single word-level XOR no matter how wide the matrix is.
Everything here is immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SUPPORTED_FIELD_ORDERS",
    "BitMatrix",
    "SmallField",
    "bitrow_rank",
    "field_add",
    "field_inv",
    "field_mul",
    "independent_row_indices",
    "nullspace2",
    "rank2",
    "rref2",
    "small_field",
    "solve2",
]


@dataclass(frozen=True)
class BitMatrix:
    """Dense matrix over GF(2); ``data[r]`` bit ``j`` is the (r, j) entry."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.data)}")
        mask = (1 << self.cols) - 1
        for r, row in enumerate(self.data):
            if row < 0 or row & ~mask:
                raise ValueError(
                    f"row {r} has bits outside columns 0..{self.cols - 1}"
                )

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> BitMatrix:
        """Build from nested 0/1 entries (lists, tuples, arrays)."""
        packed = []
        width = cols
        for row in rows:
            entries = [int(e) for e in row]
            if width is None:
                width = len(entries)
            elif len(entries) != width:
                raise ValueError("rows have inconsistent lengths")
            bits = 0
            for j, e in enumerate(entries):
                if e not in (0, 1):
                    raise ValueError(f"matrix entry {e!r} is not a bit")
                bits |= e << j
            packed.append(bits)
        if width is None:
            raise ValueError("cannot infer column count from an empty row iterable")
        return cls(len(packed), width, tuple(packed))

    @classmethod
    def from_bitrows(cls, bitrows: Iterable[int], cols: int) -> BitMatrix:
        data = tuple(bitrows)
        return cls(len(data), cols, data)

    @classmethod
    def from_array(cls, arr) -> BitMatrix:
        a = np.asarray(arr)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls.from_rows(a.astype(int).tolist(), cols=a.shape[1])

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, (0,) * rows)

    # ------------------------------------------------------------------
    # accessors

    def get(self, r: int, c: int) -> int:
        if not 0 <= c < self.cols:
            raise IndexError(f"column {c} out of range")
        return (self.data[r] >> c) & 1

    def row_support(self, r: int) -> tuple[int, ...]:
        row = self.data[r]
        return tuple(j for j in range(self.cols) if (row >> j) & 1)

    def row_weight(self, r: int) -> int:
        return self.data[r].bit_count()

    def to_lists(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.cols)] for row in self.data]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=np.uint8).reshape(self.rows, self.cols)

    def transpose(self) -> BitMatrix:
        out = [0] * self.cols
        for r, row in enumerate(self.data):
            while row:
                low = row & -row
                out[low.bit_length() - 1] |= 1 << r
                row ^= low
        return BitMatrix(self.cols, self.rows, tuple(out))

    def mul_vector_bits(self, v: int) -> int:
        """M v^T for a bit-packed vector; result bit r is row r of the product."""
        out = 0
        for r, row in enumerate(self.data):
            out |= ((row & v).bit_count() & 1) << r
        return out

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.cols} != {other.rows}")
        out = []
        for row in self.data:
            acc = 0
            rem = row
            while rem:
                low = rem & -rem
                acc ^= other.data[low.bit_length() - 1]
                rem ^= low
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.data)


# ----------------------------------------------------------------------
# elimination

def _reduce_row(row: int, pivots: dict[int, int]) -> int:
    """XOR away known pivots; the result is zero or has a fresh lowest bit."""
    while row:
        low = (row & -row).bit_length() - 1
        if low not in pivots:
            return row
        row ^= pivots[low]
    return 0


def bitrow_rank(rows: Iterable[int]) -> int:
    """Rank of bit-packed rows, eliminating on the lowest set bit."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        row = _reduce_row(row, pivots)
        if row:
            pivots[(row & -row).bit_length() - 1] = row
            rank += 1
    return rank


def rank2(m: BitMatrix) -> int:
    """GF(2) rank of the matrix."""
    return bitrow_rank(m.data)


def independent_row_indices(m: BitMatrix) -> tuple[int, ...]:
    """Indices of the greedy maximal independent row set, scanning top down.

    Deterministic: a row is kept exactly when it is independent of all
    kept rows above it, so the result is the first spanning subset in
    row order.
    """
    pivots: dict[int, int] = {}
    keep = []
    for idx, row in enumerate(m.data):
        red = _reduce_row(row, pivots)
        if red:
            pivots[(red & -red).bit_length() - 1] = red
            keep.append(idx)
    return tuple(keep)


def rref2(m: BitMatrix) -> tuple[BitMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns.

    Pivoting is deterministic: columns are scanned left to right and the
    first available row is chosen, so equal inputs give equal outputs.
    """
    work = list(m.data)
    pivots = []
    row = 0
    for col in range(m.cols):
        sel = None
        for r in range(row, m.rows):
            if (work[r] >> col) & 1:
                sel = r
                break
        if sel is None:
            continue
        work[row], work[sel] = work[sel], work[row]
        for r in range(m.rows):
            if r != row and ((work[r] >> col) & 1):
                work[r] ^= work[row]
        pivots.append(col)
        row += 1
        if row == m.rows:
            break
    return BitMatrix(m.rows, m.cols, tuple(work)), tuple(pivots)


def nullspace2(m: BitMatrix) -> BitMatrix:
    """Basis of the right null space {v : M v^T = 0}, one row per basis vector.

    Row j of the result has a 1 in the j-th non-pivot (free) column of
    rref2(m) and 0 in every other free column, so the basis is systematic
    on the free columns and ordered by free column index.
    """
    reduced, pivots = rref2(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = 1 << f
        for r, p in enumerate(pivots):
            if (reduced.data[r] >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return BitMatrix(len(basis), m.cols, tuple(basis))


def solve2(m: BitMatrix, rhs_bits: int) -> int | None:
    """Unique solution x of M x^T = rhs for square M, or None if singular."""
    if m.rows != m.cols:
        raise ValueError("solve2 expects a square matrix")
    n = m.cols
    if rhs_bits < 0 or (n < rhs_bits.bit_length()):
        raise ValueError("right-hand side has bits outside the row range")
    aug = BitMatrix.from_bitrows(
        (row | (((rhs_bits >> r) & 1) << n) for r, row in enumerate(m.data)),
        n + 1,
    )
    reduced, pivots = rref2(aug)
    if len(pivots) < n or (pivots and pivots[-1] == n):
        return None
    sol = 0
    for r, p in enumerate(pivots):
        sol |= ((reduced.data[r] >> n) & 1) << p
    return sol


# ----------------------------------------------------------------------
# small finite fields

SUPPORTED_FIELD_ORDERS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)

_PRIMES = (2, 3, 5, 7, 11, 13)

# Reduction rules x^m = c0 + c1 x + ... for the prime-power orders,
# from the usual primitive polynomials: GF(4) x^2+x+1, GF(8) x^3+x+1,
# GF(9) x^2+2x+2, GF(16) x^4+x+1.
_REDUCTIONS = {
    4: (2, 2, (1, 1)),
    8: (2, 3, (1, 1, 0)),
    9: (3, 2, (1, 1)),
    16: (2, 4, (1, 1, 0, 0)),
}


class SmallField:
    """Arithmetic tables for GF(q), q <= 16, with elements encoded 0..q-1.

    Prime-power elements are base-p digit vectors over the polynomial
    basis 1, x, ..., x^(m-1), so 0 encodes the zero element and 1 the
    multiplicative identity for every supported order.
    """

    def __init__(self, q: int):
        if q in _PRIMES:
            p, m, reduction = q, 1, ()
        elif q in _REDUCTIONS:
            p, m, reduction = _REDUCTIONS[q]
        else:
            raise ValueError(
                f"unsupported field order {q}; supported orders: {SUPPORTED_FIELD_ORDERS}"
            )
        self.q = q
        self.p = p
        self.m = m
        self._reduction = reduction

        digits = [self._digits(e) for e in range(q)]
        self._add = tuple(
            tuple(self._undigits([(a + b) % p for a, b in zip(digits[x], digits[y])])
                  for y in range(q))
            for x in range(q)
        )
        self._neg = tuple(self._undigits([(-a) % p for a in digits[x]]) for x in range(q))
        self._mul = tuple(
            tuple(self._poly_mul(digits[x], digits[y]) for y in range(q))
            for x in range(q)
        )
        inv = [0] * q
        for x in range(1, q):
            inv[x] = next(y for y in range(1, q) if self._mul[x][y] == 1)
        self._inv = tuple(inv)

    def _digits(self, e: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(e % self.p)
            e //= self.p
        return out

    def _undigits(self, digits: Sequence[int]) -> int:
        e = 0
        for d in reversed(digits):
            e = e * self.p + d
        return e

    def _poly_mul(self, xd: Sequence[int], yd: Sequence[int]) -> int:
        p, m = self.p, self.m
        conv = [0] * (2 * m - 1)
        for i, a in enumerate(xd):
            if not a:
                continue
            for j, b in enumerate(yd):
                conv[i + j] = (conv[i + j] + a * b) % p
        for d in range(2 * m - 2, m - 1, -1):
            coef = conv[d]
            if coef:
                conv[d] = 0
                for i, rc in enumerate(self._reduction):
                    conv[d - m + i] = (conv[d - m + i] + coef * rc) % p
        return self._undigits(conv[:m])

    def _check(self, x: int) -> None:
        if not 0 <= x < self.q:
            raise ValueError(f"element {x!r} outside 0..{self.q - 1}")

    def add(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        return self._add[x][y]

    def neg(self, x: int) -> int:
        self._check(x)
        return self._neg[x]

    def sub(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        return self._add[x][self._neg[y]]

    def mul(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        return self._mul[x][y]

    def inv(self, x: int) -> int:
        self._check(x)
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._inv[x]

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"SmallField(q={self.q})"


@lru_cache(maxsize=None)
def small_field(q: int) -> SmallField:
    """Cached field instance for a supported order q."""
    return SmallField(q)


def field_add(field: SmallField, x: int, y: int) -> int:
    return field.add(x, y)


def field_mul(field: SmallField, x: int, y: int) -> int:
    return field.mul(x, y)


def field_inv(field: SmallField, x: int) -> int:
    return field.inv(x)
