"""Binary linear codes whose parity checks are the lines of a partial geometry.

Each geometry point carries one code symbol and each line demands that its
points XOR to zero.  The parity-check matrix keeps a maximal independent
subset of incidence rows, and the generator is systematic on the non-pivot
columns, so messages appear verbatim at those coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import algebra
from .algebra import BitMatrix
from .errors import DegenerateCodeError, GuardExceededError, NotInformationSetError
from .geometry import IncidenceStructure, PgParams, incidence_matrix, validate_pg

__all__ = [
    "BlrcCode",
    "build_code",
    "encode",
    "export_code",
    "footprint",
    "is_mds",
    "rate",
    "reconstruct",
]

DEFAULT_MDS_GUARD = 10_000_000


@dataclass(frozen=True)
class BlrcCode:
    """A binary code with locality inherited from a partial geometry.

    n, k:         length and dimension
    parity_check: (n-k) x n full-rank matrix of independent line checks
    generator:    k x n matrix, identity on the info_set columns
    info_set:     coordinates that carry the message symbols verbatim
    gen_cols:     generator columns as k-bit masks (bit j = row j)
    """

    n: int
    k: int
    parity_check: BitMatrix
    generator: BitMatrix
    info_set: tuple[int, ...]
    geometry: IncidenceStructure
    pg: PgParams
    gen_cols: tuple[int, ...]

    @property
    def H(self) -> BitMatrix:
        return self.parity_check

    @property
    def G(self) -> BitMatrix:
        return self.generator


def _forced_zero_symbol(reduced: BitMatrix, pivots: tuple[int, ...]) -> int | None:
    """Column index pinned to zero by a weight-1 parity check, if any.

    In reduced form such a check is a row supported on its pivot alone;
    the redundancy part of that row is all zero.
    """
    for r, prow in enumerate(reduced.data):
        if prow == 1 << pivots[r]:
            return pivots[r]
    return None


def build_code(inc: IncidenceStructure) -> BlrcCode:
    """Validate the geometry and assemble the systematic code it defines."""
    pg = validate_pg(inc)
    n = inc.num_points
    nmat = incidence_matrix(inc)
    keep = algebra.independent_row_indices(nmat)
    m = len(keep)
    k = n - m
    if k == 0:
        raise DegenerateCodeError("degenerate code (full-rank incidence)")
    parity = BitMatrix.from_bitrows((nmat.data[i] for i in keep), n)
    reduced, pivots = algebra.rref2(parity)
    forced = _forced_zero_symbol(reduced, pivots)
    if forced is not None:
        raise DegenerateCodeError(
            f"all-zero row in the redundancy part of the parity checks: "
            f"symbol {forced} is forced to zero in every codeword"
        )
    generator = algebra.nullspace2(parity)
    pivot_set = set(pivots)
    info_set = tuple(c for c in range(n) if c not in pivot_set)
    gen_cols = generator.transpose().data
    return BlrcCode(
        n=n,
        k=k,
        parity_check=parity,
        generator=generator,
        info_set=info_set,
        geometry=inc,
        pg=pg,
        gen_cols=gen_cols,
    )


def _as_bits(values: Sequence[int], expected: int, what: str) -> int:
    vals = list(values)
    if len(vals) != expected:
        raise ValueError(f"{what} must have length {expected}, got {len(vals)}")
    bits = 0
    for j, v in enumerate(vals):
        iv = int(v)
        if iv not in (0, 1):
            raise ValueError(f"{what} entries must be bits, got {v!r}")
        bits |= iv << j
    return bits


def _bits_to_array(bits: int, length: int) -> np.ndarray:
    return np.array([(bits >> j) & 1 for j in range(length)], dtype=np.uint8)


def encode(code: BlrcCode, message: Sequence[int]) -> np.ndarray:
    """Codeword for a k-bit message; message bits reappear on info_set."""
    bits = _as_bits(message, code.k, "message")
    word = 0
    for j, row in enumerate(code.generator.data):
        if (bits >> j) & 1:
            word ^= row
    return _bits_to_array(word, code.n)


def reconstruct(code: BlrcCode, coords, values: Sequence[int]) -> np.ndarray:
    """Recover the message from symbol values at k coordinates.

    ``values[j]`` is the symbol at ``coords[j]``; passing a set sorts the
    coordinates ascending.  Raises NotInformationSetError when the chosen
    coordinates do not determine the message.
    """
    if isinstance(coords, (set, frozenset)):
        coords = sorted(coords)
    coords = [int(c) for c in coords]
    if len(coords) != code.k:
        raise ValueError(f"need exactly k={code.k} coordinates, got {len(coords)}")
    if len(set(coords)) != len(coords):
        raise ValueError("coordinates must be distinct")
    for c in coords:
        if not 0 <= c < code.n:
            raise ValueError(f"coordinate {c} out of range for length {code.n}")
    rhs = _as_bits(values, code.k, "values")
    system = BitMatrix.from_bitrows((code.gen_cols[c] for c in coords), code.k)
    solution = algebra.solve2(system, rhs)
    if solution is None:
        raise NotInformationSetError("not an information set")
    return _bits_to_array(solution, code.k)


def is_mds(code: BlrcCode, guard: int = DEFAULT_MDS_GUARD) -> bool:
    """True iff every k-subset of coordinates is an information set."""
    total = math.comb(code.n, code.k)
    if total > guard:
        raise GuardExceededError(
            f"instance too large for exhaustive MDS check: "
            f"{total} subsets exceed the guard of {guard}"
        )
    for combo in itertools.combinations(range(code.n), code.k):
        if algebra.bitrow_rank(code.gen_cols[c] for c in combo) < code.k:
            return False
    return True


def rate(code: BlrcCode) -> Fraction:
    """Exact rate k/n."""
    return Fraction(code.k, code.n)


def footprint(code: BlrcCode) -> Fraction:
    """Exact storage overhead n/k."""
    return Fraction(code.n, code.k)


def export_code(code: BlrcCode) -> dict:
    """JSON-ready description with hex-packed matrix rows.

    Each row is the hexadecimal rendering of its bit-packed form, zero
    padded to ceil(n/4) digits; column 0 is the least significant bit.
    Field order is fixed for deterministic serialization.
    """
    width = max(1, (code.n + 3) // 4)
    return {
        "schema_version": 1,
        "n": code.n,
        "k": code.k,
        "info_set": list(code.info_set),
        "H": [f"{row:0{width}x}" for row in code.parity_check.data],
        "G": [f"{row:0{width}x}" for row in code.generator.data],
    }
