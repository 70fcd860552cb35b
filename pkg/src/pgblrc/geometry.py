"""Partial geometries: incidence structures, validation, constructors, files.

A partial geometry pg(s, t, alpha) is a point/line incidence structure in
which every line carries s+1 points, every point lies on t+1 lines, two
distinct lines share at most one point, and for every non-incident pair
(P, B) exactly alpha points of the line B are collinear with the point P.
``validate_pg`` certifies all four axioms exhaustively and returns the
parameters; the constructors below produce the standard families used for
code building.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable

from .algebra import BitMatrix, small_field
from .errors import IncidenceFileError, PgValidationError

__all__ = [
    "CLASS_GQ",
    "CLASS_NET",
    "CLASS_PROPER",
    "CLASS_STEINER",
    "IncidenceFileError",
    "IncidenceStructure",
    "PgParams",
    "PgValidationError",
    "dual",
    "elliptic_quadric_gq",
    "from_text",
    "grid",
    "hyperoval_gq",
    "incidence_matrix",
    "load",
    "save",
    "symplectic_gq",
    "to_text",
    "validate_pg",
]

CLASS_STEINER = "steiner-2-design"
CLASS_NET = "net"
CLASS_GQ = "generalized-quadrangle"
CLASS_PROPER = "proper"


@dataclass(frozen=True)
class PgParams:
    """Certified parameters of a partial geometry."""

    s: int
    t: int
    alpha: int
    num_points: int
    num_lines: int
    pg_class: str
    grid_degenerate: bool = False

    def describe(self) -> str:
        tag = " (grid-degenerate)" if self.grid_degenerate else ""
        return (
            f"pg(s={self.s}, t={self.t}, alpha={self.alpha}): "
            f"{self.num_points} points, {self.num_lines} lines, "
            f"class {self.pg_class}{tag}"
        )


@dataclass(frozen=True)
class IncidenceStructure:
    """Points 0..num_points-1 with lines as strictly increasing point tuples."""

    num_points: int
    lines: tuple[tuple[int, ...], ...]
    label: str | None = None

    def __post_init__(self) -> None:
        seen = set()
        for idx, line in enumerate(self.lines):
            if not line:
                raise ValueError(f"line {idx} is empty")
            if line[0] < 0 or line[-1] >= self.num_points:
                raise ValueError(
                    f"line {idx} references a point outside 0..{self.num_points - 1}"
                )
            if any(a >= b for a, b in zip(line, line[1:])):
                raise ValueError(f"line {idx} is not strictly increasing")
            if line in seen:
                raise ValueError(f"line {idx} duplicates an earlier line")
            seen.add(line)

    @classmethod
    def build(cls, num_points: int, lines: Iterable[Iterable[int]],
              label: str | None = None) -> IncidenceStructure:
        """Normalize arbitrary point iterables into sorted-tuple lines."""
        normalized = tuple(tuple(sorted(line)) for line in lines)
        return cls(num_points, normalized, label)

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    @cached_property
    def lines_through(self) -> tuple[tuple[int, ...], ...]:
        """For each point, the sorted indices of lines containing it."""
        through: list[list[int]] = [[] for _ in range(self.num_points)]
        for idx, line in enumerate(self.lines):
            for p in line:
                through[p].append(idx)
        return tuple(tuple(v) for v in through)

    @cached_property
    def line_masks(self) -> tuple[int, ...]:
        """Each line as a bit mask over points."""
        out = []
        for line in self.lines:
            bits = 0
            for p in line:
                bits |= 1 << p
            out.append(bits)
        return tuple(out)

    def canonical_lines(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.lines))

    def structurally_equal(self, other: IncidenceStructure) -> bool:
        """Same points and same line set, ignoring line order and label."""
        return (
            self.num_points == other.num_points
            and self.canonical_lines() == other.canonical_lines()
        )


def incidence_matrix(inc: IncidenceStructure) -> BitMatrix:
    """Line-by-point incidence matrix (rows are lines)."""
    return BitMatrix.from_bitrows(inc.line_masks, inc.num_points)


# ----------------------------------------------------------------------
# validation

def _classify(s: int, t: int, alpha: int) -> tuple[str, bool]:
    if alpha == s + 1 or alpha == t + 1:
        return CLASS_STEINER, False
    if alpha == 1:
        # s = 1 or t = 1 quadrangles are the degenerate grid shapes
        return CLASS_GQ, (s == 1 or t == 1)
    if alpha == s or alpha == t:
        return CLASS_NET, False
    return CLASS_PROPER, False


def validate_pg(inc: IncidenceStructure) -> PgParams:
    """Certify the partial-geometry axioms; raise PgValidationError with a witness."""
    if inc.num_lines == 0:
        raise PgValidationError("point-degree", "structure has no lines")

    degrees = [len(v) for v in inc.lines_through]
    t_plus_1 = degrees[0]
    for p, d in enumerate(degrees):
        if d != t_plus_1:
            raise PgValidationError(
                "point-degree",
                f"non-uniform point degree: point {p} lies on {d} lines, "
                f"point 0 on {t_plus_1}",
                witness=p,
            )
    if t_plus_1 < 2:
        raise PgValidationError(
            "point-degree",
            f"every point must lie on at least 2 lines (t >= 1), found {t_plus_1}",
            witness=0,
        )

    s_plus_1 = len(inc.lines[0])
    for idx, line in enumerate(inc.lines):
        if len(line) != s_plus_1:
            raise PgValidationError(
                "line-size",
                f"non-uniform line size: line {idx} has {len(line)} points, "
                f"line 0 has {s_plus_1}",
                witness=idx,
            )
    if s_plus_1 < 2:
        raise PgValidationError(
            "line-size",
            f"every line must carry at least 2 points (s >= 1), found {s_plus_1}",
            witness=0,
        )

    masks = inc.line_masks
    for i, j in itertools.combinations(range(inc.num_lines), 2):
        if (masks[i] & masks[j]).bit_count() > 1:
            raise PgValidationError(
                "line-intersection",
                f"lines {i} and {j} share more than one point",
                witness=(i, j),
            )

    # With axiom 3 certified, the number of (point of B, line through P)
    # bridge pairs for a non-incident (P, B) equals the number of points
    # of B collinear with P, so one popcount per pair suffices.
    collinear = []
    for p in range(inc.num_points):
        acc = 0
        for ln in inc.lines_through[p]:
            acc |= masks[ln]
        collinear.append(acc)

    alpha = None
    first_pair = None
    for p in range(inc.num_points):
        pbit = 1 << p
        cmask = collinear[p]
        for b in range(inc.num_lines):
            if masks[b] & pbit:
                continue
            bridges = (cmask & masks[b]).bit_count()
            if alpha is None:
                alpha, first_pair = bridges, (p, b)
            elif bridges != alpha:
                raise PgValidationError(
                    "alpha",
                    f"non-uniform alpha: pair (point {p}, line {b}) has "
                    f"{bridges} bridges, pair {first_pair} has {alpha}",
                    witness=(p, b),
                )
    if alpha is None:
        raise PgValidationError("alpha", "no non-incident point/line pair exists")
    if alpha < 1:
        raise PgValidationError(
            "alpha",
            f"pair (point {first_pair[0]}, line {first_pair[1]}) has no bridge "
            "(alpha must be at least 1)",
            witness=first_pair,
        )

    s, t = s_plus_1 - 1, t_plus_1 - 1
    if alpha > min(s + 1, t + 1):
        raise PgValidationError(
            "alpha",
            f"alpha={alpha} exceeds min(s+1, t+1)={min(s + 1, t + 1)}",
            witness=first_pair,
        )

    expected_points = (s + 1) * (s * t + alpha)
    expected_lines = (t + 1) * (s * t + alpha)
    if expected_points % alpha or inc.num_points != expected_points // alpha:
        raise PgValidationError(
            "cardinality",
            f"point count {inc.num_points} does not match "
            f"(s+1)(st+alpha)/alpha = {expected_points}/{alpha}",
        )
    if expected_lines % alpha or inc.num_lines != expected_lines // alpha:
        raise PgValidationError(
            "cardinality",
            f"line count {inc.num_lines} does not match "
            f"(t+1)(st+alpha)/alpha = {expected_lines}/{alpha}",
        )

    pg_class, degenerate = _classify(s, t, alpha)
    return PgParams(
        s=s,
        t=t,
        alpha=alpha,
        num_points=inc.num_points,
        num_lines=inc.num_lines,
        pg_class=pg_class,
        grid_degenerate=degenerate,
    )


# ----------------------------------------------------------------------
# constructors

def grid(s: int) -> IncidenceStructure:
    """(s+1) x (s+1) point grid whose lines are the rows and columns.

    A pg(s, 1, 1): every point lies on one row and one column.
    """
    if s < 1:
        raise ValueError("grid requires s >= 1")
    w = s + 1
    lines = [tuple(range(i * w, (i + 1) * w)) for i in range(w)]
    lines += [tuple(range(j, w * w, w)) for j in range(w)]
    return IncidenceStructure(w * w, tuple(sorted(lines)), label=f"grid({s})")


def _projective_points(field, dim: int) -> list[tuple[int, ...]]:
    """Normalized representatives (first nonzero coordinate 1), in lex order."""
    pts = []
    for vec in itertools.product(range(field.q), repeat=dim):
        lead = next((c for c in vec if c), 0)
        if lead == 1:
            pts.append(vec)
    return pts


def _normalize(field, vec: tuple[int, ...]) -> tuple[int, ...]:
    lead = next((c for c in vec if c), 0)
    if lead == 0:
        raise ValueError("cannot normalize the zero vector")
    if lead == 1:
        return tuple(vec)
    scale = field.inv(lead)
    return tuple(field.mul(scale, c) for c in vec)


def _vec_add(field, u, v):
    return tuple(field.add(a, b) for a, b in zip(u, v))


def _vec_scale(field, lam, u):
    return tuple(field.mul(lam, c) for c in u)


def _line_points(field, u, v) -> list[tuple[int, ...]]:
    """All q+1 normalized points of the projective line spanned by u and v."""
    pts = [_normalize(field, u)]
    for lam in field.elements():
        pts.append(_normalize(field, _vec_add(field, v, _vec_scale(field, lam, u))))
    return pts


def symplectic_gq(q: int) -> IncidenceStructure:
    """Points of 3-dimensional projective space over GF(q), with the lines
    that are isotropic for the alternating form x1 y2 - x2 y1 + x3 y4 - x4 y3.

    A pg(q, q, 1) on (q+1)(q^2+1) points and as many lines.
    """
    field = small_field(q)
    points = _projective_points(field, 4)
    index = {p: i for i, p in enumerate(points)}

    def form(u, v):
        a = field.add(field.mul(u[0], v[1]), field.mul(u[2], v[3]))
        b = field.add(field.mul(u[1], v[0]), field.mul(u[3], v[2]))
        return field.sub(a, b)

    lines = set()
    for u, v in itertools.combinations(points, 2):
        if form(u, v) == 0:
            lines.add(frozenset(index[p] for p in _line_points(field, u, v)))
    sorted_lines = sorted(tuple(sorted(l)) for l in lines)
    return IncidenceStructure(
        len(points), tuple(sorted_lines), label=f"symplectic-gq({q})"
    )


def elliptic_quadric_gq(q: int) -> IncidenceStructure:
    """Singular points and totally singular lines of an elliptic quadric in
    5-dimensional projective space over GF(q), for q in {2, 3}.

    A pg(q, q^2, 1) on (q+1)(q^3+1) points and (q^2+1)(q^3+1) lines.
    """
    if q not in (2, 3):
        raise ValueError("elliptic quadric construction supports q in {2, 3}")
    field = small_field(q)
    # x0 x1 + x2 x3 + g(x4, x5) with g anisotropic:
    # q = 2: g = u^2 + uv + v^2; q = 3: g = u^2 + v^2 (-1 is a non-square).
    gb = 1 if q == 2 else 0

    def quad(x):
        head = field.add(field.mul(x[0], x[1]), field.mul(x[2], x[3]))
        tail = field.add(field.mul(x[4], x[4]), field.mul(x[5], x[5]))
        if gb:
            tail = field.add(tail, field.mul(x[4], x[5]))
        return field.add(head, tail)

    def polar(u, v):
        return field.sub(field.sub(quad(_vec_add(field, u, v)), quad(u)), quad(v))

    points = [p for p in _projective_points(field, 6) if quad(p) == 0]
    index = {p: i for i, p in enumerate(points)}
    lines = set()
    for u, v in itertools.combinations(points, 2):
        if polar(u, v) == 0:
            lines.add(frozenset(index[p] for p in _line_points(field, u, v)))
    sorted_lines = sorted(tuple(sorted(l)) for l in lines)
    return IncidenceStructure(
        len(points), tuple(sorted_lines), label=f"elliptic-quadric-gq({q})"
    )


def hyperoval_gq(q: int) -> IncidenceStructure:
    """Affine 3-space over GF(q) keeping only the lines whose direction lies
    on a fixed hyperoval (conic plus nucleus) in the plane at infinity.

    For even q in {4, 8, 16} this is a pg(q-1, q+1, 1) on q^3 points and
    q^2 (q+2) lines.
    """
    if q not in (4, 8, 16):
        raise ValueError("hyperoval construction supports q in {4, 8, 16}")
    field = small_field(q)
    # conic y z = x^2, parameterized, together with its nucleus (1 : 0 : 0)
    directions = [(t, 1, field.mul(t, t)) for t in field.elements()]
    directions += [(0, 0, 1), (1, 0, 0)]

    qq = q * q
    num_points = q * qq
    lines = []
    for d in directions:
        steps = [_vec_scale(field, lam, d) for lam in field.elements()]
        covered = bytearray(num_points)
        for x in range(q):
            for y in range(q):
                for z in range(q):
                    i0 = x * qq + y * q + z
                    if covered[i0]:
                        continue
                    pts = []
                    for st in steps:
                        px = field.add(x, st[0])
                        py = field.add(y, st[1])
                        pz = field.add(z, st[2])
                        pi = px * qq + py * q + pz
                        pts.append(pi)
                        covered[pi] = 1
                    lines.append(tuple(sorted(pts)))
    return IncidenceStructure(
        num_points, tuple(sorted(lines)), label=f"hyperoval-gq({q})"
    )


def dual(inc: IncidenceStructure) -> IncidenceStructure:
    """Swap point and line roles: dual point i is line i, and the dual lines
    are the pencils of lines through each original point.

    For a valid pg(s, t, alpha) the dual is a pg(t, s, alpha), and applying
    dual twice returns the original structure.
    """
    label = f"dual({inc.label})" if inc.label else None
    return IncidenceStructure(inc.num_lines, tuple(inc.lines_through), label=label)


# ----------------------------------------------------------------------
# file format
#
#   # comment lines start with '#'; '# label: NAME' round-trips the label
#   <num_points> <num_lines>
#   <point> <point> ...        (one line record per geometry line,
#                               strictly increasing 0-based indices)

def to_text(inc: IncidenceStructure) -> str:
    """Canonical text form: lines sorted lexicographically, bit-exact."""
    out = []
    if inc.label:
        out.append(f"# label: {inc.label}")
    out.append(f"{inc.num_points} {inc.num_lines}")
    out.extend(" ".join(map(str, line)) for line in inc.canonical_lines())
    return "\n".join(out) + "\n"


def from_text(text: str) -> IncidenceStructure:
    label = None
    header = None
    records: list[tuple[int, tuple[int, ...]]] = []
    seen: dict[tuple[int, ...], int] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.startswith("label:") and label is None:
                label = body[len("label:"):].strip() or None
            continue
        if header is None:
            parts = stripped.split()
            if len(parts) != 2:
                raise IncidenceFileError(
                    "expected header '<num_points> <num_lines>'", ln
                )
            try:
                counts = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise IncidenceFileError(
                    "point and line counts must be integers", ln
                ) from None
            if counts[0] < 0 or counts[1] < 0:
                raise IncidenceFileError("counts must be non-negative", ln)
            header = counts
            continue
        if len(records) >= header[1]:
            raise IncidenceFileError(
                f"more than the declared {header[1]} line records", ln
            )
        try:
            idxs = tuple(int(tok) for tok in stripped.split())
        except ValueError:
            raise IncidenceFileError("point indices must be integers", ln) from None
        for a, b in zip(idxs, idxs[1:]):
            if a >= b:
                raise IncidenceFileError(
                    "point indices must be strictly increasing", ln
                )
        for ix in idxs:
            if ix < 0 or ix >= header[0]:
                raise IncidenceFileError(
                    f"point index {ix} out of range for {header[0]} points", ln
                )
        if idxs in seen:
            raise IncidenceFileError(
                f"duplicate of the line record at line {seen[idxs]}", ln
            )
        seen[idxs] = ln
        records.append((ln, idxs))
    if header is None:
        raise IncidenceFileError("missing header '<num_points> <num_lines>'")
    if len(records) != header[1]:
        raise IncidenceFileError(
            f"expected {header[1]} line records, found {len(records)}"
        )
    try:
        return IncidenceStructure(header[0], tuple(r for _, r in records), label=label)
    except ValueError as exc:
        raise IncidenceFileError(str(exc)) from None


def save(inc: IncidenceStructure, destination) -> None:
    """Write the canonical text form to a path or text file object."""
    text = to_text(inc)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")


def load(source) -> IncidenceStructure:
    """Read an incidence structure from a path or text file object."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    return from_text(text)
