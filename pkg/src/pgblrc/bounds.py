"""Rate bounds for partial-geometry codes and the catalog of practical
(repair degree, alternativity) pairs reachable from known generalized
quadrangles.

All bound arithmetic is exact rational; floats appear only in rendered
output columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import code as code_mod
from . import geometry

__all__ = [
    "CatalogEntry",
    "ESTIMATORS",
    "GRID_FAMILY_KEY",
    "RateBounds",
    "bounds_table",
    "bounds_table_csv",
    "catalog",
    "known_gq_parameters",
    "rank_bounds",
    "rate_lower",
    "rate_lower_general",
    "rate_upper",
    "rate_upper_general",
    "surviving_keys",
    "vartheta",
]


def _check_pg_params(s: int, t: int, alpha: int) -> None:
    if s < 1 or t < 1:
        raise ValueError("require s >= 1 and t >= 1")
    if not 1 <= alpha <= min(s + 1, t + 1):
        raise ValueError(
            f"alpha must lie in [1, min(s+1, t+1)] = [1, {min(s + 1, t + 1)}]"
        )


def vartheta(s: int, t: int, alpha: int) -> Fraction:
    """Rank estimate for the incidence matrix of a pg(s, t, alpha).

    The GF(2) rank is at most vartheta + 1, and at least vartheta when
    s + t + 1 - alpha is even (see ``rank_bounds``).
    """
    _check_pg_params(s, t, alpha)
    return Fraction(s * t * (s + 1) * (t + 1), alpha * (t + s + 1 - alpha))


def rank_bounds(s: int, t: int, alpha: int) -> tuple[Fraction | None, Fraction]:
    """(lower, upper) bracket for the GF(2) incidence rank; lower is None
    when the parity condition s + t + 1 - alpha even does not hold."""
    theta = vartheta(s, t, alpha)
    lower = theta if (s + t + 1 - alpha) % 2 == 0 else None
    return lower, theta + 1


def _num_points(s: int, t: int, alpha: int) -> Fraction:
    return Fraction((s + 1) * (s * t + alpha), alpha)


def rate_lower_general(s: int, t: int, alpha: int) -> Fraction:
    """Guaranteed rate when the incidence rank is at its maximum vartheta+1."""
    return 1 - (vartheta(s, t, alpha) + 1) / _num_points(s, t, alpha)


def rate_upper_general(s: int, t: int, alpha: int) -> Fraction:
    """Rate ceiling when the incidence rank is at its minimum vartheta.

    Only binding when s + t + 1 - alpha is even; evaluable regardless.
    """
    return 1 - vartheta(s, t, alpha) / _num_points(s, t, alpha)


def _check_ra(r: int, a: int) -> None:
    if r < 2 or a < 2:
        raise ValueError("bounds require repair degree >= 2 and alternativity >= 2")


def rate_lower(r: int, a: int) -> Fraction:
    """Rate achievable by any pg code with repair degree r and alternativity a."""
    _check_ra(r, a)
    return Fraction(r * r, (a + r - 1) * (r + 1))


def rate_upper(r: int, a: int) -> Fraction | None:
    """Rate ceiling for (r, a) pg codes; None when r + a - 1 is odd
    (the underlying rank lower bound needs even parity)."""
    _check_ra(r, a)
    if (r + a - 1) % 2:
        return None
    return Fraction(
        a * (r * r - r + 1) - (r - 1) ** 2,
        (a + r - 1) * (r * (a - 1) + 1),
    )


@dataclass(frozen=True)
class RateBounds:
    """One row of the rate-bounds table."""

    r: int
    a: int
    lower: Fraction
    upper: Fraction | None
    vartheta: Fraction  # for the underlying (s, t, alpha) = (r, a-1, 1)

    @property
    def applicable(self) -> bool:
        """Whether the upper bound holds for these parameters."""
        return self.upper is not None


def bounds_table(r_values: Iterable[int], a_values: Iterable[int]) -> list[RateBounds]:
    """Cross product of (r, a) rows, r ascending then a ascending."""
    rows = []
    for r in sorted(set(r_values)):
        for a in sorted(set(a_values)):
            rows.append(
                RateBounds(
                    r=r,
                    a=a,
                    lower=rate_lower(r, a),
                    upper=rate_upper(r, a),
                    vartheta=vartheta(r, a - 1, 1),
                )
            )
    return rows


def _frac_str(f: Fraction | None) -> str:
    return "NA" if f is None else f"{f.numerator}/{f.denominator}"


def _frac_dec(f: Fraction | None) -> str:
    return "" if f is None else f"{float(f):.6f}"


def bounds_table_csv(rows: Iterable[RateBounds]) -> str:
    """CSV rendering: exact p/q columns first, decimals appended."""
    out = ["r,a,rate_lower,rate_upper,applicable,rate_lower_decimal,rate_upper_decimal"]
    for row in rows:
        out.append(
            f"{row.r},{row.a},{_frac_str(row.lower)},{_frac_str(row.upper)},"
            f"{'true' if row.applicable else 'false'},"
            f"{_frac_dec(row.lower)},{_frac_dec(row.upper)}"
        )
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------
# catalog of practical (r, a) pairs

ESTIMATORS = ("theorem-upper-bound", "theorem-lower-bound", "exact-rank")

GRID_FAMILY_KEY = "(r,2)"

_SPORADIC_GQ = (
    (2, 2), (2, 4), (3, 3), (3, 9), (3, 5), (4, 4), (4, 6), (4, 8), (4, 16),
)

_PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)

# parameter pairs whose quadrangles this package can actually build
_BUILDERS = {
    **{(q, q): (lambda q=q: geometry.symplectic_gq(q)) for q in (2, 3, 4)},
    **{(q, q * q): (lambda q=q: geometry.elliptic_quadric_gq(q)) for q in (2, 3)},
    **{(q - 1, q + 1): (lambda q=q: geometry.hyperoval_gq(q)) for q in (4, 8, 16)},
    **{(z, 1): (lambda z=z: geometry.grid(z)) for z in range(1, 32)},
}
_DUAL_BUILDERS = {
    **{(q * q, q): (lambda q=q: geometry.dual(geometry.elliptic_quadric_gq(q)))
       for q in (2, 3)},
    **{(q + 1, q - 1): (lambda q=q: geometry.dual(geometry.hyperoval_gq(q)))
       for q in (4, 8, 16)},
    **{(1, z): (lambda z=z: geometry.dual(geometry.grid(z))) for z in range(1, 32)},
}


def known_gq_parameters(max_z: int = 16) -> list[tuple[int, int]]:
    """Parameter pairs (s, t) of known generalized quadrangles, primal only.

    Sporadic pairs plus the classical families (1, z), (q-1, q+1), (q, q),
    (q, q^2), (q^2, q^3) over prime powers q <= 16; duals are handled by
    the catalog itself.
    """
    pairs = set(_SPORADIC_GQ)
    for q in _PRIME_POWERS:
        pairs.add((q - 1, q + 1))
        pairs.add((q, q))
        pairs.add((q, q * q))
        pairs.add((q * q, q ** 3))
    for z in range(1, max_z + 1):
        pairs.add((1, z))
    return sorted(pairs)


@dataclass(frozen=True)
class CatalogEntry:
    """One candidate (r, a) pair with its source quadrangle and filter verdict.

    The grid family collapses to a single entry with ``family_r_range``
    set; there n is the largest member's length and rate_estimate the
    smallest member's rate.
    """

    r: int | None
    a: int
    s: int | None
    t: int | None
    via_dual: bool
    n: int | None
    rate_estimate: Fraction | None
    estimator: str
    passes_filter: bool
    exclusion: str | None = None
    family_r_range: tuple[int, int] | None = None

    @property
    def key(self):
        if self.family_r_range is not None:
            return GRID_FAMILY_KEY
        return (self.r, self.a)


def _estimate_rate(s: int, t: int, estimator: str) -> tuple[Fraction, str]:
    """Rate estimate for the code of a pg(s, t, 1) and the estimator used."""
    r_val, a_val = s, t + 1
    if estimator == "exact-rank":
        builder = _BUILDERS.get((s, t)) or _DUAL_BUILDERS.get((s, t))
        if builder is not None:
            built = code_mod.build_code(builder())
            return Fraction(built.k, built.n), "exact-rank"
        estimator = "theorem-upper-bound"  # not constructible here, fall back
    if estimator == "theorem-upper-bound":
        upper = rate_upper(r_val, a_val)
        if upper is not None:
            return upper, "theorem-upper-bound"
        return rate_lower(r_val, a_val), "theorem-lower-bound"
    return rate_lower(r_val, a_val), "theorem-lower-bound"


def catalog(max_n: int = 100, min_rate: Fraction = Fraction(1, 3),
            estimator: str = "theorem-upper-bound") -> list[CatalogEntry]:
    """Evaluate every known quadrangle parameter pair (and its dual) as a
    candidate (r, a) = (s, t+1) code family.

    An entry passes when its length n = (s+1)(st+1) stays within max_n and
    its rate estimate is strictly above min_rate.  Pairs with s = 1 are
    dropped outright: repairing from a single node is plain replication.
    Entries that fail remain in the output with the reason, so the filter
    is auditable; the grid pairs (z, 1) collapse into one family entry.
    """
    if estimator not in ESTIMATORS:
        raise ValueError(f"unknown estimator {estimator!r}; choose from {ESTIMATORS}")
    min_rate = Fraction(min_rate)

    base = known_gq_parameters(max_z=max(2, math.isqrt(max_n) + 2))
    primal = set(base)
    oriented: dict[tuple[int, int], bool] = {}
    for s, t in base:
        oriented.setdefault((s, t), False)
        if (t, s) not in primal:
            oriented.setdefault((t, s), True)

    entries: list[CatalogEntry] = []
    grid_members: list[tuple[int, int, Fraction, str, bool, str | None]] = []

    for (s, t) in sorted(oriented):
        via_dual = oriented[(s, t)]
        if s < 2:
            continue
        n = (s + 1) * (s * t + 1)
        big = n > max_n
        # never build an instance just to reject it on length
        est = "theorem-upper-bound" if (big and estimator == "exact-rank") else estimator
        rate_est, est_used = _estimate_rate(s, t, est)
        low_rate = rate_est <= min_rate
        passes = not big and not low_rate
        if big:
            exclusion = f"n = {n} exceeds max_n = {max_n}"
        elif low_rate:
            exclusion = f"rate estimate {rate_est} is not above {min_rate}"
        else:
            exclusion = None
        if t == 1:
            grid_members.append((s, n, rate_est, est_used, passes, exclusion))
            continue
        entries.append(
            CatalogEntry(
                r=s,
                a=t + 1,
                s=s,
                t=t,
                via_dual=via_dual,
                n=n,
                rate_estimate=rate_est,
                estimator=est_used,
                passes_filter=passes,
                exclusion=exclusion,
            )
        )

    if grid_members:
        surviving = [m for m in grid_members if m[4]]
        if surviving:
            r_lo = min(m[0] for m in surviving)
            r_hi = max(m[0] for m in surviving)
            worst_rate = min(surviving, key=lambda m: m[2])
            family = CatalogEntry(
                r=None,
                a=2,
                s=None,
                t=1,
                via_dual=True,
                n=max(m[1] for m in surviving),
                rate_estimate=worst_rate[2],
                estimator=worst_rate[3],
                passes_filter=True,
                family_r_range=(r_lo, r_hi),
            )
        else:
            worst = grid_members[0]
            family = CatalogEntry(
                r=None,
                a=2,
                s=None,
                t=1,
                via_dual=True,
                n=worst[1],
                rate_estimate=worst[2],
                estimator=worst[3],
                passes_filter=False,
                exclusion=worst[5],
                family_r_range=None,
            )
        entries.append(family)

    entries.sort(
        key=lambda e: (e.family_r_range is None, e.r if e.r is not None else 0, e.a)
    )
    return entries


def surviving_keys(entries: Iterable[CatalogEntry]) -> set:
    """Keys of the entries that pass the filter; the grid family contributes
    the single key '(r,2)'."""
    return {e.key for e in entries if e.passes_filter}
