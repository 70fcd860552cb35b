"""Command line front end.

Subcommands: construct, validate, analyze, simulate, bounds, catalog.
Exit codes: 0 success, 2 usage (argparse), 3 validation failure,
4 search guard exceeded, 5 file I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, bounds, code as code_mod, geometry, repair
from .errors import (
    DegenerateCodeError,
    GuardExceededError,
    IncidenceFileError,
    PgValidationError,
)

EXIT_OK = 0
EXIT_VALIDATION = 3
EXIT_GUARD = 4
EXIT_IO = 5

_CONSTRUCTORS = {
    "grid": ("s", geometry.grid),
    "symplectic": ("q", geometry.symplectic_gq),
    "elliptic": ("q", geometry.elliptic_quadric_gq),
    "hyperoval": ("q", geometry.hyperoval_gq),
}


class _UsageError(Exception):
    """Bad argument combination caught after parsing."""


def _frac_str(f: Fraction | None) -> str | None:
    if f is None:
        return None
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"cannot parse {text!r} as a rational number") from exc


def _parse_int_set(text: str) -> list[int]:
    """Parse '4', '2..10', or a comma list of either into sorted ints."""
    values: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo_text, hi_text = part.split("..", 1)
                lo, hi = int(lo_text), int(hi_text)
                if hi < lo:
                    raise _UsageError(f"empty range {part!r}")
                values.update(range(lo, hi + 1))
            else:
                values.add(int(part))
        except ValueError as exc:
            raise _UsageError(f"cannot parse {part!r} as an integer or range") from exc
    return sorted(values)


def _build_geometry(kind: str, s: int | None, q: int | None,
                    want_dual: bool) -> geometry.IncidenceStructure:
    param_name, constructor = _CONSTRUCTORS[kind]
    value = s if param_name == "s" else q
    if value is None:
        raise _UsageError(f"constructor {kind!r} needs --{param_name}")
    inc = constructor(value)
    return geometry.dual(inc) if want_dual else inc


def _load_geometry(args: argparse.Namespace) -> geometry.IncidenceStructure:
    if getattr(args, "file", None):
        inc = geometry.load(args.file)
        return geometry.dual(inc) if getattr(args, "dual", False) else inc
    return _build_geometry(args.geometry, args.s, args.q, args.dual)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _add_geometry_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--file", help="read the geometry from an incidence file")
    group.add_argument("--geometry", choices=sorted(_CONSTRUCTORS),
                       help="build a geometry by constructor name")
    parser.add_argument("--s", type=int, help="grid side parameter")
    parser.add_argument("--q", type=int, help="field order for the quadrangles")
    parser.add_argument("--dual", action="store_true",
                        help="swap the roles of points and lines")


def _geometry_dict(inc: geometry.IncidenceStructure,
                   params: geometry.PgParams) -> dict:
    return {
        "label": inc.label,
        "num_points": params.num_points,
        "num_lines": params.num_lines,
        "s": params.s,
        "t": params.t,
        "alpha": params.alpha,
        "class": params.pg_class,
        "grid_degenerate": params.grid_degenerate,
    }


# ----------------------------------------------------------------------
# subcommands


def _cmd_construct(args: argparse.Namespace) -> int:
    inc = _build_geometry(args.kind, args.s, args.q, args.dual)
    _emit(geometry.to_text(inc), args.output)
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    inc = geometry.load(args.file)
    if args.dual:
        inc = geometry.dual(inc)
    params = geometry.validate_pg(inc)
    payload = {"schema_version": 1, "valid": True}
    payload.update(_geometry_dict(inc, params))
    _emit(json.dumps(payload, indent=2), args.output)
    return EXIT_OK


def _conformance_dict(params: geometry.PgParams, built,
                      profile: repair.RepairProfile) -> dict:
    theta = bounds.vartheta(params.s, params.t, params.alpha)
    rank_lo, rank_hi = bounds.rank_bounds(params.s, params.t, params.alpha)
    rank = built.n - built.k
    rate = code_mod.rate(built)
    out = {
        "vartheta": _frac_str(theta),
        "rank": rank,
        "rank_lower": _frac_str(rank_lo),
        "rank_upper": _frac_str(rank_hi),
        "rank_within_bounds": (rank_lo is None or rank_lo <= rank) and rank <= rank_hi,
        "rate": _frac_str(rate),
    }
    if profile.r >= 2 and profile.a >= 2:
        lower = bounds.rate_lower(profile.r, profile.a)
        upper = bounds.rate_upper(profile.r, profile.a)
        out["rate_lower"] = _frac_str(lower)
        out["rate_upper"] = _frac_str(upper)
        out["rate_within_bounds"] = lower <= rate and (upper is None or rate <= upper)
    else:
        out["rate_lower"] = None
        out["rate_upper"] = None
        out["rate_within_bounds"] = None
    return out


def _analyze_text(payload: dict) -> str:
    geo = payload["geometry"]
    cd = payload["code"]
    met = payload["metrics"]
    conf = payload["conformance"]
    lines = [
        f"geometry  {geo['label']}",
        f"          pg({geo['s']}, {geo['t']}, {geo['alpha']}), "
        f"class {geo['class']}, {geo['num_points']} points, "
        f"{geo['num_lines']} lines",
        f"code      [n = {cd['n']}, k = {cd['k']}], rate {cd['rate']} "
        f"= {cd['rate_decimal']:.6f}",
        f"metrics   mode {met['mode']}: r = {met['r']}, a = {met['a']}, "
        f"delta = {met['delta']}, balanced = {met['balanced']}, "
        f"safe unavailability = {met['safe_unavailability']}",
        f"bounds    rank {conf['rank']} in "
        f"[{conf['rank_lower'] or '-'}, {conf['rank_upper']}]: "
        f"{conf['rank_within_bounds']}",
    ]
    if conf["rate_within_bounds"] is None:
        lines.append("          rate bounds not applicable (r or a below 2)")
    else:
        lines.append(
            f"          rate {conf['rate']} in "
            f"[{conf['rate_lower']}, {conf['rate_upper'] or 'NA'}]: "
            f"{conf['rate_within_bounds']}"
        )
    return "\n".join(lines) + "\n"


def _cmd_analyze(args: argparse.Namespace) -> int:
    inc = _load_geometry(args)
    params = geometry.validate_pg(inc)
    built = code_mod.build_code(inc)
    mode = "exhaustive" if args.exhaustive else "geometric"
    profile = repair.repair_profile(built, mode=mode, guard=args.guard)
    rate = code_mod.rate(built)
    payload = {
        "schema_version": 1,
        "geometry": _geometry_dict(inc, params),
        "code": {
            "n": built.n,
            "k": built.k,
            "rate": _frac_str(rate),
            "rate_decimal": float(rate),
            "info_set": list(built.info_set),
        },
        "metrics": profile.to_json_dict(),
        "conformance": _conformance_dict(params, built, profile),
    }
    if args.format == "text":
        _emit(_analyze_text(payload), args.output)
    else:
        _emit(json.dumps(payload, indent=2), args.output)
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.model == "iid" and args.p is None:
        raise _UsageError("the iid model needs --p")
    if args.model == "adversarial" and args.u is None:
        raise _UsageError("the adversarial model needs --u")
    inc = _load_geometry(args)
    built = code_mod.build_code(inc)
    report = repair.simulate_availability(
        built,
        model=args.model,
        p=args.p if args.p is not None else 0.0,
        u=args.u if args.u is not None else 0,
        trials=args.trials,
        seed=args.seed,
    )
    if args.format == "csv":
        _emit(report.to_csv(), args.output)
    else:
        _emit(json.dumps(report.to_json_dict(), indent=2), args.output)
    return EXIT_OK


def _cmd_bounds(args: argparse.Namespace) -> int:
    rows = bounds.bounds_table(_parse_int_set(args.r), _parse_int_set(args.a))
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "rows": [
                {
                    "r": row.r,
                    "a": row.a,
                    "rate_lower": _frac_str(row.lower),
                    "rate_upper": _frac_str(row.upper),
                    "applicable": row.applicable,
                }
                for row in rows
            ],
        }
        _emit(json.dumps(payload, indent=2), args.output)
    else:
        _emit(bounds.bounds_table_csv(rows), args.output)
    return EXIT_OK


def _catalog_entry_dict(entry: bounds.CatalogEntry) -> dict:
    key = entry.key
    return {
        "key": key if isinstance(key, str) else f"({key[0]},{key[1]})",
        "r": entry.r,
        "a": entry.a,
        "s": entry.s,
        "t": entry.t,
        "via_dual": entry.via_dual,
        "n": entry.n,
        "rate_estimate": _frac_str(entry.rate_estimate),
        "estimator": entry.estimator,
        "passes_filter": entry.passes_filter,
        "exclusion": entry.exclusion,
        "family_r_range": list(entry.family_r_range) if entry.family_r_range else None,
    }


def _catalog_text(entries: list[bounds.CatalogEntry]) -> str:
    lines = ["practical pairs:"]
    for entry in entries:
        if not entry.passes_filter:
            continue
        if entry.family_r_range:
            lo, hi = entry.family_r_range
            lines.append(
                f"  (r, 2) for r in {lo}..{hi}  grids, worst rate "
                f"{_frac_str(entry.rate_estimate)}"
            )
        else:
            lines.append(
                f"  ({entry.r}, {entry.a})  from pg({entry.s}, {entry.t}, 1)"
                f"{' via dual' if entry.via_dual else ''}, n = {entry.n}, "
                f"rate {_frac_str(entry.rate_estimate)} [{entry.estimator}]"
            )
    lines.append("excluded:")
    for entry in entries:
        if entry.passes_filter:
            continue
        name = "(r, 2) grids" if entry.t == 1 else f"({entry.r}, {entry.a})"
        lines.append(f"  {name}: {entry.exclusion}")
    return "\n".join(lines) + "\n"


def _cmd_catalog(args: argparse.Namespace) -> int:
    entries = bounds.catalog(
        max_n=args.max_n,
        min_rate=_parse_fraction(args.min_rate),
        estimator=args.estimator,
    )
    if args.format == "text":
        _emit(_catalog_text(entries), args.output)
    else:
        payload = {
            "schema_version": 1,
            "max_n": args.max_n,
            "min_rate": args.min_rate,
            "estimator": args.estimator,
            "entries": [_catalog_entry_dict(e) for e in entries],
        }
        _emit(json.dumps(payload, indent=2), args.output)
    return EXIT_OK


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgblrc",
        description="build and analyze locally repairable codes from "
                    "partial geometries",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_construct = sub.add_parser(
        "construct", help="build a geometry and write its incidence file")
    p_construct.add_argument("kind", choices=sorted(_CONSTRUCTORS))
    p_construct.add_argument("--s", type=int, help="grid side parameter")
    p_construct.add_argument("--q", type=int, help="field order")
    p_construct.add_argument("--dual", action="store_true")
    p_construct.add_argument("--output", help="write here instead of stdout")
    p_construct.set_defaults(func=_cmd_construct)

    p_validate = sub.add_parser(
        "validate", help="check the partial-geometry axioms of an incidence file")
    p_validate.add_argument("--file", required=True)
    p_validate.add_argument("--dual", action="store_true")
    p_validate.add_argument("--output")
    p_validate.set_defaults(func=_cmd_validate)

    p_analyze = sub.add_parser(
        "analyze", help="build the code and report its repair metrics")
    _add_geometry_source(p_analyze)
    p_analyze.add_argument("--exhaustive", action="store_true",
                           help="measure the repair degree by search instead "
                                "of taking the geometric value")
    p_analyze.add_argument("--guard", type=int,
                           default=repair.DEFAULT_SEARCH_GUARD,
                           help="abort exhaustive search beyond this many "
                                "candidate supports")
    p_analyze.add_argument("--format", choices=("json", "text"), default="json")
    p_analyze.add_argument("--output")
    p_analyze.set_defaults(func=_cmd_analyze)

    p_simulate = sub.add_parser(
        "simulate", help="estimate repair success under symbol unavailability")
    _add_geometry_source(p_simulate)
    p_simulate.add_argument("--model", choices=repair.AVAILABILITY_MODELS,
                            default="iid")
    p_simulate.add_argument("--p", type=float,
                            help="per-symbol unavailability probability "
                                 "(iid model)")
    p_simulate.add_argument("--u", type=int,
                            help="number of unavailable symbols "
                                 "(adversarial model)")
    p_simulate.add_argument("--trials", type=int, default=1000)
    p_simulate.add_argument("--seed", type=int, default=0)
    p_simulate.add_argument("--format", choices=("json", "csv"), default="json")
    p_simulate.add_argument("--output")
    p_simulate.set_defaults(func=_cmd_simulate)

    p_bounds = sub.add_parser(
        "bounds", help="tabulate the rate bounds over ranges of (r, a)")
    p_bounds.add_argument("--r", default="2..10",
                          help="values like '4', '2..10', or '2,4..6'")
    p_bounds.add_argument("--a", default="2..10")
    p_bounds.add_argument("--format", choices=("csv", "json"), default="csv")
    p_bounds.add_argument("--output")
    p_bounds.set_defaults(func=_cmd_bounds)

    p_catalog = sub.add_parser(
        "catalog", help="list the practical (r, a) pairs from known quadrangles")
    p_catalog.add_argument("--max-n", type=int, default=100)
    p_catalog.add_argument("--min-rate", default="1/3")
    p_catalog.add_argument("--estimator", choices=bounds.ESTIMATORS,
                           default="theorem-upper-bound")
    p_catalog.add_argument("--format", choices=("json", "text"), default="json")
    p_catalog.add_argument("--output")
    p_catalog.set_defaults(func=_cmd_catalog)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IncidenceFileError, OSError) as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GuardExceededError as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (PgValidationError, DegenerateCodeError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
