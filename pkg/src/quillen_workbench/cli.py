"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .config import FORMATS, MODES, RunConfig
from .errors import RealizabilityError, ResourceLimitError, SpecParseError, UnsupportedError
from .groups import elementary_abelian_subgroups, parse_group_spec
from .modules import (
    cohomology_elementary_abelian,
    module_checks,
    sylow_symmetric_module,
)
from .quillen import build_quillen_diagram, limit_dims
from .series import (
    PowerSeries,
    series_a4x,
    series_quadratic,
    series_sylow_alt_pipeline,
    series_sylow_symmetric,
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def render(payload: dict, rows: list[tuple], header: tuple, fmt: str) -> str:
    """JSON is canonical; CSV and ASCII show the tabular part of it."""
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).rjust(w) for x, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(str(x).rjust(w) for x, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def _parse_base_series(text: str, truncation: int) -> PowerSeries:
    """``geom:K`` for ``1/(1-t)^K``, or comma-separated coefficients."""
    try:
        if text.startswith("geom:"):
            return PowerSeries.geometric(truncation, int(text[5:]))
        return PowerSeries(truncation, tuple(int(c) for c in text.split(",")))
    except ValueError as exc:
        raise UsageError(f"bad series {text!r}: use geom:K or c0,c1,...") from exc


def cmd_group(args, cfg: RunConfig) -> tuple[int, str]:
    g = parse_group_spec(args.spec, max_order=cfg.max_group_order)
    payload = {
        "group": args.spec,
        "degree": g.degree,
        "order": g.order,
        "generator_count": len(g.generators),
        "generators": [p.one_based() for p in g.generators],
    }
    if args.subgroups:
        subs = elementary_abelian_subgroups(g, cfg.max_ea_rank)
        counts: dict[int, int] = {}
        for s in subs:
            counts[s.rank] = counts.get(s.rank, 0) + 1
        payload["elementary_abelian_subgroups"] = {str(r): c for r, c in sorted(counts.items())}
    rows = [(k, payload[k]) for k in ("group", "degree", "order", "generator_count")]
    return EXIT_OK, render(payload, rows, ("field", "value"), cfg.output_format)


def cmd_limit(args, cfg: RunConfig) -> tuple[int, str]:
    g = parse_group_spec(args.group, max_order=cfg.max_group_order)
    diagram = build_quillen_diagram(g, cfg.mode, cfg.max_ea_rank)
    table = limit_dims(diagram, cfg.max_degree)
    table.group = args.group
    rows = list(zip(table.degrees, table.dims))
    return EXIT_OK, render(table.to_json(), rows, ("degree", "dim"), cfg.output_format)


def _power_of_two(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise UnsupportedError(
            f"alternating series are implemented for powers of two >= 2, got {n}"
        )
    return n.bit_length() - 1


def cmd_series(args, cfg: RunConfig) -> tuple[int, str]:
    trunc = args.truncation if args.truncation is not None else cfg.max_degree
    if trunc < 0:
        raise UsageError("truncation must be nonnegative")
    kind = args.kind
    if kind == "sym":
        n = _int_arg(args.arg)
        s, label = series_sylow_symmetric(n, trunc), f"sylow-sym:{n}"
    elif kind == "alt":
        n = _int_arg(args.arg)
        s, label = series_sylow_alt_pipeline(_power_of_two(n), trunc)[2], f"sylow-alt:{n}"
    elif kind == "a4x":
        s, label = series_a4x(_parse_base_series(args.arg, trunc)), f"a4x({args.arg})"
    else:
        s, label = series_quadratic(_parse_base_series(args.arg, trunc)), f"quad({args.arg})"
    rows = list(enumerate(s.coefficients))
    return EXIT_OK, render(s.to_json(label), rows, ("degree", "coefficient"), cfg.output_format)


def _int_arg(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise UsageError(f"expected an integer, got {text!r}") from exc
    if n < 0:
        raise UsageError("expected a nonnegative integer")
    return n


def _module_from_spec(spec: str, max_degree: int):
    kind, _, arg = spec.partition(":")
    if kind == "sylow-sym":
        return sylow_symmetric_module(_int_arg(arg), max_degree)
    if kind == "ea":
        return cohomology_elementary_abelian(_int_arg(arg), max_degree)
    raise SpecParseError(f"unknown module spec {spec!r}; use sylow-sym:N or ea:D")


def cmd_module(args, cfg: RunConfig) -> tuple[int, str]:
    mod = _module_from_spec(args.spec, cfg.max_degree)
    if args.emit == "checks":
        checks = module_checks(mod)
        payload = {"module": args.spec, "max_degree": mod.max_degree, "checks": checks}
        rows = [(name, "pass" if not bad else f"{len(bad)} violations") for name, bad in checks.items()]
        code = EXIT_OK if not any(checks.values()) else EXIT_VERIFY
        return code, render(payload, rows, ("check", "result"), cfg.output_format)
    if args.emit == "dims":
        payload = {"module": args.spec, "max_degree": mod.max_degree, "dims": list(mod.dims)}
        return EXIT_OK, render(payload, list(enumerate(mod.dims)), ("degree", "dim"), cfg.output_format)
    payload = mod.to_json()
    return EXIT_OK, render(payload, list(enumerate(mod.dims)), ("degree", "dim"), cfg.output_format)


def cmd_verify(args, cfg: RunConfig) -> tuple[int, str]:
    from .acceptance import CRITERIA, run_all

    if args.which == "all":
        numbers = sorted(CRITERIA)
    else:
        numbers = [_int_arg(args.which)]
        if numbers[0] not in CRITERIA:
            raise UsageError(f"no criterion {numbers[0]}")
    results = run_all(args.max_degree, numbers, cfg.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    payload = {
        "criteria": [
            {"number": r.number, "title": r.title, "passed": r.passed, "failures": r.failures} for r in results
        ]
    }
    rows = [(r.number, "PASS" if r.passed else "FAIL", r.title) for r in results]
    code = EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY
    return code, render(payload, rows, ("criterion", "status", "title"), cfg.output_format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, help="truncation degree (env WORKBENCH_MAX_DEGREE)")
    common.add_argument("--max-order", type=int, help="group order cap (env WORKBENCH_MAX_ORDER)")
    common.add_argument("--max-rank", type=int, help="elementary abelian rank cap (env WORKBENCH_MAX_RANK)")
    common.add_argument("--mode", choices=MODES)
    common.add_argument("--format", choices=FORMATS, dest="output_format")
    common.add_argument("--seed", type=int)

    parser = argparse.ArgumentParser(prog="workbench", description="mod-2 cohomology desk calculator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="summarise a group")
    p.add_argument("spec")
    p.add_argument("--subgroups", action="store_true", help="count elementary abelian subgroups by rank")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("limit", parents=[common], help="dimensions of the Quillen limit")
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("series", parents=[common], help="Poincare series")
    p.add_argument("kind", choices=("sym", "alt", "a4x", "quad"))
    p.add_argument("arg", help="n for sym/alt; geom:K or c0,c1,... for a4x/quad")
    p.add_argument("truncation", nargs="?", type=int)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("module", parents=[common], help="unstable module models")
    p.add_argument("spec", help="sylow-sym:N or ea:D")
    p.add_argument("--emit", choices=("dump", "dims", "checks"), default="dump")
    p.set_defaults(func=cmd_module)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("which", nargs="?", default="all", help="'all' or a criterion number")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = RunConfig.from_env().with_overrides(
            max_degree=args.max_degree,
            max_group_order=args.max_order,
            max_ea_rank=args.max_rank,
            mode=args.mode,
            output_format=args.output_format,
            seed=args.seed,
        )
        code, text = args.func(args, cfg)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, SpecParseError, UnsupportedError, RealizabilityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
