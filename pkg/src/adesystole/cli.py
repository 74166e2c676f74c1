"""Command-line surface: parse inputs, dispatch, emit reports.

Exit status is 0 on success, 1 on bad input, and 2 when a mathematical
property that should always hold fails numerically (which would mean an
implementation bug, so CI can tell it apart from user error).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from adesystole import actions, milnor, roots, search, stability

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VIOLATION = 2


class CLIError(ValueError):
    """Bad command-line input; maps to exit status 1."""


def parse_complex(token: str) -> complex:
    """One 'a+bi' literal: signs, decimals, and exponent notation allowed."""
    text = token.strip().lower().replace("i", "j")
    try:
        value = complex(text)
    except ValueError:
        raise CLIError(f"could not parse complex literal {token.strip()!r}") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise CLIError(f"complex literal {token.strip()!r} is not finite")
    return value


def parse_charge(text: str) -> list[complex]:
    """Comma-separated complex literals; errors carry the token position."""
    tokens = text.split(",")
    values = []
    for idx, token in enumerate(tokens):
        try:
            values.append(parse_complex(token))
        except CLIError as exc:
            raise CLIError(f"charge token {idx}: {exc}") from None
    return values


def format_complex(z: complex) -> str:
    sign = "+" if z.imag >= 0 or z.imag != z.imag else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def format_charge(values) -> str:
    return ",".join(format_complex(complex(z)) for z in values)


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return format_complex(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _fmt17(value):
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, dict):
        return {k: _fmt17(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_fmt17(v) for v in value]
    return value


def render_human(payload: dict) -> str:
    lines = []
    for key, value in payload.items():
        value = _fmt17(_jsonable(value))
        if isinstance(value, (dict, list)):
            text = json.dumps(value)
            if len(text) > 100 and isinstance(value, list):
                lines.append(f"{key}:")
                lines.extend(f"  {json.dumps(item)}" for item in value)
                continue
            lines.append(f"{key}: {text}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def emit(payload: dict, output: str, out_file: str | None, csv_rows=None) -> None:
    if output == "json":
        text = json.dumps(_jsonable(payload), indent=2)
    elif output == "csv":
        if csv_rows is None:
            raise CLIError("csv output is not available for this command")
        header, rows = csv_rows
        lines = [",".join(header)]
        lines.extend(",".join(f"{v:.17g}" if isinstance(v, float) else str(v) for v in row) for row in rows)
        text = "\n".join(lines)
    else:
        text = render_human(payload)
    if out_file:
        Path(out_file).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def read_config(path: str) -> dict:
    """Flat 'key = value' file mirroring the long flags; '#' starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CLIError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


_INT_KEYS = {"rank", "seed", "count", "restarts", "depth"}
_FLAG_KEYS = {"correspond"}


def apply_config(args: argparse.Namespace, config: dict) -> None:
    """Fill unset options from a config mapping; explicit flags win."""
    for key, raw in config.items():
        if not hasattr(args, key):
            continue
        current = getattr(args, key)
        if key in _FLAG_KEYS:
            if current is False and raw.lower() in ("1", "true", "yes"):
                setattr(args, key, True)
            continue
        if current is not None:
            continue
        if key in _INT_KEYS:
            try:
                setattr(args, key, int(raw))
            except ValueError:
                raise CLIError(f"config key {key}: expected an integer, got {raw!r}") from None
        else:
            setattr(args, key, raw)


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise CLIError(f"missing required option --{name.replace('_', '-')}")


def _ade(args) -> roots.AdeType:
    _require(args, "family", "rank")
    try:
        return roots.AdeType(args.family.upper(), args.rank)
    except ValueError as exc:
        raise CLIError(str(exc)) from None


def _charge(args, rs: roots.RootSystem):
    _require(args, "charge")
    values = parse_charge(args.charge)
    if len(values) != rs.rank:
        raise CLIError(f"charge has {len(values)} entries, expected {rs.rank}")
    return values


def _base_payload(command: str, inputs: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": {k: v for k, v in inputs.items() if v is not None},
    }


def cmd_roots(args) -> int:
    ade = _ade(args)
    rs = roots.build_root_system(ade)
    payload = _base_payload("roots", {"family": ade.family, "rank": ade.rank})
    payload.update(
        {
            "coxeter": rs.coxeter,
            "count": roots.count_positive_roots(ade),
            "cartan": [list(row) for row in rs.cartan],
            "cartan_inverse": [[str(x) for x in row] for row in rs.cartan_inv],
            "positive_roots": [list(alpha) for alpha in rs.positive_roots],
        }
    )
    emit(payload, args.output, args.out_file)
    return EXIT_OK


def cmd_identity(args) -> int:
    ade = _ade(args)
    report = roots.verify_volume_identity(roots.build_root_system(ade))
    payload = _base_payload("identity", {"family": ade.family, "rank": ade.rank})
    payload.update(
        {
            "pass": report.passed,
            "pairs_checked": report.pairs_checked,
            "failures": [
                {"i": i, "j": j, "inverse_entry": str(lhs), "root_sum": str(rhs)}
                for i, j, lhs, rhs in report.failures
            ],
        }
    )
    emit(payload, args.output, args.out_file)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_volume(args) -> int:
    ade = _ade(args)
    rs = roots.build_root_system(ade)
    z = _charge(args, rs)
    via_basis = stability.volume_basis(rs, z)
    via_roots = stability.volume_roots(rs, z)
    gap = abs(via_basis - via_roots) / max(1.0, via_roots)
    agree = gap <= stability.REL_TOL
    payload = _base_payload(
        "volume", {"family": ade.family, "rank": ade.rank, "charge": format_charge(z)}
    )
    payload.update(
        {
            "volume_basis": via_basis,
            "volume_roots": via_roots,
            "relative_difference": gap,
            "agree": agree,
        }
    )
    emit(payload, args.output, args.out_file)
    return EXIT_OK if agree else EXIT_VIOLATION


def cmd_systole(args) -> int:
    ade = _ade(args)
    rs = roots.build_root_system(ade)
    z = _charge(args, rs)
    try:
        lower = stability.systole_lower(rs, z)
        upper = stability.systole_upper(rs, z)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    payload = _base_payload(
        "systole", {"family": ade.family, "rank": ade.rank, "charge": format_charge(z)}
    )
    payload.update({"sys_lower": lower, "sys_upper": upper})
    emit(payload, args.output, args.out_file)
    return EXIT_OK


def cmd_inequality(args) -> int:
    ade = _ade(args)
    rs = roots.build_root_system(ade)
    z = _charge(args, rs)
    try:
        report = stability.check_inequality(rs, z)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    payload = _base_payload(
        "inequality", {"family": ade.family, "rank": ade.rank, "charge": format_charge(z)}
    )
    payload.update(report.as_dict())
    emit(payload, args.output, args.out_file)
    return EXIT_OK if report.satisfied() else EXIT_VIOLATION


def _search_config(args) -> search.SearchConfig:
    try:
        return search.SearchConfig(
            sample_count=args.count if args.count is not None else 1000,
            seed=args.seed if args.seed is not None else 0,
            restarts=args.restarts if args.restarts is not None else 1,
        )
    except ValueError as exc:
        raise CLIError(str(exc)) from None


def _result_rows(result: search.SearchResult):
    header = ["index", "ratio", "sys_upper", "sys_lower", "volume"]
    rows = [
        (idx, float(result.ratios[idx]), float(result.sys_upper[idx]),
         float(result.sys_lower[idx]), float(result.volumes[idx]))
        for idx in range(result.ratios.shape[0])
    ]
    return header, rows


def cmd_sample(args) -> int:
    ade = _ade(args)
    rs = roots.build_root_system(ade)
    cfg = _search_config(args)
    result = search.sample_ratios(rs, cfg)
    payload = _base_payload(
        "sample",
        {"family": ade.family, "rank": ade.rank, "seed": cfg.seed, "count": cfg.sample_count},
    )
    payload.update(result.summary())
    payload["best_charge_str"] = format_charge(result.best_charge)
    emit(payload, args.output, args.out_file, csv_rows=_result_rows(result))
    return EXIT_OK if result.samples_violating == 0 else EXIT_VIOLATION


def cmd_optimize(args) -> int:
    ade = _ade(args)
    rs = roots.build_root_system(ade)
    cfg = _search_config(args)
    result = search.optimize_ratio(rs, cfg)
    payload = _base_payload(
        "optimize",
        {"family": ade.family, "rank": ade.rank, "seed": cfg.seed, "restarts": cfg.restarts},
    )
    payload.update(result.summary())
    payload["best_charge_str"] = format_charge(result.best_charge)
    emit(payload, args.output, args.out_file, csv_rows=_result_rows(result))
    return EXIT_OK if result.samples_violating == 0 else EXIT_VIOLATION


def cmd_tilt_graph(args) -> int:
    ade = _ade(args)
    rs = roots.build_root_system(ade)
    depth = args.depth if args.depth is not None else 4
    try:
        graph = actions.exchange_graph(rs, depth)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    if args.output == "dot":
        text = graph.to_dot()
        if args.out_file:
            Path(args.out_file).write_text(text + "\n", encoding="utf-8")
        else:
            print(text)
        return EXIT_OK
    payload = _base_payload(
        "tilt-graph", {"family": ade.family, "rank": ade.rank, "depth": depth}
    )
    payload.update(graph.adjacency())
    emit(payload, args.output, args.out_file)
    return EXIT_OK


def _configuration(args) -> milnor.PointConfiguration:
    if args.points is not None and args.poly is not None:
        raise CLIError("give either --points or --poly, not both")
    if args.points is not None:
        pts = parse_charge(args.points)
    elif args.poly is not None:
        pts = milnor.points_from_coefficients(parse_charge(args.poly))
    else:
        raise CLIError("missing required option --points or --poly")
    try:
        return milnor.validate_configuration(pts)
    except ValueError as exc:
        raise CLIError(str(exc)) from None


def _milnor_inputs(args) -> dict:
    return {"points": args.points, "poly": args.poly}


def cmd_milnor(args) -> int:
    config = _configuration(args)
    lengths = milnor.segment_lengths(config)
    payload = _base_payload("milnor", _milnor_inputs(args))
    payload.update(
        {
            "n": config.n,
            "points_centered": format_charge(config.points),
            "ordering": list(config.ordering),
            "general_position": config.general_position,
            "segment_lengths": [
                {"i": i, "j": j, "length": value} for i, j, value in lengths.entries
            ],
            "systole": milnor.geometric_systole(config),
            "volume": milnor.geometric_volume(config),
        }
    )
    status = EXIT_OK
    if args.correspond:
        report = milnor.verify_correspondence(config)
        payload["correspondence"] = report.as_dict()
        payload["induced_charge"] = format_charge(milnor.induced_charge(config))
        if not report.passed:
            status = EXIT_VIOLATION
    emit(payload, args.output, args.out_file)
    return status


def cmd_correspond(args) -> int:
    config = _configuration(args)
    report = milnor.verify_correspondence(config)
    payload = _base_payload("correspond", _milnor_inputs(args))
    payload.update(report.as_dict())
    payload["induced_charge"] = format_charge(milnor.induced_charge(config))
    emit(payload, args.output, args.out_file)
    return EXIT_OK if report.passed else EXIT_VIOLATION


_COMMANDS = {
    "roots": cmd_roots,
    "identity": cmd_identity,
    "volume": cmd_volume,
    "systole": cmd_systole,
    "inequality": cmd_inequality,
    "sample": cmd_sample,
    "optimize": cmd_optimize,
    "tilt-graph": cmd_tilt_graph,
    "milnor": cmd_milnor,
    "correspond": cmd_correspond,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file supplying default options")
    common.add_argument("--output", choices=["human", "json", "csv", "dot"], default=None)
    common.add_argument("--out-file", dest="out_file", default=None)

    ade = argparse.ArgumentParser(add_help=False)
    ade.add_argument("--family", choices=["A", "D", "E", "a", "d", "e"], default=None)
    ade.add_argument("--rank", type=int, default=None)

    parser = argparse.ArgumentParser(
        prog="adesystole",
        description="Systoles and volumes of stability data on ADE root systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("roots", parents=[common, ade], help="root-system data")
    sub.add_parser("identity", parents=[common, ade], help="exact coefficient identity check")

    for name, help_text in [
        ("volume", "volume of a charge along both routes"),
        ("systole", "systole bracket of a charge"),
        ("inequality", "systolic inequality report for a charge"),
    ]:
        p = sub.add_parser(name, parents=[common, ade], help=help_text)
        p.add_argument("--charge", default=None, help="comma-separated a+bi entries")

    for name, help_text in [
        ("sample", "seeded ratio sampling"),
        ("optimize", "pattern-search ratio maximization"),
    ]:
        p = sub.add_parser(name, parents=[common, ade], help=help_text)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--count", type=int, default=None)
        p.add_argument("--restarts", type=int, default=None)

    p = sub.add_parser("tilt-graph", parents=[common, ade], help="class-level tilt graph")
    p.add_argument("--depth", type=int, default=None)

    for name, help_text in [
        ("milnor", "point-configuration systole and volume"),
        ("correspond", "geometric/categorical matching report"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--points", default=None, help="comma-separated a+bi points")
        p.add_argument("--poly", default=None, help="comma-separated coefficients a_1..a_n")
        if name == "milnor":
            p.add_argument("--correspond", action="store_true")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        apply_config(args, read_config(args.config))
    if args.output is None:
        args.output = "human"
    if args.output == "dot" and args.command != "tilt-graph":
        raise CLIError("dot output is only available for tilt-graph")
    return _COMMANDS[args.command](args)


def main(argv=None) -> int:
    try:
        return run(argv)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ArithmeticError as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    raise SystemExit(main())
