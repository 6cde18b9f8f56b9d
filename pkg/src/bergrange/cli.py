"""Command line front end.

Subcommands:

* ``build``       write the truncation matrix of a configured operator as CSV
* ``range``       sweep the numerical range boundary of a config or matrix file
* ``check``       run named validation checks, one JSON report per line
* ``list-checks`` show every check id with its claim and default parameters
* ``plot``        render swept boundary points as a small static SVG

Job configs are JSON objects with the keys ``alpha``, ``truncation``,
``operator`` and optionally ``angles`` and ``seed``.  Unknown fields are
rejected rather than ignored, so a typo cannot silently fall back to a
default.  Exit codes: 0 success, 1 check failures, 2 usage or config
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from bergrange.checks import list_checks, run_all, run_check
from bergrange.core import DomainError, NumericError, UsageError
from bergrange.numrange import boundary_points
from bergrange.operators import (
    OperatorTruncation,
    build_toeplitz,
    build_weighted_composition,
    operator_sum,
)

_TOP_KEYS = {"alpha", "truncation", "operator", "angles", "seed"}
_OPERATOR_KINDS = {"toeplitz", "weighted_composition", "sum"}


@dataclass(frozen=True)
class JobConfig:
    alpha: float
    truncation: int
    operator: dict
    angles: int = 360
    seed: int | None = None


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise UsageError(f"unknown field {unknown[0]!r} in {where}")


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise UsageError(f"missing field {key!r} in {where}")
    return obj[key]


def _as_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise UsageError(f"{where} must be a number, got {value!r}")
    return float(value)


def _as_int(value, where: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise UsageError(f"{where} must be an integer, got {value!r}")
    if value < minimum:
        raise UsageError(f"{where} must be >= {minimum}, got {value}")
    return value


def _as_pairs(value, where: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise UsageError(f"{where} must be a non-empty list of [re, im] pairs")
    out = np.zeros(len(value), dtype=complex)
    for i, pair in enumerate(value):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in pair)
        ):
            raise UsageError(f"{where}[{i}] must be a [re, im] pair, got {pair!r}")
        out[i] = complex(pair[0], pair[1])
    return out


def parse_config(text: str) -> JobConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("config must be a JSON object")
    _reject_unknown(raw, _TOP_KEYS, "config")
    alpha = _as_number(_require(raw, "alpha", "config"), "config field 'alpha'")
    truncation = _as_int(
        _require(raw, "truncation", "config"), "config field 'truncation'", 2
    )
    operator = _require(raw, "operator", "config")
    if not isinstance(operator, dict):
        raise UsageError("config field 'operator' must be an object")
    _validate_operator_spec(operator, "operator")
    angles = 360
    if "angles" in raw:
        angles = _as_int(raw["angles"], "config field 'angles'", 8)
    seed = None
    if "seed" in raw:
        seed = _as_int(raw["seed"], "config field 'seed'", 0)
    return JobConfig(alpha=alpha, truncation=truncation, operator=operator, angles=angles, seed=seed)


def _validate_operator_spec(spec: dict, where: str) -> None:
    _reject_unknown(spec, _OPERATOR_KINDS, where)
    if len(spec) != 1:
        raise UsageError(
            f"{where} must contain exactly one of {sorted(_OPERATOR_KINDS)}, got {sorted(spec)}"
        )
    kind, body = next(iter(spec.items()))
    if kind == "toeplitz":
        if not isinstance(body, dict):
            raise UsageError(f"{where}.toeplitz must be an object")
        _reject_unknown(body, {"terms"}, f"{where}.toeplitz")
        terms = _require(body, "terms", f"{where}.toeplitz")
        if not isinstance(terms, list) or not terms:
            raise UsageError(f"{where}.toeplitz.terms must be a non-empty list")
        for i, term in enumerate(terms):
            if not isinstance(term, list) or len(term) != 4:
                raise UsageError(
                    f"{where}.toeplitz.terms[{i}] must be [p, q, re, im], got {term!r}"
                )
            p, q = term[0], term[1]
            _as_int(p, f"{where}.toeplitz.terms[{i}][0]", 0)
            _as_int(q, f"{where}.toeplitz.terms[{i}][1]", 0)
            _as_number(term[2], f"{where}.toeplitz.terms[{i}][2]")
            _as_number(term[3], f"{where}.toeplitz.terms[{i}][3]")
    elif kind == "weighted_composition":
        if not isinstance(body, dict):
            raise UsageError(f"{where}.weighted_composition must be an object")
        _reject_unknown(body, {"psi", "phi"}, f"{where}.weighted_composition")
        _as_pairs(_require(body, "psi", f"{where}.weighted_composition"), f"{where}.weighted_composition.psi")
        _as_pairs(_require(body, "phi", f"{where}.weighted_composition"), f"{where}.weighted_composition.phi")
    else:
        if not isinstance(body, list) or not body:
            raise UsageError(f"{where}.sum must be a non-empty list of operator objects")
        for i, sub in enumerate(body):
            if not isinstance(sub, dict):
                raise UsageError(f"{where}.sum[{i}] must be an object")
            _validate_operator_spec(sub, f"{where}.sum[{i}]")


def operator_from_spec(spec: dict, alpha: float, truncation: int) -> OperatorTruncation:
    kind, body = next(iter(spec.items()))
    if kind == "toeplitz":
        terms = [(t[0], t[1], complex(t[2], t[3])) for t in body["terms"]]
        return build_toeplitz(terms, alpha, truncation)
    if kind == "weighted_composition":
        psi = _as_pairs(body["psi"], "psi")
        phi = _as_pairs(body["phi"], "phi")
        return build_weighted_composition(psi, phi, alpha, truncation)
    return operator_sum(
        [operator_from_spec(sub, alpha, truncation) for sub in body]
    )


def build_operator(config: JobConfig) -> OperatorTruncation:
    return operator_from_spec(config.operator, config.alpha, config.truncation)


# ---------------------------------------------------------------------------
# serialization


def _fmt(x: float) -> str:
    return repr(float(x))


def matrix_to_csv(op: OperatorTruncation) -> str:
    lines = [f"# bergrange matrix truncation={op.truncation} alpha={_fmt(op.alpha)}"]
    for row in op.matrix:
        cells = []
        for v in row:
            cells.append(_fmt(v.real))
            cells.append(_fmt(v.imag))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def matrix_from_csv(text: str) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(",")
        if len(fields) % 2 != 0:
            raise UsageError(f"matrix line {lineno} has an odd number of fields")
        try:
            values = [float(f) for f in fields]
        except ValueError as exc:
            raise UsageError(f"matrix line {lineno} is not numeric: {exc}") from exc
        rows.append([complex(values[2 * k], values[2 * k + 1]) for k in range(len(values) // 2)])
    if not rows:
        raise UsageError("matrix file holds no data rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise UsageError(f"matrix file is not square: {n} rows, widths {sorted({len(r) for r in rows})}")
    return np.array(rows, dtype=complex)


def sweep_rows(matrix, n_angles: int):
    return [(theta, pt.real, pt.imag, support) for theta, pt, support in boundary_points(matrix, n_angles)]


def rows_to_csv(rows) -> str:
    lines = ["# theta,re,im,support"]
    for theta, re, im, support in rows:
        lines.append(f"{_fmt(theta)},{_fmt(re)},{_fmt(im)},{_fmt(support)}")
    return "\n".join(lines) + "\n"


def rows_to_json(rows, seed=None) -> str:
    payload = {
        "points": [
            {"theta": theta, "re": re, "im": im, "support": support}
            for theta, re, im, support in rows
        ]
    }
    if seed is not None:
        payload["seed"] = seed
    return json.dumps(payload, sort_keys=True) + "\n"


def render_svg(points, width: int = 480, height: int = 480) -> str:
    """Static SVG of a closed boundary polyline with light axes."""
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    x_lo, x_hi = float(np.min(xs)), float(np.max(xs))
    y_lo, y_hi = float(np.min(ys)), float(np.max(ys))
    span = max(x_hi - x_lo, y_hi - y_lo, 1e-9)
    pad = 0.08 * span
    x_lo, x_hi = x_lo - pad, x_lo - pad + span + 2 * pad
    y_lo, y_hi = y_lo - pad, y_lo - pad + span + 2 * pad

    def sx(x):
        return (x - x_lo) / (x_hi - x_lo) * width

    def sy(y):
        return height - (y - y_lo) / (y_hi - y_lo) * height

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if x_lo < 0 < x_hi:
        parts.append(
            f'<line x1="{sx(0):.6g}" y1="0" x2="{sx(0):.6g}" y2="{height}" '
            'stroke="#bbbbbb" stroke-width="1"/>'
        )
    if y_lo < 0 < y_hi:
        parts.append(
            f'<line x1="0" y1="{sy(0):.6g}" x2="{width}" y2="{sy(0):.6g}" '
            'stroke="#bbbbbb" stroke-width="1"/>'
        )
    coords = " ".join(f"{sx(x):.6g},{sy(y):.6g}" for x, y in zip(xs, ys))
    parts.append(
        f'<polygon points="{coords}" fill="none" stroke="#1f3d7a" stroke-width="1.5"/>'
    )
    parts.append(
        f'<text x="6" y="{height - 8}" font-family="monospace" font-size="11" fill="#444444">'
        f"re [{x_lo:.6g}, {x_hi:.6g}]  im [{y_lo:.6g}, {y_hi:.6g}]</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _load_config(args) -> JobConfig:
    if not args.config:
        raise UsageError("--config is required here")
    cfg = parse_config(Path(args.config).read_text())
    alpha = cfg.alpha if args.alpha is None else float(args.alpha)
    truncation = cfg.truncation if args.truncation is None else int(args.truncation)
    if truncation < 2:
        raise UsageError(f"--truncation must be >= 2, got {truncation}")
    return JobConfig(
        alpha=alpha,
        truncation=truncation,
        operator=cfg.operator,
        angles=cfg.angles,
        seed=cfg.seed,
    )


def _cmd_build(args) -> int:
    config = _load_config(args)
    _emit(matrix_to_csv(build_operator(config)), args.out)
    return 0


def _cmd_range(args) -> int:
    if bool(args.config) == bool(args.matrix):
        raise UsageError("pass exactly one of --config or --matrix")
    seed = None
    if args.config:
        config = _load_config(args)
        matrix = build_operator(config).matrix
        angles = config.angles
        seed = config.seed
    else:
        matrix = matrix_from_csv(Path(args.matrix).read_text())
        angles = 360
    if args.angles is not None:
        if args.angles < 8:
            raise UsageError(f"--angles must be >= 8, got {args.angles}")
        angles = args.angles
    rows = sweep_rows(matrix, angles)
    if args.format == "csv":
        text = rows_to_csv(rows)
    elif args.format == "json":
        text = rows_to_json(rows, seed)
    else:
        text = render_svg([(re, im) for _, re, im, _ in rows])
    _emit(text, args.out)
    return 0


def _cmd_check(args) -> int:
    overrides = {}
    if args.alpha is not None:
        overrides["alpha"] = float(args.alpha)
    if args.truncation is not None:
        overrides["N"] = int(args.truncation)
    if args.seed is not None:
        overrides["seed"] = int(args.seed)
    if args.id == "all":
        reports = run_all(overrides)
    else:
        accepted = {cid: set(defaults) for cid, _, defaults in list_checks()}
        if args.id not in accepted:
            known = ", ".join(sorted(accepted))
            raise UsageError(f"unknown check id {args.id!r}; known ids: {known}")
        use = {k: v for k, v in overrides.items() if k in accepted[args.id] or k == "seed"}
        reports = [run_check(args.id, use)]
    text = "".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in reports)
    _emit(text, args.out)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_list_checks(args) -> int:
    lines = []
    for check_id, claim, defaults in list_checks():
        lines.append(f"{check_id}\t{claim}\t{json.dumps(defaults, sort_keys=True)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_plot(args) -> int:
    if bool(args.config) == bool(args.points):
        raise UsageError("pass exactly one of --config or --points")
    if args.points:
        points = []
        for lineno, line in enumerate(Path(args.points).read_text().splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split(",")
            if len(fields) != 4:
                raise UsageError(f"points line {lineno} must be theta,re,im,support")
            try:
                _, re, im, _ = (float(f) for f in fields)
            except ValueError as exc:
                raise UsageError(f"points line {lineno} is not numeric: {exc}") from exc
            points.append((re, im))
        if len(points) < 3:
            raise UsageError("points file holds fewer than three boundary points")
    else:
        config = _load_config(args)
        angles = config.angles if args.angles is None else args.angles
        rows = sweep_rows(build_operator(config).matrix, angles)
        points = [(re, im) for _, re, im, _ in rows]
    _emit(render_svg(points), args.out)
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bergrange",
        description="Truncations of Bergman-space operators and their numerical ranges.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write the configured truncation matrix as CSV")
    b.add_argument("--config", required=True, help="JSON job config")
    b.add_argument("--out", help="output path (stdout when absent)")
    b.add_argument("--alpha", type=float, help="override the config weight parameter")
    b.add_argument("--truncation", type=int, help="override the config matrix size")
    b.set_defaults(fn=_cmd_build)

    r = sub.add_parser("range", help="sweep the numerical range boundary")
    r.add_argument("--config", help="JSON job config")
    r.add_argument("--matrix", help="matrix CSV produced by the build subcommand")
    r.add_argument("--angles", type=int, help="number of sweep directions")
    r.add_argument("--alpha", type=float, help="override the config weight parameter")
    r.add_argument("--truncation", type=int, help="override the config matrix size")
    r.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    r.add_argument("--out", help="output path (stdout when absent)")
    r.set_defaults(fn=_cmd_range)

    c = sub.add_parser("check", help="run named validation checks")
    c.add_argument("id", nargs="?", default="all", help="check id, or 'all'")
    c.add_argument("--alpha", type=float, help="override alpha where a check accepts it")
    c.add_argument("--truncation", type=int, help="override N where a check accepts it")
    c.add_argument("--seed", type=int, help="recorded in each report")
    c.add_argument("--out", help="output path (stdout when absent)")
    c.set_defaults(fn=_cmd_check)

    lc = sub.add_parser("list-checks", help="list check ids, claims, and defaults")
    lc.add_argument("--out", help="output path (stdout when absent)")
    lc.set_defaults(fn=_cmd_list_checks)

    pl = sub.add_parser("plot", help="render boundary points as a static SVG")
    pl.add_argument("--points", help="CSV produced by the range subcommand")
    pl.add_argument("--config", help="JSON job config to sweep directly")
    pl.add_argument("--angles", type=int, help="number of sweep directions")
    pl.add_argument("--out", help="output path (stdout when absent)")
    pl.set_defaults(fn=_cmd_plot)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, DomainError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
