"""Command-line front end: evaluate, envelope, calibrate, sensitivity.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 calibration
infeasible.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import calibration, envelope, files
from .errors import CalibrationError, ValidationError
from .model import METRICS, ModelParameters, explain, round_kzt, total_salary

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_CALIBRATION = 4

MODE_ALIASES = {"paper": "paper_replication", "paper_replication": "paper_replication", "consistent": "consistent"}

BREAKDOWN_COLUMNS = (
    "base", "performance_pub", "performance_cit", "performance_grant", "performance_total",
    "collaborative", "competency", "insignia", "intl_collab", "total",
)
TABLE_COLUMNS = ("base", "performance_total", "collaborative", "competency", "insignia", "intl_collab", "total")


def _table(headers: Sequence[str], rows: List[Sequence]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = []
    for n, row in enumerate(cells):
        lines.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))))
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _csv(headers: Sequence[str], rows: List[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def _json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _load_params(path: Optional[Path]) -> ModelParameters:
    return files.load_params(path) if path is not None else ModelParameters()


def _require(path: Optional[Path], flag: str) -> Path:
    if path is None:
        raise files.ParseError(f"{flag} is required for this command")
    if not path.is_file():
        raise files.ParseError(f"{path}: no such file")
    return path


def cmd_evaluate(args) -> int:
    params = _load_params(args.params)
    profiles = files.load_profiles(_require(args.profiles, "--profiles"))
    rows = []
    for profile in profiles:
        breakdown = total_salary(profile, params).rounded()
        mf = envelope.profile_motivation(profile)
        rows.append((profile, breakdown, mf))

    if args.explain:
        for profile, _, _ in rows:
            sys.stderr.write(f"# {profile.name}\n")
            for line in explain(profile, params):
                sys.stderr.write(f"  {line}\n")

    if args.format == "json":
        payload = [
            {"name": p.name, **b, "mf": mf.mf, "mf_band": mf.band} for p, b, mf in rows
        ]
        text = _json(payload)
    elif args.format == "csv":
        headers = ("name",) + BREAKDOWN_COLUMNS + ("mf", "mf_band")
        text = _csv(headers, [(p.name, *(b[c] for c in BREAKDOWN_COLUMNS), mf.display, mf.band) for p, b, mf in rows])
    else:
        headers = ("name",) + TABLE_COLUMNS
        text = _table(headers, [(p.name, *(f"{b[c]:,}" for c in TABLE_COLUMNS)) for p, b, _ in rows])
    _emit(text, args.out)
    return EXIT_OK


def cmd_envelope(args) -> int:
    params = _load_params(args.params)
    env = envelope.salary_envelope(params, args.mode)
    series = envelope.figure_data(env)
    rounded = [(label, round_kzt(amount)) for label, amount in series]

    if args.format == "json":
        text = _json({"mode": env.mode, **{label: amount for label, amount in rounded}})
    elif args.format == "csv":
        text = _csv(("mode", "label", "amount_kzt"), [(env.mode, label, amount) for label, amount in rounded])
    else:
        text = f"mode: {env.mode}\n" + _table(("label", "amount_kzt"), [(l, f"{a:,}") for l, a in rounded])
    if args.explain:
        text += (
            f"optimal = sqrt({env.minimum:.2f} * {env.maximum:.2f}) = {env.optimal:.2f}"
            f" (logarithmic mean would be {envelope.logarithmic_mean(env.minimum, env.maximum):.2f})\n"
        )
    _emit(text, args.out)
    args.figure.write_text(_csv(("label", "amount_kzt"), rounded), encoding="utf-8")
    return EXIT_OK


def cmd_calibrate(args) -> int:
    seed = _load_params(args.params)
    anchors, free = files.load_anchors(_require(args.anchors, "--anchors"))
    result = calibration.calibrate_from_anchors(anchors, seed, free)

    headers = ("anchor", "target_kzt", "fitted_kzt", "relative_residual", "tolerance", "flagged")
    rows = [
        (r.name, round_kzt(r.target), round_kzt(r.fitted), f"{r.relative_residual:.3e}", f"{r.tolerance:g}",
         "yes" if r.flagged else "no")
        for r in result.residuals
    ]
    if args.format == "json":
        text = _json({
            "solved": result.solved,
            "residuals": [dict(zip(headers, row)) for row in rows],
        })
    elif args.format == "csv":
        text = _csv(headers, rows)
    else:
        solved = "".join(f"{k} = {v:.6f}\n" for k, v in result.solved.items())
        text = solved + _table(headers, rows)
    _emit(text, None)
    if args.out is not None:
        files.save_params(result.params, args.out)
    return EXIT_OK


def cmd_sensitivity(args) -> int:
    params = _load_params(args.params)
    profiles = files.load_profiles(_require(args.profiles, "--profiles"))
    matches = [p for p in profiles if p.name == args.profile]
    if not matches:
        raise ValidationError("--profile", f"no profile named {args.profile!r}")
    profile = matches[0]
    metrics = [args.metric] if args.metric else list(METRICS)
    reports = [calibration.sensitivity(profile, params, m) for m in metrics]

    headers = ("metric", "gradient_kzt", "elasticity")
    rows = [(r.metric, f"{r.gradient:.4f}", f"{r.elasticity:.6f}") for r in reports]
    if args.format == "json":
        text = _json([
            {"metric": r.metric, "gradient_kzt": r.gradient, "elasticity": r.elasticity, "one_sided": r.one_sided}
            for r in reports
        ])
    elif args.format == "csv":
        text = _csv(headers, rows)
    else:
        text = _table(headers, rows)
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", type=Path, default=None, help="parameters JSON (defaults built in)")
    common.add_argument("--profiles", type=Path, default=None, help="profiles JSON")
    common.add_argument("--mode", choices=sorted(MODE_ALIASES), default="consistent")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--out", type=Path, default=None)
    common.add_argument("--explain", action="store_true", help="print formulas with substituted values")

    parser = argparse.ArgumentParser(prog="salary-model", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("evaluate", parents=[common], help="component breakdown per profile")
    env = sub.add_parser("envelope", parents=[common], help="minimum / optimal / maximum salary")
    env.add_argument("--figure", type=Path, default=Path("figure_data.csv"), help="figure CSV path")
    cal = sub.add_parser("calibrate", parents=[common], help="solve parameters from anchors")
    cal.add_argument("--anchors", type=Path, default=None)
    sens = sub.add_parser("sensitivity", parents=[common], help="gradient table for one profile")
    sens.add_argument("--profile", required=True, help="profile name")
    sens.add_argument("--metric", choices=METRICS, default=None)
    return parser


COMMANDS = {
    "evaluate": cmd_evaluate,
    "envelope": cmd_envelope,
    "calibrate": cmd_calibrate,
    "sensitivity": cmd_sensitivity,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    args.mode = MODE_ALIASES[args.mode]
    try:
        if args.params is not None:
            _require(args.params, "--params")
        return COMMANDS[args.command](args)
    except files.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CalibrationError as exc:
        print(f"calibration infeasible: {exc}", file=sys.stderr)
        return EXIT_CALIBRATION


if __name__ == "__main__":
    sys.exit(main())
