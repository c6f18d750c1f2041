"""Command-line front end.

Subcommands: ``screen`` (score and select columns of a CSV), ``xi`` (one
column's score), ``simulate`` (replicated benchmark runs), ``concentration``
(tail-frequency probe), and ``metrics`` (prediction metrics from a CSV).

Every run is reproducible: all randomness flows from ``--seed``, which
defaults to 0 when omitted. Outputs are computed fully before any file is
written, so a failing run leaves no partial output files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import dataio, simgen
from .errors import XisisError
from .evalkit import confusion_counts, cv_rmse, precision_recall_f
from .rankcorr import xi_score
from .screening import METHODS, default_d, score_all, threshold_select, top_d

DEFAULT_SEED = 0
THREADS_ENV = "XISIS_THREADS"


def _parse_selector(text: str) -> str | int:
    """Column selector: '#3' means 0-based index 3, anything else is a name."""
    if text.startswith("#"):
        try:
            return int(text[1:])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad column index {text!r}") from None
    return text


def _parse_column(text: str) -> str | int:
    """Predictor selector: bare digits or '#k' are a 0-based index."""
    if text.isdigit():
        return int(text)
    return _parse_selector(text)


def _parse_labels(text: str) -> dict[str, float]:
    labels = {}
    for part in text.split(","):
        if "=" not in part:
            raise argparse.ArgumentTypeError(f"bad label mapping {part!r}; use name=value")
        name, _, value = part.partition("=")
        try:
            labels[name.strip()] = float(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad label value in {part!r}") from None
    if len(labels) != 2:
        raise argparse.ArgumentTypeError("labels must map exactly two names")
    return labels


def _parse_threshold(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"threshold must be 'c,kappa', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad threshold values {text!r}") from None


def _parse_method(text: str) -> str:
    method = text.replace("-", "_")
    if method not in METHODS:
        raise argparse.ArgumentTypeError(f"unknown method {text!r}")
    return method


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def _parse_top_d(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer or 'auto'") from None


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return value


def _resolve_threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise XisisError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return 1


def _add_input_flags(sub) -> None:
    sub.add_argument("--input", required=True, help="path to the CSV file")
    sub.add_argument(
        "--response",
        required=True,
        type=_parse_selector,
        help="response column: a name, or '#k' for 0-based index k",
    )
    sub.add_argument("--delimiter", default=",", help="field delimiter (default ',')")
    sub.add_argument(
        "--labels",
        type=_parse_labels,
        default=None,
        help="map two response strings to numbers, e.g. ALL=0,AML=1",
    )


def _add_output_flags(sub) -> None:
    sub.add_argument("--out", default=".", help="output directory (default '.')")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xisis",
        description="Rank-based marginal dependence screening for wide data tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_screen = sub.add_parser("screen", help="score every column and select a subset")
    _add_input_flags(p_screen)
    p_screen.add_argument("--method", type=_parse_method, default="xi",
                          help="xi | pearson | dcor | xi-binary (default xi)")
    p_screen.add_argument("--top-d", type=_parse_top_d, default="auto",
                          help="number of columns to keep, or 'auto' for floor(n/log n)")
    p_screen.add_argument("--threshold", type=_parse_threshold, default=None,
                          help="'c,kappa': keep scores >= c*n^(-kappa) instead of top-d")
    p_screen.add_argument("--standardize", action="store_true",
                          help="standardize predictor columns before scoring")
    p_screen.add_argument("--seed", type=_nonneg_int, default=DEFAULT_SEED)
    p_screen.add_argument("--threads", type=int, default=None,
                          help="worker threads; never changes any output value")
    _add_output_flags(p_screen)
    p_screen.set_defaults(func=cmd_screen)

    p_xi = sub.add_parser("xi", help="print one column's xi score")
    _add_input_flags(p_xi)
    p_xi.add_argument("--column", required=True, type=_parse_column,
                      help="predictor column: a name, or a 0-based index like 5 or '#5'")
    p_xi.add_argument("--seed", type=_nonneg_int, default=DEFAULT_SEED)
    p_xi.set_defaults(func=cmd_xi)

    p_sim = sub.add_parser("simulate", help="replicated screening benchmark")
    p_sim.add_argument("--model", choices=sorted(simgen.MODELS), required=True)
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--p", type=int, required=True)
    p_sim.add_argument("--reps", type=int, required=True)
    p_sim.add_argument("--methods", default="xi,pearson,dcor",
                       help="comma-separated methods (default xi,pearson,dcor)")
    p_sim.add_argument("--d", type=_parse_top_d, default="auto")
    p_sim.add_argument("--rho", type=float, default=0.5)
    p_sim.add_argument("--seed", type=_nonneg_int, default=DEFAULT_SEED)
    p_sim.add_argument("--threads", type=int, default=None)
    _add_output_flags(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_conc = sub.add_parser("concentration", help="tail-frequency decay probe")
    p_conc.add_argument("--model", choices=sorted(simgen.MODELS), default="M0")
    p_conc.add_argument("--n-grid", type=_parse_int_list, default=(100, 200, 400, 800))
    p_conc.add_argument("--p", type=int, required=True)
    p_conc.add_argument("--reps", type=int, required=True)
    p_conc.add_argument("--delta", type=float, required=True)
    p_conc.add_argument("--rho", type=float, default=0.5)
    p_conc.add_argument("--seed", type=_nonneg_int, default=DEFAULT_SEED)
    p_conc.add_argument("--threads", type=int, default=None)
    _add_output_flags(p_conc)
    p_conc.set_defaults(func=cmd_concentration)

    p_met = sub.add_parser("metrics", help="prediction metrics from a CSV")
    p_met.add_argument("--input", required=True)
    p_met.add_argument("--true", required=True, dest="true_col", type=_parse_selector)
    p_met.add_argument("--pred", required=True, dest="pred_col", type=_parse_selector)
    p_met.add_argument("--delimiter", default=",")
    p_met.add_argument("--out", default=None, help="also write metrics.json here")
    p_met.set_defaults(func=cmd_metrics)

    return parser


def _load(args) -> "dataio.DataMatrix":
    tf = dataio.TableFile(
        path=args.input,
        response=args.response,
        delimiter=args.delimiter,
        labels=args.labels,
    )
    return dataio.ingest_csv(tf)


def cmd_screen(args) -> int:
    data = _load(args)
    if args.standardize:
        data = dataio.standardize(data)
    sv = score_all(data, method=args.method, tie_seed=args.seed)
    if args.threshold is not None:
        c, kappa = args.threshold
        result = threshold_select(sv, c, kappa, data.n)
    else:
        d = default_d(data.n) if args.top_d == "auto" else args.top_d
        result = top_d(sv, d)
    os.makedirs(args.out, exist_ok=True)
    if args.format == "json":
        scores_path = os.path.join(args.out, "scores.json")
        dataio.write_scores_json(scores_path, data.names, sv, result)
    else:
        scores_path = os.path.join(args.out, "scores.csv")
        dataio.write_scores_csv(scores_path, data.names, sv, result)
    selected_path = os.path.join(args.out, "selected.json")
    dataio.write_selected_json(selected_path, data.names, sv, result, data.n)
    for w in sv.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(
        f"scored {data.p} columns (n={data.n}, method={args.method}); "
        f"selected {len(result.selected)} -> {scores_path}, {selected_path}"
    )
    return 0


def cmd_xi(args) -> int:
    data = _load(args)
    if isinstance(args.column, int):
        if not 0 <= args.column < data.p:
            raise XisisError(f"column index {args.column} out of range for p={data.p}")
        k = args.column
    else:
        try:
            k = data.names.index(args.column)
        except ValueError:
            raise XisisError(f"column {args.column!r} not found") from None
    print(dataio.format_float(xi_score(data.X[:, k], data.y, tie_seed=args.seed)))
    return 0


def cmd_simulate(args) -> int:
    methods = tuple(_parse_method(m) for m in args.methods.split(","))
    config = simgen.SimulationConfig(
        model=args.model,
        n=args.n,
        p=args.p,
        replications=args.reps,
        rho=args.rho,
        d=None if args.d == "auto" else args.d,
        base_seed=args.seed,
        methods=methods,
    )
    report = simgen.run_simulation(config, threads=_resolve_threads(args))
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "simulation.csv")
    json_path = os.path.join(args.out, "simulation.json")
    report.write_csv(csv_path)
    report.write_json(json_path)
    props = report.proportions
    for i, label in enumerate(report.active_labels):
        cells = ", ".join(f"{m}={props[m][i]:.2f}" for m in config.methods)
        print(f"{label}: {cells}")
    print(f"wrote {csv_path} and {json_path}")
    return 0


def cmd_concentration(args) -> int:
    result = simgen.concentration_experiment(
        model=args.model,
        n_grid=args.n_grid,
        p=args.p,
        replications=args.reps,
        delta=args.delta,
        seed=args.seed,
        rho=args.rho,
        threads=_resolve_threads(args),
    )
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "concentration.csv")
    json_path = os.path.join(args.out, "concentration.json")
    result.write_csv(csv_path)
    result.write_json(json_path)
    for n, f in zip(result.n_grid, result.frequencies):
        print(f"n={n}: tail frequency {f:.3f}")
    print(f"wrote {csv_path} and {json_path}")
    return 0


def cmd_metrics(args) -> int:
    rows = dataio._read_rows(
        dataio.TableFile(path=args.input, response=0, delimiter=args.delimiter)
    )
    header = rows[0]

    def pick(selector):
        if isinstance(selector, int):
            if not 0 <= selector < len(header):
                raise XisisError(f"column index {selector} out of range")
            return selector
        if selector not in header:
            raise XisisError(f"column {selector!r} not found; columns are {header}")
        return header.index(selector)

    t_idx, p_idx = pick(args.true_col), pick(args.pred_col)
    body = rows[1:] if any(not dataio._is_number(c) for c in header) else rows
    try:
        y_true = np.array([float(r[t_idx]) for r in body])
        y_pred = np.array([float(r[p_idx]) for r in body])
    except ValueError as exc:
        raise XisisError(f"non-numeric cell in metric columns: {exc}") from exc

    binary = all(np.all((v == 0) | (v == 1)) for v in (y_true, y_pred))
    if binary:
        counts = confusion_counts(y_true, y_pred)
        precision, recall, f_meas = precision_recall_f(counts)
        payload = {
            "task": "classification",
            "tp": counts.tp,
            "fp": counts.fp,
            "fn": counts.fn,
            "tn": counts.tn,
            "precision": precision,
            "recall": recall,
            "f_measure": f_meas,
        }
    else:
        payload = {"task": "regression", "n": len(y_true), "rmse": cv_rmse(y_true, y_pred)}
    text = json.dumps(payload, indent=2)
    print(text)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "metrics.json"), "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except XisisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
