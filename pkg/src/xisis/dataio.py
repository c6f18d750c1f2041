"""CSV ingestion, standardization, and result serialization.

Parsing is strict: a missing or non-numeric cell fails the run with its
line and column named, rather than being silently imputed. Floats are
written with 17 significant digits so emitted files re-read bit-exactly.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInput
from .screening import DataMatrix, ScoreVector, ScreeningResult
from .validation import is_constant

__all__ = [
    "TableFile",
    "ingest_csv",
    "standardize",
    "format_float",
    "write_scores_csv",
    "write_scores_json",
    "write_selected_json",
]

_MAX_REPORTED_CELLS = 20


def format_float(x: float) -> str:
    """17-significant-digit decimal form; parses back to the same double."""
    return format(float(x), ".17g")


@dataclass
class TableFile:
    """How to read one CSV file: location, dialect, and response selector.

    ``response`` is a column name or a 0-based column index (positions
    count all columns of the file). ``header`` may be True, False, or
    "auto", which treats the first row as a header when any of its cells
    fails to parse as a number. ``labels`` maps response strings to
    numbers (for example {"ALL": 0, "AML": 1}). Columns named in
    ``drop_columns`` are ignored entirely.
    """

    path: str
    response: str | int
    delimiter: str = ","
    header: bool | str = "auto"
    labels: dict[str, float] | None = None
    drop_columns: tuple[str, ...] = field(default_factory=tuple)


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def _read_rows(tf: TableFile) -> list[list[str]]:
    try:
        with open(tf.path, newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh, delimiter=tf.delimiter)]
    except OSError as exc:
        raise InvalidInput(f"cannot read {tf.path}: {exc}") from exc
    rows = [row for row in rows if row and any(cell.strip() for cell in row)]
    if not rows:
        raise InvalidInput(f"{tf.path} contains no data")
    widths = {len(row) for row in rows}
    if len(widths) != 1:
        bad = next(i for i, row in enumerate(rows) if len(row) != len(rows[0]))
        raise InvalidInput(
            f"{tf.path}: row {bad + 1} has {len(rows[bad])} cells, expected {len(rows[0])}"
        )
    return rows


def ingest_csv(tf: TableFile) -> DataMatrix:
    """Parse a CSV file into a DataMatrix, splitting out the response.

    The response is binary iff its distinct values are exactly {0, 1}
    (string labels can be mapped there via ``tf.labels``). Missing and
    non-numeric cells fail with their coordinates listed.
    """
    rows = _read_rows(tf)
    width = len(rows[0])

    has_header = tf.header
    if has_header == "auto":
        has_header = any(not _is_number(cell) for cell in rows[0])
    if has_header:
        col_names = [cell.strip() for cell in rows[0]]
        data_rows = rows[1:]
        first_line = 2
    else:
        col_names = [f"x{j + 1}" for j in range(width)]
        data_rows = rows
        first_line = 1
    if not data_rows:
        raise InvalidInput(f"{tf.path} has a header but no data rows")

    if isinstance(tf.response, int):
        if not 0 <= tf.response < width:
            raise InvalidInput(
                f"response index {tf.response} out of range for {width} columns"
            )
        response_idx = tf.response
    else:
        if not has_header:
            raise InvalidInput(
                f"response {tf.response!r} is a name but the file has no header; "
                "use a 0-based index"
            )
        try:
            response_idx = col_names.index(tf.response)
        except ValueError:
            raise InvalidInput(
                f"response column {tf.response!r} not found; columns are {col_names}"
            ) from None

    dropped = set()
    for name in tf.drop_columns:
        if name not in col_names:
            raise InvalidInput(f"drop column {name!r} not found in {tf.path}")
        dropped.add(col_names.index(name))
    if response_idx in dropped:
        raise InvalidInput("the response column cannot be dropped")

    predictor_idx = [j for j in range(width) if j != response_idx and j not in dropped]
    if not predictor_idx:
        raise InvalidInput(f"{tf.path} has no predictor columns besides the response")

    missing: list[str] = []
    bad: list[str] = []

    def coord(i: int, j: int) -> str:
        return f"line {first_line + i}, column {col_names[j]!r}"

    n = len(data_rows)
    X = np.empty((n, len(predictor_idx)))
    y = np.empty(n)
    for i, row in enumerate(data_rows):
        for out_j, j in enumerate(predictor_idx):
            cell = row[j].strip()
            if not cell:
                missing.append(coord(i, j))
            elif not _is_number(cell):
                bad.append(f"{coord(i, j)}: {cell!r}")
            else:
                X[i, out_j] = float(cell)
        cell = row[response_idx].strip()
        if not cell:
            missing.append(coord(i, response_idx))
        elif tf.labels is not None:
            if cell not in tf.labels:
                bad.append(f"{coord(i, response_idx)}: unmapped label {cell!r}")
            else:
                y[i] = float(tf.labels[cell])
        elif not _is_number(cell):
            bad.append(f"{coord(i, response_idx)}: {cell!r} (use labels to map strings)")
        else:
            y[i] = float(cell)

    if missing:
        shown = "; ".join(missing[:_MAX_REPORTED_CELLS])
        more = "" if len(missing) <= _MAX_REPORTED_CELLS else f" (+{len(missing) - _MAX_REPORTED_CELLS} more)"
        raise InvalidInput(f"{tf.path}: missing values at {shown}{more}")
    if bad:
        shown = "; ".join(bad[:_MAX_REPORTED_CELLS])
        more = "" if len(bad) <= _MAX_REPORTED_CELLS else f" (+{len(bad) - _MAX_REPORTED_CELLS} more)"
        raise InvalidInput(f"{tf.path}: non-numeric cells at {shown}{more}")

    vals = np.unique(y)
    kind = "binary" if len(vals) == 2 and vals[0] == 0.0 and vals[1] == 1.0 else "continuous"
    names = tuple(col_names[j] for j in predictor_idx)
    return DataMatrix(X, y, response_kind=kind, names=names)


def standardize(data: DataMatrix) -> DataMatrix:
    """Rescale each predictor column to mean 0 and variance 1 (n-1 divisor).

    Constant columns are left untouched and reported through
    ``warnings.warn``. The response is never touched. Idempotent up to
    rounding on already-standardized columns.
    """
    X = data.X.copy()
    for k in range(data.p):
        col = X[:, k]
        if is_constant(col):
            warnings.warn(
                f"column {k} ({data.names[k]}) is constant and was not standardized",
                stacklevel=2,
            )
            continue
        sd = np.sqrt(((col - col.mean()) ** 2).sum() / (data.n - 1))
        X[:, k] = (col - col.mean()) / sd
    return DataMatrix(X, data.y.copy(), response_kind=data.response_kind, names=data.names)


def _score_rows(names, sv: ScoreVector, result: ScreeningResult):
    p = sv.p
    rank_of = np.empty(p, dtype=np.int64)
    rank_of[result.ranking] = np.arange(1, p + 1)
    mask = result.support_mask
    for k in range(p):
        yield k, names[k], sv.scores[k], int(rank_of[k]), int(mask[k])


def write_scores_csv(path, names, sv: ScoreVector, result: ScreeningResult) -> None:
    """Per-column scores: index, name, score, rank, selected."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "name", "score", "rank", "selected"])
        for k, name, score, rank, sel in _score_rows(names, sv, result):
            writer.writerow([k, name, format_float(score), rank, sel])


def write_scores_json(path, names, sv: ScoreVector, result: ScreeningResult) -> None:
    rows = [
        {"index": k, "name": name, "score": score, "rank": rank, "selected": bool(sel)}
        for k, name, score, rank, sel in _score_rows(names, sv, result)
    ]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"method": sv.method, "tie_seed": sv.tie_seed, "scores": rows}, fh, indent=2)
        fh.write("\n")


def write_selected_json(path, names, sv: ScoreVector, result: ScreeningResult, n: int) -> None:
    """The selected set with full selector parameters and seeds echoed."""
    payload = {
        "method": sv.method,
        "tie_seed": sv.tie_seed,
        "n": n,
        "p": sv.p,
        "selector": result.selector,
        "selected_indices": [int(k) for k in result.selected],
        "selected_names": [names[k] for k in result.selected],
        "warnings": list(sv.warnings),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
