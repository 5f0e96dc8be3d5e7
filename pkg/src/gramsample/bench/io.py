"""Matrix readers (Matrix Market, dense CSV) and result writers."""

import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from ..errors import ParseError, RaggedRowsError, UnsupportedFieldError
from ..matcore import as_matrix

RESULT_COLUMNS = (
    "strategy",
    "c",
    "trials",
    "min_error",
    "mean_error",
    "max_error",
    "bound_thm41",
    "bound_thm42",
)

RESULTS_JSON_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["columns", "rows"],
    "properties": {
        "columns": {"type": "array", "items": {"type": "string"}},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": list(RESULT_COLUMNS),
                "properties": {
                    "strategy": {"type": "string"},
                    "c": {"type": "integer", "minimum": 1},
                    "trials": {"type": "integer", "minimum": 1},
                    "min_error": {"type": "number", "minimum": 0},
                    "mean_error": {"type": "number", "minimum": 0},
                    "max_error": {"type": "number", "minimum": 0},
                    "bound_thm41": {"type": ["number", "null"], "minimum": 0},
                    "bound_thm42": {"type": ["number", "null"], "minimum": 0},
                    "success_rate": {"type": ["number", "null"], "minimum": 0, "maximum": 1},
                },
            },
        },
    },
}


def _data_lines(lines):
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line and not line.startswith("%"):
            yield lineno, line


def _float(token, lineno):
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}", lineno) from None


def _int(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", lineno) from None


def parse_matrix_market(text):
    """Parse Matrix Market text (coordinate or array; real/integer; general/symmetric/skew-symmetric)."""
    lines = text.splitlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise ParseError("missing %%MatrixMarket header", 1)
    header = lines[0].split()
    if len(header) != 5:
        raise ParseError("header must have 5 fields", 1)
    _, obj, fmt, field, symmetry = (h.lower() for h in header)
    if obj != "matrix":
        raise UnsupportedFieldError(f"object {obj!r} is not a matrix", 1)
    if fmt not in ("coordinate", "array"):
        raise ParseError(f"unknown format {fmt!r}", 1)
    if field not in ("real", "integer", "double"):
        raise UnsupportedFieldError(f"field {field!r} is not supported (real or integer only)", 1)
    if symmetry not in ("general", "symmetric", "skew-symmetric"):
        raise UnsupportedFieldError(f"symmetry {symmetry!r} is not supported", 1)

    body = _data_lines(lines[1:])
    try:
        lineno, size_line = next(body)
    except StopIteration:
        raise ParseError("missing size line", len(lines)) from None
    lineno += 1
    sizes = size_line.split()
    expected = 3 if fmt == "coordinate" else 2
    if len(sizes) != expected:
        raise ParseError(f"size line needs {expected} integers", lineno)
    m, n = _int(sizes[0], lineno), _int(sizes[1], lineno)
    if m < 1 or n < 1:
        raise ParseError("matrix dimensions must be positive", lineno)
    if symmetry != "general" and m != n:
        raise ParseError("symmetric storage requires a square matrix", lineno)
    A = np.zeros((m, n))
    sign = -1.0 if symmetry == "skew-symmetric" else 1.0

    if fmt == "coordinate":
        nnz = _int(sizes[2], lineno)
        count = 0
        for lineno, line in body:
            lineno += 1
            parts = line.split()
            if len(parts) != 3:
                raise ParseError("coordinate entry needs 'row col value'", lineno)
            i, j = _int(parts[0], lineno) - 1, _int(parts[1], lineno) - 1
            if not (0 <= i < m and 0 <= j < n):
                raise ParseError(f"index ({i + 1}, {j + 1}) out of range", lineno)
            v = _float(parts[2], lineno)
            A[i, j] += v
            if symmetry != "general" and i != j:
                A[j, i] += sign * v
            count += 1
        if count != nnz:
            raise ParseError(f"expected {nnz} entries, found {count}", len(lines))
    else:
        if symmetry == "general":
            slots = [(i, j) for j in range(n) for i in range(m)]
        else:
            lo = 0 if symmetry == "symmetric" else 1
            slots = [(i, j) for j in range(n) for i in range(j + lo, m)]
        values = []
        for lineno, line in body:
            for token in line.split():
                values.append(_float(token, lineno + 1))
        if len(values) != len(slots):
            raise ParseError(f"expected {len(slots)} values, found {len(values)}", len(lines))
        for (i, j), v in zip(slots, values):
            A[i, j] = v
            if symmetry != "general" and i != j:
                A[j, i] = sign * v
    return as_matrix(A)


def read_matrix_market(path):
    return parse_matrix_market(Path(path).read_text())


def parse_dense_csv(text):
    rows = []
    width = None
    for lineno, record in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not record or all(not cell.strip() for cell in record):
            continue
        row = [_float(cell.strip(), lineno) for cell in record]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise RaggedRowsError(f"row has {len(row)} values, expected {width}", lineno)
        rows.append(row)
    if not rows:
        raise ParseError("no data rows")
    return as_matrix(np.array(rows))


def read_dense_csv(path):
    return parse_dense_csv(Path(path).read_text())


def read_matrix(path):
    """Read ``.mtx`` as Matrix Market, anything else as dense CSV."""
    path = Path(path)
    if path.suffix.lower() == ".mtx":
        return read_matrix_market(path)
    return read_dense_csv(path)


def _fmt(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if x is None:
        return ""
    return format(float(x), ".17g")


def _row(stat):
    return {
        "strategy": stat.strategy,
        "c": int(stat.c),
        "trials": int(stat.trials),
        "min_error": stat.min_error,
        "mean_error": stat.mean_error,
        "max_error": stat.max_error,
        "bound_thm41": stat.bound_thm41,
        "bound_thm42": stat.bound_thm42,
    }


def results_to_csv(stats):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RESULT_COLUMNS)
    for stat in stats:
        row = _row(stat)
        writer.writerow([row["strategy"]] + [_fmt(row[k]) for k in RESULT_COLUMNS[1:]])
    return buf.getvalue()


def _json_number(x):
    # JSON has no infinity; unbounded overlays are written as null
    return None if x is None or not math.isfinite(x) else float(x)


def results_to_json(stats):
    rows = []
    for stat in stats:
        row = _row(stat)
        for key in ("min_error", "mean_error", "max_error", "bound_thm41", "bound_thm42"):
            row[key] = _json_number(row[key])
        row["success_rate"] = stat.success_rate
        rows.append(row)
    # repr of a float is the shortest round-tripping form
    return json.dumps({"columns": list(RESULT_COLUMNS), "rows": rows}, indent=2) + "\n"


def emit_results(stats, fmt="csv", path=None):
    """Write TrialStats as CSV or JSON to ``path`` (stdout when ``path`` is None or '-')."""
    if fmt == "csv":
        text = results_to_csv(stats)
    elif fmt == "json":
        text = results_to_json(stats)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
    return text
