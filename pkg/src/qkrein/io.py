"""JSON matrix files and deterministic report serialization.

A matrix file holds ``{"rows": m, "cols": n, "entries": [[[w, x, y, z], ...], ...]}``
with one inner list per row. A subspace file uses the same format; its
columns are read as a spanning set.
"""

from __future__ import annotations

import json
import math
import re
from pathlib import Path

import numpy as np

from .errors import ContractViolation
from .qmatrix import QMatrix
from .quaternion import Quaternion


class MatrixFormatError(ContractViolation):
    """A matrix file is not valid JSON or does not follow the matrix schema."""


def matrix_to_json(A: QMatrix) -> dict:
    return {
        "rows": A.rows,
        "cols": A.cols,
        "entries": [[[float(c) for c in A.data[i, j]] for j in range(A.cols)] for i in range(A.rows)],
    }


def quaternion_to_json(q: Quaternion) -> list[float]:
    return [float(c) for c in q]


def _fail(source, field, msg):
    raise MatrixFormatError(f"{source}: field '{field}': {msg}")


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _is_num(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def matrix_from_json(obj, source: str = "<input>") -> QMatrix:
    """Validate a decoded matrix object and build the :class:`QMatrix`."""
    if not isinstance(obj, dict):
        _fail(source, "<root>", "expected an object with rows, cols and entries")
    for key in ("rows", "cols", "entries"):
        if key not in obj:
            _fail(source, key, "missing")
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if not _is_int(rows) or rows < 0:
        _fail(source, "rows", f"expected a non-negative integer, got {rows!r}")
    if not _is_int(cols) or cols < 0:
        _fail(source, "cols", f"expected a non-negative integer, got {cols!r}")
    if rows == 0 or cols == 0:
        _fail(source, "rows/cols", "matrix dimensions must be positive")
    if not isinstance(entries, list) or len(entries) != rows:
        _fail(source, "entries", f"expected a list of {rows} rows")
    data = np.empty((rows, cols, 4))
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            _fail(source, f"entries[{i}]", f"expected a list of {cols} quaternions")
        for j, q in enumerate(row):
            where = f"entries[{i}][{j}]"
            if not isinstance(q, list) or len(q) != 4 or not all(_is_num(c) for c in q):
                _fail(source, where, "expected [w, x, y, z] with four numbers")
            if not all(math.isfinite(c) for c in q):
                _fail(source, where, "components must be finite")
            data[i, j] = q
    return QMatrix(data)


def load_matrix(path) -> QMatrix:
    """Read a matrix file; errors name the file, line and column or the bad field."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MatrixFormatError(f"{path}: cannot read file: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return matrix_from_json(obj, source=str(path))


def save_matrix(A: QMatrix, path) -> None:
    Path(path).write_text(dumps(matrix_to_json(A)))


def _plain(obj):
    """Convert numpy scalars/arrays and non-finite floats into JSON-safe values."""
    if isinstance(obj, QMatrix):
        return matrix_to_json(obj)
    if isinstance(obj, Quaternion):
        return quaternion_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj) + 0.0  # drops the sign of -0.0
        return f if math.isfinite(f) else None
    return obj


_FLAT_LIST = re.compile(r"\[\s+([^\[\]{}\"]*?)\s+\]")


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, two-space indent, shortest round-trip floats.

    Innermost lists of scalars (quaternions, spectra) are kept on one line.
    """
    text = json.dumps(_plain(obj), sort_keys=True, indent=2, allow_nan=False)
    text = _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    return text + "\n"
