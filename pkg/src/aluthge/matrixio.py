"""Matrix file format: minimal JSON with explicit [re, im] entry pairs.

    {"rows": 2, "cols": 2, "data": [[[0.0, 0.0], [1.0, 0.0]],
                                    [[0.0, 0.0], [0.0, 0.0]]]}

Numbers round-trip exactly (shortest repr of doubles); writes are atomic
(temp file + rename).
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .linalg import validate_matrix

__all__ = ["MatrixFileError", "load_matrix", "save_matrix", "matrix_to_obj", "matrix_from_obj", "atomic_write_text"]


class MatrixFileError(ValueError):
    """Raised for malformed matrix files."""


def matrix_to_obj(m) -> dict:
    m = validate_matrix(m)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def matrix_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise MatrixFileError("matrix file must contain a JSON object")
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFileError(f"missing or malformed field: {exc}") from exc
    if rows < 1 or cols < 1:
        raise MatrixFileError("rows and cols must be positive")
    if len(data) != rows or any(len(row) != cols for row in data):
        raise MatrixFileError(f"data shape does not match {rows}x{cols}")
    try:
        m = np.array([[complex(re, im) for re, im in row] for row in data], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise MatrixFileError(f"entries must be [re, im] pairs: {exc}") from exc
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise MatrixFileError("entries must be finite")
    return m


def load_matrix(path) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"invalid JSON in {path}: {exc}") from exc
    return matrix_from_obj(obj)


def atomic_write_text(path, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_matrix(path, m) -> None:
    atomic_write_text(path, json.dumps(matrix_to_obj(m)) + "\n")
