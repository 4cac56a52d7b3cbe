"""Plain-text matrix files.

Format: ``#`` starts a comment (full line or trailing); the first non-comment
line holds the two dimensions ``m n``; the next m non-comment lines hold n
whitespace-separated floats each. Writers emit 17 significant digits so a
read/write round trip is bit-exact.
"""

from __future__ import annotations

import os
from typing import Iterable, TextIO, Union

import numpy as np

from .errors import MatrixFormatError
from .linalg import as_matrix

PathLike = Union[str, os.PathLike]


def _data_lines(handle: TextIO) -> Iterable[str]:
    for raw in handle:
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def _parse_block(lines: Iterable[str], what: str) -> np.ndarray:
    it = iter(lines)
    try:
        header = next(it)
    except StopIteration:
        raise MatrixFormatError(f"{what}: missing dimension header") from None
    parts = header.split()
    if len(parts) != 2:
        raise MatrixFormatError(f"{what}: dimension header must be 'm n', got {header!r}")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise MatrixFormatError(f"{what}: non-integer dimensions {header!r}") from None
    if m <= 0 or n <= 0:
        raise MatrixFormatError(f"{what}: dimensions must be positive, got {m} x {n}")
    rows = []
    for i in range(m):
        try:
            line = next(it)
        except StopIteration:
            raise MatrixFormatError(f"{what}: expected {m} rows, found {i}") from None
        fields = line.split()
        if len(fields) != n:
            raise MatrixFormatError(
                f"{what}: row {i + 1} has {len(fields)} entries, expected {n}"
            )
        try:
            rows.append([float(f) for f in fields])
        except ValueError:
            raise MatrixFormatError(f"{what}: non-numeric entry in row {i + 1}") from None
    arr = np.array(rows, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise MatrixFormatError(f"{what}: non-finite entry")
    return arr


def read_matrix(path: PathLike) -> np.ndarray:
    """Read one matrix; trailing non-comment content is an error."""
    with open(path, "r", encoding="utf-8") as handle:
        lines = list(_data_lines(handle))
    mat = _parse_block(iter(lines), str(path))
    consumed = 1 + mat.shape[0]
    if len(lines) > consumed:
        raise MatrixFormatError(f"{path}: unexpected trailing content")
    return mat


def read_matrices(path: PathLike) -> list[np.ndarray]:
    """Read consecutive matrix blocks from one file."""
    with open(path, "r", encoding="utf-8") as handle:
        lines = list(_data_lines(handle))
    out = []
    pos = 0
    while pos < len(lines):
        block = _parse_block(iter(lines[pos:]), f"{path} (block {len(out) + 1})")
        out.append(block)
        pos += 1 + block.shape[0]
    return out


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def write_matrix(target, mat, comment: str | None = None) -> None:
    """Write one matrix block to a path or an open text handle."""
    arr = as_matrix(mat, "matrix to write")

    def _emit(handle: TextIO) -> None:
        if comment:
            for line in comment.splitlines():
                handle.write(f"# {line}\n")
        handle.write(f"{arr.shape[0]} {arr.shape[1]}\n")
        for row in arr:
            handle.write(" ".join(format_float(x) for x in row) + "\n")

    if hasattr(target, "write"):
        _emit(target)
    else:
        with open(target, "w", encoding="utf-8") as handle:
            _emit(handle)
