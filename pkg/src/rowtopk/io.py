"""Binary matrix/result files.

Matrix (RTKM): magic "RTKM", u32 version (=1), u64 n_rows, u64 n_cols, then
n_rows * n_cols IEEE-754 binary32 values row-major. Little-endian throughout.

Result (RTKR): same header scheme with magic "RTKR" and n_cols = k, then the
selected values (N*k binary32) followed by the selected indices (N*k u32).
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .batch import BatchResult, as_matrix
from .errors import BadMagicError, TruncatedFileError

MATRIX_MAGIC = b"RTKM"
RESULT_MAGIC = b"RTKR"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sIQQ")  # magic, version, n_rows, n_cols


def _read_exact(fh, n: int, what: str) -> bytes:
    buf = fh.read(n)
    if len(buf) != n:
        raise TruncatedFileError(f"unexpected end of file while reading {what}")
    return buf


def _read_header(fh, magic: bytes, path) -> tuple[int, int]:
    raw = _read_exact(fh, _HEADER.size, "header")
    got, version, n_rows, n_cols = _HEADER.unpack(raw)
    if got != magic:
        raise BadMagicError(f"{path}: expected magic {magic!r}, found {got!r}")
    if version != FORMAT_VERSION:
        raise BadMagicError(f"{path}: unsupported format version {version}")
    if n_rows < 1 or n_cols < 1:
        raise TruncatedFileError(f"{path}: header declares empty payload {n_rows}x{n_cols}")
    return int(n_rows), int(n_cols)


def save_matrix(matrix, path) -> None:
    m = as_matrix(matrix)
    n_rows, n_cols = m.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MATRIX_MAGIC, FORMAT_VERSION, n_rows, n_cols))
        fh.write(np.ascontiguousarray(m, dtype="<f4").tobytes())


def load_matrix(path) -> np.ndarray:
    path = Path(path)
    with open(path, "rb") as fh:
        n_rows, n_cols = _read_header(fh, MATRIX_MAGIC, path)
        payload = _read_exact(fh, n_rows * n_cols * 4, "matrix payload")
    data = np.frombuffer(payload, dtype="<f4").reshape(n_rows, n_cols)
    return as_matrix(data)  # validates NaN-freedom, returns native-order copy


def save_result(result: BatchResult, path) -> None:
    n_rows, k = result.values.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(RESULT_MAGIC, FORMAT_VERSION, n_rows, k))
        fh.write(np.ascontiguousarray(result.values, dtype="<f4").tobytes())
        fh.write(np.ascontiguousarray(result.indices, dtype="<u4").tobytes())


def load_result(path) -> BatchResult:
    path = Path(path)
    with open(path, "rb") as fh:
        n_rows, k = _read_header(fh, RESULT_MAGIC, path)
        vals = _read_exact(fh, n_rows * k * 4, "result values")
        idx = _read_exact(fh, n_rows * k * 4, "result indices")
    values = np.frombuffer(vals, dtype="<f4").reshape(n_rows, k).astype(np.float32)
    indices = np.frombuffer(idx, dtype="<u4").reshape(n_rows, k).astype(np.int32)
    return BatchResult(values=values, indices=indices)
