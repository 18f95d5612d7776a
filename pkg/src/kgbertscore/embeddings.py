"""Binary container for per-pair token embedding matrices (KGBE format).

Layout, all little-endian, no padding:

    magic  4 bytes   b"KGBE"
    u32    version   (currently 1)
    u32    dim       embedding dimension, constant across pairs
    u32    pair_count
    then per pair:
        u32 src_rows, u32 mt_rows
        src_rows x dim float32, row-major
        mt_rows  x dim float32, row-major

Files store raw float32 hidden states; row normalization happens at load
so one file serves any downstream normalization policy. Scoring arithmetic
runs in float64 after load.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import EmbeddingError

MAGIC = b"KGBE"
VERSION = 1

_HEADER = struct.Struct("<4sIII")
_PAIR_HEADER = struct.Struct("<II")

# Rows with an L2 norm below this are degenerate: normalizing them would
# amplify noise into a unit vector, so scoring must not proceed.
MIN_ROW_NORM = 1e-12


@dataclass(frozen=True)
class EmbeddingSet:
    """Loaded contents of a KGBE file: one (src, mt) matrix pair per record."""

    dim: int
    pairs: tuple[tuple[np.ndarray, np.ndarray], ...]
    normalized: bool

    @property
    def pair_count(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def _check_matrix(m: np.ndarray, dim: int | None, what: str) -> int:
    if m.ndim != 2:
        raise EmbeddingError(f"{what}: expected a 2-D matrix, got {m.ndim}-D")
    rows, d = m.shape
    if rows < 1:
        raise EmbeddingError(f"{what}: zero rows")
    if d < 1:
        raise EmbeddingError(f"{what}: zero dimension")
    if dim is not None and d != dim:
        raise EmbeddingError(f"{what}: dimension {d} != expected {dim}")
    return d


def write_embeddings(
    pairs: Sequence[tuple[np.ndarray, np.ndarray]], dim: int | None = None
) -> bytes:
    """Serialize (src, mt) matrix pairs to KGBE bytes.

    Matrices are stored as float32 exactly as given (values already in
    float32 round-trip bit-exactly). ``dim`` defaults to the dimension of
    the first matrix; every matrix must agree.
    """
    if not pairs:
        raise EmbeddingError("no pairs to write")
    if dim is None:
        dim = int(np.asarray(pairs[0][0]).shape[-1])
    out = [_HEADER.pack(MAGIC, VERSION, dim, len(pairs))]
    for k, (src, mt) in enumerate(pairs):
        src = np.ascontiguousarray(np.asarray(src, dtype="<f4"))
        mt = np.ascontiguousarray(np.asarray(mt, dtype="<f4"))
        _check_matrix(src, dim, f"pair {k} src")
        _check_matrix(mt, dim, f"pair {k} mt")
        out.append(_PAIR_HEADER.pack(src.shape[0], mt.shape[0]))
        out.append(src.tobytes())
        out.append(mt.tobytes())
    return b"".join(out)


def save_embeddings(
    pairs: Sequence[tuple[np.ndarray, np.ndarray]],
    path: str | Path,
    dim: int | None = None,
) -> None:
    data = write_embeddings(pairs, dim=dim)
    with open(path, "wb") as f:
        f.write(data)


class _Cursor:
    """Sequential reader that reports the byte offset of any shortfall."""

    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def take(self, n: int, what: str) -> bytes:
        end = self.offset + n
        if end > len(self.data):
            raise EmbeddingError(
                f"truncated file: needed {n} bytes for {what} at byte offset "
                f"{self.offset}, only {len(self.data) - self.offset} remain",
                byte_offset=self.offset,
            )
        chunk = self.data[self.offset : end]
        self.offset = end
        return chunk


def read_embeddings(data: bytes, normalize: bool = True) -> EmbeddingSet:
    """Parse KGBE bytes into an :class:`EmbeddingSet`.

    With ``normalize=True`` (the default) every row is L2-normalized and the
    matrices are float64, ready for cosine scoring. With ``normalize=False``
    the raw float32 payload is returned bit-exactly as stored.

    Raises:
        EmbeddingError: bad magic, unsupported version, truncation (with the
            byte offset), trailing bytes, non-finite values, near-zero rows
            when normalizing.
    """
    cur = _Cursor(data)
    magic, version, dim, pair_count = _HEADER.unpack(cur.take(_HEADER.size, "header"))
    if magic != MAGIC:
        raise EmbeddingError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise EmbeddingError(f"unsupported version {version}, expected {VERSION}")
    if dim < 1:
        raise EmbeddingError(f"invalid dimension {dim}")
    pairs: list[tuple[np.ndarray, np.ndarray]] = []
    for k in range(pair_count):
        src_rows, mt_rows = _PAIR_HEADER.unpack(
            cur.take(_PAIR_HEADER.size, f"pair {k} row counts")
        )
        if src_rows < 1 or mt_rows < 1:
            raise EmbeddingError(f"pair {k}: zero rows (src={src_rows}, mt={mt_rows})")
        mats = []
        for rows, side in ((src_rows, "src"), (mt_rows, "mt")):
            raw = cur.take(4 * rows * dim, f"pair {k} {side} matrix")
            m = np.frombuffer(raw, dtype="<f4").reshape(rows, dim)
            if not np.isfinite(m).all():
                raise EmbeddingError(f"pair {k} {side}: non-finite values in payload")
            mats.append(normalize_rows(m, what=f"pair {k} {side}") if normalize else m)
        pairs.append((mats[0], mats[1]))
    if cur.offset != len(data):
        raise EmbeddingError(
            f"{len(data) - cur.offset} trailing bytes after pair {pair_count - 1} "
            f"at byte offset {cur.offset}",
            byte_offset=cur.offset,
        )
    return EmbeddingSet(dim=dim, pairs=tuple(pairs), normalized=normalize)


def load_embeddings(path: str | Path, normalize: bool = True) -> EmbeddingSet:
    """Read and parse a KGBE file."""
    with open(path, "rb") as f:
        data = f.read()
    try:
        return read_embeddings(data, normalize=normalize)
    except EmbeddingError as e:
        raise EmbeddingError(f"{path}: {e}", byte_offset=e.byte_offset) from e


def normalize_rows(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Return ``m`` with every row scaled to unit L2 norm, in float64.

    Raises:
        EmbeddingError: if any row norm is below ``MIN_ROW_NORM``.
    """
    m = np.asarray(m, dtype=np.float64)
    norms = np.linalg.norm(m, axis=1)
    bad = np.nonzero(norms < MIN_ROW_NORM)[0]
    if bad.size:
        raise EmbeddingError(f"{what}: near-zero row(s) at index {bad[0]} (norm < {MIN_ROW_NORM})")
    return m / norms[:, np.newaxis]
