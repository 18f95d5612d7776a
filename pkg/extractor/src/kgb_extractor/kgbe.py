"""KGBE binary writer and header reader.

Layout, all little-endian, no padding:

    magic  4 bytes   b"KGBE"
    u32    version   (1)
    u32    dim
    u32    pair_count
    per pair:
        u32 src_rows, u32 mt_rows
        src_rows x dim float32 row-major, then mt_rows x dim float32

This file is the contract with the scoring package; nothing else is shared.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DescribeError

MAGIC = b"KGBE"
VERSION = 1

_HEADER = struct.Struct("<4sIII")
_PAIR_HEADER = struct.Struct("<II")


def write_kgbe(
    pairs: Sequence[tuple[np.ndarray, np.ndarray]], dim: int, path: str | Path
) -> None:
    """Write (src, mt) float32 matrix pairs to ``path`` in the given order."""
    if not pairs:
        raise ValueError("no pairs to write")
    with open(path, "wb") as f:
        f.write(_HEADER.pack(MAGIC, VERSION, dim, len(pairs)))
        for k, (src, mt) in enumerate(pairs):
            for side, m in (("src", src), ("mt", mt)):
                if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] != dim:
                    raise ValueError(f"pair {k} {side}: bad shape {m.shape}, need (rows>=1, {dim})")
            f.write(_PAIR_HEADER.pack(src.shape[0], mt.shape[0]))
            f.write(np.ascontiguousarray(src, dtype="<f4").tobytes())
            f.write(np.ascontiguousarray(mt, dtype="<f4").tobytes())


@dataclass(frozen=True)
class KgbeHeader:
    version: int
    dim: int
    pair_count: int


def read_header(path: str | Path) -> KgbeHeader:
    """Parse just the 16-byte file header."""
    try:
        with open(path, "rb") as f:
            head = f.read(_HEADER.size)
    except OSError as e:
        raise DescribeError(f"{path}: {e.strerror or e}") from e
    if len(head) < _HEADER.size:
        raise DescribeError(f"{path}: truncated header ({len(head)} bytes)")
    magic, version, dim, pair_count = _HEADER.unpack(head)
    if magic != MAGIC:
        raise DescribeError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise DescribeError(f"{path}: unsupported version {version}")
    return KgbeHeader(version=version, dim=dim, pair_count=pair_count)
