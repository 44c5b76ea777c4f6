"""Standalone LSD1 writer.

The byte layout (all integers little-endian): 4-byte magic ``LSD1``,
u16 version (1), u16 layer count L, u64 point count n, L u32 per-layer
dimensionalities, u16 name length, UTF-8 name, n label bytes, then L
row-major float32 blocks of shape n x d_j in ascending layer order.
"""

from __future__ import annotations

import struct
from typing import BinaryIO, Sequence

import numpy as np

MAGIC = b"LSD1"
VERSION = 1


def write_lsd1(
    labels: np.ndarray,
    layers: Sequence[np.ndarray],
    name: str,
    sink: BinaryIO,
) -> int:
    """Write one dump; returns the number of bytes written."""
    labels = np.asarray(labels)
    n = labels.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 examples, got {n}")
    if ((labels != 0) & (labels != 1)).any():
        raise ValueError("labels must all be 0 or 1")
    if not layers:
        raise ValueError("need at least one layer")
    encoded_name = name.encode("utf-8")
    if len(encoded_name) > 0xFFFF:
        raise ValueError("dataset name longer than 65535 bytes")

    blocks = []
    dims = []
    for j, layer in enumerate(layers, start=1):
        arr = np.ascontiguousarray(layer, dtype="<f4")
        if arr.ndim != 2 or arr.shape[0] != n:
            raise ValueError(f"layer {j} shape {arr.shape} does not match n={n}")
        if not np.isfinite(arr).all():
            raise ValueError(f"layer {j} contains non-finite values")
        dims.append(arr.shape[1])
        blocks.append(arr)

    out = bytearray()
    out += struct.pack("<4sHHQ", MAGIC, VERSION, len(blocks), n)
    out += struct.pack(f"<{len(blocks)}I", *dims)
    out += struct.pack("<H", len(encoded_name))
    out += encoded_name
    out += labels.astype(np.uint8).tobytes()
    for arr in blocks:
        out += arr.tobytes()
    sink.write(bytes(out))
    return len(out)
