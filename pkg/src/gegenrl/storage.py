"""Binary container for precomputed integration matrices.

Layout (all integers and floats little-endian)::

    offset  size  content
    0       8     magic b"FSGIM\\x00\\r\\n"
    8       4     uint32 header length H
    12      H     UTF-8 JSON header
    12+H    P     payload: float64 arrays, row-major, in header["arrays"] order

The header carries ``schema_version``, ``alpha``, ``n``, ``lambda``, ``n_q``,
``lambda_q``, ``M``, the array names and shapes, ``payload_bytes`` and a
SHA-256 ``checksum`` of the payload. JSON floats are written with
``repr`` precision, so scalars survive the round trip bit for bit.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import struct

import numpy as np

from gegenrl.core import Fsgim
from gegenrl.exceptions import ChecksumError, FormatError

MAGIC = b"FSGIM\x00\r\n"
SCHEMA_VERSION = 1
_ARRAYS = ("points", "grid_nodes", "quad_nodes", "quad_weights", "generator", "scaled")


def _encode(fsgim: Fsgim) -> bytes:
    arrays = [np.ascontiguousarray(getattr(fsgim, name), dtype="<f8") for name in _ARRAYS]
    payload = b"".join(a.tobytes() for a in arrays)
    header = {
        "schema_version": SCHEMA_VERSION,
        "alpha": fsgim.alpha,
        "n": fsgim.n,
        "lambda": fsgim.lambda_,
        "n_q": fsgim.n_q,
        "lambda_q": fsgim.lambda_q,
        "M": fsgim.M,
        "dtype": "<f8",
        "arrays": [[name, list(a.shape)] for name, a in zip(_ARRAYS, arrays)],
        "payload_bytes": len(payload),
        "checksum": "sha256:" + hashlib.sha256(payload).hexdigest(),
        "meta": fsgim.meta,
    }
    head = json.dumps(header, sort_keys=True).encode("utf-8")
    return MAGIC + struct.pack("<I", len(head)) + head + payload


def _read_exact(fh, size: int, what: str) -> bytes:
    data = fh.read(size)
    if len(data) != size:
        raise ChecksumError(f"file truncated while reading {what} "
                            f"({len(data)} of {size} bytes)")
    return data


def _decode(fh) -> Fsgim:
    magic = fh.read(len(MAGIC))
    if magic != MAGIC:
        if len(magic) < len(MAGIC) and MAGIC.startswith(magic) and magic:
            raise ChecksumError("file truncated inside the magic number")
        raise FormatError("not an FSGIM file (bad magic number)")
    (head_len,) = struct.unpack("<I", _read_exact(fh, 4, "header length"))
    try:
        header = json.loads(_read_exact(fh, head_len, "header").decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"corrupt FSGIM header: {exc}") from exc

    version = header.get("schema_version")
    if version != SCHEMA_VERSION:
        raise FormatError(f"unsupported FSGIM schema_version {version!r}; "
                          f"this library reads version {SCHEMA_VERSION}")
    try:
        payload = _read_exact(fh, header["payload_bytes"], "payload")
        expected = header["checksum"]
        shapes = [(name, tuple(shape)) for name, shape in header["arrays"]]
    except KeyError as exc:
        raise FormatError(f"FSGIM header lacks field {exc}") from exc
    if "sha256:" + hashlib.sha256(payload).hexdigest() != expected:
        raise ChecksumError("FSGIM payload checksum mismatch")
    if fh.read(1):
        raise FormatError("trailing bytes after FSGIM payload")
    if [name for name, _ in shapes] != list(_ARRAYS):
        raise FormatError(f"unexpected array list {[name for name, _ in shapes]}")

    arrays, offset = {}, 0
    for name, shape in shapes:
        count = int(np.prod(shape)) if shape else 1
        arrays[name] = np.frombuffer(payload, dtype="<f8", count=count,
                                     offset=offset).reshape(shape).astype(float)
        offset += 8 * count
    return Fsgim(alpha=header["alpha"], n=header["n"], lambda_=header["lambda"],
                 n_q=header["n_q"], lambda_q=header["lambda_q"], meta=header.get("meta", {}),
                 **arrays)


def dumps_fsgim(fsgim: Fsgim) -> bytes:
    return _encode(fsgim)


def loads_fsgim(data: bytes) -> Fsgim:
    return _decode(io.BytesIO(data))


def save_fsgim(fsgim: Fsgim, sink) -> None:
    """Write ``fsgim`` to a path or a binary file object."""
    data = _encode(fsgim)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "wb") as fh:
            fh.write(data)
    else:
        sink.write(data)


def load_fsgim(source) -> Fsgim:
    """Read an FSGIM written by :func:`save_fsgim` from a path or binary file object."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return _decode(fh)
    return _decode(source)
