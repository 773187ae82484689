"""Binary index files.

Layout (all integers little-endian)::

    b"FRRI"  u8 version
    header   u64 n_original, m_original, n_condensed; u32 k, c, s; u8 mode, cover
    ids      u8 kind (0 none, 1 int64, 2 utf-8) + payload
    arrays   comp_of, out_indptr, out_indices, tau, level, pi, seeds, s_plus, s_minus
    labels   per-node counts, begins, ends, packed exactness bits; then the root label

Every array is a u64 element count followed by its fixed-width elements.
"""

from __future__ import annotations

import io
import struct
from typing import BinaryIO

import numpy as np

from .graph import Graph
from .indexer import BuildParams, ReachIndex, SeedSets
from .intervals import Interval

MAGIC = b"FRRI"
VERSION = 1
_HEADER = struct.Struct("<QQQIIIBB")
_MODES = ("local", "global")
_COVERS = ("greedy", "dp")


class IndexFormatError(ValueError):
    pass


class BadMagicError(IndexFormatError):
    pass


class VersionMismatchError(IndexFormatError):
    pass


class TruncatedIndexError(IndexFormatError):
    pass


def _put(out: BinaryIO, arr, dtype: str) -> None:
    a = np.ascontiguousarray(arr, dtype=np.dtype(dtype).newbyteorder("<"))
    out.write(struct.pack("<Q", a.size))
    out.write(a.tobytes())


def _put_labels(out: BinaryIO, labels) -> None:
    _put(out, [len(s) for s in labels], "i8")
    flat = [iv for s in labels for iv in s]
    _put(out, [iv.begin for iv in flat], "i8")
    _put(out, [iv.end for iv in flat], "i8")
    bits = np.packbits(np.array([iv.exact for iv in flat], dtype=bool), bitorder="little")
    _put(out, bits, "u1")


def serialize_index(idx: ReachIndex, sink: BinaryIO) -> None:
    p = idx.params
    sink.write(MAGIC + bytes([VERSION]))
    sink.write(_HEADER.pack(idx.n_original, idx.m_original, idx.n, p.k, p.c, p.s,
                            _MODES.index(p.mode), _COVERS.index(p.cover)))
    ids = idx.ext_ids
    if ids is None:
        sink.write(b"\x00")
    elif all(isinstance(x, (int, np.integer)) for x in ids):
        sink.write(b"\x01")
        _put(sink, list(ids), "i8")
    else:
        sink.write(b"\x02")
        raw = [str(x).encode() for x in ids]
        _put(sink, [len(r) for r in raw], "u4")
        _put(sink, np.frombuffer(b"".join(raw), dtype=np.uint8), "u1")
    _put(sink, idx.comp_of, "i8")
    _put(sink, idx.dag.out_indptr, "i8")
    _put(sink, idx.dag.out_indices, "i8")
    _put(sink, idx.tau, "i8")
    _put(sink, idx.level, "i8")
    _put(sink, idx.pi, "i8")
    _put(sink, idx.seeds.seeds, "i8")
    _put(sink, idx.seeds.s_plus, "u8")
    _put(sink, idx.seeds.s_minus, "u8")
    _put_labels(sink, idx.labels)
    _put_labels(sink, [idx.root_label])


def dumps(idx: ReachIndex) -> bytes:
    buf = io.BytesIO()
    serialize_index(idx, buf)
    return buf.getvalue()


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, nbytes: int) -> bytes:
        end = self.pos + nbytes
        if end > len(self.data):
            raise TruncatedIndexError(f"index file truncated at byte {len(self.data)} (needed {end})")
        chunk = self.data[self.pos:end]
        self.pos = end
        return chunk

    def array(self, dtype: str, expect: int | None = None) -> np.ndarray:
        (count,) = struct.unpack("<Q", self.take(8))
        dt = np.dtype(dtype).newbyteorder("<")
        if count > len(self.data):
            raise TruncatedIndexError(f"array length {count} exceeds file size")
        arr = np.frombuffer(self.take(count * dt.itemsize), dtype=dt).astype(dtype)
        if expect is not None and count != expect:
            raise IndexFormatError(f"array has {count} elements, expected {expect}")
        return arr

    def labels(self, nodes: int) -> list:
        counts = self.array("i8", nodes)
        total = int(counts.sum())
        begins = self.array("i8", total).tolist()
        ends = self.array("i8", total).tolist()
        bits = self.array("u1", (total + 7) // 8)
        exact = np.unpackbits(bits, count=total, bitorder="little").astype(bool).tolist()
        out, pos = [], 0
        for c in counts.tolist():
            out.append(tuple(Interval(begins[i], ends[i], exact[i]) for i in range(pos, pos + c)))
            pos += c
        return out


def deserialize_index(source: BinaryIO | bytes) -> ReachIndex:
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    r = _Reader(bytes(data))
    if len(data) < len(MAGIC) or r.take(4) != MAGIC:
        raise BadMagicError("not a FERRARI index file")
    version = r.take(1)[0]
    if version != VERSION:
        raise VersionMismatchError(f"index version {version}, this library reads {VERSION}")
    n0, m0, nc, k, c, s, mode, cover = _HEADER.unpack(r.take(_HEADER.size))
    if mode >= len(_MODES) or cover >= len(_COVERS):
        raise IndexFormatError("unknown build mode or cover algorithm")
    kind = r.take(1)[0]
    if kind == 0:
        ids = None
    elif kind == 1:
        ids = tuple(r.array("i8", n0).tolist())
    elif kind == 2:
        lens = r.array("u4", n0).tolist()
        blob = r.array("u1").tobytes()
        ids, pos = [], 0
        for ln in lens:
            ids.append(blob[pos:pos + ln].decode())
            pos += ln
        ids = tuple(ids)
    else:
        raise IndexFormatError(f"unknown id-map kind {kind}")
    comp_of = r.array("i8", n0)
    indptr = r.array("i8", nc + 1)
    indices = r.array("i8")
    src = np.repeat(np.arange(nc, dtype=np.int64), np.diff(indptr))
    dag = Graph.from_edges(nc, np.column_stack([src, indices]))
    tau = r.array("i8", nc)
    level = r.array("i8", nc)
    pi = r.array("i8", nc)
    seeds = SeedSets(r.array("i8"), r.array("u8", nc), r.array("u8", nc))
    labels = r.labels(nc)
    root_label = r.labels(1)[0]
    if r.pos != len(r.data):
        raise IndexFormatError(f"{len(r.data) - r.pos} trailing bytes after index")
    params = BuildParams(k=k, mode=_MODES[mode], c=c, s=s, cover=_COVERS[cover])
    return ReachIndex(dag=dag, comp_of=comp_of, ext_ids=ids, n_original=n0, m_original=m0,
                      tau=tau, level=level, pi=pi, labels=labels, seeds=seeds,
                      params=params, root_label=root_label)


def save_index(idx: ReachIndex, path) -> None:
    with open(path, "wb") as f:
        serialize_index(idx, f)


def load_index(path) -> ReachIndex:
    with open(path, "rb") as f:
        return deserialize_index(f)
