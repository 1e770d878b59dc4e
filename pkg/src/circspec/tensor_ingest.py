"""Weight-tensor file parsing and selection.

The on-disk container is a minimal header-plus-payload layout: an
8-byte little-endian header length, a UTF-8 JSON document mapping each
tensor name to ``{"dtype", "shape", "data_offsets"}``, then raw
little-endian row-major payloads.  A reserved ``"__metadata__"`` string
map may carry ``"architecture"`` and ``"layer_order"`` keys (the latter
a JSON-encoded list of tensor names giving network layer order).

Only 32-bit and 64-bit IEEE floats are accepted; values are returned
exactly as stored.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field

import numpy as np

LAYER_ORDER_KEY = "layer_order"
_METADATA_KEY = "__metadata__"
_DTYPES = {"F32": np.dtype("<f4"), "F64": np.dtype("<f8")}

#: Name substrings excluded by the default selection policy.  These mark
#: 1-D parameters (biases, normalization statistics) that are not layer
#: weight matrices.
DEFAULT_NAME_EXCLUDES = ("bias", "running_mean", "running_var", "num_batches_tracked")


class TensorFormatError(ValueError):
    """Raised when a weight-tensor file violates the container layout."""


@dataclass
class WeightTensor:
    """A named n-dimensional real array from a trained network layer."""

    name: str
    shape: tuple[int, ...]
    data: np.ndarray

    def __post_init__(self) -> None:
        self.shape = tuple(int(p) for p in self.shape)
        if any(p < 1 for p in self.shape):
            raise ValueError(f"tensor {self.name!r}: all shape entries must be >= 1, got {self.shape}")
        data = np.asarray(self.data)
        expected = int(np.prod(self.shape, dtype=np.int64)) if self.shape else 1
        if data.size != expected:
            raise ValueError(
                f"tensor {self.name!r}: shape {self.shape} implies {expected} values, data has {data.size}"
            )
        # keep stored dtype; row-major layout makes slices flatten predictably
        self.data = np.ascontiguousarray(data.reshape(self.shape))

    @property
    def ndim(self) -> int:
        return len(self.shape)


@dataclass
class WeightCollection:
    """Ordered tensors plus free-form string metadata (architecture, source)."""

    tensors: list[WeightTensor]
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        names = [t.name for t in self.tensors]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate tensor names: {dupes}")

    def __len__(self) -> int:
        return len(self.tensors)

    @property
    def names(self) -> list[str]:
        return [t.name for t in self.tensors]


@dataclass(frozen=True)
class SelectionPolicy:
    """Which tensors are eligible for ensemble construction.

    Gram squaring needs at least a 2-D tensor with first dimension of at
    least 2, hence the floor on both knobs.
    """

    min_ndim: int = 2
    min_order: int = 2
    name_excludes: tuple[str, ...] = DEFAULT_NAME_EXCLUDES
    max_order: int | None = None

    def __post_init__(self) -> None:
        if self.min_ndim < 2:
            raise ValueError(f"min_ndim must be >= 2, got {self.min_ndim}")
        if self.min_order < 2:
            raise ValueError(f"min_order must be >= 2, got {self.min_order}")
        object.__setattr__(self, "name_excludes", tuple(self.name_excludes))


def parse_tensor_file(data: bytes) -> WeightCollection:
    """Decode a weight-tensor file into a :class:`WeightCollection`.

    Tensor order is lexicographic by name unless the metadata carries a
    ``layer_order`` key, in which case that explicit order is used.

    Raises :class:`TensorFormatError` on malformed header length,
    undecodable metadata, unsupported element types, and overlapping or
    out-of-bounds data offsets.
    """
    if len(data) < 8:
        raise TensorFormatError(f"file too short for 8-byte header length: {len(data)} bytes")
    (header_len,) = struct.unpack_from("<Q", data, 0)
    if 8 + header_len > len(data):
        raise TensorFormatError(
            f"declared metadata length {header_len} exceeds remaining file size {len(data) - 8}"
        )
    try:
        header_text = bytes(data[8 : 8 + header_len]).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise TensorFormatError(f"metadata is not valid UTF-8: {exc}") from None
    try:
        header = json.loads(header_text)
    except json.JSONDecodeError as exc:
        raise TensorFormatError(f"metadata is not a valid JSON document: {exc}") from None
    if not isinstance(header, dict):
        raise TensorFormatError("metadata document must be a JSON object")

    metadata = header.pop(_METADATA_KEY, {})
    if not isinstance(metadata, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in metadata.items()
    ):
        raise TensorFormatError(f"{_METADATA_KEY} must be a string-to-string map")

    payload_len = len(data) - 8 - header_len
    tensors: dict[str, WeightTensor] = {}
    ranges: list[tuple[int, int, str]] = []
    for name, entry in header.items():
        tensors[name] = _decode_entry(data, 8 + header_len, payload_len, name, entry, ranges)

    ranges.sort()
    for (b0, e0, n0), (b1, e1, n1) in zip(ranges, ranges[1:]):
        if b1 < e0:
            raise TensorFormatError(f"tensors {n0!r} and {n1!r} have overlapping data offsets")

    order = sorted(tensors)
    if LAYER_ORDER_KEY in metadata:
        order = _decode_layer_order(metadata[LAYER_ORDER_KEY], set(tensors))
    return WeightCollection([tensors[name] for name in order], dict(metadata))


def _decode_entry(
    data: bytes,
    payload_start: int,
    payload_len: int,
    name: str,
    entry: object,
    ranges: list[tuple[int, int, str]],
) -> WeightTensor:
    if not isinstance(entry, dict):
        raise TensorFormatError(f"tensor {name!r}: entry must be an object")
    try:
        dtype_tag = entry["dtype"]
        shape = entry["shape"]
        offsets = entry["data_offsets"]
    except KeyError as exc:
        raise TensorFormatError(f"tensor {name!r}: missing required key {exc}") from None
    if dtype_tag not in _DTYPES:
        raise TensorFormatError(
            f"tensor {name!r}: unsupported element type {dtype_tag!r} (only F32 and F64 accepted)"
        )
    dtype = _DTYPES[dtype_tag]
    if not isinstance(shape, list) or not all(isinstance(p, int) and p >= 1 for p in shape):
        raise TensorFormatError(f"tensor {name!r}: shape must be a list of positive integers, got {shape}")
    if not (isinstance(offsets, list) and len(offsets) == 2 and all(isinstance(o, int) for o in offsets)):
        raise TensorFormatError(f"tensor {name!r}: data_offsets must be a pair of integers")
    begin, end = offsets
    if not (0 <= begin <= end <= payload_len):
        raise TensorFormatError(
            f"tensor {name!r}: data offsets [{begin}, {end}) out of bounds for payload of {payload_len} bytes"
        )
    count = int(np.prod(shape, dtype=np.int64)) if shape else 1
    if end - begin != count * dtype.itemsize:
        raise TensorFormatError(
            f"tensor {name!r}: offsets span {end - begin} bytes, expected {count * dtype.itemsize}"
        )
    ranges.append((begin, end, name))
    values = np.frombuffer(data, dtype=dtype, count=count, offset=payload_start + begin).copy()
    return WeightTensor(name=name, shape=tuple(shape), data=values)


def _decode_layer_order(raw: str, names: set[str]) -> list[str]:
    try:
        order = json.loads(raw)
    except json.JSONDecodeError:
        raise TensorFormatError(f"{LAYER_ORDER_KEY} metadata is not a JSON list") from None
    if not isinstance(order, list) or not all(isinstance(n, str) for n in order):
        raise TensorFormatError(f"{LAYER_ORDER_KEY} metadata must be a JSON list of tensor names")
    if set(order) != names or len(order) != len(names):
        raise TensorFormatError(f"{LAYER_ORDER_KEY} does not match the tensor names in the file")
    return order


def select_weight_tensors(
    collection: WeightCollection, policy: SelectionPolicy = SelectionPolicy()
) -> list[WeightTensor]:
    """Filter eligible tensors, preserving collection order.

    A tensor passes when it has at least ``min_ndim`` dimensions, its
    leading dimension lies in ``[min_order, max_order]``, and its name
    contains none of the excluded substrings.  The empty result is
    allowed.
    """
    selected = []
    for tensor in collection.tensors:
        if tensor.ndim < policy.min_ndim:
            continue
        if tensor.shape[0] < policy.min_order:
            continue
        if policy.max_order is not None and tensor.shape[0] > policy.max_order:
            continue
        if any(substr in tensor.name for substr in policy.name_excludes):
            continue
        selected.append(tensor)
    return selected
