"""Writer for the neutral tensor container.

Layout: 8-byte little-endian header length, UTF-8 JSON header mapping
tensor names to ``{"dtype", "shape", "data_offsets"}`` plus a reserved
``"__metadata__"`` string map, then the raw little-endian row-major
payloads back to back.  Offsets are relative to the end of the header.
"""

from __future__ import annotations

import json
import struct

import numpy as np

_TAGS = {np.dtype("<f4"): "F32", np.dtype("<f8"): "F64"}


def write_tensor_file(arrays: list[tuple[str, np.ndarray]], metadata: dict[str, str]) -> bytes:
    """Serialize named arrays (in order) with the given string metadata.

    Output bytes are a pure function of the inputs, so identical inputs
    re-export byte-for-byte.
    """
    header: dict = {}
    payload = bytearray()
    for name, array in arrays:
        array = np.ascontiguousarray(array)
        if array.dtype not in _TAGS:
            raise ValueError(f"tensor {name!r}: dtype {array.dtype} not supported (float32/float64 only)")
        if name in header:
            raise ValueError(f"duplicate tensor name {name!r}")
        raw = array.tobytes()
        begin = len(payload)
        payload += raw
        header[name] = {
            "dtype": _TAGS[array.dtype],
            "shape": [int(p) for p in array.shape],
            "data_offsets": [begin, begin + len(raw)],
        }
    if metadata:
        header["__metadata__"] = {str(k): str(v) for k, v in metadata.items()}
    blob = json.dumps(header, ensure_ascii=True).encode("utf-8")
    return struct.pack("<Q", len(blob)) + blob + bytes(payload)


def layer_order_value(names: list[str]) -> str:
    """Encode an explicit tensor order for the ``layer_order`` metadata key."""
    return json.dumps(list(names))
