"""Shared fixtures and hand-rolled oracles.

``build_tensor_file`` writes the binary container directly with struct
and json so parser tests never depend on the code they are checking.
"""

from __future__ import annotations

import json
import struct

import numpy as np

from circspec import WeightTensor
from circspec.rng import RngState, standard_normals

SYNTHETIC_ORDERS = (16, 28, 41, 53, 66, 78, 91, 103, 116, 128)


def build_tensor_file(
    arrays: list[tuple[str, np.ndarray]],
    metadata: dict[str, str] | None = None,
    layer_order: list[str] | None = None,
) -> bytes:
    """Independent writer for the weight-tensor container format."""
    header: dict = {}
    payload = bytearray()
    for name, arr in arrays:
        arr = np.asarray(arr)
        tag = "F64" if arr.dtype == np.float64 else "F32"
        raw = np.ascontiguousarray(arr, dtype="<f8" if tag == "F64" else "<f4").tobytes()
        begin = len(payload)
        payload += raw
        header[name] = {
            "dtype": tag,
            "shape": [int(p) for p in arr.shape],
            "data_offsets": [begin, begin + len(raw)],
        }
    meta = dict(metadata or {})
    if layer_order is not None:
        meta["layer_order"] = json.dumps(layer_order)
    if meta:
        header["__metadata__"] = meta
    blob = json.dumps(header).encode("utf-8")
    return struct.pack("<Q", len(blob)) + blob + bytes(payload)


def gaussian_layer_tensors(seed: int, orders=SYNTHETIC_ORDERS, cols_factor: int = 4) -> list[WeightTensor]:
    """Synthetic std-normal layers; cols_factor=4 keeps Gram spectra above 6."""
    tensors = []
    for i, n in enumerate(orders):
        gen = RngState(seed, i).generator()
        data = standard_normals(gen, n * cols_factor * n)
        tensors.append(WeightTensor(name=f"layer{i:02d}.weight", shape=(n, cols_factor * n), data=data))
    return tensors


def gaussian_layer_arrays(seed: int, orders=SYNTHETIC_ORDERS, cols_factor: int = 4) -> list[tuple[str, np.ndarray]]:
    """Same layers as float32 arrays, ready for build_tensor_file."""
    return [(t.name, t.data.astype(np.float32)) for t in gaussian_layer_tensors(seed, orders, cols_factor)]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion at the end of the run."""
    seen: dict[str, str] = {}
    for status in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" in nodeid:
                seen.setdefault(nodeid, status)
    if seen:
        terminalreporter.write_sep("-", "acceptance criteria")
        for nodeid in sorted(seen):
            name = nodeid.split("::")[-1]
            terminalreporter.write_line(f"{seen[nodeid].upper():8s} {name}")
