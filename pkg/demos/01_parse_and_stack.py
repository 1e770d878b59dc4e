"""Build a tiny weight-tensor file by hand, parse it, and square the layers.

Walks the ingest path end to end: raw bytes -> parsed collection ->
eligible tensors -> stacked rectangles -> symmetric Gram matrices.
"""

import json
import struct

import numpy as np

from circspec import parse_tensor_file, select_weight_tensors, stack_tensor, gram_square

# --- write a two-tensor container from scratch -------------------------------
conv = np.arange(24, dtype=np.float32).reshape(2, 3, 4)   # eligible: 3-D, leading dim 2
bias = np.ones(2, dtype=np.float32)                       # filtered out: 1-D

payload = conv.tobytes() + bias.tobytes()
header = {
    "block.conv.weight": {"dtype": "F32", "shape": [2, 3, 4], "data_offsets": [0, conv.nbytes]},
    "block.conv.bias": {"dtype": "F32", "shape": [2], "data_offsets": [conv.nbytes, len(payload)]},
    "__metadata__": {"architecture": "demo-net"},
}
blob = json.dumps(header).encode()
file_bytes = struct.pack("<Q", len(blob)) + blob + payload
print(f"container: {len(file_bytes)} bytes ({len(blob)} header + {len(payload)} payload)")

# --- parse and select ---------------------------------------------------------
collection = parse_tensor_file(file_bytes)
print(f"parsed {len(collection)} tensors from {collection.metadata['architecture']!r}:")
for t in collection.tensors:
    print(f"  {t.name}  shape={t.shape}  dtype={t.data.dtype}")

selected = select_weight_tensors(collection)
print(f"eligible for the ensemble: {[t.name for t in selected]}")

# --- stack and square ---------------------------------------------------------
for tensor in selected:
    rect = stack_tensor(tensor)
    gram = gram_square(rect)
    print(f"\n{tensor.name}: {tensor.shape} stacked to {rect.shape}")
    print("rows are row-major slices of the tensor:")
    print(rect)
    print("Gram matrix (exactly symmetric, positive semidefinite):")
    print(gram)
    print("eigenvalues:", np.linalg.eigvalsh(gram))
