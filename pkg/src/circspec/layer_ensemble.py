"""Gram-matrix ensemble built from selected weight tensors.

Each n-dimensional weight tensor is stacked into a rectangular matrix
(leading dimension kept as rows, all trailing dimensions flattened
row-major into columns) and squared into a symmetric positive
semidefinite Gram matrix.  The resulting square matrices of mixed
orders form one ensemble.
"""

from __future__ import annotations

import numpy as np

from .ensembles import MixedMatrixEnsemble
from .tensor_ingest import WeightTensor


def stack_tensor(tensor: WeightTensor) -> np.ndarray:
    """Project an n-dimensional tensor (n >= 2) to a 2-D matrix.

    Row ``i`` is the row-major flattening of ``tensor[i, ...]``; a 2-D
    tensor passes through unchanged.  Values are promoted to float64
    for the numerical work downstream.
    """
    if tensor.ndim < 2:
        raise ValueError(f"tensor {tensor.name!r} has {tensor.ndim} dimension(s); stacking needs at least 2")
    rect = tensor.data.reshape(tensor.shape[0], -1)
    return np.ascontiguousarray(rect, dtype=np.float64)


def gram_square(rect: np.ndarray) -> np.ndarray:
    """Gram matrix ``rect @ rect.T``, stored exactly symmetric.

    The upper triangle is computed and mirrored so downstream symmetry
    checks can demand exact equality.
    """
    rect = np.asarray(rect, dtype=np.float64)
    if rect.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {rect.shape}")
    gram = rect @ rect.T
    return np.triu(gram) + np.triu(gram, 1).T


def build_layer_ensemble(tensors: list[WeightTensor], label: str) -> MixedMatrixEnsemble:
    """Gram-square every tensor, in input order, into one mixed ensemble."""
    if not tensors:
        raise ValueError("cannot build an ensemble from an empty tensor list")
    members = [gram_square(stack_tensor(t)) for t in tensors]
    return MixedMatrixEnsemble(members=members, source_label=label)
