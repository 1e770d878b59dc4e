"""Shared mixed-ensemble container.

A mixed matrix ensemble is an ordered collection of real square
matrices whose orders may differ.  Both the weight-derived Gram
ensemble and the sampled circular-unitary ensemble are carried in this
one type so the pooling and density code downstream stays agnostic to
where the matrices came from.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class MixedMatrixEnsemble:
    """Ordered set of real square matrices of (possibly) mixed orders."""

    members: list[np.ndarray]
    orders: tuple[int, ...] = field(default=())
    source_label: str = ""

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("ensemble must contain at least one member")
        inferred = []
        for i, member in enumerate(self.members):
            m = np.asarray(member)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ValueError(f"member {i} is not a square matrix: shape {m.shape}")
            if m.shape[0] < 2:
                raise ValueError(f"member {i} has order {m.shape[0]}; minimum order is 2")
            if np.iscomplexobj(m):
                raise ValueError(f"member {i} is complex; ensemble members must be real")
            inferred.append(m.shape[0])
        if not self.orders:
            self.orders = tuple(inferred)
        elif tuple(self.orders) != tuple(inferred):
            raise ValueError(f"orders {tuple(self.orders)} do not match member dimensions {tuple(inferred)}")
        else:
            self.orders = tuple(self.orders)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def total_order(self) -> int:
        """Sum of member orders, i.e. the pooled eigenvalue count."""
        return int(sum(self.orders))
