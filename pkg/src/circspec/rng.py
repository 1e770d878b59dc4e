"""Deterministic random streams for ensemble sampling.

All randomness in this package flows through :class:`RngState`, a
``(seed, stream_id)`` pair mapped onto a counter-based Philox bit
generator.  Distinct stream ids address statistically independent
streams, so ensemble members can be sampled in any order, or in
parallel, without changing the values drawn for each member.

Normal variates are produced by Box-Muller over the Philox uniforms
rather than through the generator's built-in ziggurat, keeping the
uniform-to-normal mapping an explicit, portable formula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngState:
    """Addresses one reproducible random stream.

    ``seed`` identifies the run, ``stream_id`` the consumer within the
    run (one per sampled matrix).  Identical pairs yield identical draw
    sequences for a fixed numpy version.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.seed <= _MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not 0 <= self.stream_id <= _MASK64:
            raise ValueError(f"stream_id must be an unsigned 64-bit integer, got {self.stream_id}")

    def substream(self, stream_id: int) -> "RngState":
        """Same seed, different stream."""
        return RngState(self.seed, stream_id)

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def as_generator(rng: RngState | np.random.Generator) -> np.random.Generator:
    """Accept either an RngState or an already-positioned Generator."""
    if isinstance(rng, RngState):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngState or numpy Generator, got {type(rng).__name__}")


def standard_normals(gen: np.random.Generator, count: int) -> np.ndarray:
    """Draw ``count`` standard normals via Box-Muller.

    Consumes exactly ``2 * ceil(count / 2)`` uniforms; the cosine block
    precedes the sine block so the output order is fixed.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    half = (count + 1) // 2
    u1 = 1.0 - gen.random(half)  # (0, 1]: keeps log() finite
    u2 = gen.random(half)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    z = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])
    return z[:count]


def uniform_angles(gen: np.random.Generator, count: int) -> np.ndarray:
    """Draw ``count`` angles uniform on [0, 2*pi)."""
    return gen.random(count) * (2.0 * np.pi)
