"""Seeded deterministic random generation for simulation.

The generator is SplitMix64 (Steele, Lea & Flood's mixing function), chosen
because its output is a pure function of ``seed`` and the draw index, which
makes vectorised generation bit-identical to sequential generation:

    state_i = (seed + (i + 1) * 0x9E3779B97F4A7C15) mod 2**64
    z = state_i
    z = ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output_i = z XOR (z >> 31)

Uniform mapping (open interval, safe for logarithms):

    u_i = ((output_i >> 11) + 0.5) * 2**-53            in (0, 1)

Normals use the Box-Muller transform on consecutive uniform pairs
(u_{2k}, u_{2k+1}):

    z_{2k}   = sqrt(-2 ln u_{2k}) * cos(2 pi u_{2k+1})
    z_{2k+1} = sqrt(-2 ln u_{2k}) * sin(2 pi u_{2k+1})

The full procedure is documented in docs/random.md so sequences can be
reproduced outside this package.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK = 0xFFFFFFFFFFFFFFFF


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """Deterministic 64-bit generator; identical seed, identical stream."""

    def __init__(self, seed: int):
        self._seed = int(seed) & _MASK
        self._index = 0

    def next_u64(self) -> int:
        """Next raw 64-bit output (sequential reference path)."""
        self._index += 1
        state = (self._seed + self._index * _GOLDEN) & _MASK
        return _mix(state)

    def uniforms(self, n: int) -> np.ndarray:
        """Next n uniforms in the open interval (0, 1), vectorised."""
        if n < 0:
            raise ValueError(f"n must be >= 0, got {n}")
        idx = np.arange(self._index + 1, self._index + n + 1, dtype=np.uint64)
        self._index += n
        with np.errstate(over="ignore"):
            z = np.uint64(self._seed) + idx * np.uint64(_GOLDEN)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
            z = z ^ (z >> np.uint64(31))
        return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53

    def normals(self, n: int) -> np.ndarray:
        """Next n standard normal deviates via Box-Muller on uniform pairs."""
        if n < 0:
            raise ValueError(f"n must be >= 0, got {n}")
        pairs = (n + 1) // 2
        u = self.uniforms(2 * pairs)
        u1, u2 = u[0::2], u[1::2]
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = 2.0 * np.pi * u2
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:n]
