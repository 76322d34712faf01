"""Counter-based splittable random streams.

Every draw is a pure hash of (key, counter), so a stream is an immutable
value: drawing returns the value *and* the advanced stream.  Child streams
are derived by hashing the parent key with a stream id, which lets worldgen
and the batch runner hand out independent streams without coordination.

The mixer is the 64-bit splitmix finalizer, applied twice with the inputs
folded together.  It is emphatically not cryptographic; it only needs to be
well distributed and fast to evaluate on whole numpy arrays at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = (z + _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def hash2(key: int, n: int) -> int:
    """Mix a key with a counter/stream id into a fresh 64-bit value."""
    return _mix((key ^ _mix(n)) & _MASK)


# Vectorized twin of ``hash2`` used by the batched engine.  uint64 numpy
# arithmetic wraps modulo 2**64, matching the scalar version bit for bit.

_U = np.uint64
_V_GOLDEN = _U(_GOLDEN)
_C1 = _U(0xBF58476D1CE4E5B9)
_C2 = _U(0x94D049BB133111EB)
_S30, _S27, _S31 = _U(30), _U(27), _U(31)


def _vmix(z: np.ndarray) -> np.ndarray:
    # uint64 arithmetic wraps mod 2**64 by design; inputs are always >= 1-d
    # arrays, for which numpy wraps silently without warning
    z = z + _V_GOLDEN
    z = (z ^ (z >> _S30)) * _C1
    z = (z ^ (z >> _S27)) * _C2
    return z ^ (z >> _S31)


def vhash2(key: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Element-wise hash2 over uint64 arrays (broadcasting allowed)."""
    return _vmix(np.atleast_1d(np.asarray(key, _U)) ^ _vmix(np.atleast_1d(np.asarray(n, _U))))


def vuniform(key: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Hashed uniform draws in [0, 1) as float64."""
    return (vhash2(key, n) >> _U(11)).astype(np.float64) * (1.0 / (1 << 53))


# 32-bit mixer for bulk in-simulation draws (spawn rolls, wander directions,
# tile sprinkles).  uint32 multiplies vectorize far better than uint64; the
# finalizer is the standard low-bias 32-bit avalanche.

_U32 = np.uint32
_G32 = _U32(0x9E3779B9)
_M1 = _U32(0x7FEB352D)
_M2 = _U32(0x846CA68B)
_S16, _S15 = _U32(16), _U32(15)


def vmix32(x: np.ndarray) -> np.ndarray:
    x = x ^ (x >> _S16)
    x = x * _M1
    x = x ^ (x >> _S15)
    x = x * _M2
    return x ^ (x >> _S16)


def vuniform32(key32, n32) -> np.ndarray:
    """Uniform [0, 1) float32 draws from 32-bit keyed hashing."""
    k = np.atleast_1d(np.asarray(key32, _U32))
    n = np.atleast_1d(np.asarray(n32, _U32))
    h = vmix32(k ^ (n * _G32 + _G32))
    return (h >> _U32(8)).astype(np.float32) * np.float32(1.0 / (1 << 24))


@dataclass(frozen=True)
class RngStream:
    """An immutable random stream: 128 bits of (key, counter) state."""

    key: int
    counter: int = 0
    stream_id: int = 0

    def _advance(self) -> "RngStream":
        return RngStream(self.key, (self.counter + 1) & _MASK, self.stream_id)


def make_stream(seed: int) -> RngStream:
    return RngStream(_mix(seed & _MASK))


def split(parent: RngStream, stream_id: int) -> RngStream:
    """Derive a child stream; same (parent key, id) always gives the same child."""
    return RngStream(hash2(parent.key, hash2(stream_id & _MASK, parent.counter)),
                     0, stream_id & _MASK)


def next_u64(s: RngStream) -> tuple[int, RngStream]:
    return hash2(s.key, s.counter), s._advance()


def uniform(s: RngStream, lo: float, hi: float) -> tuple[float, RngStream]:
    """A draw in [lo, hi); degenerate intervals return lo exactly."""
    if lo > hi:
        raise ValueError(f"uniform: lo={lo} > hi={hi}")
    raw, s2 = next_u64(s)
    u = (raw >> 11) * (1.0 / (1 << 53))
    return lo + (hi - lo) * u, s2


def randint(s: RngStream, lo: int, hi: int) -> tuple[int, RngStream]:
    """An integer draw in [lo, hi); requires lo < hi."""
    if lo >= hi:
        raise ValueError(f"randint: empty range [{lo}, {hi})")
    raw, s2 = next_u64(s)
    return lo + raw % (hi - lo), s2


def uniform_array(s: RngStream, shape) -> tuple[np.ndarray, RngStream]:
    """A block of uniform [0, 1) draws consuming one counter slot per value."""
    n = int(np.prod(shape)) if shape else 1
    idx = (np.arange(n, dtype=np.uint64) + _U(s.counter & _MASK))
    vals = vuniform(np.full(n, s.key, _U), idx).reshape(shape)
    return vals, RngStream(s.key, (s.counter + n) & _MASK, s.stream_id)


def permutation(s: RngStream, n: int) -> tuple[np.ndarray, RngStream]:
    """A Fisher-Yates shuffle of range(n) driven by the stream."""
    perm = np.arange(n)
    for i in range(n - 1, 0, -1):
        j, s = randint(s, 0, i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm, s
