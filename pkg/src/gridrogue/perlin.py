"""Gradient-lattice noise over angle fields.

A single octave takes a (res_r+1, res_c+1) grid of gradient angles and
produces a (H, W) field by quintic-fade interpolation of the corner-gradient
dot products, scaled by sqrt(2) so the output covers [-1, 1].  Fractal noise
sums octaves with their amplitudes and normalizes back into [-1, 1].

Angle grids may carry leading batch dimensions; the world pool exploits this
to evaluate noise for several pending worlds in one vectorized pass.  Batched
and unbatched evaluation are bit-identical for a given dtype because every
operation is elementwise.

Worlds keep the raw angle grids around (see worldgen.LevelParams) because
they are the thing level mutation perturbs.
"""

from __future__ import annotations

import numpy as np


def _fade(t: np.ndarray) -> np.ndarray:
    return t * t * t * (t * (t * 6 - 15) + 10)


# The octave is a sum of eight (corner x gradient-component) terms whose
# fade-and-displacement weights factor into row and column profiles.  The
# row profiles fold into per-cell tensors first (tiny: lattice x dr), and
# only four full-resolution column passes remain.  Everything stays
# elementwise (no matmul), so batched evaluation is bit-identical to one
# world at a time, and the (R, dr, C, dc) accumulation order reshapes
# straight into the raster without a transpose.
_PROFILE_CACHE: dict = {}


def _profiles(dr: int, dc: int, dtype):
    key = (dr, dc, np.dtype(dtype).str)
    cached = _PROFILE_CACHE.get(key)
    if cached is not None:
        return cached
    one = dtype(1)
    fr = np.arange(dr, dtype=dtype) / dtype(dr)
    fc = np.arange(dc, dtype=dtype) / dtype(dc)
    u = _fade(fr)
    v = _fade(fc)
    root2 = dtype(np.sqrt(2.0))
    rows = (one - u, (one - u) * fr, u, u * (fr - one))
    cols = ((one - v) * fc * root2, (one - v) * root2,
            v * (fc - one) * root2, v * root2)
    _PROFILE_CACHE[key] = (rows, cols)
    return rows, cols


def perlin_octave(dims: tuple[int, int], angles: np.ndarray,
                  dtype=np.float64) -> np.ndarray:
    """One octave of noise on an H x W grid from an angle lattice.

    ``angles`` has shape (..., res_r+1, res_c+1); both H and W must be
    divisible by the respective lattice resolution.  Output is (..., H, W).
    """
    h, w = dims
    res_r = angles.shape[-2] - 1
    res_c = angles.shape[-1] - 1
    if res_r < 1 or res_c < 1:
        raise ValueError("angle lattice must be at least 2x2")
    if h % res_r != 0 or w % res_c != 0:
        raise ValueError(f"dims {dims} not divisible by lattice ({res_r}, {res_c})")
    dr = h // res_r
    dc = w // res_c

    theta = angles.astype(dtype)
    gx = np.cos(theta)
    gy = np.sin(theta)
    (a1, a2, a3, a4), cols = _profiles(dr, dc, dtype)

    # per-cell row blends, shaped (..., R, dr, C); cheap at lattice scale
    def blend(g_top, g_bot, top_prof, bot_prof):
        return (g_top[..., :, None, :] * top_prof[:, None]
                + g_bot[..., :, None, :] * bot_prof[:, None])

    t = np.stack([
        blend(gx[..., :-1, :-1], gx[..., 1:, :-1], a1, a3),   # x, left edge
        blend(gy[..., :-1, :-1], gy[..., 1:, :-1], a2, a4),   # y, left edge
        blend(gx[..., :-1, 1:], gx[..., 1:, 1:], a1, a3),     # x, right edge
        blend(gy[..., :-1, 1:], gy[..., 1:, 1:], a2, a4),     # y, right edge
    ])
    b = np.stack(cols)
    # non-optimized einsum: one fixed-order elementwise pass, no BLAS, so
    # the result is bit-identical regardless of batching
    out = np.einsum("g...,gb->...b", t, b, optimize=False)
    lead = angles.shape[:-2]
    return out.reshape(lead + (h, w))


def perlin(dims: tuple[int, int], angles: list[np.ndarray],
           octaves: list[tuple[int, float]], dtype=np.float64) -> np.ndarray:
    """Fractal noise: sum of octaves normalized into [-1, 1].

    ``octaves`` pairs a lattice frequency with an amplitude; ``angles[i]``
    must be shaped (..., freq_i+1, freq_i+1) for octave i.
    """
    if len(angles) != len(octaves):
        raise ValueError("need one angle grid per octave")
    total = None
    amp_sum = 0.0
    for grid, (freq, amp) in zip(angles, octaves):
        if grid.shape[-2:] != (freq + 1, freq + 1):
            raise ValueError(f"angle grid {grid.shape} does not match frequency {freq}")
        part = dtype(amp) * perlin_octave(dims, grid, dtype)
        total = part if total is None else total + part
        amp_sum += amp
    if amp_sum <= 0:
        raise ValueError("octave amplitudes must sum to a positive value")
    return total / dtype(amp_sum)
