"""Level mutation operators for curriculum / level-editing methods.

Three operators, all pure:

* ``mutate_noise`` perturbs every overworld gradient angle by an independent
  uniform draw and renormalizes into [0, 2pi).
* ``mutate_swap`` exchanges two overworld tiles, the first of which always
  lies in the centred 16x16 window near the spawn.
* ``mutate_rswap`` is the restricted variant: the swapped pair must share a
  compatibility class (ores with ores, grass with trees), which keeps the
  edited level coherent.
"""

from __future__ import annotations

import numpy as np

from . import rng as R
from .constants import Block
from .worldgen import LevelParams, World

TWO_PI = 2.0 * np.pi

NOISE_RANGE = 0.5  # radians, each side

SWAP_WINDOW = 16

# Tiles that may trade places under the restricted swap.
RSWAP_CLASSES = [
    {Block.STONE, Block.COAL, Block.IRON, Block.DIAMOND, Block.SAPPHIRE, Block.RUBY},
    {Block.GRASS, Block.TREE},
]


def mutate_noise(params: LevelParams, s: R.RngStream,
                 scale: float = NOISE_RANGE) -> LevelParams:
    """Add an independent U(-scale, +scale) draw to every overworld angle."""
    new_angles = []
    for grid in params.overworld_angles:
        delta, s = R.uniform_array(s, grid.shape)
        perturbed = grid + (delta * 2.0 - 1.0) * scale
        new_angles.append(np.mod(perturbed, TWO_PI).astype(np.float32))
    return LevelParams(params.seed, tuple(new_angles), params.per_floor_seeds)


def _central_window(h: int, w: int) -> tuple[int, int, int, int]:
    r0 = max(0, h // 2 - SWAP_WINDOW // 2)
    c0 = max(0, w // 2 - SWAP_WINDOW // 2)
    return r0, c0, min(h, r0 + SWAP_WINDOW), min(w, c0 + SWAP_WINDOW)


def in_central_window(pos: tuple[int, int], dims: tuple[int, int]) -> bool:
    r0, c0, r1, c1 = _central_window(*dims)
    return r0 <= pos[0] < r1 and c0 <= pos[1] < c1


def mutate_swap(world: World, s: R.RngStream) -> World:
    """Swap two overworld tiles; the first is drawn from the central window."""
    out = world.copy()
    blocks = out.floors[0].blocks
    h, w = blocks.shape
    r0, c0, r1, c1 = _central_window(h, w)
    ar, s = R.randint(s, r0, r1)
    ac, s = R.randint(s, c0, c1)
    while True:
        br, s = R.randint(s, 0, h)
        bc, s = R.randint(s, 0, w)
        if (br, bc) != (ar, ac):
            break
    blocks[ar, ac], blocks[br, bc] = blocks[br, bc], blocks[ar, ac]
    return out


def mutate_rswap(world: World, s: R.RngStream) -> World:
    """Class-restricted swap; returns the world unchanged if no pair is legal."""
    out = world.copy()
    blocks = out.floors[0].blocks
    h, w = blocks.shape
    r0, c0, r1, c1 = _central_window(h, w)
    window = blocks[r0:r1, c0:c1]

    class_of = np.full(37, -1, np.int8)
    for i, cls in enumerate(RSWAP_CLASSES):
        for b in cls:
            class_of[b] = i

    win_classes = class_of[window]
    wr, wc = np.nonzero(win_classes >= 0)
    if len(wr) == 0:
        return out
    i, s = R.randint(s, 0, len(wr))
    ar, ac = int(wr[i]) + r0, int(wc[i]) + c0
    cls = class_of[blocks[ar, ac]]

    same = class_of[blocks] == cls
    same[ar, ac] = False
    br_all, bc_all = np.nonzero(same)
    if len(br_all) == 0:
        return out
    j, s = R.randint(s, 0, len(br_all))
    br, bc = int(br_all[j]), int(bc_all[j])
    blocks[ar, ac], blocks[br, bc] = blocks[br, bc], blocks[ar, ac]
    return out
