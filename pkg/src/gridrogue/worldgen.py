"""Procedural generation of worlds.

A world is a pure function of its LevelParams.  The overworld comes from
fractal gradient noise whose angle grids live *in* the params (they are the
mutation surface for level-editing methods); the eight lower floors are
derived from per-floor seeds: carved dungeons, noise caves, themed realms
and a fixed boss arena.

Floor themes
    0 overworld   1 dungeon    2 gnomish mines   3 sewers   4 vaults
    5 troll mines 6 fire realm 7 ice realm       8 graveyard (boss)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import rng as R
from .constants import (
    Block, ChestLoot, Item, TierConf, EXTENDED,
    CAP_CHESTS, FLOOR_AMBIENT,
)
from .perlin import perlin, perlin_octave

# Octave layout of the overworld angle grids: three fields built from four
# grids (height 2/8, forest 8, special 8).
OVERWORLD_OCTAVES = [(2, 1.0), (8, 0.35), (8, 1.0), (8, 1.0)]
_HEIGHT = slice(0, 2)
_FOREST = slice(2, 3)
_SPECIAL = slice(3, 4)

CAVE_OCTAVES = [(4, 1.0), (8, 0.5)]

MAX_GEN_RETRIES = 16

# Boss arena geometry, relative to the floor centre.
ARENA_HALF = 10
NECRO_OFFSET = (-6, 0)
POOL_OFFSET = (4, -5)
GRAVE_OFFSETS = [(-3, -5), (-3, 5), (0, -7), (0, 7), (3, -4), (3, 4),
                 (5, 0), (-5, -2), (-5, 2), (6, -6), (6, 6), (2, 0)]

CHESTS_PER_FLOOR = [0, 4, 2, 3, 3, 2, 2, 2, 0]

# Weighted loot for chests without a scripted item: (kind, qty, weight).
LOOT_TABLE = [
    (ChestLoot.POTION, 1, 0.40),
    (ChestLoot.ARROWS, 3, 0.25),
    (ChestLoot.TORCHES, 4, 0.20),
    (ChestLoot.BOOK, 1, 0.15),
]


@dataclass(frozen=True)
class LevelParams:
    """The generative description of one world: a seed plus the overworld
    noise angles (radians in [0, 2pi)) and one derived seed per floor."""

    seed: int
    overworld_angles: tuple[np.ndarray, ...]
    per_floor_seeds: tuple[int, ...]

    def angles_copy(self) -> list[np.ndarray]:
        return [a.copy() for a in self.overworld_angles]


_OCTAVE_SIZES = [(f + 1) * (f + 1) for f, _ in OVERWORLD_OCTAVES]


_FLOOR_IDS = np.arange(100, 109, dtype=np.uint64)


def make_level_params(seed: int) -> LevelParams:
    base = R.make_stream(seed)
    flat, _ = R.uniform_array(R.split(base, 1), (sum(_OCTAVE_SIZES),))
    flat = (flat * 2.0 * np.pi).astype(np.float32)
    angles = []
    at = 0
    for (freq, _amp), size in zip(OVERWORLD_OCTAVES, _OCTAVE_SIZES):
        angles.append(flat[at:at + size].reshape(freq + 1, freq + 1))
        at += size
    # equals split(base, 100 + f).key for each floor, evaluated in one pass
    inner = R.vhash2(_FLOOR_IDS, np.uint64(base.counter))
    floor_seeds = tuple(int(k) for k in R.vhash2(np.uint64(base.key), inner))
    return LevelParams(seed, tuple(angles), floor_seeds)


@dataclass
class FloorMap:
    blocks: np.ndarray            # (H, W) uint8
    items: np.ndarray             # (H, W) uint8
    light_base: np.ndarray        # (H, W) float32 ambient light
    spawn: tuple[int, int]
    ladder_down: tuple[int, int] | None
    ladder_up: tuple[int, int] | None

    def copy(self) -> "FloorMap":
        return FloorMap(self.blocks.copy(), self.items.copy(),
                        self.light_base.copy(), self.spawn,
                        self.ladder_down, self.ladder_up)


@dataclass
class World:
    floors: list[FloorMap]
    potion_permutation: np.ndarray            # (6,) color -> effect
    chests: list[list[tuple[int, int, int, int]]]  # per floor: (r, c, loot, qty)
    params: LevelParams
    tier_name: str = "extended"

    def copy(self) -> "World":
        return World([f.copy() for f in self.floors],
                     self.potion_permutation.copy(),
                     [list(c) for c in self.chests], self.params, self.tier_name)


# --- helpers ---------------------------------------------------------------

_TILE_IDX32: dict = {}


def _tile_uniform(key: int, h: int, w: int, salt: int) -> np.ndarray:
    """A deterministic per-tile uniform field (float32)."""
    idx = _TILE_IDX32.get((h, w))
    if idx is None:
        idx = np.arange(h * w, dtype=np.uint32)
        _TILE_IDX32[(h, w)] = idx
    k32 = np.uint32(R.hash2(key, salt) & 0xFFFFFFFF)
    return R.vuniform32(k32, idx).reshape(h, w)


def _nearest_walkable(blocks: np.ndarray, walk_ok: np.ndarray,
                      target: tuple[int, int]) -> tuple[int, int] | None:
    ok = walk_ok[blocks]
    if not ok.any():
        return None
    h, w = blocks.shape
    rr, cc = np.nonzero(ok)
    d = np.maximum(np.abs(rr - target[0]), np.abs(cc - target[1]))
    i = int(np.argmin(d))
    return int(rr[i]), int(cc[i])


def _pick_tile(blocks: np.ndarray, eligible: np.ndarray, u: np.ndarray,
               forbid=None) -> tuple[int, int] | None:
    """The eligible tile with the highest uniform score; deterministic."""
    mask = eligible.copy()
    if forbid is not None:
        mask &= ~forbid
    if not mask.any():
        return None
    score = np.where(mask, u, -1.0)
    flat = int(np.argmax(score))
    return flat // blocks.shape[1], flat % blocks.shape[1]


def _carve_line(blocks: np.ndarray, a: tuple[int, int], b: tuple[int, int],
                fill: int, carvable: np.ndarray | None = None) -> None:
    """Carve an L-shaped corridor from a to b."""
    r, c = a
    tr, tc = b
    while c != tc:
        c += 1 if tc > c else -1
        if carvable is None or carvable[blocks[r, c]]:
            blocks[r, c] = fill
    while r != tr:
        r += 1 if tr > r else -1
        if carvable is None or carvable[blocks[r, c]]:
            blocks[r, c] = fill


_WALK = np.zeros(37, bool)
_WALK[[Block.GRASS, Block.PATH, Block.SAND, Block.FIRE_GRASS,
       Block.ICE_GRASS, Block.GRAVEL]] = True


# --- floor generators -------------------------------------------------------

def overworld_fields(angles, dims) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three overworld noise fields (height, forest, special).

    ``angles`` is a sequence of four grids which may carry a shared leading
    batch dimension; evaluation is float32 and bit-identical whether the
    grids are batched or passed one world at a time.  The three same-shape
    high-frequency grids ride through one vectorized octave evaluation.
    """
    f32 = np.float32
    coarse = perlin_octave(dims, angles[0], dtype=f32)
    fine3 = perlin_octave(dims, np.stack([angles[1], angles[2], angles[3]],
                                         axis=-3), dtype=f32)
    height = (coarse + f32(0.35) * fine3[..., 0, :, :]) / f32(1.35)
    forest = fine3[..., 1, :, :]
    special = fine3[..., 2, :, :]
    return height, forest, special


_CENTER_DIST: dict = {}
_AMBIENT_GRIDS: dict = {}


def _ambient_grid(floor: int, h: int, w: int) -> np.ndarray:
    """Shared constant ambient-light grid; treat as immutable."""
    key = (floor, h, w)
    grid = _AMBIENT_GRIDS.get(key)
    if grid is None:
        grid = np.full((h, w), FLOOR_AMBIENT[floor], np.float32)
        grid.setflags(write=False)
        _AMBIENT_GRIDS[key] = grid
    return grid


def _center_distance(h: int, w: int) -> np.ndarray:
    grid = _CENTER_DIST.get((h, w))
    if grid is None:
        grid = _chebyshev_from((h // 2, w // 2), (h, w)).astype(np.float32)
        _CENTER_DIST[(h, w)] = grid
    return grid


def _overworld_blocks(fields, u: np.ndarray) -> np.ndarray:
    """Threshold the noise fields into terrain; fully batched elementwise.

    One hashed field ``u`` drives every sprinkle; the consumers act on
    disjoint host blocks, so sharing draws does not couple them.
    """
    height, forest, special = fields
    blocks = np.full(height.shape, Block.GRASS, np.uint8)
    blocks[height < -0.28] = Block.WATER
    blocks[(height >= -0.28) & (height < -0.22)] = Block.SAND
    mountain = height > 0.28
    blocks[mountain] = Block.STONE
    blocks[(blocks == Block.GRASS) & (forest > 0.18) & (u < 0.55)] = Block.TREE

    # tunnels and pockets inside the mountains
    blocks[mountain & (np.abs(special) < 0.06)] = Block.PATH
    blocks[mountain & (special < -0.5)] = Block.LAVA

    stone_now = blocks == Block.STONE
    blocks[stone_now & (u < 0.035)] = Block.COAL
    blocks[stone_now & (u >= 0.94) & (height > 0.34)] = Block.IRON
    blocks[stone_now & (u >= 0.91) & (u < 0.94) & (height > 0.45)] = Block.DIAMOND
    return blocks


def _gen_overworld(params: LevelParams, h: int, w: int, extended: bool,
                   attempt: int, fields=None, pre=None) -> FloorMap:
    dims = (h, w)
    census = None
    if pre is not None:
        blocks, height, u, (spawn_flat, census) = pre
        blocks = blocks.copy()
        if spawn_flat < 0:
            raise _Degenerate
        spawn = (spawn_flat // w, spawn_flat % w)
    else:
        key = R.hash2(params.per_floor_seeds[0], attempt)
        if fields is None:
            fields = overworld_fields(params.overworld_angles, dims)
        height = fields[0]
        u = _tile_uniform(key, h, w, 1)
        blocks = _overworld_blocks(fields, u)
        walk_mask = _WALK[blocks]
        if not walk_mask.any():
            raise _Degenerate
        flat = int(np.argmin(np.where(walk_mask, _center_distance(h, w),
                                      np.float32(1e9))))
        spawn = (flat // w, flat % w)

    spawn_was = int(blocks[spawn])
    if spawn_was != Block.GRASS:
        blocks[spawn] = Block.GRASS

    # guarantee that every resource the tech tree needs exists somewhere;
    # ores go first so none of them consumes a lone guaranteed stone tile,
    # and each check looks at the current grid, not a stale census; blocks
    # that have to be conjured out of nowhere appear in the open area around
    # the spawn so they stay reachable
    near_spawn = None

    def near():
        nonlocal near_spawn
        if near_spawn is None:
            near_spawn = _chebyshev_from(spawn, dims) <= 8
            near_spawn[spawn] = False
        return near_spawn

    if census is None:
        census = {b: bool((blocks == b).any())
                  for b in (Block.COAL, Block.IRON, Block.DIAMOND, Block.LAVA,
                            Block.WATER, Block.SAND, Block.STONE, Block.TREE)}
    elif spawn_was in census:
        census[spawn_was] = bool((blocks == spawn_was).any())
    fixed_any = False
    for b, low in ((Block.COAL, False), (Block.IRON, False),
                   (Block.DIAMOND, False), (Block.LAVA, False),
                   (Block.WATER, True), (Block.SAND, True)):
        if not census[b]:
            _ensure_block(blocks, b, height, low=low, near=near())
            fixed_any = True
    if not census[Block.STONE] or (fixed_any
                                   and not (blocks == Block.STONE).any()):
        _ensure_block(blocks, Block.STONE, height, low=False, near=near())

    if not census[Block.TREE]:
        pos = _pick_tile(blocks, (blocks == Block.GRASS) & near(), u)
        if pos is None:
            pos = _pick_tile(blocks, blocks == Block.GRASS, u)
        if pos is None:
            raise _Degenerate
        blocks[pos] = Block.TREE

    items = np.zeros(dims, np.uint8)
    ladder_down = None
    if extended:
        far = _chebyshev_from(spawn, dims) >= 10
        pos = _pick_tile(blocks, _WALK[blocks] & far, u)
        if pos is None:
            pos = _pick_tile(blocks, _WALK[blocks], u)
        if pos is None or pos == spawn:
            raise _Degenerate
        items[pos] = Item.LADDER_DOWN
        ladder_down = pos

    light = _ambient_grid(0, h, w)
    return FloorMap(blocks, items, light, spawn, ladder_down, None)


class _Degenerate(Exception):
    """Raised when a generated layout violates a floor invariant."""


def _chebyshev_from(pos: tuple[int, int], dims: tuple[int, int]) -> np.ndarray:
    rr = np.abs(np.arange(dims[0]) - pos[0])[:, None]
    cc = np.abs(np.arange(dims[1]) - pos[1])[None, :]
    return np.maximum(rr, cc)


def _ensure_block(blocks: np.ndarray, block: int, height: np.ndarray,
                  low: bool, near: np.ndarray | None = None) -> None:
    """If ``block`` is absent, convert a stone tile, else a grass tile.

    Grass-hosted conversions prefer the ``near`` region (the open area by
    the spawn) so a conjured resource stays reachable on foot.
    """
    if (blocks == block).any():
        return
    score = -height if low else height
    if not low:
        host = blocks == Block.STONE
        if host.any():
            flat = int(np.argmax(np.where(host, score, -np.inf)))
            blocks[flat // blocks.shape[1], flat % blocks.shape[1]] = block
            return
    host = blocks == Block.GRASS
    if near is not None and (host & near).any():
        host = host & near
    if not host.any():
        host = (blocks == Block.GRASS) | (blocks == Block.TREE)
    if not host.any():
        raise _Degenerate
    flat = int(np.argmax(np.where(host, score, -np.inf)))
    blocks[flat // blocks.shape[1], flat % blocks.shape[1]] = block


def _gen_dungeon(seed: int, h: int, w: int, floor: int, attempt: int) -> FloorMap:
    s = R.split(R.RngStream(seed), 1000 + attempt)
    blocks = np.full((h, w), Block.WALL, np.uint8)
    n_rooms, s = R.randint(s, 4, 8)
    centers = []
    for _ in range(n_rooms):
        rh, s = R.randint(s, 5, 10)
        rw, s = R.randint(s, 5, 10)
        r0, s = R.randint(s, 2, h - rh - 2)
        c0, s = R.randint(s, 2, w - rw - 2)
        blocks[r0:r0 + rh, c0:c0 + rw] = Block.PATH
        centers.append((r0 + rh // 2, c0 + rw // 2))
    for a, b in zip(centers[:-1], centers[1:]):
        _carve_line(blocks, a, b, Block.PATH)

    key = R.hash2(seed, 7 + attempt)
    u = _tile_uniform(key, h, w, 4)
    path = blocks == Block.PATH
    near_path = _dilate(path)
    blocks[(blocks == Block.WALL) & near_path & (u < 0.25)] = Block.WALL_MOSS

    if floor == 3:  # sewers: water channels through the rooms
        blocks[path & (u > 0.82)] = Block.WATER
    if floor == 4:  # vaults: gravel rubble
        blocks[path & (u > 0.85)] = Block.GRAVEL

    open_mask = blocks == Block.PATH
    fountain = _pick_tile(blocks, open_mask, u)
    if fountain is not None:
        blocks[fountain] = Block.FOUNTAIN

    items = np.zeros((h, w), np.uint8)
    up = centers[0]
    down = centers[-1]
    if blocks[up] != Block.PATH or blocks[down] != Block.PATH or up == down:
        raise _Degenerate
    items[up] = Item.LADDER_UP
    items[down] = Item.LADDER_DOWN
    light = _ambient_grid(floor, h, w)
    return FloorMap(blocks, items, light, up, down, up)


def _dilate(mask: np.ndarray) -> np.ndarray:
    out = mask.copy()
    out[1:, :] |= mask[:-1, :]
    out[:-1, :] |= mask[1:, :]
    out[:, 1:] |= mask[:, :-1]
    out[:, :-1] |= mask[:, 1:]
    return out


def _gen_cave(seed: int, h: int, w: int, floor: int, attempt: int) -> FloorMap:
    s = R.split(R.RngStream(seed), 2000 + attempt)
    angles = []
    for freq, _amp in CAVE_OCTAVES:
        grid, s = R.uniform_array(s, (freq + 1, freq + 1))
        angles.append((grid * 2.0 * np.pi).astype(np.float32))
    field = perlin((h, w), angles, CAVE_OCTAVES)

    blocks = np.full((h, w), Block.STONE, np.uint8)
    open_mask = field > -0.02
    blocks[open_mask] = Block.PATH

    key = R.hash2(seed, 11 + attempt)
    u = _tile_uniform(key, h, w, 5)
    blocks[open_mask & (u < 0.04)] = Block.STALAGMITE

    stone = blocks == Block.STONE
    if floor == 2:
        blocks[stone & (u < 0.06)] = Block.COAL
        blocks[stone & (u >= 0.90) & (u < 0.93)] = Block.IRON
        blocks[stone & (u >= 0.975)] = Block.SAPPHIRE
        must_have = [Block.COAL, Block.IRON, Block.SAPPHIRE]
    else:
        blocks[stone & (u < 0.05)] = Block.COAL
        blocks[stone & (u >= 0.90) & (u < 0.93)] = Block.IRON
        blocks[stone & (u >= 0.96) & (u < 0.975)] = Block.DIAMOND
        blocks[stone & (u >= 0.985)] = Block.RUBY
        blocks[field < -0.62] = Block.LAVA
        must_have = [Block.COAL, Block.IRON, Block.DIAMOND, Block.RUBY]
    for b in must_have:
        _ensure_block(blocks, b, -field, low=False)

    open_mask = blocks == Block.PATH
    if open_mask.sum() < 40:
        raise _Degenerate
    up = _pick_tile(blocks, open_mask, u)
    if up is None:
        raise _Degenerate
    dist = _chebyshev_from(up, (h, w)).astype(np.float64)
    down = _pick_tile(blocks, open_mask, dist / dist.max())
    if down is None or up == down:
        raise _Degenerate
    _carve_line(blocks, up, down, Block.PATH)
    blocks[up] = Block.PATH
    blocks[down] = Block.PATH

    items = np.zeros((h, w), np.uint8)
    items[up] = Item.LADDER_UP
    items[down] = Item.LADDER_DOWN
    light = _ambient_grid(floor, h, w)
    return FloorMap(blocks, items, light, up, down, up)


_REALM_PALETTE = {
    6: {Block.GRASS: Block.FIRE_GRASS, Block.TREE: Block.FIRE_TREE,
        Block.WATER: Block.LAVA, Block.SAND: Block.GRAVEL},
    7: {Block.GRASS: Block.ICE_GRASS, Block.TREE: Block.ICE_SHRUB,
        Block.SAND: Block.GRAVEL, Block.LAVA: Block.WATER},
}


def _gen_realm(seed: int, h: int, w: int, floor: int, attempt: int) -> FloorMap:
    s = R.split(R.RngStream(seed), 3000 + attempt)
    angles = []
    for freq, _amp in OVERWORLD_OCTAVES:
        grid, s = R.uniform_array(s, (freq + 1, freq + 1))
        angles.append((grid * 2.0 * np.pi).astype(np.float32))
    sub = LevelParams(seed, tuple(angles), (R.hash2(seed, 4000 + attempt),) * 9)
    base = _gen_overworld(sub, h, w, extended=False, attempt=attempt)

    blocks = base.blocks
    out = blocks.copy()
    for src, dst in _REALM_PALETTE[floor].items():
        out[blocks == src] = dst
    gem = Block.RUBY if floor == 6 else Block.SAPPHIRE
    key = R.hash2(seed, 13 + attempt)
    u = _tile_uniform(key, h, w, 6)
    out[(out == Block.STONE) & (u > 0.975)] = gem
    _ensure_block(out, gem, u.astype(np.float32), low=False)

    walk = _WALK[out]
    table = Block.ENCHANT_TABLE_FIRE if floor == 6 else Block.ENCHANT_TABLE_ICE
    spawn = _nearest_walkable(out, _WALK, (h // 2, w // 2))
    if spawn is None:
        raise _Degenerate
    tpos = _pick_tile(out, walk & (_chebyshev_from(spawn, (h, w)) <= 8), u)
    if tpos is None or tpos == spawn:
        raise _Degenerate
    out[tpos] = table

    items = np.zeros((h, w), np.uint8)
    walk = _WALK[out]
    far = _chebyshev_from(spawn, (h, w)) >= 10
    up = spawn
    down = _pick_tile(out, walk & far, u)
    if down is None:
        down = _pick_tile(out, walk, 1.0 - u)
    if down is None or down == up:
        raise _Degenerate
    items[up] = Item.LADDER_UP
    items[down] = Item.LADDER_DOWN
    light = _ambient_grid(floor, h, w)
    return FloorMap(out, items, light, up, down, up)


def _gen_graveyard(seed: int, h: int, w: int) -> FloorMap:
    blocks = np.full((h, w), Block.DARKNESS, np.uint8)
    cr, cc = h // 2, w // 2
    r0, r1 = cr - ARENA_HALF, cr + ARENA_HALF
    c0, c1 = cc - ARENA_HALF, cc + ARENA_HALF
    blocks[r0:r1 + 1, c0:c1 + 1] = Block.WALL
    blocks[r0 + 1:r1, c0 + 1:c1] = Block.PATH

    graves = [Block.GRAVE, Block.GRAVE2, Block.GRAVE3]
    for i, (dr, dc) in enumerate(GRAVE_OFFSETS):
        blocks[cr + dr, cc + dc] = graves[i % 3]

    pr, pc = cr + POOL_OFFSET[0], cc + POOL_OFFSET[1]
    blocks[pr:pr + 3, pc:pc + 3] = Block.WATER

    nr, nc = cr + NECRO_OFFSET[0], cc + NECRO_OFFSET[1]
    blocks[nr, nc] = Block.NECROMANCER

    items = np.zeros((h, w), np.uint8)
    up = (r1 - 2, cc)
    blocks[up] = Block.PATH
    items[up] = Item.LADDER_UP
    light = _ambient_grid(8, h, w)
    return FloorMap(blocks, items, light, up, None, up)


def _template_floor(floor: int, h: int, w: int) -> FloorMap:
    """A guaranteed-valid fallback layout used after repeated bad generations."""
    blocks = np.full((h, w), Block.GRASS if floor == 0 else Block.PATH, np.uint8)
    if floor != 0:
        blocks[0, :] = blocks[-1, :] = Block.WALL
        blocks[:, 0] = blocks[:, -1] = Block.WALL
    cr, cc = h // 2, w // 2
    if floor == 0:
        blocks[2:5, 2:5] = Block.WATER
        blocks[6:8, 2:6] = Block.SAND
        blocks[cr - 4, cc] = Block.TREE
        blocks[h - 6:h - 2, w - 6:w - 2] = Block.STONE
        blocks[h - 5, w - 5] = Block.COAL
        blocks[h - 4, w - 4] = Block.IRON
        blocks[h - 3, w - 3] = Block.DIAMOND
        blocks[h - 6, w - 3] = Block.LAVA
    items = np.zeros((h, w), np.uint8)
    spawn = (cr, cc)
    ladder_up = None if floor == 0 else (cr, cc - 5)
    ladder_down = None if floor == 8 else (cr, cc + 5)
    if ladder_up:
        items[ladder_up] = Item.LADDER_UP
    if ladder_down:
        items[ladder_down] = Item.LADDER_DOWN
    light = _ambient_grid(floor, h, w)
    return FloorMap(blocks, items, spawn=spawn, light_base=light,
                    ladder_down=ladder_down, ladder_up=ladder_up)


def _gen_floor(params: LevelParams, floor: int, h: int, w: int,
               extended: bool, pre=None) -> FloorMap:
    seed = params.per_floor_seeds[floor]
    for attempt in range(MAX_GEN_RETRIES):
        try:
            if floor == 0:
                return _gen_overworld(params, h, w, extended, attempt,
                                      pre=pre if attempt == 0 else None)
            if floor in (1, 3, 4):
                return _gen_dungeon(seed, h, w, floor, attempt)
            if floor in (2, 5):
                return _gen_cave(seed, h, w, floor, attempt)
            if floor in (6, 7):
                return _gen_realm(seed, h, w, floor, attempt)
            return _gen_graveyard(seed, h, w)
        except _Degenerate:
            continue
    return _template_floor(floor, h, w)


def _assign_chests(world_seed: int, floors: list[FloorMap]) -> list[list[tuple]]:
    out: list[list[tuple]] = []
    for f, fm in enumerate(floors):
        n = CHESTS_PER_FLOOR[f] if f < len(CHESTS_PER_FLOOR) else 0
        lanes: list[tuple] = []
        if n:
            s = R.split(R.RngStream(world_seed), 5000 + f)
            open_mask = fm.blocks == Block.PATH
            rr, cc = np.nonzero(open_mask)
            if len(rr):
                for i in range(min(n, CAP_CHESTS, len(rr))):
                    j, s = R.randint(s, 0, len(rr))
                    r, c = int(rr[j]), int(cc[j])
                    if fm.blocks[r, c] != Block.PATH or fm.items[r, c] != Item.EMPTY:
                        continue
                    fm.blocks[r, c] = Block.CHEST
                    if f == 1 and len(lanes) == 0:
                        loot, qty = ChestLoot.BOW, 1
                    elif f == 1 and len(lanes) == 1:
                        loot, qty = ChestLoot.BOOK, 1
                    else:
                        u, s = R.uniform(s, 0.0, 1.0)
                        loot, qty = _weighted_loot(u)
                    lanes.append((r, c, int(loot), qty))
        out.append(lanes)
    return out


def _weighted_loot(u: float) -> tuple[int, int]:
    acc = 0.0
    for kind, qty, weight in LOOT_TABLE:
        acc += weight
        if u < acc:
            return kind, qty
    kind, qty, _ = LOOT_TABLE[-1]
    return kind, qty


def generate_world(params: LevelParams, tier: TierConf = EXTENDED,
                   _pre=None) -> World:
    """Build the full world for ``params``; always succeeds.

    ``_pre`` lets the batch pool hand in overworld terrain it computed for
    several worlds at once; the result is bit-identical either way.
    """
    h, w = tier.height, tier.width
    extended = not tier.is_classic
    floors = [_gen_floor(params, f, h, w, extended, _pre if f == 0 else None)
              for f in range(tier.n_floors)]
    perm = np.argsort(R.vuniform32(
        np.uint32(R.hash2(params.seed, 42) & 0xFFFFFFFF),
        np.arange(6, dtype=np.uint32)))
    chests = _assign_chests(params.seed, floors)
    return World(floors, perm.astype(np.uint8), chests, params, tier.name)


def generate_worlds(params_list: list[LevelParams],
                    tier: TierConf = EXTENDED) -> list[World]:
    """Generate several worlds, sharing one vectorized terrain evaluation.

    Besides the noise fields, the walkability census, spawn search and
    resource presence checks all run batched; only rare fix-ups and the
    lower floors fall back to per-world code.
    """
    if not params_list:
        return []
    if len(params_list) == 1:
        return [generate_world(params_list[0], tier)]
    h, w = tier.height, tier.width
    stacked = [np.stack([p.overworld_angles[i] for p in params_list])
               for i in range(len(OVERWORLD_OCTAVES))]
    height, forest, special = overworld_fields(stacked, (h, w))
    keys = np.array([R.hash2(R.hash2(p.per_floor_seeds[0], 0), 1) & 0xFFFFFFFF
                     for p in params_list], np.uint32)
    idx = np.arange(h * w, dtype=np.uint32)
    u = R.vuniform32(keys[:, None], idx[None, :]).reshape(-1, h, w)
    blocks = _overworld_blocks((height, forest, special), u)

    k = len(params_list)
    flat = blocks.reshape(k, -1)
    walk = _WALK[flat]
    spawn_flat = np.argmin(np.where(walk, _center_distance(h, w).reshape(-1),
                                    np.float32(1e9)), axis=1)
    walk_any = walk.any(axis=1)
    present = {b: (flat == b).any(axis=1)
               for b in (Block.COAL, Block.IRON, Block.DIAMOND, Block.LAVA,
                         Block.WATER, Block.SAND, Block.STONE, Block.TREE)}
    return [generate_world(
                p, tier,
                _pre=(blocks[j], height[j], u[j],
                      (int(spawn_flat[j]) if walk_any[j] else -1,
                       {b: bool(v[j]) for b, v in present.items()})))
            for j, p in enumerate(params_list)]
