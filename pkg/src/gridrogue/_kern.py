"""Low-level helpers shared by the engine's vectorized phases.

Conventions: every kernel works on whole (n_envs,)-leading arrays, guarded by
boolean masks; nothing branches on a single environment.  All hashed draws
derive from (per-env key, step counter, subsystem id, lane), so an
environment's evolution never depends on what else shares the batch.
"""

from __future__ import annotations

import numpy as np

from .rng import vhash2, vmix32, vuniform32, _U
from .constants import Block, N_BLOCKS

_U64_HI = np.uint64(1 << 16)

# subsystem ids for hashed draws
SUB_SAPLING = 1
SUB_MELEE_WALK = 2
SUB_PASSIVE_WALK = 3
SUB_SPAWN_MELEE = 4
SUB_SPAWN_RANGED = 5
SUB_SPAWN_PASSIVE = 6


class Workspace:
    """Per-batch scratch buffers, reused across steps."""

    def __init__(self, n: int, n_achievements: int):
        self.n = n
        self.ar = np.arange(n, dtype=np.intp)
        self.unlock = np.zeros((n, n_achievements), bool)
        self.hurt = np.zeros(n, bool)
        self.health0 = np.zeros(n, np.float32)
        self.base = np.zeros(n, np.uint32)

    def begin_step(self, sim) -> None:
        self.unlock[:] = False
        self.hurt[:] = False
        np.copyto(self.health0, sim.health)
        # a fresh per-env 32-bit key every step; all phase draws mix it with
        # a (subsystem, lane) tag, so nothing consumes shared stream state
        k32 = (sim.rng_key & np.uint64(0xFFFFFFFF)).astype(np.uint32)
        np.copyto(self.base, vmix32(k32 ^ (sim.time.astype(np.uint32)
                                           * np.uint32(0x9E3779B9))))

    def draw(self, sub: int, lane: int = 0) -> np.ndarray:
        """One uniform [0,1) per env for (subsystem, lane) this step."""
        return vuniform32(self.base, np.uint32(sub * 64 + lane))

    def draw_at(self, sub: int, env_idx: np.ndarray, lane: int = 0) -> np.ndarray:
        """The same draws as ``draw`` restricted to a subset of envs."""
        return vuniform32(self.base[env_idx], np.uint32(sub * 64 + lane))


def q1(x: np.ndarray) -> np.ndarray:
    """Quantize to one decimal, half away from zero, in float32."""
    return (np.floor(x * np.float32(10.0) + np.float32(0.5))
            * np.float32(0.1)).astype(np.float32)


def resolve_attack_vec(dmg: np.ndarray, defense: np.ndarray) -> np.ndarray:
    """Damage dealt for (..., 3) damage against (..., 3) percent defense."""
    dealt = (dmg * (1.0 - defense / np.float32(100.0))).sum(axis=-1)
    return q1(np.maximum(dealt, np.float32(0.0)))


_ENV_BASE: dict = {}


def _env_base(n: int, per_env: int, ndim: int) -> np.ndarray:
    """Cached flat offsets of each env's map start, shaped to broadcast."""
    key = (n, per_env)
    base = _ENV_BASE.get(key)
    if base is None:
        base = np.arange(n, dtype=np.int64) * per_env
        _ENV_BASE[key] = base
    return base.reshape((n,) + (1,) * (ndim - 1))


def _gather_grid(sim, grid, oob_value: int, floor, r, c) -> np.ndarray:
    """Flat take from a (n, F, H, W) grid; OOB reads yield ``oob_value``."""
    h, w = sim.tier.height, sim.tier.width
    f = sim.tier.n_floors
    oob = (r < 0) | (r >= h) | (c < 0) | (c >= w)
    rr = np.clip(r, 0, h - 1).astype(np.int64)
    cc = np.clip(c, 0, w - 1)
    flat = _env_base(grid.shape[0], f * h * w, r.ndim)
    if f == 1:
        flat = flat + rr * w + cc
    else:
        if floor.ndim < r.ndim:
            floor = floor.reshape(floor.shape + (1,) * (r.ndim - floor.ndim))
        flat = flat + (floor * h + rr) * w + cc
    vals = grid.reshape(-1).take(flat)
    return np.where(oob, np.uint8(oob_value), vals)


def gather_blocks(sim, floor, r, c) -> np.ndarray:
    """Blocks at per-env tiles; out-of-bounds reads yield OUT_OF_BOUNDS."""
    return _gather_grid(sim, sim.blocks, Block.OUT_OF_BOUNDS, floor, r, c)


def gather_items(sim, floor, r, c) -> np.ndarray:
    return _gather_grid(sim, sim.items, 0, floor, r, c)


def _gather_grid_idx(sim, grid, oob_value, env_idx, floor, r, c) -> np.ndarray:
    """Flat take for a subset of envs; r/c may be (k,) or (k, m)."""
    h, w = sim.tier.height, sim.tier.width
    f = sim.tier.n_floors
    oob = (r < 0) | (r >= h) | (c < 0) | (c >= w)
    rr = np.clip(r, 0, h - 1).astype(np.int64)
    cc = np.clip(c, 0, w - 1)
    base = env_idx.astype(np.int64) * (f * h * w)
    if r.ndim > 1:
        base = base.reshape(base.shape + (1,) * (r.ndim - 1))
    if f == 1:
        flat = base + rr * w + cc
    else:
        if r.ndim > 1 and floor.ndim < r.ndim:
            floor = floor.reshape(floor.shape + (1,) * (r.ndim - 1))
        flat = base + (floor * h + rr) * w + cc
    vals = grid.reshape(-1).take(flat)
    return np.where(oob, np.uint8(oob_value), vals)


def gather_blocks_idx(sim, env_idx, floor, r, c) -> np.ndarray:
    return _gather_grid_idx(sim, sim.blocks, Block.OUT_OF_BOUNDS,
                            env_idx, floor, r, c)


def gather_items_idx(sim, env_idx, floor, r, c) -> np.ndarray:
    return _gather_grid_idx(sim, sim.items, 0, env_idx, floor, r, c)


def scatter_blocks(sim, mask, floor, r, c, value) -> None:
    """Write block ids at per-env tiles where ``mask`` holds (in bounds only)."""
    if not mask.any():
        return
    idx = np.nonzero(mask)[0]
    sim.blocks[idx, floor[idx], r[idx], c[idx]] = value


def scatter_items(sim, mask, floor, r, c, value) -> None:
    if not mask.any():
        return
    idx = np.nonzero(mask)[0]
    sim.items[idx, floor[idx], r[idx], c[idx]] = value


def player_defense(sim) -> np.ndarray:
    """(n, 3) percent defense from armour tiers and their enchantments."""
    phys = sim.armour.sum(axis=1, dtype=np.float32) * np.float32(10.0)
    enchanted = sim.armour > 0
    fire = ((sim.armour_ench == 1) & enchanted).sum(axis=1).astype(np.float32) * 20.0
    ice = ((sim.armour_ench == 2) & enchanted).sum(axis=1).astype(np.float32) * 20.0
    out = np.stack([phys, fire, ice], axis=1)
    return np.minimum(out, np.float32(80.0))


def hurt_player(sim, ws, amount: np.ndarray, mask: np.ndarray) -> None:
    """Apply already-resolved damage to the player where ``mask`` holds."""
    eff = mask & (amount > 0)
    if not eff.any():
        return
    np.subtract(sim.health, amount.astype(np.float32), out=sim.health, where=eff)
    np.copyto(sim.health, q1(np.maximum(sim.health, np.float32(0.0))))
    ws.hurt |= eff


def award(ws, tier, mask, ach_id: int) -> None:
    if ach_id < tier.n_achievements:
        ws.unlock[:, ach_id] |= mask


def award_by_id(ws, tier, env_idx: np.ndarray, ach_ids) -> None:
    """Set achievement flags for env indices; ach_ids may be scalar or array."""
    if np.isscalar(ach_ids) or getattr(ach_ids, "ndim", 1) == 0:
        if int(ach_ids) < tier.n_achievements:
            ws.unlock[env_idx, int(ach_ids)] = True
        return
    ok = ach_ids < tier.n_achievements
    ws.unlock[env_idx[ok], ach_ids[ok]] = True


def creature_at(pos, alive, r, c):
    """Match a per-env target against lanes: (hit, lane) with lane=argmax."""
    match = alive & (pos[..., 0] == r[:, None]) & (pos[..., 1] == c[:, None])
    hit = match.any(axis=1)
    lane = match.argmax(axis=1)
    return hit, lane


def clamp_stat(arr: np.ndarray, maxv: np.ndarray) -> None:
    np.copyto(arr, q1(np.clip(arr, np.float32(0.0), maxv)))
