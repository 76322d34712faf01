"""Observation codecs: flat symbolic vectors and the textual renderer.

The symbolic vector is: for every tile of the egocentric map view, a block
one-hot, an item one-hot, a creature one-hot and a light scalar; then a
scaled inventory/status section.  The exact field order is frozen by the
layout manifest (``layout_manifest``), which downstream learners may rely
on.  Tiles whose light falls below ``LIGHT_THRESHOLD`` have all three
one-hot groups zeroed; the light scalar itself always remains.

Vector lengths are 1345 (classic) and 8268 (extended).  The extended
inventory section carries the meaningful fields first and explicit zero
padding after them, sized so the totals come out exactly; the manifest
records the padding like any other field.
"""

from __future__ import annotations

import hashlib
import json
import math

import numpy as np

from ._kern import _gather_grid
from .constants import (
    Block, Creature, Item, TierConf, Direction,
    N_BLOCKS, N_ITEMS, N_CREATURES, NIGHT_AMBIENT, DAY_LENGTH, FLOOR_AMBIENT,
)
from .state import GameState, SimState

LIGHT_THRESHOLD = 0.05
TORCH_RADIUS = 3

# --- per-tile channel layouts ----------------------------------------------

# extended: blocks use their global ids (37), items their ids (5), creatures
# get none=0, the 19 kinds at kind+1, projectiles after, then reserved slots
EXT_BLOCK_CHANNELS = 37
EXT_ITEM_CHANNELS = 5
EXT_CREATURE_CHANNELS = 36
CREATURE_CHANNEL_BASE = 1
PROJECTILE_CHANNEL_BASE = 1 + N_CREATURES      # 20..28
EXT_RESERVED_CREATURE_CHANNELS = EXT_CREATURE_CHANNELS - (PROJECTILE_CHANNEL_BASE + 9)

# classic: a reduced block palette, no item group, and none+4 creatures
CLASSIC_BLOCK_LIST = [
    Block.OUT_OF_BOUNDS, Block.GRASS, Block.WATER, Block.STONE, Block.TREE,
    Block.PATH, Block.COAL, Block.IRON, Block.DIAMOND, Block.CRAFTING_TABLE,
    Block.FURNACE, Block.SAND, Block.LAVA, Block.PLANT, Block.RIPE_PLANT,
]
CLASSIC_BLOCK_CHANNELS = len(CLASSIC_BLOCK_LIST)       # 15
CLASSIC_ITEM_CHANNELS = 0
CLASSIC_CREATURE_CHANNELS = 5                          # none, zombie, cow, skeleton, arrow

_CLASSIC_BLOCK_LOCAL = np.zeros(N_BLOCKS, np.int64)
for _i, _b in enumerate(CLASSIC_BLOCK_LIST):
    _CLASSIC_BLOCK_LOCAL[_b] = _i

_CLASSIC_CREATURE_LOCAL = {Creature.ZOMBIE: 1, Creature.COW: 2, Creature.SKELETON: 3}
CLASSIC_ARROW_CHANNEL = 4


def _tile_channels(tier: TierConf) -> tuple[int, int, int]:
    if tier.is_classic:
        return (CLASSIC_BLOCK_CHANNELS, CLASSIC_ITEM_CHANNELS,
                CLASSIC_CREATURE_CHANNELS)
    return EXT_BLOCK_CHANNELS, EXT_ITEM_CHANNELS, EXT_CREATURE_CHANNELS


def tile_stride(tier: TierConf) -> int:
    b, i, c = _tile_channels(tier)
    return b + i + c + 1


# --- inventory section ------------------------------------------------------

SQRT = "sqrt_n_over_10"
HALF = "n_over_2"
QUARTER = "level_over_4"
LEVEL2 = "level_over_2"
TENTH = "x_over_10"
INDICATOR = "indicator"
ENCHANT = "enchant_code"
RAW = "raw"
PAD = "zero_pad"

_EXT_INV_FIELDS = [
    ("wood", SQRT), ("stone", SQRT), ("coal", SQRT), ("iron", SQRT),
    ("diamond", SQRT), ("sapphire", SQRT), ("ruby", SQRT), ("sapling", SQRT),
    ("torch", SQRT), ("arrow", SQRT),
    ("potion_red", SQRT), ("potion_green", SQRT), ("potion_blue", SQRT),
    ("potion_pink", SQRT), ("potion_cyan", SQRT), ("potion_yellow", SQRT),
    ("book", HALF),
    ("pickaxe", QUARTER), ("sword", QUARTER),
    ("sword_enchantment", ENCHANT),
    ("bow", INDICATOR),
    ("armour_head", LEVEL2), ("armour_chest", LEVEL2),
    ("armour_legs", LEVEL2), ("armour_feet", LEVEL2),
    ("armour_enchantment_head", ENCHANT), ("armour_enchantment_chest", ENCHANT),
    ("armour_enchantment_legs", ENCHANT), ("armour_enchantment_feet", ENCHANT),
    ("health", TENTH), ("food", TENTH), ("drink", TENTH), ("energy", TENTH),
    ("mana", TENTH), ("xp", TENTH),
    ("dexterity", TENTH), ("strength", TENTH), ("intelligence", TENTH),
    ("direction_left", INDICATOR), ("direction_right", INDICATOR),
    ("direction_up", INDICATOR), ("direction_down", INDICATOR),
    ("day_night", RAW),
    ("sleeping", INDICATOR), ("resting", INDICATOR),
    ("learned_fireball", INDICATOR), ("learned_iceball", INDICATOR),
    ("floor", TENTH), ("floor_cleared", INDICATOR),
    ("boss_vulnerable", INDICATOR),
]

_CLASSIC_INV_FIELDS = [
    ("wood", SQRT), ("stone", SQRT), ("coal", SQRT), ("iron", SQRT),
    ("diamond", SQRT), ("sapling", SQRT),
    ("pickaxe", QUARTER), ("sword", QUARTER),
    ("health", TENTH), ("food", TENTH), ("drink", TENTH), ("energy", TENTH),
    ("direction_left", INDICATOR), ("direction_right", INDICATOR),
    ("direction_up", INDICATOR), ("direction_down", INDICATOR),
    ("day_night", RAW),
    ("sleeping", INDICATOR),
]

EXTENDED_TOTAL = 8268
CLASSIC_TOTAL = 1345


def inventory_fields(tier: TierConf) -> list[tuple[str, str]]:
    fields = list(_CLASSIC_INV_FIELDS if tier.is_classic else _EXT_INV_FIELDS)
    total = CLASSIC_TOTAL if tier.is_classic else EXTENDED_TOTAL
    tiles = tier.view_rows * tier.view_cols
    pad = total - tiles * tile_stride(tier) - len(fields)
    assert pad >= 0, "layout arithmetic broke"
    fields.extend((f"pad_{i}", PAD) for i in range(pad))
    return fields


def obs_length(tier: TierConf) -> int:
    return CLASSIC_TOTAL if tier.is_classic else EXTENDED_TOTAL


def layout_manifest(tier: TierConf) -> dict:
    """Machine-readable description of every field in the flat vector."""
    b, i, c = _tile_channels(tier)
    stride = tile_stride(tier)
    tiles = tier.view_rows * tier.view_cols
    if tier.is_classic:
        blocks = [Block(x).name.lower() for x in CLASSIC_BLOCK_LIST]
        creatures = ["none", "zombie", "cow", "skeleton", "arrow"]
        items: list[str] = []
    else:
        blocks = [Block(x).name.lower() for x in range(N_BLOCKS)]
        items = [Item(x).name.lower() for x in range(N_ITEMS)]
        creatures = (["none"]
                     + [Creature(x).name.lower() for x in range(N_CREATURES)]
                     + ["proj_player_arrow", "proj_player_fireball",
                        "proj_player_iceball", "proj_enemy_arrow",
                        "proj_enemy_magic", "proj_enemy_dagger",
                        "proj_enemy_water_bolt", "proj_enemy_fireball",
                        "proj_enemy_iceball"]
                     + [f"reserved_{k}" for k in range(EXT_RESERVED_CREATURE_CHANNELS)])
    inv = [{"name": name, "offset": tiles * stride + k, "length": 1,
            "scaling": scale}
           for k, (name, scale) in enumerate(inventory_fields(tier))]
    manifest = {
        "version": "1",
        "tier": tier.name,
        "total_length": obs_length(tier),
        "view": {"rows": tier.view_rows, "cols": tier.view_cols},
        "tile": {
            "stride": stride,
            "order": "row_major",
            "block_channels": blocks,
            "item_channels": items,
            "creature_channels": creatures,
            "light_offset": b + i + c,
            "light_mask_threshold": LIGHT_THRESHOLD,
        },
        "inventory": inv,
    }
    return manifest


def manifest_hash(tier: TierConf) -> str:
    payload = json.dumps(layout_manifest(tier), sort_keys=True).encode()
    return hashlib.sha256(payload).hexdigest()


# --- light model -------------------------------------------------------------

def daylight(time: np.ndarray) -> np.ndarray:
    """Overworld brightness over the day cycle; night floors at 0.15."""
    phase = (time % DAY_LENGTH).astype(np.float32) / np.float32(DAY_LENGTH)
    lift = np.sin(np.pi * np.minimum(phase, 0.5) * 2.0).astype(np.float32)
    return NIGHT_AMBIENT + (1.0 - NIGHT_AMBIENT) * np.maximum(lift, 0.0)


def day_phase(time: np.ndarray) -> np.ndarray:
    return (time % DAY_LENGTH).astype(np.float32) / np.float32(DAY_LENGTH)


def _torch_light(torch: np.ndarray) -> np.ndarray:
    """max over torches of (1 - chebyshev/4), via iterated neighbor-max."""
    light = torch.astype(np.float32)
    for _ in range(TORCH_RADIUS):
        spread = light.copy()
        np.maximum(spread[:, 1:, :], light[:, :-1, :], out=spread[:, 1:, :])
        np.maximum(spread[:, :-1, :], light[:, 1:, :], out=spread[:, :-1, :])
        core = spread.copy()
        np.maximum(spread[:, :, 1:], core[:, :, :-1], out=spread[:, :, 1:])
        np.maximum(spread[:, :, :-1], core[:, :, 1:], out=spread[:, :, :-1])
        light = np.maximum(light, spread - np.float32(0.25))
    return np.maximum(light, 0.0)


def view_window(sim: SimState):
    """Per-env (rows, cols) index grids of the egocentric view."""
    tier = sim.tier
    vr2, vc2 = tier.view_rows // 2, tier.view_cols // 2
    rows = sim.prow[:, None, None] + np.arange(-vr2, vr2 + 1, dtype=np.int16)[None, :, None]
    cols = sim.pcol[:, None, None] + np.arange(-vc2, vc2 + 1, dtype=np.int16)[None, None, :]
    rows = np.broadcast_to(rows, (sim.n, tier.view_rows, tier.view_cols))
    cols = np.broadcast_to(cols, (sim.n, tier.view_rows, tier.view_cols))
    return rows, cols


def light_window(sim: SimState) -> np.ndarray:
    """(n, view_rows, view_cols) light levels, torch glow included."""
    tier = sim.tier
    n = sim.n
    vr, vc = tier.view_rows, tier.view_cols
    ambient = FLOOR_AMBIENT[sim.pfloor]
    base = np.where(sim.pfloor == 0, daylight(sim.time), ambient)
    light = np.broadcast_to(base[:, None, None], (n, vr, vc)).astype(np.float32)

    if not tier.is_classic and bool((ambient < 1.0).any()):
        m = TORCH_RADIUS
        vr2, vc2 = vr // 2, vc // 2
        rows = sim.prow[:, None, None] + np.arange(-vr2 - m, vr2 + m + 1,
                                                   dtype=np.int16)[None, :, None]
        cols = sim.pcol[:, None, None] + np.arange(-vc2 - m, vc2 + m + 1,
                                                   dtype=np.int16)[None, None, :]
        rows = np.broadcast_to(rows, (n, vr + 2 * m, vc + 2 * m))
        cols = np.broadcast_to(cols, (n, vr + 2 * m, vc + 2 * m))
        itm = _gather_grid(sim, sim.items, 0, sim.pfloor.astype(np.intp), rows, cols)
        glow = _torch_light(itm == Item.TORCH)[:, m:-m, m:-m]
        light = np.maximum(light, glow)

    light = np.where(sim.sleeping[:, None, None], np.float32(0.0), light)
    return light


def _creature_channel_grid(sim: SimState, rows, cols) -> np.ndarray:
    """(n, vh, vw) creature channel per visible tile (0 = none)."""
    tier = sim.tier
    vh, vw = tier.view_rows, tier.view_cols
    grid = np.zeros((sim.n, vh, vw), np.int64)
    r0 = rows[:, 0, 0]
    c0 = cols[:, 0, 0]
    af = sim.pfloor.astype(np.intp)
    ar = np.arange(sim.n)

    def paint(pos, alive, channels):
        for lane in range(pos.shape[1]):
            live = alive[:, lane]
            wr = pos[:, lane, 0] - r0
            wc = pos[:, lane, 1] - c0
            ok = live & (wr >= 0) & (wr < vh) & (wc >= 0) & (wc < vw)
            if not ok.any():
                continue
            idx = np.nonzero(ok)[0]
            ch = channels if np.isscalar(channels) else channels[idx, lane]
            grid[idx, wr[idx], wc[idx]] = ch

    if tier.is_classic:
        mapping = np.zeros(N_CREATURES, np.int64)
        for kind, ch in _CLASSIC_CREATURE_LOCAL.items():
            mapping[kind] = ch
        paint(sim.mel_pos[:, 0], sim.mel_alive[:, 0], mapping[sim.mel_type[:, 0]])
        paint(sim.ran_pos[:, 0], sim.ran_alive[:, 0], mapping[sim.ran_type[:, 0]])
        paint(sim.pas_pos[:, 0], sim.pas_alive[:, 0], mapping[sim.pas_type[:, 0]])
        paint(sim.eproj_pos, sim.eproj_alive, CLASSIC_ARROW_CHANNEL)
    else:
        mel = sim.mel_pos[ar, af]
        paint(mel, sim.mel_alive[ar, af],
              sim.mel_type[ar, af].astype(np.int64) + CREATURE_CHANNEL_BASE)
        ran = sim.ran_pos[ar, af]
        paint(ran, sim.ran_alive[ar, af],
              sim.ran_type[ar, af].astype(np.int64) + CREATURE_CHANNEL_BASE)
        pas = sim.pas_pos[ar, af]
        paint(pas, sim.pas_alive[ar, af],
              sim.pas_type[ar, af].astype(np.int64) + CREATURE_CHANNEL_BASE)
        paint(sim.eproj_pos, sim.eproj_alive,
              sim.eproj_type.astype(np.int64) + PROJECTILE_CHANNEL_BASE)
        paint(sim.pproj_pos, sim.pproj_alive,
              sim.pproj_type.astype(np.int64) + PROJECTILE_CHANNEL_BASE)
    return grid


def _scaled_inventory(sim: SimState) -> dict[str, np.ndarray]:
    tier = sim.tier
    f32 = np.float32
    sq = {name: np.sqrt(getattr(sim, "inv_" + name).astype(f32)) / f32(10.0)
          for name in ("wood", "stone", "coal", "iron", "diamond", "sapling")}
    out = dict(sq)
    out["pickaxe"] = sim.pick_tier.astype(f32) / f32(4.0)
    out["sword"] = sim.sword_tier.astype(f32) / f32(4.0)
    out["health"] = sim.health / f32(10.0)
    out["food"] = sim.food / f32(10.0)
    out["drink"] = sim.drink / f32(10.0)
    out["energy"] = sim.energy / f32(10.0)
    for d in Direction:
        out["direction_" + d.name.lower()] = (sim.facing == d).astype(f32)
    out["day_night"] = day_phase(sim.time)
    out["sleeping"] = sim.sleeping.astype(f32)
    if tier.is_classic:
        return out
    for name in ("sapphire", "ruby", "torch", "arrow"):
        out[name] = np.sqrt(getattr(sim, "inv_" + name).astype(f32)) / f32(10.0)
    for k, color in enumerate(("red", "green", "blue", "pink", "cyan", "yellow")):
        out["potion_" + color] = np.sqrt(sim.inv_potion[:, k].astype(f32)) / f32(10.0)
    out["book"] = sim.inv_book.astype(f32) / f32(2.0)
    out["sword_enchantment"] = sim.sword_ench.astype(f32)
    out["bow"] = sim.has_bow.astype(f32)
    for k, part in enumerate(("head", "chest", "legs", "feet")):
        out["armour_" + part] = sim.armour[:, k].astype(f32) / f32(2.0)
        out["armour_enchantment_" + part] = sim.armour_ench[:, k].astype(f32)
    out["mana"] = sim.mana / f32(10.0)
    out["xp"] = sim.xp.astype(f32) / f32(10.0)
    out["dexterity"] = sim.dex.astype(f32) / f32(10.0)
    out["strength"] = sim.str_.astype(f32) / f32(10.0)
    out["intelligence"] = sim.intel.astype(f32) / f32(10.0)
    out["resting"] = sim.resting.astype(f32)
    out["learned_fireball"] = sim.learned_fire.astype(f32)
    out["learned_iceball"] = sim.learned_ice.astype(f32)
    out["floor"] = sim.pfloor.astype(f32) / f32(10.0)
    ar = np.arange(sim.n)
    out["floor_cleared"] = sim.floor_cleared[ar, sim.pfloor].astype(f32)
    out["boss_vulnerable"] = sim.boss_vuln.astype(f32)
    return out


def encode_symbolic_batch(sim: SimState) -> np.ndarray:
    """(n, L) float32 symbolic observations for a whole batch."""
    tier = sim.tier
    n = sim.n
    bch, ich, cch = _tile_channels(tier)
    stride = tile_stride(tier)
    tiles = tier.view_rows * tier.view_cols

    rows, cols = view_window(sim)
    af = sim.pfloor.astype(np.intp)
    blk = _gather_grid(sim, sim.blocks, Block.OUT_OF_BOUNDS, af, rows, cols)
    light = light_window(sim)
    lit = light >= LIGHT_THRESHOLD

    out = np.zeros((n, obs_length(tier)), np.float32)
    tile_view = out[:, :tiles * stride].reshape(n, tiles, stride)

    if tier.is_classic:
        local = _CLASSIC_BLOCK_LOCAL[blk]
    else:
        local = blk.astype(np.int64)
    np.put_along_axis(tile_view[:, :, :bch], local.reshape(n, tiles, 1),
                      lit.reshape(n, tiles, 1).astype(np.float32), axis=2)

    if ich:
        itm = _gather_grid(sim, sim.items, 0, af, rows, cols).astype(np.int64)
        np.put_along_axis(tile_view[:, :, bch:bch + ich],
                          itm.reshape(n, tiles, 1),
                          lit.reshape(n, tiles, 1).astype(np.float32), axis=2)

    cre = _creature_channel_grid(sim, rows, cols)
    np.put_along_axis(tile_view[:, :, bch + ich:bch + ich + cch],
                      cre.reshape(n, tiles, 1),
                      lit.reshape(n, tiles, 1).astype(np.float32), axis=2)

    tile_view[:, :, stride - 1] = light.reshape(n, tiles)

    inv = _scaled_inventory(sim)
    base = tiles * stride
    for k, (name, scale) in enumerate(inventory_fields(tier)):
        if scale == PAD:
            break
        out[:, base + k] = inv[name]
    return out


def encode_symbolic(state: GameState) -> np.ndarray:
    """Flat float32 observation for a single-environment state."""
    return encode_symbolic_batch(state.sim)[0]


def decode_symbolic(vec: np.ndarray, tier: TierConf) -> dict:
    """Invert the encoding: visible tile grids and integer inventory counts."""
    vec = np.asarray(vec)
    if vec.shape != (obs_length(tier),):
        raise ValueError(f"expected length {obs_length(tier)}, got {vec.shape}")
    bch, ich, cch = _tile_channels(tier)
    stride = tile_stride(tier)
    vh, vw = tier.view_rows, tier.view_cols
    tiles = vh * vw
    tv = vec[:tiles * stride].reshape(tiles, stride)
    light = tv[:, stride - 1].reshape(vh, vw).copy()
    lit = light >= LIGHT_THRESHOLD
    block = np.where(lit.reshape(-1), tv[:, :bch].argmax(axis=1), -1)
    item = (np.where(lit.reshape(-1), tv[:, bch:bch + ich].argmax(axis=1), -1)
            if ich else np.full(tiles, -1))
    creature = np.where(lit.reshape(-1),
                        tv[:, bch + ich:bch + ich + cch].argmax(axis=1), -1)

    inv: dict[str, float] = {}
    base = tiles * stride
    for k, (name, scale) in enumerate(inventory_fields(tier)):
        x = float(vec[base + k])
        if scale == PAD:
            continue
        if scale == SQRT:
            inv[name] = int(round((x * 10.0) ** 2))
        elif scale == HALF:
            inv[name] = int(round(x * 2.0))
        elif scale == QUARTER:
            inv[name] = int(round(x * 4.0))
        elif scale == LEVEL2:
            inv[name] = int(round(x * 2.0))
        elif scale == TENTH:
            inv[name] = round(x * 10.0, 1)
        elif scale in (INDICATOR, ENCHANT):
            inv[name] = int(round(x))
        else:
            inv[name] = x
    return {"block": block.reshape(vh, vw), "item": item.reshape(vh, vw),
            "creature": creature.reshape(vh, vw), "light": light,
            "inventory": inv}


# --- textual renderer ---------------------------------------------------------

def _block_text(block_id: int) -> str:
    return Block(block_id).name.lower().replace("_", " ")


_PROJ_TEXT = ["arrow", "fireball", "iceball", "arrow", "magic bolt", "dagger",
              "water bolt", "fireball", "iceball"]


def render_text(state: GameState) -> list[str]:
    """One line per visible tile, then one line per inventory/stat field."""
    sim = state.sim
    tier = sim.tier
    rows, cols = view_window(sim)
    af = sim.pfloor.astype(np.intp)
    blk = _gather_grid(sim, sim.blocks, Block.OUT_OF_BOUNDS, af, rows, cols)[0]
    itm = _gather_grid(sim, sim.items, 0, af, rows, cols)[0]
    light = light_window(sim)[0]
    cre = _creature_channel_grid(sim, rows, cols)[0]

    if tier.is_classic:
        cre_names = ["none", "zombie", "cow", "skeleton", "arrow"]
    else:
        cre_names = (["none"]
                     + [Creature(k).name.lower().replace("_", " ")
                        for k in range(N_CREATURES)]
                     + _PROJ_TEXT)
    item_names = ["none", "torch", "ladder down", "ladder up", "blocked ladder"]

    lines = []
    for r in range(tier.view_rows):
        for c in range(tier.view_cols):
            if light[r, c] < LIGHT_THRESHOLD:
                lines.append("darkness")
                continue
            lines.append(f"{cre_names[int(cre[r, c])]} on "
                         f"{item_names[int(itm[r, c])]} on "
                         f"{_block_text(int(blk[r, c]))}")

    inv = _scaled_inventory(sim)
    for name, scale in inventory_fields(tier):
        if scale == PAD:
            continue
        x = float(inv[name][0])
        if scale == SQRT:
            val = int(round((x * 10.0) ** 2))
        elif scale == HALF:
            val = int(round(x * 2.0))
        elif scale in (QUARTER, LEVEL2):
            val = int(round(x * (4.0 if scale == QUARTER else 2.0)))
        elif scale == TENTH:
            val = round(x * 10.0, 1)
            val = int(val) if float(val).is_integer() else val
        elif scale in (INDICATOR, ENCHANT):
            val = int(round(x))
        else:
            val = round(x, 3)
        lines.append(f"{name.upper()}: {val}")
    return lines
