"""RGB tile renderer for pixel-style observations and the play client.

The palette is engine-owned: every block id maps to a distinct colour, items
and creatures draw as inset squares, and a status strip below the map shows
the vital bars.  The extended tier adds a two-column side panel for gear.
Frame size is ((view_rows + 2) * px, (view_cols + side) * px, 3) where side
is 0 (classic) or 2 (extended); at the supported tile sizes that yields
63x63 frames for classic at 7 px and 110x130 for extended at 10 px.
"""

from __future__ import annotations

import numpy as np

from .constants import Block, Creature, N_BLOCKS, N_CREATURES
from .obs import (
    view_window, light_window, _creature_channel_grid, LIGHT_THRESHOLD,
    CLASSIC_ARROW_CHANNEL, CREATURE_CHANNEL_BASE, PROJECTILE_CHANNEL_BASE,
)
from ._kern import _gather_grid
from .constants import Item
from .state import GameState

SUPPORTED_TILE_PX = (7, 10, 16)

PALETTE = np.zeros((N_BLOCKS, 3), np.uint8)
PALETTE[Block.INVALID] = (0, 0, 0)
PALETTE[Block.OUT_OF_BOUNDS] = (10, 10, 10)
PALETTE[Block.GRASS] = (64, 160, 66)
PALETTE[Block.WATER] = (48, 92, 190)
PALETTE[Block.STONE] = (120, 120, 120)
PALETTE[Block.TREE] = (28, 100, 38)
PALETTE[Block.WOOD] = (134, 97, 55)
PALETTE[Block.PATH] = (160, 140, 110)
PALETTE[Block.COAL] = (60, 60, 64)
PALETTE[Block.IRON] = (188, 168, 152)
PALETTE[Block.DIAMOND] = (130, 220, 228)
PALETTE[Block.CRAFTING_TABLE] = (168, 120, 50)
PALETTE[Block.FURNACE] = (150, 80, 60)
PALETTE[Block.SAND] = (216, 200, 130)
PALETTE[Block.LAVA] = (230, 90, 16)
PALETTE[Block.PLANT] = (96, 190, 90)
PALETTE[Block.RIPE_PLANT] = (180, 210, 70)
PALETTE[Block.WALL] = (84, 78, 76)
PALETTE[Block.DARKNESS] = (4, 4, 4)
PALETTE[Block.WALL_MOSS] = (86, 110, 76)
PALETTE[Block.STALAGMITE] = (142, 134, 128)
PALETTE[Block.SAPPHIRE] = (60, 110, 230)
PALETTE[Block.RUBY] = (210, 40, 80)
PALETTE[Block.CHEST] = (196, 150, 40)
PALETTE[Block.FOUNTAIN] = (110, 170, 220)
PALETTE[Block.FIRE_GRASS] = (190, 110, 40)
PALETTE[Block.ICE_GRASS] = (180, 220, 240)
PALETTE[Block.GRAVEL] = (100, 96, 90)
PALETTE[Block.FIRE_TREE] = (150, 60, 20)
PALETTE[Block.ICE_SHRUB] = (140, 190, 210)
PALETTE[Block.ENCHANT_TABLE_FIRE] = (240, 140, 90)
PALETTE[Block.ENCHANT_TABLE_ICE] = (150, 200, 255)
PALETTE[Block.NECROMANCER] = (90, 20, 120)
PALETTE[Block.GRAVE] = (130, 130, 140)
PALETTE[Block.GRAVE2] = (118, 118, 130)
PALETTE[Block.GRAVE3] = (106, 106, 120)
PALETTE[Block.NECROMANCER_VULN] = (200, 60, 230)

CREATURE_COLORS = np.zeros((N_CREATURES, 3), np.uint8)
for _k in range(N_CREATURES):
    # spread hues deterministically; reds for hostiles, light tones for passive
    CREATURE_COLORS[_k] = (40 + 11 * _k, 255 - 12 * _k, 60 + 9 * _k)
CREATURE_COLORS[Creature.ZOMBIE] = (80, 200, 90)
CREATURE_COLORS[Creature.SKELETON] = (230, 230, 215)
CREATURE_COLORS[Creature.COW] = (240, 190, 160)

ITEM_COLORS = {
    int(Item.TORCH): (255, 220, 90),
    int(Item.LADDER_DOWN): (20, 20, 25),
    int(Item.LADDER_UP): (235, 235, 240),
    int(Item.LADDER_DOWN_BLOCKED): (70, 30, 30),
}

PLAYER_COLOR = np.array((250, 60, 60), np.uint8)
BAR_COLORS = [(220, 60, 60), (220, 160, 60), (70, 130, 230), (240, 230, 90),
              (150, 90, 220)]


def render_tiles(state: GameState, tile_px: int = 10) -> np.ndarray:
    """Deterministic RGB frame: map view plus a status strip."""
    if tile_px not in SUPPORTED_TILE_PX:
        raise ValueError(f"tile_px must be one of {SUPPORTED_TILE_PX}")
    sim = state.sim
    tier = sim.tier
    vh, vw = tier.view_rows, tier.view_cols
    side = 0 if tier.is_classic else 2
    frame_h = (vh + 2) * tile_px
    frame_w = (vw + side) * tile_px
    frame = np.zeros((frame_h, frame_w, 3), np.uint8)

    rows, cols = view_window(sim)
    af = sim.pfloor.astype(np.intp)
    blk = _gather_grid(sim, sim.blocks, Block.OUT_OF_BOUNDS, af, rows, cols)[0]
    itm = _gather_grid(sim, sim.items, 0, af, rows, cols)[0]
    light = light_window(sim)[0]
    cre = _creature_channel_grid(sim, rows, cols)[0]

    shade = np.clip(light, 0.0, 1.0)[..., None]
    tile_rgb = (PALETTE[blk].astype(np.float32) * shade).astype(np.uint8)
    dark = light < LIGHT_THRESHOLD
    tile_rgb[dark] = 0
    map_img = np.repeat(np.repeat(tile_rgb, tile_px, 0), tile_px, 1)

    inset = max(1, tile_px // 4)
    for r in range(vh):
        for c in range(vw):
            if dark[r, c]:
                continue
            y, x = r * tile_px, c * tile_px
            if itm[r, c]:
                color = ITEM_COLORS.get(int(itm[r, c]), (255, 255, 255))
                map_img[y + inset:y + tile_px - inset,
                        x + inset:x + tile_px - inset] = color
            ch = int(cre[r, c])
            if ch:
                map_img[y + inset:y + tile_px - inset,
                        x + inset:x + tile_px - inset] = _creature_color(tier, ch)
    # the player occupies the view centre
    y, x = (vh // 2) * tile_px, (vw // 2) * tile_px
    map_img[y + inset:y + tile_px - inset, x + inset:x + tile_px - inset] = \
        PLAYER_COLOR

    frame[:vh * tile_px, :vw * tile_px] = map_img
    _status_strip(frame, state, tile_px, vh, vw)
    if side:
        _side_panel(frame, state, tile_px, vh, vw)
    return frame


def _creature_color(tier, channel: int):
    if tier.is_classic:
        if channel == CLASSIC_ARROW_CHANNEL:
            return (250, 250, 250)
        kind = {1: Creature.ZOMBIE, 2: Creature.COW, 3: Creature.SKELETON}[channel]
        return tuple(int(v) for v in CREATURE_COLORS[kind])
    if channel >= PROJECTILE_CHANNEL_BASE:
        return (250, 250, 250)
    return tuple(int(v) for v in CREATURE_COLORS[channel - CREATURE_CHANNEL_BASE])


def _bar(frame, y, x, width, height, frac, color) -> None:
    fill = int(round(max(0.0, min(1.0, frac)) * width))
    frame[y:y + height, x:x + fill] = color
    frame[y:y + height, x + fill:x + width] = (30, 30, 30)


def _status_strip(frame, state: GameState, px, vh, vw) -> None:
    from .constants import health_max, food_max, mana_max
    sim = state.sim
    y0 = vh * px
    width = vw * px
    hmax = float(health_max(float(sim.str_[0])))
    fmax = float(food_max(float(sim.dex[0])))
    stats = [float(sim.health[0]) / hmax, float(sim.food[0]) / fmax,
             float(sim.drink[0]) / fmax, float(sim.energy[0]) / fmax]
    if not sim.tier.is_classic:
        stats.append(float(sim.mana[0]) / float(mana_max(float(sim.intel[0]))))
    bar_h = max(2, (2 * px) // (len(stats) + 1))
    for i, (frac, color) in enumerate(zip(stats, BAR_COLORS)):
        _bar(frame, y0 + 1 + i * bar_h, 1, width - 2, bar_h - 1, frac, color)


def _side_panel(frame, state: GameState, px, vh, vw) -> None:
    sim = state.sim
    x0 = vw * px
    cell = px
    gear = [
        (float(sim.sword_tier[0]) / 4.0, (200, 200, 210)),
        (float(sim.pick_tier[0]) / 4.0, (160, 160, 170)),
        (float(sim.armour[0].sum()) / 8.0, (120, 140, 200)),
        (float(sim.xp[0]) / 8.0, (240, 220, 90)),
        (float(sim.dex[0]) / 5.0, (90, 220, 140)),
        (float(sim.str_[0]) / 5.0, (220, 90, 90)),
        (float(sim.intel[0]) / 5.0, (140, 120, 240)),
    ]
    for i, (frac, color) in enumerate(gear):
        y = i * cell
        if y + cell > frame.shape[0]:
            break
        _bar(frame, y + 1, x0 + 1, 2 * px - 2, cell - 2, frac, color)
