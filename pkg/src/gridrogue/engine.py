"""The transition function.

``step_batch`` advances every environment in a SimState by one step, in
place, through the fixed phase order: player action, projectiles, creatures,
survival clocks, spawning, plants and the day clock, then achievements,
reward and termination.  ``reset``/``step`` wrap a one-environment SimState
behind a pure functional interface.

Unmet action preconditions never raise: the action degrades to a no-op and
the world still ticks.  Action kernels compress to the indices of the
environments actually taking each action, so a batch pays for what its
agents do rather than for the whole action set every step.
"""

from __future__ import annotations

import numpy as np

from . import rng as R
from ._kern import (
    Workspace, q1, resolve_attack_vec, gather_blocks, gather_blocks_idx,
    gather_items_idx, player_defense, hurt_player, award, award_by_id,
    SUB_SAPLING,
)
from .constants import (
    Action, Achievement, Block, Item, ChestLoot, PotionEffect, TierConf,
    Creature, DIR_OFFSETS, WALKABLE, PLACEABLE_STONE, PLACEABLE_SOLID,
    MINEABLE, SWORD_BASE_DAMAGE, ENTER_FLOOR_ACHIEVEMENT, PROJECTILE_TTL,
    Projectile, SPELL_MANA_COST, ENCHANT_MANA_COST, PLANT_FOOD, SAPLING_PROB,
    FOOD_INTERVAL, DRINK_INTERVAL, ENERGY_INTERVAL, SLEEP_ENERGY_INTERVAL,
    MANA_INTERVAL, STARVE_DAMAGE_INTERVAL, REGEN_INTERVAL,
    health_max, food_max, mana_max,
)
from .creatures import (
    ActiveLanes, advance_projectiles, creatures_act, spawn_despawn,
    grow_plants, damage_creatures_at, _check_boss_death,
)
from .state import SimState, GameState, StepOutcome, install_world
from .worldgen import World

_I16 = np.int16

_ENTER_ACH = np.full(9, 255, np.uint8)
for _f, _a in ENTER_FLOOR_ACHIEVEMENT.items():
    _ENTER_ACH[_f] = int(_a)

_ORE_INV = {
    Block.STONE: "inv_stone", Block.COAL: "inv_coal", Block.IRON: "inv_iron",
    Block.DIAMOND: "inv_diamond", Block.SAPPHIRE: "inv_sapphire",
    Block.RUBY: "inv_ruby", Block.STALAGMITE: "inv_stone",
}

# (action, tool attr, resulting tier, costs, needs table, needs furnace, flag)
_CRAFT_RECIPES = [
    (Action.MAKE_WOOD_PICKAXE, "pick_tier", 1, (("inv_wood", 1),), True, False,
     Achievement.MAKE_WOOD_PICKAXE),
    (Action.MAKE_STONE_PICKAXE, "pick_tier", 2,
     (("inv_wood", 1), ("inv_stone", 1)), True, False,
     Achievement.MAKE_STONE_PICKAXE),
    (Action.MAKE_IRON_PICKAXE, "pick_tier", 3,
     (("inv_wood", 1), ("inv_coal", 1), ("inv_iron", 1)), True, True,
     Achievement.MAKE_IRON_PICKAXE),
    (Action.MAKE_DIAMOND_PICKAXE, "pick_tier", 4,
     (("inv_wood", 1), ("inv_diamond", 2)), True, False,
     Achievement.MAKE_DIAMOND_PICKAXE),
    (Action.MAKE_WOOD_SWORD, "sword_tier", 1, (("inv_wood", 1),), True, False,
     Achievement.MAKE_WOOD_SWORD),
    (Action.MAKE_STONE_SWORD, "sword_tier", 2,
     (("inv_wood", 1), ("inv_stone", 1)), True, False,
     Achievement.MAKE_STONE_SWORD),
    (Action.MAKE_IRON_SWORD, "sword_tier", 3,
     (("inv_wood", 1), ("inv_coal", 1), ("inv_iron", 1)), True, True,
     Achievement.MAKE_IRON_SWORD),
    (Action.MAKE_DIAMOND_SWORD, "sword_tier", 4,
     (("inv_wood", 1), ("inv_diamond", 2)), True, False,
     Achievement.MAKE_DIAMOND_SWORD),
]


def resolve_attack(attacker_damage, defender_defense) -> float:
    """Damage dealt by a (phys, fire, ice) hit against percent defenses."""
    dmg = np.asarray(attacker_damage, np.float64)
    defense = np.asarray(defender_defense, np.float64)
    if ((defense < 0) | (defense > 100)).any():
        raise ValueError("defense percentages must lie in [0, 100]")
    dealt = float((dmg * (1.0 - defense / 100.0)).sum())
    dealt = max(dealt, 0.0)
    return np.floor(dealt * 10.0 + 0.5) / 10.0


def _melee_damage_at(sim, idx) -> np.ndarray:
    """(k, 3) player melee damage for the chosen envs."""
    phys = q1(SWORD_BASE_DAMAGE[sim.sword_tier[idx]]
              * (np.float32(0.5) + sim.str_[idx].astype(np.float32) * np.float32(0.5)))
    elem = q1(phys * np.float32(0.5))
    out = np.zeros((len(idx), 3), np.float32)
    out[:, 0] = phys
    out[:, 1] = np.where(sim.sword_ench[idx] == 1, elem, 0)
    out[:, 2] = np.where(sim.sword_ench[idx] == 2, elem, 0)
    return out


def _creature_occupies_at(act, idx, r, c) -> np.ndarray:
    """Per-subset-env: does any live creature stand on the target tile."""
    pos, alive = act.occupancy()
    p = pos[idx]
    return (alive[idx] & (p[..., 0] == r[:, None])
            & (p[..., 1] == c[:, None])).any(axis=1)


def _spawn_player_projectile(sim, idx, kind, dmg_rows) -> np.ndarray:
    """Fire projectiles for the subset envs; returns which ones had a lane."""
    free = ~sim.pproj_alive[idx]
    ok = free.any(axis=1)
    slot = free.argmax(axis=1)
    g = idx[ok]
    s = slot[ok]
    sim.pproj_pos[g, s, 0] = sim.prow[g]
    sim.pproj_pos[g, s, 1] = sim.pcol[g]
    sim.pproj_dir[g, s] = sim.facing[g]
    sim.pproj_type[g, s] = kind
    sim.pproj_ttl[g, s] = PROJECTILE_TTL
    sim.pproj_dmg[g, s] = dmg_rows[ok]
    sim.pproj_alive[g, s] = True
    return ok


def _inv_add_at(sim, attr: str, idx) -> None:
    arr = getattr(sim, attr)
    arr[idx] = np.minimum(arr[idx] + 1, 99)


def _pay_at(sim, idx, costs) -> None:
    for attr, amount in costs:
        getattr(sim, attr)[idx] -= amount


def _facing_targets(sim, idx):
    step = DIR_OFFSETS[sim.facing[idx]]
    return sim.prow[idx] + step[:, 0], sim.pcol[idx] + step[:, 1]


def _do_interact(sim, ws: Workspace, tier: TierConf, idx: np.ndarray,
                 act0: ActiveLanes) -> None:
    """DO: attack the faced creature, else interact with the faced block."""
    if len(idx) == 0:
        return
    tr, tc = _facing_targets(sim, idx)
    af_sub = act0.af[idx]

    live = np.ones(len(idx), bool)
    dmg_rows = None
    for cls in ("mel", "ran", "pas"):
        pos = getattr(act0, cls + "_pos")[idx]
        alive = getattr(act0, cls + "_alive")[idx]
        match = alive & (pos[..., 0] == tr[:, None]) & (pos[..., 1] == tc[:, None])
        hit = live & match.any(axis=1)
        if hit.any():
            if dmg_rows is None:
                dmg_rows = _melee_damage_at(sim, idx)
            damage_creatures_at(sim, ws, tier, act0, cls, idx[hit],
                                match.argmax(axis=1)[hit], dmg_rows[hit])
            live &= ~hit
    if not live.any():
        return
    idx = idx[live]
    tr, tc = tr[live], tc[live]
    af_sub = af_sub[live]

    tb = gather_blocks_idx(sim, idx, af_sub, tr, tc)

    # chopping and foraging
    woody = (tb == Block.TREE) | (tb == Block.FIRE_TREE) | (tb == Block.ICE_SHRUB)
    if woody.any():
        _inv_add_at(sim, "inv_wood", idx[woody])
        award_by_id(ws, tier, idx[woody], Achievement.COLLECT_WOOD)

    grassy = tb == Block.GRASS
    if grassy.any():
        sapling = grassy & (ws.draw_at(SUB_SAPLING, idx) < SAPLING_PROB)
        if sapling.any():
            _inv_add_at(sim, "inv_sapling", idx[sapling])
            award_by_id(ws, tier, idx[sapling], Achievement.COLLECT_SAPLING)

    drinkable = (tb == Block.WATER) | (tb == Block.FOUNTAIN)
    if drinkable.any():
        g = idx[drinkable]
        fmax = food_max(sim.dex[g].astype(np.float32))
        sim.drink[g] = q1(np.minimum(sim.drink[g] + 1, fmax))
        award_by_id(ws, tier, g, Achievement.COLLECT_DRINK)
        fountain = tb == Block.FOUNTAIN
        if fountain.any():
            g = idx[fountain]
            mmax = mana_max(sim.intel[g].astype(np.float32))
            sim.mana[g] = q1(np.minimum(sim.mana[g] + 1, mmax))

    # mining
    for block, (req, ach) in MINEABLE.items():
        m = (tb == block) & (sim.pick_tier[idx] >= req)
        if not m.any():
            continue
        g = idx[m]
        _inv_add_at(sim, _ORE_INV[block], g)
        sim.blocks[g, af_sub[m], tr[m], tc[m]] = Block.PATH
        if ach is not None:
            award_by_id(ws, tier, g, ach)

    ripe = tb == Block.RIPE_PLANT
    if ripe.any():
        g = idx[ripe]
        fmax = food_max(sim.dex[g].astype(np.float32))
        sim.food[g] = q1(np.minimum(sim.food[g] + PLANT_FOOD, fmax))
        award_by_id(ws, tier, g, Achievement.EAT_PLANT)
        sim.blocks[g, af_sub[ripe], tr[ripe], tc[ripe]] = Block.PLANT
        slot = (sim.plant_alive[g]
                & (sim.plant_pos[g, :, 0] == tr[ripe][:, None])
                & (sim.plant_pos[g, :, 1] == tc[ripe][:, None]))
        env, lane = np.nonzero(slot)
        sim.plant_age[g[env], lane] = 0

    if not tier.is_classic:
        chest = tb == Block.CHEST
        if chest.any():
            _open_chests(sim, ws, tier, idx[chest], af_sub[chest],
                         tr[chest], tc[chest])
        vuln = (tb == Block.NECROMANCER_VULN) & sim.boss_vuln[idx]
        if vuln.any():
            if dmg_rows is None:
                dmg_rows = _melee_damage_at(sim, idx)
                dealt = resolve_attack_vec(dmg_rows, np.zeros_like(dmg_rows))
            else:
                sub = _melee_damage_at(sim, idx)
                dealt = resolve_attack_vec(sub, np.zeros_like(sub))
            g = idx[vuln]
            sim.boss_hp[g] -= dealt[vuln]
            award_by_id(ws, tier, g, Achievement.DAMAGE_NECROMANCER)
            _check_boss_death(sim, ws, tier)


def _open_chests(sim, ws: Workspace, tier: TierConf, idx, af_sub, tr, tc):
    cpos = sim.chest_pos[idx, af_sub]
    cloot = sim.chest_loot[idx, af_sub]
    match = ((cloot != ChestLoot.NOTHING)
             & (cpos[..., 0] == tr[:, None]) & (cpos[..., 1] == tc[:, None]))
    hit = match.any(axis=1)
    if not hit.any():
        return
    lane = match.argmax(axis=1)[hit]
    env = idx[hit]
    floors = af_sub[hit]
    loot = sim.chest_loot[env, floors, lane]
    qty = sim.chest_qty[env, floors, lane]
    aux = sim.chest_aux[env, floors, lane]

    bow = loot == ChestLoot.BOW
    sim.has_bow[env[bow]] = True
    award_by_id(ws, tier, env[bow], Achievement.FIND_BOW)
    book = loot == ChestLoot.BOOK
    np.add.at(sim.inv_book, env[book], qty[book])
    potion = loot == ChestLoot.POTION
    np.add.at(sim.inv_potion, (env[potion], aux[potion]), qty[potion])
    arrows = loot == ChestLoot.ARROWS
    np.add.at(sim.inv_arrow, env[arrows], qty[arrows])
    torches = loot == ChestLoot.TORCHES
    np.add.at(sim.inv_torch, env[torches], qty[torches])
    for attr in ("inv_book", "inv_potion", "inv_arrow", "inv_torch"):
        arr = getattr(sim, attr)
        np.minimum(arr, 99, out=arr)

    sim.chest_loot[env, floors, lane] = ChestLoot.NOTHING
    sim.blocks[env, floors, tr[hit], tc[hit]] = Block.PATH
    award_by_id(ws, tier, env, Achievement.OPEN_CHEST)


def _place_actions(sim, ws: Workspace, tier: TierConf, eff, act0) -> None:
    lo, hi = int(Action.PLACE_STONE), int(Action.PLACE_PLANT)
    placing = (eff >= lo) & (eff <= hi)
    if not tier.is_classic:
        placing |= eff == Action.PLACE_TORCH
    idx = np.nonzero(placing)[0]
    if len(idx) == 0:
        return
    a = eff[idx]
    tr, tc = _facing_targets(sim, idx)
    af_sub = act0.af[idx]
    tb = gather_blocks_idx(sim, idx, af_sub, tr, tc)
    ti = gather_items_idx(sim, idx, af_sub, tr, tc)
    open_tile = (ti == Item.EMPTY) & ~_creature_occupies_at(act0, idx, tr, tc)

    def put(m, block, ach):
        g = idx[m]
        sim.blocks[g, af_sub[m], tr[m], tc[m]] = block
        if ach is not None:
            award_by_id(ws, tier, g, ach)
        return g

    m = (a == Action.PLACE_STONE) & (sim.inv_stone[idx] > 0) \
        & PLACEABLE_STONE[tb] & open_tile
    if m.any():
        g = put(m, Block.STONE, Achievement.PLACE_STONE)
        sim.inv_stone[g] -= 1

    m = (a == Action.PLACE_TABLE) & (sim.inv_wood[idx] > 0) \
        & PLACEABLE_SOLID[tb] & open_tile
    if m.any():
        g = put(m, Block.CRAFTING_TABLE, Achievement.PLACE_TABLE)
        sim.inv_wood[g] -= 1

    m = (a == Action.PLACE_FURNACE) & (sim.inv_stone[idx] > 0) \
        & PLACEABLE_SOLID[tb] & open_tile
    if m.any():
        g = put(m, Block.FURNACE, Achievement.PLACE_FURNACE)
        sim.inv_stone[g] -= 1

    m = ((a == Action.PLACE_PLANT) & (sim.inv_sapling[idx] > 0)
         & (tb == Block.GRASS) & open_tile & (af_sub == 0))
    if m.any():
        free = ~sim.plant_alive[idx]
        m &= free.any(axis=1)
        if m.any():
            slot = free.argmax(axis=1)[m]
            g = put(m, Block.PLANT, Achievement.PLACE_PLANT)
            sim.plant_pos[g, slot, 0] = tr[m]
            sim.plant_pos[g, slot, 1] = tc[m]
            sim.plant_age[g, slot] = 0
            sim.plant_alive[g, slot] = True
            sim.inv_sapling[g] -= 1

    if not tier.is_classic:
        m = ((a == Action.PLACE_TORCH) & (sim.inv_torch[idx] > 0)
             & WALKABLE[tb] & open_tile)
        if m.any():
            g = idx[m]
            sim.items[g, af_sub[m], tr[m], tc[m]] = Item.TORCH
            sim.inv_torch[g] -= 1
            award_by_id(ws, tier, g, Achievement.PLACE_TORCH)


def _near_blocks(sim, idx, af_sub):
    """3x3 neighbourhood block window for the chosen envs."""
    rr = sim.prow[idx][:, None] + np.array([-1, -1, -1, 0, 0, 0, 1, 1, 1], _I16)
    cc = sim.pcol[idx][:, None] + np.array([-1, 0, 1, -1, 0, 1, -1, 0, 1], _I16)
    return gather_blocks_idx(sim, idx, af_sub, rr, cc)


def _craft_actions(sim, ws: Workspace, tier: TierConf, eff, act0) -> None:
    crafting = ((eff >= Action.MAKE_WOOD_PICKAXE)
                & (eff <= Action.MAKE_IRON_SWORD))
    if not tier.is_classic:
        crafting |= ((eff == Action.MAKE_DIAMOND_PICKAXE)
                     | (eff == Action.MAKE_DIAMOND_SWORD)
                     | (eff == Action.MAKE_IRON_ARMOUR)
                     | (eff == Action.MAKE_DIAMOND_ARMOUR)
                     | (eff == Action.MAKE_ARROW)
                     | (eff == Action.MAKE_TORCH)
                     | (eff == Action.ENCHANT_SWORD)
                     | (eff == Action.ENCHANT_ARMOUR)
                     | (eff == Action.ENCHANT_BOW))
    idx = np.nonzero(crafting)[0]
    if len(idx) == 0:
        return
    a = eff[idx]
    win = _near_blocks(sim, idx, act0.af[idx])
    near_table = (win == Block.CRAFTING_TABLE).any(axis=1)
    near_furnace = (win == Block.FURNACE).any(axis=1)

    for action, attr, level, costs, need_t, need_f, ach in _CRAFT_RECIPES:
        if action >= tier.n_actions:
            continue
        tool = getattr(sim, attr)
        m = (a == action) & (tool[idx] < level)
        if need_t:
            m &= near_table
        if need_f:
            m &= near_furnace
        for cost_attr, amount in costs:
            m &= getattr(sim, cost_attr)[idx] >= amount
        if not m.any():
            continue
        g = idx[m]
        _pay_at(sim, g, costs)
        tool[g] = level
        award_by_id(ws, tier, g, ach)

    if tier.is_classic:
        return

    m = ((a == Action.MAKE_ARROW) & near_table
         & (sim.inv_wood[idx] >= 1) & (sim.inv_stone[idx] >= 1))
    if m.any():
        g = idx[m]
        _pay_at(sim, g, (("inv_wood", 1), ("inv_stone", 1)))
        sim.inv_arrow[g] = np.minimum(sim.inv_arrow[g] + 2, 99)
        award_by_id(ws, tier, g, Achievement.MAKE_ARROW)

    m = (a == Action.MAKE_TORCH) & (sim.inv_wood[idx] >= 1) \
        & (sim.inv_coal[idx] >= 1)
    if m.any():
        g = idx[m]
        _pay_at(sim, g, (("inv_wood", 1), ("inv_coal", 1)))
        sim.inv_torch[g] = np.minimum(sim.inv_torch[g] + 4, 99)
        award_by_id(ws, tier, g, Achievement.MAKE_TORCH)

    m = ((a == Action.MAKE_IRON_ARMOUR) & near_table & near_furnace
         & (sim.inv_iron[idx] >= 2) & (sim.inv_coal[idx] >= 1))
    if m.any():
        slot = sim.armour[idx].argmin(axis=1)
        m &= sim.armour[idx, slot] < 1
        if m.any():
            g = idx[m]
            sim.armour[g, slot[m]] = 1
            _pay_at(sim, g, (("inv_iron", 2), ("inv_coal", 1)))
            award_by_id(ws, tier, g, Achievement.MAKE_IRON_ARMOUR)

    m = (a == Action.MAKE_DIAMOND_ARMOUR) & near_table \
        & (sim.inv_diamond[idx] >= 2)
    if m.any():
        slot = sim.armour[idx].argmin(axis=1)
        m &= sim.armour[idx, slot] < 2
        if m.any():
            g = idx[m]
            sim.armour[g, slot[m]] = 2
            _pay_at(sim, g, (("inv_diamond", 2),))
            award_by_id(ws, tier, g, Achievement.MAKE_DIAMOND_ARMOUR)

    enchanting = ((a == Action.ENCHANT_SWORD) | (a == Action.ENCHANT_ARMOUR)
                  | (a == Action.ENCHANT_BOW))
    if enchanting.any():
        near_fire = (win == Block.ENCHANT_TABLE_FIRE).any(axis=1)
        near_ice = (win == Block.ENCHANT_TABLE_ICE).any(axis=1)
        can_fire = near_fire & (sim.inv_ruby[idx] >= 1) \
            & (sim.mana[idx] >= ENCHANT_MANA_COST)
        can_ice = near_ice & (sim.inv_sapphire[idx] >= 1) \
            & (sim.mana[idx] >= ENCHANT_MANA_COST)

        m = (a == Action.ENCHANT_SWORD) & (sim.sword_tier[idx] > 0)
        _apply_enchant(sim, ws, tier, idx, m & can_fire, m & ~can_fire & can_ice,
                       "sword_ench", Achievement.ENCHANT_SWORD)
        m = (a == Action.ENCHANT_BOW) & sim.has_bow[idx]
        _apply_enchant(sim, ws, tier, idx, m & can_fire, m & ~can_fire & can_ice,
                       "bow_ench", None)

        m = a == Action.ENCHANT_ARMOUR
        if m.any():
            cand = (sim.armour[idx] > 0) & (sim.armour_ench[idx] == 0)
            has = cand.any(axis=1)
            slot = cand.argmax(axis=1)
            mf = m & can_fire & has
            mi = m & ~mf & can_ice & has
            for mm, ench, gem in ((mf, 1, "inv_ruby"), (mi, 2, "inv_sapphire")):
                if not mm.any():
                    continue
                g = idx[mm]
                sim.armour_ench[g, slot[mm]] = ench
                _pay_at(sim, g, ((gem, 1),))
                sim.mana[g] -= np.float32(ENCHANT_MANA_COST)
                award_by_id(ws, tier, g, Achievement.ENCHANT_ARMOUR)


def _apply_enchant(sim, ws, tier, idx, mf, mi, attr: str, ach) -> None:
    arr = getattr(sim, attr)
    for mm, ench, gem in ((mf, 1, "inv_ruby"), (mi, 2, "inv_sapphire")):
        if not mm.any():
            continue
        g = idx[mm]
        arr[g] = ench
        _pay_at(sim, g, ((gem, 1),))
        sim.mana[g] -= np.float32(ENCHANT_MANA_COST)
        if ach is not None:
            award_by_id(ws, tier, g, ach)


def _consumables(sim, ws: Workspace, tier: TierConf, eff) -> None:
    is_potion = (eff >= Action.DRINK_POTION_RED) & (eff <= Action.DRINK_POTION_YELLOW)
    idx = np.nonzero(is_potion)[0]
    if len(idx):
        color = (eff[idx] - np.uint8(Action.DRINK_POTION_RED)).astype(np.intp)
        have = sim.inv_potion[idx, color] > 0
        idx, color = idx[have], color[have]
        if len(idx):
            sim.inv_potion[idx, color] -= 1
            effect = sim.potion_map[idx, color]
            hmax = health_max(sim.str_[idx].astype(np.float32))
            fmax = food_max(sim.dex[idx].astype(np.float32))
            mmax = mana_max(sim.intel[idx].astype(np.float32))
            heal = effect == PotionEffect.HEAL
            g = idx[heal]
            sim.health[g] = q1(np.minimum(sim.health[g] + 8, hmax[heal]))
            g = idx[effect == PotionEffect.MANA]
            sim.mana[g] = q1(np.minimum(sim.mana[g] + 8,
                                        mmax[effect == PotionEffect.MANA]))
            g = idx[effect == PotionEffect.ENERGY]
            sim.energy[g] = q1(np.minimum(sim.energy[g] + 8,
                                          fmax[effect == PotionEffect.ENERGY]))
            harm = effect == PotionEffect.HARM
            if harm.any():
                amount = np.zeros(sim.n, np.float32)
                amount[idx[harm]] = 3.0
                hurt_player(sim, ws, amount, amount > 0)
            g = idx[effect == PotionEffect.DRAIN]
            sim.mana[g] = q1(np.maximum(sim.mana[g] - 3, 0))
            nourish = effect == PotionEffect.NOURISH
            g = idx[nourish]
            sim.food[g] = q1(np.minimum(sim.food[g] + 4, fmax[nourish]))
            sim.drink[g] = q1(np.minimum(sim.drink[g] + 4, fmax[nourish]))
            award_by_id(ws, tier, idx, Achievement.DRINK_POTION)

    reading = (eff == Action.READ_BOOK) & (sim.inv_book > 0)
    if reading.any():
        learn_fire = reading & ~sim.learned_fire
        learn_ice = reading & sim.learned_fire & ~sim.learned_ice
        consumed = learn_fire | learn_ice
        np.subtract(sim.inv_book, 1, out=sim.inv_book, where=consumed)
        sim.learned_fire |= learn_fire
        sim.learned_ice |= learn_ice
        award(ws, tier, learn_fire, Achievement.LEARN_FIREBALL)
        award(ws, tier, learn_ice, Achievement.LEARN_ICEBALL)


def _level_ups(sim, eff) -> None:
    can = sim.xp >= 1
    if not can.any():
        return
    for action, attr in ((Action.LEVEL_UP_DEXTERITY, "dex"),
                         (Action.LEVEL_UP_STRENGTH, "str_"),
                         (Action.LEVEL_UP_INTELLIGENCE, "intel")):
        arr = getattr(sim, attr)
        m = (eff == action) & can & (arr < 5)
        np.add(arr, 1, out=arr, where=m)
        np.subtract(sim.xp, 1, out=sim.xp, where=m)


def _ladder_moves(sim, ws: Workspace, tier: TierConf, eff) -> None:
    climbing = (eff == Action.DESCEND) | (eff == Action.ASCEND)
    idx = np.nonzero(climbing)[0]
    if len(idx) == 0:
        return
    here = gather_items_idx(sim, idx, sim.pfloor[idx].astype(np.intp),
                            sim.prow[idx], sim.pcol[idx])
    down = (eff[idx] == Action.DESCEND) & (here == Item.LADDER_DOWN) \
        & (sim.pfloor[idx] + 1 < tier.n_floors)
    up = (eff[idx] == Action.ASCEND) & (here == Item.LADDER_UP) \
        & (sim.pfloor[idx] > 0)
    moved = down | up
    if not moved.any():
        return
    idx = idx[moved]
    down = down[moved]
    nf = (sim.pfloor[idx] + np.where(down, 1, -1)).astype(np.uint8)
    sim.pfloor[idx] = nf
    g = idx[down]
    sim.prow[g] = sim.ladder_up[g, nf[down], 0]
    sim.pcol[g] = sim.ladder_up[g, nf[down], 1]
    g = idx[~down]
    sim.prow[g] = sim.ladder_down[g, nf[~down], 0]
    sim.pcol[g] = sim.ladder_down[g, nf[~down], 1]
    # projectiles stay behind on the old floor and are dropped
    sim.pproj_alive[idx] = False
    sim.eproj_alive[idx] = False
    first = ~sim.floors_visited[idx, nf]
    if first.any():
        g = idx[first]
        sim.floors_visited[g, nf[first]] = True
        sim.xp[g] = np.minimum(sim.xp[g] + 1, 255)
        award_by_id(ws, tier, g, _ENTER_ACH[nf[first]])


def _apply_player_actions(sim, ws: Workspace, tier: TierConf,
                          actions: np.ndarray) -> None:
    asleep = sim.sleeping | sim.resting
    eff = np.where(asleep, np.uint8(Action.NOOP), actions.astype(np.uint8))

    act0 = ActiveLanes(sim, ws)

    # movement turns first, then steps onto free walkable tiles
    moving = (eff >= Action.LEFT) & (eff <= Action.DOWN)
    idx = np.nonzero(moving)[0]
    if len(idx):
        sim.facing[idx] = eff[idx] - np.uint8(1)
        tr, tc = _facing_targets(sim, idx)
        tb = gather_blocks_idx(sim, idx, act0.af[idx], tr, tc)
        ok = WALKABLE[tb] & ~_creature_occupies_at(act0, idx, tr, tc)
        g = idx[ok]
        sim.prow[g] = tr[ok]
        sim.pcol[g] = tc[ok]

    _do_interact(sim, ws, tier, np.nonzero(eff == Action.DO)[0], act0)

    dozing = (eff == Action.SLEEP) & ~sim.sleeping
    if dozing.any():
        fmax = food_max(sim.dex.astype(np.float32))
        sim.sleeping |= dozing & (sim.energy < fmax)

    _place_actions(sim, ws, tier, eff, act0)
    _craft_actions(sim, ws, tier, eff, act0)

    if not tier.is_classic:
        np.copyto(sim.resting, sim.resting | (eff == Action.REST))
        _ladder_moves(sim, ws, tier, eff)

        idx = np.nonzero((eff == Action.SHOOT_ARROW) & sim.has_bow
                         & (sim.inv_arrow > 0))[0]
        if len(idx):
            phys = q1(np.float32(3.0) + sim.dex[idx].astype(np.float32))
            elem = q1(phys * np.float32(0.5))
            dmg = np.zeros((len(idx), 3), np.float32)
            dmg[:, 0] = phys
            dmg[:, 1] = np.where(sim.bow_ench[idx] == 1, elem, 0)
            dmg[:, 2] = np.where(sim.bow_ench[idx] == 2, elem, 0)
            fired = _spawn_player_projectile(sim, idx, Projectile.PLAYER_ARROW,
                                             dmg)
            g = idx[fired]
            sim.inv_arrow[g] -= 1
            award_by_id(ws, tier, g, Achievement.FIRE_BOW)

        for action, learned, kind, col, ach in (
                (Action.CAST_FIREBALL, sim.learned_fire,
                 Projectile.PLAYER_FIREBALL, 1, Achievement.CAST_FIREBALL),
                (Action.CAST_ICEBALL, sim.learned_ice,
                 Projectile.PLAYER_ICEBALL, 2, Achievement.CAST_ICEBALL)):
            idx = np.nonzero((eff == action) & learned
                             & (sim.mana >= SPELL_MANA_COST))[0]
            if len(idx) == 0:
                continue
            dmg = np.zeros((len(idx), 3), np.float32)
            dmg[:, col] = np.float32(6.0) + sim.intel[idx].astype(np.float32)
            cast = _spawn_player_projectile(sim, idx, kind, dmg)
            g = idx[cast]
            sim.mana[g] = q1(sim.mana[g] - np.float32(SPELL_MANA_COST))
            award_by_id(ws, tier, g, ach)

        _consumables(sim, ws, tier, eff)
        _level_ups(sim, eff)


_CLOCK_BASE = np.array([FOOD_INTERVAL, DRINK_INTERVAL, ENERGY_INTERVAL],
                       np.uint16)


def _survival_tick(sim, ws: Workspace, tier: TierConf) -> None:
    dex = sim.dex.astype(np.uint16)
    hmax = health_max(sim.str_.astype(np.float32))
    fmax = food_max(sim.dex.astype(np.float32))
    one = np.float32(1.0)

    clocks = sim.clocks
    clocks[:, :4] += 1
    limits = _CLOCK_BASE * dex[:, None]
    due = clocks[:, :3] >= limits
    starve, parch, tire = due[:, 0], due[:, 1], due[:, 2]
    if sim.sleeping.any():
        recover = sim.sleeping & (clocks[:, 2] >= SLEEP_ENERGY_INTERVAL)
        tire = tire & ~sim.sleeping
        np.copyto(sim.energy, np.where(recover, np.minimum(sim.energy + 1, fmax),
                                       sim.energy))
        clocks[recover, 2] = 0
    if due.any():
        np.subtract(sim.food, one, out=sim.food, where=starve)
        np.subtract(sim.drink, one, out=sim.drink, where=parch)
        np.subtract(sim.energy, one, out=sim.energy, where=tire)
        clocks[:, :3][due] = 0
        np.maximum(sim.food, 0, out=sim.food)
        np.maximum(sim.drink, 0, out=sim.drink)
        np.maximum(sim.energy, 0, out=sim.energy)

    mend = clocks[:, 3] >= MANA_INTERVAL
    if mend.any():
        mmax = mana_max(sim.intel.astype(np.float32))
        np.copyto(sim.mana, np.where(mend, np.minimum(sim.mana + 1, mmax),
                                     sim.mana))
        clocks[mend, 3] = 0

    depleted = ((sim.food <= 0).astype(np.float32)
                + (sim.drink <= 0).astype(np.float32)
                + (sim.energy <= 0).astype(np.float32))
    starving = depleted > 0
    np.copyto(clocks[:, 4], np.where(starving, clocks[:, 4] + 1, 0)
              .astype(np.uint16))
    hit = clocks[:, 4] >= STARVE_DAMAGE_INTERVAL
    if hit.any():
        hurt_player(sim, ws, depleted, hit)
        clocks[hit, 4] = 0

    healthy = ~starving & (sim.health < hmax) & (sim.health > 0)
    np.copyto(clocks[:, 5], np.where(healthy, clocks[:, 5] + 1, 0)
              .astype(np.uint16))
    mend = clocks[:, 5] >= REGEN_INTERVAL
    if mend.any():
        np.copyto(sim.health, np.where(mend, q1(np.minimum(sim.health + 1, hmax)),
                                       sim.health))
        clocks[mend, 5] = 0

    if sim.sleeping.any():
        woke = sim.sleeping & (sim.energy >= fmax)
        sim.sleeping &= ~woke
        award(ws, tier, woke, Achievement.WAKE_UP)
        sim.sleeping &= ~ws.hurt
    if not tier.is_classic and sim.resting.any():
        sim.resting &= ~ws.hurt
        sim.resting &= ~((sim.health >= hmax) | starving)


_TIER_VALUES: dict = {}


def step_batch(sim: SimState, actions: np.ndarray, ws: Workspace):
    """Advance every environment once, in place.

    Returns (reward f64, done bool, newly bool (n, A), health_delta f32).
    """
    tier = sim.tier
    actions = np.asarray(actions)
    if actions.shape != (sim.n,):
        raise ValueError(f"actions must have shape ({sim.n},)")
    if (actions < 0).any() or (actions >= tier.n_actions).any():
        bad = int(np.argmax((actions < 0) | (actions >= tier.n_actions)))
        raise ValueError(f"invalid action id {int(actions[bad])} for env {bad}")

    ws.begin_step(sim)
    _apply_player_actions(sim, ws, tier, actions)

    act = ActiveLanes(sim, ws)
    advance_projectiles(sim, ws, tier, act)
    creatures_act(sim, ws, tier, act)
    _survival_tick(sim, ws, tier)
    spawn_despawn(sim, ws, tier, act)
    act.writeback(sim, ws)
    grow_plants(sim, ws, tier)
    sim.time += 1

    if ws.unlock.any():
        newly = ws.unlock & ~sim.ach
        sim.ach |= newly
        vals = _TIER_VALUES.get(tier.name)
        if vals is None:
            vals = tier.ach_tier.astype(np.float64)
            _TIER_VALUES[tier.name] = vals
        reward = (newly * vals).sum(axis=1)
    else:
        newly = np.zeros_like(ws.unlock)
        reward = np.zeros(sim.n, np.float64)
    delta = (sim.health - ws.health0).astype(np.float32)
    reward += 0.1 * delta.astype(np.float64)
    done = (sim.health <= 0) | (sim.time >= tier.max_episode_length)
    np.copyto(sim.done, done)
    return reward, done, newly, delta


def reset(world: World, tier: TierConf, stream: R.RngStream) -> GameState:
    """A fresh episode at the world's spawn, with full stats and empty bags."""
    if world.tier_name != tier.name:
        raise ValueError(f"world built for tier {world.tier_name!r}, "
                         f"engine configured for {tier.name!r}")
    if world.floors[0].blocks.shape != (tier.height, tier.width):
        raise ValueError("world dimensions do not match tier configuration")
    sim = SimState(1, tier)
    install_world(sim, 0, world, R.split(stream, 0).key)
    return GameState(sim, world)


def step(state: GameState, action: int) -> StepOutcome:
    """Pure single-environment transition."""
    if state.done:
        raise RuntimeError("cannot step a finished episode")
    if not 0 <= int(action) < state.tier.n_actions:
        raise ValueError(f"invalid action id {action}")
    sim = state.sim.copy()
    ws = Workspace(1, state.tier.n_achievements)
    reward, done, newly, delta = step_batch(sim, np.array([int(action)]), ws)
    out = GameState(sim, state.world)
    return StepOutcome(
        state=out,
        reward=float(reward[0]),
        done=bool(done[0]),
        newly_unlocked=[int(i) for i in np.nonzero(newly[0])[0]],
        info={"time": int(sim.time[0]), "floor": int(sim.pfloor[0]),
              "health_delta": float(delta[0])},
    )
