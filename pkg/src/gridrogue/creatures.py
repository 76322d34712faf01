"""Creature simulation: projectiles, movement/attacks, spawning, boss waves.

All phases run over fixed-capacity lanes with an ``alive`` mask; dead lanes
are computed over and masked out of every effect.  The phases mutate the
pulled active-floor lane arrays (see ``ActiveLanes``), which the engine
writes back once per step.  Creatures on non-active floors are frozen.
"""

from __future__ import annotations

import numpy as np

from ._kern import (
    Workspace, gather_blocks, gather_blocks_idx, q1, resolve_attack_vec,
    player_defense, hurt_player, award, award_by_id,
    SUB_MELEE_WALK, SUB_PASSIVE_WALK,
    SUB_SPAWN_MELEE, SUB_SPAWN_RANGED, SUB_SPAWN_PASSIVE,
)
from .constants import (
    Block, Behavior, Creature, Collision, Projectile, WALK_GROUND,
    CREATURE_HP, CREATURE_DMG, CREATURE_DEF, CREATURE_COLLISION,
    COLLISION_WALKABLE, BLOCKS_PROJECTILE, DIR_OFFSETS,
    FLOOR_MELEE, FLOOR_RANGED, FLOOR_PASSIVE, RANGED_PROJECTILE,
    DEFEAT_ACHIEVEMENT, EAT_FOOD, Achievement,
    AGGRO_RADIUS, RANGED_RANGE, DESPAWN_RADIUS, ATTACK_COOLDOWN,
    RANGED_COOLDOWN, PROJECTILE_TTL,
    SPAWN_PROB_MELEE_DAY, SPAWN_PROB_MELEE_NIGHT, SPAWN_PROB_MELEE_UNDERGROUND,
    SPAWN_PROB_RANGED, SPAWN_PROB_PASSIVE, SPAWN_MIN_DIST, SPAWN_MAX_DIST,
    DAY_LENGTH, PLANT_RIPE_AGE, BOSS_WAVES, BOSS_VULNERABLE_STEPS,
    food_max,
)

_I16 = np.int16

_GROUND_WALK = WALK_GROUND

# kind lookup tables indexed by floor; -1 marks "no resident kind"
_MEL_KIND = np.array([int(k) if k is not None else -1 for k in FLOOR_MELEE], np.int16)
_RAN_KIND = np.array([int(k) if k is not None else -1 for k in FLOOR_RANGED], np.int16)
_PAS_KIND = np.array([int(k) if k is not None else -1 for k in FLOOR_PASSIVE], np.int16)

_RANGED_PROJ = np.zeros(len(CREATURE_HP), np.uint8)
for _k, _p in RANGED_PROJECTILE.items():
    _RANGED_PROJ[int(_k)] = int(_p)

_DEFEAT_ACH = np.full(len(CREATURE_HP), 255, np.uint8)
for _k, _a in DEFEAT_ACHIEVEMENT.items():
    _DEFEAT_ACH[int(_k)] = int(_a)

# damage dealt against an unarmoured player, by kind
_DEALT_BARE = q1(np.maximum(CREATURE_DMG.sum(axis=1), 0.0))

_EAT_FOOD = np.zeros(len(CREATURE_HP), np.float32)
for _k, _v in EAT_FOOD.items():
    _EAT_FOOD[int(_k)] = _v

_IS_PASSIVE = np.array([int(Creature(k)) in EAT_FOOD for k in range(len(CREATURE_HP))])

# spawn probability by [night, floor] for melee and by floor otherwise;
# the boss floor never spawns residents
_MEL_PROB = np.zeros((2, 9))
_MEL_PROB[0, :8] = SPAWN_PROB_MELEE_UNDERGROUND
_MEL_PROB[1, :8] = SPAWN_PROB_MELEE_UNDERGROUND
_MEL_PROB[0, 0] = SPAWN_PROB_MELEE_DAY
_MEL_PROB[1, 0] = SPAWN_PROB_MELEE_NIGHT
_RAN_PROB = np.full(9, SPAWN_PROB_RANGED)
_RAN_PROB[8] = 0.0
_PAS_PROB = np.full(9, SPAWN_PROB_PASSIVE)
_PAS_PROB[8] = 0.0


class ActiveLanes:
    """Creature lanes of each env's current floor.

    Single-floor tiers alias the underlying arrays (writes land in SimState
    immediately; writeback is a no-op); multi-floor tiers pull copies and
    write them back once per step.
    """

    _FIELDS = ("mel_pos", "mel_hp", "mel_cd", "mel_alive", "mel_type",
               "ran_pos", "ran_hp", "ran_cd", "ran_alive", "ran_type",
               "pas_pos", "pas_hp", "pas_alive", "pas_type")

    def __init__(self, sim, ws: Workspace):
        self._views = sim.tier.n_floors == 1
        if self._views:
            self.af = _zero_floor(sim.n)
            for name in self._FIELDS:
                setattr(self, name, getattr(sim, name)[:, 0])
        else:
            self.af = sim.pfloor.astype(np.intp)
            ar = ws.ar
            for name in self._FIELDS:
                setattr(self, name, getattr(sim, name)[ar, self.af])

    def occupancy(self):
        """Stacked (pos, alive) over all lanes, built once per step."""
        cached = getattr(self, "_occ", None)
        if cached is None:
            pos = np.concatenate([self.mel_pos, self.ran_pos, self.pas_pos],
                                 axis=1)
            alive = np.concatenate([self.mel_alive, self.ran_alive,
                                    self.pas_alive], axis=1)
            cached = (pos, alive)
            self._occ = cached
        return cached

    def writeback(self, sim, ws: Workspace) -> None:
        if self._views:
            return
        ar = ws.ar
        for name in self._FIELDS:
            getattr(sim, name)[ar, self.af] = getattr(self, name)


_ZERO_FLOOR: dict = {}


def _zero_floor(n: int) -> np.ndarray:
    z = _ZERO_FLOOR.get(n)
    if z is None:
        z = np.zeros(n, np.intp)
        _ZERO_FLOOR[n] = z
    return z


def damage_creatures_at(sim, ws, tier, act, cls: str, env, lanes,
                        dmg_rows) -> None:
    """Apply (k, 3) player damage to the matched lanes of one class.

    Kills grant the defeat/eat flag and, for edible kinds, feed the player.
    """
    hp = getattr(act, cls + "_hp")
    alive = getattr(act, cls + "_alive")
    types = getattr(act, cls + "_type")
    kinds = types[env, lanes]
    dealt = resolve_attack_vec(dmg_rows, CREATURE_DEF[kinds])
    hp[env, lanes] = q1(hp[env, lanes] - dealt)
    died = (hp[env, lanes] <= 0) & alive[env, lanes] & (dealt > 0)
    if not died.any():
        return
    denv, dlanes = env[died], lanes[died]
    alive[denv, dlanes] = False
    dkinds = kinds[died]
    award_by_id(ws, tier, denv, _DEFEAT_ACH[dkinds])
    meat = _EAT_FOOD[dkinds]
    fed = meat > 0
    if fed.any():
        g = denv[fed]
        fm = food_max(sim.dex[g].astype(np.float32))
        np.add.at(sim.food, g, meat[fed])
        sim.food[g] = q1(np.minimum(sim.food[g], fm))


# --- phase 2: projectiles ---------------------------------------------------

def _proj_hit_necromancer_at(sim, ws, tier, idx, r, c, dmg) -> None:
    if len(idx) == 0 or not sim.boss_vuln[idx].any():
        return
    hit = (sim.boss_vuln[idx] & (r == sim.necro_pos[idx, 0])
           & (c == sim.necro_pos[idx, 1]))
    if not hit.any():
        return
    g = idx[hit]
    dealt = resolve_attack_vec(dmg[hit], np.zeros_like(dmg[hit]))
    sim.boss_hp[g] -= dealt
    award_by_id(ws, tier, g, Achievement.DAMAGE_NECROMANCER)
    _check_boss_death(sim, ws, tier)


def _check_boss_death(sim, ws, tier) -> None:
    dead = sim.boss_vuln & (sim.boss_hp <= 0)
    if not dead.any():
        return
    award(ws, tier, dead, Achievement.DEFEAT_NECROMANCER)
    sim.floor_cleared[:, 8] |= dead
    sim.boss_vuln &= ~dead
    idx = np.nonzero(dead)[0]
    sim.blocks[idx, 8, sim.necro_pos[idx, 0], sim.necro_pos[idx, 1]] = Block.PATH


def advance_projectiles(sim, ws: Workspace, tier, act: ActiveLanes) -> None:
    # player projectiles (extended only; the classic action set cannot fire)
    if not tier.is_classic and sim.pproj_alive.any():
        pos, alive = sim.pproj_pos, sim.pproj_alive
        steps = DIR_OFFSETS[sim.pproj_dir]
        np.add(pos, steps, out=pos, where=alive[..., None])
        for l in range(pos.shape[1]):
            idx = np.nonzero(alive[:, l])[0]
            if len(idx) == 0:
                continue
            r, c = pos[idx, l, 0], pos[idx, l, 1]
            dmg = sim.pproj_dmg[idx, l]
            live = np.ones(len(idx), bool)
            for cls in ("mel", "ran", "pas"):
                cpos = getattr(act, cls + "_pos")[idx]
                calive = getattr(act, cls + "_alive")[idx]
                match = calive & (cpos[..., 0] == r[:, None]) \
                    & (cpos[..., 1] == c[:, None])
                hit = live & match.any(axis=1)
                if hit.any():
                    damage_creatures_at(sim, ws, tier, act, cls, idx[hit],
                                        match.argmax(axis=1)[hit], dmg[hit])
                    live &= ~hit
            _proj_hit_necromancer_at(sim, ws, tier, idx[live], r[live],
                                     c[live], dmg[live])
            blk = gather_blocks_idx(sim, idx, act.af[idx], r, c)
            stopped = ~live | BLOCKS_PROJECTILE[blk] | (sim.pproj_ttl[idx, l] <= 1)
            sim.pproj_ttl[idx, l] -= 1
            alive[idx[stopped], l] = False

    # enemy projectiles (arrows in the classic tier)
    if not sim.eproj_alive.any():
        return
    pos, alive = sim.eproj_pos, sim.eproj_alive
    steps = DIR_OFFSETS[sim.eproj_dir]
    np.add(pos, steps, out=pos, where=alive[..., None])
    at_player = (alive & (pos[..., 0] == sim.prow[:, None])
                 & (pos[..., 1] == sim.pcol[:, None]))
    if at_player.any():
        pdef = player_defense(sim)
        dealt = resolve_attack_vec(sim.eproj_dmg, pdef[:, None, :])
        total = (dealt * at_player).sum(axis=1).astype(np.float32)
        hurt_player(sim, ws, total, total > 0)
        alive &= ~at_player
    rows = np.nonzero(alive.any(axis=1))[0]
    blk = gather_blocks_idx(sim, rows, act.af[rows],
                            pos[rows, :, 0], pos[rows, :, 1])
    alive[rows] &= ~BLOCKS_PROJECTILE[blk]
    sim.eproj_ttl[alive] -= 1
    alive &= sim.eproj_ttl > 0


# --- phase 3: creature behaviour ---------------------------------------------


def _draw2(ws: Workspace, sub: int, lanes: int) -> np.ndarray:
    from .rng import vuniform32
    return vuniform32(ws.base[:, None],
                      np.uint32(sub * 64) + np.arange(lanes, dtype=np.uint32)[None, :])


def _move_lanes(sim, act, pos, move_mask, step_r, step_c, coll) -> None:
    """Move lanes one tile where the target is walkable for their class.

    ``coll=None`` means every lane is a ground walker (the classic tier).
    """
    tr = pos[..., 0] + step_r
    tc = pos[..., 1] + step_c
    blk = gather_blocks(sim, act.af, tr, tc)
    ok = _GROUND_WALK[blk] if coll is None else COLLISION_WALKABLE[coll, blk]
    ok &= ~((tr == sim.prow[:, None]) & (tc == sim.pcol[:, None]))
    ok &= move_mask
    np.copyto(pos[..., 0], np.where(ok, tr, pos[..., 0]))
    np.copyto(pos[..., 1], np.where(ok, tc, pos[..., 1]))


def _chase_move(sim, act, pos, move_mask, dr, dc, coll) -> None:
    """Step one tile toward the player: long axis first, then the other.

    Both candidate targets go through a single block gather.
    """
    sr = np.sign(dr).astype(_I16)
    sc = np.sign(dc).astype(_I16)
    row_first = np.abs(dr) >= np.abs(dc)
    p_r = np.where(row_first, sr, 0).astype(_I16)
    p_c = np.where(row_first, 0, sc).astype(_I16)
    s_r = sr - p_r
    s_c = sc - p_c
    t_r = np.concatenate([pos[..., 0] + p_r, pos[..., 0] + s_r], axis=1)
    t_c = np.concatenate([pos[..., 1] + p_c, pos[..., 1] + s_c], axis=1)
    blk = gather_blocks(sim, act.af, t_r, t_c)
    if coll is None:
        ok = _GROUND_WALK[blk]
    else:
        ok = COLLISION_WALKABLE[np.concatenate([coll, coll], axis=1), blk]
    ok &= ~((t_r == sim.prow[:, None]) & (t_c == sim.pcol[:, None]))
    lanes = pos.shape[1]
    ok1 = ok[:, :lanes] & move_mask
    ok2 = ok[:, lanes:] & move_mask & ~ok1
    np.copyto(pos[..., 0], np.where(ok1, t_r[:, :lanes],
                                    np.where(ok2, t_r[:, lanes:], pos[..., 0])))
    np.copyto(pos[..., 1], np.where(ok1, t_c[:, :lanes],
                                    np.where(ok2, t_c[:, lanes:], pos[..., 1])))


def creatures_act(sim, ws: Workspace, tier, act: ActiveLanes) -> None:
    # In the classic tier every creature walks on ground and the player has
    # no armour, so collision rows and attack damage collapse to constants.
    classic = tier.is_classic

    # melee: chase when aggroed, strike when adjacent
    pos, alive = act.mel_pos, act.mel_alive
    if alive.any():
        dr = sim.prow[:, None] - pos[..., 0]
        dc = sim.pcol[:, None] - pos[..., 1]
        cheb = np.maximum(np.abs(dr), np.abs(dc))
        adjacent = (np.abs(dr) + np.abs(dc)) == 1
        coll = None if classic else CREATURE_COLLISION[act.mel_type]

        attack = alive & adjacent & (act.mel_cd == 0)
        if attack.any():
            if classic:
                total = (_DEALT_BARE[act.mel_type] * attack).sum(axis=1) \
                    .astype(np.float32)
            else:
                pdef = player_defense(sim)
                dealt = resolve_attack_vec(CREATURE_DMG[act.mel_type],
                                           pdef[:, None, :])
                total = (dealt * attack).sum(axis=1).astype(np.float32)
            hurt_player(sim, ws, total, total > 0)
        np.subtract(act.mel_cd, 1, out=act.mel_cd, where=act.mel_cd > 0)
        act.mel_cd[attack] = ATTACK_COOLDOWN

        chase = alive & ~adjacent & (cheb <= AGGRO_RADIUS)
        if chase.any():
            _chase_move(sim, act, pos, chase, dr, dc, coll)
        wander = alive & ~adjacent & (cheb > AGGRO_RADIUS)
        if wander.any():
            u = _draw2(ws, SUB_MELEE_WALK, pos.shape[1])
            wander &= u < 0.25
            d = np.minimum((u * 16).astype(np.intp) % 4, 3)
            _move_lanes(sim, act, pos, wander, DIR_OFFSETS[d][..., 0],
                        DIR_OFFSETS[d][..., 1], coll)

    # ranged: fire along clear straight lines, otherwise keep distance
    pos, alive = act.ran_pos, act.ran_alive
    if alive.any():
        dr = sim.prow[:, None] - pos[..., 0]
        dc = sim.pcol[:, None] - pos[..., 1]
        cheb = np.maximum(np.abs(dr), np.abs(dc))
        aligned = ((dr == 0) | (dc == 0)) & (cheb >= 1)
        in_range = alive & aligned & (cheb <= RANGED_RANGE)
        sr = np.sign(dr).astype(_I16)
        sc = np.sign(dc).astype(_I16)
        shoot = in_range & (act.ran_cd == 0)
        if shoot.any():
            clear = np.ones_like(aligned)
            for k in range(1, RANGED_RANGE):
                mid = (k < cheb) & shoot
                blk = gather_blocks(sim, act.af, pos[..., 0] + sr * _I16(k),
                                    pos[..., 1] + sc * _I16(k))
                clear &= ~(BLOCKS_PROJECTILE[blk] & mid)
            shoot &= clear
        np.subtract(act.ran_cd, 1, out=act.ran_cd, where=act.ran_cd > 0)
        act.ran_cd[shoot] = RANGED_COOLDOWN
        if shoot.any():
            dir_idx = np.where(dr == 0,
                               np.where(dc > 0, 1, 0),
                               np.where(dr > 0, 3, 2)).astype(np.uint8)
            for l in range(pos.shape[1]):
                m = shoot[:, l]
                if not m.any():
                    continue
                free = ~sim.eproj_alive
                has = free.any(axis=1)
                slot = free.argmax(axis=1)
                m &= has
                idx = np.nonzero(m)[0]
                s = slot[idx]
                kinds = act.ran_type[idx, l]
                sim.eproj_pos[idx, s] = pos[idx, l]
                sim.eproj_dir[idx, s] = dir_idx[idx, l]
                sim.eproj_type[idx, s] = _RANGED_PROJ[kinds]
                sim.eproj_ttl[idx, s] = PROJECTILE_TTL
                sim.eproj_dmg[idx, s] = CREATURE_DMG[kinds]
                sim.eproj_alive[idx, s] = True

        approach = alive & ~shoot & (cheb <= AGGRO_RADIUS) & (cheb > 2)
        if approach.any():
            coll = None if classic else CREATURE_COLLISION[act.ran_type]
            _chase_move(sim, act, pos, approach, dr, dc, coll)

    # passive: amble about
    pos, alive = act.pas_pos, act.pas_alive
    if alive.any():
        u = _draw2(ws, SUB_PASSIVE_WALK, pos.shape[1])
        wander = alive & (u < 0.5)
        d = np.minimum((u * 16).astype(np.intp) % 4, 3)
        coll = None if classic else CREATURE_COLLISION[act.pas_type]
        _move_lanes(sim, act, pos, wander, DIR_OFFSETS[d][..., 0],
                    DIR_OFFSETS[d][..., 1], coll)


# --- phase 5: spawn / despawn / boss -----------------------------------------

def _spawn_class(sim, ws, act, cls: str, kind_table, prob, sub: int, cap: int):
    pos = getattr(act, cls + "_pos")
    alive = getattr(act, cls + "_alive")
    kind = kind_table[act.af]
    u = ws.draw(sub, 0)
    trig = (u < prob) & (alive.sum(axis=1) < cap) & (kind >= 0)
    idx = np.nonzero(trig)[0]
    if len(idx) == 0:
        return
    span = 2 * SPAWN_MAX_DIST + 1
    u1 = ws.draw_at(sub, idx, 1)
    u2 = ws.draw_at(sub, idx, 2)
    off_r = (u1 * span).astype(_I16) - SPAWN_MAX_DIST
    off_c = (u2 * span).astype(_I16) - SPAWN_MAX_DIST
    dist = np.maximum(np.abs(off_r), np.abs(off_c))
    ring = (dist >= SPAWN_MIN_DIST) & (dist <= SPAWN_MAX_DIST)
    r = sim.prow[idx] + off_r
    c = sim.pcol[idx] + off_c
    k = np.maximum(kind[idx], 0)
    af_sub = act.af[idx]
    blk = gather_blocks_idx(sim, idx, af_sub, r, c)
    ok = ring & COLLISION_WALKABLE[CREATURE_COLLISION[k], blk]
    if cls == "ran":
        # overworld marksmen keep to the mountain tunnels
        ok &= (blk == Block.PATH) | (af_sub != 0)
    if not ok.any():
        return
    g = idx[ok]
    s = (~alive[g]).argmax(axis=1)
    k = k[ok]
    pos[g, s, 0] = r[ok]
    pos[g, s, 1] = c[ok]
    getattr(act, cls + "_hp")[g, s] = CREATURE_HP[k]
    getattr(act, cls + "_type")[g, s] = k.astype(np.uint8)
    if cls != "pas":
        getattr(act, cls + "_cd")[g, s] = 0
    alive[g, s] = True


def spawn_despawn(sim, ws: Workspace, tier, act: ActiveLanes) -> None:
    # despawn far-away creatures; the boss floor keeps its waves
    keep_floor = None
    for cls in ("mel", "ran", "pas"):
        pos = getattr(act, cls + "_pos")
        alive = getattr(act, cls + "_alive")
        if not alive.any():
            continue
        if keep_floor is None:
            keep_floor = (act.af == 8)[:, None]
        dist = np.maximum(np.abs(pos[..., 0] - sim.prow[:, None]),
                          np.abs(pos[..., 1] - sim.pcol[:, None]))
        alive &= (dist <= DESPAWN_RADIUS) | keep_floor

    night = (sim.time % DAY_LENGTH) >= (DAY_LENGTH // 2)
    day_row = _MEL_PROB[0]
    night_row = _MEL_PROB[1]
    mel_prob = np.where(night, night_row[act.af], day_row[act.af])
    _spawn_class(sim, ws, act, "mel", _MEL_KIND, mel_prob, SUB_SPAWN_MELEE,
                 sim.mel_alive.shape[2])
    _spawn_class(sim, ws, act, "ran", _RAN_KIND, _RAN_PROB[act.af],
                 SUB_SPAWN_RANGED, sim.ran_alive.shape[2])
    _spawn_class(sim, ws, act, "pas", _PAS_KIND, _PAS_PROB[act.af],
                 SUB_SPAWN_PASSIVE, sim.pas_alive.shape[2])

    if not tier.is_classic:
        _boss_logic(sim, ws, tier, act)


def _spawn_wave(sim, ws, act, wave_floor: np.ndarray, mask: np.ndarray) -> None:
    """Summon the wave for ``wave_floor`` on envs in ``mask`` (all on floor 8)."""
    idx = np.nonzero(mask)[0]
    if len(idx) == 0:
        return
    nf = wave_floor[idx]
    nr, nc = sim.necro_pos[idx, 0], sim.necro_pos[idx, 1]
    mel_kind = _MEL_KIND[nf].astype(np.uint8)
    ran_kind = _RAN_KIND[nf].astype(np.uint8)
    for lane, (dr, dc) in enumerate(((2, -2), (2, 2))):
        r, c = nr + dr, nc + dc
        bump = (r == sim.prow[idx]) & (c == sim.pcol[idx])
        c = c + bump.astype(_I16)
        act.mel_pos[idx, lane, 0] = r
        act.mel_pos[idx, lane, 1] = c
        act.mel_hp[idx, lane] = CREATURE_HP[mel_kind]
        act.mel_type[idx, lane] = mel_kind
        act.mel_cd[idx, lane] = ATTACK_COOLDOWN
        act.mel_alive[idx, lane] = True
    # the ranged summon goes to the pool when the kind is aquatic
    aquatic = CREATURE_COLLISION[ran_kind] == Collision.AQUATIC
    from .worldgen import POOL_OFFSET
    h, w = sim.tier.height, sim.tier.width
    pool_r, pool_c = h // 2 + POOL_OFFSET[0] + 1, w // 2 + POOL_OFFSET[1] + 1
    r = np.where(aquatic, pool_r, nr + 3).astype(_I16)
    c = np.where(aquatic, pool_c, nc).astype(_I16)
    act.ran_pos[idx, 0, 0] = r
    act.ran_pos[idx, 0, 1] = c
    act.ran_hp[idx, 0] = CREATURE_HP[ran_kind]
    act.ran_type[idx, 0] = ran_kind
    act.ran_cd[idx, 0] = RANGED_COOLDOWN
    act.ran_alive[idx, 0] = True


def _boss_logic(sim, ws: Workspace, tier, act: ActiveLanes) -> None:
    on8 = (sim.pfloor == 8) & (sim.boss_hp > 0)
    if not on8.any():
        return
    enemies = act.mel_alive.sum(axis=1) + act.ran_alive.sum(axis=1)
    cleared = on8 & (enemies == 0)

    first = cleared & (sim.boss_wave == 0)
    if first.any():
        _spawn_wave(sim, ws, act, np.zeros(sim.n, np.intp), first)
        sim.boss_wave[first] = 1

    was_vuln = sim.boss_vuln.copy()
    go_vuln = cleared & ~first & ~was_vuln & (sim.boss_wave > 0)
    if go_vuln.any():
        sim.boss_vuln |= go_vuln
        sim.boss_timer[go_vuln] = BOSS_VULNERABLE_STEPS
        idx = np.nonzero(go_vuln)[0]
        sim.blocks[idx, 8, sim.necro_pos[idx, 0], sim.necro_pos[idx, 1]] = \
            Block.NECROMANCER_VULN

    tick = cleared & was_vuln & (sim.boss_wave < BOSS_WAVES)
    if tick.any():
        sim.boss_timer[tick] -= 1
        summon = tick & (sim.boss_timer == 0)
        if summon.any():
            _spawn_wave(sim, ws, act, sim.boss_wave.astype(np.intp), summon)
            sim.boss_wave[summon] += 1
            sim.boss_vuln &= ~summon
            idx = np.nonzero(summon)[0]
            sim.blocks[idx, 8, sim.necro_pos[idx, 0], sim.necro_pos[idx, 1]] = \
                Block.NECROMANCER


# --- phase 6: plants ----------------------------------------------------------

def grow_plants(sim, ws: Workspace, tier) -> None:
    if not sim.plant_alive.any():
        return
    rows = np.nonzero(sim.plant_alive.any(axis=1))[0]
    alive = sim.plant_alive[rows]
    np.add.at(sim.plant_age, rows, alive.astype(np.uint16))
    r = sim.plant_pos[rows, :, 0]
    c = sim.plant_pos[rows, :, 1]
    blk = gather_blocks_idx(sim, rows, np.zeros(len(rows), np.intp), r, c)
    is_plant = blk == Block.PLANT
    keep = alive & (is_plant | (blk == Block.RIPE_PLANT))
    sim.plant_alive[rows] = keep
    ripen = keep & is_plant & (sim.plant_age[rows] >= PLANT_RIPE_AGE)
    if ripen.any():
        env, lane = np.nonzero(ripen)
        g = rows[env]
        sim.blocks[g, 0, r[env, lane], c[env, lane]] = Block.RIPE_PLANT
