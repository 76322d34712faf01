"""Simulation state containers.

The engine operates on a ``SimState``: a plain struct of numpy arrays whose
leading dimension is the number of environments.  Creatures live in
fixed-capacity lanes per (floor, class); a lane with ``alive == False`` is
simulated over but must have zero effect on anything observable.

``GameState`` wraps a one-environment SimState behind a value-typed,
single-episode interface; its ``step`` never mutates the receiver.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import rng as R
from .constants import (
    TierConf, Creature, CREATURE_HP,
    CAP_MELEE, CAP_RANGED, CAP_PASSIVE, CAP_ENEMY_PROJ, CAP_PLAYER_PROJ,
    CAP_PLANTS, CAP_CHESTS,
    health_max, food_max, mana_max,
)
from .worldgen import World

# (name, dtype, trailing shape template).  F/H/W/A are tier-dependent; the
# other letters are fixed capacities.
_SHAPES = {
    "blocks": (np.uint8, ("F", "H", "W")),
    "items": (np.uint8, ("F", "H", "W")),
    "ladder_down": (np.int16, ("F", 2)),
    "ladder_up": (np.int16, ("F", 2)),
    "spawn0": (np.int16, (2,)),
    "potion_map": (np.uint8, (6,)),
    "chest_pos": (np.int16, ("F", CAP_CHESTS, 2)),
    "chest_loot": (np.uint8, ("F", CAP_CHESTS)),
    "chest_qty": (np.uint8, ("F", CAP_CHESTS)),
    "chest_aux": (np.uint8, ("F", CAP_CHESTS)),
    "necro_pos": (np.int16, (2,)),
    "params_seed": (np.uint64, ()),

    "pfloor": (np.uint8, ()),
    "prow": (np.int16, ()),
    "pcol": (np.int16, ()),
    "facing": (np.uint8, ()),
    "health": (np.float32, ()),
    "food": (np.float32, ()),
    "drink": (np.float32, ()),
    "energy": (np.float32, ()),
    "mana": (np.float32, ()),
    "xp": (np.uint8, ()),
    "dex": (np.uint8, ()),
    "str_": (np.uint8, ()),
    "intel": (np.uint8, ()),
    "sword_tier": (np.uint8, ()),
    "pick_tier": (np.uint8, ()),
    "has_bow": (bool, ()),
    "sword_ench": (np.uint8, ()),
    "bow_ench": (np.uint8, ()),
    "armour": (np.uint8, (4,)),
    "armour_ench": (np.uint8, (4,)),
    "learned_fire": (bool, ()),
    "learned_ice": (bool, ()),
    "sleeping": (bool, ()),
    "resting": (bool, ()),

    "inv_wood": (np.uint8, ()),
    "inv_stone": (np.uint8, ()),
    "inv_coal": (np.uint8, ()),
    "inv_iron": (np.uint8, ()),
    "inv_diamond": (np.uint8, ()),
    "inv_sapphire": (np.uint8, ()),
    "inv_ruby": (np.uint8, ()),
    "inv_sapling": (np.uint8, ()),
    "inv_torch": (np.uint8, ()),
    "inv_arrow": (np.uint8, ()),
    "inv_book": (np.uint8, ()),
    "inv_potion": (np.uint8, (6,)),

    "mel_pos": (np.int16, ("F", CAP_MELEE, 2)),
    "mel_hp": (np.float32, ("F", CAP_MELEE)),
    "mel_cd": (np.uint8, ("F", CAP_MELEE)),
    "mel_alive": (bool, ("F", CAP_MELEE)),
    "mel_type": (np.uint8, ("F", CAP_MELEE)),
    "ran_pos": (np.int16, ("F", CAP_RANGED, 2)),
    "ran_hp": (np.float32, ("F", CAP_RANGED)),
    "ran_cd": (np.uint8, ("F", CAP_RANGED)),
    "ran_alive": (bool, ("F", CAP_RANGED)),
    "ran_type": (np.uint8, ("F", CAP_RANGED)),
    "pas_pos": (np.int16, ("F", CAP_PASSIVE, 2)),
    "pas_hp": (np.float32, ("F", CAP_PASSIVE)),
    "pas_alive": (bool, ("F", CAP_PASSIVE)),
    "pas_type": (np.uint8, ("F", CAP_PASSIVE)),

    "pproj_pos": (np.int16, (CAP_PLAYER_PROJ, 2)),
    "pproj_dir": (np.uint8, (CAP_PLAYER_PROJ,)),
    "pproj_type": (np.uint8, (CAP_PLAYER_PROJ,)),
    "pproj_ttl": (np.uint8, (CAP_PLAYER_PROJ,)),
    "pproj_alive": (bool, (CAP_PLAYER_PROJ,)),
    "pproj_dmg": (np.float32, (CAP_PLAYER_PROJ, 3)),
    "eproj_pos": (np.int16, (CAP_ENEMY_PROJ, 2)),
    "eproj_dir": (np.uint8, (CAP_ENEMY_PROJ,)),
    "eproj_type": (np.uint8, (CAP_ENEMY_PROJ,)),
    "eproj_ttl": (np.uint8, (CAP_ENEMY_PROJ,)),
    "eproj_alive": (bool, (CAP_ENEMY_PROJ,)),
    "eproj_dmg": (np.float32, (CAP_ENEMY_PROJ, 3)),

    "plant_pos": (np.int16, (CAP_PLANTS, 2)),
    "plant_age": (np.uint16, (CAP_PLANTS,)),
    "plant_alive": (bool, (CAP_PLANTS,)),

    "ach": (bool, ("A",)),
    "time": (np.uint32, ()),
    "rng_key": (np.uint64, ()),
    "floors_visited": (bool, ("F",)),
    "floor_cleared": (bool, ("F",)),
    "boss_hp": (np.float32, ()),
    "boss_wave": (np.uint8, ()),
    "boss_vuln": (bool, ()),
    "boss_timer": (np.uint8, ()),
    # survival clock columns: food, drink, energy, mana, damage, regen
    "clocks": (np.uint16, (6,)),
    "done": (bool, ()),
}

FIELD_NAMES = tuple(_SHAPES)


class SimState:
    """Struct-of-arrays simulation state for ``n`` environments."""

    __slots__ = ("n", "tier") + FIELD_NAMES

    def __init__(self, n: int, tier: TierConf, _alloc: bool = True):
        self.n = n
        self.tier = tier
        if not _alloc:
            return
        dims = {"F": tier.n_floors, "H": tier.height, "W": tier.width,
                "A": tier.n_achievements}
        for name, (dtype, trailing) in _SHAPES.items():
            shape = (n,) + tuple(dims.get(d, d) for d in trailing)
            setattr(self, name, np.zeros(shape, dtype))

    def copy(self) -> "SimState":
        out = SimState(self.n, self.tier, _alloc=False)
        for name in FIELD_NAMES:
            setattr(out, name, getattr(self, name).copy())
        return out

    def view(self, sl: slice) -> "SimState":
        """A window onto a subset of environments; writes hit the parent."""
        out = SimState(len(range(*sl.indices(self.n))), self.tier, _alloc=False)
        for name in FIELD_NAMES:
            setattr(out, name, getattr(self, name)[sl])
        return out

    def equals(self, other: "SimState") -> bool:
        return self.n == other.n and all(
            np.array_equal(getattr(self, f), getattr(other, f))
            for f in FIELD_NAMES)

    def diff_fields(self, other: "SimState") -> list[str]:
        return [f for f in FIELD_NAMES
                if not np.array_equal(getattr(self, f), getattr(other, f))]


def install_world(sim: SimState, i: int, world: World, key: int) -> None:
    """Write ``world`` into environment slot ``i`` and reset its episode."""
    install_worlds(sim, [i], [world], [key & ((1 << 64) - 1)])


_RESET_SCALARS = {
    "facing": 3, "dex": 1, "str_": 1, "intel": 1, "xp": 0,
    "sword_tier": 0, "pick_tier": 0, "has_bow": False,
    "sword_ench": 0, "bow_ench": 0, "learned_fire": False,
    "learned_ice": False, "sleeping": False, "resting": False,
    "inv_wood": 0, "inv_stone": 0, "inv_coal": 0, "inv_iron": 0,
    "inv_diamond": 0, "inv_sapphire": 0, "inv_ruby": 0, "inv_sapling": 0,
    "inv_torch": 0, "inv_arrow": 0, "inv_book": 0,
    "time": 0, "boss_wave": 0, "boss_vuln": False, "boss_timer": 0,
    "done": False,
}

_RESET_ARRAYS = ("inv_potion", "armour", "armour_ench", "ach", "clocks",
                 "mel_pos", "mel_hp", "mel_cd", "mel_alive", "mel_type",
                 "ran_pos", "ran_hp", "ran_cd", "ran_alive", "ran_type",
                 "pas_pos", "pas_hp", "pas_alive", "pas_type",
                 "pproj_pos", "pproj_dir", "pproj_type", "pproj_ttl",
                 "pproj_alive", "pproj_dmg",
                 "eproj_pos", "eproj_dir", "eproj_type", "eproj_ttl",
                 "eproj_alive", "eproj_dmg",
                 "plant_pos", "plant_age", "plant_alive",
                 "floors_visited", "floor_cleared")


def install_worlds(sim: SimState, envs, worlds, keys) -> None:
    """Reset several env slots at once; equivalent to install_world per env.

    The per-floor map copies stay per env (each env may get a different
    world), but every scalar episode field resets in one vectorized pass.
    """
    from .constants import BOSS_HEALTH
    tier = sim.tier
    envs = np.asarray(envs, np.intp)
    keys = np.asarray(keys, np.uint64)
    sim.chest_pos[envs] = -1
    sim.chest_loot[envs] = 0
    sim.chest_qty[envs] = 0
    sim.chest_aux[envs] = 0
    if tier.is_classic and len(worlds) > 1:
        sim.blocks[envs, 0] = np.stack([w.floors[0].blocks for w in worlds])
    for k, (i, world) in enumerate(zip(envs, worlds)):
        for f, fm in enumerate(world.floors):
            if not (tier.is_classic and len(worlds) > 1):
                sim.blocks[i, f] = fm.blocks
                sim.items[i, f] = fm.items
            sim.ladder_down[i, f] = fm.ladder_down if fm.ladder_down else (-1, -1)
            sim.ladder_up[i, f] = fm.ladder_up if fm.ladder_up else (-1, -1)
        sim.spawn0[i] = world.floors[0].spawn
        sim.potion_map[i] = world.potion_permutation
        sim.params_seed[i] = np.uint64(world.params.seed & ((1 << 64) - 1))
        sim.prow[i], sim.pcol[i] = world.floors[0].spawn
        if not tier.is_classic:
            key = int(keys[k])
            for f, lanes in enumerate(world.chests):
                for j, (r, c, loot, qty) in enumerate(lanes[:CAP_CHESTS]):
                    sim.chest_pos[i, f, j] = (r, c)
                    sim.chest_loot[i, f, j] = loot
                    sim.chest_qty[i, f, j] = qty
                    sim.chest_aux[i, f, j] = R.hash2(key, 800 + f * CAP_CHESTS + j) % 6
            from .worldgen import NECRO_OFFSET
            sim.necro_pos[i] = (tier.height // 2 + NECRO_OFFSET[0],
                                tier.width // 2 + NECRO_OFFSET[1])

    for name, value in _RESET_SCALARS.items():
        getattr(sim, name)[envs] = value
    for name in _RESET_ARRAYS:
        getattr(sim, name)[envs] = 0
    sim.pfloor[envs] = 0
    sim.health[envs] = health_max(1)
    sim.food[envs] = food_max(1)
    sim.drink[envs] = food_max(1)
    sim.energy[envs] = food_max(1)
    sim.mana[envs] = mana_max(1)
    sim.rng_key[envs] = np.asarray(keys, np.uint64)
    sim.floors_visited[envs, 0] = True
    sim.boss_hp[envs] = BOSS_HEALTH if tier.n_floors > 8 else 0.0


@dataclass
class GameState:
    """One episode's complete state; a value type."""

    sim: SimState
    world: World | None = None

    @property
    def tier(self) -> TierConf:
        return self.sim.tier

    def copy(self) -> "GameState":
        return GameState(self.sim.copy(), self.world)

    # convenience scalar accessors, mainly for tests and the session service
    @property
    def player_pos(self) -> tuple[int, int, int]:
        s = self.sim
        return int(s.pfloor[0]), int(s.prow[0]), int(s.pcol[0])

    @property
    def done(self) -> bool:
        return bool(self.sim.done[0])

    @property
    def time(self) -> int:
        return int(self.sim.time[0])

    @property
    def achievements(self) -> np.ndarray:
        return self.sim.ach[0]

    def unlocked_names(self) -> list[str]:
        from .constants import Achievement
        return [Achievement(i).name for i in np.nonzero(self.sim.ach[0])[0]]


@dataclass
class StepOutcome:
    """The result of one transition."""

    state: GameState
    reward: float
    done: bool
    newly_unlocked: list[int]
    info: dict = field(default_factory=dict)
