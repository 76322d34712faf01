"""Game tables: blocks, items, creatures, actions, achievements, tier configs.

Everything the simulation treats as a fixed rule lives here, so the engine
kernels stay free of magic numbers.  Gameplay constants that had to be chosen
(decay schedules, damage formulas, loot weights) are documented in
docs/MECHANICS.md.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class Block(IntEnum):
    INVALID = 0
    OUT_OF_BOUNDS = 1
    GRASS = 2
    WATER = 3
    STONE = 4
    TREE = 5
    WOOD = 6
    PATH = 7
    COAL = 8
    IRON = 9
    DIAMOND = 10
    CRAFTING_TABLE = 11
    FURNACE = 12
    SAND = 13
    LAVA = 14
    PLANT = 15
    RIPE_PLANT = 16
    WALL = 17
    DARKNESS = 18
    WALL_MOSS = 19
    STALAGMITE = 20
    SAPPHIRE = 21
    RUBY = 22
    CHEST = 23
    FOUNTAIN = 24
    FIRE_GRASS = 25
    ICE_GRASS = 26
    GRAVEL = 27
    FIRE_TREE = 28
    ICE_SHRUB = 29
    ENCHANT_TABLE_FIRE = 30
    ENCHANT_TABLE_ICE = 31
    NECROMANCER = 32
    GRAVE = 33
    GRAVE2 = 34
    GRAVE3 = 35
    NECROMANCER_VULN = 36


N_BLOCKS = 37


class Item(IntEnum):
    """Per-tile overlay items. EMPTY means no item on the tile."""

    EMPTY = 0
    TORCH = 1
    LADDER_DOWN = 2
    LADDER_UP = 3
    LADDER_DOWN_BLOCKED = 4  # reserved slot, unused by the default rules


N_ITEMS = 5


class Creature(IntEnum):
    ZOMBIE = 0
    SKELETON = 1
    COW = 2
    ORC_SOLDIER = 3
    ORC_MAGE = 4
    SNAIL = 5
    GNOME_WARRIOR = 6
    GNOME_ARCHER = 7
    BAT = 8
    LIZARD = 9
    KOBOLD = 10
    KNIGHT = 11
    ARCHER = 12
    TROLL = 13
    DEEP_THING = 14
    PIG_MAN = 15
    FIRE_ELEMENTAL = 16
    FROST_TROLL = 17
    ICE_ELEMENTAL = 18


N_CREATURES = 19


class Projectile(IntEnum):
    PLAYER_ARROW = 0
    PLAYER_FIREBALL = 1
    PLAYER_ICEBALL = 2
    ENEMY_ARROW = 3
    ENEMY_MAGIC = 4
    ENEMY_DAGGER = 5
    ENEMY_WATER_BOLT = 6
    ENEMY_FIREBALL = 7
    ENEMY_ICEBALL = 8


N_PROJECTILES = 9


class Collision(IntEnum):
    GROUND = 0
    FLYING = 1
    AMPHIBIAN = 2
    AQUATIC = 3


class Behavior(IntEnum):
    MELEE = 0
    RANGED = 1
    PASSIVE = 2


# kind -> (behavior, health, (phys, fire, ice) damage, (phys%, fire%, ice%)
# defense, collision type)
CREATURE_STATS = {
    Creature.ZOMBIE: (Behavior.MELEE, 5.0, (2, 0, 0), (0, 0, 0), Collision.GROUND),
    Creature.SKELETON: (Behavior.RANGED, 3.0, (2, 0, 0), (0, 0, 0), Collision.GROUND),
    Creature.COW: (Behavior.PASSIVE, 3.0, (0, 0, 0), (0, 0, 0), Collision.GROUND),
    Creature.ORC_SOLDIER: (Behavior.MELEE, 7.0, (3, 0, 0), (0, 0, 0), Collision.GROUND),
    Creature.ORC_MAGE: (Behavior.RANGED, 5.0, (3, 0, 0), (0, 0, 0), Collision.GROUND),
    Creature.SNAIL: (Behavior.PASSIVE, 6.0, (0, 0, 0), (0, 0, 0), Collision.GROUND),
    Creature.GNOME_WARRIOR: (Behavior.MELEE, 9.0, (4, 0, 0), (0, 0, 0), Collision.GROUND),
    Creature.GNOME_ARCHER: (Behavior.RANGED, 6.0, (2, 0, 0), (0, 0, 0), Collision.GROUND),
    Creature.BAT: (Behavior.PASSIVE, 4.0, (0, 0, 0), (0, 0, 0), Collision.FLYING),
    Creature.LIZARD: (Behavior.MELEE, 11.0, (5, 0, 0), (0, 0, 0), Collision.AMPHIBIAN),
    Creature.KOBOLD: (Behavior.RANGED, 8.0, (4, 0, 0), (0, 0, 0), Collision.GROUND),
    Creature.KNIGHT: (Behavior.MELEE, 12.0, (6, 0, 0), (50, 0, 0), Collision.GROUND),
    Creature.ARCHER: (Behavior.RANGED, 12.0, (4, 0, 0), (50, 0, 0), Collision.GROUND),
    Creature.TROLL: (Behavior.MELEE, 20.0, (6, 1, 1), (20, 0, 0), Collision.GROUND),
    Creature.DEEP_THING: (Behavior.RANGED, 6.0, (4, 3, 3), (0, 0, 0), Collision.AQUATIC),
    Creature.PIG_MAN: (Behavior.MELEE, 20.0, (3, 5, 0), (90, 100, 0), Collision.GROUND),
    Creature.FIRE_ELEMENTAL: (Behavior.RANGED, 14.0, (3, 5, 0), (90, 100, 0), Collision.FLYING),
    Creature.FROST_TROLL: (Behavior.MELEE, 24.0, (4, 0, 5), (90, 0, 100), Collision.GROUND),
    Creature.ICE_ELEMENTAL: (Behavior.RANGED, 16.0, (4, 0, 4), (90, 0, 100), Collision.GROUND),
}

# Flat lookup tables indexed by creature kind, for vectorized gathers.
CREATURE_HP = np.array([CREATURE_STATS[Creature(k)][1] for k in range(N_CREATURES)], np.float32)
CREATURE_DMG = np.array([CREATURE_STATS[Creature(k)][2] for k in range(N_CREATURES)], np.float32)
CREATURE_DEF = np.array([CREATURE_STATS[Creature(k)][3] for k in range(N_CREATURES)], np.float32)
CREATURE_COLLISION = np.array(
    [CREATURE_STATS[Creature(k)][4] for k in range(N_CREATURES)], np.uint8
)

# Which melee/ranged/passive kind inhabits each floor.  Floor 8 has no
# resident creatures of its own; the boss summons earlier floors' kinds.
FLOOR_MELEE = [Creature.ZOMBIE, Creature.ORC_SOLDIER, Creature.GNOME_WARRIOR,
               Creature.LIZARD, Creature.KNIGHT, Creature.TROLL,
               Creature.PIG_MAN, Creature.FROST_TROLL, None]
FLOOR_RANGED = [Creature.SKELETON, Creature.ORC_MAGE, Creature.GNOME_ARCHER,
                Creature.KOBOLD, Creature.ARCHER, Creature.DEEP_THING,
                Creature.FIRE_ELEMENTAL, Creature.ICE_ELEMENTAL, None]
FLOOR_PASSIVE = [Creature.COW, Creature.SNAIL, Creature.BAT, Creature.SNAIL,
                 Creature.SNAIL, Creature.BAT, Creature.BAT, None, None]

# Projectile kind fired by each ranged creature.
RANGED_PROJECTILE = {
    Creature.SKELETON: Projectile.ENEMY_ARROW,
    Creature.ORC_MAGE: Projectile.ENEMY_MAGIC,
    Creature.GNOME_ARCHER: Projectile.ENEMY_ARROW,
    Creature.KOBOLD: Projectile.ENEMY_DAGGER,
    Creature.ARCHER: Projectile.ENEMY_ARROW,
    Creature.DEEP_THING: Projectile.ENEMY_WATER_BOLT,
    Creature.FIRE_ELEMENTAL: Projectile.ENEMY_FIREBALL,
    Creature.ICE_ELEMENTAL: Projectile.ENEMY_ICEBALL,
}

# Food restored when the player consumes a passive creature.
EAT_FOOD = {Creature.COW: 6.0, Creature.SNAIL: 4.0, Creature.BAT: 2.0}


class Action(IntEnum):
    NOOP = 0
    LEFT = 1
    RIGHT = 2
    UP = 3
    DOWN = 4
    DO = 5
    SLEEP = 6
    PLACE_STONE = 7
    PLACE_TABLE = 8
    PLACE_FURNACE = 9
    PLACE_PLANT = 10
    MAKE_WOOD_PICKAXE = 11
    MAKE_STONE_PICKAXE = 12
    MAKE_IRON_PICKAXE = 13
    MAKE_WOOD_SWORD = 14
    MAKE_STONE_SWORD = 15
    MAKE_IRON_SWORD = 16
    REST = 17
    DESCEND = 18
    ASCEND = 19
    MAKE_DIAMOND_PICKAXE = 20
    MAKE_DIAMOND_SWORD = 21
    MAKE_IRON_ARMOUR = 22
    MAKE_DIAMOND_ARMOUR = 23
    SHOOT_ARROW = 24
    MAKE_ARROW = 25
    CAST_FIREBALL = 26
    CAST_ICEBALL = 27
    PLACE_TORCH = 28
    DRINK_POTION_RED = 29
    DRINK_POTION_GREEN = 30
    DRINK_POTION_BLUE = 31
    DRINK_POTION_PINK = 32
    DRINK_POTION_CYAN = 33
    DRINK_POTION_YELLOW = 34
    READ_BOOK = 35
    ENCHANT_SWORD = 36
    ENCHANT_ARMOUR = 37
    MAKE_TORCH = 38
    LEVEL_UP_DEXTERITY = 39
    LEVEL_UP_STRENGTH = 40
    LEVEL_UP_INTELLIGENCE = 41
    ENCHANT_BOW = 42


N_ACTIONS_EXTENDED = 43
N_ACTIONS_CLASSIC = 17

# Keyboard binding per action, shared with the browser client.
ACTION_KEYS = {
    Action.NOOP: "q", Action.LEFT: "a", Action.RIGHT: "d", Action.UP: "w",
    Action.DOWN: "s", Action.DO: " ", Action.SLEEP: "Tab",
    Action.PLACE_STONE: "r", Action.PLACE_TABLE: "t", Action.PLACE_FURNACE: "f",
    Action.PLACE_PLANT: "p", Action.MAKE_WOOD_PICKAXE: "1",
    Action.MAKE_STONE_PICKAXE: "2", Action.MAKE_IRON_PICKAXE: "3",
    Action.MAKE_WOOD_SWORD: "5", Action.MAKE_STONE_SWORD: "6",
    Action.MAKE_IRON_SWORD: "7", Action.REST: "e", Action.DESCEND: ".",
    Action.ASCEND: ",", Action.MAKE_DIAMOND_PICKAXE: "4",
    Action.MAKE_DIAMOND_SWORD: "8", Action.MAKE_IRON_ARMOUR: "y",
    Action.MAKE_DIAMOND_ARMOUR: "u", Action.SHOOT_ARROW: "i",
    Action.MAKE_ARROW: "o", Action.CAST_FIREBALL: "g", Action.CAST_ICEBALL: "h",
    Action.PLACE_TORCH: "j", Action.DRINK_POTION_RED: "z",
    Action.DRINK_POTION_GREEN: "x", Action.DRINK_POTION_BLUE: "c",
    Action.DRINK_POTION_PINK: "v", Action.DRINK_POTION_CYAN: "b",
    Action.DRINK_POTION_YELLOW: "n", Action.READ_BOOK: "m",
    Action.ENCHANT_SWORD: "k", Action.ENCHANT_ARMOUR: "l",
    Action.MAKE_TORCH: "[", Action.LEVEL_UP_DEXTERITY: "]",
    Action.LEVEL_UP_STRENGTH: "-", Action.LEVEL_UP_INTELLIGENCE: "=",
    Action.ENCHANT_BOW: ";",
}


class Achievement(IntEnum):
    COLLECT_WOOD = 0
    PLACE_TABLE = 1
    EAT_COW = 2
    COLLECT_SAPLING = 3
    COLLECT_DRINK = 4
    MAKE_WOOD_PICKAXE = 5
    MAKE_WOOD_SWORD = 6
    PLACE_PLANT = 7
    DEFEAT_ZOMBIE = 8
    COLLECT_STONE = 9
    PLACE_STONE = 10
    EAT_PLANT = 11
    DEFEAT_SKELETON = 12
    MAKE_STONE_PICKAXE = 13
    MAKE_STONE_SWORD = 14
    WAKE_UP = 15
    PLACE_FURNACE = 16
    COLLECT_COAL = 17
    COLLECT_IRON = 18
    COLLECT_DIAMOND = 19
    MAKE_IRON_PICKAXE = 20
    MAKE_IRON_SWORD = 21
    MAKE_ARROW = 22
    MAKE_TORCH = 23
    PLACE_TORCH = 24
    MAKE_DIAMOND_SWORD = 25
    MAKE_IRON_ARMOUR = 26
    MAKE_DIAMOND_ARMOUR = 27
    ENTER_GNOMISH_MINES = 28
    ENTER_DUNGEON = 29
    ENTER_SEWERS = 30
    ENTER_VAULT = 31
    ENTER_TROLL_MINES = 32
    ENTER_FIRE_REALM = 33
    ENTER_ICE_REALM = 34
    ENTER_GRAVEYARD = 35
    DEFEAT_GNOME_WARRIOR = 36
    DEFEAT_GNOME_ARCHER = 37
    DEFEAT_ORC_SOLDIER = 38
    DEFEAT_ORC_MAGE = 39
    DEFEAT_LIZARD = 40
    DEFEAT_KOBOLD = 41
    DEFEAT_TROLL = 42
    DEFEAT_DEEP_THING = 43
    DEFEAT_PIGMAN = 44
    DEFEAT_FIRE_ELEMENTAL = 45
    DEFEAT_FROST_TROLL = 46
    DEFEAT_ICE_ELEMENTAL = 47
    DAMAGE_NECROMANCER = 48
    DEFEAT_NECROMANCER = 49
    EAT_BAT = 50
    EAT_SNAIL = 51
    FIND_BOW = 52
    FIRE_BOW = 53
    COLLECT_SAPPHIRE = 54
    LEARN_FIREBALL = 55
    CAST_FIREBALL = 56
    LEARN_ICEBALL = 57
    CAST_ICEBALL = 58
    COLLECT_RUBY = 59
    MAKE_DIAMOND_PICKAXE = 60
    OPEN_CHEST = 61
    DRINK_POTION = 62
    ENCHANT_SWORD = 63
    ENCHANT_ARMOUR = 64
    DEFEAT_KNIGHT = 65
    DEFEAT_ARCHER = 66


N_ACHIEVEMENTS_EXTENDED = 67
N_ACHIEVEMENTS_CLASSIC = 22

_BASIC = 1
_INTERMEDIATE = 3
_ADVANCED = 5
_VERY_ADVANCED = 8

ACHIEVEMENT_TIER = np.zeros(N_ACHIEVEMENTS_EXTENDED, np.float32)
ACHIEVEMENT_TIER[0:25] = _BASIC
for _a in (25, 26, 27, 28, 29, 36, 37, 38, 39, 50, 51, 52, 53, 54, 59, 60, 61, 62):
    ACHIEVEMENT_TIER[_a] = _INTERMEDIATE
for _a in (30, 31, 32, 40, 41, 42, 43, 55, 56, 57, 58, 63, 64, 65, 66):
    ACHIEVEMENT_TIER[_a] = _ADVANCED
for _a in (33, 34, 35, 44, 45, 46, 47, 48, 49):
    ACHIEVEMENT_TIER[_a] = _VERY_ADVANCED

# In the classic tier every achievement is worth a flat +1.
ACHIEVEMENT_TIER_CLASSIC = np.ones(N_ACHIEVEMENTS_CLASSIC, np.float32)

DEFEAT_ACHIEVEMENT = {
    Creature.ZOMBIE: Achievement.DEFEAT_ZOMBIE,
    Creature.SKELETON: Achievement.DEFEAT_SKELETON,
    Creature.ORC_SOLDIER: Achievement.DEFEAT_ORC_SOLDIER,
    Creature.ORC_MAGE: Achievement.DEFEAT_ORC_MAGE,
    Creature.GNOME_WARRIOR: Achievement.DEFEAT_GNOME_WARRIOR,
    Creature.GNOME_ARCHER: Achievement.DEFEAT_GNOME_ARCHER,
    Creature.LIZARD: Achievement.DEFEAT_LIZARD,
    Creature.KOBOLD: Achievement.DEFEAT_KOBOLD,
    Creature.KNIGHT: Achievement.DEFEAT_KNIGHT,
    Creature.ARCHER: Achievement.DEFEAT_ARCHER,
    Creature.TROLL: Achievement.DEFEAT_TROLL,
    Creature.DEEP_THING: Achievement.DEFEAT_DEEP_THING,
    Creature.PIG_MAN: Achievement.DEFEAT_PIGMAN,
    Creature.FIRE_ELEMENTAL: Achievement.DEFEAT_FIRE_ELEMENTAL,
    Creature.FROST_TROLL: Achievement.DEFEAT_FROST_TROLL,
    Creature.ICE_ELEMENTAL: Achievement.DEFEAT_ICE_ELEMENTAL,
    # passive kinds grant the matching EAT_* flag instead
    Creature.COW: Achievement.EAT_COW,
    Creature.SNAIL: Achievement.EAT_SNAIL,
    Creature.BAT: Achievement.EAT_BAT,
}

ENTER_FLOOR_ACHIEVEMENT = {
    1: Achievement.ENTER_DUNGEON,
    2: Achievement.ENTER_GNOMISH_MINES,
    3: Achievement.ENTER_SEWERS,
    4: Achievement.ENTER_VAULT,
    5: Achievement.ENTER_TROLL_MINES,
    6: Achievement.ENTER_FIRE_REALM,
    7: Achievement.ENTER_ICE_REALM,
    8: Achievement.ENTER_GRAVEYARD,
}

FLOOR_NAMES = ["Overworld", "Dungeon", "Gnomish Mines", "Sewers", "Vaults",
               "Troll Mines", "Fire Realm", "Ice Realm", "Graveyard"]

# Ambient light per floor; 0 means torches are required to see anything.
FLOOR_AMBIENT = np.array([1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0], np.float32)


class PotionEffect(IntEnum):
    HEAL = 0          # +8 health
    MANA = 1          # +8 mana
    ENERGY = 2        # +8 energy
    HARM = 3          # -3 health
    DRAIN = 4         # -3 mana
    NOURISH = 5       # +4 food and +4 drink


POTION_COLORS = ["red", "green", "blue", "pink", "cyan", "yellow"]


class ChestLoot(IntEnum):
    NOTHING = 0
    BOW = 1
    BOOK = 2
    POTION = 3
    ARROWS = 4
    TORCHES = 5


# Directions: the order matches action ids LEFT/RIGHT/UP/DOWN - 1.
class Direction(IntEnum):
    LEFT = 0
    RIGHT = 1
    UP = 2
    DOWN = 3


DIR_OFFSETS = np.array([[0, -1], [0, 1], [-1, 0], [1, 0]], np.int16)

# --- tile predicates ------------------------------------------------------

WALKABLE = np.zeros(N_BLOCKS, bool)
WALKABLE[[Block.GRASS, Block.PATH, Block.SAND, Block.FIRE_GRASS,
          Block.ICE_GRASS, Block.GRAVEL]] = True

# Ground creatures share the player's walkable set.
WALK_GROUND = WALKABLE.copy()
WALK_AMPHIBIAN = WALK_GROUND.copy()
WALK_AMPHIBIAN[Block.WATER] = True
WALK_AQUATIC = np.zeros(N_BLOCKS, bool)
WALK_AQUATIC[Block.WATER] = True
WALK_FLYING = WALK_GROUND.copy()
WALK_FLYING[[Block.WATER, Block.LAVA, Block.STALAGMITE]] = True

COLLISION_WALKABLE = np.stack(
    [WALK_GROUND, WALK_FLYING, WALK_AMPHIBIAN, WALK_AQUATIC]
)

# What stops an arrow or spell in flight.
BLOCKS_PROJECTILE = ~WALKABLE.copy()
BLOCKS_PROJECTILE[[Block.WATER, Block.LAVA, Block.PLANT, Block.RIPE_PLANT]] = False

# Tiles that PLACE_STONE may target (bridging water and capping lava included).
PLACEABLE_STONE = np.zeros(N_BLOCKS, bool)
PLACEABLE_STONE[[Block.GRASS, Block.PATH, Block.SAND, Block.WATER, Block.LAVA,
                 Block.FIRE_GRASS, Block.ICE_GRASS, Block.GRAVEL]] = True

# Tiles that a table/furnace may be placed on.
PLACEABLE_SOLID = np.zeros(N_BLOCKS, bool)
PLACEABLE_SOLID[[Block.GRASS, Block.PATH, Block.SAND, Block.FIRE_GRASS,
                 Block.ICE_GRASS, Block.GRAVEL]] = True

# Ores: block -> (pickaxe tier required, achievement on collect)
MINEABLE = {
    Block.STONE: (1, Achievement.COLLECT_STONE),
    Block.COAL: (1, Achievement.COLLECT_COAL),
    Block.STALAGMITE: (1, None),
    Block.IRON: (2, Achievement.COLLECT_IRON),
    Block.DIAMOND: (3, Achievement.COLLECT_DIAMOND),
    Block.SAPPHIRE: (3, Achievement.COLLECT_SAPPHIRE),
    Block.RUBY: (4, Achievement.COLLECT_RUBY),
}

# --- player parameters ----------------------------------------------------

SWORD_BASE_DAMAGE = np.array([1.0, 2.0, 3.0, 5.0, 8.0], np.float32)  # by tier

# Survival clock base intervals in steps; the three decay clocks scale
# linearly with dexterity.
FOOD_INTERVAL = 30
DRINK_INTERVAL = 20
ENERGY_INTERVAL = 40
SLEEP_ENERGY_INTERVAL = 2
MANA_INTERVAL = 10
STARVE_DAMAGE_INTERVAL = 10
REGEN_INTERVAL = 30

AGGRO_RADIUS = 6
RANGED_RANGE = 5
DESPAWN_RADIUS = 12
ATTACK_COOLDOWN = 2
RANGED_COOLDOWN = 6
PROJECTILE_TTL = 6

DAY_LENGTH = 300
NIGHT_AMBIENT = 0.15

PLANT_RIPE_AGE = 60
PLANT_FOOD = 4.0
SAPLING_PROB = 0.1

SPELL_MANA_COST = 2.0
ENCHANT_MANA_COST = 2.0
BOSS_HEALTH = 60.0
BOSS_VULNERABLE_STEPS = 20
BOSS_WAVES = 8

MAX_EPISODE_LENGTH = 100_000

# Per-floor, per-class creature capacities.  The classic tier reuses the
# floor-0 row, which yields the fixed 3/3/2(/3 arrows) classic limits.
CAP_MELEE = 3
CAP_RANGED = 2
CAP_PASSIVE = 3
CAP_ENEMY_PROJ = 3
CAP_PLAYER_PROJ = 3
CAP_PLANTS = 10
CAP_CHESTS = 6

SPAWN_PROB_MELEE_DAY = 0.008
SPAWN_PROB_MELEE_NIGHT = 0.05
SPAWN_PROB_MELEE_UNDERGROUND = 0.05
SPAWN_PROB_RANGED = 0.02
SPAWN_PROB_PASSIVE = 0.1
SPAWN_MIN_DIST = 5
SPAWN_MAX_DIST = 10


@dataclass(frozen=True)
class TierConf:
    """Static configuration for one tier of the game."""

    name: str
    n_floors: int
    height: int
    width: int
    view_rows: int
    view_cols: int
    n_actions: int
    n_achievements: int
    ach_tier: np.ndarray
    max_episode_length: int = MAX_EPISODE_LENGTH

    @property
    def is_classic(self) -> bool:
        return self.n_floors == 1

    def with_max_length(self, max_episode_length: int) -> "TierConf":
        return TierConf(self.name, self.n_floors, self.height, self.width,
                        self.view_rows, self.view_cols, self.n_actions,
                        self.n_achievements, self.ach_tier, max_episode_length)


CLASSIC = TierConf("classic", 1, 64, 64, 7, 9,
                   N_ACTIONS_CLASSIC, N_ACHIEVEMENTS_CLASSIC, ACHIEVEMENT_TIER_CLASSIC)
EXTENDED = TierConf("extended", 9, 48, 48, 9, 11,
                    N_ACTIONS_EXTENDED, N_ACHIEVEMENTS_EXTENDED, ACHIEVEMENT_TIER)


def tier_by_name(name: str) -> TierConf:
    if name == "classic":
        return CLASSIC
    if name == "extended":
        return EXTENDED
    raise ValueError(f"unknown tier {name!r}")


def health_max(strength):
    return np.float32(9.0) + strength


def food_max(dexterity):
    return np.float32(12.0) + dexterity


def mana_max(intelligence):
    return np.float32(16.0) + intelligence
