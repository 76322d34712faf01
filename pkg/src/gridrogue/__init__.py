"""gridrogue: a deterministic two-tier survival-roguelike gridworld.

The classic tier is a single-floor survival sandbox; the extended tier adds
eight stacked floors, elemental combat, potions, enchantments, attributes and
a boss fight.  Everything is a pure function of (LevelParams, actions), and a
vectorized batch runner steps thousands of worlds at once.
"""

from .constants import (
    Achievement, Action, Block, Creature, Item, TierConf,
    CLASSIC, EXTENDED, tier_by_name,
)
from .worldgen import (
    LevelParams, World, FloorMap, make_level_params, generate_world,
    generate_worlds,
)
from .mutate import mutate_noise, mutate_swap, mutate_rswap
from .rng import RngStream, make_stream, split, uniform
from .engine import GameState, StepOutcome, reset, step, resolve_attack
from .batch import (
    BatchConfig, BatchState, batch_reset, batch_step, duplication_probability,
)
from .obs import (
    encode_symbolic, encode_symbolic_batch, decode_symbolic, layout_manifest,
    manifest_hash, render_text, obs_length,
)
from .tiles import render_tiles
from .policies import RandomPolicy, ScriptedPolicy, make_policy

__version__ = "0.1.0"
