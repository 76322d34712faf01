"""
Level mutation operators
========================

Levels are defined by noise angle grids; curriculum methods mutate them
(noise) or edit tiles directly (swap / restricted swap).
"""

import numpy as np

from gridrogue import CLASSIC, make_level_params, generate_world
from gridrogue import mutate_noise, mutate_swap, mutate_rswap
from gridrogue import rng

params = make_level_params(5)
world = generate_world(params, CLASSIC)
base = world.floors[0].blocks

# %%
# Noise: every angle moves by at most 0.5 rad; the terrain shifts locally.

shaken = generate_world(mutate_noise(params, rng.make_stream(1)), CLASSIC)
changed = int((shaken.floors[0].blocks != base).sum())
print(f"noise mutation changed {changed} of {base.size} tiles")

# %%
# Swap: exactly two tiles trade places, one always near the spawn.

swapped = mutate_swap(world, rng.make_stream(2))
diff = np.argwhere(swapped.floors[0].blocks != base)
print("swap touched tiles:", [tuple(p) for p in diff])

# %%
# Restricted swap keeps the level coherent: ores trade with ores,
# grass with trees. Histograms never change.

rs = mutate_rswap(world, rng.make_stream(3))
print("histogram preserved:",
      np.array_equal(np.bincount(rs.floors[0].blocks.ravel(), minlength=37),
                     np.bincount(base.ravel(), minlength=37)))
