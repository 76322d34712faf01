"""
Observation codecs
==================

The symbolic observation is a frozen flat vector; the manifest documents
every field, and the encoding round-trips.
"""

import json

import numpy as np

from gridrogue import CLASSIC, EXTENDED, make_level_params, generate_world
from gridrogue import rng
from gridrogue.engine import reset, step
from gridrogue.obs import (encode_symbolic, decode_symbolic, layout_manifest,
                           manifest_hash, obs_length)
from gridrogue.tiles import render_tiles

# %%
# Sizes are part of the public contract.

print("classic length:", obs_length(CLASSIC))    # 1345
print("extended length:", obs_length(EXTENDED))  # 8268
print("classic manifest hash:", manifest_hash(CLASSIC)[:16], "...")

m = layout_manifest(CLASSIC)
print("per-tile stride:", m["tile"]["stride"], "| first inventory fields:",
      [f["name"] for f in m["inventory"][:6]])

# %%
# Encode, decode, compare.

world = generate_world(make_level_params(11), CLASSIC)
state = reset(world, CLASSIC, rng.make_stream(11))
state.sim.inv_wood[0] = 9
vec = encode_symbolic(state)
dec = decode_symbolic(vec, CLASSIC)
print("wood back from the vector:", dec["inventory"]["wood"])
print("center tile block channel:", int(dec["block"][3, 4]))

# %%
# The tile renderer draws the same state as RGB (63x63 at 7 px for classic).

frame = render_tiles(state, tile_px=7)
print("frame:", frame.shape, "distinct colours:",
      len(np.unique(frame.reshape(-1, 3), axis=0)))
