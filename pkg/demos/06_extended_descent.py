"""
Descending the extended tier
============================

Teleport-style tour of the nine floors using the engine's ladder mechanics,
collecting the entry achievements and experience points along the way.
"""

from gridrogue import EXTENDED, Achievement, Action, make_level_params, generate_world
from gridrogue import rng
from gridrogue.engine import reset, step

world = generate_world(make_level_params(21), EXTENDED)
state = reset(world, EXTENDED, rng.make_stream(21))

# %%
# Walk the ladder chain: place the player on each ladder and descend.

for floor in range(8):
    fm = world.floors[floor]
    s = state.sim
    s.pfloor[0] = floor
    s.prow[0], s.pcol[0] = fm.ladder_down
    s.mel_alive[:] = False; s.ran_alive[:] = False; s.pas_alive[:] = False
    out = step(state, Action.DESCEND)
    state = out.state
    names = [Achievement(a).name for a in out.newly_unlocked]
    print(f"floor {floor} -> {floor + 1}: reward {out.reward:+.1f} {names}")
print("xp earned:", int(state.sim.xp[0]))
print("boss health waiting on floor 8:", float(state.sim.boss_hp[0]))
