"""
Playing an episode
==================

Drive the scripted policy through the classic opening (wood, table, pickaxe,
stone) and watch the textual renderer.
"""

from gridrogue import CLASSIC, Achievement, make_level_params, generate_world
from gridrogue import rng
from gridrogue.engine import reset, step
from gridrogue.obs import render_text
from gridrogue.policies import ScriptedPolicy

world = generate_world(make_level_params(seed=3), CLASSIC)
state = reset(world, CLASSIC, rng.make_stream(3))
policy = ScriptedPolicy()

# %%
# Step until the early tech tree is done, printing every unlock.

total = 0.0
for t in range(2000):
    action = int(policy.actions(state.sim)[0])
    out = step(state, action)
    state = out.state
    total += out.reward
    for ach in out.newly_unlocked:
        print(f"step {t:4d}: unlocked {Achievement(ach).name} "
              f"(reward +{out.reward:.1f})")
    if Achievement.COLLECT_STONE in out.newly_unlocked:
        break
print(f"return so far: {total:.1f}")

# %%
# The agent's-eye view: one line per visible tile, then the inventory.

lines = render_text(state)
view = lines[:63]
for r in range(7):
    print(" | ".join(view[r * 9 + 3:r * 9 + 6]))
print([l for l in lines[63:] if not l.endswith(": 0")][:8])
