"""
Batched stepping and optimistic resets
======================================

Step many environments at once; finished ones pull fresh worlds from the
per-step pool (at most ceil(N/16) distinct worlds per step).
"""

import time

import numpy as np

from gridrogue import CLASSIC
from gridrogue.batch import (BatchConfig, batch_reset, batch_step,
                             duplication_probability)
from gridrogue.policies import RandomPolicy

# %%
# A small sweep; timing excludes the warmup.

for n in (1, 64, 512):
    cfg = BatchConfig(n_envs=n, tier=CLASSIC)
    bs = batch_reset(cfg, seed=0)
    pol = RandomPolicy(0, CLASSIC.n_actions)
    for _ in range(100):
        bs, _ = batch_step(bs, pol.actions(bs.sim))
    steps = max(1, 20_000 // n)
    t0 = time.perf_counter()
    for _ in range(steps):
        bs, out = batch_step(bs, pol.actions(bs.sim))
    sps = steps * n / (time.perf_counter() - t0)
    print(f"N={n:4d}: {sps:10,.0f} steps/s "
          f"({bs.stats.episodes} episodes finished)")

# %%
# Why "optimistic": with 1024 workers and ~200-step episodes, the chance
# that more than the 64 pooled worlds are needed in one step is negligible.

print("P(X > 64), X ~ Binomial(1024, 1/200):",
      duplication_probability(1024, 1 / 200, 64))
