"""Bindings contract tests, including the bit-parity acceptance criterion."""

import numpy as np
import pytest

from gridrogue import CLASSIC, EXTENDED
from gridrogue.batch import BatchConfig, batch_reset, batch_step
from gridrogue.obs import encode_symbolic_batch
from gridrogue_gym import BatchEnv


def test_shapes_and_widths():
    env = BatchEnv(4, tier="extended", seed=1)
    obs = env.reset()
    assert obs.shape == (4, 8268) and obs.dtype == np.float32
    obs, reward, done, info = env.step(np.zeros(4, np.int64))
    assert obs.shape == (4, 8268)
    assert reward.shape == (4,) and reward.dtype == np.float32
    assert done.shape == (4,) and done.dtype == bool
    assert info["newly_unlocked"].shape == (4, 67)

    env = BatchEnv(3, tier="classic", seed=1)
    assert env.reset().shape == (3, 1345)


def test_bad_inputs_name_the_offender():
    env = BatchEnv(4, tier="classic", seed=0)
    env.reset()
    with pytest.raises(ValueError, match="env 2"):
        env.step(np.array([0, 1, 99, 3]))
    with pytest.raises(ValueError, match="shape"):
        env.step(np.zeros(5, np.int64))
    with pytest.raises(RuntimeError, match="reset"):
        BatchEnv(2, tier="classic").step(np.zeros(2, np.int64))


def test_cross_process_style_determinism():
    a = BatchEnv(8, tier="classic", seed=5)
    b = BatchEnv(8, tier="classic", seed=5)
    a.reset(); b.reset()
    rng = np.random.default_rng(0)
    for _ in range(50):
        acts = rng.integers(0, 17, size=8)
        _, ra, da, _ = a.step(acts)
        _, rb, db, _ = b.step(acts)
        assert np.array_equal(ra, rb) and np.array_equal(da, db)


def test_auto_reset_consumes_done():
    env = BatchEnv(4, tier="classic", seed=2)
    env.reset()
    env._bs.sim.health[1] = 0.0
    _, _, done, _ = env.step(np.zeros(4, np.int64))
    assert done[1]
    assert not env._bs.sim.done.any()
    assert env._bs.sim.time[1] == 0  # already freshly reset


def test_no_allocation_growth():
    import tracemalloc
    env = BatchEnv(16, tier="classic", seed=3, obs_mode="none")
    env.reset()
    acts = np.zeros(16, np.int64)
    for _ in range(200):
        env.step(acts)
    tracemalloc.start()
    s0 = tracemalloc.take_snapshot()
    for _ in range(400):
        env.step(acts)
    s1 = tracemalloc.take_snapshot()
    tracemalloc.stop()
    growth = sum(st.size_diff for st in s1.compare_to(s0, "filename")
                 if st.size_diff > 0)
    assert growth < 2_000_000  # scratch churn only, no per-step leak


def test_acceptance_bindings_bit_parity():
    """[SECONDARY] criterion 12: 1e4 batch steps bit-match direct execution."""
    n, steps = 20, 500  # 10_000 env-steps
    env = BatchEnv(n, tier="classic", seed=9, obs_mode="symbolic")
    obs_env = env.reset()

    bs = batch_reset(BatchConfig(n_envs=n, tier=CLASSIC), 9)
    assert np.array_equal(obs_env, encode_symbolic_batch(bs.sim))
    rng = np.random.default_rng(4)
    ok = True
    for _ in range(steps):
        acts = rng.integers(0, 17, size=n)
        obs_a, rew_a, done_a, _ = env.step(acts)
        bs, out = batch_step(bs, acts)
        ok &= np.array_equal(rew_a, out.reward.astype(np.float32))
        ok &= np.array_equal(done_a, out.done)
        ok &= np.array_equal(obs_a, encode_symbolic_batch(bs.sim))
    assert ok and env._bs.sim.equals(bs.sim)
    print(f"\n[PASS] criterion 12: {n * steps} env-steps through the bindings "
          f"bit-match direct engine execution")
