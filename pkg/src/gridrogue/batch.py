"""Vectorized execution of many environments with optimistic resets.

Generating a world is far more expensive than stepping one, so the batch
never generates a fresh world per finished episode eagerly for all workers.
Instead each batch step owns a pool of M = ceil(N / reset_ratio) fresh
(World, initial GameState) entries, deterministically derived from
(seed, step index, slot).  Environments that finish consume distinct pool
entries while they last; beyond M, slot assignment wraps round-robin and
worlds get duplicated.  Pool entries are materialized only when consumed,
which is observationally equivalent to regenerating all M every step and is
what makes the scheme cheap.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import rng as R
from ._kern import Workspace
from .constants import TierConf, EXTENDED
from .engine import step_batch
from .state import SimState, GameState, install_world, install_worlds
from .worldgen import LevelParams, World, make_level_params, generate_world, \
    generate_worlds

_ENV_STREAM = 0
_POOL_STREAM = 1


@dataclass(frozen=True)
class BatchConfig:
    n_envs: int
    tier: TierConf = EXTENDED
    reset_ratio: int = 16
    max_episode_length: int | None = None
    worker_threads: int = 1

    def __post_init__(self):
        if self.n_envs < 1:
            raise ValueError("n_envs must be >= 1")
        if self.reset_ratio < 1:
            raise ValueError("reset_ratio must be >= 1")

    @property
    def pool_size(self) -> int:
        return max(1, math.ceil(self.n_envs / self.reset_ratio))

    def effective_tier(self) -> TierConf:
        if self.max_episode_length is None:
            return self.tier
        return self.tier.with_max_length(self.max_episode_length)


class WorldPool:
    """The M fresh (World, GameState) entries owned by one batch step.

    Entry ``j`` is a pure function of (batch seed, step index, j); it is
    built on first access, so discarding the pool costs nothing.  A
    background worker may hand in entries it prepared ahead of time; they
    are bit-identical to what on-demand generation would produce.
    """

    def __init__(self, pool_key: int, step_index: int, size: int, tier: TierConf,
                 prepared: dict[int, World] | None = None):
        self._step_key = R.hash2(pool_key, step_index)
        self.size = size
        self.tier = tier
        self._params: dict[int, LevelParams] = {}
        self._worlds: dict[int, World] = dict(prepared) if prepared else {}

    def params(self, j: int) -> LevelParams:
        if j not in self._params:
            self._params[j] = make_level_params(R.hash2(self._step_key, j))
        return self._params[j]

    def world(self, j: int) -> World:
        if j not in self._worlds:
            self.materialize([j])
        return self._worlds[j]

    def materialize(self, slots) -> None:
        """Generate several slots' worlds in one vectorized noise pass."""
        todo = [j for j in slots if j not in self._worlds]
        if not todo:
            return
        worlds = generate_worlds([self.params(j) for j in todo], self.tier)
        for j, w in zip(todo, worlds):
            self._worlds[j] = w

    def state_key(self, j: int) -> int:
        return R.hash2(self._step_key, (1 << 32) + j)

    def __getitem__(self, j: int) -> tuple[World, GameState]:
        if not 0 <= j < self.size:
            raise IndexError(j)
        world = self.world(j)
        sim = SimState(1, self.tier)
        install_world(sim, 0, world, self.state_key(j))
        return world, GameState(sim, world)

    def __len__(self) -> int:
        return self.size


@dataclass
class EpisodeStats:
    """Aggregates over completed episodes, fed by the auto-reset path."""

    episodes: int = 0
    total_return: float = 0.0
    total_steps: int = 0
    ach_episodes: np.ndarray | None = None

    def record(self, returns, lengths, ach_rows) -> None:
        self.episodes += len(returns)
        self.total_return += float(np.sum(returns))
        self.total_steps += int(np.sum(lengths))
        if self.ach_episodes is None:
            self.ach_episodes = np.zeros(ach_rows.shape[1], np.int64)
        self.ach_episodes += ach_rows.sum(axis=0)


@dataclass
class BatchOutcome:
    reward: np.ndarray          # (n,) float64, pre-reset terminal rewards included
    done: np.ndarray            # (n,) bool
    newly: np.ndarray           # (n, n_achievements) bool
    info: dict = field(default_factory=dict)
    obs: np.ndarray | None = None


class BatchState:
    """N live environments plus this step's reset pool."""

    def __init__(self, cfg: BatchConfig, seed: int):
        self.cfg = cfg
        self.seed = seed
        tier = cfg.effective_tier()
        self.tier = tier
        base = R.make_stream(seed)
        self._pool_key = R.split(base, _POOL_STREAM).key
        self.step_index = 0
        self.sim = SimState(cfg.n_envs, tier)
        self.ws = Workspace(cfg.n_envs, tier.n_achievements)
        self.ep_return = np.zeros(cfg.n_envs, np.float64)
        self.ep_length = np.zeros(cfg.n_envs, np.int64)
        self.stats = EpisodeStats()
        self.pool = WorldPool(self._pool_key, 0, cfg.pool_size, tier)
        self.pool_used = np.zeros(cfg.pool_size, bool)

        env_stream = R.split(base, _ENV_STREAM)
        params = [make_level_params(R.split(env_stream, i).key)
                  for i in range(cfg.n_envs)]
        worlds = generate_worlds(params, tier)
        keys = [R.split(R.split(env_stream, i), 1).key for i in range(cfg.n_envs)]
        install_worlds(self.sim, np.arange(cfg.n_envs), worlds, keys)

    def level_seeds(self) -> np.ndarray:
        """The LevelParams identity of each env's current world."""
        return self.sim.params_seed.copy()


def batch_reset(cfg: BatchConfig, seed: int) -> BatchState:
    """N freshly generated, pairwise-distinct worlds; deterministic in seed."""
    return BatchState(cfg, seed)


def _step_chunked(bs: BatchState, actions: np.ndarray):
    threads = bs.cfg.worker_threads
    n = bs.cfg.n_envs
    if threads <= 1 or n < 2 * threads:
        return step_batch(bs.sim, actions, bs.ws)
    bounds = np.linspace(0, n, threads + 1, dtype=int)
    chunks = [slice(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])
              if b > a]
    sims = [bs.sim.view(sl) for sl in chunks]
    wss = [Workspace(sims[i].n, bs.tier.n_achievements) for i in range(len(chunks))]
    with ThreadPoolExecutor(max_workers=len(chunks)) as ex:
        parts = list(ex.map(
            lambda args: step_batch(args[0], actions[args[2]], args[1]),
            zip(sims, wss, chunks)))
    reward = np.concatenate([p[0] for p in parts])
    done = np.concatenate([p[1] for p in parts])
    newly = np.concatenate([p[2] for p in parts])
    delta = np.concatenate([p[3] for p in parts])
    return reward, done, newly, delta


def batch_step(bs: BatchState, actions: np.ndarray,
               encode_obs: bool = False) -> tuple[BatchState, BatchOutcome]:
    """Step every env once; finished envs are replaced from the pool.

    The outcome reports the pre-reset terminal transition for envs that
    finished this step.
    """
    actions = np.asarray(actions)
    if actions.shape != (bs.cfg.n_envs,):
        raise ValueError(f"actions must have shape ({bs.cfg.n_envs},), "
                         f"got {actions.shape}")
    reward, done, newly, delta = _step_chunked(bs, actions)

    bs.ep_return += reward
    bs.ep_length += 1
    info = {"time": bs.sim.time.copy(), "floor": bs.sim.pfloor.copy(),
            "health_delta": delta}

    obs = None
    if encode_obs:
        from .obs import encode_symbolic_batch
        obs = encode_symbolic_batch(bs.sim)

    # optimistic resets: this step's pool serves the finished envs
    bs.pool = WorldPool(bs._pool_key, bs.step_index + 1, bs.cfg.pool_size, bs.tier)
    bs.pool_used = np.zeros(bs.cfg.pool_size, bool)
    done_idx = np.nonzero(done)[0]
    if len(done_idx):
        bs.stats.record(bs.ep_return[done_idx], bs.ep_length[done_idx],
                        bs.sim.ach[done_idx])
        m = bs.cfg.pool_size
        slots = np.arange(len(done_idx)) % m
        bs.pool.materialize(np.unique(slots).tolist())
        install_worlds(bs.sim, done_idx,
                       [bs.pool.world(s) for s in slots.tolist()],
                       [bs.pool.state_key(s) for s in slots.tolist()])
        bs.pool_used[np.unique(slots)] = True
        bs.ep_return[done_idx] = 0.0
        bs.ep_length[done_idx] = 0

    bs.step_index += 1
    return bs, BatchOutcome(reward, done, newly, info, obs)


def duplication_probability(n: int, p: float, m: int) -> float:
    """P(X > m) for X ~ Binomial(n, p), summed exactly in log space."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0 if m < n else 0.0
    log_p = math.log(p)
    log_q = math.log1p(-p)
    lgn = math.lgamma(n + 1)
    terms = [lgn - math.lgamma(k + 1) - math.lgamma(n - k + 1)
             + k * log_p + (n - k) * log_q
             for k in range(m + 1, n + 1)]
    if not terms:
        return 0.0
    hi = max(terms)
    return float(math.exp(hi) * sum(math.exp(t - hi) for t in terms))
