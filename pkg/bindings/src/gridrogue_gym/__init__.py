"""Gym-style array bindings over the gridrogue batch engine.

One class, one contract: ``BatchEnv(n_envs, tier, seed, obs_mode)`` with
``reset() -> obs`` and ``step(actions) -> (obs, reward, done, info)`` as
contiguous numpy arrays. Finished environments auto-reset exactly like the
underlying batch runner (the reported transition is the pre-reset terminal
one), so results are bit-identical to driving the engine directly.
"""

from __future__ import annotations

import threading

import numpy as np

from gridrogue import tier_by_name
from gridrogue.batch import BatchConfig, batch_reset, batch_step
from gridrogue.obs import encode_symbolic_batch, obs_length

__all__ = ["BatchEnv"]
__version__ = "0.1.0"


class BatchEnv:
    """N parallel episodes behind a (obs, reward, done, info) step contract.

    obs_mode: "symbolic" (float32, width 1345 classic / 8268 extended) or
    "none" (an (n, 0) array, for stepping-throughput use).

    Instances are single-owner: concurrent ``step`` calls raise.
    """

    metadata = {"obs_modes": ("symbolic", "none")}

    def __init__(self, n_envs: int, tier: str = "extended", seed: int = 0,
                 obs_mode: str = "symbolic",
                 max_episode_length: int | None = None):
        if obs_mode not in self.metadata["obs_modes"]:
            raise ValueError(f"unknown obs_mode {obs_mode!r}")
        self.tier = tier_by_name(tier)
        self.n_envs = int(n_envs)
        self.obs_mode = obs_mode
        self.seed = int(seed)
        self._cfg = BatchConfig(n_envs=self.n_envs, tier=self.tier,
                                max_episode_length=max_episode_length)
        self._bs = None
        self._stepping = threading.Lock()

    # --- gym-style surface -------------------------------------------------

    @property
    def n_actions(self) -> int:
        return self.tier.n_actions

    @property
    def obs_width(self) -> int:
        return obs_length(self.tier) if self.obs_mode == "symbolic" else 0

    def reset(self) -> np.ndarray:
        self._bs = batch_reset(self._cfg, self.seed)
        return self._observe()

    def step(self, actions) -> tuple[np.ndarray, np.ndarray, np.ndarray, dict]:
        if self._bs is None:
            raise RuntimeError("call reset() before step()")
        if not self._stepping.acquire(blocking=False):
            raise RuntimeError("BatchEnv is single-owner: concurrent step() "
                               "calls are not allowed")
        try:
            actions = np.ascontiguousarray(actions, dtype=np.int64)
            if actions.shape != (self.n_envs,):
                raise ValueError(f"actions must have shape ({self.n_envs},), "
                                 f"got {actions.shape}")
            bad = (actions < 0) | (actions >= self.tier.n_actions)
            if bad.any():
                i = int(np.argmax(bad))
                raise ValueError(f"invalid action {int(actions[i])} for env {i}")
            self._bs, out = batch_step(self._bs, actions)
            obs = self._observe()
            reward = out.reward.astype(np.float32)
            info = {"time": out.info["time"], "floor": out.info["floor"],
                    "newly_unlocked": out.newly,
                    "episodes_completed": self._bs.stats.episodes}
            return obs, reward, out.done, info
        finally:
            self._stepping.release()

    def level_seeds(self) -> np.ndarray:
        """LevelParams identity of each env's current world."""
        return self._bs.level_seeds()

    def _observe(self) -> np.ndarray:
        if self.obs_mode == "none":
            return np.zeros((self.n_envs, 0), np.float32)
        return encode_symbolic_batch(self._bs.sim)
