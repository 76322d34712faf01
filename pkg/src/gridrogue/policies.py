"""Benchmark policies: uniform random and a scripted early-game routine.

The scripted policy plays the opening of the classic tech tree from full map
knowledge: chop wood, place a crafting table, make a wood pickaxe, then mine
a stone block, drinking when thirsty along the way.  It exists to give the
test suite a reachability oracle, not to play well.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .rng import vhash2, vuniform32, _U
from .constants import (
    Action, Block, WALKABLE, PLACEABLE_SOLID, Achievement, DIR_OFFSETS,
)
from .state import SimState


class RandomPolicy:
    """Uniform random actions, deterministic in (seed, step, env)."""

    def __init__(self, seed: int, n_actions: int):
        self.key = np.uint32(seed & 0xFFFFFFFF)
        self.n_actions = n_actions
        self.t = 0
        self._envs = None

    def actions(self, sim: SimState) -> np.ndarray:
        if self._envs is None or len(self._envs) != sim.n:
            self._envs = np.arange(sim.n, dtype=np.uint32)
        u = vuniform32(np.uint32((int(self.key) + self.t * 2654435761)
                                 & 0xFFFFFFFF), self._envs)
        self.t += 1
        return (u * self.n_actions).astype(np.int64) % self.n_actions


_DIR_ACTION = {(0, -1): Action.LEFT, (0, 1): Action.RIGHT,
               (-1, 0): Action.UP, (1, 0): Action.DOWN}


def _bfs(blocks: np.ndarray, start: tuple[int, int], goal_pred) -> list | None:
    """Shortest walkable path to the nearest tile satisfying ``goal_pred``.

    Returns the list of positions after ``start`` (may be empty if the start
    already satisfies the goal), or None when unreachable.
    """
    h, w = blocks.shape
    walk = WALKABLE[blocks]
    seen = np.zeros((h, w), bool)
    parent = {}
    q = deque([start])
    seen[start] = True
    while q:
        cur = q.popleft()
        if goal_pred(cur):
            path = []
            while cur != start:
                path.append(cur)
                cur = parent[cur]
            path.reverse()
            return path
        r, c = cur
        for dr, dc in ((0, -1), (0, 1), (-1, 0), (1, 0)):
            nr, nc = r + dr, c + dc
            if 0 <= nr < h and 0 <= nc < w and not seen[nr, nc] and walk[nr, nc]:
                seen[nr, nc] = True
                parent[(nr, nc)] = cur
                q.append((nr, nc))
    return None


def _adjacent_block(blocks, pos, targets) -> tuple[int, int] | None:
    r, c = pos
    h, w = blocks.shape
    for dr, dc in ((0, -1), (0, 1), (-1, 0), (1, 0)):
        nr, nc = r + dr, c + dc
        if 0 <= nr < h and 0 <= nc < w and blocks[nr, nc] in targets:
            return (nr, nc)
    return None


class _Plan:
    def __init__(self):
        self.path: list = []
        self.episode_mark = -1


class ScriptedPolicy:
    """Completes wood -> table -> wood pickaxe -> stone in the classic tier."""

    def __init__(self):
        self.plans: dict[int, _Plan] = {}

    def actions(self, sim: SimState) -> np.ndarray:
        out = np.zeros(sim.n, np.int64)
        for i in range(sim.n):
            out[i] = self._act(sim, i)
        return out

    def _act(self, sim: SimState, i: int) -> int:
        plan = self.plans.setdefault(i, _Plan())
        if sim.time[i] == 0:
            plan.path = []
        blocks = sim.blocks[i, 0]
        pos = (int(sim.prow[i]), int(sim.pcol[i]))

        if sim.sleeping[i]:
            return int(Action.NOOP)

        # survival instincts: run from packs, strike lone adjacent hostiles
        hostiles = self._hostiles(sim, i)
        close = [p for p in hostiles
                 if max(abs(p[0] - pos[0]), abs(p[1] - pos[1])) <= 4]
        if len(close) >= 2 or (sim.health[i] <= 4 and close):
            flee = self._flee(blocks, pos, close)
            if flee is not None:
                return flee
        threat = self._adjacent_hostile(sim, i, pos)
        if threat is not None:
            want = (threat[0] - pos[0], threat[1] - pos[1])
            facing_action = int(_DIR_ACTION[want])
            if int(sim.facing[i]) != facing_action - 1:
                return facing_action
            return int(Action.DO)

        # sidestep any marksman lined up with us
        dodge = self._dodge_aligned_shooter(sim, i, blocks, pos)
        if dodge is not None:
            return dodge

        # stay hydrated: head for water when low
        if sim.drink[i] <= 4:
            act = self._seek_and_do(sim, i, blocks, pos, {int(Block.WATER)}, plan)
            if act is not None:
                return act

        if sim.pick_tier[i] == 0:
            have_wood = int(sim.inv_wood[i])
            need = 3 if not self._table_placed(blocks) else 2
            table_near = _adjacent_block(blocks, pos, {int(Block.CRAFTING_TABLE)})
            if table_near is None and have_wood >= 2 and self._table_placed(blocks):
                act = self._seek_and_do(sim, i, blocks, pos,
                                        {int(Block.CRAFTING_TABLE)}, plan,
                                        do=False)
                if act is not None:
                    return act
            if have_wood < need and not (table_near and have_wood >= 2):
                act = self._seek_and_do(sim, i, blocks, pos,
                                        {int(Block.TREE)}, plan)
                if act is not None:
                    return act
                return int(Action.NOOP)
            if table_near is None:
                act = self._place_toward(blocks, pos, sim, i, Action.PLACE_TABLE)
                if act is not None:
                    return act
                return self._wander(sim, i)
            if sim.sword_tier[i] == 0 and have_wood >= 2:
                return int(Action.MAKE_WOOD_SWORD)
            return int(Action.MAKE_WOOD_PICKAXE)

        # pickaxe in hand: break the nearest stone
        act = self._seek_and_do(sim, i, blocks, pos, {int(Block.STONE)}, plan)
        if act is not None:
            return act
        return self._wander(sim, i)

    def _table_placed(self, blocks) -> bool:
        return bool((blocks == Block.CRAFTING_TABLE).any())

    def _hostiles(self, sim, i):
        out = []
        for cls in ("mel", "ran"):
            cpos = getattr(sim, cls + "_pos")[i, 0]
            alive = getattr(sim, cls + "_alive")[i, 0]
            for lane in range(len(alive)):
                if alive[lane]:
                    out.append((int(cpos[lane, 0]), int(cpos[lane, 1])))
        return out

    def _flee(self, blocks, pos, threats):
        h, w = blocks.shape
        best, best_score = None, min(max(abs(t[0] - pos[0]), abs(t[1] - pos[1]))
                                     for t in threats)
        for dr, dc in ((0, -1), (0, 1), (-1, 0), (1, 0)):
            nr, nc = pos[0] + dr, pos[1] + dc
            if not (0 <= nr < h and 0 <= nc < w and WALKABLE[blocks[nr, nc]]):
                continue
            score = min(max(abs(t[0] - nr), abs(t[1] - nc)) for t in threats)
            if score > best_score:
                best, best_score = (dr, dc), score
        return int(_DIR_ACTION[best]) if best else None

    def _dodge_aligned_shooter(self, sim, i, blocks, pos):
        h, w = blocks.shape
        cpos = sim.ran_pos[i, 0]
        alive = sim.ran_alive[i, 0]
        for lane in range(len(alive)):
            if not alive[lane]:
                continue
            dr = int(cpos[lane, 0]) - pos[0]
            dc = int(cpos[lane, 1]) - pos[1]
            if (dr == 0) == (dc == 0) or max(abs(dr), abs(dc)) > 6:
                continue
            sidesteps = ((1, 0), (-1, 0)) if dr == 0 else ((0, 1), (0, -1))
            for sr, sc in sidesteps:
                nr, nc = pos[0] + sr, pos[1] + sc
                if 0 <= nr < h and 0 <= nc < w and WALKABLE[blocks[nr, nc]]:
                    return int(_DIR_ACTION[(sr, sc)])
        return None

    def _adjacent_hostile(self, sim, i, pos):
        for cls in ("mel", "ran"):
            cpos = getattr(sim, cls + "_pos")[i, 0]
            alive = getattr(sim, cls + "_alive")[i, 0]
            for lane in range(len(alive)):
                if not alive[lane]:
                    continue
                dr = int(cpos[lane, 0]) - pos[0]
                dc = int(cpos[lane, 1]) - pos[1]
                if abs(dr) + abs(dc) == 1:
                    return (pos[0] + dr, pos[1] + dc)
        return None

    def _seek_and_do(self, sim, i, blocks, pos, targets, plan, do=True):
        adj = _adjacent_block(blocks, pos, targets)
        if adj is not None:
            want = (adj[0] - pos[0], adj[1] - pos[1])
            facing_action = int(_DIR_ACTION[want])
            if int(sim.facing[i]) != facing_action - 1:
                return facing_action
            return int(Action.DO) if do else facing_action
        if not plan.path or plan.path[0] == pos or not self._step_ok(blocks, plan.path[0]):
            path = _bfs(blocks, pos,
                        lambda p: _adjacent_block(blocks, p, targets) is not None)
            plan.path = path or []
        if plan.path:
            nxt = plan.path[0]
            want = (nxt[0] - pos[0], nxt[1] - pos[1])
            if want not in _DIR_ACTION:
                plan.path = []
                return int(Action.NOOP)
            act = int(_DIR_ACTION[want])
            # consume the waypoint optimistically; a blocked move replans
            plan.path = plan.path[1:]
            return act
        return None

    def _step_ok(self, blocks, p) -> bool:
        return WALKABLE[blocks[p]]

    def _place_toward(self, blocks, pos, sim, i, place_action):
        """Place on the faced tile if possible, else step toward one.

        Direction actions both turn and move, so checking the faced tile
        first is what keeps this from pacing back and forth.
        """
        h, w = blocks.shape
        fr, fc = DIR_OFFSETS[int(sim.facing[i])]
        tr, tc = pos[0] + int(fr), pos[1] + int(fc)
        if 0 <= tr < h and 0 <= tc < w and PLACEABLE_SOLID[blocks[tr, tc]]:
            return int(place_action)
        for dr, dc in ((1, 0), (0, 1), (0, -1), (-1, 0)):
            nr, nc = pos[0] + dr, pos[1] + dc
            if 0 <= nr < h and 0 <= nc < w and PLACEABLE_SOLID[blocks[nr, nc]]:
                return int(_DIR_ACTION[(dr, dc)])
        return None

    def _wander(self, sim, i) -> int:
        h = vhash2(sim.rng_key[i:i + 1], np.uint64(int(sim.time[i]) + 7777))
        return int(1 + h[0] % _U(4))


def make_policy(name: str, seed: int, n_actions: int):
    if name == "random":
        return RandomPolicy(seed, n_actions)
    if name == "scripted":
        return ScriptedPolicy()
    raise ValueError(f"unknown policy {name!r}")
