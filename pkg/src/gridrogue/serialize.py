"""Versioned serialization for level params, worlds and episode states.

Binary format: a zip-of-npy container (numpy's ``savez``) whose entries are
documented field by field in docs/MECHANICS.md; every blob carries a
``__meta__`` JSON entry with {"format": ..., "version": 1, "tier": ...}.
The JSON debug format mirrors the same fields as plain lists for inspection
and diffing; it round-trips exactly for every integer-valued field.
"""

from __future__ import annotations

import io
import json

import numpy as np

from .constants import tier_by_name
from .state import SimState, GameState, FIELD_NAMES
from .worldgen import LevelParams, World, FloorMap, OVERWORLD_OCTAVES

FORMAT_VERSION = 1


def _pack(kind: str, tier: str, arrays: dict) -> bytes:
    buf = io.BytesIO()
    meta = json.dumps({"format": kind, "version": FORMAT_VERSION, "tier": tier})
    np.savez(buf, __meta__=np.frombuffer(meta.encode(), np.uint8), **arrays)
    return buf.getvalue()


def _unpack(blob: bytes, kind: str):
    data = np.load(io.BytesIO(blob), allow_pickle=False)
    meta = json.loads(bytes(data["__meta__"]).decode())
    if meta.get("format") != kind:
        raise ValueError(f"expected a {kind} blob, got {meta.get('format')!r}")
    if meta.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported {kind} version {meta.get('version')!r}")
    return meta, data


# --- LevelParams -------------------------------------------------------------

def params_to_bytes(params: LevelParams) -> bytes:
    arrays = {"seed": np.uint64(params.seed),
              "per_floor_seeds": np.array(params.per_floor_seeds, np.uint64)}
    for i, grid in enumerate(params.overworld_angles):
        arrays[f"angles_{i}"] = grid
    return _pack("level_params", "", arrays)


def params_from_bytes(blob: bytes) -> LevelParams:
    _, data = _unpack(blob, "level_params")
    angles = tuple(data[f"angles_{i}"] for i in range(len(OVERWORLD_OCTAVES)))
    return LevelParams(int(data["seed"]), angles,
                       tuple(int(x) for x in data["per_floor_seeds"]))


def params_to_json(params: LevelParams) -> dict:
    return {
        "format": "level_params", "version": FORMAT_VERSION,
        "seed": int(params.seed),
        "per_floor_seeds": [int(x) for x in params.per_floor_seeds],
        "overworld_angles": [g.tolist() for g in params.overworld_angles],
    }


def params_from_json(doc: dict) -> LevelParams:
    angles = tuple(np.array(g, np.float32) for g in doc["overworld_angles"])
    return LevelParams(int(doc["seed"]), angles,
                       tuple(int(x) for x in doc["per_floor_seeds"]))


# --- World --------------------------------------------------------------------

def world_to_bytes(world: World) -> bytes:
    arrays = {
        "potion_permutation": world.potion_permutation,
        "n_floors": np.int64(len(world.floors)),
    }
    for f, fm in enumerate(world.floors):
        arrays[f"floor{f}_blocks"] = fm.blocks
        arrays[f"floor{f}_items"] = fm.items
        arrays[f"floor{f}_light"] = fm.light_base
        arrays[f"floor{f}_spawn"] = np.array(fm.spawn, np.int16)
        arrays[f"floor{f}_ladder_down"] = np.array(
            fm.ladder_down if fm.ladder_down else (-1, -1), np.int16)
        arrays[f"floor{f}_ladder_up"] = np.array(
            fm.ladder_up if fm.ladder_up else (-1, -1), np.int16)
        arrays[f"floor{f}_chests"] = np.array(world.chests[f], np.int64) \
            if world.chests[f] else np.zeros((0, 4), np.int64)
    arrays["params"] = np.frombuffer(params_to_bytes(world.params), np.uint8)
    return _pack("world", world.tier_name, arrays)


def world_from_bytes(blob: bytes) -> World:
    meta, data = _unpack(blob, "world")
    n = int(data["n_floors"])
    floors, chests = [], []
    for f in range(n):
        ld = tuple(int(x) for x in data[f"floor{f}_ladder_down"])
        lu = tuple(int(x) for x in data[f"floor{f}_ladder_up"])
        floors.append(FloorMap(
            blocks=data[f"floor{f}_blocks"],
            items=data[f"floor{f}_items"],
            light_base=data[f"floor{f}_light"],
            spawn=tuple(int(x) for x in data[f"floor{f}_spawn"]),
            ladder_down=None if ld == (-1, -1) else ld,
            ladder_up=None if lu == (-1, -1) else lu,
        ))
        chests.append([tuple(int(v) for v in row)
                       for row in data[f"floor{f}_chests"]])
    params = params_from_bytes(bytes(data["params"]))
    return World(floors, data["potion_permutation"], chests, params,
                 meta["tier"])


def world_to_json(world: World) -> dict:
    return {
        "format": "world", "version": FORMAT_VERSION, "tier": world.tier_name,
        "potion_permutation": world.potion_permutation.tolist(),
        "chests": [[list(c) for c in lanes] for lanes in world.chests],
        "floors": [{
            "blocks": fm.blocks.tolist(),
            "items": fm.items.tolist(),
            "ambient_light": float(fm.light_base[0, 0]),
            "spawn": list(fm.spawn),
            "ladder_down": list(fm.ladder_down) if fm.ladder_down else None,
            "ladder_up": list(fm.ladder_up) if fm.ladder_up else None,
        } for fm in world.floors],
        "params": params_to_json(world.params),
    }


def world_from_json(doc: dict) -> World:
    floors = []
    for fd in doc["floors"]:
        blocks = np.array(fd["blocks"], np.uint8)
        floors.append(FloorMap(
            blocks=blocks,
            items=np.array(fd["items"], np.uint8),
            light_base=np.full(blocks.shape, fd["ambient_light"], np.float32),
            spawn=tuple(fd["spawn"]),
            ladder_down=tuple(fd["ladder_down"]) if fd["ladder_down"] else None,
            ladder_up=tuple(fd["ladder_up"]) if fd["ladder_up"] else None,
        ))
    return World(floors,
                 np.array(doc["potion_permutation"], np.uint8),
                 [[tuple(c) for c in lanes] for lanes in doc["chests"]],
                 params_from_json(doc["params"]), doc["tier"])


# --- GameState ------------------------------------------------------------------

def state_to_bytes(state: GameState) -> bytes:
    sim = state.sim
    arrays = {name: getattr(sim, name) for name in FIELD_NAMES}
    arrays["max_episode_length"] = np.int64(sim.tier.max_episode_length)
    return _pack("game_state", sim.tier.name, arrays)


def state_from_bytes(blob: bytes) -> GameState:
    meta, data = _unpack(blob, "game_state")
    tier = tier_by_name(meta["tier"])
    cap = int(data["max_episode_length"])
    if cap != tier.max_episode_length:
        tier = tier.with_max_length(cap)
    n = int(data["pfloor"].shape[0])
    sim = SimState(n, tier, _alloc=False)
    for name in FIELD_NAMES:
        setattr(sim, name, np.ascontiguousarray(data[name]))
    return GameState(sim)


def state_to_json(state: GameState) -> dict:
    sim = state.sim
    doc = {"format": "game_state", "version": FORMAT_VERSION,
           "tier": sim.tier.name,
           "max_episode_length": sim.tier.max_episode_length}
    for name in FIELD_NAMES:
        doc[name] = getattr(sim, name).tolist()
    return doc


def state_from_json(doc: dict) -> GameState:
    tier = tier_by_name(doc["tier"])
    if doc["max_episode_length"] != tier.max_episode_length:
        tier = tier.with_max_length(doc["max_episode_length"])
    from .state import _SHAPES
    probe = np.array(doc["pfloor"])
    sim = SimState(len(probe), tier, _alloc=False)
    for name in FIELD_NAMES:
        dtype = _SHAPES[name][0]
        setattr(sim, name, np.array(doc[name], dtype))
    return GameState(sim)
