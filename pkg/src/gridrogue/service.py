"""Interactive episode service over a JSON WebSocket protocol.

One connection owns one episode.  The service is a thin adapter over the
engine and the observation codecs; it holds no game logic of its own.

Protocol (JSON messages, protocol version 1):

    -> {"t": "reset", "seed": 123}            optional seed
    <- {"t": "state", ...}                    full state snapshot
    -> {"t": "step", "action": 5}
    <- {"t": "state", ..., "reward": 1.0, "unlocked": ["COLLECT_WOOD"]}
    -> {"t": "save"}
    <- {"t": "saved", "blob": "<base64>"}
    -> {"t": "load", "blob": "<base64>"}
    <- {"t": "state", ...}

State snapshots carry: obs_text (the textual renderer's lines), tiles
{w, h, rgb_base64} at 16 px, inv (inventory and vitals), achievements
(unlocked names), reward_total, done, time, floor.  Malformed input yields
{"t": "error", "msg": ...} and the session survives.  Unknown fields in
requests are ignored.
"""

from __future__ import annotations

import argparse
import base64
import json

import numpy as np
from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from . import rng as R
from .constants import Achievement, Action, TierConf, tier_by_name, ACTION_KEYS
from .engine import reset, step
from .obs import render_text, inventory_fields, _scaled_inventory
from .serialize import state_to_bytes, state_from_bytes
from .state import GameState
from .tiles import render_tiles
from .worldgen import make_level_params, generate_world

PROTOCOL_VERSION = 1
TILE_PX = 16


class Session:
    """One live episode, driven strictly in message order."""

    def __init__(self, tier: TierConf, default_seed: int):
        self.tier = tier
        self.default_seed = default_seed
        self.state: GameState | None = None
        self.reward_total = 0.0

    def do_reset(self, seed: int | None) -> dict:
        use = self.default_seed if seed is None else int(seed)
        world = generate_world(make_level_params(use), self.tier)
        self.state = reset(world, self.tier, R.make_stream(use))
        self.reward_total = 0.0
        return self.snapshot()

    def do_step(self, action: int) -> dict:
        if self.state is None:
            raise ProtocolError("no episode; send reset first")
        if self.state.done:
            raise ProtocolError("episode finished; send reset")
        if not isinstance(action, int) or not 0 <= action < self.tier.n_actions:
            raise ProtocolError(f"invalid action id {action!r}")
        out = step(self.state, action)
        self.state = out.state
        self.reward_total += out.reward
        msg = self.snapshot()
        msg["reward"] = out.reward
        msg["unlocked"] = [Achievement(i).name for i in out.newly_unlocked]
        return msg

    def do_save(self) -> dict:
        if self.state is None:
            raise ProtocolError("nothing to save")
        blob = state_to_bytes(self.state)
        return {"t": "saved", "blob": base64.b64encode(blob).decode(),
                "reward_total": self.reward_total}

    def do_load(self, blob_b64: str, reward_total: float = 0.0) -> dict:
        try:
            blob = base64.b64decode(blob_b64)
            state = state_from_bytes(blob)
        except Exception as exc:
            raise ProtocolError(f"bad blob: {exc}") from exc
        if state.tier.name != self.tier.name:
            raise ProtocolError("blob belongs to a different tier")
        self.state = state
        self.reward_total = float(reward_total)
        return self.snapshot()

    def snapshot(self) -> dict:
        gs = self.state
        frame = render_tiles(gs, TILE_PX)
        inv = {}
        scaled = _scaled_inventory(gs.sim)
        for name, scale in inventory_fields(self.tier):
            if scale == "zero_pad":
                continue
            x = float(scaled[name][0])
            if scale == "sqrt_n_over_10":
                inv[name] = int(round((x * 10.0) ** 2))
            elif scale == "x_over_10":
                inv[name] = round(x * 10.0, 1)
            else:
                inv[name] = round(x * {"level_over_4": 4.0, "level_over_2": 2.0,
                                       "n_over_2": 2.0}.get(scale, 1.0), 3)
        return {
            "t": "state",
            "obs_text": render_text(gs),
            "tiles": {"w": frame.shape[1], "h": frame.shape[0],
                      "rgb_base64": base64.b64encode(frame.tobytes()).decode()},
            "inv": inv,
            "achievements": gs.unlocked_names(),
            "reward_total": self.reward_total,
            "done": gs.done,
            "time": gs.time,
            "floor": int(gs.sim.pfloor[0]),
        }


class ProtocolError(Exception):
    pass


def hello_message(tier: TierConf) -> dict:
    return {
        "t": "hello",
        "protocol": PROTOCOL_VERSION,
        "tier": tier.name,
        "n_actions": tier.n_actions,
        "action_names": [Action(i).name for i in range(tier.n_actions)],
        "keys": {Action(a).name: k for a, k in ACTION_KEYS.items()
                 if a < tier.n_actions},
        "tile_px": TILE_PX,
    }


def handle_message(session: Session, raw: str) -> dict:
    try:
        msg = json.loads(raw)
    except json.JSONDecodeError as exc:
        return {"t": "error", "msg": f"not json: {exc}"}
    if not isinstance(msg, dict) or "t" not in msg:
        return {"t": "error", "msg": "messages need a 't' field"}
    try:
        kind = msg["t"]
        if kind == "reset":
            return session.do_reset(msg.get("seed"))
        if kind == "step":
            return session.do_step(msg.get("action"))
        if kind == "save":
            return session.do_save()
        if kind == "load":
            return session.do_load(msg.get("blob", ""),
                                   msg.get("reward_total", 0.0))
        return {"t": "error", "msg": f"unknown message type {kind!r}"}
    except ProtocolError as exc:
        return {"t": "error", "msg": str(exc)}


def make_app(tier: TierConf, seed: int = 0) -> FastAPI:
    app = FastAPI(title="gridrogue session service")

    @app.get("/health")
    def health():
        return {"ok": True, "tier": tier.name, "protocol": PROTOCOL_VERSION}

    @app.websocket("/ws")
    async def ws(socket: WebSocket):
        # per-connection tier override, e.g. /ws?tier=classic
        want = socket.query_params.get("tier", tier.name)
        try:
            session_tier = tier_by_name(want)
        except ValueError:
            session_tier = tier
        await socket.accept()
        session = Session(session_tier, seed)
        await socket.send_text(json.dumps(hello_message(session_tier)))
        try:
            while True:
                raw = await socket.receive_text()
                await socket.send_text(json.dumps(handle_message(session, raw)))
        except WebSocketDisconnect:
            pass

    return app


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gridrogue-serve",
        description="Serve interactive episodes over a JSON WebSocket.")
    parser.add_argument("--bind", default="127.0.0.1:8000",
                        help="host:port to listen on")
    parser.add_argument("--tier", choices=["classic", "extended"],
                        default="extended")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    import uvicorn
    host, _, port = args.bind.partition(":")
    app = make_app(tier_by_name(args.tier), args.seed)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000),
                log_level="warning")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
