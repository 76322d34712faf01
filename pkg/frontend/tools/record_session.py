"""Record a 500-action session through the service layer into a JSON fixture.

The fixture drives the TypeScript client tests: each entry carries the key a
player would press, the action id it must map to, and the reward the service
reported, so the client harness can be replayed against the exact trace.
"""

import json
import pathlib
import sys

import numpy as np

from gridrogue.constants import ACTION_KEYS, Action
from gridrogue.service import Session
from gridrogue import EXTENDED

STEPS = 500


def main() -> None:
    # a 500-action sitting; when an episode ends the player starts the next
    # world, exactly as the client's Enter key would
    seed = 424242
    session = Session(EXTENDED, default_seed=seed)
    session.do_reset(seed)
    rng = np.random.default_rng(seed)
    actions = list(range(43))                      # cover the whole table
    actions += [int(a) for a in rng.integers(0, 43, size=STEPS - len(actions))]

    steps = []
    episode_seed = seed
    for action in actions:
        msg = session.do_step(action)
        steps.append({
            "key": ACTION_KEYS[Action(action)],
            "action": action,
            "reward": msg["reward"],
            "reward_total": msg["reward_total"],
            "unlocked": msg["unlocked"],
            "done": msg["done"],
        })
        if msg["done"]:
            episode_seed += 1
            session.do_reset(episode_seed)
            steps.append({"key": "Enter", "action": None, "reward": None,
                          "reward_total": 0.0, "unlocked": [], "done": False,
                          "reset_seed": episode_seed})

    fixture = {
        "tier": "extended",
        "seed": seed,
        "n_actions": 43,
        "steps": steps,
        "final_achievements": session.state.unlocked_names(),
    }
    out = pathlib.Path(__file__).resolve().parent.parent / "test" / "fixtures" \
        / "session_500.json"
    out.write_text(json.dumps(fixture))
    n_actions = sum(1 for s in steps if s["action"] is not None)
    print(f"wrote {out} ({n_actions} actions, "
          f"{1 + sum(1 for s in steps if s['action'] is None)} episodes)")


if __name__ == "__main__":
    sys.exit(main())
