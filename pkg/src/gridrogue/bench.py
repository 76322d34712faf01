"""Throughput and rollout reporting CLI.

Two subcommands:

* ``sweep``: step batches at each worker count and report aggregate
  steps-per-second, best case marked.  Timing starts after a 100-step
  warmup so process startup and initial world generation stay out of the
  measurement.
* ``rollout``: run a policy for a step budget and report per-achievement
  episode success rates plus mean return as a percentage of the maximum
  (226 extended / 22 classic).

Both write CSV or JSON; simulation results are pure functions of
(seed, policy, config), only the timing numbers vary run to run.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from .batch import BatchConfig, batch_reset, batch_step
from .constants import Achievement, TierConf, tier_by_name
from .policies import make_policy

WARMUP_STEPS = 100


def max_return(tier: TierConf) -> float:
    return float(tier.ach_tier.sum())


def run_speed_sweep(tier: TierConf, worker_counts: list[int],
                    steps_per_count: int, policy: str = "random",
                    seed: int = 0, obs: str = "none",
                    worker_threads: int = 1) -> list[dict]:
    """Aggregate SPS per worker count; the fastest row gets best=True."""
    if not worker_counts:
        raise ValueError("worker_counts must be nonempty")
    rows = []
    for n in worker_counts:
        cfg = BatchConfig(n_envs=n, tier=tier, worker_threads=worker_threads)
        bs = batch_reset(cfg, seed)
        pol = make_policy(policy, seed, tier.n_actions)
        encode = obs == "symbolic"
        for _ in range(WARMUP_STEPS):
            bs, _out = batch_step(bs, pol.actions(bs.sim), encode_obs=encode)
        steps = max(1, steps_per_count // n)
        t0 = time.perf_counter()
        for _ in range(steps):
            bs, _out = batch_step(bs, pol.actions(bs.sim), encode_obs=encode)
        dt = time.perf_counter() - t0
        rows.append({
            "workers": n,
            "steps": steps * n,
            "seconds": round(dt, 6),
            "sps": round(steps * n / dt, 1),
            "episodes": bs.stats.episodes,
            "best": False,
        })
    best = max(range(len(rows)), key=lambda i: rows[i]["sps"])
    rows[best]["best"] = True
    return rows


def run_rollout_report(tier: TierConf, n_envs: int, total_steps: int,
                       policy: str = "random", seed: int = 0,
                       obs: str = "none") -> dict:
    """Per-achievement episode success rates and return as % of maximum."""
    if total_steps < n_envs:
        raise ValueError("total_steps must be at least n_envs")
    cfg = BatchConfig(n_envs=n_envs, tier=tier)
    bs = batch_reset(cfg, seed)
    pol = make_policy(policy, seed, tier.n_actions)
    encode = obs == "symbolic"
    n_steps = total_steps // n_envs
    for _ in range(n_steps):
        bs, _out = batch_step(bs, pol.actions(bs.sim), encode_obs=encode)

    stats = bs.stats
    episodes = stats.episodes
    # unfinished episodes still count toward exposure with their flags so far
    live_ach = bs.sim.ach.sum(axis=0)
    live_return = float(bs.ep_return.sum())
    total_eps = episodes + n_envs
    ach_counts = (stats.ach_episodes if stats.ach_episodes is not None
                  else np.zeros(tier.n_achievements, np.int64)) + live_ach
    mean_return = (stats.total_return + live_return) / total_eps
    rates = {
        Achievement(i).name: round(float(ach_counts[i]) / total_eps, 6)
        for i in range(tier.n_achievements)
    }
    return {
        "tier": tier.name,
        "policy": policy,
        "seed": seed,
        "n_envs": n_envs,
        "total_steps": n_steps * n_envs,
        "episodes_completed": episodes,
        "episodes_counted": total_eps,
        "mean_return": round(mean_return, 6),
        "max_return": max_return(tier),
        "return_pct_of_max": round(100.0 * mean_return / max_return(tier), 6),
        "achievement_rates": rates,
    }


def _write_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    else:
        writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)


def _write_report(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        writer = csv.writer(out)
        writer.writerow(["key", "value"])
        for k, v in report.items():
            if k != "achievement_rates":
                writer.writerow([k, v])
        writer.writerow([])
        writer.writerow(["achievement", "episode_success_rate"])
        for name, rate in report["achievement_rates"].items():
            writer.writerow([name, rate])


def _parse_workers(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gridrogue-bench",
        description="Speed sweeps and rollout reports for the batch engine.")
    sub = parser.add_subparsers(dest="mode", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tier", choices=["classic", "extended"],
                        default="classic")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--policy", choices=["random", "scripted"],
                        default="random")
    common.add_argument("--obs", choices=["none", "symbolic", "tiles"],
                        default="none")
    common.add_argument("--out", type=str, default="-",
                        help="output path, or - for stdout")
    common.add_argument("--format", choices=["csv", "json"], default="csv")

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="steps-per-second across worker counts")
    p_sweep.add_argument("--workers", type=_parse_workers, default=[1, 16, 256],
                         help="comma-separated environment worker counts")
    p_sweep.add_argument("--steps", type=int, default=20_000,
                         help="timed env-steps per worker count")
    p_sweep.add_argument("--threads", type=int, default=1)

    p_roll = sub.add_parser("rollout", parents=[common],
                            help="achievement and return statistics")
    p_roll.add_argument("--workers", type=int, default=64,
                        help="environment worker count")
    p_roll.add_argument("--steps", type=int, default=100_000,
                        help="total env-steps")

    args = parser.parse_args(argv)
    tier = tier_by_name(args.tier)
    if args.obs == "tiles" and args.mode == "sweep":
        print("note: tile rendering is per-state; sweeping with --obs none",
              file=sys.stderr)

    if args.mode == "sweep":
        rows = run_speed_sweep(tier, args.workers, args.steps,
                               policy=args.policy, seed=args.seed,
                               obs=args.obs, worker_threads=args.threads)
        payload = io.StringIO()
        _write_rows(rows, args.format, payload)
    else:
        report = run_rollout_report(tier, args.workers, args.steps,
                                    policy=args.policy, seed=args.seed,
                                    obs=args.obs)
        payload = io.StringIO()
        _write_report(report, args.format, payload)

    if args.out == "-":
        sys.stdout.write(payload.getvalue())
    else:
        with open(args.out, "w") as fh:
            fh.write(payload.getvalue())
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
