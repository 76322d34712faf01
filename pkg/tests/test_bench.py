import csv
import io
import json

import numpy as np
import pytest

from gridrogue import CLASSIC
from gridrogue.bench import (
    run_speed_sweep, run_rollout_report, max_return, main,
)


def test_single_worker_row():
    rows = run_speed_sweep(CLASSIC, [1], 200)
    assert len(rows) == 1
    assert rows[0]["workers"] == 1
    assert rows[0]["sps"] > 0
    assert rows[0]["best"] is True


def test_sweep_marks_best():
    rows = run_speed_sweep(CLASSIC, [1, 32], 500)
    assert sum(r["best"] for r in rows) == 1
    assert rows[1]["sps"] > rows[0]["sps"]


def test_rollout_deterministic_stats():
    a = run_rollout_report(CLASSIC, 16, 3200, policy="random", seed=5)
    b = run_rollout_report(CLASSIC, 16, 3200, policy="random", seed=5)
    assert a["achievement_rates"] == b["achievement_rates"]
    assert a["mean_return"] == b["mean_return"]


def test_rollout_scripted_reaches_wood():
    rep = run_rollout_report(CLASSIC, 8, 4000, policy="scripted", seed=1)
    assert rep["achievement_rates"]["COLLECT_WOOD"] >= 0.99


def test_max_return_denominators():
    from gridrogue import EXTENDED
    assert max_return(EXTENDED) == 226.0
    assert max_return(CLASSIC) == 22.0
    rep = run_rollout_report(CLASSIC, 4, 400)
    assert rep["max_return"] == 22.0


def test_cli_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    rc = main(["sweep", "--tier", "classic", "--workers", "1,8",
               "--steps", "200", "--out", str(out), "--format", "csv"])
    assert rc == 0
    rows = list(csv.DictReader(open(out)))
    assert len(rows) == 2
    assert {"workers", "sps", "best"} <= set(rows[0])


def test_cli_rollout_json(tmp_path):
    out = tmp_path / "roll.json"
    rc = main(["rollout", "--tier", "classic", "--workers", "4",
               "--steps", "400", "--seed", "3", "--policy", "random",
               "--out", str(out), "--format", "json"])
    assert rc == 0
    doc = json.loads(open(out).read())
    assert doc["tier"] == "classic"
    assert doc["return_pct_of_max"] == pytest.approx(
        100 * doc["mean_return"] / 22.0)
    assert len(doc["achievement_rates"]) == 22


def test_extended_random_never_reaches_graveyard():
    from gridrogue import EXTENDED
    rep = run_rollout_report(EXTENDED, 32, 6400, policy="random", seed=2)
    assert rep["achievement_rates"]["ENTER_GRAVEYARD"] == 0.0
    assert rep["max_return"] == 226.0
