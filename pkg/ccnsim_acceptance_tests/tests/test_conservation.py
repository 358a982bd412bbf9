from typing import Any

import numpy as np
import pytest

from ccnsim import CcnSim

pytestmark = pytest.mark.slow


def random_overrides(config: dict) -> list[dict[str, Any]]:
    settings = config["conservation"]
    rng = np.random.default_rng(settings["seed"])
    return [
        {
            "strategy": str(rng.choice(["smart-flooding", "best-route"])),
            "cache_policy": str(rng.choice(["lru", "lfu", "fifo"])),
            "cache_fraction": float(rng.choice([0.1, 0.4, 0.55, 0.7, 1.0])),
            "query_enabled": bool(rng.integers(2)),
            "popularity": str(rng.choice(["zipf", "uniform"])),
            "interest_rate": float(rng.choice([20.0, 50.0, 100.0])),
            "duration": float(settings["duration"]),
            "seed": int(rng.integers(0, 2**32)),
        }
        for _ in range(settings["scenarios"])
    ]


def test_every_interest_is_accounted_for(config, ccnsim: CcnSim):
    for overrides in random_overrides(config):
        report = ccnsim.run(**overrides)

        assert report.emitted > 0
        assert report.satisfied + report.unsatisfied == report.emitted, overrides


def test_repeated_runs_trace_identically(config, ccnsim: CcnSim):
    for overrides in random_overrides(config):
        first, first_trace = ccnsim.run_traced(**overrides)
        second, second_trace = ccnsim.run_traced(**overrides)

        assert first.trace_hash == second.trace_hash
        assert first_trace == second_trace
        assert first == second
