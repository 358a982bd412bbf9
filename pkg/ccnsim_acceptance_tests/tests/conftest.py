from collections import defaultdict
from collections.abc import Callable

import numpy as np
import pytest

from ccnsim import CcnSim
from ccnsim.models.metrics import MetricsReport

from ..config import load_config

# (strategy, policy, cache fraction, query enabled)
GridKey = tuple[str, str, float, bool]


@pytest.fixture(scope="session")
def config():
    return load_config()


@pytest.fixture(scope="session")
def ccnsim(config: dict) -> CcnSim:
    scenario = config["scenario"]
    return CcnSim.from_file(scenario.get("file"), **(scenario.get("overrides") or {}))


@pytest.fixture(scope="session")
def fractions(config: dict) -> list[float]:
    return sorted(round(fraction, 4) for fraction in config["grid"]["cache_fractions"])


@pytest.fixture(scope="session")
def grid_reports(config: dict, ccnsim: CcnSim) -> list[MetricsReport]:
    """Every grid cell with the query mechanism on and off, shared by all trend tests"""
    grid = config["grid"]
    return ccnsim.sweep(
        grid["cache_fractions"],
        grid["policies"],
        [True, False],
        grid["seeds"],
        strategies=grid["strategies"],
        jobs=grid.get("jobs"),
    )


@pytest.fixture(scope="session")
def grid_means(
    grid_reports: list[MetricsReport],
) -> Callable[[str], dict[GridKey, float]]:
    """
    Factory returning, for a report metric, its mean over seeds per grid point.
    """

    def _means(metric: str) -> dict[GridKey, float]:
        samples: dict[GridKey, list[float]] = defaultdict(list)
        for report in grid_reports:
            key = (
                report.strategy,
                report.policy,
                round(report.cache_fraction, 4),
                report.query_enabled,
            )
            samples[key].append(getattr(report, metric))
        return {key: float(np.mean(values)) for key, values in samples.items()}

    return _means
