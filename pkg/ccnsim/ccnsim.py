from collections.abc import Iterator, Sequence
from pathlib import Path
from typing import Any

from ccnsim.config import load_scenario
from ccnsim.models.metrics import MetricsReport
from ccnsim.models.scenario import Scenario
from ccnsim.models.topology import Topology
from ccnsim.services import engine


class CcnSim:
    """
    Facade running CCN experiments from a base scenario

    Attributes
    ----------
    scenario : Scenario
        base scenario; every run applies its overrides on top of it
    """

    def __init__(self, scenario: Scenario | None = None) -> None:
        self.scenario: Scenario = scenario or Scenario()
        self.scenario.validate()

    @classmethod
    def from_file(cls, path: str | Path | None, **overrides: Any) -> "CcnSim":
        return cls(load_scenario(path, overrides))

    def scenario_with(self, **overrides: Any) -> Scenario:
        """Base scenario with the given fields replaced; None values are ignored"""
        changes = {key: value for key, value in overrides.items() if value is not None}
        scenario = self.scenario.replace(**changes) if changes else self.scenario
        scenario.validate()
        return scenario

    def run(self, trace: bool = False, **overrides: Any) -> MetricsReport:
        return engine.run(self.scenario_with(**overrides), trace=trace)

    def run_traced(self, **overrides: Any) -> tuple[MetricsReport, list[str]]:
        """
        Run with event tracing

        Returns
        -------
        tuple
            A tuple containing:
                - report (MetricsReport): the run's metrics, with ``trace_hash`` set
                - trace (list[str]): ``time_ms node event detail`` lines
        """
        simulation = engine.Simulation(self.scenario_with(**overrides), trace=True)
        report = simulation.run()
        return report, simulation.trace_lines

    def iter_sweep(
        self,
        cache_fractions: Sequence[float],
        policies: Sequence[str],
        query_modes: Sequence[bool],
        seeds: Sequence[int],
        strategies: Sequence[str] | None = None,
        jobs: int | None = None,
    ) -> Iterator[MetricsReport]:
        return engine.iter_sweep(
            self.scenario,
            cache_fractions,
            policies,
            query_modes,
            seeds,
            strategies,
            jobs,
        )

    def sweep(
        self,
        cache_fractions: Sequence[float],
        policies: Sequence[str],
        query_modes: Sequence[bool],
        seeds: Sequence[int],
        strategies: Sequence[str] | None = None,
        jobs: int | None = None,
    ) -> list[MetricsReport]:
        return list(
            self.iter_sweep(
                cache_fractions, policies, query_modes, seeds, strategies, jobs
            )
        )

    @staticmethod
    def validate_topology(path: str | Path) -> Topology:
        return Topology.load(path)
