"""
CCN simulator MCP Server

FastMCP-based Model Context Protocol server that wraps the CcnSim facade,
so experiments can be configured, run and compared from an MCP client.

Configuration via environment variables:
    CCNSIM_SCENARIO: optional YAML scenario file used as the base scenario
        (default: built-in Abilene defaults)
"""

import os
from functools import lru_cache
from typing import Any

from fastmcp import FastMCP

from ccnsim import CcnSim
from ccnsim.exceptions import InvalidScenarioError
from ccnsim.models.metrics import CSV_HEADER
from ccnsim.services.simlogger import sim_logger

# Create the MCP server
mcp = FastMCP(
    "CCN Simulator MCP",
    instructions="""
    CCN Simulator MCP runs discrete-event Content-Centric Networking experiments.

    Available capabilities:
    - Scenario: inspect the default Abilene experiment configuration
    - Runs: run one scenario with overrides and read its metrics
    - Sweeps: run a grid of cache sizes, cache policies and query modes
    - Topologies: check a topology file before using it

    A base scenario file can be configured via:
    - CCNSIM_SCENARIO environment variable
    """,
)


@lru_cache(maxsize=1)
def get_ccnsim_config() -> dict[str, str | None]:
    """Get simulator configuration from environment variables."""
    return {"scenario": os.getenv("CCNSIM_SCENARIO")}


def get_ccnsim() -> CcnSim:
    """Create a CcnSim facade from the configured base scenario."""
    return CcnSim.from_file(get_ccnsim_config()["scenario"])


def _error(error: Exception) -> dict[str, Any]:
    sim_logger.warning("MCP tool call rejected: %s", error)
    if isinstance(error, InvalidScenarioError):
        return {"error": error.message, "field": error.field}
    return {"error": str(error), "field": None}


# =============================================================================
# SCENARIO
# =============================================================================


def get_base_scenario() -> dict[str, Any]:
    """
    Get the base experiment configuration.
    Returns every scenario field, the derived cache capacity and the scenario id.
    """
    try:
        scenario = get_ccnsim().scenario
    except (ValueError, OSError) as error:
        return _error(error)
    return {
        "scenario": scenario.asdict(),
        "scenario_id": scenario.scenario_id(),
        "cache_capacity": scenario.resolved_cache_capacity(),
        "staleness_ms": scenario.resolved_staleness(),
    }


# =============================================================================
# RUNS
# =============================================================================


def run_scenario(overrides: dict[str, Any] | None = None) -> dict[str, Any]:
    """
    Run one scenario.

    Args:
        overrides: Scenario fields to change, e.g. {"cache_policy": "lfu",
            "query_enabled": false, "duration": 20}
    """
    try:
        report = get_ccnsim().run(**(overrides or {}))
    except (ValueError, OSError) as error:
        return _error(error)
    return {"report": report.asdict(), "csv_row": report.csv_row()}


def sweep_scenarios(
    cache_fractions: list[float],
    policies: list[str],
    query_modes: list[bool],
    seeds: list[int],
    strategies: list[str] | None = None,
    overrides: dict[str, Any] | None = None,
) -> dict[str, Any]:
    """
    Run the Cartesian product of the given values, one row per run.

    Args:
        cache_fractions: Normalized cache sizes, e.g. [0.4, 0.5, 0.6, 0.7]
        policies: Cache policies among "lru", "lfu", "fifo"
        query_modes: Query mechanism on (true) and/or off (false)
        seeds: Seeds, one run per seed and grid point
        strategies: "smart-flooding" and/or "best-route" (default: base strategy)
        overrides: Scenario fields applied to every run
    """
    try:
        sim = get_ccnsim()
        if overrides:
            sim = CcnSim(sim.scenario_with(**overrides))
        reports = sim.sweep(cache_fractions, policies, query_modes, seeds, strategies)
    except (ValueError, OSError) as error:
        return _error(error)
    return {
        "header": list(CSV_HEADER),
        "rows": [report.csv_row() for report in reports],
    }


# =============================================================================
# TOPOLOGIES
# =============================================================================


def validate_topology(path: str) -> dict[str, Any]:
    """
    Check a topology file (or "abilene" for the bundled topology).

    Args:
        path: Path of a `node <id> <label> <prefix>` / `link <a> <b> <delay_ms>` file
    """
    try:
        topology = CcnSim.validate_topology(path)
    except (ValueError, OSError) as error:
        return _error(error)
    return {"valid": True, "topology": topology.asdict()}


for _tool in (get_base_scenario, run_scenario, sweep_scenarios, validate_topology):
    mcp.tool(_tool)


# =============================================================================
# ENTRY POINT
# =============================================================================


def main():
    """Main entry point for the CCN simulator MCP server."""
    mcp.run()


if __name__ == "__main__":
    main()
