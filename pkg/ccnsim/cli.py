import argparse
import csv
import sys
from collections.abc import Iterable
from contextlib import ExitStack
from pathlib import Path
from typing import Any

from ccnsim.ccnsim import CcnSim
from ccnsim.config import setup_logging
from ccnsim.exceptions import InvalidScenarioError
from ccnsim.models.common import (
    CachePolicy,
    ForwardingStrategy,
    Popularity,
    PopularityScope,
)
from ccnsim.models.metrics import CSV_HEADER, MetricsReport
from ccnsim.services.simlogger import sim_logger

DEFAULT_FRACTIONS = "0.4,0.5,0.6,0.7"
DEFAULT_POLICIES = "lru,lfu,fifo"
DEFAULT_QUERY_MODES = "on,off"

# command-line destination -> scenario field
FLAG_FIELDS: dict[str, str] = {
    "topology": "topology",
    "strategy": "strategy",
    "policy": "cache_policy",
    "cache_fraction": "cache_fraction",
    "cache_capacity": "cache_capacity",
    "query": "query_enabled",
    "seed": "seed",
    "duration": "duration",
    "rate": "interest_rate",
    "zipf": "zipf_exponent",
    "popularity_scope": "popularity_scope",
    "names_per_producer": "names_per_producer",
    "catalog_size": "catalog_size",
    "query_gate": "query_gate_fraction",
    "max_green": "max_green",
    "max_faces": "max_faces",
    "staleness": "fib_staleness_T",
    "content_rate": "content_rate_F",
    "pit_timeout": "pit_init_timeout",
    "pit_timer_floor": "pit_timer_floor",
    "drain": "drain",
    "payload_size": "payload_size",
}


def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError(f"expected 'on' or 'off', got {text!r}")
    return text == "on"


def _staleness(text: str) -> float | str:
    return text if text == "auto" else float(text)


def _items(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _int_list(text: str) -> list[int]:
    return [int(item) for item in _items(text)]


def _float_list(text: str) -> list[float]:
    return [float(item) for item in _items(text)]


def _on_off_list(text: str) -> list[bool]:
    return [_on_off(item) for item in _items(text)]


def _scenario_arguments() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--scenario", type=Path, help="Flat YAML scenario file")
    parent.add_argument("--topology", help="Topology file, or 'abilene'")
    parent.add_argument(
        "--strategy", choices=[strategy.value for strategy in ForwardingStrategy]
    )
    parent.add_argument("--policy", choices=[policy.value for policy in CachePolicy])
    parent.add_argument("--cache-fraction", type=float, help="Normalized cache size")
    parent.add_argument("--cache-capacity", type=int, help="Cache size in chunks")
    parent.add_argument("--query", type=_on_off, help="on|off")
    parent.add_argument("--seed", type=int)
    parent.add_argument(
        "--seeds", type=_int_list, help="Comma-separated seeds, one run per seed"
    )
    parent.add_argument("--duration", type=float, help="Seconds of traffic")
    parent.add_argument("--rate", type=float, help="Interests per second per router")
    popularity = parent.add_mutually_exclusive_group()
    popularity.add_argument("--zipf", type=float, help="Zipf popularity exponent")
    popularity.add_argument(
        "--uniform", action="store_true", help="Uniform popularity"
    )
    parent.add_argument(
        "--popularity-scope",
        choices=[scope.value for scope in PopularityScope],
        help="Popularity ranking per router or shared by the network",
    )
    parent.add_argument("--names-per-producer", type=int)
    parent.add_argument("--catalog-size", type=int)
    parent.add_argument(
        "--query-gate", type=float, help="Survival rank fraction answering a query"
    )
    parent.add_argument("--max-green", type=int)
    parent.add_argument("--max-faces", type=int)
    parent.add_argument("--staleness", type=_staleness, help="FIB staleness (ms) or 'auto'")
    parent.add_argument("--content-rate", type=float, help="F of the staleness threshold")
    parent.add_argument("--pit-timeout", type=float, help="Initial PIT timer (ms)")
    parent.add_argument("--pit-timer-floor", type=float)
    parent.add_argument("--drain", type=float, help="Seconds simulated after traffic")
    parent.add_argument("--payload-size", type=int)
    parent.add_argument("--output", type=Path, help="CSV file rows are appended to")
    parent.add_argument("--log-level", default="WARNING")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccnsim", description="Content-Centric Networking simulator"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    parent = _scenario_arguments()

    run_parser = subparsers.add_parser(
        "run", parents=[parent], help="Run one scenario and emit a CSV row"
    )
    run_parser.add_argument("--trace", type=Path, help="Write the event trace here")
    run_parser.set_defaults(handler=cmd_run)

    sweep_parser = subparsers.add_parser(
        "sweep", parents=[parent], help="Run a parameter grid and emit CSV rows"
    )
    sweep_parser.add_argument(
        "--cache-fractions", type=_float_list, default=_float_list(DEFAULT_FRACTIONS)
    )
    sweep_parser.add_argument(
        "--policies", type=_items, default=_items(DEFAULT_POLICIES)
    )
    sweep_parser.add_argument(
        "--query-modes", type=_on_off_list, default=_on_off_list(DEFAULT_QUERY_MODES)
    )
    sweep_parser.add_argument(
        "--strategies", type=_items, help="Comma-separated strategies"
    )
    sweep_parser.add_argument("--jobs", type=int, help="Worker processes")
    sweep_parser.set_defaults(handler=cmd_sweep)

    topology_parser = subparsers.add_parser(
        "validate-topology", help="Check a topology file"
    )
    topology_parser.add_argument("path")
    topology_parser.add_argument("--log-level", default="WARNING")
    topology_parser.set_defaults(handler=cmd_validate_topology)
    return parser


def scenario_overrides(args: argparse.Namespace) -> dict[str, Any]:
    overrides = {
        field: getattr(args, dest)
        for dest, field in FLAG_FIELDS.items()
        if getattr(args, dest, None) is not None
    }
    if args.uniform:
        overrides["popularity"] = Popularity.UNIFORM.value
    elif args.zipf is not None:
        overrides["popularity"] = Popularity.ZIPF.value
    return overrides


def write_rows(reports: Iterable[MetricsReport], output: Path | None) -> int:
    """
    Print rows as they are produced and append them to ``output``; the header
    goes to ``output`` only when the file is new or empty.
    """
    written = 0
    with ExitStack() as stack:
        console = csv.writer(sys.stdout)
        console.writerow(CSV_HEADER)
        target = None
        if output is not None:
            new_file = not output.exists() or output.stat().st_size == 0
            target = csv.writer(stack.enter_context(open(output, "a", newline="")))
            if new_file:
                target.writerow(CSV_HEADER)
        for report in reports:
            row = report.csv_row()
            console.writerow(row)
            sys.stdout.flush()
            if target is not None:
                target.writerow(row)
            written += 1
    return written


def cmd_run(args: argparse.Namespace) -> int:
    sim = CcnSim.from_file(args.scenario, **scenario_overrides(args))
    seeds = args.seeds if args.seeds is not None else [sim.scenario.seed]
    if not seeds:
        raise InvalidScenarioError("seeds", "at least one seed is required")
    if args.trace is None:
        write_rows((sim.run(seed=seed) for seed in seeds), args.output)
        return 0
    with open(args.trace, "w") as trace_file:

        def traced():
            for seed in seeds:
                report, lines = sim.run_traced(seed=seed)
                trace_file.writelines(f"{line}\n" for line in lines)
                yield report

        write_rows(traced(), args.output)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    sim = CcnSim.from_file(args.scenario, **scenario_overrides(args))
    seeds = args.seeds if args.seeds is not None else [sim.scenario.seed]
    reports = sim.iter_sweep(
        sorted(args.cache_fractions),
        sorted(args.policies),
        sorted(args.query_modes),
        sorted(seeds),
        strategies=args.strategies,
        jobs=args.jobs,
    )
    written = write_rows(reports, args.output)
    sim_logger.info("Sweep wrote %s row(s)", written)
    return 0


def cmd_validate_topology(args: argparse.Namespace) -> int:
    topology = CcnSim.validate_topology(args.path)
    print(
        f"{args.path}: {topology.graph.number_of_nodes()} nodes, "
        f"{topology.graph.number_of_edges()} links, connected"
    )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    try:
        return args.handler(args)
    except ValueError as error:
        # InvalidScenarioError and the other domain errors
        print(f"error: {error}", file=sys.stderr)
        return 1
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
