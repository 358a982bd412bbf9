import hashlib
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from itertools import product

import numpy as np
import simpy

from ccnsim.exceptions import InvalidScenarioError
from ccnsim.models.common import APP_FACE, ContentName, FaceId, NodeId, PopularityScope
from ccnsim.models.metrics import MetricsReport
from ccnsim.models.packets import InterestPacket
from ccnsim.models.scenario import Scenario
from ccnsim.services.forwarding import Effects, Forwarder, NodeState, Packet
from ccnsim.services.routing import install_preloads, shortest_path_seed
from ccnsim.services.simlogger import sim_logger
from ccnsim.services.workload import (
    NonceSource,
    RequestGenerator,
    build_catalog,
    emission_count,
)
from ccnsim.tables.contentstore import ContentStore
from ccnsim.tables.fib import Fib, FibConfig
from ccnsim.tables.pit import Pit


class Simulation:
    """
    One run of a scenario. Simulated time is in ms; link deliveries and PIT
    timers are simpy timeouts, each consumer is a simpy process.

    Attributes
    ----------
    nodes : dict[NodeId, NodeState]
        router state, keyed by node id
    trace_lines : list[str]
        ``time_ms node event detail`` records, filled only when tracing
    """

    def __init__(self, scenario: Scenario, trace: bool = False) -> None:
        scenario.validate()
        self.scenario: Scenario = scenario
        self.topology = scenario.load_topology()
        self.env = simpy.Environment()
        self.tracing: bool = trace
        self.trace_lines: list[str] = []

        node_ids = self.topology.node_ids()
        popularity_seed, phase_seed, nonce_seed, request_seed = np.random.SeedSequence(
            scenario.seed
        ).spawn(4)
        self.catalog: list[ContentName] = build_catalog(
            self.topology, scenario.names_per_producer
        )
        # one ranking seed per router, or the same seed for all of them
        if scenario.ranking_scope is PopularityScope.NETWORK:
            ranking_seeds = [popularity_seed] * len(node_ids)
        else:
            ranking_seeds = popularity_seed.spawn(len(node_ids))
        self.requests: dict[NodeId, RequestGenerator] = {
            node: RequestGenerator(
                self.catalog,
                scenario.popularity_law,
                scenario.zipf_exponent,
                np.random.default_rng(seed),
            )
            for node, seed in zip(node_ids, ranking_seeds)
        }
        self.interval: float = 1000.0 / scenario.interest_rate
        phases = np.random.default_rng(phase_seed).uniform(
            0.0, self.interval, size=len(node_ids)
        )
        self.phases: dict[NodeId, float] = {
            node: float(phase) for node, phase in zip(node_ids, phases)
        }
        self.request_rngs: dict[NodeId, np.random.Generator] = {
            node: np.random.default_rng(seed)
            for node, seed in zip(node_ids, request_seed.spawn(len(node_ids)))
        }
        self.nonces = NonceSource(np.random.default_rng(nonce_seed))
        self.forwarder = Forwarder(
            self.nonces, scenario.pit_init_timeout, scenario.pit_timer_floor
        )

        self.cache_capacity: int = scenario.resolved_cache_capacity()
        fib_config = FibConfig(
            scenario.max_green, scenario.resolved_staleness(), scenario.max_faces
        )
        preloads = shortest_path_seed(self.topology)
        per_producer = scenario.names_per_producer
        self.nodes: dict[NodeId, NodeState] = {}
        for index, node in enumerate(node_ids):
            fib = Fib(fib_config)
            install_preloads(fib, preloads[node])
            self.nodes[node] = NodeState(
                node,
                ContentStore(self.cache_capacity, scenario.policy),
                Pit(),
                fib,
                scenario.forwarding_strategy,
                scenario.query_enabled,
                self.topology.prefix(node),
                owned_names=self.catalog[index * per_producer : (index + 1) * per_producer],
                link_faces=self.topology.link_faces(node),
                query_gate_fraction=scenario.query_gate_fraction,
                payload_size=scenario.payload_size,
            )

    def run(self) -> MetricsReport:
        scenario = self.scenario
        duration_ms = scenario.duration * 1000.0
        end_ms = duration_ms + scenario.drain * 1000.0
        sim_logger.info(
            "Running scenario %s (seed %s, %s, %s, query %s)",
            scenario.scenario_id(),
            scenario.seed,
            scenario.strategy,
            scenario.cache_policy,
            "on" if scenario.query_enabled else "off",
        )
        for node in self.topology.node_ids():
            self.env.process(self._consumer(node, duration_ms))
        if end_ms > 0:
            self.env.run(until=end_ms)
        self._settle_pending()
        report = self._report()
        sim_logger.info(
            "Scenario %s seed %s finished: %s emitted, %s unsatisfied",
            report.scenario_id,
            report.seed,
            report.emitted,
            report.unsatisfied,
            extra={"report": report.asdict()},
        )
        return report

    def _consumer(self, node: NodeId, duration_ms: float):
        offset = self.phases[node]
        count = emission_count(duration_ms, offset, self.interval)
        names = self.requests[node].draw(self.request_rngs[node], count)
        for index, name in enumerate(names):
            target = offset + index * self.interval
            yield self.env.timeout(max(0.0, target - self.env.now))
            self._emit(node, name)

    def request(self, node: NodeId, name: ContentName, at: float) -> None:
        """Schedule one extra consumer interest for ``name`` at ``at`` ms"""
        if node not in self.nodes:
            raise InvalidScenarioError("topology", f"unknown node {node}")
        self.env.process(self._request_at(node, name, at))

    def _request_at(self, node: NodeId, name: ContentName, at: float):
        yield self.env.timeout(max(0.0, at - self.env.now))
        self._emit(node, name)

    def _emit(self, node: NodeId, name: ContentName) -> None:
        now = self.env.now
        interest = InterestPacket(
            name=name, nonce=self.nonces(), emit_time=now, origin=node
        )
        self._record_packet(node, "emit", interest, APP_FACE)
        effects = self.forwarder.on_interest(self.nodes[node], interest, APP_FACE, now)
        self._apply(node, effects)

    def _arrive(self, node: NodeId, face: FaceId, packet: Packet, _event) -> None:
        now = self.env.now
        self._record_packet(node, "recv", packet, face)
        state = self.nodes[node]
        if isinstance(packet, InterestPacket):
            effects = self.forwarder.on_interest(state, packet, face, now)
        else:
            effects = self.forwarder.on_data(state, packet, face, now)
        self._apply(node, effects)

    def _expire(self, node: NodeId, _event) -> None:
        effects = self.forwarder.on_timers(self.nodes[node], self.env.now)
        if effects.sends:
            self._record(node, "timeout", f"resent={len(effects.sends)}")
        self._apply(node, effects)

    def _apply(self, node: NodeId, effects: Effects) -> None:
        for face, packet in effects.sends:
            neighbor, remote_face, delay = self.topology.link_end(node, face)
            self._record_packet(node, "send", packet, face)
            arrival = self.env.timeout(delay)
            arrival.callbacks.append(partial(self._arrive, neighbor, remote_face, packet))
        for delay in effects.timers:
            timer = self.env.timeout(delay)
            timer.callbacks.append(partial(self._expire, node))
        for data in effects.delivered:
            self._record(node, "deliver", str(data.name))

    @staticmethod
    def _describe(packet: Packet, face: FaceId) -> str:
        # query name and query result are not part of the trace
        if isinstance(packet, InterestPacket):
            return f"interest {packet.name} nonce={packet.nonce} face={face}"
        return f"data {packet.name} face={face}"

    def _record(self, node: NodeId, event: str, detail: str) -> None:
        if self.tracing:
            self.trace_lines.append(f"{self.env.now:.3f} {node} {event} {detail}")

    def _record_packet(
        self, node: NodeId, event: str, packet: Packet, face: FaceId
    ) -> None:
        if self.tracing:
            self._record(node, event, self._describe(packet, face))

    def _settle_pending(self) -> None:
        pending = 0
        for state in self.nodes.values():
            for entry in state.pit:
                state.counters.unsatisfied += len(entry.app_emit_times)
                pending += len(entry.app_emit_times)
        if pending:
            sim_logger.warning(
                "%s consumer interest(s) still pending after the drain phase, "
                "counted unsatisfied",
                pending,
            )

    def trace_hash(self) -> str:
        return hashlib.sha256("\n".join(self.trace_lines).encode()).hexdigest()

    def _report(self) -> MetricsReport:
        scenario = self.scenario
        return MetricsReport(
            scenario_id=scenario.scenario_id(),
            seed=scenario.seed,
            strategy=scenario.strategy,
            policy=scenario.cache_policy,
            query_enabled=scenario.query_enabled,
            cache_fraction=scenario.resolved_cache_fraction(),
            cache_capacity=self.cache_capacity,
            per_node=[self.nodes[node].counters for node in self.topology.node_ids()],
            trace_hash=self.trace_hash() if self.tracing else None,
        )


def run(scenario: Scenario, trace: bool = False) -> MetricsReport:
    return Simulation(scenario, trace).run()


def sweep_grid(
    base: Scenario,
    cache_fractions: Sequence[float],
    policies: Sequence[str],
    query_modes: Sequence[bool],
    seeds: Sequence[int],
    strategies: Sequence[str] | None = None,
) -> list[Scenario]:
    """Scenarios of the grid, nested as strategy, fraction, policy, query mode, seed"""
    axes = {
        "cache_fractions": cache_fractions,
        "policies": policies,
        "query_modes": query_modes,
        "seeds": seeds,
    }
    for axis, values in axes.items():
        if not values:
            raise InvalidScenarioError(axis, "at least one value is required")
    scenarios = [
        base.replace(
            strategy=strategy,
            cache_fraction=fraction,
            cache_capacity=None,
            cache_policy=policy,
            query_enabled=query,
            seed=seed,
        )
        for strategy, fraction, policy, query, seed in product(
            strategies or [base.strategy], cache_fractions, policies, query_modes, seeds
        )
    ]
    for scenario in scenarios:
        scenario.validate()
    return scenarios


def iter_sweep(
    base: Scenario,
    cache_fractions: Sequence[float],
    policies: Sequence[str],
    query_modes: Sequence[bool],
    seeds: Sequence[int],
    strategies: Sequence[str] | None = None,
    jobs: int | None = None,
) -> Iterator[MetricsReport]:
    """
    Reports in grid order; with ``jobs`` > 1 cells run in worker processes.
    The grid is validated before the first cell runs.
    """
    scenarios = sweep_grid(base, cache_fractions, policies, query_modes, seeds, strategies)
    return _run_cells(scenarios, jobs)


def _run_cells(scenarios: list[Scenario], jobs: int | None) -> Iterator[MetricsReport]:
    total = len(scenarios)
    if jobs is not None and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for index, report in enumerate(pool.map(run, scenarios), start=1):
                sim_logger.info("Sweep cell %s/%s done", index, total)
                yield report
        return
    for index, scenario in enumerate(scenarios, start=1):
        report = run(scenario)
        sim_logger.info("Sweep cell %s/%s done", index, total)
        yield report


def sweep(
    base: Scenario,
    cache_fractions: Sequence[float],
    policies: Sequence[str],
    query_modes: Sequence[bool],
    seeds: Sequence[int],
    strategies: Sequence[str] | None = None,
    jobs: int | None = None,
) -> list[MetricsReport]:
    return list(
        iter_sweep(
            base, cache_fractions, policies, query_modes, seeds, strategies, jobs
        )
    )
