import json
from typing import Any

from ccnsim.models.common import NodeId

CSV_HEADER: tuple[str, ...] = (
    "scenario_id",
    "seed",
    "strategy",
    "policy",
    "query_enabled",
    "cache_fraction",
    "flood_events",
    "flood_packets",
    "interest_tx",
    "retransmissions",
    "unsatisfied",
    "avg_response_time_ms",
)


class NodeCounters:
    """Per-router counters; all of them only ever grow during a run"""

    COUNTERS: tuple[str, ...] = (
        "emitted",
        "satisfied",
        "unsatisfied",
        "interest_tx",
        "data_tx",
        "flood_events",
        "flood_packets",
        "retransmissions",
        "cs_hits",
        "cs_misses",
        "producer_hits",
        "aggregated",
        "duplicates",
        "unsolicited",
        "stale_data",
        "gave_up",
        "query_attached",
        "query_answered",
        "query_routes_learned",
    )

    def __init__(self, node: NodeId) -> None:
        self.node: NodeId = node
        self.response_time_total: float = 0.0
        # consumer side
        self.emitted: int = 0
        self.satisfied: int = 0
        self.unsatisfied: int = 0
        # transmissions
        self.interest_tx: int = 0
        self.data_tx: int = 0
        self.flood_events: int = 0
        self.flood_packets: int = 0
        self.retransmissions: int = 0
        # pipeline outcomes
        self.cs_hits: int = 0
        self.cs_misses: int = 0
        self.producer_hits: int = 0
        self.aggregated: int = 0
        self.duplicates: int = 0
        self.unsolicited: int = 0
        self.stale_data: int = 0
        self.gave_up: int = 0
        self.query_attached: int = 0
        self.query_answered: int = 0
        self.query_routes_learned: int = 0

    def record_satisfied(self, response_times: list[float]) -> None:
        self.satisfied += len(response_times)
        self.response_time_total += sum(response_times)

    def asdict(self) -> dict[str, Any]:
        content: dict[str, Any] = {"node": self.node}
        content.update({counter: getattr(self, counter) for counter in self.COUNTERS})
        content["response_time_total"] = self.response_time_total
        return content


class MetricsReport:
    """
    Measured outputs of one run: flooding, interest volume, retransmissions and
    consumer response time, plus per-node breakdowns and run metadata.
    """

    def __init__(
        self,
        scenario_id: str,
        seed: int,
        strategy: str,
        policy: str,
        query_enabled: bool,
        cache_fraction: float,
        cache_capacity: int,
        per_node: list[NodeCounters],
        trace_hash: str | None = None,
    ) -> None:
        self.scenario_id: str = scenario_id
        self.seed: int = seed
        self.strategy: str = strategy
        self.policy: str = policy
        self.query_enabled: bool = query_enabled
        self.cache_fraction: float = cache_fraction
        self.cache_capacity: int = cache_capacity
        self.per_node: list[NodeCounters] = per_node
        self.trace_hash: str | None = trace_hash

    def _total(self, counter: str) -> int:
        return sum(getattr(node, counter) for node in self.per_node)

    @property
    def flood_events(self) -> int:
        return self._total("flood_events")

    @property
    def flood_packets(self) -> int:
        return self._total("flood_packets")

    @property
    def interest_tx(self) -> int:
        return self._total("interest_tx")

    @property
    def retransmissions(self) -> int:
        return self._total("retransmissions")

    @property
    def unsatisfied(self) -> int:
        return self._total("unsatisfied")

    @property
    def satisfied(self) -> int:
        return self._total("satisfied")

    @property
    def emitted(self) -> int:
        return self._total("emitted")

    @property
    def cs_hits(self) -> int:
        return self._total("cs_hits")

    @property
    def avg_response_time(self) -> float:
        """Mean consumer response time (ms) over satisfied interests only"""
        satisfied = self.satisfied
        if satisfied == 0:
            return 0.0
        return sum(node.response_time_total for node in self.per_node) / satisfied

    def csv_row(self) -> list[str]:
        values: dict[str, Any] = {
            "scenario_id": self.scenario_id,
            "seed": self.seed,
            "strategy": self.strategy,
            "policy": self.policy,
            "query_enabled": "on" if self.query_enabled else "off",
            "cache_fraction": f"{self.cache_fraction:.4g}",
            "flood_events": self.flood_events,
            "flood_packets": self.flood_packets,
            "interest_tx": self.interest_tx,
            "retransmissions": self.retransmissions,
            "unsatisfied": self.unsatisfied,
            "avg_response_time_ms": f"{self.avg_response_time:.6f}",
        }
        return [str(values[column]) for column in CSV_HEADER]

    def asdict(self) -> dict[str, Any]:
        return {
            "scenario_id": self.scenario_id,
            "seed": self.seed,
            "strategy": self.strategy,
            "policy": self.policy,
            "query_enabled": self.query_enabled,
            "cache_fraction": self.cache_fraction,
            "cache_capacity": self.cache_capacity,
            "flood_events": self.flood_events,
            "flood_packets": self.flood_packets,
            "interest_tx": self.interest_tx,
            "retransmissions": self.retransmissions,
            "unsatisfied": self.unsatisfied,
            "satisfied": self.satisfied,
            "emitted": self.emitted,
            "cs_hits": self.cs_hits,
            "avg_response_time_ms": self.avg_response_time,
            "trace_hash": self.trace_hash,
            "per_node": [node.asdict() for node in self.per_node],
        }

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MetricsReport) and self.asdict() == other.asdict()

    def __repr__(self) -> str:
        return json.dumps(self.asdict(), indent=4)
