import hashlib
import json
from typing import Any

from ccnsim.exceptions import InvalidScenarioError
from ccnsim.models.common import (
    CachePolicy,
    ForwardingStrategy,
    Popularity,
    PopularityScope,
)
from ccnsim.models.topology import ABILENE, Topology

AUTO = "auto"


class Scenario:
    """
    Experiment configuration. Defaults describe the reference Abilene setup:
    100 interests/s per router, 1200 contents, 180 s of traffic, 2 green faces
    and query names answered when in the top 50% of the cache ranking.

    Parameters
    ----------
    topology: str
        Path to a topology file, or "abilene" for the bundled topology
    strategy: str
        "smart-flooding" or "best-route"
        This property will be resolved as a :py:class:`ccnsim.models.common.ForwardingStrategy` enum.
    cache_policy: str
        "lru", "lfu" or "fifo"
        This property will be resolved as a :py:class:`ccnsim.models.common.CachePolicy` enum.
    cache_fraction: float
        Normalized cache size in (0, 1]: content store capacity over catalog size
    cache_capacity: int | None, optional
        Explicit capacity in chunks, overriding ``cache_fraction``
    query_enabled: bool
        Enables the query name / query result mechanism
    interest_rate: float
        Interests per second emitted by each router's consumer
    names_per_producer: int
        Contents published under each router's prefix
    catalog_size: int | None, optional
        Total names; must equal ``names_per_producer`` times the router count
    popularity: str
        "zipf" or "uniform"
    zipf_exponent: float
        Exponent of the Zipf popularity law
    popularity_scope: str
        "per-node" gives each router its own seeded popularity ranking of the
        catalog, "network" makes all routers share one ranking
    query_gate_fraction: float
        A query name is answered when its survival rank is below this fraction
    max_green: int
        Maximum Green faces per FIB entry
    max_faces: int
        Maximum faces (Green and Yellow) per FIB entry
    fib_staleness_T: float | str
        Staleness threshold in ms, or "auto" to derive it as C / F
    content_rate_F: float | None, optional
        F in the threshold formula; defaults to ``interest_rate``
    pit_init_timeout: float
        PIT timer (ms) when no single Green face is selected
    pit_timer_floor: float
        Lower bound (ms) for timers derived from a Green face metric
    duration: float
        Seconds of consumer traffic
    drain: float
        Seconds simulated after traffic stops
    payload_size: int
        Data payload size in bytes
    seed: int
        Seed of every random stream of the run
    """

    FIELDS: tuple[str, ...] = (
        "topology",
        "strategy",
        "cache_policy",
        "cache_fraction",
        "cache_capacity",
        "query_enabled",
        "interest_rate",
        "names_per_producer",
        "catalog_size",
        "popularity",
        "zipf_exponent",
        "popularity_scope",
        "query_gate_fraction",
        "max_green",
        "max_faces",
        "fib_staleness_T",
        "content_rate_F",
        "pit_init_timeout",
        "pit_timer_floor",
        "duration",
        "drain",
        "payload_size",
        "seed",
    )

    # Expected python types; ints are accepted wherever a float is expected
    TYPES: dict[str, type | tuple[type, ...]] = {
        "cache_fraction": (int, float),
        "cache_capacity": int,
        "query_enabled": bool,
        "interest_rate": (int, float),
        "names_per_producer": int,
        "catalog_size": int,
        "zipf_exponent": (int, float),
        "query_gate_fraction": (int, float),
        "max_green": int,
        "max_faces": int,
        "content_rate_F": (int, float),
        "pit_init_timeout": (int, float),
        "pit_timer_floor": (int, float),
        "duration": (int, float),
        "drain": (int, float),
        "payload_size": int,
        "seed": int,
    }
    OPTIONAL: frozenset[str] = frozenset(
        {"cache_capacity", "catalog_size", "content_rate_F"}
    )

    def __init__(
        self,
        topology: str = ABILENE,
        strategy: str = ForwardingStrategy.SMART_FLOODING.value,
        cache_policy: str = CachePolicy.LRU.value,
        cache_fraction: float = 0.4,
        cache_capacity: int | None = None,
        query_enabled: bool = True,
        interest_rate: float = 100.0,
        names_per_producer: int = 100,
        catalog_size: int | None = None,
        popularity: str = Popularity.ZIPF.value,
        zipf_exponent: float = 1.0,
        popularity_scope: str = PopularityScope.PER_NODE.value,
        query_gate_fraction: float = 0.5,
        max_green: int = 2,
        max_faces: int = 8,
        fib_staleness_T: float | str = AUTO,
        content_rate_F: float | None = None,
        pit_init_timeout: float = 2000.0,
        pit_timer_floor: float = 50.0,
        duration: float = 180.0,
        drain: float = 5.0,
        payload_size: int = 1024,
        seed: int = 1,
    ) -> None:
        self.topology: str = str(topology)
        self.strategy: str = str(strategy)
        self.cache_policy: str = str(cache_policy)
        self.cache_fraction: float = cache_fraction
        self.cache_capacity: int | None = cache_capacity
        self.query_enabled: bool = query_enabled
        self.interest_rate: float = interest_rate
        self.names_per_producer: int = names_per_producer
        self.catalog_size: int | None = catalog_size
        self.popularity: str = str(popularity)
        self.zipf_exponent: float = zipf_exponent
        self.popularity_scope: str = str(popularity_scope)
        self.query_gate_fraction: float = query_gate_fraction
        self.max_green: int = max_green
        self.max_faces: int = max_faces
        self.fib_staleness_T: float | str = fib_staleness_T
        self.content_rate_F: float | None = content_rate_F
        self.pit_init_timeout: float = pit_init_timeout
        self.pit_timer_floor: float = pit_timer_floor
        self.duration: float = duration
        self.drain: float = drain
        self.payload_size: int = payload_size
        self.seed: int = seed
        self._topology: Topology | None = None

    @property
    def forwarding_strategy(self) -> ForwardingStrategy:
        return ForwardingStrategy(self.strategy)

    @property
    def policy(self) -> CachePolicy:
        return CachePolicy(self.cache_policy)

    @property
    def popularity_law(self) -> Popularity:
        return Popularity(self.popularity)

    @property
    def ranking_scope(self) -> PopularityScope:
        return PopularityScope(self.popularity_scope)

    def load_topology(self) -> Topology:
        if self._topology is None:
            self._topology = Topology.load(self.topology)
        return self._topology

    def resolved_catalog_size(self) -> int:
        producers = self.load_topology().graph.number_of_nodes()
        return self.names_per_producer * producers

    def resolved_cache_capacity(self) -> int:
        if self.cache_capacity is not None:
            return int(self.cache_capacity)
        return round(self.cache_fraction * self.resolved_catalog_size())

    def resolved_cache_fraction(self) -> float:
        if self.cache_capacity is not None:
            return self.cache_capacity / self.resolved_catalog_size()
        return self.cache_fraction

    def resolved_staleness(self) -> float:
        """Staleness threshold in ms, derived as C / F when set to "auto" """
        # Imported here: the FIB module depends on models, not the reverse
        from ccnsim.tables.fib import fib_threshold

        if self.fib_staleness_T == AUTO:
            rate = (
                self.content_rate_F
                if self.content_rate_F is not None
                else self.interest_rate
            )
            return fib_threshold(self.resolved_cache_capacity(), rate)
        return float(self.fib_staleness_T)

    def validate(self) -> None:
        """Raise :py:class:`ccnsim.exceptions.InvalidScenarioError` naming the first violated field"""
        for field, expected in self.TYPES.items():
            value = getattr(self, field)
            if value is None and field in self.OPTIONAL:
                continue
            if isinstance(value, bool) != (expected is bool) or not isinstance(
                value, expected
            ):
                names = expected if isinstance(expected, tuple) else (expected,)
                raise InvalidScenarioError(
                    field,
                    f"expected {' or '.join(t.__name__ for t in names)}, got {value!r}",
                )
        try:
            topology = self.load_topology()
        except OSError as error:
            raise InvalidScenarioError("topology", str(error)) from error
        self._check_enum("strategy", self.strategy, ForwardingStrategy)
        self._check_enum("cache_policy", self.cache_policy, CachePolicy)
        self._check_enum("popularity", self.popularity, Popularity)
        self._check_enum("popularity_scope", self.popularity_scope, PopularityScope)
        if not 0 < self.cache_fraction <= 1:
            raise InvalidScenarioError(
                "cache_fraction", f"must be in (0, 1], got {self.cache_fraction}"
            )
        if self.names_per_producer < 1:
            raise InvalidScenarioError("names_per_producer", "must be at least 1")
        expected_catalog = self.names_per_producer * topology.graph.number_of_nodes()
        if self.catalog_size is not None and self.catalog_size != expected_catalog:
            raise InvalidScenarioError(
                "catalog_size",
                f"must equal names_per_producer x producers = {expected_catalog}, "
                f"got {self.catalog_size}",
            )
        capacity = self.resolved_cache_capacity()
        if capacity < 1:
            raise InvalidScenarioError("cache_capacity", "must be at least 1 chunk")
        if capacity > expected_catalog:
            raise InvalidScenarioError(
                "cache_capacity",
                f"{capacity} exceeds the catalog size {expected_catalog}",
            )
        if self.interest_rate <= 0:
            raise InvalidScenarioError("interest_rate", "must be positive")
        if self.zipf_exponent < 0:
            raise InvalidScenarioError("zipf_exponent", "must be non-negative")
        if not 0 < self.query_gate_fraction <= 1:
            raise InvalidScenarioError(
                "query_gate_fraction", "must be in (0, 1]"
            )
        if self.max_green < 1:
            raise InvalidScenarioError("max_green", "must be at least 1")
        if self.max_faces < self.max_green:
            raise InvalidScenarioError("max_faces", "must be at least max_green")
        if self.fib_staleness_T != AUTO:
            try:
                staleness = float(self.fib_staleness_T)
            except (TypeError, ValueError) as error:
                raise InvalidScenarioError(
                    "fib_staleness_T", "must be a number of ms or 'auto'"
                ) from error
            if staleness <= 0:
                raise InvalidScenarioError("fib_staleness_T", "must be positive")
        if self.content_rate_F is not None and self.content_rate_F <= 0:
            raise InvalidScenarioError("content_rate_F", "must be positive")
        if self.pit_init_timeout <= 0:
            raise InvalidScenarioError("pit_init_timeout", "must be positive")
        if self.pit_timer_floor <= 0:
            raise InvalidScenarioError("pit_timer_floor", "must be positive")
        if self.duration < 0:
            raise InvalidScenarioError("duration", "must be non-negative")
        if self.drain < 0:
            raise InvalidScenarioError("drain", "must be non-negative")
        if self.payload_size < 0:
            raise InvalidScenarioError("payload_size", "must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise InvalidScenarioError("seed", "must be a 64-bit unsigned integer")

    @staticmethod
    def _check_enum(field: str, value: str, enum_type: type) -> None:
        allowed = [member.value for member in enum_type]
        if value not in allowed:
            raise InvalidScenarioError(
                field, f"must be one of {', '.join(allowed)}, got {value!r}"
            )

    def replace(self, **changes: Any) -> "Scenario":
        content = self.asdict()
        unknown = set(changes) - set(self.FIELDS)
        if unknown:
            field = sorted(unknown)[0]
            raise InvalidScenarioError(field, "unknown scenario field")
        content.update(changes)
        return Scenario.from_dict(content)

    def scenario_id(self) -> str:
        content = self.asdict()
        content.pop("seed")
        canonical = json.dumps(content, sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()[:12]

    def asdict(self) -> dict[str, Any]:
        return {field: getattr(self, field) for field in self.FIELDS}

    @classmethod
    def from_dict(cls, content: dict[str, Any]) -> "Scenario":
        for key, value in content.items():
            if key not in cls.FIELDS:
                raise InvalidScenarioError(key, "unknown scenario field")
            if isinstance(value, (dict, list)):
                raise InvalidScenarioError(key, "nested values are not supported")
        return cls(**content)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Scenario) and self.asdict() == other.asdict()

    def __repr__(self) -> str:
        return json.dumps(self.asdict(), indent=4)
