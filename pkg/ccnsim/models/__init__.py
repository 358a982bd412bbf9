from .common import (
    APP_FACE,
    CachePolicy,
    ContentName,
    FaceState,
    ForwardingStrategy,
    PitDecision,
    Popularity,
    PopularityScope,
    is_prefix_of,
    parse_name,
)
from .metrics import CSV_HEADER, MetricsReport, NodeCounters
from .packets import DataPacket, InterestPacket, QueryResult
from .scenario import Scenario
from .topology import Topology, build_abilene

__all__ = [
    "APP_FACE",
    "CSV_HEADER",
    "CachePolicy",
    "ContentName",
    "DataPacket",
    "FaceState",
    "ForwardingStrategy",
    "InterestPacket",
    "MetricsReport",
    "NodeCounters",
    "PitDecision",
    "Popularity",
    "PopularityScope",
    "QueryResult",
    "Scenario",
    "Topology",
    "build_abilene",
    "is_prefix_of",
    "parse_name",
]
