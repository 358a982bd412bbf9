from dataclasses import dataclass
from enum import Enum

from ccnsim.exceptions import MalformedNameError

NodeId = int
FaceId = int
Nonce = int

# Reserved face connecting a router to its local consumer/producer application
APP_FACE: FaceId = 0

NONCE_BITS = 32


@dataclass(frozen=True, order=True)
class ContentName:
    """
    Hierarchical content identifier, serialized as "/" + components joined by "/"

    Names compare by their component tuple; that order is the tie-breaker used
    by every table in the simulator.
    """

    components: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise MalformedNameError("A content name needs at least one component")
        for component in self.components:
            if not component or "/" in component:
                raise MalformedNameError(f"Invalid name component: {component!r}")

    def __str__(self) -> str:
        return "/" + "/".join(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __truediv__(self, component: str) -> "ContentName":
        return ContentName(self.components + (component,))

    def prefix(self, length: int) -> "ContentName":
        return ContentName(self.components[:length])


def parse_name(text: str) -> ContentName:
    """
    Parse "/a/b/c" into a :py:class:`ContentName`.
    Empty components (including a trailing "/" or the bare "/") are rejected.
    """
    if not text or not text.startswith("/"):
        raise MalformedNameError(f"Content name must start with '/': {text!r}")
    segments = text[1:].split("/")
    if any(segment == "" for segment in segments):
        raise MalformedNameError(f"Empty component in content name: {text!r}")
    return ContentName(tuple(segments))


def is_prefix_of(prefix: ContentName, name: ContentName) -> bool:
    return name.components[: len(prefix.components)] == prefix.components


class CachePolicy(Enum):
    LRU = "lru"
    LFU = "lfu"
    FIFO = "fifo"


class ForwardingStrategy(Enum):
    SMART_FLOODING = "smart-flooding"
    BEST_ROUTE = "best-route"


class PitDecision(Enum):
    FORWARD_NEEDED = "forward-needed"
    AGGREGATED = "aggregated"
    DUPLICATE_DROPPED = "duplicate-dropped"


class FaceState(Enum):
    GREEN = "green"
    YELLOW = "yellow"


class Popularity(Enum):
    ZIPF = "zipf"
    UNIFORM = "uniform"


class PopularityScope(Enum):
    """Whether every router ranks the catalog on its own or all share one ranking"""

    PER_NODE = "per-node"
    NETWORK = "network"
