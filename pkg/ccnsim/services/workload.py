import numpy as np

from ccnsim.models.common import NONCE_BITS, ContentName, Nonce, Popularity
from ccnsim.models.topology import Topology

NONCE_BATCH = 4096


def build_catalog(topology: Topology, names_per_producer: int) -> list[ContentName]:
    """Every router publishes ``<prefix>/itemNNN``; catalog order is node id, then item"""
    width = max(3, len(str(names_per_producer - 1)))
    return [
        topology.prefix(node) / f"item{index:0{width}d}"
        for node in topology.node_ids()
        for index in range(names_per_producer)
    ]


def popularity_weights(
    size: int, law: Popularity, exponent: float = 1.0
) -> np.ndarray:
    """Request probability per popularity rank (rank 1 first)"""
    if law is Popularity.UNIFORM:
        return np.full(size, 1.0 / size)
    ranks = np.arange(1, size + 1, dtype=float)
    weights = 1.0 / ranks**exponent
    return weights / weights.sum()


class RequestGenerator:
    """
    Draws content names from a popularity law over the whole catalog. Ranks are
    assigned through a seeded permutation so the most popular names are spread
    over all producers.
    """

    def __init__(
        self,
        catalog: list[ContentName],
        law: Popularity,
        exponent: float,
        rng: np.random.Generator,
    ) -> None:
        order = rng.permutation(len(catalog))
        self.ranked: list[ContentName] = [catalog[index] for index in order]
        self.weights: np.ndarray = popularity_weights(len(catalog), law, exponent)

    def draw(self, rng: np.random.Generator, count: int) -> list[ContentName]:
        if count <= 0:
            return []
        picks = rng.choice(len(self.ranked), size=count, p=self.weights)
        return [self.ranked[index] for index in picks]


class NonceSource:
    """32-bit nonces from a seeded stream, drawn in batches"""

    def __init__(self, rng: np.random.Generator, batch: int = NONCE_BATCH) -> None:
        self._rng = rng
        self._batch = batch
        self._buffer: list[int] = []

    def __call__(self) -> Nonce:
        if not self._buffer:
            values = self._rng.integers(
                0, 2**NONCE_BITS, size=self._batch, dtype=np.uint64
            )
            # reversed so pop() hands out values in draw order
            self._buffer = [int(value) for value in values[::-1]]
        return self._buffer.pop()


def emission_count(duration_ms: float, offset_ms: float, interval_ms: float) -> int:
    """Number of instants offset + k * interval strictly before duration_ms"""
    if duration_ms <= offset_ms:
        return 0
    return int(np.ceil((duration_ms - offset_ms) / interval_ms))
