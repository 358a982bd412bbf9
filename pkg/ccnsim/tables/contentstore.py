from bisect import bisect_left, insort

from ccnsim.exceptions import InvalidParameterError
from ccnsim.models.common import CachePolicy, ContentName
from ccnsim.models.packets import DataPacket

EvictionKey = tuple[float, ContentName]


class CsRecord:
    def __init__(self, name: ContentName, payload_size: int, now: float) -> None:
        self.name: ContentName = name
        self.payload_size: int = payload_size
        self.insert_time: float = now
        self.last_access: float = now
        self.hit_count: int = 0

    def eviction_key(self, policy: CachePolicy) -> EvictionKey:
        """Smallest key is evicted first; equal policy values fall back to name order"""
        match policy:
            case CachePolicy.LRU:
                return (self.last_access, self.name)
            case CachePolicy.LFU:
                return (self.hit_count, self.name)
            case CachePolicy.FIFO:
                return (self.insert_time, self.name)


class ContentStore:
    """
    Capacity-bounded router cache.

    Records are kept in a list sorted by the policy's eviction key, so the victim
    is the first element and the survival rank of a name is its distance from
    the end of the list.

    Attributes
    ----------
    capacity : int
        maximum number of cached chunks
    policy : CachePolicy
        replacement policy, fixed for the lifetime of the store
    """

    def __init__(self, capacity: int, policy: CachePolicy) -> None:
        if capacity < 1:
            raise InvalidParameterError(f"Cache capacity must be positive: {capacity}")
        self.capacity: int = capacity
        self.policy: CachePolicy = policy
        self.hits: int = 0
        self.misses: int = 0
        self._records: dict[ContentName, CsRecord] = {}
        self._order: list[EvictionKey] = []

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, name: ContentName) -> bool:
        return name in self._records

    def record(self, name: ContentName) -> CsRecord | None:
        return self._records.get(name)

    def names(self) -> list[ContentName]:
        """Cached names, next victim first"""
        return [name for _, name in self._order]

    def lookup(self, name: ContentName, now: float) -> DataPacket | None:
        record = self._records.get(name)
        if record is None:
            self.misses += 1
            return None
        self.hits += 1
        self._touch(record, now, hit=True)
        return DataPacket(name=record.name, payload_size=record.payload_size)

    def insert(self, data: DataPacket, now: float) -> ContentName | None:
        """
        Cache ``data``, returning the evicted name when the store was full.
        The victim is chosen among the cached names before the newcomer is
        admitted, so new content is always stored. Re-inserting a cached name
        only refreshes its last access time.
        """
        record = self._records.get(data.name)
        if record is not None:
            self._touch(record, now, hit=False)
            return None
        victim = None
        if len(self._records) >= self.capacity:
            _, victim = self._order.pop(0)
            del self._records[victim]
        record = CsRecord(data.name, data.payload_size, now)
        self._records[data.name] = record
        insort(self._order, record.eviction_key(self.policy))
        return victim

    def survival_rank(self, name: ContentName) -> float | None:
        """
        Normalized eviction distance of a cached name: 0.0 is the farthest from
        eviction, (n - 1) / n is the next victim.
        """
        record = self._records.get(name)
        if record is None:
            return None
        index = bisect_left(self._order, record.eviction_key(self.policy))
        size = len(self._order)
        return (size - 1 - index) / size

    def is_long_lived(self, name: ContentName, threshold_fraction: float = 0.5) -> bool:
        if not 0 < threshold_fraction <= 1:
            raise InvalidParameterError(
                f"Threshold fraction must be in (0, 1]: {threshold_fraction}"
            )
        rank = self.survival_rank(name)
        return rank is not None and rank < threshold_fraction

    def _touch(self, record: CsRecord, now: float, hit: bool) -> None:
        old_key = record.eviction_key(self.policy)
        record.last_access = now
        if hit:
            record.hit_count += 1
        new_key = record.eviction_key(self.policy)
        if new_key != old_key:
            del self._order[bisect_left(self._order, old_key)]
            insort(self._order, new_key)


def cs_lookup(store: ContentStore, name: ContentName, now: float) -> DataPacket | None:
    return store.lookup(name, now)


def cs_insert(store: ContentStore, data: DataPacket, now: float) -> ContentName | None:
    return store.insert(data, now)


def cs_survival_rank(store: ContentStore, name: ContentName) -> float | None:
    return store.survival_rank(name)


def cs_is_long_lived(
    store: ContentStore, name: ContentName, threshold_fraction: float = 0.5
) -> bool:
    return store.is_long_lived(name, threshold_fraction)
