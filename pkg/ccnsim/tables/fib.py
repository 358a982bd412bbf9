from dataclasses import dataclass

from ccnsim.exceptions import InvalidParameterError
from ccnsim.models.common import APP_FACE, ContentName, FaceId, FaceState


def fib_threshold(cache_size: float, content_rate: float) -> float:
    """
    Staleness threshold T = C / F, in ms

    Parameters
    ----------
    cache_size : float
        C, content store capacity in chunks
    content_rate : float
        F, contents generated per second
    """
    if cache_size <= 0 or content_rate <= 0:
        raise InvalidParameterError(
            f"Threshold needs C > 0 and F > 0, got C={cache_size}, F={content_rate}"
        )
    return 1000.0 * cache_size / content_rate


class FaceRecord:
    def __init__(
        self,
        face: FaceId,
        metric: float,
        state: FaceState = FaceState.GREEN,
        last_data_time: float = 0.0,
        from_query: bool = False,
    ) -> None:
        self.face: FaceId = face
        self.metric: float = metric
        self.state: FaceState = state
        self.last_data_time: float = last_data_time
        # set while the metric comes from a query result rather than data for the name
        self.from_query: bool = from_query

    @property
    def is_green(self) -> bool:
        return self.state is FaceState.GREEN

    def sort_key(self) -> tuple[int, float, FaceId]:
        return (0 if self.is_green else 1, self.metric, self.face)

    def asdict(self) -> dict[str, object]:
        return {
            "face": self.face,
            "metric": self.metric,
            "state": self.state.value,
            "last_data_time": self.last_data_time,
            "from_query": self.from_query,
        }

    def __repr__(self) -> str:
        return f"FaceRecord({self.face}, {self.metric}, {self.state.value})"


class FibEntry:
    """Faces for one name, kept Green first, then by ascending metric and face id"""

    def __init__(self, name: ContentName) -> None:
        self.name: ContentName = name
        self.faces: list[FaceRecord] = []

    def record(self, face: FaceId) -> FaceRecord | None:
        for record in self.faces:
            if record.face == face:
                return record
        return None

    def greens(self) -> list[FaceRecord]:
        return [record for record in self.faces if record.is_green]

    def green_count(self) -> int:
        return sum(1 for record in self.faces if record.is_green)

    def sort(self) -> None:
        self.faces.sort(key=FaceRecord.sort_key)


@dataclass(frozen=True)
class FibConfig:
    max_green: int = 2
    staleness_T: float = 4800.0
    max_faces: int = 8

    def __post_init__(self) -> None:
        if self.max_green < 1:
            raise InvalidParameterError("max_green must be at least 1")
        if self.max_faces < self.max_green:
            raise InvalidParameterError("max_faces must be at least max_green")
        if self.staleness_T <= 0:
            raise InvalidParameterError("staleness_T must be positive")

    @classmethod
    def from_rates(
        cls, cache_size: float, content_rate: float, max_green: int = 2, max_faces: int = 8
    ) -> "FibConfig":
        return cls(max_green, fib_threshold(cache_size, content_rate), max_faces)


class Fib:
    def __init__(self, config: FibConfig | None = None) -> None:
        self.config: FibConfig = config or FibConfig()
        self._entries: dict[ContentName, FibEntry] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, name: ContentName) -> bool:
        return name in self._entries

    def entry(self, name: ContentName) -> FibEntry | None:
        return self._entries.get(name)

    def install_route(
        self,
        prefix: ContentName,
        face: FaceId,
        metric: float,
        state: FaceState = FaceState.GREEN,
        now: float = 0.0,
    ) -> None:
        """Seed a route directly, without going through the update algorithm"""
        self._check_face(face)
        entry = self._entries.setdefault(prefix, FibEntry(prefix))
        record = entry.record(face)
        if record is None:
            entry.faces.append(FaceRecord(face, metric, state, now))
        else:
            record.metric, record.state, record.last_data_time = metric, state, now
        self._settle(entry)

    def update_entry_face(
        self,
        name: ContentName,
        new_face: FaceId,
        response_time: float,
        now: float,
        from_query: bool = False,
    ) -> None:
        """
        Record that data for ``name`` came back through ``new_face`` after
        ``response_time`` ms.

        A known face is refreshed and promoted if the green list has room. A new
        face is admitted as Green while the green list has room; when it is full,
        a faster face replaces the last Green, otherwise Greens idle for longer
        than the staleness threshold are demoted and the new face takes a freed
        Green slot or is kept as Yellow.

        ``from_query`` marks an update taught by a query result carried in data
        for another name. Ranking is the same; the mark only limits how long the
        face is trusted (see :meth:`trusted`).
        """
        self._check_face(new_face)
        if response_time <= 0:
            raise InvalidParameterError(
                f"Response time must be positive, got {response_time}"
            )
        max_green = self.config.max_green
        entry = self._entries.setdefault(name, FibEntry(name))
        record = entry.record(new_face)
        if record is not None:
            record.metric = response_time
            record.last_data_time = now
            record.from_query = from_query
            if not record.is_green and entry.green_count() < max_green:
                record.state = FaceState.GREEN
        elif entry.green_count() < max_green:
            entry.faces.append(
                FaceRecord(new_face, response_time, FaceState.GREEN, now, from_query)
            )
        else:
            last_green = entry.greens()[-1]
            if response_time < last_green.metric:
                last_green.state = FaceState.YELLOW
                state = FaceState.GREEN
            else:
                for green in entry.greens():
                    if now - green.last_data_time > self.config.staleness_T:
                        green.state = FaceState.YELLOW
                state = (
                    FaceState.GREEN
                    if entry.green_count() < max_green
                    else FaceState.YELLOW
                )
            entry.faces.append(FaceRecord(new_face, response_time, state, now, from_query))
        self._settle(entry)

    def trusted(self, record: FaceRecord, now: float) -> bool:
        """
        A face learned from a query result is usable for the staleness threshold
        after it was learned; data for the name through that face confirms it.
        """
        if not record.from_query:
            return True
        return now - record.last_data_time <= self.config.staleness_T

    def _settle(self, entry: FibEntry) -> None:
        entry.sort()
        # Overflow drops the worst Yellow, which sorts last
        del entry.faces[self.config.max_faces :]

    @staticmethod
    def _check_face(face: FaceId) -> None:
        if face == APP_FACE or face < 0:
            raise InvalidParameterError(f"Face {face} cannot be recorded in the FIB")

    def lookup(self, name: ContentName) -> list[FaceRecord]:
        """Faces of the exact entry, else of the longest matching prefix entry"""
        for length in range(len(name), 0, -1):
            entry = self._entries.get(name.prefix(length))
            if entry is not None and entry.faces:
                return list(entry.faces)
        return []

    def lookup_chain(self, name: ContentName) -> list[FaceRecord]:
        """
        Faces of every matching entry, longest match first; a face already
        listed by a longer match is not repeated.
        """
        chain: list[FaceRecord] = []
        seen: set[FaceId] = set()
        for length in range(len(name), 0, -1):
            entry = self._entries.get(name.prefix(length))
            if entry is None:
                continue
            for record in entry.faces:
                if record.face not in seen:
                    seen.add(record.face)
                    chain.append(record)
        return chain

    def best_green(self, name: ContentName) -> FaceRecord | None:
        faces = self.lookup(name)
        if faces and faces[0].is_green:
            return faces[0]
        return None


def fib_update_entry_face(
    fib: Fib,
    name: ContentName,
    new_face: FaceId,
    response_time: float,
    now: float,
    from_query: bool = False,
) -> None:
    fib.update_entry_face(name, new_face, response_time, now, from_query)


def fib_lookup(fib: Fib, name: ContentName) -> list[FaceRecord]:
    return fib.lookup(name)


def fib_best_green(fib: Fib, name: ContentName) -> FaceRecord | None:
    return fib.best_green(name)
