import heapq
from collections.abc import Iterable, Iterator

from ccnsim.exceptions import MissingEntryError
from ccnsim.models.common import ContentName, FaceId, Nonce, PitDecision
from ccnsim.models.packets import InterestPacket


class PitEntry:
    """
    Pending interest for one name

    Attributes
    ----------
    interest : InterestPacket
        the packet forwarded upstream; retransmissions copy it with a new nonce
    app_emit_times : list[float]
        emit times of the local consumer interests waiting on this entry
    retry_cursor : int
        current transmission attempt, 0 for the first one
    retry_limit : int | None
        retransmission budget, fixed at the first timeout
    """

    def __init__(self, interest: InterestPacket, in_face: FaceId, now: float) -> None:
        self.name: ContentName = interest.name
        self.interest: InterestPacket = interest
        self.in_faces: set[FaceId] = {in_face}
        self.out_faces: set[FaceId] = set()
        self.nonces: set[Nonce] = {interest.nonce}
        self.request_count: int = 1
        self.create_time: float = now
        self.timer_deadline: float | None = None
        self.expired: bool = False
        self.retry_cursor: int = 0
        self.retry_limit: int | None = None
        self.app_emit_times: list[float] = []
        self._timer_seq: int = -1

    def popularity_key(self) -> tuple[int, int, float]:
        return (self.request_count, len(self.in_faces), self.create_time)


class Pit:
    def __init__(self) -> None:
        self._entries: dict[ContentName, PitEntry] = {}
        self._timers: list[tuple[float, int, ContentName]] = []
        self._timer_seq: int = 0

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, name: ContentName) -> bool:
        return name in self._entries

    def __iter__(self) -> Iterator[PitEntry]:
        return iter(self._entries.values())

    def get(self, name: ContentName) -> PitEntry | None:
        return self._entries.get(name)

    def entry(self, name: ContentName) -> PitEntry:
        entry = self._entries.get(name)
        if entry is None:
            raise MissingEntryError(f"No PIT entry for {name}")
        return entry

    def on_interest(
        self, interest: InterestPacket, in_face: FaceId, now: float
    ) -> PitDecision:
        entry = self._entries.get(interest.name)
        if entry is None:
            self._entries[interest.name] = PitEntry(interest, in_face, now)
            return PitDecision.FORWARD_NEEDED
        if interest.nonce in entry.nonces:
            return PitDecision.DUPLICATE_DROPPED
        entry.nonces.add(interest.nonce)
        entry.in_faces.add(in_face)
        entry.out_faces.discard(in_face)
        entry.request_count += 1
        return PitDecision.AGGREGATED

    def record_out(self, name: ContentName, faces: Iterable[FaceId]) -> None:
        entry = self.entry(name)
        entry.out_faces.update(face for face in faces if face not in entry.in_faces)

    def add_nonce(self, name: ContentName, nonce: Nonce) -> None:
        self.entry(name).nonces.add(nonce)

    def on_data(self, name: ContentName) -> set[FaceId]:
        """Consumer faces of the entry for ``name``; the entry is consumed"""
        entry = self._entries.pop(name, None)
        if entry is None:
            return set()
        return set(entry.in_faces)

    def remove(self, name: ContentName) -> PitEntry | None:
        return self._entries.pop(name, None)

    def most_popular(self, exclude: ContentName | None = None) -> ContentName | None:
        """
        Live entry with the most aggregated requests. Ties go to more consumer
        faces, then the most recently created entry, then the smallest name.
        """
        best: PitEntry | None = None
        for entry in self._entries.values():
            if entry.name == exclude:
                continue
            if best is None:
                best = entry
                continue
            key, best_key = entry.popularity_key(), best.popularity_key()
            if key > best_key or (key == best_key and entry.name < best.name):
                best = entry
        return best.name if best is not None else None

    def set_timer(self, name: ContentName, deadline: float) -> None:
        entry = self.entry(name)
        entry.timer_deadline = deadline
        entry.expired = False
        entry._timer_seq = self._timer_seq
        heapq.heappush(self._timers, (deadline, self._timer_seq, name))
        self._timer_seq += 1

    def expired(self, now: float) -> list[ContentName]:
        """
        Names whose current timer deadline is <= ``now``. Entries stay in the
        table; each deadline is reported once.
        """
        names: list[ContentName] = []
        while self._timers and self._timers[0][0] <= now:
            _, seq, name = heapq.heappop(self._timers)
            entry = self._entries.get(name)
            # reset timers and consumed entries leave stale heap items behind
            if entry is None or entry._timer_seq != seq or entry.expired:
                continue
            entry.expired = True
            names.append(name)
        return names


def pit_on_interest(
    pit: Pit, interest: InterestPacket, in_face: FaceId, now: float
) -> PitDecision:
    return pit.on_interest(interest, in_face, now)


def pit_record_out(pit: Pit, name: ContentName, faces: Iterable[FaceId]) -> None:
    pit.record_out(name, faces)


def pit_on_data(pit: Pit, name: ContentName) -> set[FaceId]:
    return pit.on_data(name)


def pit_most_popular(pit: Pit, exclude: ContentName | None = None) -> ContentName | None:
    return pit.most_popular(exclude)


def pit_set_timer(pit: Pit, name: ContentName, deadline: float) -> None:
    pit.set_timer(name, deadline)


def pit_expired(pit: Pit, now: float) -> list[ContentName]:
    return pit.expired(now)
