from collections.abc import Callable, Collection
from dataclasses import dataclass, field, replace

from ccnsim.exceptions import InvalidParameterError
from ccnsim.models.common import (
    APP_FACE,
    ContentName,
    FaceId,
    ForwardingStrategy,
    NodeId,
    Nonce,
    PitDecision,
    is_prefix_of,
)
from ccnsim.models.metrics import NodeCounters
from ccnsim.models.packets import DataPacket, InterestPacket, QueryResult
from ccnsim.services.simlogger import sim_logger
from ccnsim.tables.contentstore import ContentStore
from ccnsim.tables.fib import FaceRecord, Fib
from ccnsim.tables.pit import Pit, PitEntry

Packet = InterestPacket | DataPacket


class NodeState:
    """
    Tables, configuration and counters of one router

    Attributes
    ----------
    id : NodeId
        router id
    link_faces : list[FaceId]
        faces toward neighbours, used when flooding without a FIB match
    owned_names : frozenset[ContentName]
        names this router produces, all under ``producer_prefix``
    query_gate_fraction : float
        a query name is answered when its survival rank is below this fraction
    """

    def __init__(
        self,
        node_id: NodeId,
        cs: ContentStore,
        pit: Pit,
        fib: Fib,
        strategy: ForwardingStrategy,
        query_enabled: bool,
        producer_prefix: ContentName,
        owned_names: Collection[ContentName] = (),
        link_faces: Collection[FaceId] = (),
        query_gate_fraction: float = 0.5,
        payload_size: int = 1024,
    ) -> None:
        for name in owned_names:
            if not is_prefix_of(producer_prefix, name):
                raise InvalidParameterError(
                    f"{name} is not under the producer prefix {producer_prefix}"
                )
        self.id: NodeId = node_id
        self.cs: ContentStore = cs
        self.pit: Pit = pit
        self.fib: Fib = fib
        self.strategy: ForwardingStrategy = strategy
        self.query_enabled: bool = query_enabled
        self.producer_prefix: ContentName = producer_prefix
        self.owned_names: frozenset[ContentName] = frozenset(owned_names)
        self.link_faces: list[FaceId] = sorted(link_faces)
        self.query_gate_fraction: float = query_gate_fraction
        self.payload_size: int = payload_size
        self.counters: NodeCounters = NodeCounters(node_id)


@dataclass
class Effects:
    """
    What a pipeline asks the engine to do: packets to send on link faces, PIT
    timers to arm (as delays in ms) and data delivered to the local application
    """

    sends: list[tuple[FaceId, Packet]] = field(default_factory=list)
    timers: list[float] = field(default_factory=list)
    delivered: list[DataPacket] = field(default_factory=list)

    def extend(self, other: "Effects") -> None:
        self.sends.extend(other.sends)
        self.timers.extend(other.timers)
        self.delivered.extend(other.delivered)


class Forwarder:
    """
    Interest and data pipelines shared by every router of a run.

    Parameters
    ----------
    nonces : Callable[[], Nonce]
        source of fresh nonces for retransmissions
    pit_init_timeout : float
        timer (ms) when the selection is not a single Green face
    pit_timer_floor : float
        lower bound (ms) for timers derived from a Green face metric
    """

    def __init__(
        self,
        nonces: Callable[[], Nonce],
        pit_init_timeout: float = 2000.0,
        pit_timer_floor: float = 50.0,
    ) -> None:
        self.nonces: Callable[[], Nonce] = nonces
        self.pit_init_timeout: float = pit_init_timeout
        self.pit_timer_floor: float = pit_timer_floor

    def on_interest(
        self, node: NodeState, interest: InterestPacket, in_face: FaceId, now: float
    ) -> Effects:
        effects = Effects()
        counters = node.counters
        if in_face == APP_FACE:
            counters.emitted += 1

        data = node.cs.lookup(interest.name, now)
        if data is not None:
            counters.cs_hits += 1
            self._answer(node, interest, in_face, data, now, effects)
            return effects
        counters.cs_misses += 1

        if interest.name in node.owned_names:
            counters.producer_hits += 1
            data = DataPacket(name=interest.name, payload_size=node.payload_size)
            self._answer(node, interest, in_face, data, now, effects)
            return effects

        decision = node.pit.on_interest(interest, in_face, now)
        if decision is PitDecision.DUPLICATE_DROPPED:
            counters.duplicates += 1
            if in_face == APP_FACE:
                counters.unsatisfied += 1
            sim_logger.debug(
                "node %s dropped duplicate interest %s (nonce %s)",
                node.id,
                interest.name,
                interest.nonce,
            )
            return effects
        entry = node.pit.entry(interest.name)
        if in_face == APP_FACE:
            entry.app_emit_times.append(interest.emit_time)
        if decision is PitDecision.AGGREGATED:
            counters.aggregated += 1
            return effects

        if node.query_enabled and interest.query_name is None and in_face == APP_FACE:
            query_name = node.pit.most_popular(exclude=interest.name)
            if query_name is not None:
                interest = replace(interest, query_name=query_name)
                entry.interest = interest
                counters.query_attached += 1

        if not self._transmit(node, entry, now, effects):
            self._give_up(node, entry)
        return effects

    def _answer(
        self,
        node: NodeState,
        interest: InterestPacket,
        in_face: FaceId,
        data: DataPacket,
        now: float,
        effects: Effects,
    ) -> None:
        query_name = interest.query_name
        if (
            node.query_enabled
            and query_name is not None
            and node.cs.is_long_lived(query_name, node.query_gate_fraction)
        ):
            data = replace(data, query_result=QueryResult(query_name, node.id))
            node.counters.query_answered += 1
        if in_face == APP_FACE:
            node.counters.record_satisfied([now - interest.emit_time])
            effects.delivered.append(data)
        else:
            node.counters.data_tx += 1
            effects.sends.append((in_face, data))

    @staticmethod
    def routes(
        node: NodeState, name: ContentName, now: float | None = None
    ) -> list[FaceRecord]:
        """
        FIB faces usable for ``name``, best first. With ``now`` given, faces
        learned from a query result and idle past the staleness threshold are
        left out.
        """
        chain = node.fib.lookup_chain(name)
        if now is None:
            return chain
        return [record for record in chain if node.fib.trusted(record, now)]

    def strategy_select(
        self,
        node: NodeState,
        name: ContentName,
        in_faces: Collection[FaceId],
        attempt: int,
        now: float | None = None,
    ) -> set[FaceId]:
        """
        Out-faces for a transmission attempt (0 is the first transmission).

        Best route walks the FIB face order one face per attempt. Smart flooding
        uses the best Green face on the first attempt and floods every FIB face
        otherwise, or every link face when the FIB knows nothing about the name.
        Faces in ``in_faces`` are never selected.
        """
        if attempt < 0:
            raise InvalidParameterError(f"Attempt must be non-negative: {attempt}")
        known = self.routes(node, name, now)
        chain = [record for record in known if record.face not in in_faces]
        if node.strategy is ForwardingStrategy.BEST_ROUTE:
            return {chain[attempt].face} if attempt < len(chain) else set()
        if attempt == 0:
            for record in chain:
                if record.is_green:
                    return {record.face}
        if known:
            return {record.face for record in chain}
        return {face for face in node.link_faces if face not in in_faces}

    def _timer_delay(
        self, node: NodeState, name: ContentName, faces: set[FaceId], now: float
    ) -> float:
        if len(faces) == 1:
            (face,) = faces
            for record in self.routes(node, name, now):
                if record.face == face:
                    if record.is_green:
                        return max(2 * record.metric, self.pit_timer_floor)
                    break
        return self.pit_init_timeout

    def _transmit(
        self, node: NodeState, entry: PitEntry, now: float, effects: Effects
    ) -> bool:
        faces = self.strategy_select(
            node, entry.name, entry.in_faces, entry.retry_cursor, now
        )
        if not faces:
            return False
        counters = node.counters
        node.pit.record_out(entry.name, faces)
        delay = self._timer_delay(node, entry.name, faces, now)
        node.pit.set_timer(entry.name, now + delay)
        effects.timers.append(delay)
        for face in sorted(faces):
            effects.sends.append((face, entry.interest))
        counters.interest_tx += len(faces)
        if len(faces) >= 2:
            counters.flood_events += 1
            counters.flood_packets += len(faces)
        return True

    def _give_up(self, node: NodeState, entry: PitEntry) -> None:
        node.pit.remove(entry.name)
        node.counters.gave_up += 1
        node.counters.unsatisfied += len(entry.app_emit_times)
        sim_logger.debug(
            "node %s gave up on %s after %s attempt(s)",
            node.id,
            entry.name,
            entry.retry_cursor + 1,
        )

    def on_pit_timeout(self, node: NodeState, name: ContentName, now: float) -> Effects:
        effects = Effects()
        entry = node.pit.get(name)
        if entry is None:
            return effects
        # every handled timeout counts, including the one that gives up
        node.counters.retransmissions += 1
        if entry.retry_limit is None:
            entry.retry_limit = max(1, len(self.routes(node, name, now)))
        if entry.retry_cursor >= entry.retry_limit:
            self._give_up(node, entry)
            return effects
        entry.retry_cursor += 1
        nonce = self.nonces()
        entry.interest = replace(entry.interest, nonce=nonce)
        node.pit.add_nonce(name, nonce)
        if not self._transmit(node, entry, now, effects):
            self._give_up(node, entry)
        return effects

    def on_timers(self, node: NodeState, now: float) -> Effects:
        effects = Effects()
        for name in node.pit.expired(now):
            effects.extend(self.on_pit_timeout(node, name, now))
        return effects

    def on_data(
        self, node: NodeState, data: DataPacket, in_face: FaceId, now: float
    ) -> Effects:
        effects = Effects()
        counters = node.counters
        entry = node.pit.get(data.name)
        if entry is None:
            counters.unsolicited += 1
            sim_logger.debug("node %s dropped unsolicited data %s", node.id, data.name)
            return effects
        consumers = node.pit.on_data(data.name)

        response_time = now - entry.create_time
        if response_time <= 0 or in_face not in entry.out_faces:
            # a late copy answering an earlier entry for the same name
            counters.stale_data += 1
            sim_logger.debug(
                "node %s consumed stale data %s from face %s", node.id, data.name, in_face
            )
        else:
            node.fib.update_entry_face(data.name, in_face, response_time, now)
            if node.query_enabled and data.query_result is not None:
                node.fib.update_entry_face(
                    data.query_result.name, in_face, response_time, now, from_query=True
                )
                counters.query_routes_learned += 1
        node.cs.insert(data, now)

        for face in sorted(consumers):
            if face == APP_FACE:
                counters.record_satisfied([now - emitted for emitted in entry.app_emit_times])
                effects.delivered.append(data)
            else:
                counters.data_tx += 1
                effects.sends.append((face, data))
        return effects
