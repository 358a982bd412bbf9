from dataclasses import dataclass

from ccnsim.exceptions import MalformedNameError
from ccnsim.models.common import ContentName, NodeId, Nonce


@dataclass(frozen=True)
class QueryResult:
    name: ContentName
    holder: NodeId


@dataclass(frozen=True)
class InterestPacket:
    """
    Interest with the optional query name piggybacked by the first-hop router.
    ``selector`` is carried but never interpreted.
    """

    name: ContentName
    nonce: Nonce
    emit_time: float
    origin: NodeId
    selector: str = ""
    query_name: ContentName | None = None

    def __post_init__(self) -> None:
        if self.query_name is not None and self.query_name == self.name:
            raise MalformedNameError(
                f"Query name must differ from the requested name {self.name}"
            )


@dataclass(frozen=True)
class DataPacket:
    """
    Data answering one interest. Signature fields are carried opaquely and the
    payload is only a size.
    """

    name: ContentName
    payload_size: int = 1024
    signature: str = ""
    signature_info: str = ""
    query_result: QueryResult | None = None
