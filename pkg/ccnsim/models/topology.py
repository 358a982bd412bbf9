import json
from importlib import resources
from pathlib import Path
from typing import Any

import networkx as nx

from ccnsim.exceptions import InvalidScenarioError
from ccnsim.models.common import APP_FACE, ContentName, FaceId, NodeId, parse_name

DEFAULT_LINK_DELAY = 10.0
ABILENE = "abilene"


class Topology:
    """
    Router graph with per-link propagation delays and one producer prefix per router.

    Faces are derived from the graph: face 0 is the application face, link faces
    are numbered 1..degree in ascending neighbour id order.

    Attributes
    ----------
    graph : networkx.Graph
        nodes carry ``label`` and ``prefix`` attributes, edges carry ``delay`` (ms)
    """

    def __init__(self, graph: nx.Graph) -> None:
        self.graph: nx.Graph = graph
        self._face_map: dict[NodeId, dict[FaceId, tuple[NodeId, FaceId, float]]] = {}
        self._face_of: dict[tuple[NodeId, NodeId], FaceId] = {}
        for node in sorted(graph.nodes):
            for index, neighbor in enumerate(sorted(graph.neighbors(node)), start=1):
                self._face_of[(node, neighbor)] = index
        for (node, neighbor), face in self._face_of.items():
            remote_face = self._face_of[(neighbor, node)]
            delay = float(graph.edges[node, neighbor]["delay"])
            self._face_map.setdefault(node, {})[face] = (neighbor, remote_face, delay)

    @classmethod
    def from_text(cls, text: str) -> "Topology":
        """
        Parse the line-oriented topology format::

            # comment
            node <id> <label> <prefix>
            link <idA> <idB> [<delay_ms>]
        """
        graph = nx.Graph()
        for lineno, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                match parts:
                    case ["node", node_id, label, prefix]:
                        node = int(node_id)
                        if node in graph.nodes:
                            raise InvalidScenarioError(
                                "topology", f"line {lineno}: duplicate node {node}"
                            )
                        graph.add_node(node, label=label, prefix=parse_name(prefix))
                    case ["link", node_a, node_b, *rest] if len(rest) <= 1:
                        a, b = int(node_a), int(node_b)
                        delay = float(rest[0]) if rest else DEFAULT_LINK_DELAY
                        if a == b:
                            raise InvalidScenarioError(
                                "topology", f"line {lineno}: self-loop on node {a}"
                            )
                        if graph.has_edge(a, b):
                            raise InvalidScenarioError(
                                "topology", f"line {lineno}: duplicate link {a}-{b}"
                            )
                        for endpoint in (a, b):
                            if endpoint not in graph.nodes:
                                raise InvalidScenarioError(
                                    "topology",
                                    f"line {lineno}: link references unknown node {endpoint}",
                                )
                        graph.add_edge(a, b, delay=delay)
                    case _:
                        raise InvalidScenarioError(
                            "topology", f"line {lineno}: cannot parse {raw_line!r}"
                        )
            except InvalidScenarioError:
                raise
            except ValueError as error:
                # int()/float() conversions and MalformedNameError
                raise InvalidScenarioError(
                    "topology", f"line {lineno}: {error}"
                ) from error
        topology = cls(graph)
        topology.validate()
        return topology

    @classmethod
    def load(cls, path: str | Path) -> "Topology":
        if str(path) == ABILENE:
            return build_abilene()
        return cls.from_text(Path(path).read_text())

    def validate(self) -> None:
        if self.graph.number_of_nodes() == 0:
            raise InvalidScenarioError("topology", "no nodes defined")
        if any(node < 0 for node in self.graph.nodes):
            raise InvalidScenarioError("topology", "node ids must be non-negative")
        prefixes = [self.prefix(node) for node in self.graph.nodes]
        if len(set(prefixes)) != len(prefixes):
            raise InvalidScenarioError("topology", "producer prefixes must be unique")
        for a, b, delay in self.graph.edges.data("delay"):
            if delay <= 0:
                raise InvalidScenarioError(
                    "topology", f"link {a}-{b} must have a positive delay"
                )
        if not nx.is_connected(self.graph):
            raise InvalidScenarioError("topology", "graph is not connected")

    def node_ids(self) -> list[NodeId]:
        return sorted(self.graph.nodes)

    def label(self, node: NodeId) -> str:
        return self.graph.nodes[node]["label"]

    def prefix(self, node: NodeId) -> ContentName:
        return self.graph.nodes[node]["prefix"]

    def link_faces(self, node: NodeId) -> list[FaceId]:
        return sorted(self._face_map.get(node, {}))

    def faces(self, node: NodeId) -> list[FaceId]:
        return [APP_FACE] + self.link_faces(node)

    def face_toward(self, node: NodeId, neighbor: NodeId) -> FaceId:
        return self._face_of[(node, neighbor)]

    def link_end(self, node: NodeId, face: FaceId) -> tuple[NodeId, FaceId, float]:
        """Neighbour, the neighbour's face for the same link, and the link delay"""
        return self._face_map[node][face]

    def delay(self, a: NodeId, b: NodeId) -> float:
        return float(self.graph.edges[a, b]["delay"])

    @property
    def links(self) -> list[tuple[NodeId, NodeId, float]]:
        return sorted(
            (min(a, b), max(a, b), float(delay))
            for a, b, delay in self.graph.edges.data("delay")
        )

    def asdict(self) -> dict[str, Any]:
        return {
            "nodes": [
                {"id": node, "label": self.label(node), "prefix": str(self.prefix(node))}
                for node in self.node_ids()
            ],
            "links": [list(link) for link in self.links],
        }

    def __repr__(self) -> str:
        return json.dumps(self.asdict(), indent=4)


def build_abilene() -> Topology:
    """Bundled 12-router Abilene topology, one city prefix per router"""
    text = resources.files("ccnsim.data").joinpath("abilene.topo").read_text()
    return Topology.from_text(text)
