from typing import NamedTuple

import networkx as nx

from ccnsim.models.common import ContentName, FaceId, FaceState, NodeId
from ccnsim.models.topology import Topology
from ccnsim.tables.fib import Fib


class RoutePreload(NamedTuple):
    prefix: ContentName
    face: FaceId
    metric: float
    state: FaceState


def shortest_path_seed(topology: Topology) -> dict[NodeId, list[RoutePreload]]:
    """
    Producer prefix routes for every router.

    The next hop on a minimum-delay path becomes a Green face with metric twice
    the path delay; equal-cost next hops resolve to the lower neighbour id.
    Every other neighbour is kept as a Yellow alternative whose metric is twice
    the delay of the path through it. No router gets a route to its own prefix.
    """
    preloads: dict[NodeId, list[RoutePreload]] = {
        node: [] for node in topology.node_ids()
    }
    for producer in topology.node_ids():
        prefix = topology.prefix(producer)
        distance = nx.single_source_dijkstra_path_length(
            topology.graph, producer, weight="delay"
        )
        for node in topology.node_ids():
            if node == producer:
                continue
            via = sorted(
                (topology.delay(node, neighbor) + distance[neighbor], neighbor)
                for neighbor in topology.graph.neighbors(node)
            )
            best_cost, best_neighbor = via[0]
            preloads[node].append(
                RoutePreload(
                    prefix,
                    topology.face_toward(node, best_neighbor),
                    2 * best_cost,
                    FaceState.GREEN,
                )
            )
            for cost, neighbor in via[1:]:
                preloads[node].append(
                    RoutePreload(
                        prefix,
                        topology.face_toward(node, neighbor),
                        2 * cost,
                        FaceState.YELLOW,
                    )
                )
    return preloads


def install_preloads(fib: Fib, preloads: list[RoutePreload]) -> None:
    for preload in preloads:
        fib.install_route(preload.prefix, preload.face, preload.metric, preload.state)
