import json

import networkx as nx
import pytest

from ccnsim.exceptions import InvalidScenarioError
from ccnsim.models.common import APP_FACE, parse_name
from ccnsim.models.topology import Topology, build_abilene

ABILENE_PREFIXES = [
    "/Sea", "/Sun", "/Den", "/LA", "/Hou", "/KC",
    "/Ind", "/Atl", "/Chi", "/NY", "/DC", "/Was",
]  # fmt: skip


def test_build_abilene():
    topology = build_abilene()

    assert topology.graph.number_of_nodes() == 12
    assert nx.is_connected(topology.graph)
    assert topology.prefix(0) == parse_name("/Sea")
    assert topology.label(0) == "Seattle"
    assert [str(topology.prefix(node)) for node in topology.node_ids()] == ABILENE_PREFIXES
    assert all(delay == 10.0 for _, _, delay in topology.links)


def test_load_abilene_by_name():
    assert Topology.load("abilene").links == build_abilene().links


def test_faces_follow_neighbour_order(line_topology_file):
    topology = Topology.load(line_topology_file)

    assert topology.faces(1) == [APP_FACE, 1, 2]
    assert topology.face_toward(1, 0) == 1
    assert topology.face_toward(1, 2) == 2
    assert topology.link_end(1, 2) == (2, 1, 5.0)
    assert topology.link_end(0, 1) == (1, 1, 10.0)
    assert topology.link_faces(2) == [1]


def test_default_link_delay():
    topology = Topology.from_text("node 0 A /A\nnode 1 B /B\nlink 0 1\n")

    assert topology.delay(0, 1) == 10.0


def test_topology_asdict_and_repr(line_topology_file):
    topology = Topology.load(line_topology_file)

    content = topology.asdict()
    assert content["nodes"][1] == {"id": 1, "label": "Middle", "prefix": "/M"}
    assert content["links"] == [[0, 1, 10.0], [1, 2, 5.0]]
    assert json.loads(repr(topology)) == content


@pytest.mark.parametrize(
    "text,message",
    [
        ("", "no nodes"),
        ("node 0 A /A\nnode 0 B /B\n", "duplicate node"),
        ("node 0 A /A\nlink 0 0 10\n", "self-loop"),
        ("node 0 A /A\nnode 1 B /B\nlink 0 1 10\nlink 1 0 10\n", "duplicate link"),
        ("node 0 A /A\nlink 0 1 10\n", "unknown node"),
        ("node 0 A /A\nnode 1 B /B\n", "not connected"),
        ("node 0 A /A\nnode 1 B /A\nlink 0 1 10\n", "unique"),
        ("node 0 A /A\nnode 1 B /B\nlink 0 1 0\n", "positive delay"),
        ("node 0 A /A\nnode 1 B /B\nlink 0 1 ten\n", "line 3"),
        ("node x A /A\n", "line 1"),
        ("node 0 A A\n", "line 1"),
        ("router 0 A /A\n", "cannot parse"),
    ],
)
def test_invalid_topologies(text, message):
    with pytest.raises(InvalidScenarioError, match=message) as error:
        Topology.from_text(text)

    assert error.value.field == "topology"


def test_missing_topology_file(tmp_path):
    with pytest.raises(OSError):
        Topology.load(tmp_path / "missing.topo")
