import logging
from pathlib import Path

import pytest

from ccnsim.models.scenario import Scenario

logging.getLogger("ccnsim").setLevel(logging.DEBUG)

LINE_TOPOLOGY = """\
# three routers in a row
node 0 West /W
node 1 Middle /M
node 2 East /E
link 0 1 10
link 1 2 5
"""


@pytest.fixture
def small_scenario() -> Scenario:
    """Abilene with a 120-name catalog and a few seconds of light traffic"""
    return Scenario(
        names_per_producer=10,
        interest_rate=20.0,
        duration=2.0,
        drain=3.0,
    )


@pytest.fixture
def line_topology_file(tmp_path: Path) -> Path:
    path = tmp_path / "line.topo"
    path.write_text(LINE_TOPOLOGY)
    return path
