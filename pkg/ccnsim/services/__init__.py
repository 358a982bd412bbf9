from .engine import Simulation, iter_sweep, run, sweep, sweep_grid
from .forwarding import Effects, Forwarder, NodeState
from .routing import RoutePreload, shortest_path_seed

__all__ = [
    "Effects",
    "Forwarder",
    "NodeState",
    "RoutePreload",
    "Simulation",
    "iter_sweep",
    "run",
    "shortest_path_seed",
    "sweep",
    "sweep_grid",
]
