from .ccnsim import CcnSim
from .models.scenario import Scenario

__all__: list[str] = ["CcnSim", "Scenario"]
