import logging
from pathlib import Path
from typing import Any

import yaml

from ccnsim.exceptions import InvalidScenarioError
from ccnsim.models.scenario import Scenario
from ccnsim.models.topology import ABILENE

DEFAULT_LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def load_scenario_file(path: str | Path) -> dict[str, Any]:
    """Read a flat YAML mapping of scenario fields"""
    with open(path) as f:
        try:
            content = yaml.safe_load(f)
        except yaml.YAMLError as error:
            raise InvalidScenarioError("scenario", f"{path}: {error}") from error
    if content is None:
        return {}
    if not isinstance(content, dict):
        raise InvalidScenarioError("scenario", f"{path} must contain a mapping")
    # Topology paths are relative to the scenario file
    topology = content.get("topology")
    if isinstance(topology, str) and topology != ABILENE:
        candidate = Path(path).parent / topology
        if not Path(topology).is_absolute() and candidate.exists():
            content["topology"] = str(candidate)
    return content


def load_scenario(
    path: str | Path | None = None, overrides: dict[str, Any] | None = None
) -> Scenario:
    """
    Build a scenario from defaults, then the scenario file, then overrides.
    Overrides set to None are ignored.
    """
    content: dict[str, Any] = {}
    if path is not None:
        content.update(load_scenario_file(path))
    if overrides:
        content.update({key: value for key, value in overrides.items() if value is not None})
    scenario = Scenario.from_dict(content)
    scenario.validate()
    return scenario


def setup_logging(level: str = "INFO", log_format: str = DEFAULT_LOG_FORMAT) -> None:
    """Set up logging for the ccnsim library"""
    log_level = getattr(logging, level.upper(), logging.INFO)
    logger = logging.getLogger("ccnsim")
    logger.setLevel(log_level)

    # Add console handler if not already present
    if not any(isinstance(h, logging.StreamHandler) for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(log_format))
        logger.addHandler(handler)
