import os
from pathlib import Path

import yaml

from ccnsim.config import DEFAULT_LOG_FORMAT, setup_logging

DEFAULT_CONFIG_PATH = Path(__file__).parent / "example.config.yaml"


def load_config():
    """Load acceptance configuration from a YAML file.
    Environment variables can be used to override specific configuration values."""
    path = os.getenv("CCNSIM_ACCEPTANCE_CONFIG", str(DEFAULT_CONFIG_PATH))

    if not os.path.exists(path):
        raise FileNotFoundError(f"Config file not found: {path}")

    with open(path) as f:
        config = yaml.safe_load(f)

    # Environment variables have precedence over configuration file
    override_seeds = os.getenv("CCNSIM_ACCEPTANCE_SEEDS")
    if override_seeds:
        config["grid"]["seeds"] = [int(seed) for seed in override_seeds.split(",")]
    override_duration = os.getenv("CCNSIM_ACCEPTANCE_DURATION")
    if override_duration:
        config["scenario"].setdefault("overrides", {})["duration"] = float(
            override_duration
        )
    override_jobs = os.getenv("CCNSIM_ACCEPTANCE_JOBS")
    if override_jobs:
        config["grid"]["jobs"] = int(override_jobs)

    log_config = config.get("logging", {})
    setup_logging(
        log_config.get("level", "INFO"), log_config.get("format", DEFAULT_LOG_FORMAT)
    )

    return config
