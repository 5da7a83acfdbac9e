"""
Shared test fixtures for all tests.
"""

import os
import sys
from pathlib import Path

import pytest
import yaml

# Add the src directory to the Python path
src_dir = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_dir))


@pytest.fixture
def small_config():
    """
    Configuration dictionary small enough for a run to finish in seconds.

    Returns:
        Dictionary in the layout of config.yaml
    """
    return {
        "problem": {"lambda_modulus": 10.0, "lambda_angle": 0.3, "alpha": 1.0},
        "grid": {"n": 16, "wall_intervals": 64},
        "oracle": {"steps": 512, "modes": [[1.0]], "convergence": False},
        "certify": {
            "check": "real-part",
            "moduli_count": 3,
            "angle_count": 3,
            "max_modulus": 100.0,
            "s_count": 20,
            "y_count": 20,
        },
        "sweep": {"modulus_count": 8, "phi_count": 2, "refine": False},
        "run": {"seed": 3, "workers": 1},
    }


@pytest.fixture
def temp_config_file(tmp_path, small_config):
    """
    Create a temporary config.yaml file with test settings.

    Returns:
        Path to the temporary config file
    """
    config_path = tmp_path / "config.yaml"
    config = dict(small_config)
    config["run"] = dict(small_config["run"], out_dir=str(tmp_path / "out"))

    with open(config_path, "w") as f:
        yaml.dump(config, f)

    # Store the original config path to restore later
    original_config = os.environ.get("DYNSTOKES_CONFIG_PATH")

    # Set the environment variable to point to our test config
    os.environ["DYNSTOKES_CONFIG_PATH"] = str(config_path)

    yield config_path

    # Restore the original config path
    if original_config:
        os.environ["DYNSTOKES_CONFIG_PATH"] = original_config
    else:
        os.environ.pop("DYNSTOKES_CONFIG_PATH", None)
