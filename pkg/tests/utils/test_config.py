"""
Tests for the config utility functions
"""

import os
import tempfile
import unittest

import yaml

from src.dynstokes.utils import config


class TestConfigUtils(unittest.TestCase):
    """Tests for the config utility functions"""

    def setUp(self):
        """Set up the test environment"""
        # Create a temporary config file
        self.temp_file = tempfile.NamedTemporaryFile(delete=False, suffix=".yaml")
        self.temp_file.close()

        # Create test config
        self.test_config = {
            "problem": {"lambda_modulus": 50.0, "alpha": 2.0},
            "grid": {"n": 32},
            "run": {"seed": 11},
        }

        # Write test config to file
        with open(self.temp_file.name, "w") as f:
            yaml.dump(self.test_config, f)

        # Save the original environment
        self.original_env = os.environ.copy()
        os.environ.pop(config.CONFIG_ENV_VAR, None)

    def tearDown(self):
        """Clean up the test environment"""
        # Remove the temporary config file
        os.unlink(self.temp_file.name)

        # Restore the original environment
        os.environ.clear()
        os.environ.update(self.original_env)

    def test_load_config(self):
        """Test loading configuration from file"""
        # Test loading from a specific file
        loaded_config = config.load_config(self.temp_file.name)
        self.assertEqual(loaded_config, self.test_config)

        # Test loading from environment variable
        os.environ[config.CONFIG_ENV_VAR] = self.temp_file.name
        loaded_config = config.load_config()
        self.assertEqual(loaded_config, self.test_config)

    def test_missing_explicit_file(self):
        """Test that a missing file that was asked for is an error"""
        with self.assertRaises(config.ConfigFileError):
            config.load_config("nonexistent.yaml")

        os.environ[config.CONFIG_ENV_VAR] = "nonexistent.yaml"
        with self.assertRaises(config.ConfigFileError):
            config.load_config()

    def test_missing_default_file(self):
        """Test that a missing default config.yaml yields an empty configuration"""
        cwd = os.getcwd()
        with tempfile.TemporaryDirectory() as directory:
            os.chdir(directory)
            try:
                self.assertEqual(config.load_config(), {})
            finally:
                os.chdir(cwd)

    def test_invalid_yaml(self):
        """Test that unparsable YAML is an error"""
        with open(self.temp_file.name, "w") as f:
            f.write("problem: [unclosed\n")

        with self.assertRaises(config.ConfigFileError):
            config.load_config(self.temp_file.name)

    def test_non_mapping(self):
        """Test that a top-level list is rejected and an empty file is empty"""
        with open(self.temp_file.name, "w") as f:
            f.write("- 1\n- 2\n")
        with self.assertRaises(config.ConfigFileError):
            config.load_config(self.temp_file.name)

        with open(self.temp_file.name, "w") as f:
            f.write("")
        self.assertEqual(config.load_config(self.temp_file.name), {})

    def test_resolve_config_path(self):
        """Test the order of config path resolution"""
        self.assertEqual(config.resolve_config_path("a.yaml"), ("a.yaml", True))
        self.assertEqual(
            config.resolve_config_path(), (config.DEFAULT_CONFIG_FILE, False)
        )
        os.environ[config.CONFIG_ENV_VAR] = "b.yaml"
        self.assertEqual(config.resolve_config_path(), ("b.yaml", True))

    def test_parse_override(self):
        """Test parsing KEY=VALUE overrides as YAML scalars"""
        self.assertEqual(config.parse_override("problem.alpha=1.5"), ("problem.alpha", 1.5))
        self.assertEqual(config.parse_override("grid.n=32"), ("grid.n", 32))
        self.assertEqual(
            config.parse_override("sweep.alphas=[0, 1]"), ("sweep.alphas", [0, 1])
        )
        self.assertEqual(
            config.parse_override("sweep.experiment=decay"), ("sweep.experiment", "decay")
        )
        self.assertEqual(config.parse_override("run.workers="), ("run.workers", None))

    def test_parse_override_invalid(self):
        """Test that malformed overrides are rejected"""
        with self.assertRaises(config.ConfigFileError):
            config.parse_override("problem.alpha")
        with self.assertRaises(config.ConfigFileError):
            config.parse_override("=1")


if __name__ == "__main__":
    unittest.main()
