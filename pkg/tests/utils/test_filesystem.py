"""
Tests for the filesystem utility functions
"""

import json
import math
import os
import tempfile
import unittest

import numpy as np

from src.dynstokes.utils import filesystem


class TestReportFormat(unittest.TestCase):
    """Tests for the deterministic report serialization"""

    def test_format_float(self):
        """Test the fixed 17-digit float format"""
        self.assertEqual(filesystem.format_float(1.0), "1.0000000000000000e+00")
        self.assertEqual(filesystem.format_float(math.nan), '"nan"')
        self.assertEqual(filesystem.format_float(math.inf), '"inf"')
        self.assertEqual(filesystem.format_float(-math.inf), '"-inf"')

    def test_round_trip_precision(self):
        """Test that formatted floats parse back to the same value"""
        for value in (math.pi, 1e-300, -2.5e17, 0.1):
            text = filesystem.format_float(value)
            self.assertEqual(float(text), value)

    def test_to_serializable(self):
        """Test conversion of numpy and complex values"""
        data = filesystem.to_serializable(
            {
                "array": np.array([1.0, 2.0]),
                "complex": 1.0 + 2.0j,
                "int": np.int64(3),
                "flag": np.bool_(True),
                "tuple": (1, 2),
            }
        )

        self.assertEqual(data["array"], [1.0, 2.0])
        self.assertEqual(data["complex"], [1.0, 2.0])
        self.assertIsInstance(data["int"], int)
        self.assertIs(data["flag"], True)
        self.assertEqual(data["tuple"], [1, 2])

    def test_dumps_report_is_json(self):
        """Test that the report text parses as JSON"""
        text = filesystem.dumps_report(
            {"success": True, "value": 0.5, "items": [{"a": None}], "empty": {}}
        )
        parsed = json.loads(text)

        self.assertEqual(parsed, {"success": True, "value": 0.5, "items": [{"a": None}], "empty": {}})

    def test_dumps_report_deterministic(self):
        """Test that identical data yields identical bytes"""
        data = {"b": [1.0, 2.0], "a": {"x": math.nan}}

        self.assertEqual(filesystem.dumps_report(data), filesystem.dumps_report(data))
        self.assertIn('"nan"', filesystem.dumps_report(data))

    def test_dumps_report_rejects_unknown(self):
        """Test that unsupported objects are rejected"""
        with self.assertRaises(TypeError):
            filesystem.dumps_report({"x": object()})


class TestFiles(unittest.TestCase):
    """Tests for reading and writing report files"""

    def setUp(self):
        """Set up the test environment"""
        self.temp_dir = tempfile.TemporaryDirectory()
        self.base = self.temp_dir.name

    def tearDown(self):
        """Clean up the test environment"""
        self.temp_dir.cleanup()

    def test_setup_directory_structure(self):
        """Test the output directory layout"""
        out_dir = os.path.join(self.base, "out")
        dirs = filesystem.setup_directory_structure(out_dir)

        self.assertTrue(os.path.isdir(out_dir))
        self.assertEqual(dirs["tables_dir"], os.path.join(out_dir, "tables"))
        self.assertEqual(dirs["fields_dir"], os.path.join(out_dir, "fields"))

    def test_json_file(self):
        """Test saving and loading a JSON report"""
        path = os.path.join(self.base, "nested", "report.json")
        filesystem.save_json_file(path, {"slope": -1.0})

        self.assertEqual(filesystem.load_json_file(path), {"slope": -1.0})
        self.assertEqual(filesystem.load_json_file(os.path.join(self.base, "none.json")), {})

    def test_load_invalid_json(self):
        """Test that invalid JSON falls back to the default"""
        path = os.path.join(self.base, "bad.json")
        with open(path, "w") as f:
            f.write("{")

        self.assertEqual(filesystem.load_json_file(path, default=[]), [])

    def test_csv_table(self):
        """Test saving and reading a CSV table"""
        path = os.path.join(self.base, "tables", "decay.csv")
        count = filesystem.save_csv_table(
            path,
            ["modulus", "norm", "label", "missing"],
            [{"modulus": 100.0, "norm": 0.25, "label": "a"}, {"modulus": 1000.0, "norm": math.nan}],
        )
        rows = filesystem.read_csv_table(path)

        self.assertEqual(count, 2)
        self.assertEqual(float(rows[0]["modulus"]), 100.0)
        self.assertEqual(rows[0]["label"], "a")
        self.assertEqual(rows[0]["missing"], "")
        self.assertEqual(rows[1]["norm"], "nan")


if __name__ == "__main__":
    unittest.main()
