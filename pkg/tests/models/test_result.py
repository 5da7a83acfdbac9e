"""
Tests for the Result class
"""

import unittest
from dataclasses import dataclass

from src.dynstokes.models.result import Result


@dataclass
class TestData:
    """Test data class for Result tests"""

    name: str
    value: float

    def to_dict(self):
        return {"name": self.name, "value": self.value}


class TestResult(unittest.TestCase):
    """Tests for the Result class"""

    def test_success_result(self):
        """Test creating a successful result"""
        data = {"fitted_slope": -1.0}
        result = Result.success(data)

        self.assertTrue(result.success)
        self.assertEqual(result.data, data)
        self.assertIsNone(result.error)
        self.assertEqual(result.exit_code, 0)

    def test_failure_result(self):
        """Test creating a failed result"""
        error = "interior residual 1e-3 exceeds 1e-10"
        result = Result.failure(error)

        self.assertFalse(result.success)
        self.assertIsNone(result.data)
        self.assertEqual(result.error, error)
        self.assertEqual(result.exit_code, 1)

    def test_failure_keeps_data(self):
        """Test that a violated run still carries its data"""
        result = Result.failure("violated", data={"max": 2.0})

        self.assertEqual(result.data, {"max": 2.0})
        self.assertEqual(result.to_dict()["data"], {"max": 2.0})

    def test_metadata(self):
        """Test metadata in result"""
        metadata = {"seed": 7}
        result = Result.success("data", metadata)

        self.assertEqual(result.metadata, metadata)
        self.assertEqual(Result.success("data").metadata, {})

    def test_to_dict_simple(self):
        """Test to_dict with simple data"""
        result = Result.success("test data")
        result_dict = result.to_dict()

        self.assertTrue(result_dict["success"])
        self.assertEqual(result_dict["data"], "test data")
        self.assertNotIn("error", result_dict)

    def test_to_dict_with_object(self):
        """Test to_dict with an object that has to_dict"""
        result = Result.success(TestData("m1", 2.5))

        self.assertEqual(result.to_dict()["data"], {"name": "m1", "value": 2.5})

    def test_to_dict_with_list(self):
        """Test to_dict with a list of objects"""
        result = Result.success([TestData("a", 1.0), TestData("b", 2.0)])

        self.assertEqual(
            result.to_dict()["data"],
            [{"name": "a", "value": 1.0}, {"name": "b", "value": 2.0}],
        )

    def test_to_dict_failure(self):
        """Test to_dict with a failed result"""
        result_dict = Result.failure("bad").to_dict()

        self.assertFalse(result_dict["success"])
        self.assertEqual(result_dict["error"], "bad")
        self.assertNotIn("data", result_dict)


if __name__ == "__main__":
    unittest.main()
