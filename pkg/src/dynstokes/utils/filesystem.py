"""
Filesystem utilities for dynstokes

Reports are written with a fixed float format (17 significant digits),
complex numbers as [re, im] and non-finite values as strings, so identical
runs produce byte-identical files.
"""

import csv
import json
import math
import os
from enum import Enum
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np


def setup_directory_structure(base_dir):
    """
    Set up the output directory layout

    Args:
        base_dir: Output directory of the run

    Returns:
        Dictionary with paths to the output, tables and fields directories
    """
    os.makedirs(base_dir, exist_ok=True)
    tables_dir = os.path.join(base_dir, "tables")
    fields_dir = os.path.join(base_dir, "fields")

    return {
        "out_dir": base_dir,
        "tables_dir": tables_dir,
        "fields_dir": fields_dir,
    }


def format_float(value: float) -> str:
    """
    Format a float with exactly 17 significant digits

    Args:
        value: Float value

    Returns:
        JSON token (a number, or a quoted string for nan/inf)
    """
    if math.isnan(value):
        return '"nan"'
    if math.isinf(value):
        return '"inf"' if value > 0 else '"-inf"'
    return format(value, ".16e")


def to_serializable(obj: Any) -> Any:
    """
    Convert numpy values, complex numbers and model objects to plain data

    Args:
        obj: Any report value

    Returns:
        Nested structure of dict, list, str, int, float, bool and None
    """
    if hasattr(obj, "to_dict") and callable(getattr(obj, "to_dict")):
        return to_serializable(obj.to_dict())
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(key): to_serializable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_serializable(item) for item in obj]
    if isinstance(obj, np.ndarray):
        return [to_serializable(item) for item in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    return obj


def _encode(obj: Any, indent: int, depth: int) -> str:
    pad = " " * (indent * (depth + 1))
    end = " " * (indent * depth)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(key, ensure_ascii=False)}: {_encode(value, indent, depth + 1)}"
            for key, value in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(item, (dict, list)) for item in obj):
            return "[" + ", ".join(_encode(item, indent, depth + 1) for item in obj) + "]"
        items = [f"{pad}{_encode(item, indent, depth + 1)}" for item in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_report(data: Any, indent: int = 2) -> str:
    """
    Serialize report data deterministically

    Args:
        data: Report data (converted with to_serializable)
        indent: Indentation width

    Returns:
        JSON text
    """
    return _encode(to_serializable(data), indent, 0) + "\n"


def load_json_file(file_path, default=None):
    """
    Load JSON from file

    Args:
        file_path: Path to JSON file
        default: Default value if file doesn't exist or is invalid

    Returns:
        Parsed JSON data or default value
    """
    if default is None:
        default = {}

    if os.path.exists(file_path):
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError:
            return default

    return default


def save_json_file(file_path, data):
    """
    Save data to a JSON file in the deterministic report format

    Args:
        file_path: Path to JSON file
        data: Data to save
    """
    directory = os.path.dirname(file_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(file_path, "w", encoding="utf-8") as f:
        f.write(dumps_report(data))


def _csv_cell(value: Any) -> str:
    value = to_serializable(value)
    if isinstance(value, float):
        return format_float(value).strip('"')
    if isinstance(value, list):
        return " ".join(_csv_cell(item) for item in value)
    if value is None:
        return ""
    return str(value)


def save_csv_table(
    file_path, columns: Sequence[str], rows: Iterable[Dict[str, Any]]
) -> int:
    """
    Save rows to a CSV table

    Args:
        file_path: Path to the CSV file
        columns: Column names, in output order
        rows: Row dictionaries keyed by column name

    Returns:
        Number of rows written
    """
    directory = os.path.dirname(file_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    count = 0
    with open(file_path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(list(columns))
        for row in rows:
            writer.writerow([_csv_cell(row.get(column)) for column in columns])
            count += 1
    return count


def read_csv_table(file_path) -> List[Dict[str, str]]:
    """
    Read a CSV table written by save_csv_table

    Args:
        file_path: Path to the CSV file

    Returns:
        List of row dictionaries with string values
    """
    with open(file_path, "r", encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))
