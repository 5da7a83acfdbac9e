"""
Field dump format for dynstokes

A dump is a pair of files: ``<name>.json`` holds the header (grids,
components, representation and DFT convention) and ``<name>.bin`` the values
as little-endian float64 (re, im) pairs in C order, so the tangential index
varies slowest and the component fastest.
"""

import logging
import os
from typing import Union

import numpy as np

from ..models.errors import ShapeMismatchError
from ..utils.filesystem import load_json_file, save_json_file
from .containers import BoundaryField, PhysicalField, SpectralField
from .grids import TangentialGrid, WallGrid
from .transforms import DFT_CONVENTION

logger = logging.getLogger(__name__)

DUMP_FORMAT = "dynstokes-field"
DUMP_VERSION = 1
BINARY_DTYPE = "<c16"

AnyField = Union[PhysicalField, SpectralField, BoundaryField]


def save_field(field: AnyField, directory: str, name: str) -> dict:
    """
    Write a field dump

    Args:
        field: Field to write
        directory: Target directory (created if missing)
        name: Base name of the two dump files

    Returns:
        Dictionary with the paths of the header and the binary file
    """
    os.makedirs(directory, exist_ok=True)
    header_path = os.path.join(directory, f"{name}.json")
    binary_path = os.path.join(directory, f"{name}.bin")

    header = {"format": DUMP_FORMAT, "version": DUMP_VERSION}
    header.update(field.header())
    header["convention"] = DFT_CONVENTION
    header["dtype"] = "float64-le interleaved re,im"
    header["binary"] = os.path.basename(binary_path)

    with open(binary_path, "wb") as f:
        f.write(np.ascontiguousarray(field.values, dtype=BINARY_DTYPE).tobytes())
    save_json_file(header_path, header)
    logger.debug(f"Wrote field dump {header_path} ({field.values.shape})")

    return {"header": header_path, "binary": binary_path}


def load_field(directory: str, name: str) -> AnyField:
    """
    Read a field dump written by save_field

    Args:
        directory: Directory containing the dump
        name: Base name of the two dump files

    Returns:
        PhysicalField, SpectralField or BoundaryField
    """
    header_path = os.path.join(directory, f"{name}.json")
    header = load_json_file(header_path, default=None)
    if not header or header.get("format") != DUMP_FORMAT:
        raise ShapeMismatchError(f"{header_path} is not a field dump header")

    binary_path = os.path.join(directory, header.get("binary", f"{name}.bin"))
    shape = tuple(int(n) for n in header["shape"])
    values = np.fromfile(binary_path, dtype=BINARY_DTYPE)
    if values.size != int(np.prod(shape)):
        raise ShapeMismatchError(
            f"{binary_path} holds {values.size} values, header expects {shape}"
        )
    values = values.reshape(shape).astype(complex)

    tgrid = TangentialGrid.from_dict(header["tangential"])
    kind = header["kind"]
    if kind.startswith("boundary"):
        return BoundaryField(tgrid, values, spectral=kind == "boundary-spectral")
    wgrid = WallGrid([float(y) for y in header["levels"]])
    if kind == "spectral":
        return SpectralField(tgrid, wgrid, values)
    return PhysicalField(tgrid, wgrid, values)
