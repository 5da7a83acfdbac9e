"""
Field containers for dynstokes

Volume fields hold complex values indexed (tangential index..., wall level,
component); boundary fields drop the wall-level axis. Values are copied on
construction and made read-only.
"""

from typing import Any, Dict, Sequence

import numpy as np

from ..models.errors import ShapeMismatchError
from .grids import TangentialGrid, WallGrid


def _freeze(values) -> np.ndarray:
    array = np.array(values, dtype=complex)
    array.setflags(write=False)
    return array


class _VolumeField:
    """
    Complex vector field on the tangential x wall-level lattice
    """

    spectral = False

    def __init__(self, tgrid: TangentialGrid, wgrid: WallGrid, values):
        values = _freeze(values)
        expected = tgrid.shape + (wgrid.levels.size,)
        if values.ndim != len(expected) + 1 or values.shape[:-1] != expected:
            raise ShapeMismatchError(
                f"{type(self).__name__} values of shape {values.shape} do not fit "
                f"grids {expected} + (components,)"
            )
        if values.shape[-1] < 1:
            raise ShapeMismatchError("a field needs at least one component")
        self.tgrid = tgrid
        self.wgrid = wgrid
        self.values = values

    @property
    def components(self) -> int:
        return self.values.shape[-1]

    @classmethod
    def zeros(cls, tgrid: TangentialGrid, wgrid: WallGrid, components: int):
        return cls(
            tgrid, wgrid, np.zeros(tgrid.shape + (wgrid.levels.size, components))
        )

    def level(self, index: int) -> "BoundaryField":
        """
        Restrict the field to one wall level

        Args:
            index: Wall level index (0 is the trace)

        Returns:
            BoundaryField with the same components and representation
        """
        return BoundaryField(
            self.tgrid,
            self.values[..., index, :],
            spectral=self.spectral,
        )

    def trace(self) -> "BoundaryField":
        return self.level(0)

    def component(self, index: int):
        """Single-component field holding component ``index``"""
        return type(self)(self.tgrid, self.wgrid, self.values[..., index : index + 1])

    def with_values(self, values):
        return type(self)(self.tgrid, self.wgrid, values)

    def header(self) -> Dict[str, Any]:
        return {
            "kind": "spectral" if self.spectral else "physical",
            "tangential": self.tgrid.to_dict(),
            "levels": self.wgrid.levels.tolist(),
            "components": self.components,
            "shape": list(self.values.shape),
        }

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(shape={self.values.shape}, "
            f"n={self.tgrid.n}, M={self.wgrid.intervals})"
        )


class PhysicalField(_VolumeField):
    """Field sampled at tangential points and wall levels"""

    spectral = False


class SpectralField(_VolumeField):
    """Field given by its tangential DFT coefficients at every wall level"""

    spectral = True


class BoundaryField:
    """
    Field on the boundary level y = 0

    Attributes:
        tgrid: Tangential grid
        values: Complex array of shape (n,)*tdim + (components,)
        spectral: Whether values are DFT coefficients
    """

    def __init__(self, tgrid: TangentialGrid, values, spectral: bool = False):
        values = _freeze(values)
        if values.ndim != tgrid.tdim + 1 or values.shape[:-1] != tgrid.shape:
            raise ShapeMismatchError(
                f"BoundaryField values of shape {values.shape} do not fit "
                f"grid {tgrid.shape} + (components,)"
            )
        if values.shape[-1] < 1:
            raise ShapeMismatchError("a field needs at least one component")
        self.tgrid = tgrid
        self.values = values
        self.spectral = bool(spectral)

    @property
    def components(self) -> int:
        return self.values.shape[-1]

    @classmethod
    def zeros(cls, tgrid: TangentialGrid, components: int, spectral: bool = False):
        return cls(tgrid, np.zeros(tgrid.shape + (components,)), spectral=spectral)

    def with_values(self, values) -> "BoundaryField":
        return BoundaryField(self.tgrid, values, spectral=self.spectral)

    def header(self) -> Dict[str, Any]:
        return {
            "kind": "boundary-spectral" if self.spectral else "boundary-physical",
            "tangential": self.tgrid.to_dict(),
            "levels": [0.0],
            "components": self.components,
            "shape": list(self.values.shape),
        }

    def __repr__(self) -> str:
        kind = "spectral" if self.spectral else "physical"
        return f"BoundaryField({kind}, shape={self.values.shape})"


def require_components(field, components: int, name: str = "field") -> None:
    """
    Raise ShapeMismatchError unless a field has the given number of components

    Args:
        field: Any field container
        components: Expected component count
        name: Name used in the error message
    """
    if field.components != components:
        raise ShapeMismatchError(
            f"{name} must have {components} components, got {field.components}"
        )


def stack_components(fields: Sequence[_VolumeField]):
    """
    Concatenate the components of fields living on the same grids

    Args:
        fields: Volume fields of one representation on identical grids

    Returns:
        Field of the same type with all components in order
    """
    if not fields:
        raise ShapeMismatchError("nothing to stack")
    first = fields[0]
    for other in fields[1:]:
        if (
            type(other) is not type(first)
            or other.tgrid != first.tgrid
            or other.wgrid != first.wgrid
        ):
            raise ShapeMismatchError("stacked fields must share type and grids")
    return first.with_values(np.concatenate([f.values for f in fields], axis=-1))
