"""Vertex-indexed scalar fields and ordered collections of them."""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class ScalarField:
    """One real value per mesh vertex, plus a provenance tag.

    Interoperates with numpy: ``np.asarray(field)`` returns the raw values,
    so fields can be passed directly to numerical routines.
    """

    values: np.ndarray
    tag: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1:
            raise ValueError("scalar field must be one-dimensional")
        # +inf is allowed (graph distances on a disconnected mesh); NaN never
        if np.any(np.isnan(self.values)):
            raise ValueError("scalar field contains NaN")

    def __array__(self, dtype=None, copy=None):
        if dtype is not None:
            return self.values.astype(dtype)
        return self.values

    def __len__(self):
        return len(self.values)


def field_values(f) -> np.ndarray:
    """Coerce a ScalarField or array-like to a 1-D float array."""
    if isinstance(f, ScalarField):
        return f.values
    return np.asarray(f, dtype=float)


@dataclass
class BasisSet:
    """Ordered list of basis functions sharing one mesh.

    family identifies how the set was generated (harmonic, eigen,
    diffusion, ...); seeds or indices record which vertices or eigen
    indices produced each member; params holds generation parameters.
    """

    fields: list
    family: str
    seeds: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(field_values(f)) for f in self.fields}
        if len(lengths) > 1:
            raise ValueError("basis fields have mismatched lengths")

    def __len__(self):
        return len(self.fields)

    def __iter__(self):
        return iter(self.fields)

    def __getitem__(self, i):
        return self.fields[i]

    def matrix(self) -> np.ndarray:
        """Stack the member fields as columns of an (n, m) array."""
        return np.column_stack([field_values(f) for f in self.fields])
