from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    """Square window ``[-extent, extent]^2`` (units of r) with ``resolution`` points per axis."""

    extent: float
    resolution: int

    def __post_init__(self):
        if not self.extent > 0:
            raise ValueError(f"extent must be positive, got {self.extent}")
        if int(self.resolution) != self.resolution or self.resolution < 2:
            raise ValueError(f"resolution must be an integer >= 2, got {self.resolution}")

    @classmethod
    def from_spacing(cls, extent: float, h: float) -> GridSpec:
        n = int(round(2 * extent / h)) + 1
        return cls(extent, n)

    @property
    def axis(self) -> np.ndarray:
        i = np.arange(self.resolution)
        return -self.extent + 2 * self.extent * i / (self.resolution - 1)

    @property
    def spacing(self) -> float:
        return 2 * self.extent / (self.resolution - 1)

    def mesh(self):
        """(X, Y) arrays of shape (ny, nx); rows run over y, columns over x."""
        a = self.axis
        return np.meshgrid(a, a, indexing="xy")

    def as_dict(self) -> dict:
        return {"extent": self.extent, "resolution": self.resolution}
