"""Grid geometry: shapes, 1-based coordinates, and flat-index conversion.

Coordinates follow the column/row convention (i, j) with 1 <= i <= cols and
1 <= j <= rows.  Flat indices are 0-based row-major: idx = (j-1)*cols + (i-1).
Only this module converts between the two; everything else works with whichever
representation suits it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundsError


@dataclass(frozen=True)
class GridShape:
    """Image dimensions: ``cols`` columns (n) by ``rows`` rows (m)."""

    cols: int
    rows: int

    def __post_init__(self) -> None:
        if self.cols < 1 or self.rows < 1:
            raise ValueError(f"grid must be at least 1x1, got {self.cols}x{self.rows}")

    @property
    def d_max(self) -> float:
        """Diagonal length sqrt(rows^2 + cols^2) used to normalize distances."""
        return math.sqrt(self.rows * self.rows + self.cols * self.cols)

    @property
    def num_pixels(self) -> int:
        return self.cols * self.rows

    @property
    def max_sq_dist(self) -> int:
        """Largest realizable squared distance between two grid points."""
        return (self.cols - 1) ** 2 + (self.rows - 1) ** 2

    def contains(self, i: int, j: int) -> bool:
        return 1 <= i <= self.cols and 1 <= j <= self.rows


@dataclass(frozen=True, order=True)
class Coord:
    """1-based grid coordinate: column ``i``, row ``j``."""

    i: int
    j: int


def require_in_bounds(c: Coord, shape: GridShape) -> None:
    if not shape.contains(c.i, c.j):
        raise BoundsError(f"coordinate ({c.i},{c.j}) outside {shape.cols}x{shape.rows} grid")


def coord_to_index(c: Coord, shape: GridShape) -> int:
    """Row-major 0-based flat index of a coordinate."""
    require_in_bounds(c, shape)
    return (c.j - 1) * shape.cols + (c.i - 1)


def index_to_coord(idx: int, shape: GridShape) -> Coord:
    if not 0 <= idx < shape.num_pixels:
        raise BoundsError(f"flat index {idx} outside {shape.cols}x{shape.rows} grid")
    return Coord(idx % shape.cols + 1, idx // shape.cols + 1)


def coord_arrays(shape: GridShape) -> tuple[np.ndarray, np.ndarray]:
    """Column and row coordinate (1-based) for every flat index, as int64 arrays."""
    idx = np.arange(shape.num_pixels, dtype=np.int64)
    return idx % shape.cols + 1, idx // shape.cols + 1
