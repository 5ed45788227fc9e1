"""Neighbor-information functional for images under coordinate transformations.

Information is carried by pixel *positions* only.  Every ordered pair of grid
points (self-pairs included) contributes a pair value in (0, 1) that decays
with their normalized distance d~ = d / sqrt(rows^2 + cols^2) through a
Z-shaped sigmoid 1 - 1/(1 + exp(6 - 18 d~)).  A transformation is scored by
recomputing each pair's value at the pair's new positions and taking the ratio
of transformed to original totals (1.0 for the identity).

Because grid coordinates are integers, squared distances are integers, so the
pair function has a small finite domain and is tabulated once per shape
(NeighborKernel); totals over the ~10^6 ordered pairs of a 32x32 image then
reduce to table lookups.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSwapError, InvalidMapError
from .grid import Coord, GridShape, coord_arrays, coord_to_index, require_in_bounds
from .pixmap import PixelMap

# Source pixels are processed in fixed-size blocks so that totals are
# bit-identical for any thread count: each block's partial sum is computed the
# same way regardless of scheduling, and partials are reduced in block order.
_BLOCK = 128


@dataclass(frozen=True)
class InfoReport:
    """Totals over all ordered pixel pairs and their ratio."""

    total_original: float
    total_transformed: float
    upsilon: float


def reduced_distance(p: Coord, q: Coord, shape: GridShape) -> float:
    """Euclidean distance between p and q divided by the grid diagonal."""
    require_in_bounds(p, shape)
    require_in_bounds(q, shape)
    return math.hypot(p.i - q.i, p.j - q.j) / shape.d_max


def pair_info(p: Coord, q: Coord, shape: GridShape) -> float:
    """Pair information 1 - 1/(1 + exp(6 - 18 d~)); symmetric, in (0, 1)."""
    return 1.0 - 1.0 / (1.0 + math.exp(6.0 - 18.0 * reduced_distance(p, q, shape)))


class NeighborKernel:
    """Total tabulation of the pair function by integer squared distance."""

    __slots__ = ("shape", "table")

    def __init__(self, shape: GridShape, table: np.ndarray):
        table = np.ascontiguousarray(table, dtype=np.float64)
        table.flags.writeable = False
        self.shape = shape
        self.table = table

    def lookup_sq(self, sq_dist: int) -> float:
        return float(self.table[sq_dist])


def build_kernel(shape: GridShape) -> NeighborKernel:
    """Tabulate the pair function for every squared distance realizable on the grid."""
    q = np.arange(shape.max_sq_dist + 1, dtype=np.float64)
    table = 1.0 - 1.0 / (1.0 + np.exp(6.0 - 18.0 * np.sqrt(q) / shape.d_max))
    return NeighborKernel(shape, table)


def pixel_neighbor_info(p: Coord, shape: GridShape, kernel: NeighborKernel) -> float:
    """Sum of pair information between p and every grid point (self included)."""
    require_in_bounds(p, shape)
    _check_kernel(kernel, shape)
    xs, ys = coord_arrays(shape)
    sq = (xs - p.i) ** 2 + (ys - p.j) ** 2
    return float(kernel.table[sq].sum())


def transformed_pair_info(p: Coord, q: Coord, pmap: PixelMap, shape: GridShape) -> float:
    """Pair value after transformation: [1 - (m_old - m_new)] * m_old.

    m_old is the pair value at the original positions, m_new the value at the
    mapped positions.  Fixed pairs keep their original value exactly.
    """
    if pmap.shape != shape:
        raise InvalidMapError("map shape does not match grid shape")
    a = pair_info(p, q, shape)
    b = pair_info(pmap.map_coord(p), pmap.map_coord(q), shape)
    return (1.0 - (a - b)) * a


def total_original_info(shape: GridShape, kernel: NeighborKernel) -> float:
    """Sum of pair information over all ordered pairs of the untransformed grid.

    Uses the displacement histogram: (dx, dy) occurs (cols-|dx|)*(rows-|dy|)
    times, so the double sum collapses to O(cols*rows) terms.
    """
    _check_kernel(kernel, shape)
    dx = np.arange(-(shape.cols - 1), shape.cols, dtype=np.int64)
    dy = np.arange(-(shape.rows - 1), shape.rows, dtype=np.int64)
    counts = (shape.cols - np.abs(dx))[:, None] * (shape.rows - np.abs(dy))[None, :]
    sq = dx[:, None] ** 2 + dy[None, :] ** 2
    return float(np.sum(counts * kernel.table[sq]))


def remaining_info(
    pmap: PixelMap,
    shape: GridShape,
    kernel: NeighborKernel,
    *,
    threads: int = 1,
) -> InfoReport:
    """Original and transformed totals over all ordered pairs, and their ratio.

    The result is independent of ``threads``: partial sums are taken over
    fixed source-pixel blocks and reduced in block order with exact (fsum)
    accumulation.
    """
    if pmap.shape != shape:
        raise InvalidMapError("map shape does not match grid shape")
    _check_kernel(kernel, shape)

    xs, ys = coord_arrays(shape)
    mx, my = xs[pmap.forward], ys[pmap.forward]
    table = kernel.table
    n_px = shape.num_pixels

    def block_partials(start: int) -> tuple[float, float]:
        stop = min(start + _BLOCK, n_px)
        sq_old = (xs[start:stop, None] - xs[None, :]) ** 2 + (ys[start:stop, None] - ys[None, :]) ** 2
        sq_new = (mx[start:stop, None] - mx[None, :]) ** 2 + (my[start:stop, None] - my[None, :]) ** 2
        a = table[sq_old]
        b = table[sq_new]
        return float(a.sum()), float(((1.0 - a + b) * a).sum())

    starts = range(0, n_px, _BLOCK)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(block_partials, starts))
    else:
        partials = [block_partials(s) for s in starts]

    total_original = math.fsum(p[0] for p in partials)
    total_transformed = math.fsum(p[1] for p in partials)
    return InfoReport(total_original, total_transformed, total_transformed / total_original)


def swap_delta(p1: Coord, p2: Coord, shape: GridShape, kernel: NeighborKernel) -> float:
    """Change in total information when p1 and p2 trade places.

    Exchanging two pixels changes only the ordered pairs that involve exactly
    one of them; each remaining grid point x contributes -2*(m(x,p1)-m(x,p2))^2,
    so the total is never positive.  Agrees with the brute-force pairwise total
    of the transposition map.
    """
    if p1 == p2:
        raise DegenerateSwapError(f"swap endpoints coincide at ({p1.i},{p1.j})")
    require_in_bounds(p1, shape)
    require_in_bounds(p2, shape)
    _check_kernel(kernel, shape)
    xs, ys = coord_arrays(shape)
    m1 = kernel.table[(xs - p1.i) ** 2 + (ys - p1.j) ** 2]
    m2 = kernel.table[(xs - p2.i) ** 2 + (ys - p2.j) ** 2]
    diff_sq = (m1 - m2) ** 2
    idx1 = coord_to_index(p1, shape)
    idx2 = coord_to_index(p2, shape)
    return -2.0 * float(diff_sq.sum() - diff_sq[idx1] - diff_sq[idx2])


def _check_kernel(kernel: NeighborKernel, shape: GridShape) -> None:
    if kernel.shape != shape:
        raise InvalidMapError("kernel was built for a different grid shape")
