"""Dense bijective coordinate maps on a grid and their algebra.

A PixelMap stores, for every source pixel, the flat index of its target
position.  All transformations in this package (swaps, random permutations,
vortex maps, and their compositions) reduce to this one representation, which
makes application O(1) per pixel, serialization exact, and bijectivity
auditable.
"""

from __future__ import annotations

import hashlib
import struct

import numpy as np

from .errors import DegenerateSwapError, InvalidMapError
from .grid import Coord, GridShape, coord_to_index, index_to_coord

_MAGIC = b"PMAP"
_FORMAT_VERSION = 1

# Fixed, platform-independent generator for all seeded randomness
# ("random" baselines must yield identical maps on every platform).
PRNG_NAME = "numpy-pcg64"


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


class PixelMap:
    """A bijection on grid coordinates, stored as a flat target-index array.

    ``forward[src]`` is the flat index the pixel at flat index ``src`` moves to.
    Instances are immutable; the underlying array is read-only.
    """

    __slots__ = ("shape", "forward")

    def __init__(self, shape: GridShape, forward: np.ndarray, *, _audited: bool = False):
        forward = np.ascontiguousarray(forward, dtype=np.int64)
        if forward.shape != (shape.num_pixels,):
            raise InvalidMapError(
                f"forward array has length {forward.size}, expected {shape.num_pixels}"
            )
        if not _audited and not _is_bijection(forward):
            raise InvalidMapError("forward array is not a bijection on the grid")
        forward.flags.writeable = False
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "forward", forward)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("PixelMap is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PixelMap):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.forward, other.forward)

    def __hash__(self) -> int:
        return hash((self.shape, self.forward.tobytes()))

    def __repr__(self) -> str:
        return f"PixelMap({self.shape.cols}x{self.shape.rows}, moved={self.moved_count()})"

    def map_coord(self, c: Coord) -> Coord:
        """Target coordinate of the pixel at ``c``."""
        return index_to_coord(int(self.forward[coord_to_index(c, self.shape)]), self.shape)

    __call__ = map_coord

    def moved_count(self) -> int:
        return int(np.sum(self.forward != np.arange(self.shape.num_pixels)))

    def is_identity(self) -> bool:
        return self.moved_count() == 0

    def apply_to_image(self, image: np.ndarray) -> np.ndarray:
        """Scatter pixel values to their target positions.

        ``image`` has shape (..., rows, cols); leading axes (batch, channel)
        all share the same map.  Returns a new array of the same dtype/shape.
        """
        rows, cols = self.shape.rows, self.shape.cols
        if image.ndim < 2 or image.shape[-2] != rows or image.shape[-1] != cols:
            raise InvalidMapError(
                f"image shape {image.shape} does not end in ({rows}, {cols})"
            )
        flat = np.ascontiguousarray(image).reshape(*image.shape[:-2], rows * cols)
        out = np.empty_like(flat)
        out[..., self.forward] = flat
        return out.reshape(image.shape)

    def to_bytes(self) -> bytes:
        """Serialize: magic "PMAP", u32 version, u32 cols, u32 rows, then
        one little-endian u32 target index per source index."""
        header = _MAGIC + struct.pack("<III", _FORMAT_VERSION, self.shape.cols, self.shape.rows)
        return header + self.forward.astype("<u4").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "PixelMap":
        if len(data) < 16 or data[:4] != _MAGIC:
            raise InvalidMapError("not a PMAP blob")
        version, cols, rows = struct.unpack("<III", data[4:16])
        if version != _FORMAT_VERSION:
            raise InvalidMapError(f"unsupported PMAP version {version}")
        shape = GridShape(cols, rows)
        body = data[16:]
        if len(body) != 4 * shape.num_pixels:
            raise InvalidMapError("PMAP payload length does not match declared shape")
        forward = np.frombuffer(body, dtype="<u4").astype(np.int64)
        return cls(shape, forward)

    def digest(self) -> str:
        """Hex SHA-256 of the serialized map."""
        return hashlib.sha256(self.to_bytes()).hexdigest()


def _is_bijection(forward: np.ndarray) -> bool:
    if forward.size == 0:
        return True
    if forward.min() < 0 or forward.max() >= forward.size:
        return False
    seen = np.zeros(forward.size, dtype=bool)
    seen[forward] = True
    return bool(seen.all())


def identity(shape: GridShape) -> PixelMap:
    return PixelMap(shape, np.arange(shape.num_pixels, dtype=np.int64), _audited=True)


def transposition(p1: Coord, p2: Coord, shape: GridShape) -> PixelMap:
    """Swap exactly two coordinates, fixing all others."""
    if p1 == p2:
        raise DegenerateSwapError(f"cannot swap ({p1.i},{p1.j}) with itself")
    a = coord_to_index(p1, shape)
    b = coord_to_index(p2, shape)
    forward = np.arange(shape.num_pixels, dtype=np.int64)
    forward[a], forward[b] = b, a
    return PixelMap(shape, forward, _audited=True)


def random_permutation(shape: GridShape, seed: int) -> PixelMap:
    """Uniform random permutation of all pixel positions (PCG64, fixed draw order)."""
    forward = _rng(seed).permutation(shape.num_pixels).astype(np.int64)
    return PixelMap(shape, forward, _audited=True)


def compose(outer: PixelMap, inner: PixelMap) -> PixelMap:
    """The map sending p to outer(inner(p))."""
    if outer.shape != inner.shape:
        raise InvalidMapError(
            f"cannot compose maps on {inner.shape.cols}x{inner.shape.rows} "
            f"and {outer.shape.cols}x{outer.shape.rows} grids"
        )
    return PixelMap(outer.shape, outer.forward[inner.forward], _audited=True)


def invert(pmap: PixelMap) -> PixelMap:
    inverse = np.empty(pmap.shape.num_pixels, dtype=np.int64)
    inverse[pmap.forward] = np.arange(pmap.shape.num_pixels, dtype=np.int64)
    return PixelMap(pmap.shape, inverse, _audited=True)
