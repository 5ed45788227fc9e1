"""Random vortex transformation: keyed, exactly invertible ring rotations.

A vortex is a disk around a center (i0, j0) with radius R and a coefficient
function f built from a small bank of term families.  Every lattice point in
the disk belongs to the ring of points sharing its exact integer squared
distance q from the center; each ring is rotated rigidly by the angle
(R - sqrt(q)) * f(sqrt(q)), discretized to a cyclic shift of the ring's members
in angular order.  Ring shifts are bijections, so the whole transformation is
exactly invertible no matter how wild f is; points outside the disk, the
center, and the boundary ring (where the angle factor vanishes) stay fixed.

A key is an ordered list of vortex specs; encryption composes their maps in
list order and scatters pixel values through the composite.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import InvalidKeyError, OutOfDiskError
from .grid import Coord, GridShape, coord_to_index
from .pixmap import PixelMap, compose, identity, invert

KEY_FORMAT_VERSION = 1

TWO_PI = 2.0 * math.pi

# Term families: a*sin(b*d+c), a*cos(b*d+c), a*d^k, a*sqrt(d), a*ln(d+1),
# a*lg(d+1), a*e^d, a*e^(2d), a*2^d.
TERM_KINDS = ("sin", "cos", "poly", "sqrt", "ln1p", "log10_1p", "exp", "exp2d", "pow2")
_TRIG_KINDS = ("sin", "cos")


@dataclass(frozen=True)
class FunctionTerm:
    """One additive term of a vortex coefficient function."""

    kind: str
    amplitude: float
    inner_scale: float = 0.0
    inner_shift: float = 0.0
    degree: int = 1

    def __post_init__(self) -> None:
        if self.kind not in TERM_KINDS:
            raise InvalidKeyError(f"unknown term kind {self.kind!r}")
        for name in ("amplitude", "inner_scale", "inner_shift"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidKeyError(f"term {self.kind}: {name} must be finite")
        if self.kind == "poly" and not 1 <= self.degree <= 5:
            raise InvalidKeyError(f"poly degree must be in [1, 5], got {self.degree}")

    def evaluate(self, d: float) -> float:
        a = self.amplitude
        try:
            if self.kind == "sin":
                return a * math.sin(self.inner_scale * d + self.inner_shift)
            if self.kind == "cos":
                return a * math.cos(self.inner_scale * d + self.inner_shift)
            if self.kind == "poly":
                return a * d**self.degree
            if self.kind == "sqrt":
                return a * math.sqrt(d)
            if self.kind == "ln1p":
                return a * math.log1p(d)
            if self.kind == "log10_1p":
                return a * math.log10(d + 1.0)
            if self.kind == "exp":
                return a * math.exp(d)
            if self.kind == "exp2d":
                return a * math.exp(2.0 * d)
            return a * 2.0**d  # pow2
        except OverflowError:
            return math.inf

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "amplitude": self.amplitude}
        if self.kind in _TRIG_KINDS:
            out["inner_scale"] = self.inner_scale
            out["inner_shift"] = self.inner_shift
        elif self.kind == "poly":
            out["degree"] = self.degree
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "FunctionTerm":
        try:
            kind = d["kind"]
            amplitude = float(d["amplitude"])
            if kind in _TRIG_KINDS:
                return cls(kind, amplitude, float(d["inner_scale"]), float(d["inner_shift"]))
            if kind == "poly":
                return cls(kind, amplitude, degree=int(d["degree"]))
            return cls(kind, amplitude)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidKeyError(f"malformed term entry {d!r}") from exc


@dataclass(frozen=True)
class RandomFunction:
    """Sum of function terms; sampled functions carry 2-5 terms."""

    terms: tuple[FunctionTerm, ...]

    def __call__(self, d: float) -> float:
        return math.fsum(t.evaluate(d) for t in self.terms)


@dataclass(frozen=True)
class VortexSpec:
    """One vortex: center, radius, coefficient function."""

    center: Coord
    radius: float
    function: RandomFunction

    def validate_for(self, shape: GridShape) -> None:
        i0, j0 = self.center.i, self.center.j
        if not shape.contains(i0, j0):
            raise InvalidKeyError(f"vortex center ({i0},{j0}) outside grid")
        if self.radius <= 0:
            raise InvalidKeyError(f"vortex radius must be positive, got {self.radius}")
        limit = min(shape.cols - i0, i0, shape.rows - j0, j0)
        if self.radius > limit:
            raise InvalidKeyError(
                f"radius {self.radius} exceeds limit {limit} for center ({i0},{j0}) "
                f"on {shape.cols}x{shape.rows}"
            )

    def to_dict(self) -> dict:
        radius = int(self.radius) if float(self.radius).is_integer() else self.radius
        return {
            "center": [self.center.i, self.center.j],
            "radius": radius,
            "terms": [t.to_dict() for t in self.function.terms],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VortexSpec":
        try:
            i0, j0 = (int(v) for v in d["center"])
            radius = d["radius"]
            terms = tuple(FunctionTerm.from_dict(t) for t in d["terms"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidKeyError(f"malformed vortex spec {d!r}") from exc
        return cls(Coord(i0, j0), radius, RandomFunction(terms))


@dataclass(frozen=True)
class VortexKey:
    """Ordered vortex specs plus the shape and seed that produced them."""

    shape: GridShape
    specs: tuple[VortexSpec, ...]
    seed: int
    format_version: int = KEY_FORMAT_VERSION

    def validate(self) -> None:
        if self.format_version != KEY_FORMAT_VERSION:
            raise InvalidKeyError(f"unsupported key format version {self.format_version}")
        for spec in self.specs:
            spec.validate_for(self.shape)

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "shape": [self.shape.cols, self.shape.rows],
            "seed": self.seed,
            "specs": [s.to_dict() for s in self.specs],
        }

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.to_dict(), separators=(",", ":")).encode("ascii")

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_bytes()).hexdigest()

    @classmethod
    def from_dict(cls, d: dict) -> "VortexKey":
        try:
            cols, rows = (int(v) for v in d["shape"])
            key = cls(
                shape=GridShape(cols, rows),
                specs=tuple(VortexSpec.from_dict(s) for s in d["specs"]),
                seed=int(d["seed"]),
                format_version=int(d["format_version"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidKeyError(f"malformed key document: {exc}") from exc
        key.validate()
        return key


def write_key(key: VortexKey, path: str | Path) -> None:
    """Write the canonical key JSON (digest of the file equals key.digest())."""
    Path(path).write_bytes(key.canonical_bytes())


def read_key(path: str | Path) -> VortexKey:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidKeyError(f"cannot read key file {path}: {exc}") from exc
    return VortexKey.from_dict(doc)


@dataclass(frozen=True)
class RingBand:
    """All grid points at one exact squared distance from a vortex center,
    in ascending polar-angle order."""

    sq_dist: int
    members: tuple[Coord, ...] = field(repr=False)


def _angle_rank(di: int, dj: int) -> tuple[int, Fraction]:
    """Sort key equivalent to ascending atan2(dj, di), in exact arithmetic.

    Quadrant classes follow atan2's range (-pi, pi]; within a half-plane the
    cotangent di/dj is strictly decreasing in angle, so -di/dj sorts ascending.
    """
    if dj < 0:
        return (0, -Fraction(di, dj))
    if dj == 0:
        return (1, Fraction(0)) if di > 0 else (3, Fraction(0))
    return (2, -Fraction(di, dj))


def ring_decomposition(spec: VortexSpec, shape: GridShape) -> list[RingBand]:
    """Group the disk's lattice points (center excluded) into exact-distance rings."""
    spec.validate_for(shape)
    i0, j0 = spec.center.i, spec.center.j
    r_ceil = math.ceil(spec.radius)
    r_sq = spec.radius * spec.radius
    groups: dict[int, list[Coord]] = {}
    for j in range(max(1, j0 - r_ceil), min(shape.rows, j0 + r_ceil) + 1):
        for i in range(max(1, i0 - r_ceil), min(shape.cols, i0 + r_ceil) + 1):
            q = (i - i0) ** 2 + (j - j0) ** 2
            if 0 < q <= r_sq:
                groups.setdefault(q, []).append(Coord(i, j))
    bands = []
    for q in sorted(groups):
        members = sorted(groups[q], key=lambda c: _angle_rank(c.i - i0, c.j - j0))
        bands.append(RingBand(q, tuple(members)))
    return bands


def eval_angle_offset(spec: VortexSpec, d: float) -> float:
    """Rotation angle (R - d) * f(d) for the ring at center distance d,
    reduced into [0, 2pi)."""
    if d < 0.0 or d > spec.radius:
        raise OutOfDiskError(f"distance {d} outside [0, {spec.radius}]")
    raw = (spec.radius - d) * spec.function(d)
    if not math.isfinite(raw):
        raise InvalidKeyError(f"vortex function not finite at d={d}")
    return raw % TWO_PI


def band_shift(band: RingBand, delta_theta: float) -> int:
    """Cyclic shift count for a band rotated by delta_theta.

    Rounds half away from zero so the discretization is identical everywhere.
    """
    size = len(band.members)
    if size == 0:
        raise InvalidKeyError("cannot shift an empty band")
    x = (delta_theta % TWO_PI) * size / TWO_PI
    return int(math.floor(x + 0.5)) % size


def vortex_map(spec: VortexSpec, shape: GridShape) -> PixelMap:
    """Bijective pixel map of a single vortex."""
    spec.validate_for(shape)
    forward = np.arange(shape.num_pixels, dtype=np.int64)
    for band in ring_decomposition(spec, shape):
        d = min(math.sqrt(band.sq_dist), spec.radius)
        k = band_shift(band, eval_angle_offset(spec, d))
        if k == 0:
            continue
        size = len(band.members)
        idx = [coord_to_index(c, shape) for c in band.members]
        for t in range(size):
            forward[idx[t]] = idx[(t + k) % size]
    return PixelMap(shape, forward)


def sample_function(rng: np.random.Generator) -> RandomFunction:
    """Draw 2-5 terms from the term bank; amplitudes in [-2, 2], trig
    frequency/phase in [0, 2].  Draw order is fixed and part of the format."""
    terms = []
    for _ in range(int(rng.integers(2, 6))):
        kind = TERM_KINDS[int(rng.integers(0, len(TERM_KINDS)))]
        amplitude = float(rng.uniform(-2.0, 2.0))
        if kind in _TRIG_KINDS:
            terms.append(
                FunctionTerm(kind, amplitude, float(rng.uniform(0.0, 2.0)), float(rng.uniform(0.0, 2.0)))
            )
        elif kind == "poly":
            terms.append(FunctionTerm(kind, amplitude, degree=int(rng.integers(1, 6))))
        else:
            terms.append(FunctionTerm(kind, amplitude))
    return RandomFunction(tuple(terms))


def sample_spec(shape: GridShape, rng: np.random.Generator) -> VortexSpec:
    """Draw one vortex: center uniform over positions admitting a radius,
    radius uniform over the admissible integers, then the function."""
    i0 = int(rng.integers(1, shape.cols))
    j0 = int(rng.integers(1, shape.rows))
    limit = min(shape.cols - i0, i0, shape.rows - j0, j0)
    radius = int(rng.integers(1, limit + 1))
    return VortexSpec(Coord(i0, j0), radius, sample_function(rng))


def keygen(shape: GridShape, vortex_count: int, seed: int) -> VortexKey:
    """Deterministically sample a key of ``vortex_count`` vortices."""
    if shape.cols < 3 or shape.rows < 3:
        raise InvalidKeyError(
            f"grid {shape.cols}x{shape.rows} admits no interior vortex disk (need >= 3x3)"
        )
    if vortex_count < 1:
        raise InvalidKeyError("vortex count must be at least 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    specs = tuple(sample_spec(shape, rng) for _ in range(vortex_count))
    return VortexKey(shape, specs, seed)


def apply_key(key: VortexKey, shape: GridShape) -> PixelMap:
    """Composite map of all vortices, applied in list order (first spec acts first)."""
    if key.shape != shape:
        raise InvalidKeyError(
            f"key is for {key.shape.cols}x{key.shape.rows}, data is {shape.cols}x{shape.rows}"
        )
    key.validate()
    total = identity(shape)
    for spec in key.specs:
        total = compose(vortex_map(spec, shape), total)
    return total


def max_band_shear(key: VortexKey) -> float:
    """Largest circular gap between the reduced rotation angles of adjacent
    rings, across all vortices.  Diagnostic for how violently neighboring
    rings separate; 0 for identity-like keys."""
    worst = 0.0
    for spec in key.specs:
        offsets = []
        for band in ring_decomposition(spec, key.shape):
            d = min(math.sqrt(band.sq_dist), spec.radius)
            offsets.append(eval_angle_offset(spec, d))
        for a, b in zip(offsets, offsets[1:]):
            gap = abs(a - b)
            worst = max(worst, min(gap, TWO_PI - gap))
    return worst


def encrypt_image(image: np.ndarray, key: VortexKey) -> np.ndarray:
    """Apply the key's composite map to every channel of ``image``
    (shape (..., rows, cols))."""
    _check_image_shape(image, key)
    return apply_key(key, key.shape).apply_to_image(image)


def decrypt_image(image: np.ndarray, key: VortexKey) -> np.ndarray:
    """Exact inverse of :func:`encrypt_image`."""
    _check_image_shape(image, key)
    return invert(apply_key(key, key.shape)).apply_to_image(image)


def _check_image_shape(image: np.ndarray, key: VortexKey) -> None:
    if image.ndim < 2 or image.shape[-2] != key.shape.rows or image.shape[-1] != key.shape.cols:
        raise InvalidKeyError(
            f"image shape {image.shape} does not match key grid "
            f"{key.shape.cols}x{key.shape.rows}"
        )
