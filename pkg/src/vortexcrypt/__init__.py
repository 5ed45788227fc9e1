"""Vortex image encryption and pixel-neighborhood information measurement."""

__version__ = "0.1.0"

from .errors import (
    BoundsError,
    DegenerateSwapError,
    FormatError,
    InvalidKeyError,
    InvalidMapError,
    OutOfDiskError,
    VortexcryptError,
)
from .grid import Coord, GridShape
from .info import (
    InfoReport,
    NeighborKernel,
    build_kernel,
    pair_info,
    pixel_neighbor_info,
    reduced_distance,
    remaining_info,
    swap_delta,
    total_original_info,
    transformed_pair_info,
)
from .pixmap import (
    PRNG_NAME,
    PixelMap,
    compose,
    identity,
    invert,
    random_permutation,
    transposition,
)
from .vortex import (
    FunctionTerm,
    RandomFunction,
    RingBand,
    VortexKey,
    VortexSpec,
    apply_key,
    band_shift,
    decrypt_image,
    encrypt_image,
    eval_angle_offset,
    keygen,
    max_band_shear,
    read_key,
    ring_decomposition,
    sample_function,
    vortex_map,
    write_key,
)
from .dataset import (
    Dataset,
    Manifest,
    read_cifar10,
    read_idx,
    read_idx_labels,
    read_manifest,
    read_png,
    transform_dataset,
    write_cifar10,
    write_idx,
    write_idx_labels,
    write_manifest,
    write_png,
)

__all__ = [name for name in dir() if not name.startswith("_")]
