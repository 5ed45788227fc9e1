"""Exception types shared across the package."""


class VortexcryptError(Exception):
    """Base class for all package errors."""


class BoundsError(VortexcryptError, ValueError):
    """A coordinate lies outside its grid."""


class InvalidMapError(VortexcryptError, ValueError):
    """A pixel map is not a bijection or does not match the expected grid."""


class DegenerateSwapError(VortexcryptError, ValueError):
    """A transposition was requested with both endpoints equal."""


class InvalidKeyError(VortexcryptError, ValueError):
    """A vortex key or vortex spec violates its constraints."""


class OutOfDiskError(VortexcryptError, ValueError):
    """A distance argument exceeds the vortex radius."""


class FormatError(VortexcryptError, ValueError):
    """A dataset file does not conform to its declared binary format."""
