"""Exception types shared across the package."""

from __future__ import annotations


class GallaiFansError(Exception):
    """Base class for all package errors."""


class PaletteError(GallaiFansError, ValueError):
    """A color lies outside the declared palette, or palettes disagree."""


class SelfLoopError(GallaiFansError, ValueError):
    """An edge operation was attempted on a pair (u, u)."""


class FrozenGraphError(GallaiFansError, RuntimeError):
    """A frozen graph was modified."""


class FormatError(GallaiFansError, ValueError):
    """Malformed .gcg input (magic, version, or non-integer tokens)."""


class LengthError(FormatError):
    """The .gcg body does not hold exactly n(n-1)/2 colors."""


class OracleSizeError(GallaiFansError, ValueError):
    """The brute-force oracle was called on a graph that is too large."""


class ParamError(GallaiFansError, ValueError):
    """Invalid construction or table parameters."""


class PartitionShapeError(GallaiFansError, ValueError):
    """Partition parts overlap, leave a gap, or are otherwise malformed."""


class RainbowPresent(GallaiFansError):
    """Raised when a Gallai partition is requested for a non-Gallai coloring."""

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(f"rainbow triangle at {tuple(certificate.vertices)}")


class InternalInconsistency(GallaiFansError, RuntimeError):
    """A result that theory guarantees was not produced; indicates a bug."""
