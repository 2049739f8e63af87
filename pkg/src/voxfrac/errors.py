"""Exception types shared across the package."""


class VoxfracError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(VoxfracError, ValueError):
    """An argument violates a documented precondition."""


class ResourceLimitError(InvalidArgumentError):
    """Requested object would exceed the supported problem size."""


class DegenerateGeometryError(VoxfracError, ValueError):
    """Input geometry has no usable spatial extent."""


class EmptyGridError(VoxfracError, ValueError):
    """Operation is undefined on a grid with no occupied cells."""


class InsufficientDataError(VoxfracError, ValueError):
    """Too few (or too degenerate) samples to fit."""


class FormatError(VoxfracError, ValueError):
    """A byte stream does not conform to its declared format."""


class EmptyMeshError(FormatError):
    """A mesh stream parsed cleanly but defines no faces."""


class ObjParseError(FormatError):
    """Malformed OBJ input. Carries the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class StlParseError(FormatError):
    """Malformed STL input (binary layout or ASCII syntax)."""


class TruncatedFileError(StlParseError):
    """Binary STL byte length disagrees with its triangle count."""


class VoxelFormatError(FormatError):
    """Malformed voxel container file."""


class CensusCsvError(FormatError):
    """Malformed census CSV. Carries the 1-based offending row number."""

    def __init__(self, message: str, row: int):
        super().__init__(f"row {row}: {message}")
        self.row = row
