"""Exception hierarchy for the lgcn package."""


class LgcnError(Exception):
    """Base class for all errors raised by this package."""


# --- group arithmetic ---

class KindMismatch(LgcnError):
    """Two group values of different kinds were combined."""


class NotInGroup(LgcnError):
    """A matrix violates the invariants of its claimed group."""


class AngleAtBranchCut(LgcnError):
    """A logarithm was requested too close to the principal-branch boundary."""


class NonPositiveScale(LgcnError):
    """A similarity transform was given a scale factor <= 0."""


# --- sampling ---

class KTooLarge(LgcnError):
    """More neighbors were requested than points exist."""


class TargetTooLarge(LgcnError):
    """More sample points were requested than points exist."""


# --- network ---

class DegenerateBatch(LgcnError):
    """Batch statistics were requested over fewer than two samples."""


class CorruptCheckpoint(LgcnError):
    """A checkpoint file failed structural validation."""


class ConfigMismatch(LgcnError):
    """A checkpoint does not match the model configuration it is loaded into."""


# --- data ingestion ---

class BadMagic(LgcnError):
    """An IDX file starts with an unexpected magic number."""


class DimensionMismatch(LgcnError):
    """IDX image and label files disagree on the record count."""


class TruncatedFile(LgcnError):
    """A binary file ended before its declared payload."""


class MissingFile(LgcnError):
    """A file referenced by a manifest does not exist."""


class UnsupportedFormat(LgcnError):
    """An image file is not in a supported portable pixmap format."""


class UnknownLabel(LgcnError):
    """A manifest row carries a label outside the declared class set."""


# --- configuration ---

class ConfigError(LgcnError):
    """A run configuration failed validation."""
