# scalediff/core/errors.py

"""
Exception hierarchy shared by the snapshot loader, image kernels, detectors,
evaluation harness and fixture generator.
"""


class ScaleDiffError(Exception):
    """Base class for every error raised by scalediff."""
    pass


# --- Snapshot I/O ---

class MissingFile(ScaleDiffError, FileNotFoundError):
    """tree.json or a referenced PNG is absent."""
    pass


class SchemaViolation(ScaleDiffError, ValueError):
    """A tree.json field is missing, mistyped, or breaks a model invariant."""
    pass


class DimensionMismatch(ScaleDiffError, ValueError):
    """Two images (or an image and its view bounds) disagree in size."""
    pass


# --- Image kernels ---

class OutOfBounds(ScaleDiffError, ValueError):
    """A source image placed at an offset does not fit in the destination."""
    pass


class DegenerateImage(ScaleDiffError, ValueError):
    """All pixels are identical, so no threshold separates two classes."""
    pass


class TemplateTooLarge(ScaleDiffError, ValueError):
    pass


class DegenerateTemplate(ScaleDiffError, ValueError):
    """Template has zero intensity variance; the correlation score is undefined."""
    pass


# --- Detection / evaluation ---

class MissingTextSize(ScaleDiffError, ValueError):
    pass


class LabelMismatch(ScaleDiffError, ValueError):
    """A ground-truth label names a view uid absent from both snapshots."""
    pass


# --- Fixture generation ---

class GeometryOverflow(ScaleDiffError, ValueError):
    pass


class InjectionInfeasible(ScaleDiffError, ValueError):
    """A bug injection selector matched no node."""
    pass


# --- Configuration ---

class InvalidConfig(ScaleDiffError, ValueError):
    """An explicitly requested configuration file is missing, unreadable or invalid."""
    pass
