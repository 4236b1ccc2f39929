"""Exception types raised across the package."""


class FieldRouteError(Exception):
    """Base class for all package errors."""


class InvalidCoordinateError(FieldRouteError, ValueError):
    pass


class InvalidOrderError(FieldRouteError, ValueError):
    pass


class MatrixBoundsError(FieldRouteError, IndexError):
    pass


class InvalidArgumentError(FieldRouteError, ValueError):
    pass


class InfeasibleKError(FieldRouteError, ValueError):
    pass


class SizeLimitError(FieldRouteError, ValueError):
    pass


class MissingDataError(FieldRouteError):
    pass


class DatasetError(FieldRouteError, ValueError):
    """Problem with a stations CSV. ``row`` is the 1-based file line, if known."""

    def __init__(self, message, row=None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class DatasetFormatError(DatasetError):
    pass


class CoordinateParseError(DatasetError):
    pass


class CoordinateRangeError(DatasetError):
    pass


class EmptyDatasetError(DatasetError):
    pass


class ConfigError(FieldRouteError, ValueError):
    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key
