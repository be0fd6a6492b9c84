"""Exception hierarchy for quiver_cy."""


class QuiverCYError(Exception):
    """Base class for all library errors."""


class InvalidTrace(QuiverCYError):
    pass


class NotCentral(QuiverCYError):
    pass


class NameClash(QuiverCYError):
    pass


class UnsupportedDimension(QuiverCYError):
    pass


class SpaceMismatch(QuiverCYError):
    pass


class UnknownArrow(QuiverCYError):
    pass


class NotConnective(QuiverCYError):
    pass


class DegreeWindow(QuiverCYError):
    pass


class DegeneratePairing(QuiverCYError):
    pass


class QuintupleInvalid(QuiverCYError):
    def __init__(self, label, message=""):
        self.label = label
        super().__init__(f"{label}: {message}" if message else label)


class NotClosed(QuiverCYError):
    pass


class NotNormalForm(QuiverCYError):
    pass


class CapInsufficient(QuiverCYError):
    def __init__(self, message, required=None):
        self.required = required
        super().__init__(message)


class SchemaError(QuiverCYError):
    """Input document failed validation; ``path`` locates the offending node."""

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
