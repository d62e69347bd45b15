"""Exception types shared across the package."""


class VscError(Exception):
    """Base class for all package errors."""


class InstanceError(VscError):
    """Rejected instance or solution data.

    ``kind`` is a short machine-readable tag: "syntax", "partition",
    "weight", "coverage", "element" or "format".
    """

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)


class GenSpecError(VscError):
    """Generator parameters that cannot produce a valid instance."""


class OracleCapError(VscError):
    """Instance exceeds the exact solver's size cap; it refuses to run."""


class OracleUnknown(VscError):
    """Exact search exhausted its node budget without an answer.

    Callers must treat this as "no value", never as a bound.
    """

    def __init__(self, message: str, nodes: int = 0):
        self.nodes = nodes
        super().__init__(message)


class InternalCheckError(VscError):
    """A condition that should be impossible on valid inputs was observed."""
