"""Exception hierarchy.

Input problems (bad parameters, malformed diagrams) and internal consistency
failures are kept apart so the CLI can map them to distinct exit codes.
"""


class HFKError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(HFKError, ValueError):
    """Parameters outside the decoder's supported range."""


class DiagramError(HFKError, ValueError):
    """A combinatorial diagram is malformed or fails validation.

    ``code`` is one of ``"crossing-arcs"``, ``"coverage"``, ``"validity"``,
    ``"invalid-diagram"``.
    """

    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code


class RealizationError(DiagramError):
    def __init__(self, message):
        super().__init__("realization-failure", message)


class ConsistencyError(HFKError, RuntimeError):
    """An internal invariant that must always hold did not.

    ``invariant`` names the violated property, e.g. ``"d-squared"`` or
    ``"hat-s3-homology"``.
    """

    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class WindowInstabilityError(ConsistencyError):
    def __init__(self, message):
        super().__init__("window-instability", message)


class NotACycleError(HFKError, ValueError):
    """A chain passed where a cycle was required has non-zero boundary."""
