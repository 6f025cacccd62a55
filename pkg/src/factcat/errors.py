"""Exception types shared across the package."""


class FactcatError(Exception):
    pass


class GuardExceeded(FactcatError):
    """An enumeration grew past its size guard."""

    def __init__(self, what, guard):
        super().__init__(f"{what} exceeded guard {guard}")
        self.what = what
        self.guard = guard


class BoundExceeded(FactcatError):
    """Normalization did not produce a finite category within the effort bound.

    ``result`` is the :class:`~factcat.gpd.NormalizationResult` that stopped
    the computation (infinite or unknown).
    """

    def __init__(self, result, note=""):
        msg = f"normalization ended with status {result.status}"
        if note:
            msg += f" ({note})"
        super().__init__(msg)
        self.result = result
        self.note = note


class NotAGroupoid(FactcatError):
    pass


class WitnessFailure(FactcatError):
    """Raised when an adjunction witness cannot be assembled; signals a bug."""


class MalformedInput(FactcatError):
    pass
