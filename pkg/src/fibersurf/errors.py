"""Exception hierarchy shared by every module."""


class FiberSurfError(Exception):
    """Base class for all errors raised by fibersurf."""


class UnknownCurveError(FiberSurfError, KeyError):
    def __init__(self, curve_id, where=""):
        self.curve_id = curve_id
        msg = f"unknown curve {curve_id!r}"
        if where:
            msg += f" in fiber {where!r}"
        super().__init__(msg)

    def __str__(self):
        return self.args[0]


class UnknownFiberError(FiberSurfError, KeyError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"no marked point {label!r}")

    def __str__(self):
        return self.args[0]


class NoSuchEdgeError(FiberSurfError):
    pass


class NotContractibleError(FiberSurfError):
    """A curve or curve set cannot be contracted as requested."""


class NotADEError(NotContractibleError):
    pass


class ContractionOverlapError(NotContractibleError):
    pass


class PreconditionError(FiberSurfError, ValueError):
    pass


class MMPStuckError(FiberSurfError):
    """No admissible contraction exists but the fiber is still reducible."""


class ClassificationError(FiberSurfError):
    """A Mori fiber falls outside the table of non-reduced fibers."""
