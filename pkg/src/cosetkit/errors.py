"""Exception hierarchy shared by every cosetkit module."""

from __future__ import annotations


class CosetKitError(Exception):
    """Base class for all errors raised by cosetkit."""


class MalformedSpec(CosetKitError):
    pass


class NonInvolution(CosetKitError):
    def __init__(self, label: str):
        super().__init__(f"generator {label!r} is not a non-trivial involution")
        self.label = label


class SizeCapExceeded(CosetKitError):
    pass


class UnknownLabel(CosetKitError):
    def __init__(self, label: str):
        super().__init__(f"unknown generator label {label!r}")
        self.label = label


class NotTwoAcyclic(CosetKitError):
    """Raised when an operation needs 2-acyclicity and the graph lacks it.

    ``witness`` is a coset 2-cycle ``((v, alpha), (u, beta))`` when one is known.
    """

    def __init__(self, message: str = "Cayley graph is not 2-acyclic", witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(CosetKitError):
    pass


class GuardTooWeak(CosetKitError):
    """The graph is not acyclic enough for the statement being checked."""


class ConstructionFailed(CosetKitError):
    """A construction that a proven statement guarantees did not succeed.

    Always indicates a bug: the inputs satisfied every hypothesis.
    """


class InvalidPath(CosetKitError):
    pass


class MalformedDualPath(CosetKitError):
    pass


class LabelMismatch(CosetKitError):
    pass


class NotCompatible(CosetKitError):
    def __init__(self, message: str, witness: str | None = None):
        super().__init__(message)
        self.witness = witness


class UnknownFamily(CosetKitError):
    pass


class BadParams(CosetKitError):
    pass
