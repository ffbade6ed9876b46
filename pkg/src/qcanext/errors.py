"""Exception hierarchy shared by every module of the package."""


class QcanextError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(QcanextError, ValueError):
    """A value, matrix or document does not fit the declared structure."""


class ShapeMismatch(InvalidInput):
    """Two objects were combined whose spaces or dimensions do not agree."""


class BudgetExceeded(QcanextError, RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""

    def __init__(self, message, *, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class AxiomViolation(InvalidInput):
    """A matrix fails one of the enrichment or bimodule axioms.

    ``axiom`` names the failed law and ``witness`` holds the offending point
    names, so reports can quote them verbatim.
    """

    def __init__(self, axiom, witness, message=None):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(message or f"{axiom} violated at {self.witness}")


class ReflexivityViolation(AxiomViolation):
    def __init__(self, x):
        super().__init__("reflexivity", (x,), f"e is not below hom({x!r},{x!r})")


class TransitivityViolation(AxiomViolation):
    def __init__(self, x, y, z):
        super().__init__(
            "transitivity",
            (x, y, z),
            f"hom({x!r},{y!r})*hom({y!r},{z!r}) is not below hom({x!r},{z!r})",
        )


class ClassNotClosed(QcanextError, ValueError):
    """A functor extension was requested whose filter/ideal class is not closed.

    ``side`` is ``"l"`` or ``"r"``; ``violator`` is the offending filter or
    ideal (as a vector of the target space) and ``name`` its point name.
    """

    def __init__(self, side, name, violator):
        self.side = side
        self.name = name
        self.violator = tuple(violator)
        kind = "filter" if side == "l" else "ideal"
        super().__init__(
            f"precomposition sends {kind} {name!r} outside the chosen class"
        )
