"""Exception types raised across the toolkit."""


class CurvkitError(Exception):
    """Base class for all toolkit errors."""


class MetricValidationError(CurvkitError):
    """A raw distance matrix violates a metric axiom.

    ``violations`` is a list of (axiom, indices, magnitude) tuples covering
    every detected problem, not just the first one.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        shown = "; ".join(
            f"{axiom} at {idx} (excess {mag:.3g})" for axiom, idx, mag in self.violations[:5]
        )
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"not a metric: {shown}{more}")


class ChartError(CurvkitError):
    """A coordinate vector does not satisfy its model-chart constraint."""


class InvalidTriangleError(CurvkitError):
    """Side lengths violate the triangle inequality or the perimeter bound."""


class UndefinedAngleError(CurvkitError):
    """A comparison angle is requested where it is not defined."""


class GramIndefiniteError(CurvkitError):
    """A direction Gram matrix has a negative eigenvalue beyond tolerance."""

    def __init__(self, eigenvalue, eigenvector):
        self.eigenvalue = float(eigenvalue)
        self.eigenvector = eigenvector
        super().__init__(f"gram matrix indefinite: eigenvalue {self.eigenvalue:.6g}")


class NotEqualityCaseError(CurvkitError):
    """The quadratic form of a star is too far from zero to embed rigidly."""


class BetweennessError(CurvkitError):
    """A betweenness precondition (point on/off a segment) is violated."""


class NoLowerBoundError(CurvkitError):
    """Certification failed already at the bottom of the search range."""

    def __init__(self, kappa_lo, report):
        self.kappa_lo = float(kappa_lo)
        self.report = report
        super().__init__(f"no lower bound found in range: fails at kappa={kappa_lo:.6g}")
