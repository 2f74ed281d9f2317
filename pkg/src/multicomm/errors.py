"""Exception hierarchy.

Every domain failure derives from :class:`MulticommError`; the CLI maps those
to exit code 2 and :class:`ParseError` to exit code 3.
"""


class MulticommError(Exception):
    """Base class for domain errors."""


class ParseError(MulticommError):
    """Malformed input document."""


# diagram-core

class CycleDetected(MulticommError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"order relation has a cycle through {self.cycle}")


class UnknownElement(MulticommError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"unknown poset element {element!r}")


class UnknownIndex(UnknownElement):
    pass


class MissingMap(MulticommError):
    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__(f"no map supplied for comparable pair {i!r} >= {j!r}")


class InvalidMap(MulticommError):
    """A map is not total, points outside its target, or joins incomparable indices."""


class CoherenceViolation(MulticommError):
    def __init__(self, i, j, k, point):
        self.chain = (i, j, k)
        self.point = point
        super().__init__(
            f"phi_{j}{k} o phi_{i}{j} != phi_{i}{k} at point {point!r} "
            f"(chain {i!r} >= {j!r} >= {k!r})"
        )


class LegIncoherent(MulticommError):
    def __init__(self, i, j, point):
        self.pair = (i, j)
        self.point = point
        super().__init__(f"cone leg to {j!r} differs from phi_{i}{j} o leg_{i} at apex point {point!r}")


class SquareNotCommutative(MulticommError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"square does not commute at point {point!r}")


class EmptyLimit(MulticommError):
    def __init__(self):
        super().__init__("the limit of the diagram is empty")


# measures

class InvalidMeasure(MulticommError):
    pass


class SpaceMismatch(MulticommError):
    pass


class MarginalMismatch(MulticommError):
    def __init__(self, point, left, right):
        self.point = point
        self.left = left
        self.right = right
        super().__init__(f"pushforwards differ at {point!r}: {left} != {right}")


class InconsistentFamily(MulticommError):
    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


# polytope

class UnboundedInput(MulticommError):
    pass


class PointOutside(MulticommError):
    pass


class NotSurjectiveOntoQ(MulticommError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"codomain vertex {point!r} is not in the image")


class FaceBudgetExceeded(MulticommError):
    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"face enumeration exceeded the budget of {budget} faces")


# chi / glue

class ConeNotOpenMulticommutative(MulticommError):
    pass


class PreconditionMismatch(MulticommError):
    def __init__(self, message, where=None):
        self.where = where
        super().__init__(message)


class NaturalityViolation(MulticommError):
    def __init__(self, i, j, point):
        self.pair = (i, j)
        self.point = point
        super().__init__(f"naturality square ({i!r} >= {j!r}) fails at {point!r}")
