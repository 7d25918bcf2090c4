"""Exception hierarchy.

Every error carries a stable ``code`` (the class name) so the CLI can emit
machine-parsable ``ERROR <code>: <message>`` lines, and an ``exit_status``
grouping it into input errors (3) or inadmissible operations (4).
"""

from __future__ import annotations


class PachnerError(Exception):
    exit_status = 3

    @property
    def code(self) -> str:
        return type(self).__name__


# -- input / construction -------------------------------------------------


class InputError(PachnerError):
    exit_status = 3


class EmptyInput(InputError):
    pass


class MixedDimensions(InputError):
    pass


class DegenerateFacet(InputError):
    pass


class InvalidLabel(InputError):
    pass


class DimensionOutOfRange(InputError):
    pass


class LabelClash(InputError):
    pass


class FormatError(InputError):
    pass


class UnsupportedDimension(InputError):
    pass


class BudgetTooSmall(InputError):
    pass


class NodeNotInGraph(InputError):
    pass


# -- operations refused on a valid input ----------------------------------


class InadmissibleOperation(PachnerError):
    exit_status = 4


class NotAFace(InadmissibleOperation):
    pass


class EmptySimplexInput(InadmissibleOperation):
    pass


class NotPseudomanifold(InadmissibleOperation):
    pass


class NotClosedPseudomanifold(InadmissibleOperation):
    pass


class InadmissibleMove(InadmissibleOperation):
    """A Pachner move whose admissibility predicate fails.

    ``reason`` is one of ``"A absent"``, ``"link mismatch"``, ``"B present"``
    or ``"malformed site"``.
    """

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class VertexInUse(InadmissibleOperation):
    pass


class SubdivisionAtVertex(InadmissibleOperation):
    pass


class WeldInadmissible(InadmissibleOperation):
    pass


class ClosedComplex(InadmissibleOperation):
    pass


class InadmissibleShelling(InadmissibleOperation):
    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class FacetPresent(InadmissibleShelling):
    def __init__(self, detail: str = ""):
        super().__init__("facet already present", detail)


class GluingNotOnBoundary(InadmissibleShelling):
    def __init__(self, detail: str = ""):
        super().__init__("gluing not on boundary", detail)


class WouldBreakPseudomanifold(InadmissibleShelling):
    def __init__(self, detail: str = ""):
        super().__init__("would break pseudomanifold", detail)


class NoAdmissibleMove(InadmissibleOperation):
    pass


class TraceDivergence(InadmissibleOperation):
    def __init__(self, step: int, reason: str):
        self.step = step
        self.reason = reason
        super().__init__(f"step {step}: {reason}")
