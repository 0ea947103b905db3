"""Exception hierarchy shared by all forestlab modules."""


class ForestLabError(Exception):
    """Base class for every error raised by this package."""


class GraphError(ForestLabError, ValueError):
    pass


class LoopEdge(GraphError):
    pass


class WeightOutOfRange(GraphError):
    pass


class BadIndex(GraphError, IndexError):
    pass


class EmptySubset(GraphError):
    pass


class GraphSyntaxError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class BudgetExceeded(ForestLabError):
    """Search hit its node budget; the answer is unknown, not negative."""

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"node budget exhausted after {nodes} nodes")


class TooLarge(ForestLabError):
    pass


class BadFlavorForD(ForestLabError, ValueError):
    pass


class BadFlavorForGraph(ForestLabError, ValueError):
    pass


class NonPositiveSlope(ForestLabError, ValueError):
    pass


class BadParameters(ForestLabError, ValueError):
    pass


class StyleMismatch(ForestLabError, ValueError):
    pass


class WrongParity(ForestLabError, ValueError):
    pass
