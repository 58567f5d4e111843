class Violation(Exception):
    """A checked structure fails one of its defining conditions.

    ``condition`` names the failed condition (an int for the numbered
    decomposition conditions, a short string otherwise) and ``witness`` holds
    whatever pinpoints the failure: a node, a hyperedge, a vertex index or a
    tuple of those.
    """

    def __init__(self, message, condition=None, witness=None):
        super().__init__(message)
        self.condition = condition
        self.witness = witness


class JoinTreeError(Violation):
    pass


class DecompositionError(Violation):
    pass


class ComponentTreeError(Violation):
    pass


class ConnectednessError(Violation):
    pass


class StrategyError(Violation):
    pass


class TreeProjectionError(Violation):
    pass
