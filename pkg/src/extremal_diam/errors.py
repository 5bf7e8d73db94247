"""Exception hierarchy shared by every module."""


class GraphInputError(ValueError):
    """Malformed input: bad vertex ids, bad files, disconnected graphs."""


class ParseError(GraphInputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedGraphError(GraphInputError):
    """Raised by operations that need a connected graph.

    ``u`` and ``v`` are two vertices lying in different components.
    """

    def __init__(self, u, v):
        self.u = u
        self.v = v
        super().__init__(f"graph is disconnected: vertices {u} and {v} are separated")


class NotChordalError(GraphInputError):
    pass


class ContractError(ValueError):
    """A documented precondition does not hold."""


class NotPrimeError(ContractError):
    """The graph has a nontrivial module; ``module`` holds one."""

    def __init__(self, module, message=None):
        self.module = frozenset(module)
        super().__init__(message or f"graph is not prime: nontrivial module {sorted(self.module)}")


class ExhaustedError(ContractError):
    """A search ran out of candidates (no vertex left outside S | N[u], or no retries left)."""


class OracleCapError(ValueError):
    """An exponential or quartic oracle refused an input above its size cap."""
