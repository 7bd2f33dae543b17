"""Exception hierarchy shared by every module."""


class FFError(Exception):
    """Base class for all library errors."""


class AmbientMismatch(FFError, ValueError):
    """Operands live in different ambient spaces (p or n differ)."""


class ZeroInverse(FFError, ZeroDivisionError):
    pass


class RangeError(FFError, ValueError):
    """A dimension or size parameter is outside its admissible range."""


class BudgetExceeded(FFError):
    """An enumeration would exceed the configured budget."""

    def __init__(self, needed: int, budget: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {needed} items, budget is {budget}")
        self.needed = needed
        self.budget = budget


class NotHyperplanes(FFError, ValueError):
    pass


class CommonLine(FFError, ValueError):
    """Hyperplanes share a nonzero common intersection; ``witness`` holds it."""

    def __init__(self, witness):
        super().__init__(f"hyperplanes intersect in a subspace of dim {witness.dim}")
        self.witness = witness


class EmptySet(FFError, ValueError):
    pass


class EmptyFamily(FFError, ValueError):
    pass


class NotABasis(FFError, ValueError):
    pass


class DimOverflow(FFError, ValueError):
    pass


class DimUnderflow(FFError, ValueError):
    pass


class NotTransverse(FFError, ValueError):
    pass


class SpecMismatch(FFError, ValueError):
    pass


class MalformedTower(FFError, ValueError):
    pass


class ParseError(FFError, ValueError):
    """Malformed input text. Message carries ``source:line:col``."""

    def __init__(self, message: str, source: str = "<input>", line: int = 0, col: int = 0):
        super().__init__(f"{source}:{line}:{col}: {message}")
        self.source = source
        self.line = line
        self.col = col
