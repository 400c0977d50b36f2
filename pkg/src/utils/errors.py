"""
Exception hierarchy shared by every engine.

Each class carries the CLI exit code it maps to: 2 for bad input and
domain violations, 3 for resource ceilings. Classes also derive from the
closest builtin so plain ``except ValueError`` callers keep working.
"""


class ScatteringLabError(Exception):
    """Base class for all domain errors."""
    exit_code = 2


# ── Lattice / series core ────────────────────────────────────────────

class DimensionError(ScatteringLabError, ValueError):
    pass


class OrderMismatchError(ScatteringLabError, ValueError):
    pass


class NotInvertibleError(ScatteringLabError, ArithmeticError):
    pass


class LaurentDivisionError(ScatteringLabError, ArithmeticError):
    """Exchange binomial did not divide exactly. Signals a bug, not bad input."""


# ── Seeds ────────────────────────────────────────────────────────────

class MutationIndexError(ScatteringLabError, IndexError):
    pass


class MalformedVariableError(ScatteringLabError, ValueError):
    pass


# ── Quivers and representations ──────────────────────────────────────

class QuiverError(ScatteringLabError, ValueError):
    pass


class TranslateUndefinedError(ScatteringLabError, ValueError):
    pass


class InconclusiveError(ScatteringLabError, RuntimeError):
    pass


class UnsupportedError(ScatteringLabError, NotImplementedError):
    pass


class NotIndecomposableError(ScatteringLabError, ValueError):
    pass


class PolynomialCountError(ScatteringLabError, ArithmeticError):
    pass


# ── Scattering diagrams and broken lines ─────────────────────────────

class NonTransversalError(ScatteringLabError, ValueError):
    pass


class InvalidPathError(ScatteringLabError, ValueError):
    pass


class GenericPositionError(ScatteringLabError, ValueError):
    pass


class ScatteringError(ScatteringLabError, ArithmeticError):
    """Completion produced a non-integral or inconsistent wall, or a negative exponent."""


# ── Hall layer ───────────────────────────────────────────────────────

class NoBendingError(ScatteringLabError, ValueError):
    pass


class InadmissibleBendError(ScatteringLabError, ValueError):
    pass


class InvalidStabilityError(ScatteringLabError, ValueError):
    pass


# ── CLI / resources ──────────────────────────────────────────────────

class SchemaError(ScatteringLabError, ValueError):
    pass


class ResourceLimitError(ScatteringLabError, MemoryError):
    exit_code = 3
