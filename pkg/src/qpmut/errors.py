"""Exception types shared across the engine.

Every error carries a stable machine-readable ``code`` so the CLI and the
session server can emit ``{"error": code, "detail": ...}`` envelopes.
"""


class QPMutError(Exception):
    """Base class for all engine errors."""

    code = "error"


class InputError(QPMutError):
    """Malformed JSON input or inconsistent file contents."""

    code = "input_error"


class UnknownVertex(QPMutError):
    code = "unknown_vertex"


class UnknownArrow(QPMutError):
    code = "unknown_arrow"


class LoopError(QPMutError):
    """An arrow with equal head and tail; loops are never allowed."""

    code = "loop"


class TwoCycleError(QPMutError):
    """An oriented 2-cycle where none is permitted."""

    code = "two_cycle"


class TwoCycleAtVertex(QPMutError):
    """An oriented 2-cycle passes through the mutation vertex."""

    code = "two_cycle_at_vertex"


class QuiverMismatch(QPMutError):
    """Operands live over different quivers."""

    code = "quiver_mismatch"


class NonCyclicTerm(QPMutError):
    """A potential term is not a cyclic path of degree at least 2."""

    code = "non_cyclic_term"


class ShapeMismatch(QPMutError):
    """Matrix dimensions incompatible with the requested operation."""

    code = "shape_mismatch"


class NotReduced(QPMutError):
    """QP mutation requires a potential with no quadratic part."""

    code = "not_reduced"


class NotASink(QPMutError):
    code = "not_a_sink"


class NotASource(QPMutError):
    code = "not_a_source"


class NotSinkOrSource(QPMutError):
    """Decorated mutation at an interior vertex is not implemented."""

    code = "not_sink_or_source"


class ObstructedSecondMutation(QPMutError):
    """Mutation created a 2-cycle through the vertex, blocking the repeat."""

    code = "obstructed_second_mutation"
