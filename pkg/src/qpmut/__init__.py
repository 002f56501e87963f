"""Computer algebra for mutations of quivers with potentials."""

from .config import DEFAULT_ORDER, default_order
from .decorated import (
    DecoratedRep,
    Representation,
    check_relations,
    is_isomorphic,
    mutate_decorated,
    reflect_sink,
    reflect_source,
)
from .exactlin import RatMatrix, Rational, rat, rat_str
from .jacobian import QP, TruncatedQuotient, is_trivial_qp, jacobian_dims, jacobian_generators, make_qp
from .mutation import (
    InvolutionReport,
    MutationReport,
    PremutationResult,
    check_involution,
    mutate_qp,
    mutate_qp_detailed,
    premutate,
    random_potential,
)
from .pathalg import (
    AlgebraElement,
    Path,
    Potential,
    Substitution,
    apply_substitution,
    canonicalize_potential,
    compose,
    cyclic_derivative,
    inverse_substitution,
    is_unitriangular,
    multiply,
)
from .quiver import (
    Arrow,
    ExchangeMatrix,
    Quiver,
    from_matrix,
    has_two_cycle_through,
    is_two_acyclic,
    matrix_mutate,
    mutate_quiver,
    quivers_equal,
    to_matrix,
)
from .reduction import SplitResult, split, verify_split

__all__ = [name for name in dir() if not name.startswith("_")]
