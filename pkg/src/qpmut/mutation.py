"""QP mutation at an arbitrary vertex.

Premutation rewrites the arrow span by the composite-and-reverse steps and
rewrites the potential in two parts: every passage of a cyclic word through
the mutation vertex is compressed into the matching composite arrow, and one
cubic term per (incoming, outgoing) arrow pair ties each composite to the two
reversed arrows.  Mutation proper is the reduced part of that premutation.

Inputs are lifted one order before premutating, because the reduction stage
spends one degree of validity; results are truncated back to the caller's
order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import config
from .errors import NotReduced, ObstructedSecondMutation, TwoCycleAtVertex
from .jacobian import QP, jacobian_dims
from .pathalg import (
    AlgebraElement,
    Path,
    Potential,
    canonical_rotation,
    canonicalize_potential,
)
from .quiver import (
    Quiver,
    composite_arrow_id,
    has_two_cycle_through,
    premutation_arrows,
    quivers_equal,
    star_arrow_id,
)
from .reduction import SplitResult, split


@dataclass(frozen=True)
class PremutationResult:
    """Premutated QP plus the origin of every arrow in its span."""

    qp_tilde: QP
    provenance: dict[str, tuple]
    vertex: str


@dataclass(frozen=True)
class MutationReport:
    """Mutated QP together with the intermediate audit data."""

    result: QP
    premutation: PremutationResult
    split_result: SplitResult


def _rotate_off_vertex(quiver: Quiver, word: tuple[str, ...], vertex: str) -> tuple[str, ...]:
    """Rotate a cyclic word so its basepoint is not the mutation vertex.

    Possible for every loop-free cycle: consecutive letters cannot both
    close at the same vertex.
    """
    if quiver.arrow(word[0]).head != vertex:
        return word
    for m in range(1, len(word)):
        if quiver.arrow(word[m]).head != vertex:
            return word[m:] + word[:m]
    raise AssertionError("cyclic word visits only the mutation vertex; quiver has a loop?")


def premutate(qp: QP, vertex: str) -> PremutationResult:
    """Composite-and-reverse the arrows at the vertex and rewrite the
    potential as compressed passages plus the composite 3-cycles."""
    quiver = qp.quiver
    quiver.require_vertex(vertex)
    if has_two_cycle_through(quiver, vertex):
        raise TwoCycleAtVertex(f"oriented 2-cycle through {vertex!r}")
    if not qp.potential.degree_part(2).is_zero():
        raise NotReduced("potential has a quadratic part; split it first")

    table = premutation_arrows(quiver, vertex)
    new_quiver = Quiver(quiver.vertices, [a for a, _ in table])
    provenance = {a.id: origin for a, origin in table}

    terms: dict[Path, Fraction] = {}
    for p, c in qp.potential.terms.items():
        word = _rotate_off_vertex(quiver, p.arrows, vertex)
        out: list[str] = []
        i = 0
        d = len(word)
        while i < d:
            if i + 1 < d and quiver.arrow(word[i]).tail == vertex:
                out.append(composite_arrow_id(word[i], word[i + 1]))
                i += 2
            else:
                out.append(word[i])
                i += 1
        new_path = Path(arrows=tuple(out))
        s = terms.get(new_path, Fraction(0)) + c
        if s == 0:
            terms.pop(new_path, None)
        else:
            terms[new_path] = s

    for a in quiver.arrows:
        if a.head != vertex:
            continue
        for b in quiver.arrows:
            if b.tail != vertex:
                continue
            cycle = Path(arrows=(composite_arrow_id(b.id, a.id),
                                 star_arrow_id(a.id), star_arrow_id(b.id)))
            if cycle.degree >= qp.order:
                continue
            s = terms.get(cycle, Fraction(0)) + Fraction(1)
            if s == 0:
                terms.pop(cycle, None)
            else:
                terms[cycle] = s

    element = AlgebraElement(new_quiver, qp.order,
                             {p: c for p, c in terms.items() if p.degree < qp.order},
                             validate=False)
    s_tilde = canonicalize_potential(element)
    return PremutationResult(QP(new_quiver, s_tilde, qp.order), provenance, vertex)


def mutate_qp_detailed(qp: QP, vertex: str) -> MutationReport:
    """Premutate at one extra order of validity, split, truncate back."""
    lifted = qp.lift(qp.order + 1)
    pre = premutate(lifted, vertex)
    result = split(pre.qp_tilde)
    return MutationReport(result.reduced_qp.truncate(qp.order), pre, result)


def mutate_qp(qp: QP, vertex: str) -> QP:
    return mutate_qp_detailed(qp, vertex).result


@dataclass(frozen=True)
class InvolutionReport:
    """Computable invariants compared between a QP and its double mutation."""

    vertex: str
    arrow_matrices_match: bool
    jacobian_dims_match: bool
    degree_profiles_match: bool
    dims_original: tuple[int, ...]
    dims_double: tuple[int, ...]
    profile_original: tuple[int, ...]
    profile_double: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return (self.arrow_matrices_match and self.jacobian_dims_match
                and self.degree_profiles_match)


def degree_profile(qp: QP) -> tuple[int, ...]:
    """Sorted multiset of term degrees of the potential."""
    return tuple(sorted(p.degree for p in qp.potential.terms))


def check_involution(qp: QP, vertex: str) -> InvolutionReport:
    """Mutate twice at the vertex and compare arrow multiplicities, Jacobian
    dimensions below the trust horizon, and potential degree profiles."""
    once = mutate_qp(qp, vertex)
    if has_two_cycle_through(once.quiver, vertex):
        raise ObstructedSecondMutation(
            f"mutation created a 2-cycle through {vertex!r}; cannot mutate again")
    twice = mutate_qp(once, vertex)
    dims_original = jacobian_dims(qp).dims
    dims_double = jacobian_dims(twice).dims
    return InvolutionReport(
        vertex=vertex,
        arrow_matrices_match=quivers_equal(qp.quiver, twice.quiver),
        jacobian_dims_match=dims_original == dims_double,
        degree_profiles_match=degree_profile(qp) == degree_profile(twice),
        dims_original=dims_original,
        dims_double=dims_double,
        profile_original=degree_profile(qp),
        profile_double=degree_profile(twice),
    )


def cycle_classes(quiver: Quiver, max_degree: int) -> list[tuple[str, ...]]:
    """Rotation classes of vertex-simple cycles up to the given degree,
    each in canonical rotation, sorted by (degree, letters)."""
    classes: set[tuple[str, ...]] = set()
    order_limit = min(max_degree, len(quiver.vertices))
    out_by_vertex: dict[str, list] = {}
    for a in quiver.arrows:
        out_by_vertex.setdefault(a.tail, []).append(a)

    def walk(start: str, here: str, visited: set[str], trail: tuple[str, ...]):
        for a in out_by_vertex.get(here, ()):
            if a.head == start and len(trail) + 1 >= 2:
                word = tuple(reversed(trail + (a.id,)))
                classes.add(canonical_rotation(word))
            elif a.head not in visited and len(trail) + 1 < order_limit:
                walk(start, a.head, visited | {a.head}, trail + (a.id,))

    for v in quiver.vertices:
        walk(v, v, {v}, ())
    return sorted(classes, key=lambda w: (len(w), w))


def random_potential(quiver: Quiver, max_degree: int, seed: int,
                     order: int | None = None) -> Potential:
    """One deterministic nonzero integer coefficient per cycle class.

    Coefficients are drawn from the seed over a large range, so distinct
    seeds give distinct potentials and reruns reproduce bit-for-bit.
    Cycle classes at or above the truncation order are dropped.
    """
    if order is None:
        order = config.default_order()
    rng = random.Random(seed)
    terms: dict[Path, Fraction] = {}
    for word in cycle_classes(quiver, max_degree):
        coeff = rng.randint(1, 10 ** 6) * rng.choice((1, -1))
        if len(word) >= order:
            continue
        terms[Path(arrows=word)] = Fraction(coeff)
    element = AlgebraElement(quiver, order, terms, validate=False)
    return canonicalize_potential(element)
