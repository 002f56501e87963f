"""Jacobian ideal generators and truncated Jacobian algebra dimensions.

The quotient by the two-sided ideal generated by the cyclic derivatives of
the potential is computed degree by degree: enumerate all composable words
below the trust horizon, span the truncated ideal by closing the generators
under one-arrow products on both sides, and keep the span as a fully reduced
sparse echelon basis keyed by its minimal word.  The dimension of each degree
layer of the quotient is then the word count minus the pivot count in that
degree.

Dimensions are reported for degrees below order-1 only: the generators are
valid one order below the potential, so higher layers are unknown rather
than zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .pathalg import AlgebraElement, Path, Potential, cyclic_derivative, zero_potential
from .quiver import Quiver


@dataclass(frozen=True)
class QP:
    """A quiver with potential at a fixed truncation order."""

    quiver: Quiver
    potential: Potential
    order: int

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("QP truncation order must be at least 2")
        if self.potential.quiver != self.quiver:
            raise ValueError("potential lives over a different quiver")
        if self.potential.order != self.order:
            raise ValueError(
                f"potential order {self.potential.order} != QP order {self.order}")

    def lift(self, order: int) -> "QP":
        if order == self.order:
            return self
        lifted = self.potential.lift(order)
        pot = Potential(self.quiver, order, {}, validate=False)
        pot.terms.update(lifted.terms)
        return QP(self.quiver, pot, order)

    def truncate(self, order: int) -> "QP":
        if order == self.order:
            return self
        cut = self.potential.truncate(order)
        pot = Potential(self.quiver, order, {}, validate=False)
        pot.terms.update(cut.terms)
        return QP(self.quiver, pot, order)


def make_qp(quiver: Quiver, potential: AlgebraElement | None, order: int) -> QP:
    """Build a QP, canonicalizing the potential and adjusting its order."""
    from .pathalg import canonicalize_potential

    if potential is None:
        return QP(quiver, zero_potential(quiver, order), order)
    pot = canonicalize_potential(potential)
    if pot.order > order:
        cut = pot.truncate(order)
    elif pot.order < order:
        cut = pot.lift(order)
    else:
        cut = pot
    out = Potential(quiver, order, {}, validate=False)
    out.terms.update(cut.terms)
    return QP(quiver, out, order)


@dataclass(frozen=True)
class TruncatedQuotient:
    """Per-degree monomial bases and dimensions of the truncated quotient."""

    order: int
    dims: tuple[int, ...]
    basis_by_degree: tuple[tuple[Path, ...], ...]

    @property
    def trusted_below_degree(self) -> int:
        return self.order - 1

    @property
    def total(self) -> int:
        return sum(self.dims)


def jacobian_generators(qp: QP) -> list[AlgebraElement]:
    """One cyclic derivative per arrow, in ascending arrow-id order."""
    return [cyclic_derivative(qp.potential, a.id) for a in qp.quiver.arrows]


def enumerate_words(quiver: Quiver, max_degree: int) -> list[list[tuple[str, ...]]]:
    """All composable arrow words grouped by degree, degree 1..max_degree.

    Index d-1 holds the degree-d words; extend on the right, so a word ends
    with its first-acting arrow.
    """
    by_degree: list[list[tuple[str, ...]]] = []
    current: list[tuple[tuple[str, ...], str]] = [((a.id,), a.tail) for a in quiver.arrows]
    out_by_head: dict[str, list[tuple[str, str]]] = {}
    for a in quiver.arrows:
        out_by_head.setdefault(a.head, []).append((a.id, a.tail))
    for d in range(1, max_degree + 1):
        by_degree.append([w for w, _ in current])
        nxt = []
        if d < max_degree:
            for w, tail in current:
                for aid, new_tail in out_by_head.get(tail, ()):
                    nxt.append((w + (aid,), new_tail))
        current = nxt
    return by_degree


class _SparseEchelon:
    """Fully reduced sparse echelon basis of word-indexed vectors.

    Vectors are dicts word -> Fraction; the pivot of a vector is its minimal
    word under (degree, letters).  Insertion reduces against the basis and,
    when independent, back-eliminates the new pivot from every stored vector.
    """

    def __init__(self):
        self.rows: dict[tuple, dict] = {}

    @staticmethod
    def _key(word: tuple[str, ...]) -> tuple:
        return (len(word), word)

    def reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        while vec:
            pivot = min(vec, key=self._key)
            row = self.rows.get(pivot)
            if row is None:
                return vec
            c = vec[pivot]
            for w, x in row.items():
                s = vec.get(w, Fraction(0)) - c * x
                if s == 0:
                    vec.pop(w, None)
                else:
                    vec[w] = s
        return vec

    def insert(self, vec: dict) -> dict | None:
        """Reduce and store; returns the normalized new row or None."""
        vec = self.reduce(vec)
        if not vec:
            return None
        pivot = min(vec, key=self._key)
        inv = 1 / vec[pivot]
        vec = {w: c * inv for w, c in vec.items()}
        for row in self.rows.values():
            c = row.get(pivot)
            if c is not None:
                for w, x in vec.items():
                    s = row.get(w, Fraction(0)) - c * x
                    if s == 0:
                        row.pop(w, None)
                    else:
                        row[w] = s
        self.rows[pivot] = vec
        return vec


def jacobian_dims(qp: QP) -> TruncatedQuotient:
    """Dimensions of the degree layers of the truncated Jacobian quotient."""
    horizon = qp.order - 1  # degrees 0 .. horizon-1 are trusted
    max_degree = horizon - 1
    quiver = qp.quiver

    words = enumerate_words(quiver, max_degree) if max_degree >= 1 else []

    echelon = _SparseEchelon()
    queue: list[dict] = []
    for gen in jacobian_generators(qp):
        vec = {p.arrows: c for p, c in gen.terms.items() if p.degree <= max_degree}
        if vec:
            row = echelon.insert(vec)
            if row is not None:
                queue.append(row)

    heads: dict[str, str] = {a.id: a.head for a in quiver.arrows}
    tails: dict[str, str] = {a.id: a.tail for a in quiver.arrows}
    arrows = [(a.id, a.tail, a.head) for a in quiver.arrows]
    while queue:
        row = queue.pop()
        row_items = list(row.items())
        for aid, a_tail, a_head in arrows:
            left: dict = {}
            right: dict = {}
            for w, c in row_items:
                if len(w) + 1 <= max_degree:
                    if heads[w[0]] == a_tail:
                        left[(aid,) + w] = c
                    if tails[w[-1]] == a_head:
                        right[w + (aid,)] = c
            for vec in (left, right):
                if vec:
                    new = echelon.insert(vec)
                    if new is not None:
                        queue.append(new)

    pivots_by_degree: dict[int, set] = {}
    for pivot in echelon.rows:
        pivots_by_degree.setdefault(len(pivot), set()).add(pivot)

    dims: list[int] = []
    basis: list[tuple[Path, ...]] = []
    dims.append(len(quiver.vertices))
    basis.append(tuple(Path.trivial(v) for v in quiver.vertices))
    for d in range(1, horizon):
        layer_words = words[d - 1] if d - 1 < len(words) else []
        dead = pivots_by_degree.get(d, set())
        kept = tuple(Path.word(w) for w in sorted(layer_words) if w not in dead)
        basis.append(kept)
        dims.append(len(kept))
    return TruncatedQuotient(qp.order, tuple(dims), tuple(basis))


def is_trivial_qp(qp: QP) -> bool:
    """True when the QP is, up to change of arrows, a sum of oriented
    2-cycles with exactly those 2-cycles as its potential."""
    from .reduction import split

    result = split(qp)
    if 2 * len(result.trivial_pairs) != len(qp.quiver.arrows):
        return False
    return result.reduced_qp.potential.is_zero()
