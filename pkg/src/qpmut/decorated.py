"""Decorated quiver representations and sink/source reflection functors.

A representation attaches an exact rational matrix to every arrow; a
decoration attaches a map-free dimension to every vertex.  Reflection at a
sink stacks the incoming maps into one matrix, keeps its kernel plus the
decoration as the new vertex space, and records the cokernel dimension as
the new decoration; the source case is dual, realized through an exact
cokernel projection with a deterministic complement basis.  Mutation at an
interior vertex is a hard error.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotASink, NotASource, NotSinkOrSource, ShapeMismatch
from .exactlin import RatMatrix, invert, kernel_basis, rank, rref
from .jacobian import QP, enumerate_words, jacobian_generators
from .quiver import Quiver, mutate_quiver, star_arrow_id


class Representation:
    """Vertex dimensions plus one matrix per arrow (head-dim x tail-dim)."""

    __slots__ = ("quiver", "dims", "maps")

    def __init__(self, quiver: Quiver, dims: dict[str, int],
                 maps: dict[str, RatMatrix] | None = None):
        full_dims = {}
        for v in quiver.vertices:
            d = int(dims.get(v, 0))
            if d < 0:
                raise ValueError(f"negative dimension at vertex {v!r}")
            full_dims[v] = d
        full_maps = {}
        for a in quiver.arrows:
            rows, cols = full_dims[a.head], full_dims[a.tail]
            m = (maps or {}).get(a.id)
            if m is None:
                m = RatMatrix.zeros(rows, cols)
            if m.rows != rows or m.cols != cols:
                raise ShapeMismatch(
                    f"map for arrow {a.id!r} is {m.rows}x{m.cols}, expected {rows}x{cols}")
            full_maps[a.id] = m
        self.quiver = quiver
        self.dims = full_dims
        self.maps = full_maps

    def __eq__(self, other) -> bool:
        return (isinstance(other, Representation)
                and self.quiver == other.quiver
                and self.dims == other.dims
                and self.maps == other.maps)

    def __repr__(self) -> str:
        dims = ", ".join(f"{v}:{d}" for v, d in self.dims.items())
        return f"Representation({dims})"

    def dimension_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def evaluate_word(self, word: tuple[str, ...]) -> RatMatrix:
        """Product of the arrow matrices along a composable word."""
        result = self.maps[word[0]]
        for aid in word[1:]:
            result = result @ self.maps[aid]
        return result


@dataclass(frozen=True)
class DecoratedRep:
    """A representation plus map-free decoration dimensions per vertex."""

    rep: Representation
    decoration: dict[str, int]

    def __post_init__(self):
        full = {v: int(self.decoration.get(v, 0)) for v in self.rep.quiver.vertices}
        if any(d < 0 for d in full.values()):
            raise ValueError("negative decoration dimension")
        object.__setattr__(self, "decoration", full)

    def decoration_vector(self) -> tuple[int, ...]:
        return tuple(self.decoration[v] for v in self.rep.quiver.vertices)


def check_relations(rep: Representation, qp: QP, nilpotency_bound: int | None = None) -> bool:
    """True when the representation is nilpotent within the bound and kills
    every cyclic derivative of the potential."""
    if rep.quiver != qp.quiver:
        raise ShapeMismatch("representation and QP live over different quivers")
    if nilpotency_bound is None:
        nilpotency_bound = sum(rep.dims.values()) + 1

    # Nilpotency: every length-bound product vanishes.  Walk words depth
    # first, carrying the partial product and pruning at zero.
    def extend(word_tail: str, product: RatMatrix, length: int) -> bool:
        if product.is_zero():
            return True
        if length == nilpotency_bound:
            return False
        for a in rep.quiver.arrows:
            if a.head != word_tail:
                continue
            if not extend(a.tail, product @ rep.maps[a.id], length + 1):
                return False
        return True

    for a in rep.quiver.arrows:
        if not extend(a.tail, rep.maps[a.id], 1):
            return False

    for arrow, gen in zip(rep.quiver.arrows, jacobian_generators(qp)):
        rows, cols = rep.dims[arrow.tail], rep.dims[arrow.head]
        total = RatMatrix.zeros(rows, cols)
        for p, c in gen.terms.items():
            if p.vertex is not None:
                continue
            total = total + rep.evaluate_word(p.arrows).scale(c)
        if not total.is_zero():
            return False
    return True


def _assemble_in(rep: Representation, k: str) -> tuple[list, RatMatrix]:
    """Incoming arrows (ascending id) and their maps stacked side by side."""
    incoming = [a for a in rep.quiver.arrows if a.head == k]
    stacked = RatMatrix.zeros(rep.dims[k], 0)
    for a in incoming:
        stacked = stacked.hstack(rep.maps[a.id])
    return incoming, stacked


def _assemble_out(rep: Representation, k: str) -> tuple[list, RatMatrix]:
    """Outgoing arrows (ascending id) and their maps stacked on top of
    each other."""
    outgoing = [a for a in rep.quiver.arrows if a.tail == k]
    stacked = RatMatrix.zeros(0, rep.dims[k])
    for a in outgoing:
        stacked = stacked.vstack(rep.maps[a.id])
    return outgoing, stacked


def cokernel_projection(m: RatMatrix) -> RatMatrix:
    """Surjection with kernel exactly the column space of m.

    The complement basis consists of the standard coordinates that are not
    pivot coordinates of the column space, so the projection is
    deterministic.
    """
    red, pivots, r = rref(m.transpose())
    non_pivots = [j for j in range(m.rows) if j not in pivots]
    grid = []
    for t, j in enumerate(non_pivots):
        row = [Fraction(0)] * m.rows
        row[j] = Fraction(1)
        for i, p in enumerate(pivots):
            row[p] -= red.entries[i][j]
        grid.append(row)
    return RatMatrix(grid, rows=len(non_pivots), cols=m.rows)


def reflect_sink(dm: DecoratedRep, k: str) -> DecoratedRep:
    """Reflection at a sink: new space ker + decoration, new decoration coker."""
    rep = dm.rep
    if not rep.quiver.is_sink(k):
        raise NotASink(f"vertex {k!r} is not a sink")
    incoming, alpha = _assemble_in(rep, k)
    kernel = kernel_basis(alpha)  # in-dim x ker-dim
    ker_dim = kernel.cols
    dec_k = dm.decoration[k]
    rank_alpha = alpha.cols - ker_dim
    coker_dim = rep.dims[k] - rank_alpha

    new_quiver = mutate_quiver(rep.quiver, k)
    new_dims = dict(rep.dims)
    new_dims[k] = ker_dim + dec_k
    new_maps = {aid: m for aid, m in rep.maps.items()
                if rep.quiver.arrow(aid).head != k and rep.quiver.arrow(aid).tail != k}

    offset = 0
    for a in incoming:
        block = kernel.submatrix(range(offset, offset + rep.dims[a.tail]), range(ker_dim))
        padded = block.hstack(RatMatrix.zeros(rep.dims[a.tail], dec_k))
        new_maps[star_arrow_id(a.id)] = padded
        offset += rep.dims[a.tail]

    new_decoration = dict(dm.decoration)
    new_decoration[k] = coker_dim
    return DecoratedRep(Representation(new_quiver, new_dims, new_maps), new_decoration)


def reflect_source(dm: DecoratedRep, k: str) -> DecoratedRep:
    """Reflection at a source: new space coker + decoration, new decoration ker."""
    rep = dm.rep
    if not rep.quiver.is_source(k):
        raise NotASource(f"vertex {k!r} is not a source")
    outgoing, beta = _assemble_out(rep, k)
    projection = cokernel_projection(beta)  # coker-dim x out-dim
    coker_dim = projection.rows
    dec_k = dm.decoration[k]
    ker_dim = rep.dims[k] - rank(beta)

    new_quiver = mutate_quiver(rep.quiver, k)
    new_dims = dict(rep.dims)
    new_dims[k] = coker_dim + dec_k
    new_maps = {aid: m for aid, m in rep.maps.items()
                if rep.quiver.arrow(aid).head != k and rep.quiver.arrow(aid).tail != k}

    offset = 0
    for b in outgoing:
        block_cols = range(offset, offset + rep.dims[b.head])
        block = projection.submatrix(range(coker_dim), block_cols)
        padded = block.vstack(RatMatrix.zeros(dec_k, rep.dims[b.head]))
        new_maps[star_arrow_id(b.id)] = padded
        offset += rep.dims[b.head]

    new_decoration = dict(dm.decoration)
    new_decoration[k] = ker_dim
    return DecoratedRep(Representation(new_quiver, new_dims, new_maps), new_decoration)


def mutate_decorated(dm: DecoratedRep, k: str) -> DecoratedRep:
    """Dispatch to the sink or source reflection; anything else is an error."""
    quiver = dm.rep.quiver
    if quiver.is_sink(k):
        return reflect_sink(dm, k)
    if quiver.is_source(k):
        return reflect_source(dm, k)
    raise NotSinkOrSource(
        f"vertex {k!r} is neither a sink nor a source; decorated mutation at "
        "interior vertices is not implemented")


def intertwiner_space(m1: Representation, m2: Representation) -> tuple[list, RatMatrix]:
    """Basis of the space of homomorphisms m1 -> m2.

    Returns the vertex block layout [(vertex, rows, cols, offset)] and a
    matrix whose columns are flattened intertwiners.
    """
    if m1.quiver != m2.quiver:
        raise ShapeMismatch("representations live over different quivers")
    quiver = m1.quiver
    layout = []
    offset = 0
    for v in quiver.vertices:
        rows, cols = m2.dims[v], m1.dims[v]
        layout.append((v, rows, cols, offset))
        offset += rows * cols
    unknowns = offset
    pos = {v: (rows, cols, off) for v, rows, cols, off in layout}

    equations: list[list[Fraction]] = []
    for a in quiver.arrows:
        r2, c2, off_tail = pos[a.tail]
        r1, c1, off_head = pos[a.head]
        m2a = m2.maps[a.id]  # dims2[head] x dims2[tail]
        m1a = m1.maps[a.id]  # dims1[head] x dims1[tail]
        for i in range(m2a.rows):
            for j in range(m1.dims[a.tail]):
                row = [Fraction(0)] * unknowns
                # (M2(a) phi(tail))[i][j] with phi(tail) of shape r2 x c2
                for t in range(m2a.cols):
                    row[off_tail + t * c2 + j] += m2a.entries[i][t]
                # (phi(head) M1(a))[i][j] with phi(head) of shape r1 x c1
                for t in range(c1):
                    row[off_head + i * c1 + t] -= m1a.entries[t][j]
                if any(x != 0 for x in row):
                    equations.append(row)
    system = RatMatrix(equations, rows=len(equations), cols=unknowns) if equations \
        else RatMatrix.zeros(0, unknowns)
    return layout, kernel_basis(system)


def is_isomorphic(m1: Representation, m2: Representation, trials: int = 8,
                  seed: int = 0) -> bool:
    """Randomized isomorphism test over the exact intertwiner space.

    False negatives are possible but vanish quickly with the trial count;
    a True answer is exact.
    """
    if m1.quiver != m2.quiver:
        raise ShapeMismatch("representations live over different quivers")
    if m1.dimension_vector() != m2.dimension_vector():
        return False
    if all(d == 0 for d in m1.dims.values()):
        return True
    layout, basis = intertwiner_space(m1, m2)
    if basis.cols == 0:
        return False
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [Fraction(rng.randint(-99, 99)) for _ in range(basis.cols)]
        flat = [sum((basis.entries[i][j] * coeffs[j] for j in range(basis.cols)), Fraction(0))
                for i in range(basis.rows)]
        ok = True
        for v, rows, cols, off in layout:
            if rows == 0:
                continue
            block = RatMatrix([[flat[off + i * cols + j] for j in range(cols)]
                               for i in range(rows)], rows=rows, cols=cols)
            if invert(block) is None:
                ok = False
                break
        if ok:
            return True
    return False


def relabel_arrows(rep: Representation, mapping: dict[str, str],
                   target: Quiver) -> Representation:
    """Carry a representation across an arrow renaming onto a target quiver."""
    maps = {mapping.get(aid, aid): m for aid, m in rep.maps.items()}
    return Representation(target, dict(rep.dims), maps)
