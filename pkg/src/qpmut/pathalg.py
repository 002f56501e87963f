"""Truncated complete path algebra arithmetic.

Elements are finite rational combinations of composable arrow words, known
modulo the N-th power of the arrow ideal ("order N").  Arrow words are stored
in function order: in the word ``(a_1, ..., a_d)`` the rightmost arrow acts
first, and consecutive letters satisfy tail(a_m) == head(a_{m+1}).

Potentials are combinations of cyclic words of degree >= 2, stored with every
cycle in its canonical rotation (lexicographically minimal arrow-id
sequence), which makes equality modulo cyclic rotation a plain dictionary
comparison.

Substitutions assign to some arrows an element with the same endpoints; they
extend to continuous algebra endomorphisms, letters mapping to their images
and words to truncated products.  Unitriangular substitutions (degree-1 part
the identity) are invertible by a fixed-point iteration that gains one degree
of accuracy per round.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NonCyclicTerm, QuiverMismatch, UnknownArrow
from .exactlin import RatMatrix, invert, rat
from .quiver import Quiver


@dataclass(frozen=True, slots=True)
class Path:
    """An arrow word, or a lone vertex standing for the trivial path."""

    arrows: tuple[str, ...] = ()
    vertex: str | None = None

    def __post_init__(self):
        if bool(self.arrows) == (self.vertex is not None):
            raise ValueError("a path is either a nonempty arrow word or a vertex")

    @classmethod
    def word(cls, arrows: Iterable[str]) -> "Path":
        return cls(arrows=tuple(arrows))

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls(vertex=str(vertex))

    @property
    def degree(self) -> int:
        return len(self.arrows)

    def __repr__(self) -> str:
        if self.vertex is not None:
            return f"e({self.vertex})"
        return "*".join(self.arrows)


def path_key(p: Path) -> tuple:
    """Deterministic total order on paths: by degree, then by letters."""
    if p.vertex is not None:
        return (0, (p.vertex,))
    return (len(p.arrows), p.arrows)


def path_head(q: Quiver, p: Path) -> str:
    return p.vertex if p.vertex is not None else q.arrow(p.arrows[0]).head


def path_tail(q: Quiver, p: Path) -> str:
    return p.vertex if p.vertex is not None else q.arrow(p.arrows[-1]).tail


def is_composable(q: Quiver, arrows: tuple[str, ...]) -> bool:
    for m in range(len(arrows) - 1):
        if q.arrow(arrows[m]).tail != q.arrow(arrows[m + 1]).head:
            return False
    return True


def is_cyclic_path(q: Quiver, p: Path) -> bool:
    return path_head(q, p) == path_tail(q, p)


def canonical_rotation(arrows: tuple[str, ...]) -> tuple[str, ...]:
    """Lexicographically minimal rotation of a cyclic arrow word."""
    d = len(arrows)
    doubled = arrows + arrows
    return min(doubled[m:m + d] for m in range(d))


class AlgebraElement:
    """Finite combination of paths with nonzero rational coefficients,
    known modulo the ``order``-th power of the arrow ideal."""

    __slots__ = ("quiver", "order", "terms")

    def __init__(self, quiver: Quiver, order: int, terms: Mapping[Path, Fraction] | None = None,
                 validate: bool = True):
        if order < 1:
            raise ValueError("truncation order must be at least 1")
        clean: dict[Path, Fraction] = {}
        for p, c in (terms or {}).items():
            c = rat(c)
            if c == 0:
                continue
            if validate:
                if p.degree >= order:
                    raise ValueError(f"path {p!r} has degree >= order {order}")
                if p.vertex is not None:
                    quiver.require_vertex(p.vertex)
                elif not is_composable(quiver, p.arrows):
                    raise ValueError(f"non-composable word {p!r}")
            clean[p] = c
        self.quiver = quiver
        self.order = order
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, quiver: Quiver, order: int) -> "AlgebraElement":
        return cls(quiver, order, {}, validate=False)

    @classmethod
    def idempotent(cls, quiver: Quiver, order: int, vertex: str) -> "AlgebraElement":
        quiver.require_vertex(vertex)
        return cls(quiver, order, {Path.trivial(vertex): Fraction(1)}, validate=False)

    @classmethod
    def unit(cls, quiver: Quiver, order: int) -> "AlgebraElement":
        return cls(quiver, order, {Path.trivial(v): Fraction(1) for v in quiver.vertices},
                   validate=False)

    @classmethod
    def from_arrow(cls, quiver: Quiver, order: int, arrow_id: str) -> "AlgebraElement":
        if not quiver.has_arrow(arrow_id):
            raise UnknownArrow(f"arrow {arrow_id!r} not in quiver")
        return cls(quiver, order, {Path.word((arrow_id,)): Fraction(1)}, validate=False)

    @classmethod
    def from_word(cls, quiver: Quiver, order: int, arrows: Iterable[str], coeff=1) -> "AlgebraElement":
        return cls(quiver, order, {Path.word(arrows): rat(coeff)})

    # -- structure ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.quiver == other.quiver
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.quiver, self.order, tuple(sorted(self.terms.items(), key=lambda t: path_key(t[0])))))

    def __repr__(self) -> str:
        if not self.terms:
            return f"0 (mod m^{self.order})"
        parts = [f"{c}*{p!r}" for p, c in self.sorted_terms()]
        return " + ".join(parts) + f" (mod m^{self.order})"

    def sorted_terms(self) -> list[tuple[Path, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: path_key(t[0]))

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> int | None:
        """Minimal degree of a term; None for the zero element."""
        if not self.terms:
            return None
        return min(p.degree for p in self.terms)

    def coefficient(self, p: Path) -> Fraction:
        return self.terms.get(p, Fraction(0))

    def degree_part(self, d: int) -> "AlgebraElement":
        return AlgebraElement(self.quiver, self.order,
                              {p: c for p, c in self.terms.items() if p.degree == d}, validate=False)

    def degree_at_least(self, d: int) -> "AlgebraElement":
        return AlgebraElement(self.quiver, self.order,
                              {p: c for p, c in self.terms.items() if p.degree >= d}, validate=False)

    def truncate(self, order: int) -> "AlgebraElement":
        """Restrict to a lower truncation order (forgetting information)."""
        if order > self.order:
            raise ValueError(f"cannot truncate order {self.order} up to {order}; use lift")
        return AlgebraElement(self.quiver, order,
                              {p: c for p, c in self.terms.items() if p.degree < order}, validate=False)

    def lift(self, order: int) -> "AlgebraElement":
        """Reinterpret at a higher order.

        Sound only when the element is exact polynomial data (no unknown
        tail); every caller in this package lifts freshly built finite data.
        """
        if order < self.order:
            raise ValueError(f"cannot lift order {self.order} down to {order}; use truncate")
        return AlgebraElement(self.quiver, order, dict(self.terms), validate=False)

    # -- arithmetic --------------------------------------------------------

    def _check_same_quiver(self, other: "AlgebraElement") -> None:
        if self.quiver != other.quiver:
            raise QuiverMismatch("operands live over different quivers")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same_quiver(other)
        order = min(self.order, other.order)
        terms = {p: c for p, c in self.terms.items() if p.degree < order}
        for p, c in other.terms.items():
            if p.degree >= order:
                continue
            s = terms.get(p, Fraction(0)) + c
            if s == 0:
                terms.pop(p, None)
            else:
                terms[p] = s
        return AlgebraElement(self.quiver, order, terms, validate=False)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.quiver, self.order, {p: -c for p, c in self.terms.items()},
                              validate=False)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = rat(c)
        if c == 0:
            return AlgebraElement.zero(self.quiver, self.order)
        return AlgebraElement(self.quiver, self.order, {p: c * x for p, x in self.terms.items()},
                              validate=False)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Concatenation product, truncated to order min(x.order, y.order)."""
    x._check_same_quiver(y)
    q = x.quiver
    order = min(x.order, y.order)
    terms: dict[Path, Fraction] = {}
    tails = {p: path_tail(q, p) for p in x.terms}
    heads = {p: path_head(q, p) for p in y.terms}
    for p, cx in x.terms.items():
        for r, cy in y.terms.items():
            if tails[p] != heads[r]:
                continue
            if p.vertex is not None:
                new = r
            elif r.vertex is not None:
                new = p
            else:
                if p.degree + r.degree >= order:
                    continue
                new = Path(arrows=p.arrows + r.arrows)
            if new.degree >= order:
                continue
            c = cx * cy
            s = terms.get(new, Fraction(0)) + c
            if s == 0:
                terms.pop(new, None)
            else:
                terms[new] = s
    return AlgebraElement(q, order, terms, validate=False)


class Potential(AlgebraElement):
    """Combination of cyclic words of degree >= 2 in canonical rotation.

    Build through :func:`canonicalize_potential`; the constructor trusts its
    input.
    """

    __slots__ = ()


def canonicalize_potential(x: AlgebraElement) -> Potential:
    """Merge rotations of cyclic words into canonical form.

    Raises NonCyclicTerm when some term is not a cyclic word of degree >= 2.
    """
    q = x.quiver
    merged: dict[Path, Fraction] = {}
    for p, c in x.terms.items():
        if p.degree < 2:
            raise NonCyclicTerm(f"potential term {p!r} has degree {p.degree} < 2")
        if not is_cyclic_path(q, p):
            raise NonCyclicTerm(f"potential term {p!r} is not cyclic")
        canon = Path(arrows=canonical_rotation(p.arrows))
        s = merged.get(canon, Fraction(0)) + c
        if s == 0:
            merged.pop(canon, None)
        else:
            merged[canon] = s
    result = Potential(x.quiver, x.order, {}, validate=False)
    result.terms.update(merged)
    return result


def zero_potential(quiver: Quiver, order: int) -> Potential:
    return Potential(quiver, order, {}, validate=False)


def cyclic_derivative(s: Potential, arrow_id: str) -> AlgebraElement:
    """Rotation-sum derivative of a potential with respect to one arrow.

    Every occurrence of the arrow in a cyclic word contributes the word
    rotated to start just past that occurrence, with the occurrence removed.
    The result is valid one order lower than the input.
    """
    q = s.quiver
    if not q.has_arrow(arrow_id):
        raise UnknownArrow(f"arrow {arrow_id!r} not in quiver")
    order = s.order - 1
    terms: dict[Path, Fraction] = {}
    for p, c in s.terms.items():
        w = p.arrows
        d = len(w)
        for m in range(d):
            if w[m] != arrow_id:
                continue
            cut = Path(arrows=w[m + 1:] + w[:m])
            t = terms.get(cut, Fraction(0)) + c
            if t == 0:
                terms.pop(cut, None)
            else:
                terms[cut] = t
    return AlgebraElement(q, order, terms, validate=False)


class Substitution:
    """Arrow assignment extending to a continuous algebra endomorphism.

    Arrows absent from the assignment map to themselves.  Every image must
    share the arrow's endpoints and have no constant part.
    """

    __slots__ = ("quiver", "order", "images")

    def __init__(self, quiver: Quiver, order: int,
                 images: Mapping[str, AlgebraElement] | None = None):
        if order < 1:
            raise ValueError("truncation order must be at least 1")
        stored: dict[str, AlgebraElement] = {}
        for arrow_id, img in (images or {}).items():
            arrow = quiver.arrow(arrow_id)
            if img.quiver != quiver:
                raise QuiverMismatch(f"image of {arrow_id!r} lives over a different quiver")
            if img.order < order:
                raise ValueError(f"image of {arrow_id!r} has order {img.order} < {order}")
            img = img.truncate(order) if img.order > order else img
            for p in img.terms:
                if p.degree < 1:
                    raise ValueError(f"image of {arrow_id!r} has a constant term")
                if path_tail(quiver, p) != arrow.tail or path_head(quiver, p) != arrow.head:
                    raise ValueError(
                        f"image of {arrow_id!r} contains {p!r}, which does not run "
                        f"{arrow.tail} -> {arrow.head}")
            stored[arrow_id] = img
        self.quiver = quiver
        self.order = order
        self.images = stored

    @classmethod
    def identity(cls, quiver: Quiver, order: int) -> "Substitution":
        return cls(quiver, order, {})

    def image_of(self, arrow_id: str) -> AlgebraElement:
        img = self.images.get(arrow_id)
        if img is None:
            return AlgebraElement.from_arrow(self.quiver, self.order, arrow_id)
        return img

    def __eq__(self, other) -> bool:
        if not isinstance(other, Substitution):
            return False
        if self.quiver != other.quiver or self.order != other.order:
            return False
        arrows = set(self.images) | set(other.images)
        return all(self.image_of(a) == other.image_of(a) for a in arrows)

    def __repr__(self) -> str:
        body = ", ".join(f"{a} -> {img!r}" for a, img in sorted(self.images.items()))
        return f"Substitution(order={self.order}, {body or 'identity'})"

    def is_identity(self) -> bool:
        return all(self.image_of(a) == AlgebraElement.from_arrow(self.quiver, self.order, a)
                   for a in self.images)

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        return apply_substitution(self, x)


def apply_substitution(phi: Substitution, x: AlgebraElement) -> AlgebraElement:
    """Replace every letter of every word by its image; idempotents are fixed."""
    if phi.quiver != x.quiver:
        raise QuiverMismatch("substitution and element live over different quivers")
    q = x.quiver
    order = min(phi.order, x.order)
    total = AlgebraElement.zero(q, order)
    for p, c in x.terms.items():
        if p.vertex is not None:
            total = total + AlgebraElement(q, order, {p: c}, validate=False)
            continue
        acc: AlgebraElement | None = None
        for arrow_id in p.arrows:
            img = phi.image_of(arrow_id)
            acc = img if acc is None else multiply(acc, img)
            if acc.is_zero():
                break
        assert acc is not None
        total = total + acc.scale(c)
    return total


def compose(phi: Substitution, psi: Substitution) -> Substitution:
    """Substitution sending each arrow a to phi(psi(a))."""
    if phi.quiver != psi.quiver:
        raise QuiverMismatch("cannot compose substitutions over different quivers")
    order = min(phi.order, psi.order)
    images: dict[str, AlgebraElement] = {}
    for arrow_id in set(phi.images) | set(psi.images):
        images[arrow_id] = apply_substitution(phi, psi.image_of(arrow_id))
    return Substitution(phi.quiver, order, images)


def is_unitriangular(phi: Substitution) -> bool:
    """True when the degree-1 part of every arrow image is the arrow itself."""
    for arrow_id in phi.images:
        linear = phi.image_of(arrow_id).degree_part(1)
        expected = AlgebraElement.from_arrow(phi.quiver, phi.order, arrow_id)
        if linear != expected:
            return False
    return True


def _linear_blocks(phi: Substitution) -> dict[tuple[str, str], tuple[list[str], RatMatrix]]:
    """Degree-1 part of phi as one square matrix per ordered vertex pair.

    For the block of arrows t -> h (sorted by id), entry [b][a] is the
    coefficient of arrow b in the image of arrow a.
    """
    q = phi.quiver
    blocks: dict[tuple[str, str], tuple[list[str], RatMatrix]] = {}
    by_pair: dict[tuple[str, str], list[str]] = {}
    for a in q.arrows:
        by_pair.setdefault((a.tail, a.head), []).append(a.id)
    for pair, ids in by_pair.items():
        ids.sort()
        pos = {aid: i for i, aid in enumerate(ids)}
        n = len(ids)
        grid = [[Fraction(0)] * n for _ in range(n)]
        for j, aid in enumerate(ids):
            for p, c in phi.image_of(aid).degree_part(1).terms.items():
                grid[pos[p.arrows[0]]][j] = c
        blocks[pair] = (ids, RatMatrix(grid, rows=n, cols=n))
    return blocks


def is_invertible(phi: Substitution) -> bool:
    """True when the degree-1 part is invertible on every arrow block."""
    return all(invert(mat) is not None for _, mat in _linear_blocks(phi).values())


def inverse_substitution(phi: Substitution) -> Substitution:
    """Inverse modulo the truncation order.

    The linear part is inverted blockwise; the remaining unitriangular factor
    is inverted by fixed-point iteration, which gains at least one degree of
    accuracy per round and therefore terminates within ``order`` rounds.
    """
    q = phi.quiver
    order = phi.order
    linv_images: dict[str, AlgebraElement] = {}
    for (tail, head), (ids, mat) in _linear_blocks(phi).items():
        inv = invert(mat)
        if inv is None:
            raise ValueError(f"substitution is not invertible on arrows {tail} -> {head}")
        for j, aid in enumerate(ids):
            terms = {Path.word((ids[i],)): inv.entries[i][j]
                     for i in range(len(ids)) if inv.entries[i][j] != 0}
            img = AlgebraElement(q, order, terms, validate=False)
            if img != AlgebraElement.from_arrow(q, order, aid):
                linv_images[aid] = img
    linv = Substitution(q, order, linv_images)

    uni = compose(phi, linv)
    arrows = sorted(set(uni.images))
    psi = Substitution.identity(q, order)
    for _ in range(order + 1):
        errors = {}
        for aid in arrows:
            err = apply_substitution(uni, psi.image_of(aid)) - AlgebraElement.from_arrow(q, order, aid)
            if not err.is_zero():
                errors[aid] = err
        if not errors:
            break
        images = dict(psi.images)
        for aid, err in errors.items():
            images[aid] = psi.image_of(aid) - err
        psi = Substitution(q, order, images)
    else:
        raise RuntimeError("fixed-point inversion failed to converge (non-unitriangular input?)")
    return compose(linv, psi)
