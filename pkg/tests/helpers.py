"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from qpmut.exactlin import RatMatrix, rref
from qpmut.jacobian import QP, enumerate_words, jacobian_generators, make_qp
from qpmut.mutation import random_potential
from qpmut.pathalg import AlgebraElement, Path, Potential, Substitution, path_key
from qpmut.quiver import Arrow, Quiver

TRIANGLE = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
TWO_CYCLE = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
A2 = Quiver(["1", "2"], [("a", "1", "2")])


def triangle_qp(order: int = 8) -> QP:
    return make_qp(TRIANGLE, AlgebraElement.from_word(TRIANGLE, order, ("c", "b", "a")), order)


def two_cycle_qp(order: int = 6) -> QP:
    return make_qp(TWO_CYCLE, AlgebraElement.from_word(TWO_CYCLE, order, ("b", "a")), order)


# -- exhaustive quiver family -------------------------------------------------

_PAIR_STATES = ((0, 0), (1, 1), (1, 2), (-1, 1), (-1, 2))


def exhaustive_two_acyclic_quivers(max_vertices: int = 4, max_parallel: int = 2):
    """All loop-free 2-acyclic quivers with bounded size, exhaustively.

    For every unordered vertex pair the arrows run in one direction only
    (2-acyclicity), with multiplicity up to max_parallel.
    """
    states = tuple(s for s in _PAIR_STATES if s[1] <= max_parallel)
    for n in range(1, max_vertices + 1):
        vertices = tuple(str(i + 1) for i in range(n))
        pairs = list(combinations(range(n), 2))
        for assignment in product(states, repeat=len(pairs)):
            arrows = []
            for (i, j), (direction, mult) in zip(pairs, assignment):
                if direction == 0:
                    continue
                tail, head = (vertices[i], vertices[j]) if direction > 0 else (vertices[j], vertices[i])
                for t in range(mult):
                    arrows.append(Arrow(f"{tail}>{head}.{t}", tail, head))
            yield Quiver(vertices, arrows)


def random_two_acyclic_quiver(rng: random.Random, n_vertices: int,
                              max_parallel: int = 2, density: float = 0.7) -> Quiver:
    vertices = tuple(str(i + 1) for i in range(n_vertices))
    arrows = []
    for i, j in combinations(range(n_vertices), 2):
        if rng.random() > density:
            continue
        tail, head = (vertices[i], vertices[j]) if rng.random() < 0.5 else (vertices[j], vertices[i])
        for t in range(rng.randint(1, max_parallel)):
            arrows.append(Arrow(f"{tail}>{head}.{t}", tail, head))
    return Quiver(vertices, arrows)


# -- independent oracles -------------------------------------------------------

def rotation_cyclic_derivative(s: Potential, arrow_id: str) -> AlgebraElement:
    """Cyclic derivative via brute-force rotation enumeration.

    Enumerate every rotation of every cyclic word; each rotation that starts
    with the arrow contributes its remainder.
    """
    terms: dict[Path, Fraction] = {}
    for p, c in s.terms.items():
        w = p.arrows
        for m in range(len(w)):
            rot = w[m:] + w[:m]
            if rot[0] != arrow_id:
                continue
            cut = Path(arrows=rot[1:])
            t = terms.get(cut, Fraction(0)) + c
            if t == 0:
                terms.pop(cut, None)
            else:
                terms[cut] = t
    return AlgebraElement(s.quiver, s.order - 1, terms, validate=False)


def brute_force_jacobian_dims(qp: QP) -> tuple[int, ...]:
    """Dense-elimination reference for jacobian_dims.

    Follows the simplest provably-complete construction literally: the
    monomial basis is every path of degree < N, the ideal is spanned by
    every sandwich word * generator * word inside that bound, and layer
    dimensions come from column-restricted ranks of the dense sandwich
    matrix.  Only degrees below the trust horizon N-1 are reported.
    """
    quiver = qp.quiver
    order = qp.order
    horizon = order - 1

    monomials: list[Path] = [Path.trivial(v) for v in quiver.vertices]
    for layer in enumerate_words(quiver, order - 1):
        monomials.extend(Path.word(w) for w in sorted(layer))
    monomials.sort(key=path_key)
    index = {p: i for i, p in enumerate(monomials)}

    side_words: list[AlgebraElement] = [
        AlgebraElement.idempotent(quiver, order, v) for v in quiver.vertices
    ]
    for layer in enumerate_words(quiver, order - 1):
        side_words.extend(AlgebraElement.from_word(quiver, order, w) for w in layer)

    from qpmut.pathalg import multiply

    rows: list[list[Fraction]] = []
    for gen in jacobian_generators(qp):
        gen_lift = gen.lift(order)
        for left in side_words:
            partial = multiply(left, gen_lift)
            if partial.is_zero():
                continue
            for right in side_words:
                sandwich = multiply(partial, right)
                if sandwich.is_zero():
                    continue
                vec = [Fraction(0)] * len(monomials)
                for p, c in sandwich.terms.items():
                    vec[index[p]] = c
                rows.append(vec)

    matrix = RatMatrix(rows, rows=len(rows), cols=len(monomials)) if rows \
        else RatMatrix.zeros(0, len(monomials))
    total_rank = rref(matrix)[2]

    counts: dict[int, int] = {}
    for p in monomials:
        counts[p.degree] = counts.get(p.degree, 0) + 1

    def rank_below(degree: int) -> int:
        cols = [i for i, p in enumerate(monomials) if p.degree < degree]
        if not cols or matrix.rows == 0:
            return 0
        return rref(matrix.submatrix(range(matrix.rows), cols))[2]

    dims = []
    for d in range(horizon):
        words_at_least_d = sum(c for deg, c in counts.items() if deg >= d)
        words_above = sum(c for deg, c in counts.items() if deg >= d + 1)
        f_d = words_at_least_d - total_rank + rank_below(d)
        f_next = words_above - total_rank + rank_below(d + 1)
        dims.append(f_d - f_next)
    return tuple(dims)


# -- random substitutions -------------------------------------------------------

def random_unitriangular(quiver: Quiver, order: int, rng: random.Random,
                         max_terms: int = 2) -> Substitution:
    """Identity plus a few random higher-degree corrections on random arrows."""
    words = enumerate_words(quiver, order - 1)
    from qpmut.pathalg import path_head, path_tail

    images = {}
    for a in quiver.arrows:
        if rng.random() < 0.5:
            continue
        candidates = [
            w for layer in words[1:] for w in layer
            if quiver.arrow(w[0]).head == a.head and quiver.arrow(w[-1]).tail == a.tail
        ]
        if not candidates:
            continue
        img = AlgebraElement.from_arrow(quiver, order, a.id)
        for _ in range(rng.randint(1, max_terms)):
            w = rng.choice(candidates)
            img = img + AlgebraElement.from_word(quiver, order, w, rng.randint(-3, 3))
        if img != AlgebraElement.from_arrow(quiver, order, a.id):
            images[a.id] = img
    return Substitution(quiver, order, images)


def random_linear_change(quiver: Quiver, order: int, rng: random.Random) -> Substitution:
    """Random invertible degree-1 substitution (blockwise invertible mixes)."""
    from qpmut.exactlin import invert

    by_pair: dict[tuple[str, str], list[str]] = {}
    for a in quiver.arrows:
        by_pair.setdefault((a.tail, a.head), []).append(a.id)
    images = {}
    for ids in by_pair.values():
        ids.sort()
        n = len(ids)
        while True:
            grid = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
            m = RatMatrix(grid, rows=n, cols=n)
            if invert(m) is not None:
                break
        for j, aid in enumerate(ids):
            terms = {Path.word((ids[i],)): grid[i][j] for i in range(n) if grid[i][j] != 0}
            img = AlgebraElement(quiver, order, terms, validate=False)
            if img != AlgebraElement.from_arrow(quiver, order, aid):
                images[aid] = img
    return Substitution(quiver, order, images)


def random_invertible_substitution(quiver: Quiver, order: int, rng: random.Random) -> Substitution:
    from qpmut.pathalg import compose

    return compose(random_linear_change(quiver, order, rng),
                   random_unitriangular(quiver, order, rng))


# -- shared acceptance corpus ----------------------------------------------------

# Corpus templates are multiplicity-free and no two cycles share a length-2
# segment.  When either fails, reduction's linear mixing can merge distinct
# potential terms into one: the result is still right-equivalent (arrow
# matrices and Jacobian dims match) but the degree-profile proxy breaks.
_CORPUS_TEMPLATES = [
    Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]),
    Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"),
                                  ("d", "4", "1")]),
    Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"),
                                  ("d", "4", "1")]),
    Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"),
                                  ("d", "3", "4"), ("e", "4", "2")]),
    Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"),
                                  ("d", "4", "1"), ("e", "4", "2")]),
    Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"),
                                  ("d", "1", "4"), ("e", "2", "4")]),
]


def acceptance_corpus(count: int = 50, order: int = 8) -> list[QP]:
    """Deterministic corpus of generic-potential QPs on <= 4 vertices."""
    corpus = []
    for seed in range(count):
        quiver = _CORPUS_TEMPLATES[seed % len(_CORPUS_TEMPLATES)]
        potential = random_potential(quiver, max_degree=4, seed=1000 + seed, order=order)
        corpus.append(make_qp(quiver, potential, order))
    return corpus
