"""Acceptance suite: one test per acceptance criterion, one report line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
PASS/FAIL lines.
"""

from __future__ import annotations

import functools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path as FilePath

from helpers import (
    TRIANGLE,
    TWO_CYCLE,
    acceptance_corpus,
    exhaustive_two_acyclic_quivers,
    random_invertible_substitution,
    triangle_qp,
)
from qpmut.decorated import DecoratedRep, Representation, is_isomorphic, reflect_sink, reflect_source, relabel_arrows
from qpmut.exactlin import RatMatrix, rank
from qpmut.jacobian import jacobian_dims, make_qp
from qpmut.mutation import check_involution, mutate_qp, mutate_qp_detailed
from qpmut.pathalg import AlgebraElement, apply_substitution, canonicalize_potential
from qpmut.quiver import (
    Arrow,
    Quiver,
    is_two_acyclic,
    matrix_mutate,
    mutate_quiver,
    quivers_equal,
    to_matrix,
)
from qpmut.reduction import split, verify_split
from qpmut.serialize import qp_to_json, write_json_file

ARTIFACTS = FilePath(__file__).parent / "_artifacts"


def criterion(name):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            start = time.time()
            try:
                fn()
            except BaseException:
                print(f"ACCEPTANCE {name}: FAIL ({time.time() - start:.1f}s)")
                raise
            print(f"ACCEPTANCE {name}: PASS ({time.time() - start:.1f}s)")
        return run
    return wrap


@criterion("quiver-involution-exhaustive")
def test_quiver_involution_exhaustive():
    checked = 0
    for q in exhaustive_two_acyclic_quivers(max_vertices=4, max_parallel=2):
        for k in q.vertices:
            assert quivers_equal(mutate_quiver(mutate_quiver(q, k), k), q)
            checked += 1
    assert checked > 60000


@criterion("matrix-mutation-oracle-exhaustive")
def test_matrix_oracle_exhaustive():
    for q in exhaustive_two_acyclic_quivers(max_vertices=4, max_parallel=2):
        b = to_matrix(q)
        for k in q.vertices:
            assert to_matrix(mutate_quiver(q, k)) == matrix_mutate(b, k)


def _disjoint_two_cycles(count: int) -> tuple[Quiver, AlgebraElement]:
    vertices = [str(i + 1) for i in range(2 * count)]
    arrows = []
    for i in range(count):
        u, v = vertices[2 * i], vertices[2 * i + 1]
        arrows.append(Arrow(f"a{i}", u, v))
        arrows.append(Arrow(f"b{i}", v, u))
    quiver = Quiver(vertices, arrows)
    potential = AlgebraElement.zero(quiver, 6)
    for i in range(count):
        potential = potential + AlgebraElement.from_word(quiver, 6, (f"b{i}", f"a{i}"))
    return quiver, potential


@criterion("trivial-qp-jacobian")
def test_trivial_qp_jacobian():
    for count in (1, 2, 3):
        quiver, potential = _disjoint_two_cycles(count)
        qp = make_qp(quiver, potential, 6)
        tq = jacobian_dims(qp)
        assert tq.dims[0] == len(quiver.vertices)
        assert all(d == 0 for d in tq.dims[1:])
        assert tq.total == len(quiver.vertices)


def _splitting_corpus() -> list:
    """Hand-built QPs plus random QPs with planted trivial parts, at m^8."""
    corpus = []

    corpus.append(make_qp(TWO_CYCLE, AlgebraElement.from_word(TWO_CYCLE, 8, ("b", "a")), 8))
    corpus.append(triangle_qp(8))
    corpus.append(make_qp(TWO_CYCLE,
                          AlgebraElement.from_word(TWO_CYCLE, 8, ("b", "a"))
                          + AlgebraElement.from_word(TWO_CYCLE, 8, ("b", "a", "b", "a")), 8))
    corpus.append(make_qp(TWO_CYCLE,
                          AlgebraElement.from_word(TWO_CYCLE, 8, ("b", "a"), 2)
                          + AlgebraElement.from_word(TWO_CYCLE, 8, ("a", "b", "a", "b"), 3), 8))

    pre = Quiver(["1", "2", "3"],
                 [("[b∘a]", "1", "3"), ("c", "3", "1"), ("a*", "2", "1"), ("b*", "3", "2")])
    corpus.append(make_qp(pre,
                          AlgebraElement.from_word(pre, 8, ("c", "[b∘a]"))
                          + AlgebraElement.from_word(pre, 8, ("[b∘a]", "a*", "b*")), 8))

    parallel = Quiver(["1", "2"], [("a1", "1", "2"), ("a2", "1", "2"),
                                   ("b1", "2", "1"), ("b2", "2", "1")])
    corpus.append(make_qp(parallel,
                          AlgebraElement.from_word(parallel, 8, ("a1", "b1"))
                          + AlgebraElement.from_word(parallel, 8, ("a2", "b1"), 5), 8))
    corpus.append(make_qp(parallel,
                          AlgebraElement.from_word(parallel, 8, ("a1", "b1"))
                          + AlgebraElement.from_word(parallel, 8, ("a1", "b2"), 2)
                          + AlgebraElement.from_word(parallel, 8, ("a2", "b2"), 7), 8))
    corpus.append(make_qp(TRIANGLE, None, 8))

    mixed = Quiver(["1", "2", "3"],
                   [("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3"),
                    ("d", "3", "1"), ("e", "1", "3")])
    rng = random.Random(777)
    while len(corpus) < 22:
        planted = AlgebraElement.from_word(mixed, 8, ("b", "a"), rng.randint(1, 6))
        planted = planted + AlgebraElement.from_word(mixed, 8, ("e", "d"), rng.randint(1, 6))
        planted = planted + AlgebraElement.from_word(mixed, 8, ("d", "c", "a"), rng.randint(-5, 5))
        planted = planted + AlgebraElement.from_word(mixed, 8, ("b", "a", "b", "a"),
                                                     rng.randint(-3, 3))
        planted = planted + AlgebraElement.from_word(mixed, 8, ("e", "d", "e", "d"),
                                                     rng.randint(-3, 3))
        qp = make_qp(mixed, planted, 8)
        phi = random_invertible_substitution(mixed, 8, rng)
        scrambled = make_qp(mixed, canonicalize_potential(apply_substitution(phi, qp.potential)), 8)
        corpus.extend([qp, scrambled])
    return corpus


@criterion("splitting-theorem-suite")
def test_splitting_theorem_suite():
    corpus = _splitting_corpus()
    assert len(corpus) >= 20
    for qp in corpus:
        result = split(qp)
        assert verify_split(qp, result)
        red = result.reduced_qp.potential
        assert red.is_zero() or red.valuation() >= 3
        trivial = {x for pair in result.trivial_pairs for x in pair}
        assert all(not set(p.arrows) & trivial for p in red.terms)
        assert jacobian_dims(qp).dims == jacobian_dims(result.reduced_qp).dims


@criterion("triangle-worked-example")
def test_triangle_worked_example():
    qp = triangle_qp(8)
    mutated = mutate_qp(qp, "2")
    assert sorted((a.id, a.tail, a.head) for a in mutated.quiver.arrows) == \
        [("a*", "2", "1"), ("b*", "3", "2")]
    assert mutated.potential.is_zero()
    report = check_involution(qp, "2")
    assert report.arrow_matrices_match
    assert report.jacobian_dims_match
    assert report.degree_profiles_match


@criterion("theorem2-invariant-suite")
def test_theorem2_invariant_suite():
    corpus = acceptance_corpus(count=50, order=8)
    assert len(corpus) >= 50
    failures = []
    for i, qp in enumerate(corpus):
        for k in qp.quiver.vertices:
            report = check_involution(qp, k)
            if not report.passed:
                failures.append((i, k, report))
    assert not failures, f"{len(failures)} involution failures: {failures[:3]}"


@criterion("genericity-property")
def test_genericity_property():
    corpus = acceptance_corpus(count=50, order=8)
    counterexamples = []

    def explore(qp, depth, trail, index):
        if depth == 0:
            return
        for k in qp.quiver.vertices:
            mutated = mutate_qp(qp, k)
            if not is_two_acyclic(mutated.quiver):
                counterexamples.append((index, trail + (k,), qp))
                continue
            explore(mutated, depth - 1, trail + (k,), index)

    for i, qp in enumerate(corpus):
        explore(qp, 4, (), i)

    if counterexamples:
        ARTIFACTS.mkdir(exist_ok=True)
        for n, (index, trail, qp) in enumerate(counterexamples):
            write_json_file(ARTIFACTS / f"genericity_counterexample_{n}.json",
                            {"corpus_index": index, "sequence": list(trail),
                             "qp": qp_to_json(qp)})
    assert not counterexamples, \
        f"2-cycles created along {len(counterexamples)} sequences; see {ARTIFACTS}"


_REFLECTION_QUIVERS = [
    (Quiver(["1", "2"], [("a", "1", "2")]), "2", "sink"),
    (Quiver(["1", "2", "3"], [("a", "1", "3"), ("b", "2", "3")]), "3", "sink"),
    (Quiver(["1", "2", "3", "4"], [("a", "1", "4"), ("b", "2", "4"), ("c", "3", "4")]),
     "4", "sink"),
    (Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "1", "3")]), "1", "source"),
    (Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "1", "3"), ("c", "1", "4")]),
     "1", "source"),
]


@criterion("decorated-reflection-suite")
def test_decorated_reflection_suite():
    rng = random.Random(4242)
    checked = 0
    while checked < 100:
        quiver, k, kind = _REFLECTION_QUIVERS[checked % len(_REFLECTION_QUIVERS)]
        dims = {v: rng.randint(0, 4) for v in quiver.vertices}
        maps = {}
        for a in quiver.arrows:
            rows, cols = dims[a.head], dims[a.tail]
            maps[a.id] = RatMatrix([[Fraction(rng.randint(-4, 4)) for _ in range(cols)]
                                    for _ in range(rows)], rows=rows, cols=cols)
        dm = DecoratedRep(Representation(quiver, dims, maps),
                          {v: rng.randint(0, 3) for v in quiver.vertices})

        if kind == "sink":
            incoming = [a for a in quiver.arrows if a.head == k]
            stacked = RatMatrix.zeros(dims[k], 0)
            for a in incoming:
                stacked = stacked.hstack(dm.rep.maps[a.id])
            r = rank(stacked)
            once = reflect_sink(dm, k)
            assert once.rep.dims[k] == (stacked.cols - r) + dm.decoration[k]
            assert once.decoration[k] == dims[k] - r
            twice = reflect_source(once, k)
        else:
            outgoing = [a for a in quiver.arrows if a.tail == k]
            stacked = RatMatrix.zeros(0, dims[k])
            for a in outgoing:
                stacked = stacked.vstack(dm.rep.maps[a.id])
            r = rank(stacked)
            once = reflect_source(dm, k)
            assert once.rep.dims[k] == (stacked.rows - r) + dm.decoration[k]
            assert once.decoration[k] == dims[k] - r
            twice = reflect_sink(once, k)

        assert twice.rep.dimension_vector() == dm.rep.dimension_vector()
        assert twice.decoration_vector() == dm.decoration_vector()
        renamed = relabel_arrows(twice.rep, {a.id + "**": a.id for a in quiver.arrows},
                                 quiver)
        assert is_isomorphic(renamed, dm.rep, trials=8)
        checked += 1
    assert checked >= 100


@criterion("primary-suite-standalone")
def test_primary_suite_has_no_secondary_dependency():
    # the engine and this suite must not touch the explorer frontend
    offenders = [name for name, module in sys.modules.items()
                 if getattr(module, "__file__", None)
                 and "frontend" in str(module.__file__)]
    assert not offenders
    import qpmut

    package_dir = FilePath(qpmut.__file__).parent
    assert not (package_dir / "frontend").exists()
