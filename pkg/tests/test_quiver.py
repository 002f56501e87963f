"""Combinatorial quiver mutation and its matrix oracle."""

import random

import pytest

from helpers import A2, TRIANGLE, exhaustive_two_acyclic_quivers, random_two_acyclic_quiver
from qpmut.errors import LoopError, TwoCycleAtVertex, TwoCycleError, UnknownVertex
from qpmut.quiver import (
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


def test_construction_rejects_loops():
    with pytest.raises(LoopError):
        Quiver(["1"], [("a", "1", "1")])


def test_construction_rejects_duplicate_ids():
    with pytest.raises(ValueError):
        Quiver(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])


def test_construction_rejects_unknown_endpoints():
    with pytest.raises(UnknownVertex):
        Quiver(["1"], [("a", "1", "2")])


def test_sink_mutation_reverses_single_arrow():
    mutated = mutate_quiver(A2, "2")
    assert [tuple(a) for a in mutated.arrows] == [("a*", "2", "1")]


def test_triangle_mutation_cancels_composite():
    mutated = mutate_quiver(TRIANGLE, "2")
    assert sorted(a.id for a in mutated.arrows) == ["a*", "b*"]
    assert mutated.arrow("a*") == Arrow("a*", "2", "1")
    assert mutated.arrow("b*") == Arrow("b*", "3", "2")


def test_path_mutation_creates_triangle():
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    mutated = mutate_quiver(q, "2")
    assert sorted(a.id for a in mutated.arrows) == ["[b∘a]", "a*", "b*"]
    assert mutated.arrow("[b∘a]") == Arrow("[b∘a]", "1", "3")


def test_mutation_rejects_two_cycle_at_vertex():
    q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    with pytest.raises(TwoCycleAtVertex):
        mutate_quiver(q, "1")


def test_mutation_rejects_unknown_vertex():
    with pytest.raises(UnknownVertex):
        mutate_quiver(A2, "9")


def test_to_matrix_single_arrow():
    b = to_matrix(A2)
    assert b["2", "1"] == 1
    assert b["1", "2"] == -1


def test_to_matrix_zero_case():
    q = Quiver(["1", "2", "3"])
    assert to_matrix(q).entries == ((0, 0, 0),) * 3


def test_to_matrix_kronecker_multiplicity():
    q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    assert to_matrix(q)["2", "1"] == 2


def test_to_matrix_rejects_two_cycles():
    q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    with pytest.raises(TwoCycleError):
        to_matrix(q)


def test_matrix_mutate_zero():
    b = ExchangeMatrix(("1", "2"), ((0, 0), (0, 0)))
    assert matrix_mutate(b, "1") == b


def test_matrix_mutate_sign_flip():
    assert matrix_mutate(to_matrix(A2), "2") == to_matrix(mutate_quiver(A2, "2"))


def test_matrix_mutate_triangle():
    assert matrix_mutate(to_matrix(TRIANGLE), "2") == to_matrix(mutate_quiver(TRIANGLE, "2"))


def test_two_cycle_detection():
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3")])
    assert has_two_cycle_through(q, "1")
    assert has_two_cycle_through(q, "2")
    assert not has_two_cycle_through(q, "3")
    assert not is_two_acyclic(q)
    assert is_two_acyclic(TRIANGLE)


def test_quivers_equal_ignores_ids():
    q1 = Quiver(["1", "2"], [("x", "1", "2")])
    assert quivers_equal(q1, A2)
    assert not quivers_equal(A2, mutate_quiver(A2, "2"))
    assert quivers_equal(A2, A2)


def test_from_matrix_round_trip_random():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(1, 4)
        grid = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.randint(-3, 3)
                grid[i][j] = v
                grid[j][i] = -v
        b = ExchangeMatrix(tuple(str(i + 1) for i in range(n)),
                           tuple(tuple(row) for row in grid))
        assert to_matrix(from_matrix(b)) == b


def test_involution_random_sample():
    rng = random.Random(12)
    for _ in range(100):
        q = random_two_acyclic_quiver(rng, rng.randint(2, 4))
        for k in q.vertices:
            assert quivers_equal(mutate_quiver(mutate_quiver(q, k), k), q)


def test_oracle_agreement_random_sample():
    rng = random.Random(13)
    for _ in range(100):
        q = random_two_acyclic_quiver(rng, rng.randint(2, 4))
        b = to_matrix(q)
        for k in q.vertices:
            assert to_matrix(mutate_quiver(q, k)) == matrix_mutate(b, k)


def test_mutation_output_has_no_loops_and_no_stale_two_cycles():
    rng = random.Random(14)
    for _ in range(60):
        q = random_two_acyclic_quiver(rng, rng.randint(2, 4))
        for k in q.vertices:
            m = mutate_quiver(q, k)
            assert all(a.tail != a.head for a in m.arrows)
            # cancellation is maximal: no pair retains arrows both ways
            pairs = {(a.tail, a.head) for a in m.arrows}
            assert not any((h, t) in pairs for (t, h) in pairs)


def test_exhaustive_family_counts():
    quivers = list(exhaustive_two_acyclic_quivers(max_vertices=2))
    assert len(quivers) == 6  # one 1-vertex quiver + five 2-vertex states
