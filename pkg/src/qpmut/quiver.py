"""Quivers and combinatorial quiver mutation.

A quiver is a finite directed multigraph without loops.  The vertex set is
fixed for a whole session; mutation only rewrites the arrow set.  Arrow
multiplicities are also encoded as a skew-symmetric exchange matrix, and the
standard matrix mutation rule serves as an independent oracle for the
three-step arrow-level procedure.

Sign convention, used everywhere: ``b[i][j] = #{arrows j -> i} - #{arrows i -> j}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import LoopError, TwoCycleAtVertex, TwoCycleError, UnknownVertex


class Arrow(NamedTuple):
    id: str
    tail: str
    head: str


def composite_arrow_id(outgoing_id: str, incoming_id: str) -> str:
    """Deterministic id for the composite of b: k->i after a: j->k."""
    return f"[{outgoing_id}∘{incoming_id}]"


def star_arrow_id(arrow_id: str) -> str:
    return arrow_id + "*"


class Quiver:
    """Immutable loop-free quiver with ordered vertices and id-sorted arrows."""

    __slots__ = ("vertices", "arrows", "_by_id", "_vertex_set")

    def __init__(self, vertices: Sequence[str], arrows: Iterable[Arrow | tuple] = ()):
        vs = tuple(str(v) for v in vertices)
        if len(set(vs)) != len(vs):
            raise ValueError(f"duplicate vertex ids in {vs}")
        parsed = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            parsed.append(Arrow(str(a.id), str(a.tail), str(a.head)))
        parsed.sort(key=lambda a: a.id)
        vertex_set = set(vs)
        by_id: dict[str, Arrow] = {}
        for a in parsed:
            if a.id in by_id:
                raise ValueError(f"duplicate arrow id {a.id!r}")
            if a.tail not in vertex_set:
                raise UnknownVertex(f"arrow {a.id!r} has unknown tail {a.tail!r}")
            if a.head not in vertex_set:
                raise UnknownVertex(f"arrow {a.id!r} has unknown head {a.head!r}")
            if a.tail == a.head:
                raise LoopError(f"arrow {a.id!r} is a loop at {a.tail!r}")
            by_id[a.id] = a
        self.vertices = vs
        self.arrows = tuple(parsed)
        self._by_id = by_id
        self._vertex_set = vertex_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        arrows = ", ".join(f"{a.id}:{a.tail}->{a.head}" for a in self.arrows)
        return f"Quiver([{', '.join(self.vertices)}], [{arrows}])"

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_set

    def require_vertex(self, v: str) -> None:
        if v not in self._vertex_set:
            raise UnknownVertex(f"vertex {v!r} not in {self.vertices}")

    def has_arrow(self, arrow_id: str) -> bool:
        return arrow_id in self._by_id

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._by_id[arrow_id]
        except KeyError:
            from .errors import UnknownArrow

            raise UnknownArrow(f"arrow {arrow_id!r} not in quiver") from None

    def in_arrows(self, v: str) -> list[Arrow]:
        self.require_vertex(v)
        return [a for a in self.arrows if a.head == v]

    def out_arrows(self, v: str) -> list[Arrow]:
        self.require_vertex(v)
        return [a for a in self.arrows if a.tail == v]

    def arrows_between(self, tail: str, head: str) -> list[Arrow]:
        return [a for a in self.arrows if a.tail == tail and a.head == head]

    def count(self, tail: str, head: str) -> int:
        return sum(1 for a in self.arrows if a.tail == tail and a.head == head)

    def is_sink(self, v: str) -> bool:
        self.require_vertex(v)
        return not any(a.tail == v for a in self.arrows)

    def is_source(self, v: str) -> bool:
        self.require_vertex(v)
        return not any(a.head == v for a in self.arrows)


def has_two_cycle_through(q: Quiver, k: str) -> bool:
    """True when some oriented 2-cycle passes through vertex k."""
    q.require_vertex(k)
    heads_out = {a.head for a in q.arrows if a.tail == k}
    return any(a.head == k and a.tail in heads_out for a in q.arrows)


def is_two_acyclic(q: Quiver) -> bool:
    """True when the quiver has no oriented 2-cycle at all."""
    pairs = {(a.tail, a.head) for a in q.arrows}
    return not any((h, t) in pairs for (t, h) in pairs)


def quivers_equal(q1: Quiver, q2: Quiver) -> bool:
    """Equality of arrow multiplicities per ordered vertex pair.

    Arrow ids are ignored: two quivers are equal here exactly when they have
    the same vertices and the same number of arrows i -> j for every pair.
    """
    if set(q1.vertices) != set(q2.vertices):
        return False
    counts1: dict[tuple[str, str], int] = {}
    for a in q1.arrows:
        counts1[(a.tail, a.head)] = counts1.get((a.tail, a.head), 0) + 1
    counts2: dict[tuple[str, str], int] = {}
    for a in q2.arrows:
        counts2[(a.tail, a.head)] = counts2.get((a.tail, a.head), 0) + 1
    return counts1 == counts2


def premutation_arrows(q: Quiver, k: str) -> list[tuple[Arrow, tuple]]:
    """Steps (1) and (2) of mutation at k, with provenance per new arrow.

    Returns (arrow, provenance) pairs where provenance is one of
    ("kept", old_id), ("composite", outgoing_id, incoming_id),
    ("reversed", old_id).
    """
    q.require_vertex(k)
    incoming = [a for a in q.arrows if a.head == k]
    outgoing = [b for b in q.arrows if b.tail == k]
    result: list[tuple[Arrow, tuple]] = []
    for a in q.arrows:
        if a.head != k and a.tail != k:
            result.append((a, ("kept", a.id)))
    for b in outgoing:
        for a in incoming:
            cid = composite_arrow_id(b.id, a.id)
            result.append((Arrow(cid, a.tail, b.head), ("composite", b.id, a.id)))
    for a in incoming:
        result.append((Arrow(star_arrow_id(a.id), k, a.tail), ("reversed", a.id)))
    for b in outgoing:
        result.append((Arrow(star_arrow_id(b.id), b.head, k), ("reversed", b.id)))
    return result


def cancel_two_cycles(arrows: Iterable[Arrow]) -> tuple[list[Arrow], list[tuple[str, str]]]:
    """Step (3): remove a maximal disjoint union of oriented 2-cycles.

    For each unordered vertex pair, min(#{i->j}, #{j->i}) pairs are cancelled,
    matching arrows in ascending arrow-id order on both sides.  Returns the
    surviving arrows and the cancelled (forward_id, backward_id) pairs.
    """
    arrows = sorted(arrows, key=lambda a: a.id)
    by_pair: dict[tuple[str, str], list[Arrow]] = {}
    for a in arrows:
        by_pair.setdefault((a.tail, a.head), []).append(a)
    removed: set[str] = set()
    cancelled: list[tuple[str, str]] = []
    for (t, h), forward in sorted(by_pair.items()):
        if t > h:
            continue
        backward = by_pair.get((h, t), [])
        for f, b in zip(forward, backward):
            removed.add(f.id)
            removed.add(b.id)
            cancelled.append((f.id, b.id))
    return [a for a in arrows if a.id not in removed], cancelled


def mutate_quiver(q: Quiver, k: str) -> Quiver:
    """Mutation at k: composites, reversal at k, then 2-cycle cancellation."""
    q.require_vertex(k)
    if has_two_cycle_through(q, k):
        raise TwoCycleAtVertex(f"oriented 2-cycle through {k!r}")
    arrows = [a for a, _ in premutation_arrows(q, k)]
    survivors, _ = cancel_two_cycles(arrows)
    return Quiver(q.vertices, survivors)


def premutate_quiver(q: Quiver, k: str) -> Quiver:
    """Steps (1)+(2) only, without 2-cycle cancellation."""
    q.require_vertex(k)
    if has_two_cycle_through(q, k):
        raise TwoCycleAtVertex(f"oriented 2-cycle through {k!r}")
    return Quiver(q.vertices, [a for a, _ in premutation_arrows(q, k)])


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetric integer matrix of signed arrow multiplicities."""

    vertices: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError("exchange matrix shape must match vertex count")
        for i in range(n):
            for j in range(n):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError("exchange matrix must be skew-symmetric")

    def index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise UnknownVertex(f"vertex {v!r} not in {self.vertices}") from None

    def __getitem__(self, key) -> int:
        i, j = key
        return self.entries[self.index(i)][self.index(j)]


def to_matrix(q: Quiver) -> ExchangeMatrix:
    """Encode arrow multiplicities; requires no oriented 2-cycles."""
    if not is_two_acyclic(q):
        raise TwoCycleError("2-cycles make the multiplicity encoding lossy")
    n = len(q.vertices)
    idx = {v: i for i, v in enumerate(q.vertices)}
    grid = [[0] * n for _ in range(n)]
    for a in q.arrows:
        grid[idx[a.head]][idx[a.tail]] += 1
        grid[idx[a.tail]][idx[a.head]] -= 1
    return ExchangeMatrix(q.vertices, tuple(tuple(row) for row in grid))


def matrix_mutate(b: ExchangeMatrix, k: str) -> ExchangeMatrix:
    """Standard skew-symmetric matrix mutation at vertex k."""
    kk = b.index(k)
    n = len(b.vertices)
    old = b.entries
    new = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == kk or j == kk:
                row.append(-old[i][j])
            else:
                sign = 1 if old[i][kk] > 0 else (-1 if old[i][kk] < 0 else 0)
                row.append(old[i][j] + sign * max(old[i][kk] * old[kk][j], 0))
        new.append(tuple(row))
    return ExchangeMatrix(b.vertices, tuple(new))


def from_matrix(b: ExchangeMatrix) -> Quiver:
    """Realize a skew-symmetric matrix as a 2-acyclic quiver.

    b[i][j] > 0 becomes b[i][j] parallel arrows j -> i with deterministic ids.
    """
    arrows = []
    n = len(b.vertices)
    for i in range(n):
        for j in range(n):
            m = b.entries[i][j]
            if m > 0:
                tail, head = b.vertices[j], b.vertices[i]
                for t in range(m):
                    arrows.append(Arrow(f"{tail}>{head}.{t + 1}", tail, head))
    return Quiver(b.vertices, arrows)
