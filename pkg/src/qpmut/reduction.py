"""Split a QP into its trivial (2-cycle) part and its reduced part.

Stage 1 normalizes the quadratic part of the potential: for every unordered
vertex pair, the rational matrix pairing opposite arrows is brought to a 0/1
normal form by an invertible linear change of arrows, which singles out the
matched trivial pairs.

Stage 2 strips the trivial arrows out of the cubic-and-higher part.  Each
contaminated cyclic word is cancelled exactly once: rotate it to expose its
first trivial letter, and subtract the complementary factor from that
letter's partner arrow.  Every pass pushes the lowest contaminated degree up
by at least one, so at most ``order`` passes run.

The accumulated substitution is returned as an auditable witness; its action
on the input potential is re-checked by :func:`verify_split` rather than
trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import RatMatrix, rref
from .jacobian import QP
from .pathalg import (
    AlgebraElement,
    Path,
    Potential,
    Substitution,
    apply_substitution,
    canonical_rotation,
    canonicalize_potential,
    compose,
)
from .quiver import Quiver


@dataclass(frozen=True)
class SplitResult:
    """Outcome of the trivial/reduced splitting.

    trivial_pairs lists (a, b) arrow ids per matched 2-cycle, where the
    normalized quadratic term is the cyclic class of b after a.
    """

    trivial_pairs: tuple[tuple[str, str], ...]
    reduced_qp: QP
    witness: Substitution
    basis_change: Substitution

    @property
    def trivial_arrows(self) -> tuple[tuple[str, str], ...]:
        return self.trivial_pairs


def _quadratic_blocks(qp: QP) -> list[tuple[list[str], list[str], RatMatrix]]:
    """Per unordered vertex pair: (arrows i->j, arrows j->i, pairing matrix).

    Entry [f][g] is the potential coefficient of the 2-cycle class pairing
    forward arrow f with backward arrow g.  Pairs with no opposite arrows are
    omitted.
    """
    quiver = qp.quiver
    blocks = []
    vs = quiver.vertices
    for i_idx in range(len(vs)):
        for j_idx in range(i_idx + 1, len(vs)):
            i, j = vs[i_idx], vs[j_idx]
            forward = [a.id for a in quiver.arrows_between(i, j)]
            backward = [a.id for a in quiver.arrows_between(j, i)]
            if not forward or not backward:
                continue
            grid = []
            for f in forward:
                row = []
                for g in backward:
                    cls = Path(arrows=canonical_rotation((f, g)))
                    row.append(qp.potential.coefficient(cls))
                grid.append(row)
            blocks.append((forward, backward, RatMatrix(grid, rows=len(forward), cols=len(backward))))
    return blocks


def _stage_one(qp: QP) -> tuple[Substitution, list[tuple[str, str]]]:
    """Linear arrow change normalizing the quadratic part to matched pairs."""
    quiver = qp.quiver
    order = qp.order
    images: dict[str, AlgebraElement] = {}
    pairs: list[tuple[str, str]] = []
    for forward, backward, c_mat in _quadratic_blocks(qp):
        if c_mat.is_zero():
            continue
        p, q = c_mat.rows, c_mat.cols
        red, aug_pivots, _ = rref(c_mat.hstack(RatMatrix.identity(p)))
        pivot_cols = [c for c in aug_pivots if c < q]
        r = len(pivot_cols)
        echelon = red.submatrix(range(p), range(q))
        u_mat = red.submatrix(range(p), range(q, q + p))

        # Old forward arrow f maps to sum_s u_mat[s][f] * forward[s].
        for f_idx, fid in enumerate(forward):
            terms = {Path.word((forward[s],)): u_mat.entries[s][f_idx]
                     for s in range(p) if u_mat.entries[s][f_idx] != 0}
            img = AlgebraElement(quiver, order, terms, validate=False)
            if img != AlgebraElement.from_arrow(quiver, order, fid):
                images[fid] = img

        # Column construction sending the echelon to [I_r | 0]: pivot columns
        # first, then non-pivot columns cleared by the pivot rows.
        n_cols: list[list[Fraction]] = []
        for s in range(r):
            col = [Fraction(0)] * q
            col[pivot_cols[s]] = Fraction(1)
            n_cols.append(col)
        for j in range(q):
            if j in pivot_cols:
                continue
            col = [Fraction(0)] * q
            col[j] = Fraction(1)
            for s in range(r):
                col[pivot_cols[s]] -= echelon.entries[s][j]
            n_cols.append(col)
        for g_idx, gid in enumerate(backward):
            terms = {Path.word((backward[t],)): n_cols[t][g_idx]
                     for t in range(q) if n_cols[t][g_idx] != 0}
            img = AlgebraElement(quiver, order, terms, validate=False)
            if img != AlgebraElement.from_arrow(quiver, order, gid):
                images[gid] = img

        for s in range(r):
            pairs.append((backward[s], forward[s]))
    return Substitution(quiver, order, images), pairs


def split(qp: QP) -> SplitResult:
    """Decompose a QP into matched 2-cycle pairs plus a reduced remainder."""
    quiver = qp.quiver
    order = qp.order

    basis_change, pairs = _stage_one(qp)
    current = canonicalize_potential(apply_substitution(basis_change, qp.potential))
    witness = basis_change

    partner: dict[str, str] = {}
    for a_id, b_id in pairs:
        partner[a_id] = b_id
        partner[b_id] = a_id
    trivial_set = set(partner)

    for _ in range(order + 1):
        corrections: dict[str, dict[Path, Fraction]] = {}
        contaminated = False
        for p, c in current.terms.items():
            if p.degree < 3:
                continue
            w = p.arrows
            m = next((t for t, x in enumerate(w) if x in trivial_set), None)
            if m is None:
                continue
            contaminated = True
            target = partner[w[m]]
            z = Path(arrows=w[m + 1:] + w[:m])
            bucket = corrections.setdefault(target, {})
            s = bucket.get(z, Fraction(0)) + c
            if s == 0:
                bucket.pop(z, None)
            else:
                bucket[z] = s
        if not contaminated:
            break
        images = {}
        for arrow_id, terms in corrections.items():
            correction = AlgebraElement(quiver, order, terms, validate=False)
            images[arrow_id] = AlgebraElement.from_arrow(quiver, order, arrow_id) - correction
        step = Substitution(quiver, order, images)
        current = canonicalize_potential(apply_substitution(step, current))
        witness = compose(step, witness)
    else:
        raise RuntimeError("trivial-arrow elimination did not terminate")

    matched = {Path(arrows=canonical_rotation((b_id, a_id))): Fraction(1) for a_id, b_id in pairs}
    remainder: dict[Path, Fraction] = {}
    for p, c in current.terms.items():
        want = matched.get(p)
        if want is not None and want == c:
            continue
        remainder[p] = c - (want or Fraction(0))
    for p in matched:
        if p not in current.terms:
            # Normal form lost a matched pair; internal invariant violated.
            raise RuntimeError(f"expected quadratic term {p!r} missing after elimination")
    for p in remainder:
        if p.degree < 3 or any(x in trivial_set for x in p.arrows):
            raise RuntimeError(f"unreduced term {p!r} survived elimination")

    reduced_quiver = Quiver(quiver.vertices,
                            [a for a in quiver.arrows if a.id not in trivial_set])
    reduced_potential = Potential(reduced_quiver, order, {}, validate=False)
    reduced_potential.terms.update(remainder)
    reduced = QP(reduced_quiver, reduced_potential, order)
    return SplitResult(tuple(pairs), reduced, witness, basis_change)


def direct_sum_potential(qp: QP, result: SplitResult) -> Potential:
    """The normal form the witness must reach: matched 2-cycles plus the
    reduced potential, read over the original quiver."""
    terms: dict[Path, Fraction] = {
        Path(arrows=canonical_rotation((b_id, a_id))): Fraction(1)
        for a_id, b_id in result.trivial_pairs
    }
    for p, c in result.reduced_qp.potential.terms.items():
        terms[p] = terms.get(p, Fraction(0)) + c
    out = Potential(qp.quiver, qp.order, {}, validate=False)
    out.terms.update({p: c for p, c in terms.items() if c != 0})
    return out


def verify_split(qp: QP, result: SplitResult) -> bool:
    """Re-apply the witness to the input potential and compare canonical
    forms with the claimed direct sum, exactly at the QP's order."""
    try:
        image = canonicalize_potential(apply_substitution(result.witness, qp.potential))
    except Exception:
        return False
    target = direct_sum_potential(qp, result)
    order = min(image.order, target.order)
    return image.truncate(order).terms == target.truncate(order).terms
