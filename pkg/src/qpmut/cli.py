"""Command-line interface.

Every command reads and writes the JSON formats of the owning modules and
reports failures as a machine-readable envelope on stderr.  Exit codes:
0 success, 2 input error, 3 mathematical precondition violated,
4 invariant check failed.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from . import config
from .errors import (
    InputError,
    LoopError,
    NonCyclicTerm,
    NotASink,
    NotASource,
    NotReduced,
    NotSinkOrSource,
    ObstructedSecondMutation,
    QPMutError,
    QuiverMismatch,
    ShapeMismatch,
    TwoCycleAtVertex,
    TwoCycleError,
    UnknownArrow,
    UnknownVertex,
)
from .jacobian import jacobian_dims, make_qp
from .mutation import check_involution, mutate_qp_detailed, premutate, random_potential
from .quiver import mutate_quiver
from .reduction import split, verify_split
from .serialize import (
    decorated_from_json,
    decorated_to_json,
    dumps,
    potential_to_json,
    qp_from_json,
    qp_to_json,
    quiver_from_json,
    quiver_to_json,
    quotient_to_json,
    read_json_file,
    split_result_to_json,
    write_json_file,
)

_INPUT_ERRORS = (InputError, UnknownVertex, UnknownArrow)
_PRECONDITION_ERRORS = (
    LoopError, TwoCycleError, TwoCycleAtVertex, NotReduced, NonCyclicTerm,
    NotASink, NotASource, NotSinkOrSource, ObstructedSecondMutation,
    ShapeMismatch, QuiverMismatch,
)


def guarded(fn):
    """Map engine errors onto the error envelope and exit-code contract."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _INPUT_ERRORS as exc:
            _fail(exc.code, str(exc), 2)
        except _PRECONDITION_ERRORS as exc:
            _fail(exc.code, str(exc), 3)
        except QPMutError as exc:
            _fail(exc.code, str(exc), 2)

    return wrapper


def _fail(code: str, detail: str, exit_code: int):
    sys.stderr.write(json.dumps({"error": code, "detail": detail}) + "\n")
    raise SystemExit(exit_code)


def _order_option(fn):
    return click.option("--order", type=int, default=None,
                        help="Truncation order (default: QPMUT_DEFAULT_ORDER or 10).")(fn)


@click.group()
def main():
    """Mutations of quivers with potentials."""


@main.command("mutate")
@click.option("--in", "in_path", required=True, type=click.Path())
@click.option("--vertex", required=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@guarded
def cmd_mutate(in_path, vertex, out_path):
    """Combinatorial quiver mutation at a vertex."""
    quiver = quiver_from_json(read_json_file(in_path))
    mutated = mutate_quiver(quiver, vertex)
    write_json_file(out_path, quiver_to_json(mutated))
    click.echo(f"mutated at {vertex}: {len(mutated.arrows)} arrows -> {out_path}")


@main.command("mutate-qp")
@click.option("--in", "in_path", required=True, type=click.Path())
@click.option("--vertex", required=True)
@_order_option
@click.option("--out", "out_path", required=True, type=click.Path())
@guarded
def cmd_qp_mutate(in_path, vertex, order, out_path):
    """QP mutation at a vertex, with a provenance report."""
    qp = qp_from_json(read_json_file(in_path), order)
    report = mutate_qp_detailed(qp, vertex)
    write_json_file(out_path, qp_to_json(report.result))
    summary = {
        "vertex": vertex,
        "arrows": [a.id for a in report.result.quiver.arrows],
        "trivial_pairs": [list(p) for p in report.split_result.trivial_pairs],
        "provenance": {aid: list(origin)
                       for aid, origin in sorted(report.premutation.provenance.items())},
        "out": str(out_path),
    }
    click.echo(dumps(summary), nl=False)


@main.command("reduce")
@click.option("--in", "in_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@_order_option
@guarded
def cmd_reduce(in_path, out_path, order):
    """Split a QP into trivial and reduced parts; emit the full result."""
    qp = qp_from_json(read_json_file(in_path), order)
    result = split(qp)
    if not verify_split(qp, result):
        _fail("split_verification", "witness does not reproduce the direct sum", 4)
    write_json_file(out_path, split_result_to_json(result))
    click.echo(f"split: {len(result.trivial_pairs)} trivial pairs, "
               f"{len(result.reduced_qp.quiver.arrows)} reduced arrows -> {out_path}")


@main.command("jac-dims")
@click.option("--in", "in_path", required=True, type=click.Path())
@_order_option
@guarded
def cmd_jac_dims(in_path, order):
    """Truncated Jacobian algebra dimensions, as JSON on stdout."""
    qp = qp_from_json(read_json_file(in_path), order)
    click.echo(dumps(quotient_to_json(jacobian_dims(qp))), nl=False)


@main.command("rep-mutate")
@click.option("--rep", "rep_path", required=True, type=click.Path())
@click.option("--qp", "qp_path", required=True, type=click.Path())
@click.option("--vertex", required=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@guarded
def cmd_rep_mutate(rep_path, qp_path, vertex, out_path):
    """Decorated sink/source mutation of a representation."""
    from .decorated import mutate_decorated

    qp = qp_from_json(read_json_file(qp_path))
    dm = decorated_from_json(qp.quiver, read_json_file(rep_path))
    mutated = mutate_decorated(dm, vertex)
    write_json_file(out_path, decorated_to_json(mutated))
    click.echo(f"reflected at {vertex}: dims "
               f"{dict(mutated.rep.dims)} decoration {dict(mutated.decoration)} -> {out_path}")


@main.command("rep-isomorphic")
@click.option("--rep1", "rep1_path", required=True, type=click.Path())
@click.option("--rep2", "rep2_path", required=True, type=click.Path())
@click.option("--quiver", "quiver_path", required=True, type=click.Path())
@click.option("--trials", type=int, default=8, show_default=True,
              help="Random invertibility samples before giving up.")
@guarded
def cmd_rep_isomorphic(rep1_path, rep2_path, quiver_path, trials):
    """Randomized isomorphism test between two representation files."""
    from .decorated import is_isomorphic
    from .serialize import representation_from_json

    quiver = quiver_from_json(read_json_file(quiver_path))
    rep1 = representation_from_json(quiver, read_json_file(rep1_path))
    rep2 = representation_from_json(quiver, read_json_file(rep2_path))
    answer = is_isomorphic(rep1, rep2, trials=trials)
    click.echo(dumps({"isomorphic": answer, "trials": trials}), nl=False)


@main.command("check-involution")
@click.option("--in", "in_path", required=True, type=click.Path())
@click.option("--vertex", required=True)
@_order_option
@guarded
def cmd_check_involution(in_path, vertex, order):
    """Compare a QP with its double mutation; nonzero exit on mismatch."""
    qp = qp_from_json(read_json_file(in_path), order)
    report = check_involution(qp, vertex)
    payload = {
        "vertex": vertex,
        "arrow_matrices_match": report.arrow_matrices_match,
        "jacobian_dims_match": report.jacobian_dims_match,
        "degree_profiles_match": report.degree_profiles_match,
        "dims": list(report.dims_original),
        "dims_double": list(report.dims_double),
        "passed": report.passed,
    }
    click.echo(dumps(payload), nl=False)
    if not report.passed:
        _fail("involution_mismatch", f"invariants differ at vertex {vertex}", 4)


@main.command("random-potential")
@click.option("--quiver", "quiver_path", required=True, type=click.Path())
@click.option("--seed", type=int, required=True)
@click.option("--max-degree", type=int, default=4, show_default=True)
@_order_option
@click.option("--out", "out_path", default=None, type=click.Path())
@guarded
def cmd_random_potential(quiver_path, seed, max_degree, order, out_path):
    """Seeded generic potential on the cycle classes of a quiver."""
    quiver = quiver_from_json(read_json_file(quiver_path))
    potential = random_potential(quiver, max_degree, seed, order)
    payload = potential_to_json(potential)
    if out_path:
        write_json_file(out_path, payload)
        click.echo(f"{len(potential.terms)} terms -> {out_path}")
    else:
        click.echo(dumps(payload), nl=False)


@main.command("serve")
@click.option("--port", type=int, default=8642, show_default=True)
@click.option("--qp", "qp_path", default=None, type=click.Path(),
              help="Optional initial QP file, preloaded as a session.")
@click.option("--snapshot", "snapshot_path", default=None, type=click.Path(),
              help="Write all sessions to this file on shutdown.")
@click.option("--static-dir", default=None, type=click.Path(),
              help="Serve the explorer UI from this directory.")
@guarded
def cmd_serve(port, qp_path, snapshot_path, static_dir):
    """Run the HTTP/JSON session server for the explorer UI."""
    from .server import serve

    initial = qp_from_json(read_json_file(qp_path)) if qp_path else None
    serve(port, initial, snapshot_path, static_dir)


@main.command("examples")
@guarded
def cmd_examples():
    """Run the built-in worked examples and print what the engine finds."""
    from .quiver import Quiver
    from .pathalg import AlgebraElement

    triangle = Quiver(["1", "2", "3"],
                      [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
    potential = AlgebraElement.from_word(triangle, config.default_order(), ("c", "b", "a"))
    qp = make_qp(triangle, potential, config.default_order())
    click.echo("three-cycle QP: S = one 3-cycle on arrows a, b, c")

    report = mutate_qp_detailed(qp, "2")
    arrows = ", ".join(f"{a.id}:{a.tail}->{a.head}" for a in report.result.quiver.arrows)
    click.echo(f"  mutate at 2 -> arrows {{{arrows}}}, "
               f"potential terms: {len(report.result.potential.terms)}")

    inv = check_involution(qp, "2")
    click.echo(f"  double mutation invariants: arrows={inv.arrow_matrices_match} "
               f"dims={inv.jacobian_dims_match} profile={inv.degree_profiles_match}")

    two_cycle = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    t_pot = AlgebraElement.from_word(two_cycle, 6, ("a", "b"))
    trivial = make_qp(two_cycle, t_pot, 6)
    dims = jacobian_dims(trivial)
    click.echo(f"  2-cycle QP dims = {list(dims.dims)} (vertex span only)")

    pre = premutate(qp.lift(qp.order + 1), "2")
    click.echo(f"  premutation span: {[a.id for a in pre.qp_tilde.quiver.arrows]}")
    if not inv.passed:
        _fail("involution_mismatch", "worked example failed", 4)
    click.echo("all worked examples passed")


if __name__ == "__main__":
    main()
