"""JSON readers and writers for every engine value.

Writers emit canonical orderings (arrows by id, terms by degree then
letters), so any written file re-serializes identically after a round trip.
Rationals travel as strings "p/q", or "p" when the denominator is 1.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path as FilePath

from .decorated import DecoratedRep, Representation
from .errors import InputError
from .exactlin import RatMatrix, rat_str
from .jacobian import QP, TruncatedQuotient, make_qp
from .pathalg import (
    AlgebraElement,
    Path,
    Potential,
    Substitution,
    canonicalize_potential,
    path_key,
)
from .quiver import Arrow, Quiver
from .reduction import SplitResult


def _parse_rational(raw) -> Fraction:
    try:
        if isinstance(raw, bool):
            raise ValueError
        if isinstance(raw, int):
            return Fraction(raw)
        if isinstance(raw, str):
            return Fraction(raw.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational literal {raw!r}") from exc
    raise InputError(f"bad rational literal {raw!r}")


# -- quivers ----------------------------------------------------------------

def quiver_to_json(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"id": a.id, "tail": a.tail, "head": a.head} for a in q.arrows],
    }


def quiver_from_json(data: dict) -> Quiver:
    try:
        vertices = [str(v) for v in data["vertices"]]
        arrows = [Arrow(str(a["id"]), str(a["tail"]), str(a["head"]))
                  for a in data.get("arrows", [])]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed quiver JSON: {exc}") from exc
    return Quiver(vertices, arrows)


# -- algebra elements and potentials -----------------------------------------

def _term_to_json(p: Path, c: Fraction) -> dict:
    if p.vertex is not None:
        return {"vertex": p.vertex, "coeff": rat_str(c)}
    return {"path": list(p.arrows), "coeff": rat_str(c)}


def element_to_json(x: AlgebraElement) -> dict:
    return {
        "order": x.order,
        "terms": [_term_to_json(p, c) for p, c in x.sorted_terms()],
    }


def _terms_from_json(raw_terms) -> dict[Path, Fraction]:
    terms: dict[Path, Fraction] = {}
    for t in raw_terms:
        coeff = _parse_rational(t.get("coeff", "1"))
        if "vertex" in t:
            p = Path.trivial(str(t["vertex"]))
        elif "path" in t:
            p = Path.word(str(a) for a in t["path"])
        else:
            raise InputError(f"term needs a path or a vertex: {t!r}")
        terms[p] = terms.get(p, Fraction(0)) + coeff
    return terms


def element_from_json(quiver: Quiver, data: dict) -> AlgebraElement:
    try:
        order = int(data["order"])
        raw_terms = data.get("terms", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed element JSON: {exc}") from exc
    try:
        return AlgebraElement(quiver, order, _terms_from_json(raw_terms))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def potential_to_json(s: Potential) -> dict:
    data = element_to_json(s)
    data["cyclic"] = True
    return data


def potential_from_json(quiver: Quiver, data: dict) -> Potential:
    return canonicalize_potential(element_from_json(quiver, data))


# -- QPs ----------------------------------------------------------------------

def qp_to_json(qp: QP) -> dict:
    return {
        "order": qp.order,
        "quiver": quiver_to_json(qp.quiver),
        "potential": potential_to_json(qp.potential),
    }


def qp_from_json(data: dict, order: int | None = None) -> QP:
    try:
        quiver = quiver_from_json(data["quiver"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed QP JSON: {exc}") from exc
    file_order = data.get("order")
    raw_potential = data.get("potential")
    if order is None:
        if file_order is None and raw_potential is not None:
            order = int(raw_potential.get("order"))
        elif file_order is None:
            raise InputError("QP JSON needs an order")
        else:
            order = int(file_order)
    if raw_potential is None:
        return make_qp(quiver, None, order)
    element = element_from_json(quiver, raw_potential)
    return make_qp(quiver, element, order)


# -- substitutions and split results -----------------------------------------

def substitution_to_json(phi: Substitution) -> dict:
    return {
        "order": phi.order,
        "images": [
            {"arrow": aid, "terms": [_term_to_json(p, c) for p, c in img.sorted_terms()]}
            for aid, img in sorted(phi.images.items())
        ],
    }


def substitution_from_json(quiver: Quiver, data: dict) -> Substitution:
    try:
        order = int(data["order"])
        images = {}
        for entry in data.get("images", []):
            aid = str(entry["arrow"])
            images[aid] = AlgebraElement(quiver, order, _terms_from_json(entry.get("terms", [])))
        return Substitution(quiver, order, images)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed substitution JSON: {exc}") from exc


def split_result_to_json(sr: SplitResult) -> dict:
    return {
        "trivial_pairs": [[a, b] for a, b in sr.trivial_pairs],
        "reduced_qp": qp_to_json(sr.reduced_qp),
        "witness": substitution_to_json(sr.witness),
        "basis_change": substitution_to_json(sr.basis_change),
    }


def quotient_to_json(tq: TruncatedQuotient) -> dict:
    return {
        "order": tq.order,
        "dims": list(tq.dims),
        "trusted_below_degree": tq.trusted_below_degree,
        "total": tq.total,
    }


# -- representations ----------------------------------------------------------

def _matrix_to_json(m: RatMatrix) -> list:
    return [[rat_str(x) for x in row] for row in m.entries]


def _matrix_from_json(raw, rows: int, cols: int) -> RatMatrix:
    if raw is None:
        return RatMatrix.zeros(rows, cols)
    grid = [[_parse_rational(x) for x in row] for row in raw]
    if len(grid) != rows or any(len(r) != cols for r in grid):
        raise InputError(f"matrix shape {len(grid)}x? does not match {rows}x{cols}")
    return RatMatrix(grid, rows=rows, cols=cols)


def representation_to_json(rep: Representation) -> dict:
    return {
        "dims": {v: rep.dims[v] for v in rep.quiver.vertices},
        "maps": {a.id: _matrix_to_json(rep.maps[a.id]) for a in rep.quiver.arrows},
    }


def representation_from_json(quiver: Quiver, data: dict) -> Representation:
    try:
        dims = {str(v): int(d) for v, d in data.get("dims", {}).items()}
        maps = {}
        for a in quiver.arrows:
            raw = data.get("maps", {}).get(a.id)
            maps[a.id] = _matrix_from_json(raw, dims.get(a.head, 0), dims.get(a.tail, 0))
        return Representation(quiver, dims, maps)
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed representation JSON: {exc}") from exc


def decorated_to_json(dm: DecoratedRep) -> dict:
    data = representation_to_json(dm.rep)
    data["decoration"] = {v: dm.decoration[v] for v in dm.rep.quiver.vertices}
    return data


def decorated_from_json(quiver: Quiver, data: dict) -> DecoratedRep:
    rep = representation_from_json(quiver, data)
    decoration = {str(v): int(d) for v, d in data.get("decoration", {}).items()}
    return DecoratedRep(rep, decoration)


# -- files ---------------------------------------------------------------------

def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def read_json_file(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc


def write_json_file(path, data: dict) -> None:
    FilePath(path).write_text(dumps(data), encoding="utf-8")
