"""JSON encodings for quivers, objects, morphisms and complexes.

Complex format::

    {"terms": {"0": OBJECT, ...}, "diff": {"0": MORPHISM, ...}}

``OBJECT`` is a list of indecomposable labels (``["1", "2"]``), a
multiplicity map (``{"mult": {"1": 2}}``) or, for vector spaces, a dimension.
``MORPHISM`` is a list of entries ``{"row", "col", "coeff", "arrows"}`` (the
path is determined by its arrows and the row/column labels) or, for vector
spaces, a dense row-major matrix.
"""

import json

from .base import BaseCategory, BaseError, BaseMorphism, BaseObject, Path, Quiver
from .complexes import Complex, ComplexError
from .linalg import Matrix, field_from_tag


class InputError(ValueError):
    """Malformed input; ``location`` names the offending part of the document."""

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def load_json_file(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON ({exc.msg})", f"{path}:{exc.lineno}:{exc.colno}") from exc
    except OSError as exc:
        raise InputError(str(exc), path) from exc


def make_category(base="vect", quiver=None, field="q"):
    fld = field_from_tag(field) if isinstance(field, str) else field
    if base == "vect":
        return BaseCategory.vect(fld)
    if base == "quiver":
        if quiver is None:
            quiver = Quiver.linear_a(3)
        elif isinstance(quiver, dict):
            quiver = Quiver.from_json(quiver)
        return BaseCategory.from_quiver(quiver, fld)
    raise InputError(f"unknown base {base!r}; expected 'vect' or 'quiver'", "--base")


def object_from_json(data, cat, location="object"):
    try:
        if isinstance(data, int) and not isinstance(data, bool):
            if cat.backend != "vect":
                raise InputError("a bare dimension is only meaningful for vect", location)
            return BaseObject(cat, ("k",) * data)
        if isinstance(data, list):
            return BaseObject(cat, tuple(str(s) for s in data))
        if isinstance(data, dict) and "mult" in data:
            return cat.from_mult(data["mult"])
    except BaseError as exc:
        raise InputError(str(exc), location) from exc
    raise InputError("expected a label list, {'mult': ...} or a dimension", location)


def morphism_entries_from_json(src, tgt, data, location="morphism"):
    cat = src.cat
    f = cat.field
    if isinstance(data, list) and (not data or isinstance(data[0], list)):
        # dense matrix, trivial paths only
        rows = data
        if len(rows) != len(tgt) or any(len(r) != len(src) for r in rows):
            raise InputError(f"dense matrix must be {len(tgt)}x{len(src)}", location)
        grids = {}
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                c = f(x)
                if not c:
                    continue
                v = tgt.summands[i]
                if src.summands[j] != v:
                    raise InputError(f"entry ({i},{j}) joins different vertices; use the entry form", location)
                g = grids.setdefault(v, [[f.zero] * len(src) for _ in range(len(tgt))])
                g[i][j] = c
        return BaseMorphism(src, tgt, {Path(v, v, ()): Matrix(f, g, len(tgt), len(src)) for v, g in grids.items()})
    if not isinstance(data, list):
        raise InputError("expected a list of entries or a dense matrix", location)
    entries = {}
    for k, e in enumerate(data):
        loc = f"{location}[{k}]"
        try:
            i, j = int(e["row"]), int(e["col"])
            coeff = e.get("coeff", 1)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("entry needs integer 'row' and 'col'", loc) from exc
        if not (0 <= i < len(tgt) and 0 <= j < len(src)):
            raise InputError("entry index out of range", loc)
        if "path" in e:
            arrows = tuple(e["path"].get("arrows", ()))
        else:
            arrows = tuple(e.get("arrows", ()))
        p = Path(tgt.summands[i], src.summands[j], tuple(int(a) for a in arrows))
        if p not in cat.quiver.paths_between(p.start, p.end):
            raise InputError(f"no path {p} from {p.start} to {p.end}", loc)
        entries.setdefault((i, j), {})
        entries[(i, j)][p] = entries[(i, j)].get(p, 0) + f(coeff)
    try:
        return BaseMorphism.from_entries(src, tgt, entries)
    except BaseError as exc:
        raise InputError(str(exc), location) from exc


def complex_from_json(data, cat, location="complex"):
    if not isinstance(data, dict) or "terms" not in data:
        raise InputError("complex needs 'terms'", location)
    try:
        terms = {int(i): object_from_json(o, cat, f"{location}.terms.{i}") for i, o in data["terms"].items()}
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError("term degrees must be integers", location) from exc
    diffs = {}
    for i, d in data.get("diff", {}).items():
        i = int(i)
        src = terms.get(i, BaseObject(cat, ()))
        tgt = terms.get(i + 1, BaseObject(cat, ()))
        diffs[i] = morphism_entries_from_json(src, tgt, d, f"{location}.diff.{i}")
    try:
        return Complex(cat, terms, diffs)
    except ComplexError as exc:
        raise InputError(str(exc), location) from exc


def complex_to_json(m):
    out = {"terms": {}, "diff": {}}
    for i, o in sorted(m.terms.items()):
        out["terms"][str(i)] = len(o) if m.cat.backend == "vect" else list(o.summands)
    for i, d in sorted(m.diffs.items()):
        if m.cat.backend == "vect":
            mat = d.comps.get(Path("k", "k", ()))
            out["diff"][str(i)] = [[d.field.to_str(x) for x in row] for row in mat.rows]
        else:
            out["diff"][str(i)] = [
                {"row": e["row"], "col": e["col"], "arrows": e["path"]["arrows"], "coeff": e["coeff"]}
                for e in d.to_json()["entries"]
            ]
    return out


def dumps(obj, pretty=False):
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2 if pretty else None, separators=None if pretty else (",", ":"))
