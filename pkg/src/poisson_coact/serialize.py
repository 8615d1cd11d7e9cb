"""JSON file formats: structure constants, linear maps, presentations, reports.

All rationals are written as strings (``"3"``, ``"-2/5"``) and every document is
dumped with sorted keys, so identical inputs give byte-identical files.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .algebra import LinearMap, PoissonAlgebraData, as_rational, format_rational, normalize_unit
from .errors import FileFormatError, InvalidAlgebra
from .free import FreePoissonElement, TensorElement, is_lyndon, mono_key, render_terms
from .quotient import RelationSet, saturate
from .universal import Relation, UniversalPresentation, comultiplication, counit

FORMAT_VERSION = 1


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(doc, path):
    Path(path).write_text(dumps(doc), encoding="utf-8")


def read_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _rational(value, where):
    try:
        return as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FileFormatError(f"{where}: {value!r} is not an exact rational") from exc


# --------------------------------------------------------------------------
# algebras

def algebra_to_dict(A: PoissonAlgebraData) -> dict:
    return {
        "dim": A.dim,
        "basis": list(A.basis),
        "unit": A.basis[A.unit_index],
        "mul": [[i, j, k, format_rational(c)] for (i, j, k), c in A.mul.items()],
        "bracket": [[i, j, k, format_rational(c)] for (i, j, k), c in A.bracket.items()],
    }


def algebra_from_dict(doc, where="algebra") -> PoissonAlgebraData:
    if not isinstance(doc, dict):
        raise FileFormatError(f"{where}: expected a JSON object")
    try:
        dim = doc["dim"]
        basis = doc["basis"]
    except KeyError as exc:
        raise FileFormatError(f"{where}: missing key {exc.args[0]!r}") from exc
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FileFormatError(f"{where}: 'dim' must be a positive integer")
    if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise FileFormatError(f"{where}: 'basis' must list {dim} strings")
    if len(set(basis)) != dim:
        raise FileFormatError(f"{where}: basis labels must be distinct")
    unit = doc.get("unit", basis[0])
    if unit not in basis:
        raise FileFormatError(f"{where}: unit {unit!r} is not a basis label")
    tables = {}
    for key in ("mul", "bracket"):
        table = {}
        for n, entry in enumerate(doc.get(key, [])):
            if not (isinstance(entry, list) and len(entry) == 4):
                raise FileFormatError(f"{where}: {key}[{n}] must be [i, j, k, coeff]")
            i, j, k, c = entry
            if not all(isinstance(t, int) and not isinstance(t, bool) and 0 <= t < dim for t in (i, j, k)):
                raise FileFormatError(f"{where}: {key}[{n}] has an index outside 0..{dim - 1}")
            if (i, j, k) in table:
                raise FileFormatError(f"{where}: {key}[{n}] repeats the entry ({i}, {j}, {k})")
            table[(i, j, k)] = _rational(c, f"{where}: {key}[{n}]")
        tables[key] = table
    A = PoissonAlgebraData(dim, basis, tables["mul"], tables["bracket"], basis.index(unit))
    if A.unit_index != 0:
        # move the unit to position 0 when it really is one; otherwise leave
        # the table alone so validation reports the unitality failure
        try:
            A = normalize_unit(A, unit)
        except InvalidAlgebra:
            pass
    return A


def load_algebra(path) -> PoissonAlgebraData:
    return algebra_from_dict(read_json(path), str(path))


def save_algebra(A, path):
    write_json(algebra_to_dict(A), path)


# --------------------------------------------------------------------------
# linear maps: a list with the image of each source basis vector

def linear_map_to_dict(f: LinearMap) -> dict:
    return {"source_dim": f.source_dim, "target_dim": f.target_dim,
            "columns": [[format_rational(c) for c in col] for col in f.columns]}


def linear_map_from_doc(doc, where="map") -> LinearMap:
    cols = doc.get("columns") if isinstance(doc, dict) else doc
    if not isinstance(cols, list) or not cols or not all(isinstance(c, list) for c in cols):
        raise FileFormatError(f"{where}: expected a list of image vectors")
    width = len(cols[0])
    if any(len(c) != width for c in cols):
        raise FileFormatError(f"{where}: image vectors have different lengths")
    cols = [[_rational(v, where) for v in c] for c in cols]
    if isinstance(doc, dict):
        src = doc.get("source_dim", len(cols))
        tgt = doc.get("target_dim", width)
        if (src, tgt) != (len(cols), width):
            raise FileFormatError(f"{where}: declared shape {src} -> {tgt} does not match the columns")
    return LinearMap(len(cols), width, cols)


def load_linear_map(path) -> LinearMap:
    return linear_map_from_doc(read_json(path), str(path))


# --------------------------------------------------------------------------
# elements

def terms_to_list(terms) -> list:
    """``[[coeff, monomial], ...]`` with a monomial a list of words (lists of letters)."""
    return [[format_rational(terms[m]), [list(w) for w in m]]
            for m in sorted(terms, key=mono_key, reverse=True)]


def terms_from_list(items, where="element") -> FreePoissonElement:
    terms = {}
    for n, item in enumerate(items):
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], list)):
            raise FileFormatError(f"{where}: term {n} must be [coeff, monomial]")
        words = []
        for w in item[1]:
            if not (isinstance(w, list) and w and all(isinstance(a, int) and a >= 0 for a in w)):
                raise FileFormatError(f"{where}: term {n} has a malformed word")
            if not is_lyndon(w):
                raise FileFormatError(f"{where}: term {n} has a non-Lyndon word {w}")
            words.append(tuple(w))
        m = tuple(sorted(words))
        terms[m] = terms.get(m, Fraction(0)) + _rational(item[0], where)
    return FreePoissonElement(terms)


def tensor_to_list(t: TensorElement) -> list:
    keys = sorted(t.terms, key=lambda k: tuple(mono_key(m) for m in k), reverse=True)
    return [[format_rational(t.terms[k])] + [[list(w) for w in m] for m in k] for k in keys]


# --------------------------------------------------------------------------
# presentations

def probe_elements(pres: UniversalPresentation):
    """A fixed set of test elements: generators, their pairwise products and brackets."""
    n = pres.alphabet_size
    out = [FreePoissonElement.gen(a) for a in range(n)]
    if pres.degree >= 2:
        for a in range(n):
            for b in range(a, n):
                out.append(FreePoissonElement.gen(a) * FreePoissonElement.gen(b))
                if a < b:
                    out.append(FreePoissonElement.gen(a).bracket(FreePoissonElement.gen(b)))
    return out


def presentation_to_dict(pres: UniversalPresentation, margin_stable=None) -> dict:
    P, U = pres.P, pres.U
    if margin_stable is None:
        margin_stable = pres.margin_stable()
    doc = {
        "format": "poisson-coact/presentation",
        "version": FORMAT_VERSION,
        "P": algebra_to_dict(P),
        "U": algebra_to_dict(U),
        "generators": [{"row": s, "col": i, "name": pres.name(pres.letter(s, i))}
                       for s, i in pres.generators()],
        "relations": [
            {"family": r.family, "index": list(r.index), "terms": terms_to_list(r.element.terms),
             "text": render_terms(r.element.terms, pres.text_name)}
            for r in pres.relations
        ],
        "quotient_dims": pres.quotient_dims(),
        "psi": [[pres.name(pres.letter(s, i)) for s in range(U.dim)] for i in range(P.dim)],
        "meta": {
            "degree": pres.degree,
            "margin": pres.margin,
            "margin_stable": bool(margin_stable),
            "relation_count": len(pres.relations),
            "reduced_basis_size": len(pres.ctx.basis),
        },
        "probes": [
            {"element": terms_to_list(x.terms), "normal_form": terms_to_list(pres.nf(x).terms)}
            for x in probe_elements(pres)
        ],
    }
    if P == U:
        delta = comultiplication(pres)
        eps = counit(pres)
        doc["coalgebra"] = {
            "delta": {pres.name(a): tensor_to_list(delta.images[a]) for a in range(pres.alphabet_size)},
            "epsilon": {pres.name(a): format_rational(eps.images[a].scalar())
                        for a in range(pres.alphabet_size)},
        }
    return doc


def presentation_from_dict(doc, where="presentation", budget=None, check=True) -> UniversalPresentation:
    """Rebuild a presentation by re-saturating the stored relations.

    With ``check`` the stored quotient dimensions and probe normal forms must
    be reproduced exactly.
    """
    if not isinstance(doc, dict) or doc.get("format") != "poisson-coact/presentation":
        raise FileFormatError(f"{where}: not a presentation file")
    try:
        P = algebra_from_dict(doc["P"], f"{where}: P")
        U = algebra_from_dict(doc["U"], f"{where}: U")
        meta = doc["meta"]
        degree, margin = int(meta["degree"]), int(meta["margin"])
        rels = [Relation(r["family"], tuple(r["index"]), terms_from_list(r["terms"], f"{where}: relation"))
                for r in doc["relations"]]
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"{where}: missing or malformed field {exc}") from exc
    n = P.dim * U.dim
    rs = RelationSet(n, [r.element for r in rels if not r.element.is_zero()])
    pres = UniversalPresentation(P, U, rels, saturate(rs, degree, margin, budget))
    if check:
        if pres.quotient_dims() != doc.get("quotient_dims"):
            raise FileFormatError(f"{where}: stored quotient_dims do not match the relations")
        for k, probe in enumerate(doc.get("probes", [])):
            x = terms_from_list(probe["element"], f"{where}: probe {k}")
            nf = terms_from_list(probe["normal_form"], f"{where}: probe {k}")
            if pres.nf(x) != nf:
                raise FileFormatError(f"{where}: probe {k} has a different normal form after reload")
    pres.ctx._stable = meta.get("margin_stable")
    return pres


def load_presentation(path, budget=None) -> UniversalPresentation:
    return presentation_from_dict(read_json(path), str(path), budget)


def save_presentation(pres, path, margin_stable=None):
    write_json(presentation_to_dict(pres, margin_stable), path)


def report_to_dict(report, command=None) -> dict:
    doc = report.to_dict()
    if command:
        doc["command"] = command
    return doc
