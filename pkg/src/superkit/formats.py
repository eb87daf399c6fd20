"""JSON documents for algebras and linear maps.

Algebra documents list only nonzero brackets, keyed by ``"a,b"`` basis-name
pairs; missing mirror pairs are filled in by graded skew-symmetry on load.
The saved form lists every nonzero ordered pair, so ``save(load(doc))`` is
canonical and idempotent.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import LieSuperalgebra, LinearMap, validate_structure
from .errors import AxiomViolation, DivisionByZero, MixedParity, ParseError, ShapeError
from .linalg import Field, Matrix

ALGEBRA_FORMAT = "superkit-algebra/1"
MAP_FORMAT = "superkit-map/1"


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc


def read_document(path: str | Path) -> tuple[Any, bytes]:
    """Parsed JSON plus the raw bytes (for digests)."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8") from exc
    return loads(text), raw


def write_document(doc: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise ParseError(message)


def _names(doc: dict, key: str) -> list[str]:
    val = doc.get(key, [])
    _expect(isinstance(val, list) and all(isinstance(x, str) for x in val), f"{key!r} must be a list of names")
    return val


def _scalar(F: Field, text: Any, where: str):
    _expect(isinstance(text, (str, int)) and not isinstance(text, bool),
            f"coefficient at {where} must be a string, got {text!r}")
    try:
        return F(str(text))
    except (ValueError, DivisionByZero) as exc:
        raise ParseError(f"bad coefficient at {where}: {exc}") from exc


def _field(doc: dict) -> Field:
    try:
        return Field.from_dict(doc.get("field"))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad field: {exc}") from exc


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

def save_algebra(L: LieSuperalgebra) -> dict:
    F = L.field
    brackets = {}
    for i in range(L.dim):
        for j in range(L.dim):
            entry = {L.names[k]: F.format(c) for k, c in enumerate(L.constants[i][j]) if c}
            if entry:
                brackets[f"{L.names[i]},{L.names[j]}"] = entry
    return {
        "format": ALGEBRA_FORMAT,
        "name": L.name,
        "field": F.to_dict(),
        "even": list(L.even_names),
        "odd": list(L.odd_names),
        "brackets": brackets,
    }


def load_algebra(doc: Any, *, strict: bool = True, validate: bool = True) -> LieSuperalgebra:
    """Parse an algebra document.

    ``strict=False`` keeps skew-contradicting pairs as written instead of
    raising :class:`SkewConflict`; ``validate=False`` skips the axiom check
    so a caller can report violations itself.
    """
    _expect(isinstance(doc, dict), "algebra document must be a JSON object")
    _expect(doc.get("format") == ALGEBRA_FORMAT, f"expected format {ALGEBRA_FORMAT!r}, got {doc.get('format')!r}")
    name = doc.get("name", "L")
    _expect(isinstance(name, str), "'name' must be a string")
    F = _field(doc)
    even, odd = _names(doc, "even"), _names(doc, "odd")
    known = set(even) | set(odd)
    raw = doc.get("brackets", {})
    _expect(isinstance(raw, dict), "'brackets' must be an object")
    table = {}
    for key, coeffs in raw.items():
        parts = key.split(",")
        _expect(len(parts) == 2, f"bracket key {key!r} must be 'a,b'")
        a, b = (p.strip() for p in parts)
        _expect(a in known and b in known, f"bracket key {key!r} names an unknown basis element")
        _expect((a, b) not in table, f"bracket {key!r} listed twice")
        _expect(isinstance(coeffs, dict), f"bracket {key!r} must map basis names to coefficients")
        entry = {}
        for c, val in coeffs.items():
            _expect(c in known, f"bracket {key!r} has unknown target {c!r}")
            entry[c] = _scalar(F, val, f"{key}/{c}")
        table[(a, b)] = entry
    try:
        L = LieSuperalgebra.from_brackets(name, F, even, odd, table, strict=strict)
    except ShapeError as exc:
        raise ParseError(str(exc)) from exc
    if validate:
        report = validate_structure(L)
        if not report.ok:
            raise AxiomViolation(report)
    return L


def canonicalize(doc: Any) -> dict:
    return save_algebra(load_algebra(doc))


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------

def save_map(f: LinearMap) -> dict:
    return {
        "format": MAP_FORMAT,
        "domain": f.domain.name,
        "codomain": f.codomain.name,
        "parity": "odd" if f.parity else "even",
        "matrix": [list(r) for r in f.matrix.to_strings()],
    }


def load_map(doc: Any, domain: LieSuperalgebra, codomain: LieSuperalgebra, *, check_names: bool = True
             ) -> LinearMap:
    """Parse a map document against the given algebras; column j is the image of domain basis j."""
    _expect(isinstance(doc, dict), "map document must be a JSON object")
    _expect(doc.get("format") == MAP_FORMAT, f"expected format {MAP_FORMAT!r}, got {doc.get('format')!r}")
    if check_names:
        for key, alg in (("domain", domain), ("codomain", codomain)):
            _expect(doc.get(key) == alg.name, f"map {key} is {doc.get(key)!r} but the supplied algebra is {alg.name!r}")
    _expect(domain.field == codomain.field, "domain and codomain fields differ")
    parity = {"even": 0, "odd": 1}.get(doc.get("parity", "even"))
    _expect(parity is not None, "'parity' must be 'even' or 'odd'")
    rows = doc.get("matrix")
    _expect(isinstance(rows, list) and len(rows) == codomain.dim
            and all(isinstance(r, list) and len(r) == domain.dim for r in rows),
            f"'matrix' must be {codomain.dim}x{domain.dim} (codomain rows, domain columns)")
    F = domain.field
    vals = [[_scalar(F, x, f"matrix[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    try:
        return LinearMap(domain, codomain, Matrix._raw(F, vals, domain.dim), parity)
    except MixedParity as exc:
        raise ParseError(f"map entries break the declared {doc.get('parity', 'even')} parity: {exc}") from exc


# ---------------------------------------------------------------------------
# field changes
# ---------------------------------------------------------------------------

def change_field(L: LieSuperalgebra, target: Field) -> LieSuperalgebra:
    """Reduce a rational algebra mod p; anything lossy or ambiguous is refused.

    Q -> F_p succeeds only when every denominator is invertible mod p and the
    reduction still satisfies the axioms.  F_p -> Q and F_p -> F_q (q != p)
    have no canonical lift and raise :class:`ParseError`.
    """
    src = L.field
    if src == target:
        return L
    if not src.is_rational:
        raise ParseError(f"refusing to coerce {src} into {target}: no canonical lift")
    if target.is_rational:
        return L
    table = []
    for i in range(L.dim):
        plane = []
        for j in range(L.dim):
            row = []
            for k, c in enumerate(L.constants[i][j]):
                try:
                    row.append(target(Fraction(c)))
                except DivisionByZero as exc:
                    raise ParseError(f"coefficient {c} of [{L.names[i]},{L.names[j]}] at {L.names[k]} "
                                     f"has no image in {target}") from exc
            plane.append(row)
        table.append(plane)
    M = LieSuperalgebra(L.name, target, L.even_names, L.odd_names, table)
    report = validate_structure(M)
    if not report.ok:
        raise AxiomViolation(report)
    return M
