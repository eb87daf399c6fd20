"""``superkit`` command line.

Every command builds one report dict; ``--json`` prints it verbatim and the
default text output is rendered from the same dict.

Exit codes: 0 success, 1 a mathematical check failed, 2 input error,
3 hypotheses unmet.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .algebra import LieSuperalgebra, center, derived_subalgebra, is_perfect, validate_structure
from .catalog import builtin
from .checks import FAIL, NOT_APPLICABLE, Check, check
from .decompose import decompose_indecomposable
from .derivations import derivation_space, inner_derivation_space, triple_derivation_space, verify_theorem_one
from .errors import OddMapUnsupported, SuperkitError
from .formats import change_field, dumps, load_algebra, load_map, read_document, save_algebra, write_document
from .linalg import Field
from .triple_hom import MapKind, Verdict, classify_linear_map, decompose_triple_hom, triple_hom_violation

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_HYPOTHESES = 0, 1, 2, 3
DEFAULT_MAX_DIM = 16


class InputError(Exception):
    """Raised inside a command to abort with exit code 2."""


def max_dim() -> int:
    raw = os.environ.get("SUPERKIT_MAX_DIM", str(DEFAULT_MAX_DIM))
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"SUPERKIT_MAX_DIM must be an integer, got {raw!r}") from None
    if cap < 0:
        raise InputError("SUPERKIT_MAX_DIM must be nonnegative")
    return cap


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


class Session:
    """Per-invocation state: field override and the digests of every input read."""

    def __init__(self, field_override: Field | None):
        self.field_override = field_override
        self.inputs: dict[str, str] = {}

    def _read(self, path: str):
        doc, raw = read_document(path)
        self.inputs[path] = "sha256:" + hashlib.sha256(raw).hexdigest()
        return doc

    def algebra(self, path: str, **kwargs) -> LieSuperalgebra:
        L = load_algebra(self._read(path), **kwargs)
        if self.field_override is not None:
            L = change_field(L, self.field_override)
        cap = max_dim()
        if L.dim > cap:
            raise InputError(f"{path}: dimension {L.dim} exceeds SUPERKIT_MAX_DIM={cap}")
        return L

    def map_document(self, path: str):
        return self._read(path)

    def report(self, command: str, **fields) -> dict:
        out = {
            "command": command,
            "inputs": dict(sorted(self.inputs.items())),
            "checks": [],
            "dimensions": {},
            "verdicts": {},
        }
        out.update(fields)
        out["checks"] = [c.to_dict() if isinstance(c, Check) else c for c in out["checks"]]
        return _jsonable(out)


def _exit_from_checks(checks: Sequence[Check]) -> int:
    return EXIT_FAIL if any(c.status == FAIL for c in checks) else EXIT_OK


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args, s: Session) -> tuple[dict, int]:
    L = s.algebra(args.path, strict=False, validate=False)
    rep = validate_structure(L)
    names = L.names

    def first(triples):
        return None if not triples else {"triple": [names[i] for i in triples[0]], "count": len(triples)}

    checks = [
        check("parity_compatible", not rep.parity, first(rep.parity)),
        check("graded_skew_symmetry", not rep.skew, first(rep.skew)),
        check("graded_jacobi", not rep.jacobi, first(rep.jacobi)),
    ]
    report = s.report("validate", checks=checks,
                      dimensions={"even": L.n0, "odd": L.n1},
                      verdicts={"valid": rep.ok}, algebra=L.name, field=str(L.field))
    return report, _exit_from_checks(checks)


def _decomposition_summary(L: LieSuperalgebra) -> dict:
    if not center(L).is_zero():
        return {"status": NOT_APPLICABLE, "note": "nonzero center"}
    result = decompose_indecomposable(L)
    if result.undecided:
        return {"status": "undecided", "note": result.note}
    return {
        "status": "decided",
        "ideal_dims": result.dims,
        "ideals": [[[L.field.format(x) for x in v] for v in U.vectors()] for U in result.ideals],
    }


def cmd_analyze(args, s: Session) -> tuple[dict, int]:
    L = s.algebra(args.path)
    Z = center(L)
    D = derived_subalgebra(L)
    report = s.report(
        "analyze",
        algebra=L.name,
        field=str(L.field),
        dimensions={"even": L.n0, "odd": L.n1, "total": L.dim, "center": Z.dim, "derived": D.dim},
        verdicts={"perfect": is_perfect(L), "centerless": Z.is_zero(), "abelian": D.is_zero(),
                  "decomposition": _decomposition_summary(L)},
    )
    return report, EXIT_OK


def cmd_der(args, s: Session) -> tuple[dict, int]:
    L = s.algebra(args.path)
    space = triple_derivation_space(L) if args.triple else derivation_space(L)
    inner = inner_derivation_space(L)
    kind = "TDer" if args.triple else "Der"
    report = s.report(
        "der",
        algebra=L.name,
        field=str(L.field),
        space=kind,
        dimensions={"even": space.dims[0], "odd": space.dims[1],
                    "inner_even": inner.dims[0], "inner_odd": inner.dims[1]},
        verdicts={"identity_in_span": space.contains(L.identity_map()), "inner_contained": inner <= space},
        basis=space.to_records(),
    )
    return report, EXIT_OK


def cmd_theorem1(args, s: Session) -> tuple[dict, int]:
    L = s.algebra(args.path)
    result = verify_theorem_one(L)
    checks = result.all_checks()
    code = _exit_from_checks(checks)
    if code == EXIT_OK and not result.hypotheses_hold:
        code = EXIT_HYPOTHESES
    report = s.report(
        "theorem1",
        algebra=L.name,
        field=str(L.field),
        checks=checks,
        dimensions=result.dims,
        verdicts={"hypotheses": result.hypotheses, "hypotheses_hold": result.hypotheses_hold,
                  "failed_hypotheses": result.failed_hypotheses,
                  "tder_equals_der": result.claim1.status, "tder_of_der_equals_inner": result.claim2.status},
    )
    return report, code


def cmd_hom(args, s: Session) -> tuple[dict, int]:
    domain = s.algebra(args.domain)
    codomain = s.algebra(args.codomain)
    f = load_map(s.map_document(args.map), domain, codomain)
    if f.parity != 0 and not f.is_zero():
        raise OddMapUnsupported("odd maps are not classified; supply an even (parity-preserving) map")
    witness = triple_hom_violation(f)
    kind = classify_linear_map(f)
    named = None if witness is None else [domain.names[i] for i in witness]
    checks = [check("triple_hom_identity", witness is None, named and {"triple": named})]
    verdicts = {"classification": kind.value, "triple_hom": witness is None}
    extra = {}
    code = _exit_from_checks(checks)
    if witness is not None:
        verdicts["verdict"] = Verdict.NOT_TRIPLE_HOM.value
    elif args.decompose:
        rep = decompose_triple_hom(f)
        checks.extend(rep.checks)
        verdicts["verdict"] = rep.verdict.value
        verdicts["diagnostics"] = rep.diagnostics
        extra["decomposition"] = rep.to_dict()
        code = _exit_from_checks(checks)
        if code == EXIT_OK and rep.diagnostics:
            code = EXIT_HYPOTHESES
    else:
        # without --decompose only the classification is reported
        verdicts["verdict"] = {MapKind.HOMOMORPHISM: Verdict.HOMOMORPHISM.value,
                               MapKind.ANTI_HOMOMORPHISM: Verdict.ANTI_HOMOMORPHISM.value}.get(kind, "TripleHom")
    report = s.report(
        "hom",
        checks=checks,
        dimensions={"domain": [domain.n0, domain.n1], "codomain": [codomain.n0, codomain.n1]},
        verdicts=verdicts,
        **extra,
    )
    return report, code


def _params(pairs: Sequence[str]) -> dict:
    out = {}
    for p in pairs:
        key, sep, val = p.partition("=")
        if not sep or not key:
            raise InputError(f"parameter {p!r} must look like key=value")
        out[key.strip()] = val.strip()
    return out


def cmd_builtin(args, s: Session) -> tuple[dict, int]:
    field = Field.parse_spec(args.field) if args.field else None
    L = builtin(args.name, field, **_params(args.param))
    if s.field_override is not None:
        L = change_field(L, s.field_override)
    doc = save_algebra(L)
    if args.output:
        write_document(doc, args.output)
    report = s.report(
        "builtin",
        algebra=L.name,
        field=str(L.field),
        dimensions={"even": L.n0, "odd": L.n1},
        output=args.output,
        document=None if args.output else doc,
    )
    return report, EXIT_OK


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def render_text(report: dict) -> str:
    if report["command"] == "builtin" and report.get("document") is not None:
        return dumps(report["document"]).rstrip("\n")
    lines = [f"superkit {report['command']}"]
    for key in ("algebra", "field", "space", "output"):
        if report.get(key):
            lines.append(f"{key}: {report[key]}")
    for path, digest in report["inputs"].items():
        lines.append(f"input {path} {digest}")
    if report["dimensions"]:
        lines.append("dimensions:")
        for k, v in report["dimensions"].items():
            lines.append(f"  {k}: {v}")
    if report["verdicts"]:
        lines.append("verdicts:")
        for k, v in report["verdicts"].items():
            lines.append(f"  {k}: {json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}")
    if report["checks"]:
        lines.append("checks:")
        for c in report["checks"]:
            line = f"  [{c['status']}] {c['name']}"
            if "witness" in c:
                line += f"  witness={json.dumps(c['witness'], sort_keys=True)}"
            if "note" in c:
                line += f"  ({c['note']})"
            lines.append(line)
    if "decomposition" in report and "delta_f" in report["decomposition"]:
        d = report["decomposition"]
        for key in ("delta_f", "f1", "f2", "M_plus", "M_minus"):
            lines.append(f"{key}: {json.dumps(d[key])}")
    if "error" in report:
        lines.append(f"error: {report['error']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superkit", description="Exact computations with Lie superalgebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="emit the report as JSON")
    parser.add_argument("--field-override", metavar="FIELD",
                        help="reduce inputs to FIELD (Q or F<p>); lossy coercions are refused")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check parity, graded skew-symmetry and graded Jacobi")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="center, derived algebra, perfectness, ideal decomposition")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("der", help="basis of the derivation (or triple-derivation) space")
    p.add_argument("path")
    p.add_argument("--triple", action="store_true", help="solve for triple derivations instead")
    p.set_defaults(func=cmd_der)

    p = sub.add_parser("theorem1", help="verify TDer = Der and TDer(Der) = ad(Der) with supporting identities")
    p.add_argument("path")
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("hom", help="classify a triple homomorphism")
    p.add_argument("map")
    p.add_argument("--domain", required=True)
    p.add_argument("--codomain", required=True)
    p.add_argument("--decompose", action="store_true", help="split into homomorphic and anti-homomorphic parts")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("builtin", help="write a catalog algebra as a document")
    p.add_argument("name")
    p.add_argument("-p", "--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--field", help="Q (default) or F<p>")
    p.add_argument("-o", "--output", help="write the document here instead of stdout")
    p.set_defaults(func=cmd_builtin)
    return parser


def execute(args: argparse.Namespace) -> tuple[dict, int]:
    session = Session(None)
    try:
        if args.field_override:
            session.field_override = Field.parse_spec(args.field_override)
        return args.func(args, session)
    except (SuperkitError, InputError, ValueError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        return session.report(args.command, error=f"{type(exc).__name__}: {message}"), EXIT_INPUT


def run(argv: Sequence[str] | None = None) -> tuple[dict, int]:
    """Parse ``argv`` and execute; returns ``(report, exit_code)`` without printing."""
    return execute(build_parser().parse_args(argv))


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse usage errors are input errors
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    report, code = execute(args)
    text = dumps(report).rstrip("\n") if args.json else render_text(report)
    print(text, file=sys.stderr if code == EXIT_INPUT else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
