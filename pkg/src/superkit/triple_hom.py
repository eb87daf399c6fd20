"""Triple homomorphisms and their splitting into homomorphic and anti-homomorphic parts.

For an even map ``f: L -> L'`` with ``f[x,[y,z]] = [fx,[fy,fz]]`` we build
``M``, the subalgebra of ``L'`` generated by ``f(L)``, the homomorphism
``delta_f: L -> M`` defined on brackets by ``[x1, x2] -> [f x1, f x2]``, and
the ideals ``M+ = Im(f + delta_f)`` and ``M- = Im(f - delta_f)``.  When ``L``
is perfect and ``M`` centerless these split ``M`` and ``f`` accordingly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import (
    LieSuperalgebra,
    LinearMap,
    bracket_of_subspaces,
    center,
    enveloping_closure,
    induced_subalgebra,
    is_ideal,
    is_perfect,
    subspace_inclusion,
)
from .checks import Check, check, not_applicable
from .decompose import DecompositionResult, decompose_indecomposable
from .derivations import express_as_brackets
from .errors import HypothesisViolated, LemmaViolation, NotTripleHom, OddMapUnsupported
from .linalg import Subspace


class MapKind(str, enum.Enum):
    HOMOMORPHISM = "Homomorphism"
    ANTI_HOMOMORPHISM = "AntiHomomorphism"
    BOTH = "Both"
    NEITHER = "Neither"


class Verdict(str, enum.Enum):
    NOT_TRIPLE_HOM = "NotTripleHom"
    HOMOMORPHISM = "Homomorphism"
    ANTI_HOMOMORPHISM = "AntiHomomorphism"
    DIRECT_SUM = "DirectSum"
    HYPOTHESIS_VIOLATED = "HypothesisViolated"


def _require_even(f: LinearMap) -> None:
    if f.parity != 0 and not f.is_zero():
        raise OddMapUnsupported("only parity-preserving maps are classified")


def _images(f: LinearMap) -> list[tuple]:
    return [f.image_of(i) for i in range(f.domain.dim)]


def homomorphism_violation(f: LinearMap) -> tuple[int, int] | None:
    _require_even(f)
    L, Lp = f.domain, f.codomain
    fe = _images(f)
    for i in range(L.dim):
        for j in range(L.dim):
            if f(L.product(i, j)) != Lp.bracket_vectors(fe[i], fe[j]):
                return i, j
    return None


def anti_homomorphism_violation(f: LinearMap) -> tuple[int, int] | None:
    _require_even(f)
    L, Lp = f.domain, f.codomain
    F = L.field
    fe = _images(f)
    for i in range(L.dim):
        for j in range(L.dim):
            s = F.sign(L.parity(i) * L.parity(j))
            rhs = tuple(F.mul(s, x) for x in Lp.bracket_vectors(fe[j], fe[i]))
            if f(L.product(i, j)) != rhs:
                return i, j
    return None


def classify_linear_map(f: LinearMap) -> MapKind:
    hom = homomorphism_violation(f) is None
    anti = anti_homomorphism_violation(f) is None
    if hom and anti:
        return MapKind.BOTH
    if hom:
        return MapKind.HOMOMORPHISM
    if anti:
        return MapKind.ANTI_HOMOMORPHISM
    return MapKind.NEITHER


def triple_hom_violation(f: LinearMap) -> tuple[int, int, int] | None:
    """First basis triple with ``f[x,[y,z]] != [fx,[fy,fz]]``, or None."""
    _require_even(f)
    L, Lp = f.domain, f.codomain
    fe = _images(f)
    for j in range(L.dim):
        for k in range(L.dim):
            yz = L.product(j, k)
            fyz = Lp.bracket_vectors(fe[j], fe[k])
            for i in range(L.dim):
                if f(L.bracket_vectors(L.unit(i), yz)) != Lp.bracket_vectors(fe[i], fyz):
                    return i, j, k
    return None


def is_triple_hom(f: LinearMap) -> bool:
    return triple_hom_violation(f) is None


def enveloping_of_image(f: LinearMap) -> tuple[LieSuperalgebra, LinearMap, LinearMap]:
    """``M`` generated by ``f(L)``, its inclusion into the codomain, and ``f`` corestricted to ``M``."""
    _require_even(f)
    Lp = f.codomain
    W = enveloping_closure(Lp, Subspace.span(Lp.field, Lp.dim, _images(f)))
    M = induced_subalgebra(Lp, W, name=f"M[{f.domain.name}->{Lp.name}]")
    inclusion = subspace_inclusion(M, Lp, W)
    f_M = LinearMap.from_images(f.domain, M, [W.coordinates(v) for v in _images(f)], parity=0)
    return M, inclusion, f_M


def delta_f(f: LinearMap, pairs: Sequence[tuple[int, int]] | None = None, *, check: bool = True) -> LinearMap:
    """The homomorphism sending ``sum c [x1, x2]`` to ``sum c [f x1, f x2]``.

    ``f`` must already map into the algebra generated by its image (see
    :func:`enveloping_of_image`); that algebra must be centerless and the
    domain perfect.
    """
    L, M = f.domain, f.codomain
    if check:
        failed = []
        if not is_perfect(L):
            failed.append("perfect")
        if not center(M).is_zero():
            failed.append("M_centerless")
        if failed:
            raise HypothesisViolated(failed)
        witness = triple_hom_violation(f)
        if witness is not None:
            raise NotTripleHom(witness)
    F = L.field
    fe = _images(f)
    cols = []
    for k in range(L.dim):
        acc = [F.zero] * M.dim
        for c, i, j in express_as_brackets(L, L.unit(k), pairs).terms:
            for t, x in enumerate(M.bracket_vectors(fe[i], fe[j])):
                if x:
                    acc[t] = F.add(acc[t], F.mul(c, x))
        cols.append(tuple(acc))
    return LinearMap.from_images(L, M, cols, parity=0)


def _image(g: LinearMap) -> Subspace:
    return Subspace.span(g.codomain.field, g.codomain.dim, _images(g))


def m_plus_minus_checks(f: LinearMap, delta: LinearMap) -> tuple[Subspace, Subspace, list[Check]]:
    M = f.codomain
    Mp, Mm = _image(f + delta), _image(f - delta)
    out = [
        check("m_plus_minus_are_ideals", is_ideal(M, Mp) and is_ideal(M, Mm),
              {"M_plus_ideal": is_ideal(M, Mp), "M_minus_ideal": is_ideal(M, Mm)}),
        check("m_plus_minus_commute", bracket_of_subspaces(M, Mp, Mm).is_zero()),
        check("m_plus_minus_intersect_trivially", Mp.intersect(Mm).is_zero(), {"dim": Mp.intersect(Mm).dim}),
        check("m_plus_minus_span_m", (Mp + Mm).is_full(), {"dim": (Mp + Mm).dim, "dim_M": M.dim}),
    ]
    return Mp, Mm, out


def split_m_plus_minus(f: LinearMap, delta: LinearMap) -> tuple[Subspace, Subspace]:
    """``M+ = Im(f + delta)``, ``M- = Im(f - delta)``; raises LemmaViolation if they fail to split ``M``."""
    Mp, Mm, checks = m_plus_minus_checks(f, delta)
    for c in checks:
        if c.failed:
            raise LemmaViolation(c.name)
    return Mp, Mm


@dataclass
class TripleHomReport:
    verdict: Verdict
    classification: MapKind | None = None
    witness: tuple[int, int, int] | None = None
    M: LieSuperalgebra | None = None
    inclusion: LinearMap | None = None
    f_M: LinearMap | None = None
    delta_f: LinearMap | None = None
    M_plus: Subspace | None = None
    M_minus: Subspace | None = None
    f1: LinearMap | None = None
    f2: LinearMap | None = None
    decomposition: DecompositionResult | None = None
    checks: list[Check] = dc_field(default_factory=list)
    diagnostics: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.checks)

    def to_dict(self) -> dict:
        def mat(g):
            return None if g is None else g.matrix.to_strings()

        def sub(U):
            return None if U is None else [[U.field.format(x) for x in v] for v in U.vectors()]

        out = {
            "verdict": self.verdict.value,
            "classification": self.classification.value if self.classification else None,
            "diagnostics": list(self.diagnostics),
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.M is not None:
            out["M"] = {"dims": [self.M.n0, self.M.n1], "basis_in_codomain": mat(self.inclusion)}
        if self.delta_f is not None:
            out.update({
                "delta_f": mat(self.delta_f),
                "M_plus": sub(self.M_plus),
                "M_minus": sub(self.M_minus),
                "f1": mat(self.f1),
                "f2": mat(self.f2),
            })
        if self.decomposition is not None:
            d = self.decomposition
            out["decomposition"] = {"undecided": d.undecided, "ideal_dims": d.dims}
        return out


def _sum_of(M: LieSuperalgebra, spaces: list[Subspace]) -> Subspace:
    total = Subspace.zero(M.field, M.dim)
    for U in spaces:
        total = total + U
    return total


def decompose_triple_hom(f: LinearMap) -> TripleHomReport:
    """Classify ``f`` as homomorphism, anti-homomorphism or a direct sum of the two.

    Hypothesis failures are reported in the verdict and ``diagnostics``;
    identities that must hold under the hypotheses are recorded as checks.
    """
    L = f.domain
    F = L.field
    if f.parity != 0 and not f.is_zero():
        return TripleHomReport(Verdict.HYPOTHESIS_VIOLATED, diagnostics=["even_map"])
    classification = classify_linear_map(f)
    witness = triple_hom_violation(f)
    if witness is not None:
        return TripleHomReport(Verdict.NOT_TRIPLE_HOM, classification, witness)

    M, inclusion, f_M = enveloping_of_image(f)
    report = TripleHomReport(Verdict.HYPOTHESIS_VIOLATED, classification, M=M, inclusion=inclusion, f_M=f_M)
    if not F.has_half():
        report.diagnostics.append("has_half")
    if not is_perfect(L):
        report.diagnostics.append("perfect")
    if not center(M).is_zero():
        report.diagnostics.append("M_centerless")
    if report.diagnostics:
        return report

    decomposition = decompose_indecomposable(M)
    report.decomposition = decomposition
    if decomposition.undecided:
        report.diagnostics.append("M_decomposition_undecided")

    delta = delta_f(f_M, check=False)
    report.delta_f = delta
    rev = [(i, j) for i in reversed(range(L.dim)) for j in reversed(range(L.dim))]
    report.checks.append(check("delta_well_defined", delta == delta_f(f_M, rev, check=False)))

    bad = None
    for k in range(L.dim):
        lhs = f_M.matrix @ L.ad_matrix(L.unit(k))
        rhs = M.ad_matrix(delta.image_of(k)) @ f_M.matrix
        if lhs != rhs:
            bad = {"x": L.names[k]}
            break
    report.checks.append(check("f_intertwines_ad", bad is None, bad))
    hv = homomorphism_violation(delta)
    report.checks.append(check("delta_is_homomorphism", hv is None, hv and {"pair": list(hv)}))

    Mp, Mm, checks = m_plus_minus_checks(f_M, delta)
    report.checks.extend(checks)
    report.M_plus, report.M_minus = Mp, Mm

    half = F.inv(F(2))
    report.f1 = half * (f_M + delta)
    report.f2 = half * (f_M - delta)
    k1, k2 = classify_linear_map(report.f1), classify_linear_map(report.f2)
    report.checks.append(check("f1_is_homomorphism", k1 in (MapKind.HOMOMORPHISM, MapKind.BOTH),
                               {"classified": k1.value}))
    report.checks.append(check("f2_is_anti_homomorphism", k2 in (MapKind.ANTI_HOMOMORPHISM, MapKind.BOTH),
                               {"classified": k2.value}))
    report.checks.append(check("f_equals_f1_plus_f2", (report.f1 + report.f2).matrix == f_M.matrix))

    if not decomposition.undecided:
        kinds = [classify_linear_map(p @ f_M) for p in decomposition.projections]
        hom_part = _sum_of(M, [U for U, k in zip(decomposition.ideals, kinds) if k == MapKind.HOMOMORPHISM])
        anti_part = _sum_of(M, [U for U, k in zip(decomposition.ideals, kinds) if k == MapKind.ANTI_HOMOMORPHISM])
        agree = MapKind.NEITHER not in kinds and hom_part == Mp and anti_part == Mm
        report.checks.append(check("projection_route_agrees", agree, {"components": [k.value for k in kinds]}))
    else:
        report.checks.append(not_applicable("projection_route_agrees", "decomposition of M undecided"))

    if Mm.is_zero():
        report.verdict = Verdict.HOMOMORPHISM
    elif Mp.is_zero():
        report.verdict = Verdict.ANTI_HOMOMORPHISM
    else:
        report.verdict = Verdict.DIRECT_SUM
    return report
