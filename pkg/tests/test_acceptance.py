"""Acceptance criteria, each with its time bound; one PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py``.
"""

import time
from contextlib import contextmanager
from itertools import product

import pytest
from hypothesis import HealthCheck, given, settings

from superkit import (
    LieSuperalgebra,
    Verdict,
    builtin,
    center,
    classify_linear_map,
    decompose_indecomposable,
    decompose_triple_hom,
    derivation_space,
    direct_sum,
    inner_derivation_space,
    is_perfect,
    lemma_checks,
    load_algebra,
    save_algebra,
    triple_derivation_space,
    validate_structure,
    verify_theorem_one,
)
from superkit.catalog import BUILTIN_NAMES
from superkit.checks import FAIL, NOT_APPLICABLE, PASS
from superkit.formats import dumps, loads
from superkit.linalg import Field, Matrix, Subspace
from superkit.triple_hom import MapKind

from oracles import enumerate_f2, sympy_dims
from strategies import Q, random_f5_algebras

F2 = Field.prime(2)


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title, bound, label=None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < bound, f"took {elapsed:.2f}s, bound {bound}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            status = "PASS" if ok else "FAIL"
            with capsys.disabled():
                print(f"\n[{status}] criterion {number}: {title} ({elapsed:.2f}s, bound {label or f'{bound}s'})")
    return run


def catalog():
    out = []
    for name in BUILTIN_NAMES:
        out.append(builtin(name, F2 if name == "char2_nonabelian" else None))
    out += [builtin("abelian", n0=2, n1=1), builtin("heisenberg", n=1, m=2), builtin("sl2+osp12")]
    return out


def mutations(L):
    F = L.field
    n = L.dim
    for i, j, k in product(range(n), repeat=3):
        table = [[list(row) for row in plane] for plane in L.constants]
        table[i][j][k] = F.add(table[i][j][k], F.one)
        yield (i, j, k), LieSuperalgebra("mutant", F, L.even_names, L.odd_names, table)


def test_criterion_1_axiom_validation(criterion):
    # the bound applies per algebra; the outer limit only guards against runaway loops
    with criterion(1, "catalog valid; every +1 mutation of osp(1|2) caught", 125.0, "1s each"):
        for L in catalog():
            start = time.perf_counter()
            assert validate_structure(L).ok, L.name
            assert time.perf_counter() - start < 1.0
        O = builtin("osp12")
        for where, M in mutations(O):
            start = time.perf_counter()
            rep = validate_structure(M)
            assert rep.jacobi or rep.skew, where
            assert time.perf_counter() - start < 1.0


def test_criterion_2_tder_equals_der_instances(criterion):
    with criterion(2, "TDer = Der = ad and TDer(Der) = ad(Der) for sl2, osp(1|2)", 10.0):
        for name in ("sl2", "osp12"):
            L = builtin(name)
            rep = verify_theorem_one(L)
            assert rep.hypotheses_hold
            assert rep.claim1.status == PASS and rep.claim2.status == PASS
            der, tder, inner = derivation_space(L), triple_derivation_space(L), inner_derivation_space(L)
            assert tder == der == inner
            expected = (L.n0, L.n1)
            assert sympy_dims(L) == sympy_dims(L, triple=True) == expected
            assert der.dims == tder.dims == inner.dims == expected


def test_criterion_3_char2_counterexample(criterion):
    with criterion(3, "aff2 over F2: identity in TDer but not Der; enumeration agrees", 1.0):
        L = builtin("aff2", F2)
        ident = L.identity_map()
        der, tder = derivation_space(L), triple_derivation_space(L)
        assert ident in tder and ident not in der
        for space, triple in ((der, False), (tder, True)):
            basis = [D.vector() for D in space.basis()]
            spanned = {tuple(sum(c * v[t] for c, v in zip(cs, basis)) % 2 for t in range(4))
                       for cs in product((0, 1), repeat=len(basis))}
            assert spanned == set(enumerate_f2(L, triple))


LEMMA_NAMES = {
    "tder_closed_under_supercommutator",
    "inner_is_ideal_of_tder",
    "delta_well_defined",
    "delta_is_derivation",
    "delta_intertwines_ad",
    "tder_centralizer_of_inner_trivial",
    "der_bracket_with_ad",
}

_random_seen = {"count": 0, "perfect": 0}


def _lemmas_hold(L, *, require_all):
    checks = {c.name: c for c in lemma_checks(L)}
    assert LEMMA_NAMES <= set(checks)
    for name in LEMMA_NAMES:
        assert checks[name].status != FAIL, (L.name, name, checks[name].witness)
        if require_all:
            assert checks[name].status == PASS, (L.name, name)
    perfect = is_perfect(L)
    if perfect:
        assert checks["inner_is_ideal_of_tder"].status == PASS
        assert checks["tder_centralizer_of_inner_trivial"].status == PASS
        if center(L).is_zero():
            assert checks["delta_well_defined"].status == PASS
    else:
        assert checks["inner_is_ideal_of_tder"].status == NOT_APPLICABLE
    return perfect


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(random_f5_algebras())
def _random_lemma_case(L):
    assert L.dim <= 4
    _random_seen["count"] += 1
    _random_seen["perfect"] += _lemmas_hold(L, require_all=False)


def test_criterion_4_lemma_suite(criterion):
    with criterion(4, "lemma suite on sl2, osp(1|2), sl2+sl2 and random F5 algebras", 60.0):
        for name in ("sl2", "osp12", "sl2+sl2"):
            _lemmas_hold(builtin(name), require_all=True)
        _random_lemma_case()
        # the random family must exercise the gated lemmas too
        assert _random_seen["perfect"] > 0


def test_criterion_5_triple_hom_pipeline(criterion):
    with criterion(5, "triple homomorphism verdicts, M+/M- and f1/f2", 5.0):
        O = builtin("osp12")
        rep = decompose_triple_hom(O.identity_map())
        assert rep.verdict == Verdict.HOMOMORPHISM and rep.ok
        rep = decompose_triple_hom(-1 * O.identity_map())
        assert rep.verdict == Verdict.ANTI_HOMOMORPHISM and rep.ok

        S = builtin("sl2")
        D, e1, e2 = direct_sum(S, S)
        rep = decompose_triple_hom(e1 - e2)
        assert rep.verdict == Verdict.DIRECT_SUM and not rep.diagnostics
        assert rep.inclusion.matrix == Matrix.identity(Q, 6)
        assert rep.f1.matrix == e1.matrix
        assert rep.f2.matrix == (-1 * e2).matrix
        first = Subspace.span(Q, 6, [D.unit(i) for i in range(3)])
        second = Subspace.span(Q, 6, [D.unit(i) for i in range(3, 6)])
        assert rep.M_plus == first and rep.M_minus == second
        assert all(c.status == PASS for c in rep.checks)
        names = {c.name for c in rep.checks}
        assert {"delta_well_defined", "f_intertwines_ad", "delta_is_homomorphism", "m_plus_minus_are_ideals",
                "m_plus_minus_commute", "m_plus_minus_intersect_trivially", "projection_route_agrees"} <= names
        kinds = sorted(classify_linear_map(p @ rep.f_M).value for p in rep.decomposition.projections)
        assert kinds == sorted([MapKind.HOMOMORPHISM.value, MapKind.ANTI_HOMOMORPHISM.value])


def test_criterion_6_decomposition(criterion):
    with criterion(6, "sl2+osp(1|2) splits into ideals of dims 3 and 5", 5.0):
        L = builtin("sl2+osp12")
        result = decompose_indecomposable(L)
        assert not result.undecided and sorted(result.dims) == [3, 5]
        P = result.projections
        assert len(P) == 2
        for i, p in enumerate(P):
            assert p.parity == 0 and p @ p == p
            assert (p @ P[1 - i]).is_zero()
        assert P[0] + P[1] == L.identity_map()


def test_criterion_7_roundtrip(criterion):
    with criterion(7, "save/load round trip is bit-exact on the catalog", 1.0):
        for L in catalog():
            text = dumps(save_algebra(L))
            again = dumps(save_algebra(load_algebra(loads(text))))
            assert again == text
            assert dumps(save_algebra(load_algebra(loads(again)))) == again
