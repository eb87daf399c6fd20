import pytest
from hypothesis import given, settings, strategies as st

from superkit import (
    LinearMap,
    MapKind,
    Verdict,
    builtin,
    classify_linear_map,
    decompose_triple_hom,
    delta_f,
    direct_sum,
    enveloping_of_image,
    is_triple_hom,
    split_m_plus_minus,
)
from superkit.checks import FAIL, PASS
from superkit.errors import HypothesisViolated, LemmaViolation, NotTripleHom, OddMapUnsupported
from superkit.linalg import Matrix, Subspace
from superkit.triple_hom import triple_hom_violation

from strategies import F5, Q


def sl2_pair():
    S = builtin("sl2")
    D, e1, e2 = direct_sum(S, S)
    return S, D, e1, e2


def projection_h():
    S = builtin("sl2")
    return LinearMap(S, S, Matrix(Q, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]), 0)


class TestClassify:
    def test_examples(self):
        S = builtin("sl2")
        assert classify_linear_map(S.identity_map()) == MapKind.HOMOMORPHISM
        assert classify_linear_map(-1 * S.identity_map()) == MapKind.ANTI_HOMOMORPHISM
        assert classify_linear_map(LinearMap.zero(S, S)) == MapKind.BOTH
        assert classify_linear_map(projection_h()) == MapKind.NEITHER

    def test_odd_rejected(self):
        O = builtin("osp12")
        odd = LinearMap(O, O, O.ad_matrix(O.unit(3)), 1)
        with pytest.raises(OddMapUnsupported):
            classify_linear_map(odd)
        with pytest.raises(OddMapUnsupported):
            is_triple_hom(odd)

    def test_triple_hom_examples(self):
        O = builtin("osp12")
        assert is_triple_hom(O.identity_map()) and is_triple_hom(-1 * O.identity_map())
        P = projection_h()
        assert not is_triple_hom(P)
        i, j, k = triple_hom_violation(P)
        S = P.domain
        lhs = P(S.bracket_vectors(S.unit(i), S.product(j, k)))
        fe = [P.image_of(t) for t in range(3)]
        assert lhs != S.bracket_vectors(fe[i], S.bracket_vectors(fe[j], fe[k]))

    def test_sum_of_hom_and_anti_hom_is_triple_hom(self):
        S, D, e1, e2 = sl2_pair()
        assert is_triple_hom(e1 - e2)
        O = builtin("osp12")
        D2, g1, g2 = direct_sum(O, O)
        assert is_triple_hom(g1 - g2)


class TestEnvelopingAndDelta:
    def test_identity_and_zero(self):
        O = builtin("osp12")
        M, inc, _ = enveloping_of_image(O.identity_map())
        assert M.dim == 5 and M.same_shape(O)
        M0, _, _ = enveloping_of_image(LinearMap.zero(O, O))
        assert M0.dim == 0

    def test_diagonal_generates_everything(self):
        S, D, e1, e2 = sl2_pair()
        M, inc, _ = enveloping_of_image(e1 - e2)
        assert M.dim == 6

    def test_delta_examples(self):
        S = builtin("sl2")
        for sign in (1, -1):
            f = sign * S.identity_map()
            _, _, fM = enveloping_of_image(f)
            assert delta_f(fM).matrix == Matrix.identity(Q, 3)
        S, D, e1, e2 = sl2_pair()
        _, _, fM = enveloping_of_image(e1 - e2)
        assert delta_f(fM).matrix == (e1 + e2).matrix

    def test_delta_requires_hypotheses(self):
        A = builtin("aff2")
        with pytest.raises(HypothesisViolated):
            delta_f(A.identity_map())
        with pytest.raises(NotTripleHom):
            delta_f(projection_h())

    def test_split_examples(self):
        S, D, e1, e2 = sl2_pair()
        _, _, fM = enveloping_of_image(e1 - e2)
        Mp, Mm = split_m_plus_minus(fM, delta_f(fM))
        assert Mp == Subspace.span(Q, 6, [D.unit(i) for i in range(3)])
        assert Mm == Subspace.span(Q, 6, [D.unit(i) for i in range(3, 6)])
        O = builtin("osp12")
        f = O.identity_map()
        Mp, Mm = split_m_plus_minus(f, delta_f(f))
        assert Mp.is_full() and Mm.is_zero()

    def test_split_detects_bad_delta(self):
        O = builtin("osp12")
        f = O.identity_map()
        with pytest.raises(LemmaViolation):
            split_m_plus_minus(f, LinearMap.zero(O, O))


class TestDecompose:
    def test_identity_and_negation(self):
        O = builtin("osp12")
        assert decompose_triple_hom(O.identity_map()).verdict == Verdict.HOMOMORPHISM
        rep = decompose_triple_hom(-1 * O.identity_map())
        assert rep.verdict == Verdict.ANTI_HOMOMORPHISM
        assert rep.M_plus.is_zero() and rep.M_minus.is_full()

    def test_direct_sum(self):
        S, D, e1, e2 = sl2_pair()
        rep = decompose_triple_hom(e1 - e2)
        assert rep.verdict == Verdict.DIRECT_SUM and not rep.diagnostics
        assert all(c.status == PASS for c in rep.checks)
        # M is all of sl2+sl2 with its own basis, so M coordinates are codomain coordinates
        assert rep.inclusion.matrix == Matrix.identity(Q, 6)
        assert rep.f1.matrix == e1.matrix
        assert rep.f2.matrix == (-1 * e2).matrix
        assert (rep.f1 + rep.f2).matrix == (e1 - e2).matrix
        assert (rep.M_plus & rep.M_minus).is_zero()

    def test_not_triple_hom(self):
        rep = decompose_triple_hom(projection_h())
        assert rep.verdict == Verdict.NOT_TRIPLE_HOM and rep.witness is not None

    def test_hypotheses(self):
        A = builtin("aff2")
        rep = decompose_triple_hom(A.identity_map())
        assert rep.verdict == Verdict.HYPOTHESIS_VIOLATED and "perfect" in rep.diagnostics
        L = builtin("char2_nonabelian")
        rep = decompose_triple_hom(L.identity_map())
        assert "has_half" in rep.diagnostics

    def test_report_dict(self):
        S, D, e1, e2 = sl2_pair()
        d = decompose_triple_hom(e1 - e2).to_dict()
        assert d["verdict"] == "DirectSum"
        assert d["f2"][3] == ["-1", "0", "0"]
        assert d["decomposition"]["ideal_dims"] == [3, 3]

    def test_over_f5(self):
        S = builtin("sl2", F5)
        D, e1, e2 = direct_sum(S, S)
        rep = decompose_triple_hom(e1 - e2)
        assert rep.verdict == Verdict.DIRECT_SUM and rep.ok


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([1, -1]), st.sampled_from([1, -1]), st.sampled_from([1, 2]))
def test_signed_embeddings_into_pairs(s1, s2, nilpotent):
    """x -> (s1 x, s2 g(x)) where g = exp(ad e) or exp(ad f) is an automorphism of sl2."""
    S = builtin("sl2")
    D, e1, e2 = direct_sum(S, S)
    # ad e and ad f are nilpotent of order 3, so the exponential series stops after the square
    A = S.ad_matrix(S.unit(nilpotent))
    g = Matrix.identity(Q, 3) + A + (A @ A).scale(Q.inv(Q(2)))
    auto = LinearMap(S, S, g, 0)
    f = s1 * e1 + s2 * (e2 @ auto)
    rep = decompose_triple_hom(f)
    expected = {(1, 1): Verdict.HOMOMORPHISM, (-1, -1): Verdict.ANTI_HOMOMORPHISM}.get((s1, s2), Verdict.DIRECT_SUM)
    assert rep.verdict == expected
    assert not any(c.status == FAIL for c in rep.checks)
    if expected == Verdict.DIRECT_SUM:
        assert classify_linear_map(rep.f1) in (MapKind.HOMOMORPHISM, MapKind.BOTH)
        assert classify_linear_map(rep.f2) in (MapKind.ANTI_HOMOMORPHISM, MapKind.BOTH)
