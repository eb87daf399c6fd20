from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superkit import Field, Matrix, Scalar, Subspace, image, kernel, rref, solve
from superkit.errors import AmbientMismatch, DivisionByZero, FieldMismatch
from superkit.linalg import Echelon, subspace_ops

from strategies import F5, Q, matrices, vectors

F2 = Field.prime(2)


class TestScalars:
    def test_rational_addition(self):
        assert Scalar(Q, Fraction(1, 2)) + Scalar(Q, Fraction(1, 3)) == Scalar(Q, Fraction(5, 6))

    def test_char_two(self):
        assert Scalar(F2, 1) + Scalar(F2, 1) == Scalar(F2, 0)

    def test_inverse_mod_five(self):
        assert Scalar(F5, 2).inverse() == Scalar(F5, 3)

    def test_zero_has_no_inverse(self):
        with pytest.raises(DivisionByZero):
            Scalar(F5, 0).inverse()

    def test_mixed_fields_rejected(self):
        with pytest.raises(FieldMismatch):
            Scalar(F5, 1) + Scalar(Q, 1)

    def test_fraction_reduces_mod_p(self):
        assert F5(Fraction(1, 2)) == 3
        with pytest.raises(DivisionByZero):
            F5(Fraction(1, 5))

    @pytest.mark.parametrize("text,field,expected", [
        ("3/6", Q, "1/2"), ("-4", Q, "-4"), ("7", F5, "2"), ("-1", F5, "4"), ("1/2", F5, "3"),
    ])
    def test_canonical_strings(self, text, field, expected):
        assert field.format(field.parse(text)) == expected

    @pytest.mark.parametrize("spec,field", [("Q", Q), ("F5", F5), ("Fp:5", F5), ("GF2", F2)])
    def test_field_specs(self, spec, field):
        assert Field.parse_spec(spec) == field
        assert Field.from_dict(field.to_dict()) == field

    def test_composite_modulus_rejected(self):
        with pytest.raises(ValueError):
            Field.prime(6)


class TestRref:
    def test_identity(self):
        R, piv, r = rref(Matrix.identity(Q, 3))
        assert R == Matrix.identity(Q, 3) and piv == (0, 1, 2) and r == 3

    def test_zero(self):
        R, piv, r = rref(Matrix.zeros(Q, 2, 3))
        assert R.is_zero() and piv == () and r == 0

    def test_proportional_rows(self):
        R, piv, r = rref(Matrix(Q, [[2, 4], [1, 2]]))
        assert R == Matrix(Q, [[1, 2], [0, 0]]) and r == 1

    @given(matrices(Q, 3, 4))
    def test_idempotent(self, m):
        R = rref(m)[0]
        assert rref(R)[0] == R

    @given(st.one_of(matrices(Q, 3, 4), matrices(F5, 4, 3)))
    def test_rank_nullity(self, m):
        assert kernel(m).dim + m.rank() == m.ncols

    def test_echelon_matches_rref(self):
        m = Matrix(Q, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
        ech = Echelon(Q, 3)
        for row in m.rows:
            ech.add({j: x for j, x in enumerate(row) if x})
        assert ech.rank == 2
        dense = [[row.get(j, Q.zero) for j in range(3)] for _, row in ech.reduced_rows()]
        assert Matrix(Q, dense) == Matrix(Q, [r for r in rref(m)[0].rows if any(r)])


class TestKernelImageSolve:
    def test_kernel_examples(self):
        assert kernel(Matrix.identity(Q, 3)).is_zero()
        assert kernel(Matrix.zeros(Q, 2, 3)).is_full()
        assert kernel(Matrix(Q, [[1, 1]])) == Subspace.span(Q, 2, [(1, -1)])

    def test_image_examples(self):
        assert image(Matrix.identity(Q, 2)).is_full()
        assert image(Matrix.zeros(Q, 2, 2)).is_zero()
        assert image(Matrix(Q, [[1], [2]])) == Subspace.span(Q, 2, [(1, 2)])

    def test_solve_examples(self):
        assert solve(Matrix.identity(Q, 2), (3, 4)) == (3, 4)
        assert solve(Matrix(Q, [[1, 1]]), (2,)) == (2, 0)
        assert solve(Matrix.zeros(Q, 1, 2), (1,)) is None

    @given(matrices(Q, 3, 3), vectors(Q, 3))
    def test_solution_is_exact(self, m, b):
        x = solve(m, b)
        if x is not None:
            assert m @ x == b
        else:
            assert m.rank() < Matrix.from_columns(Q, m.columns() + [b], 3).rank()

    @given(matrices(F5, 3, 3))
    def test_inverse(self, m):
        if m.rank() == 3:
            assert m @ m.inverse() == Matrix.identity(F5, 3)

    @given(matrices(F5, 2, 4))
    def test_kernel_vectors_annihilated(self, m):
        for v in kernel(m).vectors():
            assert all(x == 0 for x in m @ v)


class TestSubspaces:
    def test_examples(self):
        u = Subspace.span(Q, 2, [(1, 0)])
        v = Subspace.span(Q, 2, [(0, 1)])
        assert (u & u) == u
        assert (u & v).is_zero()
        assert (u + v).is_full()
        assert subspace_ops(u, v, "equals") is False
        assert subspace_ops(u, v, "contains_vector", (0, 0)) is True

    def test_canonical_equality(self):
        assert Subspace.span(Q, 3, [(2, 4, 0), (0, 0, 3)]) == Subspace.span(Q, 3, [(1, 2, 3), (1, 2, 0)])

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatch):
            Subspace.zero(Q, 2) + Subspace.zero(Q, 3)

    @settings(max_examples=60)
    @given(matrices(Q, 2, 5, st.integers(-3, 3)), matrices(Q, 3, 5, st.integers(-3, 3)))
    def test_dimension_formula(self, a, b):
        u = Subspace.span(Q, 5, a.rows)
        v = Subspace.span(Q, 5, b.rows)
        assert (u + v).dim + (u & v).dim == u.dim + v.dim
        assert (u & v) <= u and (u & v) <= v and u <= (u + v)

    @given(matrices(F5, 3, 4))
    def test_coordinates_roundtrip(self, m):
        U = Subspace.span(F5, 4, m.rows)
        for row in m.rows:
            assert U.combine(U.coordinates(row)) == tuple(row)
