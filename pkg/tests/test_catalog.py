from itertools import product

import pytest

from superkit import Field, Matrix, SuperMatrix, builtin, center, from_supermatrices, is_perfect, validate_structure
from superkit.catalog import BUILTIN_NAMES, osp12_generators, supercommutator
from superkit.errors import BadParams, DependentGenerators, NotGraded, UnknownName

from strategies import F5, Q

F2 = Field.prime(2)


def test_every_builtin_is_valid():
    for name in BUILTIN_NAMES:
        field = F2 if name == "char2_nonabelian" else Q
        assert validate_structure(builtin(name, field)).ok


def test_abelian_2_1():
    A = builtin("abelian", n0=2, n1=1)
    assert A.dim == 3 and (A.n0, A.n1) == (2, 1)
    assert all(x == 0 for plane in A.constants for row in plane for x in row)


def test_char2_nonabelian():
    L = builtin("char2_nonabelian")
    assert L.field == F2 and L.names == ("e1", "e2")
    assert L.product(0, 1) == (0, 1)


def test_osp12_properties():
    O = builtin("osp(1|2)")
    assert (O.n0, O.n1) == (3, 2)
    assert is_perfect(O) and center(O).is_zero()


def test_osp12_table_matches_supercommutators():
    O = builtin("osp12")
    gens = {g.name: g for g in osp12_generators()}
    for a, b in product(O.names, repeat=2):
        comm = supercommutator(gens[a], gens[b]).matrix
        expected = Matrix.zeros(Q, 3, 3)
        for k, c in enumerate(O.constants[O.index(a)][O.index(b)]):
            expected = expected + gens[O.names[k]].matrix.scale(c)
        assert comm == expected


def test_osp12_known_brackets():
    O = builtin("osp12")
    assert O["q+"].bracket(O["q-"]) == -1 * O["h"]
    assert O["q+"].bracket(O["q+"]) == -2 * O["e"]
    assert O["q-"].bracket(O["q-"]) == 2 * O["f"]


def test_single_even_matrix_is_abelian():
    L = from_supermatrices([SuperMatrix.of(Q, 2, 0, [[1, 2], [3, 4]])])
    assert L.dim == 1 and L.product(0, 0) == (0,)


def test_sl2_from_traceless_matrices():
    gens = [SuperMatrix.of(Q, 2, 0, [[1, 0], [0, -1]], "h"),
            SuperMatrix.of(Q, 2, 0, [[0, 1], [0, 0]], "e"),
            SuperMatrix.of(Q, 2, 0, [[0, 0], [1, 0]], "f")]
    assert from_supermatrices(gens, "sl2") == builtin("sl2")


def test_gl11():
    G = builtin("gl(1|1)")
    assert G.dim == 4 and center(G).dim == 1


def test_closure_adds_brackets():
    # e and f alone generate h
    L = from_supermatrices([SuperMatrix.of(Q, 2, 0, [[0, 1], [0, 0]], "e"),
                            SuperMatrix.of(Q, 2, 0, [[0, 0], [1, 0]], "f")])
    assert L.dim == 3 and L.names[2] == "x2"


def test_generator_errors():
    e = SuperMatrix.of(Q, 2, 0, [[0, 1], [0, 0]])
    with pytest.raises(DependentGenerators):
        from_supermatrices([e, SuperMatrix.of(Q, 2, 0, [[0, 2], [0, 0]])])
    with pytest.raises(NotGraded):
        from_supermatrices([SuperMatrix.of(Q, 1, 1, [[1, 1], [0, 0]])])


def test_supermatrix_parity():
    assert SuperMatrix.of(Q, 1, 1, [[1, 0], [0, 1]]).parity == 0
    assert SuperMatrix.of(Q, 1, 1, [[0, 1], [1, 0]]).parity == 1
    assert SuperMatrix.of(Q, 1, 1, [[1, 1], [0, 0]]).parity is None


def test_builtin_errors():
    with pytest.raises(UnknownName):
        builtin("so3")
    with pytest.raises(BadParams):
        builtin("sl2", F2)
    with pytest.raises(BadParams):
        builtin("osp12", F2)
    with pytest.raises(BadParams):
        builtin("abelian", n0="x")


def test_direct_sum_names():
    L = builtin("sl2+sl2")
    assert L.names == ("h_1", "e_1", "f_1", "h_2", "e_2", "f_2")


def test_over_f5():
    assert validate_structure(builtin("osp12", F5)).ok
