"""Built-in algebras and the supermatrix realization backend.

Matrix-realized algebras (gl(1|1), osp(1|2)) get their structure constants
from supercommutators; nothing there is transcribed by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import LieSuperalgebra, direct_sum, validate_structure
from .errors import AxiomViolation, BadParams, DependentGenerators, NotGraded, UnknownName
from .linalg import Field, Matrix, Subspace, rref

Q = Field.rationals()


@dataclass(frozen=True)
class SuperMatrix:
    """An (m+n) x (m+n) matrix in gl(m|n); rows/columns < m are even."""

    m: int
    n: int
    matrix: Matrix
    name: str | None = None

    def __post_init__(self):
        size = self.m + self.n
        if self.matrix.shape != (size, size):
            raise ValueError(f"supermatrix of blocks ({self.m}|{self.n}) must be {size}x{size}")

    @classmethod
    def elementary(cls, field: Field, m: int, n: int, r: int, c: int, name: str | None = None) -> SuperMatrix:
        size = m + n
        rows = [[field.one if (i, j) == (r, c) else field.zero for j in range(size)] for i in range(size)]
        return cls(m, n, Matrix._raw(field, rows, size), name)

    @classmethod
    def of(cls, field: Field, m: int, n: int, rows, name: str | None = None) -> SuperMatrix:
        return cls(m, n, Matrix(field, rows), name)

    @property
    def field(self) -> Field:
        return self.matrix.field

    @property
    def parity(self) -> int | None:
        """0 (block diagonal), 1 (off-diagonal) or None when mixed; zero is even."""
        seen = set()
        for i, row in enumerate(self.matrix.rows):
            for j, x in enumerate(row):
                if x:
                    seen.add(int(i >= self.m) ^ int(j >= self.m))
        if len(seen) > 1:
            return None
        return seen.pop() if seen else 0

    def vector(self) -> tuple:
        return tuple(x for r in self.matrix.rows for x in r)


def supercommutator(A: SuperMatrix, B: SuperMatrix) -> SuperMatrix:
    F = A.field
    s = F.sign(A.parity * B.parity)
    return SuperMatrix(A.m, A.n, (A.matrix @ B.matrix) - (B.matrix @ A.matrix).scale(s))


def from_supermatrices(generators: Sequence[SuperMatrix], name: str = "L", *, validate: bool = True
                       ) -> LieSuperalgebra:
    """Close the span of ``generators`` under the supercommutator and read off constants.

    Generators keep their order and names (default ``x0, x1, ...``); new basis
    elements produced by the closure are named ``x<k>``.  The result is
    reordered even-first.
    """
    if not generators:
        raise ValueError("need at least one generator")
    F = generators[0].field
    m, n = generators[0].m, generators[0].n
    basis: list[SuperMatrix] = []
    names: list[str] = []
    span = Subspace.zero(F, (m + n) ** 2)
    for t, g in enumerate(generators):
        if (g.m, g.n) != (m, n) or g.field != F:
            raise ValueError("generators must share block sizes and field")
        if g.parity is None:
            raise NotGraded(f"generator {t} is not parity-pure")
        grown = span + Subspace.span(F, span.ambient_dim, [g.vector()])
        if grown.dim == span.dim:
            raise DependentGenerators(f"generator {g.name or t} lies in the span of the previous ones")
        span = grown
        basis.append(g)
        names.append(g.name or f"x{t}")
    fresh = len(basis)
    i = 0
    while i < len(basis):
        for j in range(i + 1):
            c = supercommutator(basis[i], basis[j])
            if not span.contains(c.vector()):
                span = span + Subspace.span(F, span.ambient_dim, [c.vector()])
                while f"x{fresh}" in names:
                    fresh += 1
                basis.append(SuperMatrix(m, n, c.matrix, f"x{fresh}"))
                names.append(f"x{fresh}")
        i += 1

    order = [t for t, b in enumerate(basis) if b.parity == 0] + [t for t, b in enumerate(basis) if b.parity == 1]
    basis = [basis[t] for t in order]
    names = [names[t] for t in order]
    n0 = sum(1 for b in basis if b.parity == 0)

    # coordinates through an invertible square block of the vectorized basis
    B = Matrix._raw(F, [b.vector() for b in basis], span.ambient_dim)
    _, pivots, _ = rref(B)
    inv = Matrix._raw(F, [[row[p] for p in pivots] for row in B.rows], len(pivots)).inverse()

    def coords(v):
        return inv.T @ tuple(v[p] for p in pivots)

    table = [[coords(supercommutator(a, b).vector()) for b in basis] for a in basis]
    L = LieSuperalgebra(name, F, names[:n0], names[n0:], table)
    if validate:
        report = validate_structure(L)
        if not report.ok:
            raise AxiomViolation(report)
    return L


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def abelian(n0: int, n1: int, field: Field = Q) -> LieSuperalgebra:
    if n0 < 0 or n1 < 0:
        raise BadParams("dimensions must be nonnegative")
    even = [f"a{i}" for i in range(1, n0 + 1)]
    odd = [f"b{i}" for i in range(1, n1 + 1)]
    return LieSuperalgebra.from_brackets(f"abelian({n0}|{n1})", field, even, odd, {})


def aff2(field: Field = Q) -> LieSuperalgebra:
    return LieSuperalgebra.from_brackets("aff2", field, ["e1", "e2"], [], {("e1", "e2"): {"e2": 1}})


def sl2(field: Field = Q) -> LieSuperalgebra:
    if not field.has_half():
        raise BadParams("sl2 over F_2 degenerates: [h,e] = 2e = 0 makes h central and the algebra non-simple")
    return LieSuperalgebra.from_brackets(
        "sl2", field, ["h", "e", "f"], [],
        {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}},
    )


def gl11(field: Field = Q) -> LieSuperalgebra:
    gens = [
        SuperMatrix.elementary(field, 1, 1, 0, 0, "E11"),
        SuperMatrix.elementary(field, 1, 1, 1, 1, "E22"),
        SuperMatrix.elementary(field, 1, 1, 0, 1, "E12"),
        SuperMatrix.elementary(field, 1, 1, 1, 0, "E21"),
    ]
    return from_supermatrices(gens, "gl(1|1)")


def osp12_generators(field: Field = Q) -> list[SuperMatrix]:
    """Basis of osp(1|2) inside gl(1|2): index 0 even, indices 1, 2 odd."""
    return [
        SuperMatrix.of(field, 1, 2, [[0, 0, 0], [0, 1, 0], [0, 0, -1]], "h"),
        SuperMatrix.of(field, 1, 2, [[0, 0, 0], [0, 0, 1], [0, 0, 0]], "e"),
        SuperMatrix.of(field, 1, 2, [[0, 0, 0], [0, 0, 0], [0, 1, 0]], "f"),
        SuperMatrix.of(field, 1, 2, [[0, 0, 1], [-1, 0, 0], [0, 0, 0]], "q+"),
        SuperMatrix.of(field, 1, 2, [[0, 1, 0], [0, 0, 0], [1, 0, 0]], "q-"),
    ]


def osp12(field: Field = Q) -> LieSuperalgebra:
    if not field.has_half():
        raise BadParams("osp(1|2) over F_2 degenerates: its even part sl2 loses perfectness")
    L = from_supermatrices(osp12_generators(field), "osp(1|2)")
    if L.dim != 5:
        raise AssertionError("osp(1|2) realization did not close on its 5-dimensional span")
    return L


def heisenberg(n: int = 1, m: int = 0, field: Field = Q) -> LieSuperalgebra:
    """Even x_i, y_i, z with [x_i, y_i] = z and odd t_j with [t_j, t_j] = z."""
    if n < 0 or m < 0:
        raise BadParams("heisenberg needs nonnegative n, m")
    even = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)] + ["z"]
    odd = [f"t{j}" for j in range(1, m + 1)]
    brackets = {(f"x{i}", f"y{i}"): {"z": 1} for i in range(1, n + 1)}
    brackets.update({(f"t{j}", f"t{j}"): {"z": 1} for j in range(1, m + 1)})
    return LieSuperalgebra.from_brackets(f"heisenberg({n}|{m})", field, even, odd, brackets)


def char2_nonabelian() -> LieSuperalgebra:
    """aff2 over F_2: non-abelian in characteristic 2."""
    return aff2(Field.prime(2)).with_name("char2_nonabelian")


_ALIASES = {
    "gl(1|1)": "gl11", "gl11": "gl11",
    "osp(1|2)": "osp12", "osp12": "osp12",
    "sl2": "sl2", "sl(2)": "sl2",
    "aff2": "aff2",
    "abelian": "abelian",
    "heisenberg": "heisenberg",
    "char2_nonabelian": "char2_nonabelian",
}

BUILTIN_NAMES = ("abelian", "aff2", "sl2", "gl11", "osp12", "heisenberg", "char2_nonabelian")


def builtin(name: str, field: Field | None = None, **params) -> LieSuperalgebra:
    """Look up a catalog algebra; ``"a+b"`` builds the direct sum of two entries."""
    if "+" in name:
        parts = [p.strip() for p in name.split("+")]
        L = builtin(parts[0], field, **params)
        for p in parts[1:]:
            L, _, _ = direct_sum(L, builtin(p, field, **params))
        return L
    key = _ALIASES.get(name.strip())
    if key is None:
        raise UnknownName(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    field = field or Q
    try:
        if key == "abelian":
            L = abelian(int(params.get("n0", 0)), int(params.get("n1", 0)), field)
        elif key == "heisenberg":
            L = heisenberg(int(params.get("n", 1)), int(params.get("m", 0)), field)
        elif key == "char2_nonabelian":
            if field != Q and field != Field.prime(2):
                raise BadParams("char2_nonabelian is defined over F_2 only")
            L = char2_nonabelian()
        else:
            L = {"aff2": aff2, "sl2": sl2, "gl11": gl11, "osp12": osp12}[key](field)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, BadParams):
            raise
        raise BadParams(str(exc)) from exc
    report = validate_structure(L)
    if not report.ok:
        raise AxiomViolation(report)
    return L
