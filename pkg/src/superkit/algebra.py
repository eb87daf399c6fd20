"""Finite-dimensional Lie superalgebras given by structure constants.

The basis is always ordered even block first, then odd block, so the parity
of basis index ``i`` is ``0`` for ``i < n0`` and ``1`` otherwise.  Constants
are stored densely for every ordered pair: ``[e_i, e_j] = sum_k c[i][j][k] e_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .errors import (
    AlgebraMismatch,
    AmbientMismatch,
    FieldMismatch,
    MixedParity,
    NotClosed,
    NotGraded,
    ShapeError,
    SkewConflict,
)
from .linalg import Field, Matrix, Subspace, nullspace_sparse


class LieSuperalgebra:
    """Structure-constant table over a field.

    Construction only checks shapes; use :func:`validate_structure` for the
    axioms.  Instances are treated as immutable.
    """

    def __init__(self, name: str, field: Field, even: Sequence[str], odd: Sequence[str], constants):
        self.name = name
        self.field = field
        self.even_names = tuple(even)
        self.odd_names = tuple(odd)
        names = self.even_names + self.odd_names
        if len(set(names)) != len(names):
            raise ShapeError(f"basis names must be distinct: {names}")
        for nm in names:
            if not isinstance(nm, str) or not nm or "," in nm:
                raise ShapeError(f"basis name {nm!r} must be a non-empty string without commas")
        n = len(names)
        try:
            table = tuple(
                tuple(tuple(field(x) for x in constants[i][j]) for j in range(n)) for i in range(n)
            )
        except (IndexError, TypeError) as exc:
            raise ShapeError("structure constant table does not match the basis size") from exc
        if len(constants) != n or any(len(constants[i]) != n for i in range(n)) \
                or any(len(table[i][j]) != n for i in range(n) for j in range(n)):
            raise ShapeError("structure constant table must be n x n x n")
        self.constants = table
        # sparse products for fast bracket evaluation
        self._products = tuple(
            tuple(tuple((k, c) for k, c in enumerate(table[i][j]) if c) for j in range(n)) for i in range(n)
        )
        self._index = {nm: i for i, nm in enumerate(names)}

    # -- basic shape -----------------------------------------------------

    @property
    def n0(self) -> int:
        return len(self.even_names)

    @property
    def n1(self) -> int:
        return len(self.odd_names)

    @property
    def dim(self) -> int:
        return self.n0 + self.n1

    @property
    def names(self) -> tuple[str, ...]:
        return self.even_names + self.odd_names

    def parity(self, i: int) -> int:
        return 0 if i < self.n0 else 1

    def index(self, name: str) -> int:
        return self._index[name]

    def __repr__(self):
        return f"LieSuperalgebra({self.name!r}, {self.field}, dim {self.n0}|{self.n1})"

    def __eq__(self, other):
        if not isinstance(other, LieSuperalgebra):
            return NotImplemented
        return (self.name, self.field, self.even_names, self.odd_names, self.constants) == \
            (other.name, other.field, other.even_names, other.odd_names, other.constants)

    def __hash__(self):
        return hash((self.name, self.field, self.names))

    def same_shape(self, other: LieSuperalgebra) -> bool:
        return self.field == other.field and self.n0 == other.n0 and self.n1 == other.n1 \
            and self.constants == other.constants

    # -- construction helpers --------------------------------------------

    @classmethod
    def from_brackets(cls, name: str, field: Field, even: Sequence[str], odd: Sequence[str],
                      brackets: Mapping[tuple[str, str], Mapping[str, object]], *, strict: bool = True
                      ) -> LieSuperalgebra:
        """Build from a sparse ``{(a, b): {c: coeff}}`` table, completing skew pairs.

        With ``strict`` a given pair that contradicts graded skew-symmetry
        raises :class:`SkewConflict`; otherwise the given values are kept and
        left for :func:`validate_structure` to report.
        """
        names = list(even) + list(odd)
        idx = {nm: i for i, nm in enumerate(names)}
        n = len(names)
        n0 = len(even)
        table = [[[field.zero] * n for _ in range(n)] for _ in range(n)]
        given: set[tuple[int, int]] = set()
        for (a, b), coeffs in brackets.items():
            i, j = idx[a], idx[b]
            vec = [field.zero] * n
            for c, val in coeffs.items():
                vec[idx[c]] = field.add(vec[idx[c]], field(val))
            table[i][j] = vec
            given.add((i, j))
        for i, j in sorted(given):
            pi, pj = int(i >= n0), int(j >= n0)
            s = field.neg(field.sign(pi * pj))
            mirrored = [field.mul(s, x) for x in table[i][j]]
            if (j, i) in given:
                if strict and table[j][i] != mirrored:
                    raise SkewConflict((names[i], names[j]))
            else:
                table[j][i] = mirrored
                given.add((j, i))
        return cls(name, field, even, odd, table)

    def with_name(self, name: str) -> LieSuperalgebra:
        return LieSuperalgebra(name, self.field, self.even_names, self.odd_names, self.constants)

    # -- vectors ---------------------------------------------------------

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def unit(self, i: int) -> tuple:
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def product(self, i: int, j: int) -> tuple:
        """Coordinates of ``[e_i, e_j]``."""
        return self.constants[i][j]

    def bracket_vectors(self, u: Sequence, v: Sequence) -> tuple:
        F = self.field
        acc = [F.zero] * self.dim
        vs = [(j, b) for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            row = self._products[i]
            for j, b in vs:
                ab = F.mul(a, b)
                for k, c in row[j]:
                    acc[k] = F.add(acc[k], F.mul(ab, c))
        return tuple(acc)

    def vector_parity(self, v: Sequence) -> int | None:
        """0 or 1 for parity-pure vectors (zero counts as even), None when mixed."""
        even = any(v[:self.n0])
        odd = any(v[self.n0:])
        if even and odd:
            return None
        return 1 if odd else 0

    # -- elements --------------------------------------------------------

    def element(self, coords: Sequence) -> Element:
        return Element(self, tuple(self.field(x) for x in coords))

    def basis_element(self, i: int) -> Element:
        return Element(self, self.unit(i))

    def __getitem__(self, name: str) -> Element:
        return self.basis_element(self._index[name])

    def basis(self) -> list[Element]:
        return [self.basis_element(i) for i in range(self.dim)]

    # -- maps ------------------------------------------------------------

    def ad_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``z -> [x, z]`` (column j is ``[x, e_j]``)."""
        cols = [self.bracket_vectors(x, self.unit(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def identity_map(self) -> LinearMap:
        return LinearMap(self, self, Matrix.identity(self.field, self.dim), 0)

    def block_allowed(self, r: int, c: int, parity: int) -> bool:
        return (self.parity(r) + self.parity(c)) % 2 == parity


@dataclass(frozen=True)
class Element:
    algebra: LieSuperalgebra
    coords: tuple

    @property
    def parity(self) -> int | None:
        return self.algebra.vector_parity(self.coords)

    def is_homogeneous(self) -> bool:
        return self.parity is not None

    def _same(self, other: Element):
        if not isinstance(other, Element) or not other.algebra.same_shape(self.algebra):
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other: Element) -> Element:
        self._same(other)
        F = self.algebra.field
        return Element(self.algebra, tuple(F.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Element) -> Element:
        self._same(other)
        F = self.algebra.field
        return Element(self.algebra, tuple(F.sub(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> Element:
        F = self.algebra.field
        return Element(self.algebra, tuple(F.neg(a) for a in self.coords))

    def __rmul__(self, c) -> Element:
        F = self.algebra.field
        c = F(c)
        return Element(self.algebra, tuple(F.mul(c, a) for a in self.coords))

    def bracket(self, other: Element) -> Element:
        self._same(other)
        return Element(self.algebra, self.algebra.bracket_vectors(self.coords, other.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        terms = [f"{c}*{nm}" if c != 1 else nm for c, nm in zip(self.coords, self.algebra.names) if c]
        return " + ".join(terms) if terms else "0"


def bracket(x: Element, y: Element) -> Element:
    return x.bracket(y)


@dataclass(frozen=True)
class LinearMap:
    """Parity-tagged linear map; column ``j`` of ``matrix`` is the image of ``e_j``."""

    domain: LieSuperalgebra
    codomain: LieSuperalgebra
    matrix: Matrix
    parity: int

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 or 1")
        m = self.matrix
        if m.shape != (self.codomain.dim, self.domain.dim):
            raise ShapeError(f"matrix shape {m.shape} for map of dims {self.domain.dim} -> {self.codomain.dim}")
        if m.field != self.domain.field or self.codomain.field != self.domain.field:
            raise FieldMismatch("map, domain and codomain must share a field")
        for r in range(m.nrows):
            pr = self.codomain.parity(r)
            for c in range(m.ncols):
                if m[r, c] and (pr + self.domain.parity(c)) % 2 != self.parity:
                    raise MixedParity(f"entry ({r},{c}) is outside the parity-{self.parity} blocks")

    @classmethod
    def zero(cls, domain: LieSuperalgebra, codomain: LieSuperalgebra, parity: int = 0) -> LinearMap:
        return cls(domain, codomain, Matrix.zeros(domain.field, codomain.dim, domain.dim), parity)

    @classmethod
    def from_vector(cls, domain, codomain, vec: Sequence, parity: int) -> LinearMap:
        """Inverse of :meth:`vector` (row-major flattening)."""
        n = domain.dim
        rows = [vec[r * n:(r + 1) * n] for r in range(codomain.dim)]
        return cls(domain, codomain, Matrix._raw(domain.field, rows, n), parity)

    @classmethod
    def from_images(cls, domain, codomain, images: Sequence[Sequence], parity: int | None = None) -> LinearMap:
        m = Matrix.from_columns(domain.field, images, codomain.dim)
        if parity is None:
            parity = _infer_parity(domain, codomain, m)
        return cls(domain, codomain, m, parity)

    def vector(self) -> tuple:
        return tuple(x for r in self.matrix.rows for x in r)

    def image_of(self, j: int) -> tuple:
        return self.matrix.column(j)

    def __call__(self, x):
        if isinstance(x, Element):
            return Element(self.codomain, self.matrix @ x.coords)
        return self.matrix @ tuple(x)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def _join_parity(self, other: LinearMap) -> int:
        if self.parity == other.parity or other.is_zero():
            return self.parity
        if self.is_zero():
            return other.parity
        raise MixedParity("cannot add maps of different parity")

    def __add__(self, other: LinearMap) -> LinearMap:
        return LinearMap(self.domain, self.codomain, self.matrix + other.matrix, self._join_parity(other))

    def __sub__(self, other: LinearMap) -> LinearMap:
        return LinearMap(self.domain, self.codomain, self.matrix - other.matrix, self._join_parity(other))

    def __neg__(self) -> LinearMap:
        return LinearMap(self.domain, self.codomain, -self.matrix, self.parity)

    def __rmul__(self, c) -> LinearMap:
        return LinearMap(self.domain, self.codomain, self.matrix.scale(c), self.parity)

    def __matmul__(self, other: LinearMap) -> LinearMap:
        """Composition ``self o other``."""
        return LinearMap(other.domain, self.codomain, self.matrix @ other.matrix, (self.parity + other.parity) % 2)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix and self.domain.same_shape(other.domain) \
            and self.codomain.same_shape(other.codomain) and (self.parity == other.parity or self.is_zero())

    def __hash__(self):
        return hash(self.matrix)


def _infer_parity(domain, codomain, m: Matrix) -> int:
    seen = set()
    for r in range(m.nrows):
        for c in range(m.ncols):
            if m[r, c]:
                seen.add((codomain.parity(r) + domain.parity(c)) % 2)
    if len(seen) > 1:
        raise MixedParity("matrix mixes even and odd blocks")
    return seen.pop() if seen else 0


def supercommutator(P: LinearMap, Q: LinearMap) -> LinearMap:
    """``[P, Q] = PQ - (-1)^{|P||Q|} QP``."""
    F = P.domain.field
    s = F.sign(P.parity * Q.parity)
    m = (P.matrix @ Q.matrix) - (Q.matrix @ P.matrix).scale(s)
    return LinearMap(P.domain, P.domain, m, (P.parity + Q.parity) % 2)


def ad(x: Element) -> LinearMap:
    p = x.parity
    if p is None:
        raise MixedParity("ad of a mixed element has no parity; split it first")
    L = x.algebra
    return LinearMap(L, L, L.ad_matrix(x.coords), p)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    """Violated index triples (0-based).  Skew entries are ``(i, j, k)`` components."""

    parity: list[tuple[int, int, int]] = dc_field(default_factory=list)
    skew: list[tuple[int, int, int]] = dc_field(default_factory=list)
    jacobi: list[tuple[int, int, int]] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.parity or self.skew or self.jacobi)

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "valid"
        return f"{len(self.parity)} parity, {len(self.skew)} skew, {len(self.jacobi)} Jacobi violations"

    def to_dict(self, names: Sequence[str] | None = None) -> dict:
        def fmt(t):
            return [names[i] for i in t] if names else list(t)
        return {
            "parity": [fmt(t) for t in self.parity],
            "skew": [fmt(t) for t in self.skew],
            "jacobi": [fmt(t) for t in self.jacobi],
        }


def validate_structure(L: LieSuperalgebra) -> ValidationReport:
    F = L.field
    n = L.dim
    par = L.parity
    rep = ValidationReport()
    C = L.constants
    for i in range(n):
        for j in range(n):
            s = F.neg(F.sign(par(i) * par(j)))
            for k in range(n):
                c = C[i][j][k]
                if c and par(k) != (par(i) + par(j)) % 2:
                    rep.parity.append((i, j, k))
                if c != F.mul(s, C[j][i][k]):
                    rep.skew.append((i, j, k))
    units = [L.unit(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            eij = C[i][j]
            s = F.sign(par(i) * par(j))
            for k in range(n):
                lhs = L.bracket_vectors(units[i], C[j][k])
                first = L.bracket_vectors(eij, units[k])
                second = L.bracket_vectors(units[j], C[i][k])
                rhs = tuple(F.add(a, F.mul(s, b)) for a, b in zip(first, second))
                if lhs != rhs:
                    rep.jacobi.append((i, j, k))
    return rep


# ---------------------------------------------------------------------------
# structural subspaces
# ---------------------------------------------------------------------------

def derived_subalgebra(L: LieSuperalgebra) -> Subspace:
    return Subspace.span(L.field, L.dim, [L.product(i, j) for i in range(L.dim) for j in range(L.dim)])


def is_perfect(L: LieSuperalgebra) -> bool:
    return derived_subalgebra(L).dim == L.dim


def centralizer(L: LieSuperalgebra, S: Subspace) -> Subspace:
    """``{x : [x, s] = 0 for all s in S}``."""
    if S.ambient_dim != L.dim or S.field != L.field:
        raise AmbientMismatch("subspace does not live in this algebra")
    n = L.dim
    rows = []
    for s in S.vectors():
        cols = [L.bracket_vectors(L.unit(i), s) for i in range(n)]
        for k in range(n):
            rows.append({i: cols[i][k] for i in range(n) if cols[i][k]})
    return Subspace.span(L.field, n, nullspace_sparse(L.field, n, rows))


def center(L: LieSuperalgebra) -> Subspace:
    return centralizer(L, Subspace.full(L.field, L.dim))


def bracket_of_subspaces(L: LieSuperalgebra, U: Subspace, V: Subspace) -> Subspace:
    return Subspace.span(L.field, L.dim, [L.bracket_vectors(u, v) for u in U.vectors() for v in V.vectors()])


def enveloping_closure(L: LieSuperalgebra, S: Subspace) -> Subspace:
    """Smallest bracket-closed subspace containing ``S``."""
    W = S
    while True:
        nxt = W + bracket_of_subspaces(L, W, W)
        if nxt == W:
            return W
        W = nxt


def is_subalgebra(L: LieSuperalgebra, U: Subspace) -> bool:
    return bracket_of_subspaces(L, U, U).issubset(U)


def is_ideal(L: LieSuperalgebra, U: Subspace) -> bool:
    return bracket_of_subspaces(L, Subspace.full(L.field, L.dim), U).issubset(U)


def is_graded(L: LieSuperalgebra, U: Subspace) -> bool:
    # the RREF basis of a graded subspace is parity-pure because of the even-then-odd ordering
    return all(L.vector_parity(v) is not None for v in U.vectors())


def induced_subalgebra(L: LieSuperalgebra, U: Subspace, name: str | None = None) -> LieSuperalgebra:
    """Structure constants of the bracket-closed graded subspace ``U`` in its canonical basis."""
    if not is_graded(L, U):
        raise NotGraded("subspace has no parity-pure basis")
    vecs = U.vectors()
    even = [v for v in vecs if L.vector_parity(v) == 0]
    odd = [v for v in vecs if L.vector_parity(v) == 1]
    ordered = even + odd
    table = []
    for u in ordered:
        row = []
        for v in ordered:
            w = L.bracket_vectors(u, v)
            if not U.contains(w):
                raise NotClosed("subspace is not closed under the bracket")
            row.append(U.coordinates(w))
        table.append(row)
    names = _sub_names(L, ordered)
    return LieSuperalgebra(name or f"{L.name}|sub", L.field, names[:len(even)], names[len(even):], table)


def _sub_names(L: LieSuperalgebra, vecs: Sequence[tuple]) -> list[str]:
    names = []
    used = set()
    for t, v in enumerate(vecs):
        support = [i for i, x in enumerate(v) if x]
        nm = L.names[support[0]] if len(support) == 1 and v[support[0]] == L.field.one else f"u{t}"
        while nm in used:
            nm += "'"
        used.add(nm)
        names.append(nm)
    return names


def subspace_inclusion(M: LieSuperalgebra, L: LieSuperalgebra, U: Subspace) -> LinearMap:
    """Inclusion of ``M = induced_subalgebra(L, U)`` into ``L``."""
    return LinearMap.from_images(M, L, U.vectors(), parity=0)


def direct_sum(L1: LieSuperalgebra, L2: LieSuperalgebra, name: str | None = None
               ) -> tuple[LieSuperalgebra, LinearMap, LinearMap]:
    """Block-diagonal sum with its two component embeddings."""
    if L1.field != L2.field:
        raise FieldMismatch(f"{L1.field} vs {L2.field}")
    F = L1.field
    names1, names2 = list(L1.names), list(L2.names)
    if set(names1) & set(names2):
        names1 = [f"{nm}_1" for nm in names1]
        names2 = [f"{nm}_2" for nm in names2]
    # new index of each old basis vector
    pos1 = list(range(L1.n0)) + [L1.n0 + L2.n0 + t for t in range(L1.n1)]
    pos2 = [L1.n0 + t for t in range(L2.n0)] + [L1.n0 + L2.n0 + L1.n1 + t for t in range(L2.n1)]
    n = L1.dim + L2.dim
    table = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
    for src, pos in ((L1, pos1), (L2, pos2)):
        for i in range(src.dim):
            for j in range(src.dim):
                for k, c in enumerate(src.product(i, j)):
                    table[pos[i]][pos[j]][pos[k]] = c
    even = names1[:L1.n0] + names2[:L2.n0]
    odd = names1[L1.n0:] + names2[L2.n0:]
    L = LieSuperalgebra(name or f"{L1.name}+{L2.name}", F, even, odd, table)
    emb1 = LinearMap.from_images(L1, L, [L.unit(p) for p in pos1], parity=0)
    emb2 = LinearMap.from_images(L2, L, [L.unit(p) for p in pos2], parity=0)
    return L, emb1, emb2
