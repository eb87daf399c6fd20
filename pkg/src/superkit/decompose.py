"""Centroid of an algebra and its splitting into indecomposable ideals.

For a centerless algebra, direct-sum decompositions into ideals correspond
to idempotents of the centroid.  We look for centroid elements whose minimal
polynomial has at least two coprime factors (linear factors found by root
search, plus a root-free remainder) and split along the kernels of those
factors.  Pieces are split again until each has a one-dimensional centroid.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator, Sequence

from .algebra import LieSuperalgebra, LinearMap, center, induced_subalgebra, is_ideal
from .derivations import GradedEndSpace, _acc, _solve_maps
from .errors import CenterNotZero
from .linalg import Field, Matrix, Subspace

# brute-force root search over F_p is only attempted below this modulus
ROOT_SEARCH_LIMIT = 1 << 16


def _centroid_rows(L: LieSuperalgebra, index: dict) -> Iterator[dict]:
    # phi[e_i,e_j] = [phi e_i, e_j] and phi[e_i,e_j] = [e_i, phi e_j]
    F, n, C = L.field, L.dim, L.constants
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left: dict = {}
                right: dict = {}
                for m, c in enumerate(C[i][j]):
                    _acc(F, left, index, (k, m), c)
                    _acc(F, right, index, (k, m), c)
                for r in range(n):
                    _acc(F, left, index, (r, i), F.neg(C[r][j][k]))
                    _acc(F, right, index, (r, j), F.neg(C[i][r][k]))
                if left:
                    yield left
                if right:
                    yield right


def centroid(L: LieSuperalgebra) -> GradedEndSpace:
    """Even maps commuting with every left and right multiplication."""
    even = _solve_maps(L, 0, lambda idx: _centroid_rows(L, idx))
    return GradedEndSpace(L, even, Subspace.zero(L.field, L.dim ** 2))


# ---------------------------------------------------------------------------
# polynomials (coefficient lists, lowest degree first, raw field values)
# ---------------------------------------------------------------------------

def minimal_polynomial(A: Matrix) -> list:
    """Monic minimal polynomial of a square matrix via the Krylov sequence of powers."""
    F = A.field
    n = A.nrows
    powers = [Matrix.identity(F, n)]
    while True:
        vecs = [tuple(x for r in P.rows for x in r) for P in powers]
        target = tuple(x for r in (powers[-1] @ A).rows for x in r)
        system = Matrix.from_columns(F, vecs, n * n)
        sol = system.solve(target)
        if sol is not None:
            # A^d = sum sol_t A^t
            return [F.neg(c) for c in sol] + [F.one]
        powers.append(powers[-1] @ A)


def _poly_eval_matrix(coeffs: Sequence, A: Matrix) -> Matrix:
    F = A.field
    n = A.nrows
    result = Matrix.zeros(F, n, n)
    for c in reversed(coeffs):
        result = (result @ A) + Matrix.identity(F, n).scale(c)
    return result


def _poly_divmod_linear(F: Field, coeffs: list, root) -> tuple[list, object]:
    """Synthetic division by ``x - root``: quotient and remainder."""
    out = []
    acc = F.zero
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, root), c)
        out.append(acc)
    rem = out.pop()
    return list(reversed(out)), rem


def _candidate_roots(F: Field, coeffs: list) -> Iterator:
    if F.kind == "Fp":
        if F.p > ROOT_SEARCH_LIMIT:
            return
        yield from range(F.p)
        return
    # rational root theorem on the integer-scaled polynomial
    den = 1
    for c in coeffs:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in coeffs]
    while ints and ints[0] == 0:
        yield Fraction(0)
        ints = ints[1:]
    if len(ints) <= 1:
        return
    a0, an = abs(ints[0]), abs(ints[-1])
    seen = set()
    for p in _divisors(a0):
        for q in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if r not in seen:
                    seen.add(r)
                    yield r


def _divisors(m: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def linear_factors(F: Field, coeffs: list) -> tuple[list[tuple[object, int]], list]:
    """Split a polynomial into ``[(root, multiplicity), ...]`` and a root-free cofactor."""
    roots = []
    rest = list(coeffs)
    for r in _candidate_roots(F, coeffs):
        r = F(r)
        if any(r == seen for seen, _ in roots):
            continue
        mult = 0
        while len(rest) > 1:
            q, rem = _poly_divmod_linear(F, rest, r)
            if rem:
                break
            rest = q
            mult += 1
        if mult:
            roots.append((r, mult))
    return roots, rest


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

@dataclass
class DecompositionResult:
    """Indecomposable ideals with their projections, or ``undecided``."""

    algebra: LieSuperalgebra
    ideals: list[Subspace] = dc_field(default_factory=list)
    projections: list[LinearMap] = dc_field(default_factory=list)
    undecided: bool = False
    note: str = ""

    @property
    def indecomposable(self) -> bool:
        return not self.undecided and len(self.ideals) == 1

    @property
    def dims(self) -> list[int]:
        return [U.dim for U in self.ideals]


def _split_once(L: LieSuperalgebra, theta: Matrix) -> list[Subspace] | None:
    F = L.field
    roots, rest = linear_factors(F, minimal_polynomial(theta))
    groups = [[[F.neg(r), F.one]] * m for r, m in roots]
    if len(rest) > 1:
        groups.append([rest])
    if len(groups) < 2:
        return None
    pieces = []
    for group in groups:
        P = Matrix.identity(F, L.dim)
        for poly in group:
            P = P @ _poly_eval_matrix(poly, theta)
        pieces.append(P.kernel())
    return pieces


MAX_TRIALS = 64


def _trial_elements(basis: list[Matrix]) -> Iterator[Matrix]:
    """Basis elements, pairwise sums, then small integer combinations (deterministic)."""
    def gen():
        yield from basis
        for a, b in itertools.combinations(basis, 2):
            yield a + b
        for weights in itertools.product(range(1, 4), repeat=len(basis)):
            if len(set(weights)) > 1:
                total = basis[0].scale(weights[0])
                for w, B in zip(weights[1:], basis[1:]):
                    total = total + B.scale(w)
                yield total
    return itertools.islice(gen(), MAX_TRIALS)


def _decompose(L: LieSuperalgebra) -> list[Subspace] | None:
    """Indecomposable ideals of ``L`` in L-coordinates, or None when stuck."""
    if L.dim == 0:
        return []
    cent = centroid(L)
    if cent.dim == 1:
        return [Subspace.full(L.field, L.dim)]
    basis = [m.matrix for m in cent.even_basis]
    for theta in _trial_elements(basis):
        pieces = _split_once(L, theta)
        if pieces is None:
            continue
        result = []
        for U in pieces:
            M = induced_subalgebra(L, U)
            sub = _decompose(M)
            if sub is None:
                return None
            vecs = U.vectors()
            for V in sub:
                lifted = [tuple(_combine(L.field, c, vecs)) for c in V.vectors()]
                result.append(Subspace.span(L.field, L.dim, lifted))
        return result
    return None


def _combine(F: Field, coords: Sequence, vectors: Sequence[Sequence]) -> list:
    out = [F.zero] * len(vectors[0])
    for c, v in zip(coords, vectors):
        if c:
            out = [F.add(a, F.mul(c, b)) for a, b in zip(out, v)]
    return out


def projections(L: LieSuperalgebra, ideals: Sequence[Subspace]) -> list[LinearMap]:
    """Projections onto each ideal along the sum of the others."""
    F = L.field
    cols = [v for U in ideals for v in U.vectors()]
    if not cols:
        return []
    B = Matrix.from_columns(F, cols, L.dim)
    Binv = B.inverse()
    maps = []
    offset = 0
    for U in ideals:
        keep = Matrix._raw(F, [[F.one if r == c and offset <= r < offset + U.dim else F.zero
                                for c in range(L.dim)] for r in range(L.dim)], L.dim)
        maps.append(LinearMap(L, L, B @ keep @ Binv, 0))
        offset += U.dim
    return maps


def decompose_indecomposable(L: LieSuperalgebra) -> DecompositionResult:
    if not center(L).is_zero():
        raise CenterNotZero(f"{L.name} has a nonzero center; ideal splitting via the centroid needs Z(L) = 0")
    ideals = _decompose(L)
    if ideals is None:
        return DecompositionResult(L, undecided=True,
                                   note="no centroid element with a splitting minimal polynomial was found")
    ideals.sort(key=lambda U: U.pivots)
    for U in ideals:
        if not is_ideal(L, U):
            raise AssertionError("centroid splitting produced a non-ideal")
    return DecompositionResult(L, ideals, projections(L, ideals))
