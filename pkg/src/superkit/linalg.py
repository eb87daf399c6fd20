"""Exact linear algebra over the rationals and prime fields.

Values are stored "raw" inside matrices: :class:`fractions.Fraction` over Q
and plain ``int`` residues in ``range(p)`` over F_p.  All arithmetic goes
through the owning :class:`Field`, so a matrix never mixes representations.
:class:`Scalar` is the user-facing tagged wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from numbers import Integral, Rational
from typing import Iterable, Sequence

from .errors import AmbientMismatch, DivisionByZero, FieldMismatch, ShapeError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Base field: ``Field("Q")`` or ``Field("Fp", p)``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == "Fp":
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"F_p needs a prime modulus, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> Field:
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls("Fp", p)

    @classmethod
    def parse_spec(cls, text: str) -> Field:
        """Parse ``"Q"``, ``"F5"``, ``"Fp:5"`` or ``"GF5"``."""
        t = text.strip()
        if t.upper() in ("Q", "QQ"):
            return cls.rationals()
        for prefix in ("Fp:", "FP:", "GF", "F"):
            if t.upper().startswith(prefix.upper()):
                digits = t[len(prefix):]
                if digits.isdigit():
                    return cls.prime(int(digits))
        raise ValueError(f"cannot parse field {text!r}; expected Q or F<p>")

    @property
    def is_rational(self) -> bool:
        return self.kind == "Q"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    def has_half(self) -> bool:
        return self.kind == "Q" or self.p != 2

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"F{self.p}"

    def to_dict(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_dict(cls, data) -> Field:
        if not isinstance(data, dict) or "kind" not in data:
            raise ValueError(f"malformed field spec {data!r}")
        if data["kind"] == "Q":
            return cls.rationals()
        if data["kind"] == "Fp":
            return cls.prime(data.get("p"))
        raise ValueError(f"unknown field kind {data['kind']!r}")

    # raw arithmetic

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def __call__(self, value):
        """Coerce an int, Fraction, Scalar or literal string into a raw value."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"scalar over {value.field} used in {self}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool) or not isinstance(value, Rational):
            raise TypeError(f"cannot coerce {value!r} into {self}")
        if self.kind == "Q":
            return Fraction(value)
        if isinstance(value, Integral):
            return int(value) % self.p
        num, den = value.numerator % self.p, value.denominator % self.p
        if den == 0:
            raise DivisionByZero(f"{value} has no image in {self}: denominator divisible by {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "Q" else a * b % self.p

    def neg(self, a):
        return -a if self.kind == "Q" else -a % self.p

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"division by zero in {self}")
        return 1 / a if self.kind == "Q" else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sign(self, exponent: int):
        """(-1)**exponent as a raw field value."""
        return self.one if exponent % 2 == 0 else self.neg(self.one)

    def parse(self, text: str):
        try:
            q = Fraction(text.strip())
        except (ValueError, ZeroDivisionError, AttributeError) as exc:
            raise ValueError(f"not a scalar literal: {text!r}") from exc
        return self(q)

    def format(self, raw) -> str:
        return str(raw)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field."""

    field: Field
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.format(self.value)

    @classmethod
    def parse(cls, field: Field, text: str) -> Scalar:
        return cls(field, field.parse(text))


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    ops = {"add": Scalar.__add__, "sub": Scalar.__sub__, "mul": Scalar.__mul__, "div": Scalar.__truediv__}
    if not isinstance(b, Scalar) or a.field != b.field:
        raise FieldMismatch("operands must be scalars over one field")
    return ops[op](a, b)


# ---------------------------------------------------------------------------
# sparse incremental elimination
# ---------------------------------------------------------------------------

class Echelon:
    """Incremental row reducer over sparse rows (``{column: value}``).

    Rows are fed one at a time; each is reduced against the current pivots
    and kept only if independent.  This keeps the very tall, very sparse
    constraint systems of the derivation solvers cheap.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self._pivots: dict[int, dict[int, object]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, row: dict) -> dict:
        F = self.field
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            prow = self._pivots.get(c)
            if prow is None:
                return row
            factor = row[c]
            for k, v in prow.items():
                nv = F.sub(row.get(k, F.zero), F.mul(factor, v))
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True when it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        F = self.field
        c = min(row)
        inv = F.inv(row[c])
        self._pivots[c] = {k: F.mul(v, inv) for k, v in row.items()}
        return True

    def reduced_rows(self) -> list[tuple[int, dict]]:
        """Fully reduced rows as ``(pivot, row)`` sorted by pivot column."""
        F = self.field
        cols = sorted(self._pivots)
        done: dict[int, dict] = {}
        for c in reversed(cols):
            row = dict(self._pivots[c])
            for k in [k for k in row if k != c and k in done]:
                factor = row[k]
                for kk, v in done[k].items():
                    nv = F.sub(row.get(kk, F.zero), F.mul(factor, v))
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
            done[c] = row
        return [(c, done[c]) for c in cols]


def nullspace_sparse(field: Field, ncols: int, rows: Iterable[dict]) -> list[tuple]:
    """Basis of ``{v : row . v = 0 for every row}`` as dense tuples (not canonical)."""
    ech = Echelon(field, ncols)
    for r in rows:
        if ech.rank == ncols:
            break
        ech.add(r)
    reduced = ech.reduced_rows()
    pivots = {c for c, _ in reduced}
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for c, row in reduced:
            if free in row:
                v[c] = field.neg(row[free])
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Immutable dense matrix of raw field values."""

    __slots__ = ("field", "nrows", "ncols", "_rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ShapeError("ragged matrix rows")
        self._init(field, data, ncols)

    def _init(self, field, data, ncols):
        self.field = field
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, rows, ncols: int) -> Matrix:
        m = cls.__new__(cls)
        m._init(field, tuple(tuple(r) for r in rows), ncols)
        return m

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        rows = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
        return cls._raw(field, rows, n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int) -> Matrix:
        rows = [[field(col[i]) for col in columns] for i in range(nrows)]
        return cls._raw(field, rows, len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.ncols == other.ncols and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.ncols, self._rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"Matrix[{self.field}]({self.nrows}x{self.ncols}: {body})"

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(x) for x in r] for r in self._rows]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    @property
    def T(self) -> Matrix:
        return Matrix._raw(self.field, [self.column(j) for j in range(self.ncols)], self.nrows)

    def _check(self, other: Matrix):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        F = self.field
        return Matrix._raw(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        F = self.field
        return Matrix._raw(F, [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols)

    def __neg__(self) -> Matrix:
        F = self.field
        return Matrix._raw(F, [[F.neg(a) for a in r] for r in self._rows], self.ncols)

    def scale(self, c) -> Matrix:
        F = self.field
        c = F(c)
        return Matrix._raw(F, [[F.mul(c, a) for a in r] for r in self._rows], self.ncols)

    def __matmul__(self, other):
        F = self.field
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return Matrix._raw(F, [[_dot(F, r, c) for c in cols] for r in self._rows], other.ncols)
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ShapeError(f"vector of length {len(vec)} for {self.shape} matrix")
        return tuple(_dot(F, r, vec) for r in self._rows)

    def power(self, k: int) -> Matrix:
        result = Matrix.identity(self.field, self.nrows)
        for _ in range(k):
            result = result @ self
        return result

    def rref(self) -> tuple[Matrix, tuple[int, ...], int]:
        return rref(self)

    def rank(self) -> int:
        return rref(self)[2]

    def kernel(self) -> Subspace:
        return kernel(self)

    def image(self) -> Subspace:
        return image(self)

    def solve(self, b: Sequence):
        return solve(self, b)

    def inverse(self) -> Matrix:
        if self.nrows != self.ncols:
            raise ShapeError("only square matrices are invertible")
        n = self.nrows
        F = self.field
        aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(self._rows)]
        red, piv, rank = rref(Matrix._raw(F, aug, 2 * n))
        if piv[:n] != tuple(range(n)) or rank != n:
            raise DivisionByZero("matrix is singular")
        return Matrix._raw(F, [r[n:] for r in red.rows], n)


def _dot(F: Field, a, b):
    acc = F.zero
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def _sparse(row) -> dict:
    return {j: v for j, v in enumerate(row) if v}


def _densify(F: Field, row: dict, n: int) -> tuple:
    z = F.zero
    return tuple(row.get(j, z) for j in range(n))


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row-echelon form, pivot columns and rank (zero rows kept at the bottom)."""
    ech = Echelon(m.field, m.ncols)
    for r in m.rows:
        ech.add(_sparse(r))
    reduced = ech.reduced_rows()
    rows = [_densify(m.field, row, m.ncols) for _, row in reduced]
    rows += [(m.field.zero,) * m.ncols] * (m.nrows - len(rows))
    return Matrix._raw(m.field, rows, m.ncols), tuple(c for c, _ in reduced), len(reduced)


def kernel(m: Matrix) -> Subspace:
    basis = nullspace_sparse(m.field, m.ncols, (_sparse(r) for r in m.rows))
    return Subspace.span(m.field, m.ncols, basis)


def image(m: Matrix) -> Subspace:
    return Subspace.span(m.field, m.nrows, m.columns())


def solve(m: Matrix, b: Sequence):
    """A particular solution of ``m x = b`` (free variables zero), or ``None``."""
    F = m.field
    b = [F(x) for x in b]
    if len(b) != m.nrows:
        raise ShapeError(f"right-hand side of length {len(b)} for {m.shape} matrix")
    n = m.ncols
    ech = Echelon(F, n + 1)
    for r, rhs in zip(m.rows, b):
        row = _sparse(r)
        if rhs:
            row[n] = rhs
        ech.add(row)
    x = [F.zero] * n
    for c, row in ech.reduced_rows():
        if c == n:
            return None
        x[c] = row.get(n, F.zero)
    return tuple(x)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of ``field ** ambient_dim`` held by its canonical RREF basis."""

    field: Field
    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...] = dc_field(compare=False)

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
        ech = Echelon(field, ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            ech.add(_sparse([field(x) for x in v]))
        reduced = ech.reduced_rows()
        rows = [_densify(field, row, ambient_dim) for _, row in reduced]
        return cls(field, ambient_dim, Matrix._raw(field, rows, ambient_dim), tuple(c for c, _ in reduced))

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> Subspace:
        return cls.span(field, ambient_dim, [])

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> Subspace:
        return cls.span(field, ambient_dim, Matrix.identity(field, ambient_dim).rows)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> list[tuple]:
        return list(self.basis.rows)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _compatible(self, other: Subspace):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim}")

    def __add__(self, other: Subspace) -> Subspace:
        self._compatible(other)
        return Subspace.span(self.field, self.ambient_dim, self.vectors() + other.vectors())

    def intersect(self, other: Subspace) -> Subspace:
        self._compatible(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return Subspace.zero(F, self.ambient_dim)
        # a . U = b . V  <=>  (a, b) in ker [U^T | -V^T]
        cols = self.vectors() + [tuple(F.neg(x) for x in v) for v in other.vectors()]
        system = Matrix.from_columns(F, cols, self.ambient_dim)
        k = self.dim
        U = self.basis
        combos = []
        for coeffs in kernel(system).vectors():
            a = coeffs[:k]
            combos.append(tuple(_dot(F, a, U.column(j)) for j in range(self.ambient_dim)))
        return Subspace.span(F, self.ambient_dim, combos)

    def __and__(self, other: Subspace) -> Subspace:
        return self.intersect(other)

    def contains(self, vector: Sequence) -> bool:
        return not any(self._residual(vector))

    def __contains__(self, vector) -> bool:
        return self.contains(vector)

    def _residual(self, vector: Sequence) -> list:
        F = self.field
        if len(vector) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(vector)} in ambient dimension {self.ambient_dim}")
        v = [F(x) for x in vector]
        for c, row in zip(self.pivots, self.basis.rows):
            f = v[c]
            if f:
                v = [F.sub(a, F.mul(f, b)) for a, b in zip(v, row)]
        return v

    def coordinates(self, vector: Sequence) -> tuple:
        """Coefficients of ``vector`` in the canonical basis; ValueError if outside."""
        if not self.contains(vector):
            raise ValueError("vector does not lie in the subspace")
        F = self.field
        return tuple(F(vector[c]) for c in self.pivots)

    def combine(self, coords: Sequence) -> tuple:
        F = self.field
        return tuple(_dot(F, coords, self.basis.column(j)) for j in range(self.ambient_dim))

    def issubset(self, other: Subspace) -> bool:
        self._compatible(other)
        return all(other.contains(v) for v in self.vectors())

    def __le__(self, other: Subspace) -> bool:
        return self.issubset(other)


def subspace_ops(u: Subspace, v: Subspace, op: str, vector: Sequence | None = None):
    if op == "sum":
        return u + v
    if op == "intersect":
        return u.intersect(v)
    if op == "equals":
        u._compatible(v)
        return u == v
    if op == "contains_vector":
        return u.contains(vector)
    raise ValueError(f"unknown subspace operation {op!r}")
