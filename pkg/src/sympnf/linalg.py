"""Exact dense linear algebra: row reduction, kernels, solving, the
Berkowitz characteristic polynomial, operator restriction, and the scalar
extension / restriction used by Galois descent.

Matrices are immutable row-major tuples over a single field context.
Subspaces are always stored with a reduced-row-echelon basis, so subspace
equality is tuple equality and every downstream basis choice is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatchError,
    IncompatibleFieldsError,
    InconsistentSystemError,
    MixedFieldsError,
    NotInvariantError,
    NotSquareError,
    SingularMatrixError,
)
from .fields import ExtensionField
from .poly import Poly

__all__ = [
    "Mat",
    "Subspace",
    "rref",
    "kernel",
    "solve",
    "inverse",
    "charpoly",
    "mat_poly_eval",
    "restrict_operator",
    "extend_scalars",
    "extend_vector",
    "restrict_scalars_kernel",
]


class Mat:
    """Immutable dense matrix over one field."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)

    # -- constructors

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, r, c):
        z = field.zero
        return cls(field, [[z] * c for _ in range(r)])

    @classmethod
    def from_ints(cls, field, rows):
        return cls(field, [[field.from_int(v) for v in r] for r in rows])

    @classmethod
    def block_diag(cls, field, blocks):
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[field.zero] * m for _ in range(n)]
        i = j = 0
        for b in blocks:
            for r in range(b.nrows):
                out[i + r][j : j + b.ncols] = b.rows[r]
            i += b.nrows
            j += b.ncols
        return cls(field, out)

    @classmethod
    def from_columns(cls, field, cols):
        return cls(field, zip(*cols))

    # -- structure

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def transpose(self):
        return Mat(self.field, zip(*self.rows)) if self.rows else self

    def submatrix(self, r0, r1, c0, c1):
        return Mat(self.field, [r[c0:c1] for r in self.rows[r0:r1]])

    def _check(self, other):
        if not isinstance(other, Mat):
            raise MixedFieldsError(f"cannot combine Mat with {type(other).__name__}")
        if other.field != self.field:
            raise MixedFieldsError("matrices over different fields")
        return other

    # -- arithmetic

    def __add__(self, other):
        o = self._check(other)
        return Mat(self.field, [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, o.rows)])

    def __sub__(self, other):
        o = self._check(other)
        return Mat(self.field, [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, o.rows)])

    def __neg__(self):
        return Mat(self.field, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Mat):
            o = self._check(other)
            if self.ncols != o.nrows:
                raise DimensionMismatchError("matrix product shape mismatch")
            cols = o.transpose().rows
            zero = self.field.zero
            return Mat(
                self.field,
                [[_dot(r, c, zero) for c in cols] for r in self.rows],
            )
        return Mat(self.field, [[a * other for a in r] for r in self.rows])

    __rmul__ = __mul__

    def matvec(self, v):
        if len(v) != self.ncols:
            raise DimensionMismatchError("matvec shape mismatch")
        zero = self.field.zero
        return tuple(_dot(r, v, zero) for r in self.rows)

    def __pow__(self, e: int):
        if self.nrows != self.ncols:
            raise NotSquareError("matrix power needs a square matrix")
        result = Mat.identity(self.field, self.nrows)
        a = self
        while e:
            if e & 1:
                result = result * a
            a = a * a
            e >>= 1
        return result

    def is_zero(self):
        return all(not a for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Mat(" + "; ".join(" ".join(repr(a) for a in r) for r in self.rows) + ")"


def _dot(a, b, zero):
    acc = zero
    for x, y in zip(a, b):
        if x and y:
            acc = acc + x * y
    return acc


# --- row reduction ---------------------------------------------------------


@dataclass(frozen=True)
class RrefResult:
    rref: Mat
    rank: int
    transform: Mat
    pivots: tuple[int, ...]


def rref(a: Mat) -> RrefResult:
    """Reduced row echelon form with the recording transform.

    Exact arithmetic: the pivot is simply the first nonzero entry in scan
    order, no magnitude strategy is needed.
    """
    field = a.field
    n, m = a.nrows, a.ncols
    rows = [list(r) for r in a.rows]
    tr = [list(r) for r in Mat.identity(field, n).rows]
    pivots = []
    rank = 0
    for col in range(m):
        piv = None
        for i in range(rank, n):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        tr[rank], tr[piv] = tr[piv], tr[rank]
        inv = field.one / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        tr[rank] = [x * inv for x in tr[rank]]
        for i in range(n):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[rank])]
                tr[i] = [x - c * y for x, y in zip(tr[i], tr[rank])]
        pivots.append(col)
        rank += 1
        if rank == n:
            break
    return RrefResult(Mat(field, rows), rank, Mat(field, tr), tuple(pivots))


def solve(a: Mat, b) -> tuple:
    """Canonical solution of a x = b with free variables pinned to zero."""
    field = a.field
    res = rref(a)
    y = res.transform.matvec(tuple(b))
    for i in range(res.rank, a.nrows):
        if y[i]:
            raise InconsistentSystemError("linear system has no solution")
    x = [field.zero] * a.ncols
    for i, col in enumerate(res.pivots):
        x[col] = y[i]
    return tuple(x)


def inverse(a: Mat) -> Mat:
    if a.nrows != a.ncols:
        raise NotSquareError("inverse needs a square matrix")
    res = rref(a)
    if res.rank != a.nrows:
        raise SingularMatrixError("matrix is singular")
    return res.transform


# --- subspaces -------------------------------------------------------------


class Subspace:
    """Subspace held by its canonical RREF row basis."""

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field, ambient_dim, basis_rows):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in basis_rows)

    @classmethod
    def from_vectors(cls, field, ambient_dim, vectors) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatchError("vector length differs from ambient dimension")
        if not vectors:
            return cls(field, ambient_dim, ())
        res = rref(Mat(field, vectors))
        return cls(field, ambient_dim, res.rref.rows[: res.rank])

    @classmethod
    def zero(cls, field, ambient_dim) -> "Subspace":
        return cls(field, ambient_dim, ())

    @classmethod
    def full(cls, field, ambient_dim) -> "Subspace":
        return cls(field, ambient_dim, Mat.identity(field, ambient_dim).rows)

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def basis_matrix(self) -> Mat:
        return Mat(self.field, self.basis)

    def contains(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError("vector length differs from ambient dimension")
        rem = list(v)
        pivots = [_leading_index(row) for row in self.basis]
        for row, piv in zip(self.basis, pivots):
            c = rem[piv]
            if c:
                for j in range(self.ambient_dim):
                    rem[j] = rem[j] - c * row[j]
        return not any(rem)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.basis)

    def annihilator_rows(self) -> Mat:
        """Matrix N with kernel exactly this subspace: x in S iff N x = 0."""
        if not self.basis:
            return Mat.identity(self.field, self.ambient_dim)
        return kernel(Mat(self.field, self.basis)).basis_matrix()

    def intersection(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError("subspaces of different ambient spaces")
        n1 = self.annihilator_rows()
        n2 = other.annihilator_rows()
        stacked = Mat(self.field, n1.rows + n2.rows)
        return kernel(stacked)

    def sum(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError("subspaces of different ambient spaces")
        return Subspace.from_vectors(self.field, self.ambient_dim, self.basis + other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _leading_index(row):
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def kernel(a: Mat) -> Subspace:
    """Canonical basis of the right null space of a."""
    field = a.field
    res = rref(a)
    m = a.ncols
    pivots = set(res.pivots)
    free_cols = [j for j in range(m) if j not in pivots]
    vectors = []
    for fc in free_cols:
        v = [field.zero] * m
        v[fc] = field.one
        for i, pc in enumerate(res.pivots):
            v[pc] = -res.rref.rows[i][fc]
        vectors.append(v)
    return Subspace.from_vectors(field, m, vectors)


# --- polynomial-operator plumbing ------------------------------------------


def charpoly(a: Mat) -> Poly:
    """det(tI - a), monic, via the division-free Berkowitz recursion.

    One code path serves every field and every characteristic.
    """
    if a.nrows != a.ncols:
        raise NotSquareError("characteristic polynomial needs a square matrix")
    field = a.field
    n = a.nrows
    if n == 0:
        return Poly.one(field)
    # coefficients highest degree first
    prev = [field.one, -a.rows[0][0]]
    for i in range(1, n):
        M = [r[:i] for r in a.rows[:i]]
        R = a.rows[i][:i]
        C = [a.rows[j][i] for j in range(i)]
        col = [field.one, -a.rows[i][i]]
        v = C
        for _ in range(i):
            col.append(-_dot(R, v, field.zero))
            v = [_dot(Mr, v, field.zero) for Mr in M]
        # first i+2 coefficients of conv(col, prev)
        new = []
        for s in range(i + 2):
            acc = field.zero
            lo = max(0, s - len(prev) + 1)
            for k2 in range(lo, min(s, len(col) - 1) + 1):
                acc = acc + col[k2] * prev[s - k2]
            new.append(acc)
        prev = new
    return Poly(field, list(reversed(prev)))


def mat_poly_eval(p: Poly, a: Mat) -> Mat:
    """Horner evaluation P(a)."""
    if a.nrows != a.ncols:
        raise NotSquareError("polynomial evaluation needs a square matrix")
    if p.field != a.field:
        raise MixedFieldsError("polynomial and matrix over different fields")
    n = a.nrows
    acc = Mat.zeros(a.field, n, n)
    ident = Mat.identity(a.field, n)
    for c in reversed(p.coeffs):
        acc = acc * a + ident * c
    return acc


def rank(a: Mat) -> int:
    return rref(a).rank


def restrict_operator(a: Mat, s: Subspace) -> Mat:
    """Matrix of a restricted to the invariant subspace s, in s's RREF basis."""
    if s.ambient_dim != a.ncols:
        raise DimensionMismatchError("subspace ambient dimension differs from matrix size")
    bt = s.basis_matrix().transpose()
    cols = []
    for b in s.basis:
        img = a.matvec(b)
        if not s.contains(img):
            raise NotInvariantError("subspace is not invariant under the operator")
        cols.append(solve(bt, img))
    return Mat(a.field, zip(*cols)) if cols else Mat.zeros(a.field, 0, 0)


# --- scalar extension and restriction --------------------------------------


def extend_scalars(a: Mat, ext: ExtensionField) -> Mat:
    """Entrywise canonical embedding of a base-field matrix."""
    if ext.base != a.field:
        raise IncompatibleFieldsError("extension does not contain the matrix field")
    return Mat(ext, [[ext.embed(x) for x in r] for r in a.rows])


def extend_vector(v, ext: ExtensionField):
    return tuple(ext.embed(x) for x in v)


def restrict_scalars_kernel(eqns: Mat) -> Subspace:
    """Base-field solution space of an extension-field homogeneous system.

    Each equation over F_{q^e} splits into e base-field equations by
    coefficient extraction; the unknowns are base-field valued.
    """
    ext = eqns.field
    if not isinstance(ext, ExtensionField):
        raise IncompatibleFieldsError("system must be stated over an extension field")
    base = ext.base
    rows = []
    for r in eqns.rows:
        for level in range(ext.degree):
            rows.append([x.coeffs[level] for x in r])
    if not rows:
        return Subspace.full(base, eqns.ncols)
    return kernel(Mat(base, rows))
