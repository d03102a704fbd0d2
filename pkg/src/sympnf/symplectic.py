"""The symplectic structure on K^{2n}: the fixed block form, adjoints,
self-adjointness and symplecticity predicates, sigma-complements, subspace
classification, the dual-basis construction from a lagrangian pair, and a
seeded generator of symplectic matrices for building test corpora.

Convention (fixed once, everything sign-sensitive points here): the form is
sigma(x, y) = x^T O y with O = [[0, I], [-I, 0]], so the standard basis
(e_1..e_n, e_{n+1}..e_{2n}) is a Darboux basis with sigma(e_i, e_{n+i}) = 1
and a basis matrix C = [u | w] is Darboux exactly when C^T O C = O, i.e.
when sigma(u_i, w_j) = delta_ij.
"""

from __future__ import annotations

import random

from .errors import (
    DimensionMismatchError,
    NotComplementaryError,
    NotInvariantError,
    NotLagrangianError,
)
from .linalg import Mat, Subspace, inverse, kernel

__all__ = [
    "SymplecticSpace",
    "form_eval",
    "adjoint",
    "is_self_adjoint",
    "is_symplectic_matrix",
    "symplectic_complement",
    "classify_subspace",
    "darboux_from_lagrangian_pair",
    "random_symplectic",
]


class SymplecticSpace:
    """Dimension 2n with the standard block form."""

    __slots__ = ("field", "n", "omega")

    def __init__(self, field, n: int):
        if n < 1:
            raise DimensionMismatchError("n must be positive")
        self.field = field
        self.n = n
        z, o = field.zero, field.one
        dim = 2 * n
        rows = [[z] * dim for _ in range(dim)]
        for i in range(n):
            rows[i][n + i] = o
            rows[n + i][i] = -o
        self.omega = Mat(field, rows)

    @property
    def dim(self):
        return 2 * self.n

    def __repr__(self):
        return f"SymplecticSpace(n={self.n}, field={self.field!r})"


def form_eval(space: SymplecticSpace, x, y):
    """sigma(x, y) = x^T O y, exact."""
    if len(x) != space.dim or len(y) != space.dim:
        raise DimensionMismatchError("vectors must have length 2n")
    n = space.n
    acc = space.field.zero
    for i in range(n):
        acc = acc + x[i] * y[n + i] - x[n + i] * y[i]
    return acc


def _check_square(space, a):
    if a.nrows != space.dim or a.ncols != space.dim:
        raise DimensionMismatchError("matrix must be 2n x 2n")


def adjoint(space: SymplecticSpace, a: Mat) -> Mat:
    """The unique g with sigma(g x, y) = sigma(x, a y); equals -O A^T O."""
    _check_square(space, a)
    return -(space.omega * a.transpose() * space.omega)


def is_self_adjoint(space: SymplecticSpace, a: Mat) -> bool:
    """Exact predicate A^T O = O A."""
    _check_square(space, a)
    return a.transpose() * space.omega == space.omega * a


def is_symplectic_matrix(space: SymplecticSpace, c: Mat) -> bool:
    """Exact predicate C^T O C = O."""
    _check_square(space, c)
    return c.transpose() * space.omega * c == space.omega


def symplectic_complement(space: SymplecticSpace, s: Subspace) -> Subspace:
    """All x with sigma(x, w) = 0 for w in s."""
    if s.ambient_dim != space.dim:
        raise DimensionMismatchError("subspace ambient dimension must be 2n")
    if s.is_zero():
        return Subspace.full(space.field, space.dim)
    # sigma(x, w) = x^T O w; rows of the constraint matrix are (O w)^T
    constraints = s.basis_matrix() * space.omega.transpose()
    return kernel(constraints)


def classify_subspace(space: SymplecticSpace, s: Subspace) -> str:
    """One of 'lagrangian', 'isotropic', 'symplectic', 'generic'."""
    comp = symplectic_complement(space, s)
    if s == comp:
        return "lagrangian"
    if comp.contains_subspace(s):
        return "isotropic"
    if s.intersection(comp).is_zero():
        return "symplectic"
    return "generic"


def darboux_from_lagrangian_pair(space: SymplecticSpace, a: Mat, u: Subspace, w: Subspace) -> Mat:
    """Darboux basis matrix C = [u | w] from complementary a-invariant
    lagrangians; the matrix of a in this basis is exactly diag(B, B^T).

    The u-columns are the canonical RREF basis of u; the w-columns are
    solved inside w so that sigma(u_i, w_j) = delta_ij, which is the
    normalization making C symplectic under this package's convention.
    """
    _check_square(space, a)
    field = space.field
    n = space.n
    for s, name in ((u, "u"), (w, "w")):
        if classify_subspace(space, s) != "lagrangian":
            raise NotLagrangianError(f"{name}-subspace is not lagrangian")
    if not u.intersection(w).is_zero() or u.dim + w.dim != space.dim:
        raise NotComplementaryError("subspaces are not complementary")
    for s in (u, w):
        for b in s.basis:
            if not s.contains(a.matvec(b)):
                raise NotInvariantError("subspace is not invariant under the operator")
    u_rows = u.basis
    w_rows = w.basis
    # pairing[i][j] = sigma(u_i, r_j) for the raw w-basis rows r_j; the
    # lagrangian pairing is nondegenerate, so this is invertible
    pairing = Mat(field, [[form_eval(space, ui, rj) for rj in w_rows] for ui in u_rows])
    coeffs = inverse(pairing).transpose()
    dual_rows = (coeffs * Mat(field, w_rows)).rows
    cols = list(u_rows) + [dual_rows[j] for j in range(n)]
    return Mat(field, zip(*cols))


def random_symplectic(space: SymplecticSpace, rng: random.Random, num_factors: int | None = None) -> Mat:
    """Product of a seeded random word in the standard symplectic generators:
    diag(S, S^-T), upper and lower unipotent blocks with symmetric off-block,
    and the form matrix itself.  Always passes is_symplectic_matrix."""
    field = space.field
    n = space.n
    if num_factors is None:
        num_factors = rng.randint(2, 5)
    c = Mat.identity(field, 2 * n)
    for _ in range(num_factors):
        c = c * _random_generator(space, rng)
    return c


def _random_symmetric(field, n, rng):
    vals = [[field.from_int(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
    return Mat(field, [[vals[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)])


def _random_generator(space: SymplecticSpace, rng: random.Random) -> Mat:
    field = space.field
    n = space.n
    kind = rng.randrange(4)
    z = Mat.zeros(field, n, n)
    ident = Mat.identity(field, n)
    if kind == 0:
        while True:
            s = Mat(field, [[field.from_int(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
            try:
                s_inv_t = inverse(s).transpose()
                break
            except Exception:
                continue
        return _blocks(field, s, z, z, s_inv_t)
    if kind == 1:
        m = _random_symmetric(field, n, rng)
        return _blocks(field, ident, m, z, ident)
    if kind == 2:
        m = _random_symmetric(field, n, rng)
        return _blocks(field, ident, z, m, ident)
    return space.omega


def _blocks(field, a, b, c, d):
    rows = []
    for ra, rb in zip(a.rows, b.rows):
        rows.append(ra + rb)
    for rc, rd in zip(c.rows, d.rows):
        rows.append(rc + rd)
    return Mat(field, rows)
