"""The normal-form pipeline: primary decomposition of a self-adjoint
operator, the cyclic-chain construction for the nilpotent case, the
splitting (Jordan) case, finite-field Galois descent, certification, and
seeded instance generation.

Sign bookkeeping: cyclic chains are built with sigma(w_i, u_j) = delta_ij;
when chains are assembled into a basis matrix C = [u-columns | w-columns]
the w-columns are negated, which is exactly the normalization making
C^T O C = O under the package convention (see symplectic.py).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    BadSpecError,
    EigenvaluesNotInFieldError,
    InternalDescentFailureError,
    InvalidCertificateError,
    NotFiniteFieldError,
    NotNilpotentError,
    NotSelfAdjointError,
    UnresolvedFactorError,
    UnsupportedFieldPathError,
)
from .fields import ExtensionField, frobenius
from .linalg import (
    Mat,
    Subspace,
    charpoly,
    extend_scalars,
    inverse,
    kernel,
    mat_poly_eval,
    solve,
)
from .poly import Factorization, Poly, factor, multi_bezout
from .symplectic import (
    SymplecticSpace,
    darboux_from_lagrangian_pair,
    form_eval,
    is_self_adjoint,
    is_symplectic_matrix,
    random_symplectic,
    symplectic_complement,
)

__all__ = [
    "PrimaryComponent",
    "CyclicPair",
    "NormalFormCertificate",
    "VerificationReport",
    "primary_decomposition",
    "self_adjoint_projections",
    "cyclic_pair",
    "nilpotent_normal_form",
    "split_normal_form",
    "descent_normal_form",
    "symplectic_normal_form",
    "verify_certificate",
    "polarize",
    "random_self_adjoint",
    "jordan_block",
    "companion_matrix",
    "build_block_matrix",
    "normalize_block_spec",
]


# --- data types ------------------------------------------------------------


@dataclass(frozen=True)
class PrimaryComponent:
    """Invariant symplectic subspace for one irreducible factor."""

    factor: Poly
    multiplicity: int
    basis: Subspace
    restricted: Mat


@dataclass(frozen=True)
class CyclicPair:
    """Chains u_1..u_d, w_1..w_d with u_i = g^{d-i}(u_d), w_i = g^{i-1}(w_1)
    and sigma(w_i, u_j) = delta_ij; both chains isotropic."""

    u_chain: tuple
    w_chain: tuple

    @property
    def d(self) -> int:
        return len(self.u_chain)


@dataclass(frozen=True)
class NormalFormCertificate:
    """Verifiable output: C symplectic, C^-1 A C = diag(B, B^T)."""

    space: SymplecticSpace
    matrix: Mat
    basis: Mat
    block: Mat
    case: str  # "jordan" | "descent"
    jordan_spec: tuple | None
    checks: dict | None = None


@dataclass(frozen=True)
class VerificationReport:
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


# --- primary decomposition --------------------------------------------------


def primary_decomposition(space: SymplecticSpace, a: Mat, seed: int = 0) -> list[PrimaryComponent]:
    """Split the space into invariant symplectic kernels of P_i(a)^{m_i},
    ordered by the canonical factor key."""
    from .linalg import restrict_operator

    if not is_self_adjoint(space, a):
        raise NotSelfAdjointError("primary decomposition needs a self-adjoint operator")
    fac = factor(charpoly(a), seed)
    if fac.unresolved:
        raise UnresolvedFactorError("characteristic polynomial has an unresolved irreducible factor")
    comps = []
    total = 0
    for p, m in fac.factors:
        sub = kernel(mat_poly_eval(p ** m, a))
        comps.append(PrimaryComponent(p, m, sub, restrict_operator(a, sub)))
        total += sub.dim
    if total != space.dim:
        raise InternalDescentFailureError("primary components do not fill the space")
    return comps


def self_adjoint_projections(space: SymplecticSpace, a: Mat, fac: Factorization) -> list[Mat]:
    """The projections p_i = Q_i(a) R_i(a) of the Bezout identity; each is a
    self-adjoint projection and they resolve the identity."""
    factors = fac.factors
    rs = []
    for i in range(len(factors)):
        r = Poly.one(a.field)
        for j, (p, m) in enumerate(factors):
            if j != i:
                r = r * p ** m
        rs.append(r)
    qs = multi_bezout(rs)
    return [mat_poly_eval(q * r, a) for q, r in zip(qs, rs)]


# --- cyclic chains ----------------------------------------------------------


def _height(g: Mat, v, bound: int) -> int:
    h = 0
    w = tuple(v)
    while any(w):
        w = g.matvec(w)
        h += 1
        if h > bound:
            raise NotNilpotentError("operator is not nilpotent on the subspace")
    return h


def _solve_in_subspace(space: SymplecticSpace, s: Subspace, targets, rhs):
    """Canonical w in s with sigma(w, targets[i]) = rhs[i]."""
    field = space.field
    g = Mat(field, [[form_eval(space, b, t) for b in s.basis] for t in targets])
    y = solve(g, rhs)
    acc = [field.zero] * space.dim
    for c, b in zip(y, s.basis):
        if c:
            for j in range(space.dim):
                acc[j] = acc[j] + c * b[j]
    return tuple(acc)


def cyclic_pair(space: SymplecticSpace, g: Mat, s: Subspace, use_recursion: bool = False) -> CyclicPair:
    """Maximal-height cyclic chain of g inside s and its sigma-dual chain.

    g must be self-adjoint and nilpotent on s, s symplectic.  The chain top
    is the first canonical basis vector of s attaining maximal height; the
    dual seed w_1 comes from a direct linear solve of sigma(w_1, u_i) =
    delta_{i1} inside s, or (behind the flag) from the pointwise correction
    recursion, both verified against the same postconditions.
    """
    field = space.field
    heights = [_height(g, b, s.dim) for b in s.basis]
    d = max(heights)
    top = s.basis[heights.index(d)]
    us = [None] * d
    us[d - 1] = tuple(top)
    for i in range(d - 1, 0, -1):
        us[i - 1] = g.matvec(us[i])
    one, zero = field.one, field.zero
    if use_recursion:
        v = _solve_in_subspace(space, s, [us[0]], (one,))
        for k in range(1, d):
            c = form_eval(space, v, us[k])
            if c:
                gk_v = v
                for _ in range(k):
                    gk_v = g.matvec(gk_v)
                v = tuple(x - c * y for x, y in zip(v, gk_v))
        w1 = v
    else:
        rhs = (one,) + (zero,) * (d - 1)
        w1 = _solve_in_subspace(space, s, us, rhs)
    ws = [w1]
    for _ in range(d - 1):
        ws.append(g.matvec(ws[-1]))
    pair = CyclicPair(tuple(us), tuple(ws))
    _check_pair(space, pair)
    return pair


def _check_pair(space: SymplecticSpace, pair: CyclicPair) -> None:
    d = pair.d
    one, zero = space.field.one, space.field.zero
    for i in range(d):
        for j in range(d):
            if form_eval(space, pair.w_chain[i], pair.u_chain[j]) != (one if i == j else zero):
                raise InternalDescentFailureError("chain pair is not sigma-dual")
            if form_eval(space, pair.u_chain[i], pair.u_chain[j]) != zero:
                raise InternalDescentFailureError("u-chain is not isotropic")
            if form_eval(space, pair.w_chain[i], pair.w_chain[j]) != zero:
                raise InternalDescentFailureError("w-chain is not isotropic")


def _nilpotent_chains(space: SymplecticSpace, g: Mat, s: Subspace, use_recursion: bool = False) -> list[CyclicPair]:
    """Exhaust s by cyclic pairs, recursing into the sigma-complement."""
    chains = []
    current = s
    while not current.is_zero():
        pair = cyclic_pair(space, g, current, use_recursion)
        chains.append(pair)
        v0 = Subspace.from_vectors(space.field, space.dim, pair.u_chain + pair.w_chain)
        current = current.intersection(symplectic_complement(space, v0))
    return chains


# --- block builders ---------------------------------------------------------


def jordan_block(field, lam, d: int) -> Mat:
    rows = [[field.zero] * d for _ in range(d)]
    for i in range(d):
        rows[i][i] = lam
        if i + 1 < d:
            rows[i][i + 1] = field.one
    return Mat(field, rows)


def companion_matrix(p: Poly) -> Mat:
    field = p.field
    d = p.degree
    rows = [[field.zero] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = field.one
    for i in range(d):
        rows[i][d - 1] = -p.coeffs[i]
    return Mat(field, rows)


def _assemble(space: SymplecticSpace, per_eigenvalue) -> tuple[Mat, Mat, tuple]:
    """Build (C, B, jordan_spec) from [(lam, chains)] in eigenvalue order."""
    field = space.field
    u_cols, w_cols, blocks, spec = [], [], [], []
    for lam, chains in per_eigenvalue:
        sizes = []
        for pair in chains:
            u_cols.extend(pair.u_chain)
            w_cols.extend(tuple(-x for x in w) for w in pair.w_chain)
            sizes.append(pair.d)
            blocks.append(jordan_block(field, lam, pair.d))
        spec.append((lam, tuple(sizes)))
    c = Mat(field, zip(*(u_cols + w_cols)))
    b = Mat.block_diag(field, blocks)
    return c, b, tuple(spec)


# --- the three constructive cases -------------------------------------------


def nilpotent_normal_form(space: SymplecticSpace, a: Mat, use_recursion: bool = False) -> tuple[Mat, Mat]:
    """Darboux basis C and Jordan block B for a nilpotent self-adjoint a."""
    if not is_self_adjoint(space, a):
        raise NotSelfAdjointError("operator is not self-adjoint")
    if not (a ** space.dim).is_zero():
        raise NotNilpotentError("operator is not nilpotent")
    chains = _nilpotent_chains(space, a, Subspace.full(space.field, space.dim), use_recursion)
    c, b, _ = _assemble(space, [(space.field.zero, chains)])
    return c, b


def split_normal_form(space: SymplecticSpace, a: Mat, roots=None, seed: int = 0) -> tuple[Mat, Mat, tuple]:
    """Jordan case: all eigenvalues in the base field.

    roots is an optional list of (eigenvalue, multiplicity-in-charpoly(a))
    pairs; when omitted it is computed by factoring.  Returns (C, B,
    jordan_spec) with eigenvalues in ascending canonical order and block
    sizes weakly decreasing within each eigenvalue.
    """
    field = space.field
    if not is_self_adjoint(space, a):
        raise NotSelfAdjointError("operator is not self-adjoint")
    if roots is None:
        fac = factor(charpoly(a), seed)
        if fac.unresolved or any(p.degree != 1 for p, _ in fac.factors):
            raise EigenvaluesNotInFieldError("eigenvalues do not all lie in the base field")
        roots = [(-p.coeffs[0], m) for p, m in fac.factors]
    else:
        prod = Poly.one(field)
        for lam, m in roots:
            prod = prod * (Poly.x(field) - Poly.constant(field, lam)) ** m
        if prod != charpoly(a):
            raise EigenvaluesNotInFieldError("root list does not match the characteristic polynomial")
    roots = sorted(roots, key=lambda rm: field.sort_key(rm[0]))
    ident = Mat.identity(field, space.dim)
    per_eig = []
    for lam, m in roots:
        g = a - ident * lam
        comp = kernel(g ** m)
        per_eig.append((lam, _nilpotent_chains(space, g, comp)))
    return _assemble(space, per_eig)


def _splitting_field(field, p: Poly) -> ExtensionField:
    # p is monic irreducible over a finite field; F_{q^d} = F_q[t]/(p)
    return ExtensionField(field, p.coeffs, check_irreducible=False)


def _descend_subspace(ext: ExtensionField, sub: Subspace) -> Subspace:
    """Base-field rational points of a Galois-stable extension subspace."""
    from .linalg import restrict_scalars_kernel

    eqns = sub.annihilator_rows()
    down = restrict_scalars_kernel(eqns)
    if down.dim != sub.dim:
        raise InternalDescentFailureError("descended subspace has the wrong dimension")
    return down


def _component_lagrangians(space: SymplecticSpace, a: Mat, comp: PrimaryComponent):
    """A-invariant lagrangian pair (U, W) inside one primary component."""
    field = space.field
    p, m = comp.factor, comp.multiplicity
    ident = Mat.identity(field, space.dim)
    if p.degree == 1:
        lam = -p.coeffs[0]
        chains = _nilpotent_chains(space, a - ident * lam, comp.basis)
        u_vecs = [v for pair in chains for v in pair.u_chain]
        w_vecs = [v for pair in chains for v in pair.w_chain]
        return (
            Subspace.from_vectors(field, space.dim, u_vecs),
            Subspace.from_vectors(field, space.dim, w_vecs),
        )
    if m % 2 != 0:
        raise InternalDescentFailureError("odd factor multiplicity in a symplectic component")
    ext = _splitting_field(field, p)
    q = field.order
    d = p.degree
    space_e = SymplecticSpace(ext, space.n)
    a_e = extend_scalars(a, ext)
    ident_e = Mat.identity(ext, space.dim)
    g1 = a_e - ident_e * ext.gen
    comp1 = kernel(g1 ** m)
    if comp1.dim != m:
        raise InternalDescentFailureError("extension eigencomponent has the wrong dimension")
    chains = _nilpotent_chains(space_e, g1, comp1)
    u_vecs = [v for pair in chains for v in pair.u_chain]
    w_vecs = [v for pair in chains for v in pair.w_chain]
    all_u, all_w = list(u_vecs), list(w_vecs)
    for j in range(1, d):
        all_u.extend(tuple(frobenius(x, j, q) for x in v) for v in u_vecs)
        all_w.extend(tuple(frobenius(x, j, q) for x in v) for v in w_vecs)
    u_ext = Subspace.from_vectors(ext, space.dim, all_u)
    w_ext = Subspace.from_vectors(ext, space.dim, all_w)
    half = m * d // 2
    if u_ext.dim != half or w_ext.dim != half:
        raise InternalDescentFailureError("transported lagrangian spans have the wrong dimension")
    return _descend_subspace(ext, u_ext), _descend_subspace(ext, w_ext)


def descent_normal_form(space: SymplecticSpace, a: Mat, seed: int = 0) -> tuple[Mat, Mat]:
    """Galois-descent case over a finite field; B carries no canonical-form
    claim beyond C^-1 A C = diag(B, B^T)."""
    field = space.field
    if field.kind == "rational":
        raise NotFiniteFieldError("descent requires a finite base field")
    comps = primary_decomposition(space, a, seed)
    u_total = Subspace.zero(field, space.dim)
    w_total = Subspace.zero(field, space.dim)
    for comp in comps:
        u_i, w_i = _component_lagrangians(space, a, comp)
        u_total = u_total.sum(u_i)
        w_total = w_total.sum(w_i)
    c = darboux_from_lagrangian_pair(space, a, u_total, w_total)
    m = inverse(c) * a * c
    n = space.n
    b = m.submatrix(0, n, 0, n)
    expected = Mat.block_diag(field, [b, b.transpose()])
    if m != expected:
        raise InternalDescentFailureError("descent basis did not block-diagonalize the operator")
    return c, b


# --- orchestration ----------------------------------------------------------


def symplectic_normal_form(space: SymplecticSpace, a: Mat, seed: int = 0) -> NormalFormCertificate:
    """Dispatch to the splitting or descent case and certify the result."""
    field = space.field
    if not is_self_adjoint(space, a):
        raise NotSelfAdjointError("operator is not self-adjoint")
    fac = factor(charpoly(a), seed)
    all_linear = not fac.unresolved and all(p.degree == 1 for p, _ in fac.factors)
    if all_linear:
        roots = [(-p.coeffs[0], m) for p, m in fac.factors]
        c, b, spec = split_normal_form(space, a, roots)
        cert = NormalFormCertificate(space, a, c, b, "jordan", spec)
    elif field.kind == "rational":
        raise UnsupportedFieldPathError(
            "rational input with a nonlinear irreducible factor is out of scope"
        )
    else:
        c, b = descent_normal_form(space, a, seed)
        cert = NormalFormCertificate(space, a, c, b, "descent", None)
    report = verify_certificate(cert)
    if not report.ok:
        raise InternalDescentFailureError(f"pipeline produced an invalid certificate: {report.checks}")
    return NormalFormCertificate(
        cert.space, cert.matrix, cert.basis, cert.block, cert.case, cert.jordan_spec, dict(report.checks)
    )


def _spec_orderly(field, spec) -> bool:
    keys = [field.sort_key(lam) for lam, _ in spec]
    if any(k2 <= k1 for k1, k2 in zip(keys, keys[1:])):
        return False
    return all(
        all(s2 <= s1 for s1, s2 in zip(sizes, sizes[1:])) and all(s > 0 for s in sizes)
        for _, sizes in spec
    )


def verify_certificate(cert: NormalFormCertificate) -> VerificationReport:
    """Independent checker; recomputes every predicate without trusting the
    pipeline.  Failures are report entries, never exceptions."""
    space = cert.space
    field = space.field
    a, c, b = cert.matrix, cert.basis, cert.block
    checks = {}
    try:
        checks["symplectic_basis"] = is_symplectic_matrix(space, c)
    except Exception:
        checks["symplectic_basis"] = False
    try:
        target = Mat.block_diag(field, [b, b.transpose()])
        checks["conjugation"] = inverse(c) * a * c == target
    except Exception:
        checks["conjugation"] = False
    if cert.case == "jordan":
        try:
            expected = Mat.block_diag(
                field,
                [jordan_block(field, lam, s) for lam, sizes in cert.jordan_spec for s in sizes],
            )
            checks["jordan_form"] = b == expected and _spec_orderly(field, cert.jordan_spec)
        except Exception:
            checks["jordan_form"] = False
    try:
        checks["charpoly_square"] = charpoly(a) == charpoly(b) ** 2
    except Exception:
        checks["charpoly_square"] = False
    return VerificationReport(checks)


def polarize(cert: NormalFormCertificate):
    """Lagrangian pair (U, W) spanned by the basis columns and the operator
    on U; reconstructing diag(l, l-dual) through C reproduces the input."""
    if not verify_certificate(cert).ok:
        raise InvalidCertificateError("certificate fails verification")
    space = cert.space
    n = space.n
    cols = [cert.basis.col(j) for j in range(2 * n)]
    u = Subspace.from_vectors(space.field, space.dim, cols[:n])
    w = Subspace.from_vectors(space.field, space.dim, cols[n:])
    return u, w, cert.block


# --- instance generation ----------------------------------------------------


def normalize_block_spec(field, spec) -> list:
    """Canonical order: entries sorted by kind key, sizes weakly decreasing."""
    out = []
    for entry in spec:
        kind = entry[0]
        if kind == "jordan":
            _, lam, sizes = entry
            out.append(("jordan", lam, tuple(sorted(sizes, reverse=True))))
        elif kind == "companion":
            _, p, sizes = entry
            out.append(("companion", p, tuple(sorted(sizes, reverse=True))))
        else:
            raise BadSpecError(f"unknown block kind {kind!r}")
    def key(e):
        if e[0] == "jordan":
            return (0, (1,), field.sort_key(e[1]))
        return (1, e[1].sort_key(), None)
    out.sort(key=key)
    return out


def build_block_matrix(field, spec) -> Mat:
    """B from a normalized spec: Jordan blocks and companion(P^s) blocks."""
    blocks = []
    for entry in spec:
        if entry[0] == "jordan":
            _, lam, sizes = entry
            blocks.extend(jordan_block(field, lam, s) for s in sizes)
        else:
            _, p, sizes = entry
            blocks.extend(companion_matrix(p ** s) for s in sizes)
    if not blocks:
        raise BadSpecError("empty block specification")
    return Mat.block_diag(field, blocks)


def random_self_adjoint(space: SymplecticSpace, rng: random.Random, spec) -> Mat:
    """Seeded self-adjoint instance: diag(B, B^T) scrambled by a random
    symplectic conjugation; the spec dimensions must sum to n."""
    field = space.field
    spec = normalize_block_spec(field, spec)
    b = build_block_matrix(field, spec)
    if b.nrows != space.n:
        raise BadSpecError(f"block spec has total dimension {b.nrows}, expected n={space.n}")
    a0 = Mat.block_diag(field, [b, b.transpose()])
    c = random_symplectic(space, rng)
    return c * a0 * inverse(c)
