"""Orbit-rank experiments, the adjoint pairing identity, iterate-coefficient
bounds along Jordan chains, and a torus-density demonstration.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import InvalidInputError, PreconditionError
from ..polymap import compose_affine, poly_clean, poly_degree
from ..spectral import LinearFormBasis
from ..symbol import AffineSymbol, check_boundedness
from .basis import graded_basis, monomial_norm_sq_int
from .operator import _assemble_matrix

RANK_REL_TOL = 1e-8


def _coeff_vector(f_coeffs, basis) -> np.ndarray:
    vec = np.zeros(basis.size, dtype=complex)
    for alpha, c in f_coeffs.items():
        if alpha not in basis.index_of:
            raise InvalidInputError(
                f"coefficient index {alpha} outside degree-{basis.max_degree} basis"
            )
        vec[basis.index_of[alpha]] = c * basis.norms[basis.index_of[alpha]]
    return vec


def orbit_krylov_rank(
    sym: AffineSymbol,
    f_coeffs,
    degree: int,
    steps: int,
    projector=None,
) -> int:
    """Numerical rank of the (projected) orbit f, Cf, C^2 f, ..., C^{J-1} f.

    The orbit lives in the exact degree-<=degree truncation.  Every iterate
    is renormalized before projecting, and each projected column is again
    renormalized, because |eigenvalue|^(j*degree) under/overflows long before
    the span stabilizes; rank is scale-invariant.  projector may be an
    integer (keep the part homogeneous of that degree) or a predicate on
    multi-indices.
    """
    if steps < 1:
        raise InvalidInputError(f"steps must be positive, got {steps}")
    if poly_degree(f_coeffs) > degree:
        raise InvalidInputError(
            f"polynomial degree {poly_degree(f_coeffs)} exceeds truncation {degree}"
        )
    if not f_coeffs:
        raise InvalidInputError("empty orbit: zero initial function")
    basis = graded_basis(sym.dimension, degree)
    mat = _assemble_matrix(sym, basis)
    if projector is None:
        mask = np.ones(basis.size, dtype=bool)
    elif isinstance(projector, int):
        mask = np.array([sum(a) == projector for a in basis.indices])
    else:
        mask = np.array([bool(projector(a)) for a in basis.indices])
    cols = []
    x = _coeff_vector(f_coeffs, basis)
    for _ in range(steps):
        scale = np.linalg.norm(x)
        if scale > 0:
            x = x / scale
        proj = x * mask
        pscale = np.linalg.norm(proj)
        if pscale > 0:
            proj = proj / pscale
        cols.append(proj)
        x = mat @ x
    stack = np.array(cols).T
    s = np.linalg.svd(stack, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > RANK_REL_TOL * s[0]))


# ---------------------------------------------------------------------------
# adjoint pairing


def adjoint_pairing_check(sym: AffineSymbol, alpha, beta):
    """Exact finite computation of both sides of the adjoint identity.

    lhs = <C z^alpha, z^beta>; rhs = <z^alpha, k_b * (A^H z)^beta> where k_b
    is the reproducing kernel at the shift.  Both reduce to single monomial
    coefficients through orthogonality.
    """
    rep = check_boundedness(sym)
    if not rep.bounded:
        raise PreconditionError("adjoint pairing requires a bounded operator")
    alpha = tuple(int(a) for a in alpha)
    beta = tuple(int(b) for b in beta)
    d = sym.dimension
    if len(alpha) != d or len(beta) != d:
        raise InvalidInputError("multi-index dimension mismatch")
    image = compose_affine({alpha: 1.0}, sym.a, sym.b)
    lhs = image.get(beta, 0.0) * monomial_norm_sq_int(beta)
    adj_image = compose_affine({beta: 1.0}, sym.a.conj().T, np.zeros(d))
    # multiply by the kernel factor; only the z^alpha coefficient can pair
    acc = 0.0 + 0.0j
    for gamma, c in adj_image.items():
        extra = tuple(a - g for a, g in zip(alpha, gamma))
        if any(e < 0 for e in extra):
            continue
        kcoef = 1.0 + 0.0j
        for jv in range(d):
            kcoef *= (np.conj(sym.b[jv]) / 2.0) ** extra[jv] / math.factorial(extra[jv])
        acc += c * kcoef
    rhs = np.conj(acc) * monomial_norm_sq_int(alpha)
    return complex(lhs), complex(rhs)


# ---------------------------------------------------------------------------
# coefficient bounds along a Jordan chain


def chain_stability_threshold(abs_lambda: float) -> int:
    """Smallest J with |lam|^j + j|lam|^{j-1} <= 1 for every j >= J."""
    if not (0.0 < abs_lambda < 1.0):
        raise InvalidInputError(
            f"chain eigenvalue modulus must lie in (0, 1), got {abs_lambda}"
        )

    def h(j):
        return abs_lambda**j + j * abs_lambda ** (j - 1) if j > 0 else 1.0

    peak = max(1, int(math.ceil(-1.0 / math.log(abs_lambda))) + 1)
    j = peak
    while h(j) > 1.0:
        j += 1
    last_bad = 0
    for jj in range(1, j):
        if h(jj) > 1.0:
            last_bad = jj
    return last_bad + 1


def jordan_coefficient_bound_check(
    sym: AffineSymbol,
    basis: LinearFormBasis,
    n: int,
    d_subset,
    j: int,
) -> float:
    """Largest coefficient modulus of C^j applied to sum of L^alpha, alpha
    in the subset, expanded over L-monomials.

    The iterate acts on the degree-one forms by L_i -> lam_i^j L_i, plus
    j lam^{j-1} L_{i-1} on a chain continuation, so a single affine
    substitution in L-coordinates realizes C^j exactly.
    """
    rep = check_boundedness(sym)
    if not rep.compact:
        raise PreconditionError("coefficient bound check requires a compact operator")
    if j < 0:
        raise InvalidInputError(f"iterate must be nonnegative, got {j}")
    d = sym.dimension
    flags = basis.chain_flags
    # reject chains longer than 2: a flagged row must follow an unflagged one
    for pos in range(d):
        if flags[pos] and pos + 1 < d and flags[pos + 1]:
            raise PreconditionError("chains longer than two are not supported here")
    subset = [tuple(int(x) for x in a) for a in d_subset]
    if any(len(a) != d or sum(a) != n for a in subset):
        raise InvalidInputError(f"subset entries must be degree-{n} multi-indices")
    f = {a: 1.0 + 0.0j for a in subset}
    smat = np.zeros((d, d), dtype=complex)
    for i in range(d):
        lam = basis.eigenvalues[i]
        smat[i, i] = lam**j
        if flags[i]:
            smat[i, i - 1] = j * lam ** (j - 1) if j > 0 else 0.0
    out = poly_clean(compose_affine(f, smat, np.zeros(d)))
    if not out:
        return 0.0
    return max(abs(c) for c in out.values())


# ---------------------------------------------------------------------------
# torus density demonstration


def kronecker_density_demo(thetas, target, n_max: int):
    """Best simultaneous approximation of the target by (e^{in theta_j})_j.

    Scans n = 1..n_max and returns (best_n, best_error) for the sup-distance
    max_j |e^{in theta_j} - target_j|.
    """
    thetas = np.asarray(thetas, dtype=float)
    target = np.asarray(target, dtype=complex)
    if thetas.shape != target.shape:
        raise InvalidInputError("thetas and target must have equal length")
    if n_max < 1:
        raise InvalidInputError(f"n_max must be positive, got {n_max}")
    best_n, best_err = 0, np.inf
    chunk = 200_000
    for lo in range(1, n_max + 1, chunk):
        hi = min(n_max, lo + chunk - 1)
        ns = np.arange(lo, hi + 1)
        vals = np.exp(1j * np.outer(ns, thetas))
        errs = np.max(np.abs(vals - target[None, :]), axis=1)
        i = int(np.argmin(errs))
        if errs[i] < best_err:
            best_err = float(errs[i])
            best_n = int(ns[i])
    return best_n, best_err
