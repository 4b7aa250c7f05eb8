"""Cyclicity verdicts, cyclic-vector testing for the compact case, and the
convex-combination obstruction identity.

An operator in this family is cyclic exactly when the linear part is
invertible, its Jordan form is diagonal or has a single block of size
exactly two, and the eigenvalue list (repeated by geometric multiplicity)
admits no nonzero integer power combination equal to one.  The last
condition is number-theoretic: a definite positive answer requires exact
polar eigenvalue data, and purely numerical inputs can at best be
"undecided up to a search height".
"""

from __future__ import annotations

import dataclasses
import enum

import numpy as np
import scipy.optimize

from .errors import InvalidInputError, PreconditionError
from .fockmat import expand_in_L_basis, multi_indices
from .polymap import compose_affine, poly_degree, poly_eval, validate_coeffs
from .relations import (
    ExactPolarSpec,
    RelationStatus,
    exact_relation_decide,
    numeric_relation_search,
)
from .spectral import (
    LinearFormBasis,
    SpectralData,
    eigen_decompose,
    geometric_eigenvalue_list,
    linear_form_basis,
)
from .symbol import AffineSymbol, check_boundedness, fixed_point

DEFAULT_SEARCH_HEIGHT = 12
EXACT_MATCH_TOL = 1e-8


class CyclicityStatus(enum.Enum):
    CYCLIC = "cyclic"
    NOT_CYCLIC = "not_cyclic"
    UNDECIDED = "undecided"


@dataclasses.dataclass(frozen=True)
class Reason:
    code: str  # NOT_INVERTIBLE | BAD_JORDAN | RELATION_FOUND | NO_RELATION | SEARCH_EXHAUSTED
    text: str
    alpha: tuple | None = None


@dataclasses.dataclass(frozen=True)
class CyclicityVerdict:
    status: CyclicityStatus
    reasons: tuple
    search_height: int | None = None

    def __post_init__(self):
        if self.status is CyclicityStatus.NOT_CYCLIC:
            blocking = [r for r in self.reasons if r.code in (
                "NOT_INVERTIBLE", "BAD_JORDAN", "RELATION_FOUND")]
            if len(blocking) != 1:
                raise InvalidInputError(
                    "a negative verdict carries exactly one blocking reason"
                )


def _jordan_acceptable(spec: SpectralData) -> bool:
    """Diagonalizable, or exactly one Jordan block of size exactly two."""
    big = []
    for info in spec.eigenvalues:
        for s in info.block_sizes:
            if s >= 2:
                big.append(s)
    return big == [] or big == [2]


def _exact_pairs_equal(x, y) -> bool:
    if x.modulus is not None or y.modulus is not None:
        if x.modulus != y.modulus:
            return False
    if (x.modulus_log_tag or y.modulus_log_tag) and x.modulus_log_tag != y.modulus_log_tag:
        return False
    if x.arg_pi_multiple is not None and y.arg_pi_multiple is not None:
        if (x.arg_pi_multiple - y.arg_pi_multiple) % 2 != 0:
            return False
    elif x.arg_tag != y.arg_tag:
        return False
    return True


def _validate_exact_match(sym: AffineSymbol, spec: SpectralData):
    """Cross-check the supplied exact polar data against the numeric spectrum.

    Entries with a fully rational value are matched by value, entries with a
    rational modulus by modulus only; tagged-everything entries constrain
    nothing numerically.  A minimum-cost assignment above tolerance means
    the exact data describes a different matrix.
    """
    exact = sym.exact.eigenvalues
    numeric = []
    for info in spec.eigenvalues:
        numeric.extend([info.value] * info.algebraic_mult)
    if len(exact) != len(numeric):
        raise InvalidInputError(
            f"exact data lists {len(exact)} eigenvalues, matrix has {len(numeric)}"
        )
    n = len(exact)
    cost = np.zeros((n, n))
    for i, e in enumerate(exact):
        v = e.approximate_value()
        for j, w in enumerate(numeric):
            if v is not None:
                cost[i, j] = abs(v - w)
            elif e.modulus is not None:
                cost[i, j] = abs(float(e.modulus) - abs(w))
            else:
                cost[i, j] = 0.0
    rows, cols = scipy.optimize.linear_sum_assignment(cost)
    worst = float(cost[rows, cols].max()) if n else 0.0
    if worst > EXACT_MATCH_TOL:
        raise InvalidInputError(
            f"exact eigenvalue data mismatches the matrix spectrum "
            f"(assignment residual {worst:.3e})"
        )


def _exact_duplicate_pair(exact) -> tuple | None:
    for i in range(len(exact)):
        for j in range(i + 1, len(exact)):
            if _exact_pairs_equal(exact[i], exact[j]):
                return (i, j)
    return None


def classify_cyclicity(
    sym: AffineSymbol,
    search_height: int = DEFAULT_SEARCH_HEIGHT,
    cluster_radius: float = 1e-7,
) -> CyclicityVerdict:
    """Full cyclicity decision for the composition operator of the symbol."""
    rep = check_boundedness(sym)
    if not rep.bounded:
        raise PreconditionError("cyclicity is only defined for bounded operators here")
    s = np.linalg.svd(sym.a, compute_uv=False)
    if float(s[-1]) <= sym.tol:
        return CyclicityVerdict(
            CyclicityStatus.NOT_CYCLIC,
            (Reason(
                "NOT_INVERTIBLE",
                f"linear part is singular (smallest singular value {float(s[-1]):.3e})",
            ),),
        )
    spec = eigen_decompose(sym.a, cluster_radius=cluster_radius)
    if not _jordan_acceptable(spec):
        profile = [
            (np.round(info.value, 6), info.block_sizes) for info in spec.eigenvalues
        ]
        return CyclicityVerdict(
            CyclicityStatus.NOT_CYCLIC,
            (Reason(
                "BAD_JORDAN",
                f"Jordan profile {profile} has a block of size >= 3 "
                "or more than one block of size 2",
            ),),
        )

    if sym.exact is not None:
        return _classify_exact(sym, spec)
    return _classify_numeric(sym, spec, search_height)


def _classify_exact(sym: AffineSymbol, spec: SpectralData) -> CyclicityVerdict:
    _validate_exact_match(sym, spec)
    exact = list(sym.exact.eigenvalues)
    has_size2 = any(
        szs and max(szs) == 2
        for szs in (info.block_sizes for info in spec.eigenvalues)
    )
    if has_size2:
        pair = _exact_duplicate_pair(exact)
        if pair is None:
            raise InvalidInputError(
                "matrix has a size-2 Jordan block but the exact eigenvalue "
                "list contains no repeated value"
            )
        del exact[pair[1]]  # collapse the algebraic pair to one entry
    dup = _exact_duplicate_pair(exact)
    if dup is not None:
        alpha = [0] * len(exact)
        alpha[dup[0]], alpha[dup[1]] = 1, -1
        return CyclicityVerdict(
            CyclicityStatus.NOT_CYCLIC,
            (Reason(
                "RELATION_FOUND",
                "two equal eigenvalues give the power relation "
                "lambda_i / lambda_j = 1",
                tuple(alpha),
            ),),
        )
    result = exact_relation_decide(ExactPolarSpec(tuple(exact)))
    if result.status is RelationStatus.FOUND:
        return CyclicityVerdict(
            CyclicityStatus.NOT_CYCLIC,
            (Reason(
                "RELATION_FOUND",
                f"power relation lambda^alpha = 1 with alpha = {result.alpha} "
                f"({result.certificate})",
                result.alpha,
            ),),
        )
    return CyclicityVerdict(
        CyclicityStatus.CYCLIC,
        (Reason(
            "NO_RELATION",
            f"exact decision: {result.certificate}; linear part invertible "
            "with admissible Jordan structure",
        ),),
    )


def _classify_numeric(
    sym: AffineSymbol, spec: SpectralData, search_height: int
) -> CyclicityVerdict:
    lam = geometric_eigenvalue_list(spec)
    # duplicates at cluster resolution
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            if abs(lam[i] - lam[j]) <= 2 * spec.cluster_radius:
                alpha = [0] * len(lam)
                alpha[i], alpha[j] = 1, -1
                return CyclicityVerdict(
                    CyclicityStatus.NOT_CYCLIC,
                    (Reason(
                        "RELATION_FOUND",
                        "two numerically equal eigenvalues give the power "
                        "relation lambda_i / lambda_j = 1",
                        tuple(alpha),
                    ),),
                )
    result = numeric_relation_search(lam, search_height)
    if result.status is RelationStatus.FOUND:
        return CyclicityVerdict(
            CyclicityStatus.NOT_CYCLIC,
            (Reason(
                "RELATION_FOUND",
                f"power relation lambda^alpha = 1 with alpha = {result.alpha} "
                f"({result.certificate})",
                result.alpha,
            ),),
            search_height=result.height,
        )
    return CyclicityVerdict(
        CyclicityStatus.UNDECIDED,
        (Reason(
            "SEARCH_EXHAUSTED",
            f"no power relation up to height {search_height}; a definite "
            "cyclic verdict needs exact eigenvalue data",
        ),),
        search_height=search_height,
    )


# ---------------------------------------------------------------------------
# cyclic vectors for compact operators


@dataclasses.dataclass(frozen=True)
class CyclicVectorReport:
    verdict: bool
    failing_indices: tuple
    basis_order_note: str
    degree_checked: int

    def __post_init__(self):
        if not self.verdict and not self.failing_indices:
            raise InvalidInputError("a negative report must carry failing indices")


def _reorder_chain_last(basis: LinearFormBasis) -> tuple:
    """Permute rows so a Jordan chain pair lands in the last two positions.

    Returns (reordered basis, permutation, note).  Identity when the basis
    has no chain row.
    """
    d = basis.rows.shape[0]
    flagged = [i for i, fl in enumerate(basis.chain_flags) if fl]
    if not flagged:
        return basis, tuple(range(d)), "diagonalizable: natural eigenvalue order"
    p = flagged[0]
    others = [i for i in range(d) if i not in (p - 1, p)]
    perm = tuple(others + [p - 1, p])
    newbasis = LinearFormBasis(
        basis.rows[list(perm)],
        tuple(basis.chain_flags[i] for i in perm),
        basis.xi,
        tuple(basis.eigenvalues[i] for i in perm),
    )
    note = (
        f"chain pair moved to the last two positions; row order {perm} "
        "of the natural eigenvalue order"
    )
    return newbasis, perm, note


def cyclic_vector_test(
    sym: AffineSymbol, f_coeffs, degree: int
) -> CyclicVectorReport:
    """Partial cyclic-vector check through the coefficient criterion.

    Expands f over monomials in the adapted degree-one forms and requires
    every coefficient up to the stated total degree to be nonzero -- except,
    when a Jordan chain is present, those whose index touches the chain's
    eigenvector slot (second-to-last position after reordering).  A finite
    degree can only ever refute or partially support cyclicity of f; the
    report records the degree actually checked.
    """
    rep = check_boundedness(sym)
    if not rep.compact:
        raise PreconditionError("cyclic vector testing covers compact operators only")
    verdict = classify_cyclicity(sym)
    if verdict.status is not CyclicityStatus.CYCLIC:
        raise PreconditionError(
            f"operator is not provably cyclic (status {verdict.status.value}); "
            "cyclic vectors exist only for cyclic operators"
        )
    if degree < 0:
        raise InvalidInputError(f"degree must be nonnegative, got {degree}")
    d = sym.dimension
    validate_coeffs(f_coeffs, d)
    if poly_degree(f_coeffs) > degree:
        raise InvalidInputError(
            f"function degree {poly_degree(f_coeffs)} exceeds stated degree {degree}"
        )
    basis = linear_form_basis(sym)
    basis, _, note = _reorder_chain_last(basis)
    has_chain = any(basis.chain_flags)
    g = expand_in_L_basis(f_coeffs, basis)
    tol = sym.tol
    level_max = {}
    global_max = 0.0
    for alpha in multi_indices(d, degree):
        level = sum(alpha)
        mag = abs(g.get(alpha, 0.0))
        level_max[level] = max(level_max.get(level, 0.0), mag)
        global_max = max(global_max, mag)
    failing = []
    for alpha in multi_indices(d, degree):
        if has_chain and alpha[d - 2] != 0:
            continue  # criterion exempts indices touching the chain eigenvector
        mag = abs(g.get(alpha, 0.0))
        # a level that is numerically zero relative to the whole expansion
        # cannot serve as its own reference scale
        scale = level_max[sum(alpha)]
        if scale <= tol * global_max:
            scale = global_max
        if mag <= tol * scale:
            failing.append(alpha)
    return CyclicVectorReport(
        verdict=not failing,
        failing_indices=tuple(failing),
        basis_order_note=note,
        degree_checked=degree,
    )


# ---------------------------------------------------------------------------
# convex-combination obstruction


def convex_obstruction_value(sym: AffineSymbol, f_coeffs, weights, powers) -> complex:
    """Value at the fixed point of a convex combination of orbit elements.

    Computes sum_k w_k (C^{p_k} f)(xi) through explicit iterated
    composition; the constant-term projection argument forces this to equal
    f(xi) for every valid convex combination.
    """
    weights = [float(w) for w in weights]
    powers = [int(p) for p in powers]
    if len(weights) != len(powers):
        raise InvalidInputError("weights and powers must have equal length")
    if any(w < 0 for w in weights):
        raise InvalidInputError("weights must be nonnegative")
    if abs(sum(weights) - 1.0) > 1e-9:
        raise InvalidInputError(f"weights sum to {sum(weights)!r}, not 1")
    if any(p < 0 for p in powers):
        raise InvalidInputError("powers must be nonnegative")
    d = sym.dimension
    validate_coeffs(f_coeffs, d)
    xi = fixed_point(sym)
    by_power = {}
    g = dict(f_coeffs)
    top = max(powers, default=0)
    for p in range(top + 1):
        if p in powers:
            by_power[p] = poly_eval(g, xi)
        if p < top:
            g = compose_affine(g, sym.a, sym.b)
    return complex(sum(w * by_power[p] for w, p in zip(weights, powers)))
