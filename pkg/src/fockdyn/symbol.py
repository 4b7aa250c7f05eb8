"""Affine self-maps phi(z) = Az + b of C^d and basic operator checks.

The induced composition operator f -> f(phi(.)) acts on the Fock space of
entire functions square-integrable against the Gaussian weight
exp(-|z|^2 / 2); the inner product convention is <z, w> = sum_j z_j conj(w_j)
and the reproducing kernel is k_w(z) = exp(<z, w> / 2).
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError, NoFixedPointError
from .relations import ExactPolarSpec


def as_complex_matrix(a, dim: int | None = None) -> np.ndarray:
    a = np.array(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"matrix must be square, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise DimensionMismatchError(f"matrix is {a.shape[0]}x{a.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(a.view(float))):
        raise InvalidInputError("matrix entries must be finite")
    return a


def as_complex_vector(b, dim: int | None = None) -> np.ndarray:
    b = np.array(b, dtype=complex)
    if b.ndim != 1:
        raise DimensionMismatchError(f"vector must be one-dimensional, got shape {b.shape}")
    if dim is not None and b.shape[0] != dim:
        raise DimensionMismatchError(f"vector has length {b.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(b.view(float))):
        raise InvalidInputError("vector entries must be finite")
    return b


@dataclasses.dataclass(frozen=True)
class AffineSymbol:
    """phi(z) = a z + b with an optional exact polar eigenvalue description."""

    a: np.ndarray
    b: np.ndarray
    exact: ExactPolarSpec | None = None
    tol: float = 1e-10

    def __post_init__(self):
        a = as_complex_matrix(self.a)
        b = as_complex_vector(self.b, a.shape[0])
        if not (0 < self.tol < 1):
            raise InvalidInputError(f"tol must lie in (0, 1), got {self.tol}")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def dimension(self) -> int:
        return self.a.shape[0]


@dataclasses.dataclass(frozen=True)
class BoundednessReport:
    bounded: bool
    compact: bool
    operator_norm_of_a: float
    isometric_subspace_dim: int
    violation_witness: np.ndarray | None


def check_boundedness(sym: AffineSymbol) -> BoundednessReport:
    """Boundedness and compactness of the composition operator.

    Bounded iff ||A|| <= 1 and A v _|_ b for every v that A moves
    isometrically; compact iff ||A|| < 1.  Witness: a unit right singular
    vector v with singular value ~1 whose image fails orthogonality to b.
    """
    tol = sym.tol
    u, s, vh = np.linalg.svd(sym.a)
    norm_a = float(s[0]) if s.size else 0.0
    iso_dim = int(np.count_nonzero(s >= 1 - 10 * tol))
    bounded = norm_a <= 1 + tol
    witness = None
    bnorm = float(np.linalg.norm(sym.b))
    for i in range(s.size):
        if s[i] < 1 - tol:
            break
        # <A v_i, b> with v_i the i-th right singular vector
        pairing = s[i] * complex(np.vdot(sym.b, u[:, i]))
        if abs(pairing) > tol * bnorm:
            bounded = False
            witness = vh[i].conj()
            break
    compact = norm_a < 1 - tol
    return BoundednessReport(bounded, compact, norm_a, iso_dim, witness)


def fixed_point(sym: AffineSymbol) -> np.ndarray:
    """Solve (I - A) xi = b, minimum-norm when 1 is an eigenvalue of A.

    For bounded symbols a solution always exists; an inconsistent system
    raises with the residual.
    """
    d = sym.dimension
    m = np.eye(d) - sym.a
    xi, *_ = np.linalg.lstsq(m, sym.b, rcond=None)
    residual = float(np.linalg.norm(m @ xi - sym.b))
    if residual > sym.tol * (1 + np.linalg.norm(sym.b)):
        raise NoFixedPointError(
            f"(I - A) x = b is inconsistent (residual {residual:.3e})", residual
        )
    return xi


def iterate_point(sym: AffineSymbol, z, n: int) -> np.ndarray:
    """n-fold forward iterate phi^n(z)."""
    if n < 0:
        raise InvalidInputError(f"iteration count must be >= 0, got {n}")
    w = as_complex_vector(z, sym.dimension).copy()
    for _ in range(n):
        w = sym.a @ w + sym.b
    return w


def kernel_value(w, z) -> complex:
    """Reproducing kernel k_w(z) = exp(<z, w> / 2)."""
    w = as_complex_vector(w)
    z = as_complex_vector(z, w.shape[0])
    return complex(np.exp(np.vdot(w, z) / 2))


def kernel_norm(w) -> float:
    """||k_w|| = exp(|w|^2 / 4)."""
    w = as_complex_vector(w)
    return float(np.exp(np.linalg.norm(w) ** 2 / 4))


def adjoint_data(sym: AffineSymbol) -> tuple[np.ndarray, np.ndarray]:
    """Data (b, A*) of the adjoint: a weighted composition by z -> A* z
    with multiplier k_b."""
    return sym.b.copy(), sym.a.conj().T.copy()
