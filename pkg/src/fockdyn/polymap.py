"""Polynomial algebra on coefficient maps.

A polynomial in d complex variables is stored as a dict mapping exponent
tuples (length d, nonnegative ints) to complex coefficients.  The zero
polynomial is the empty dict.  These maps are the common currency for the
truncation, projection, and cyclic-vector machinery.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError

CoeffMap = dict


def validate_coeffs(f: CoeffMap, d: int | None = None) -> int:
    """Check key shapes and return the number of variables."""
    dims = {len(a) for a in f}
    if d is None:
        if not dims:
            raise InvalidInputError("cannot infer variable count from the zero polynomial")
        d = dims.pop()
        dims.add(d)
    if dims - {d}:
        raise DimensionMismatchError(f"mixed exponent lengths {sorted(dims)}; expected {d}")
    for a in f:
        if any((not isinstance(k, (int, np.integer))) or k < 0 for k in a):
            raise InvalidInputError(f"exponents must be nonnegative integers, got {a}")
    return d


def poly_degree(f: CoeffMap) -> int:
    """Total degree; -1 for the zero polynomial."""
    return max((sum(a) for a in f), default=-1)


def poly_add(*fs: CoeffMap) -> CoeffMap:
    out: CoeffMap = {}
    for f in fs:
        for a, c in f.items():
            out[a] = out.get(a, 0j) + c
    return out


def poly_scale(f: CoeffMap, c: complex) -> CoeffMap:
    return {a: c * v for a, v in f.items()}


def poly_mul(f: CoeffMap, g: CoeffMap) -> CoeffMap:
    out: CoeffMap = {}
    for a, ca in f.items():
        for b, cb in g.items():
            key = tuple(x + y for x, y in zip(a, b))
            out[key] = out.get(key, 0j) + ca * cb
    return out


def poly_pow(f: CoeffMap, k: int, d: int) -> CoeffMap:
    """Binary exponentiation; k = 0 gives the constant 1."""
    if k < 0:
        raise InvalidInputError("negative polynomial power")
    acc = {(0,) * d: 1.0 + 0j}
    base = dict(f)
    while k:
        if k & 1:
            acc = poly_mul(acc, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return acc


def poly_truncate(f: CoeffMap, max_degree: int) -> CoeffMap:
    return {a: c for a, c in f.items() if sum(a) <= max_degree}


def poly_clean(f: CoeffMap, tol: float = 0.0) -> CoeffMap:
    """Drop coefficients of modulus <= tol (exact zeros by default)."""
    return {a: c for a, c in f.items() if abs(c) > tol}


def poly_eval(f: CoeffMap, point) -> complex:
    z = np.asarray(point, dtype=complex)
    total = 0j
    for a, c in f.items():
        term = complex(c)
        for zj, k in zip(z, a):
            if k:
                term *= zj ** k
        total += term
    return total


def compose_affine(f: CoeffMap, a, b) -> CoeffMap:
    """Coefficients of f(Az + b): substitute z_i -> sum_k A[i,k] z_k + b_i.

    Exact on polynomials; the total degree never increases.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or b.shape != (a.shape[0],):
        raise DimensionMismatchError(f"affine data shapes {a.shape}, {b.shape}")
    d = a.shape[0]
    validate_coeffs(f, d) if f else None
    images = []
    for i in range(d):
        img: CoeffMap = {}
        for k in range(d):
            if a[i, k] != 0:
                key = tuple(1 if j == k else 0 for j in range(d))
                img[key] = a[i, k]
        if b[i] != 0:
            img[(0,) * d] = img.get((0,) * d, 0j) + b[i]
        images.append(img)
    # cache powers of each substituted coordinate
    max_exp = [0] * d
    for alpha in f:
        for i, k in enumerate(alpha):
            max_exp[i] = max(max_exp[i], k)
    powers = []
    for i in range(d):
        row = [{(0,) * d: 1.0 + 0j}]
        for _ in range(max_exp[i]):
            row.append(poly_mul(row[-1], images[i]))
        powers.append(row)
    out: CoeffMap = {}
    for alpha, c in f.items():
        term = {(0,) * d: complex(c)}
        for i, k in enumerate(alpha):
            if k:
                term = poly_mul(term, powers[i][k])
        for key, v in term.items():
            out[key] = out.get(key, 0j) + v
    return out


def coeffs_close(f: CoeffMap, g: CoeffMap, tol: float) -> bool:
    """Coefficient-wise comparison at absolute tolerance tol."""
    keys = set(f) | set(g)
    return all(abs(f.get(a, 0j) - g.get(a, 0j)) <= tol for a in keys)
