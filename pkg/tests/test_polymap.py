"""Algebra laws of the sparse coefficient-map polynomial layer."""

import numpy as np
import pytest

from fockdyn.errors import InvalidInputError
from fockdyn.polymap import (
    coeffs_close,
    compose_affine,
    poly_add,
    poly_clean,
    poly_degree,
    poly_eval,
    poly_mul,
    poly_pow,
    poly_scale,
    poly_truncate,
    validate_coeffs,
)


def random_poly(rng, d, degree, terms):
    f = {}
    for _ in range(terms):
        alpha = tuple(int(k) for k in rng.multinomial(rng.integers(0, degree + 1), np.ones(d) / d))
        f[alpha] = complex(rng.normal(), rng.normal())
    return f


def test_eval_of_monomial():
    f = {(2, 1): 3.0 + 0j}
    assert poly_eval(f, [2.0, 5.0]) == pytest.approx(3 * 4 * 5)


def test_add_scale_linear_in_eval():
    rng = np.random.default_rng(3)
    for _ in range(20):
        d = int(rng.integers(1, 4))
        f = random_poly(rng, d, 4, 5)
        g = random_poly(rng, d, 4, 5)
        z = rng.normal(size=d) + 1j * rng.normal(size=d)
        lhs = poly_eval(poly_add(f, poly_scale(g, 2.5j)), z)
        rhs = poly_eval(f, z) + 2.5j * poly_eval(g, z)
        assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))


def test_mul_matches_pointwise_product():
    rng = np.random.default_rng(4)
    for _ in range(20):
        d = int(rng.integers(1, 4))
        f = random_poly(rng, d, 3, 4)
        g = random_poly(rng, d, 3, 4)
        z = 0.7 * (rng.normal(size=d) + 1j * rng.normal(size=d))
        lhs = poly_eval(poly_mul(f, g), z)
        rhs = poly_eval(f, z) * poly_eval(g, z)
        assert abs(lhs - rhs) < 1e-8 * max(1.0, abs(rhs))


def test_pow_matches_repeated_mul():
    rng = np.random.default_rng(5)
    f = random_poly(rng, 2, 2, 4)
    by_mul = {(0, 0): 1.0 + 0j}
    for _ in range(3):
        by_mul = poly_mul(by_mul, f)
    assert coeffs_close(poly_pow(f, 3, 2), by_mul, 1e-9)


def test_compose_affine_matches_eval():
    rng = np.random.default_rng(6)
    for _ in range(20):
        d = int(rng.integers(1, 4))
        f = random_poly(rng, d, 4, 5)
        a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        b = rng.normal(size=d) + 1j * rng.normal(size=d)
        g = compose_affine(f, a, b)
        z = 0.5 * (rng.normal(size=d) + 1j * rng.normal(size=d))
        lhs = poly_eval(g, z)
        rhs = poly_eval(f, a @ z + b)
        assert abs(lhs - rhs) < 1e-8 * max(1.0, abs(rhs))


def test_compose_affine_identity_map():
    f = {(3, 0): 2.0 + 0j, (1, 1): -1j}
    g = compose_affine(f, np.eye(2), np.zeros(2))
    assert coeffs_close(f, g, 1e-12)


def test_truncate_and_degree():
    f = {(0, 0): 1.0, (2, 1): 1.0, (0, 4): 1.0}
    assert poly_degree(f) == 4
    assert poly_degree({}) == -1
    t = poly_truncate(f, 3)
    assert set(t) == {(0, 0), (2, 1)}


def test_clean_drops_small_terms():
    f = {(1,): 1.0, (2,): 1e-14}
    assert set(poly_clean(f, 1e-12)) == {(1,)}
    assert set(poly_clean({(0,): 0.0})) == set()


def test_validate_rejects_bad_indices():
    with pytest.raises(InvalidInputError):
        validate_coeffs({(1, -1): 1.0})
    with pytest.raises(InvalidInputError):
        validate_coeffs({(1,): 1.0, (1, 0): 1.0})
    assert validate_coeffs({(1, 0): 1.0}) == 2
