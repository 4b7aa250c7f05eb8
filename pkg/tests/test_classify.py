"""Cyclicity classification, cyclic-vector tests, convex obstructions."""

from fractions import Fraction

import numpy as np
import pytest

from fockdyn.classify import (
    CyclicityStatus,
    classify_cyclicity,
    convex_obstruction_value,
    cyclic_vector_test,
)
from fockdyn.errors import InvalidInputError, PreconditionError
from fockdyn.fockmat import from_L_basis, multi_indices
from fockdyn.polymap import poly_eval
from fockdyn.relations import ExactPolarSpec, PolarEigenvalue
from fockdyn.spectral import linear_form_basis
from fockdyn.symbol import AffineSymbol, fixed_point


def tagged_diagonal(lam, b=None, tag_prefix="r"):
    """Diagonal symbol with independence-tagged moduli and argument zero."""
    lam = np.asarray(lam, dtype=float)
    d = lam.size
    exact = ExactPolarSpec(
        tuple(
            PolarEigenvalue(None, f"{tag_prefix}{j}", Fraction(0), None)
            for j in range(d)
        )
    )
    b = np.zeros(d) if b is None else np.asarray(b, dtype=complex)
    return AffineSymbol(np.diag(lam).astype(complex), b, exact=exact)


def rational_diagonal(fractions, b=None):
    lam = [float(q) for q in fractions]
    exact = ExactPolarSpec(
        tuple(
            PolarEigenvalue(Fraction(q), None, Fraction(0), None)
            for q in fractions
        )
    )
    d = len(lam)
    b = np.zeros(d) if b is None else np.asarray(b, dtype=complex)
    return AffineSymbol(np.diag(lam).astype(complex), b, exact=exact)


def test_singular_linear_part_never_cyclic():
    sym = AffineSymbol([[0.5, 0.0], [0.0, 0.0]], [0.1, 0.1])
    verdict = classify_cyclicity(sym)
    assert verdict.status is CyclicityStatus.NOT_CYCLIC
    assert verdict.reasons[0].code == "NOT_INVERTIBLE"


def test_big_jordan_block_never_cyclic():
    a = 0.5 * np.eye(3) + np.diag([0.25, 0.25], 1)
    verdict = classify_cyclicity(AffineSymbol(a, np.zeros(3)))
    assert verdict.status is CyclicityStatus.NOT_CYCLIC
    assert verdict.reasons[0].code == "BAD_JORDAN"


def test_two_jordan_blocks_never_cyclic():
    a = np.zeros((4, 4), dtype=complex)
    a[0, 0] = a[1, 1] = 0.5
    a[0, 1] = 0.25
    a[2, 2] = a[3, 3] = 0.3
    a[2, 3] = 0.25
    verdict = classify_cyclicity(AffineSymbol(a, np.zeros(4)))
    assert verdict.status is CyclicityStatus.NOT_CYCLIC
    assert verdict.reasons[0].code == "BAD_JORDAN"


def test_single_two_block_is_acceptable():
    sym = AffineSymbol([[0.5, 0.25], [0.0, 0.5]], [0.0, 0.0])
    verdict = classify_cyclicity(sym)
    assert all(r.code != "BAD_JORDAN" for r in verdict.reasons)


def test_unbounded_symbol_rejected():
    with pytest.raises(PreconditionError):
        classify_cyclicity(AffineSymbol([[2.0]], [0.0]))


def test_exact_relation_gives_not_cyclic():
    sym = rational_diagonal([Fraction(1, 2), Fraction(1, 4)])
    verdict = classify_cyclicity(sym)
    assert verdict.status is CyclicityStatus.NOT_CYCLIC
    reason = verdict.reasons[0]
    assert reason.code == "RELATION_FOUND"
    assert tuple(reason.alpha) in ((-2, 1), (2, -1))


def test_exact_independence_gives_cyclic():
    sym = rational_diagonal([Fraction(1, 2), Fraction(1, 3)])
    assert classify_cyclicity(sym).status is CyclicityStatus.CYCLIC


def test_tagged_moduli_give_cyclic():
    sym = tagged_diagonal([0.52, 0.71])
    assert classify_cyclicity(sym).status is CyclicityStatus.CYCLIC


def test_exact_data_must_match_matrix():
    exact = ExactPolarSpec(
        (PolarEigenvalue(Fraction(1, 2), None, Fraction(1, 3), None),)
    )
    sym = AffineSymbol([[0.5]], [0.0], exact=exact)
    with pytest.raises(InvalidInputError):
        classify_cyclicity(sym)


def test_numeric_path_detects_planted_relation():
    sym = AffineSymbol(np.diag([0.5, 0.25]).astype(complex), [0.1, 0.1])
    verdict = classify_cyclicity(sym, search_height=5)
    assert verdict.status is CyclicityStatus.NOT_CYCLIC
    assert verdict.reasons[0].code == "RELATION_FOUND"


def test_numeric_path_without_relation_is_undecided():
    sym = AffineSymbol(np.diag([0.5, 1 / 3]).astype(complex), np.zeros(2))
    verdict = classify_cyclicity(sym, search_height=6)
    assert verdict.status is CyclicityStatus.UNDECIDED
    assert verdict.search_height == 6


def test_cyclic_vector_full_support_passes():
    sym = tagged_diagonal([0.5, 0.3], b=[0.1, -0.2])
    basis = linear_form_basis(sym)
    lcoef = {a: 1.0 + 0.5j for a in multi_indices(2, 2)}
    f = from_L_basis(lcoef, basis)
    report = cyclic_vector_test(sym, f, 2)
    assert report.verdict
    assert report.failing_indices == ()


def test_cyclic_vector_missing_direction_fails():
    sym = tagged_diagonal([0.5, 0.3])
    basis = linear_form_basis(sym)
    lcoef = {a: 1.0 + 0j for a in multi_indices(2, 2)}
    del lcoef[(1, 1)]
    f = from_L_basis(lcoef, basis)
    report = cyclic_vector_test(sym, f, 2)
    assert not report.verdict
    assert (1, 1) in report.failing_indices


def test_cyclic_vector_missing_constant_fails():
    # the constant term sits alone in its degree level, so its absence must
    # be judged against the global coefficient scale
    sym = tagged_diagonal([0.5, 0.3])
    basis = linear_form_basis(sym)
    lcoef = {a: 1.0 + 0j for a in multi_indices(2, 2)}
    del lcoef[(0, 0)]
    f = from_L_basis(lcoef, basis)
    report = cyclic_vector_test(sym, f, 2)
    assert not report.verdict
    assert (0, 0) in report.failing_indices


def test_cyclic_vector_requires_cyclic_operator():
    sym = rational_diagonal([Fraction(1, 2), Fraction(1, 4)])
    with pytest.raises(PreconditionError):
        cyclic_vector_test(sym, {(0, 0): 1.0 + 0j}, 2)


def test_convex_obstruction_evaluates_at_fixed_point():
    rng = np.random.default_rng(7)
    sym = AffineSymbol([[0.5, 0.1], [0.0, 0.4]], [0.2, -0.3])
    f = {
        (0, 0): 1.2 + 0j,
        (1, 0): -0.7 + 0.2j,
        (0, 1): 0.4 + 0j,
        (1, 1): 0.9 - 0.5j,
    }
    weights = rng.uniform(size=4)
    weights /= weights.sum()
    powers = [0, 2, 5, 9]
    value = convex_obstruction_value(sym, f, weights, powers)
    xi = fixed_point(sym)
    assert abs(value - poly_eval(f, xi)) < 1e-10
