"""JSON schema loading, dumping, and rejection of malformed documents."""

from fractions import Fraction

import numpy as np
import pytest

from fockdyn.errors import InvalidInputError
from fockdyn.io import (
    dump_approx,
    dump_exact_spec,
    dump_function,
    dump_symbol,
    dump_verdict,
    load_exact_spec,
    load_function,
    load_symbol,
)
from fockdyn.classify import classify_cyclicity
from fockdyn.fockmat import approx_numbers
from fockdyn.relations import ExactPolarSpec, PolarEigenvalue
from fockdyn.symbol import AffineSymbol


SYMBOL_DOC = {
    "dimension": 2,
    "A": [
        [{"re": 0.5, "im": 0.0}, {"re": 0.1, "im": -0.2}],
        [{"re": 0.0, "im": 0.0}, {"re": 0.25, "im": 0.0}],
    ],
    "b": [{"re": 0.3, "im": 0.0}, {"re": -0.1, "im": 0.2}],
}


def test_symbol_roundtrip():
    sym = load_symbol(SYMBOL_DOC)
    assert sym.dimension == 2
    assert sym.a[0, 1] == pytest.approx(0.1 - 0.2j)
    doc = dump_symbol(sym)
    again = load_symbol(doc)
    assert np.array_equal(again.a, sym.a)
    assert np.array_equal(again.b, sym.b)


def test_symbol_accepts_bare_numbers():
    doc = {"dimension": 1, "A": [[0.5]], "b": [0.25]}
    sym = load_symbol(doc)
    assert sym.a[0, 0] == 0.5 and sym.b[0] == 0.25


def test_symbol_rejects_malformed_documents():
    bad_docs = [
        {"A": [[0.5]], "b": [0.0]},  # missing dimension
        {"dimension": 2, "A": [[0.5]], "b": [0.0, 0.0]},  # wrong matrix shape
        {"dimension": 1, "A": [[0.5]], "b": [0.0, 0.0]},  # wrong vector length
        {"dimension": 1, "A": [[{"re": 0.5, "bogus": 1}]], "b": [0.0]},
        {"dimension": 1, "A": [[{"re": "x"}]], "b": [0.0]},
        {"dimension": 1.5, "A": [[0.5]], "b": [0.0]},
    ]
    for doc in bad_docs:
        with pytest.raises(InvalidInputError):
            load_symbol(doc)


def test_exact_spec_roundtrip():
    spec = ExactPolarSpec(
        (
            PolarEigenvalue(Fraction(1, 2), None, Fraction(1, 3), None),
            PolarEigenvalue(None, "r1", None, "t1"),
        )
    )
    doc = dump_exact_spec(spec)
    again = load_exact_spec(doc)
    assert again == spec


def test_exact_spec_rejects_zero_denominator():
    doc = {
        "eigenvalues": [
            {"modulus": {"num": 1, "den": 0}, "arg": {"pi_rational": {"num": 0, "den": 1}}}
        ]
    }
    with pytest.raises(InvalidInputError):
        load_exact_spec(doc)


def test_function_roundtrip_and_ordering():
    f = {(2, 0): 1.5 + 0j, (0, 0): -2.0 + 1j, (0, 1): 0.5j}
    doc = dump_function(f)
    alphas = [tuple(e["alpha"]) for e in doc["coefficients"]]
    assert alphas == [(0, 0), (0, 1), (2, 0)]
    back = load_function(doc, dimension=2)
    assert set(back) == set(f)
    assert back[(0, 0)] == pytest.approx(-2.0 + 1j)


def test_function_rejects_bad_entries():
    with pytest.raises(InvalidInputError):
        load_function({"coefficients": [{"alpha": [0, -1], "value": 1.0}]})
    with pytest.raises(InvalidInputError):
        load_function(
            {
                "coefficients": [
                    {"alpha": [1], "value": 1.0},
                    {"alpha": [1], "value": 2.0},
                ]
            }
        )
    with pytest.raises(InvalidInputError):
        load_function({"coefficients": [{"alpha": [1], "value": 1.0}]}, dimension=2)


def test_verdict_document_shape():
    exact = ExactPolarSpec(
        (
            PolarEigenvalue(Fraction(1, 2), None, Fraction(0), None),
            PolarEigenvalue(Fraction(1, 4), None, Fraction(0), None),
        )
    )
    sym = AffineSymbol(np.diag([0.5, 0.25]).astype(complex), np.zeros(2), exact=exact)
    doc = dump_verdict(classify_cyclicity(sym))
    assert doc["status"] == "not_cyclic"
    assert doc["reasons"][0]["code"] == "RELATION_FOUND"
    assert tuple(doc["reasons"][0]["alpha"]) in ((-2, 1), (2, -1))


def test_approx_document_shape():
    rep = approx_numbers(
        AffineSymbol([[0.5]], [0.2]), 4, with_oracle=True, oracle_method="reduced"
    )
    doc = dump_approx(rep)
    assert set(doc) == {"prefactor", "terms", "closed_form_sum", "oracle"}
    assert [tuple(t["alpha"]) for t in doc["terms"]] == [(0,), (1,), (2,), (3,)]
    assert doc["oracle"]["max_rel_delta"] < 1e-8
