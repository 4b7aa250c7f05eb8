"""JSON schemas for symbols, exact eigenvalue data, coefficient maps, and
report emission.  Loaders raise InvalidInputError on malformed documents so
batch callers can map them to a uniform exit status.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .classify import CyclicityVerdict
from .errors import InvalidInputError
from .fockmat import ApproxReport
from .relations import ExactPolarSpec, PolarEigenvalue
from .symbol import AffineSymbol, BoundednessReport


def _as_number(x, what: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InvalidInputError(f"{what} must be a number, got {x!r}")
    return float(x)


def load_complex(x, what: str) -> complex:
    """Accept {"re": a, "im": b} or a bare real number."""
    if isinstance(x, dict):
        extra = set(x) - {"re", "im"}
        if extra:
            raise InvalidInputError(f"unexpected keys {sorted(extra)} in {what}")
        return complex(
            _as_number(x.get("re", 0.0), f"{what}.re"),
            _as_number(x.get("im", 0.0), f"{what}.im"),
        )
    return complex(_as_number(x, what))


def dump_complex(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _load_fraction(x, what: str) -> Fraction:
    if not isinstance(x, dict) or set(x) - {"num", "den"}:
        raise InvalidInputError(f"{what} must be {{'num': p, 'den': q}}")
    num, den = x.get("num"), x.get("den", 1)
    if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool):
        raise InvalidInputError(f"{what} numerator/denominator must be integers")
    if den == 0:
        raise InvalidInputError(f"{what} has zero denominator")
    return Fraction(num, den)


def load_exact_spec(doc) -> ExactPolarSpec:
    if not isinstance(doc, dict) or "eigenvalues" not in doc:
        raise InvalidInputError('exact data must be {"eigenvalues": [...]}')
    eigs = []
    for i, e in enumerate(doc["eigenvalues"]):
        what = f"exact.eigenvalues[{i}]"
        if not isinstance(e, dict):
            raise InvalidInputError(f"{what} must be an object")
        mod = e.get("modulus")
        modulus = None
        log_tag = None
        if isinstance(mod, dict) and "log_generic" in mod:
            log_tag = str(mod["log_generic"])
        else:
            modulus = _load_fraction(mod, f"{what}.modulus")
        arg = e.get("arg")
        if not isinstance(arg, dict):
            raise InvalidInputError(f"{what}.arg must be an object")
        arg_pi = None
        arg_tag = None
        if "pi_rational" in arg:
            arg_pi = _load_fraction(arg["pi_rational"], f"{what}.arg.pi_rational")
        elif "generic" in arg:
            arg_tag = str(arg["generic"])
        else:
            raise InvalidInputError(
                f"{what}.arg must carry 'pi_rational' or 'generic'"
            )
        eigs.append(PolarEigenvalue(modulus, log_tag, arg_pi, arg_tag))
    return ExactPolarSpec(tuple(eigs))


def dump_exact_spec(spec: ExactPolarSpec) -> dict:
    out = []
    for e in spec.eigenvalues:
        if e.modulus is not None:
            mod = {"num": e.modulus.numerator, "den": e.modulus.denominator}
        else:
            mod = {"log_generic": e.modulus_log_tag}
        if e.arg_pi_multiple is not None:
            arg = {"pi_rational": {
                "num": e.arg_pi_multiple.numerator,
                "den": e.arg_pi_multiple.denominator,
            }}
        else:
            arg = {"generic": e.arg_tag}
        out.append({"modulus": mod, "arg": arg})
    return {"eigenvalues": out}


def _load_matrix(doc, d: int, what: str) -> np.ndarray:
    if (
        not isinstance(doc, list)
        or len(doc) != d
        or any(not isinstance(row, list) or len(row) != d for row in doc)
    ):
        raise InvalidInputError(f"{what} must be a row-major {d}x{d} array")
    out = np.empty((d, d), dtype=complex)
    for i, row in enumerate(doc):
        for j, entry in enumerate(row):
            out[i, j] = load_complex(entry, f"{what}[{i}][{j}]")
    return out


def _load_vector(doc, d: int, what: str) -> np.ndarray:
    if not isinstance(doc, list) or len(doc) != d:
        raise InvalidInputError(f"{what} must be an array of length {d}")
    return np.array(
        [load_complex(x, f"{what}[{i}]") for i, x in enumerate(doc)], dtype=complex
    )


def load_symbol(doc) -> AffineSymbol:
    """Parse {"dimension": d, "A": ..., "b": ..., "tol"?, "exact"?}."""
    if not isinstance(doc, dict):
        raise InvalidInputError("symbol document must be an object")
    if "dimension" not in doc or not isinstance(doc["dimension"], int):
        raise InvalidInputError('symbol document needs an integer "dimension"')
    d = doc["dimension"]
    if d < 1:
        raise InvalidInputError(f"dimension must be positive, got {d}")
    if "A" not in doc or "b" not in doc:
        raise InvalidInputError('symbol document needs "A" and "b"')
    a = _load_matrix(doc["A"], d, "A")
    b = _load_vector(doc["b"], d, "b")
    exact = None
    if doc.get("exact") is not None:
        exact = load_exact_spec(doc["exact"])
        if len(exact) != d:
            raise InvalidInputError(
                f"exact data lists {len(exact)} eigenvalues for dimension {d}"
            )
    kwargs = {}
    if "tol" in doc:
        kwargs["tol"] = _as_number(doc["tol"], "tol")
    return AffineSymbol(a, b, exact=exact, **kwargs)


def dump_symbol(sym: AffineSymbol) -> dict:
    out = {
        "dimension": sym.dimension,
        "A": [[dump_complex(z) for z in row] for row in sym.a],
        "b": [dump_complex(z) for z in sym.b],
        "tol": sym.tol,
    }
    if sym.exact is not None:
        out["exact"] = dump_exact_spec(sym.exact)
    return out


def load_function(doc, dimension: int | None = None) -> dict:
    """Parse {"coefficients": [{"alpha": [...], "value": ...}, ...]}."""
    if not isinstance(doc, dict) or "coefficients" not in doc:
        raise InvalidInputError('function document must be {"coefficients": [...]}')
    out = {}
    for i, entry in enumerate(doc["coefficients"]):
        what = f"coefficients[{i}]"
        if not isinstance(entry, dict) or "alpha" not in entry or "value" not in entry:
            raise InvalidInputError(f"{what} must carry 'alpha' and 'value'")
        alpha = entry["alpha"]
        if (
            not isinstance(alpha, list)
            or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in alpha)
        ):
            raise InvalidInputError(f"{what}.alpha must be nonnegative integers")
        if dimension is not None and len(alpha) != dimension:
            raise InvalidInputError(
                f"{what}.alpha has length {len(alpha)}, expected {dimension}"
            )
        key = tuple(alpha)
        if key in out:
            raise InvalidInputError(f"duplicate multi-index {key}")
        out[key] = load_complex(entry["value"], f"{what}.value")
    return out


def dump_function(f_coeffs) -> dict:
    entries = sorted(f_coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    return {
        "coefficients": [
            {"alpha": list(a), "value": dump_complex(c)} for a, c in entries
        ]
    }


def dump_verdict(v: CyclicityVerdict) -> dict:
    out = {
        "status": v.status.value,
        "reasons": [
            {
                "code": r.code,
                "alpha": list(r.alpha) if r.alpha is not None else None,
                "text": r.text,
            }
            for r in v.reasons
        ],
    }
    if v.search_height is not None:
        out["search_height"] = v.search_height
    return out


def dump_boundedness(rep: BoundednessReport) -> dict:
    return {
        "bounded": rep.bounded,
        "compact": rep.compact,
        "operator_norm_of_A": rep.operator_norm_of_a,
        "isometric_subspace_dim": rep.isometric_subspace_dim,
        "violation_witness": (
            None
            if rep.violation_witness is None
            else [dump_complex(z) for z in rep.violation_witness]
        ),
    }


def dump_approx(rep: ApproxReport) -> dict:
    out = {
        "prefactor": rep.prefactor,
        "terms": [
            {"alpha": list(a), "value": v}
            for a, v in zip(rep.indices, rep.values)
        ],
        "closed_form_sum": rep.closed_form_sum,
    }
    if rep.oracle_values is not None:
        out["oracle"] = {
            "degree": rep.oracle_degree,
            "values": list(rep.oracle_values),
            "max_rel_delta": rep.max_rel_delta,
        }
    return out
