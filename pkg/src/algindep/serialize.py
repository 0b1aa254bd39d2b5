"""JSON file formats: field specs, polynomial files, and report output.

Rationals are serialized as exact "p/q" strings.  A field spec holds the
defining polynomial, an optional integral basis, and the alpha vector; a
polynomial file lists terms with exponent vectors and rational or
field-coordinate coefficients.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .numberfield import AlgebraicNumber, NumberField, nf_create
from .polysys import HomogeneousPolynomial


class SpecError(ValueError):
    pass


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            if "/" in s:
                p, q = s.split("/", 1)
                return Fraction(int(p), int(q))
            return Fraction(int(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"bad rational {s!r}") from exc
    raise SpecError(f"bad rational {s!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def element_to_json(a: AlgebraicNumber) -> list:
    return [format_rational(c) for c in a.coords]


def load_field_spec(data) -> tuple:
    """(NumberField, list of alphas) from a parsed spec dict."""
    if not isinstance(data, dict) or "min_poly" not in data:
        raise SpecError("field spec needs a min_poly")
    try:
        min_poly = [int(c) for c in data["min_poly"]]
    except (TypeError, ValueError) as exc:
        raise SpecError("min_poly must be a list of integers") from exc
    basis = None
    if data.get("integral_basis") is not None:
        basis = [[parse_rational(c) for c in row]
                 for row in data["integral_basis"]]
    try:
        field = nf_create(min_poly, basis)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    alphas = []
    for row in data.get("alphas", []):
        coords = [parse_rational(c) for c in row]
        if len(coords) != field.degree:
            raise SpecError("alpha coordinate vector has wrong length")
        alphas.append(field.element(coords))
    return field, alphas


def read_field_spec(path: str) -> tuple:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON in {path}: {exc}") from exc
    return load_field_spec(data)


def load_poly(data, field: NumberField | None = None) -> HomogeneousPolynomial:
    if not isinstance(data, dict):
        raise SpecError("polynomial file must be a JSON object")
    try:
        nvars = int(data["nvars"])
        degree = int(data["degree"])
        raw_terms = data["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError("polynomial file needs nvars, degree, terms") from exc
    terms = {}
    for item in raw_terms:
        exp = tuple(int(e) for e in item["exp"])
        coeff = item["coeff"]
        if isinstance(coeff, list):
            if field is None:
                raise SpecError("field-coordinate coefficient without a field")
            value = field.element([parse_rational(c) for c in coeff])
        else:
            value = parse_rational(coeff)
            if field is not None:
                value = field.from_rational(value)
        terms[exp] = terms[exp] + value if exp in terms else value
    try:
        return HomogeneousPolynomial.make(nvars, degree, terms)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


def read_poly(path: str, field: NumberField | None = None) -> HomogeneousPolynomial:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON in {path}: {exc}") from exc
    return load_poly(data, field)


def poly_to_json(p: HomogeneousPolynomial) -> dict:
    terms = []
    for exp, coeff in p.terms:
        if isinstance(coeff, AlgebraicNumber):
            c = element_to_json(coeff)
        else:
            c = format_rational(coeff)
        terms.append({"exp": list(exp), "coeff": c})
    return {"nvars": p.nvars, "degree": p.degree, "terms": terms}


def dump_report(report: dict, out_path: str | None = None) -> str:
    text = json.dumps(report, sort_keys=True, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    return text
