"""JSON schemas and the plain/LaTeX emitters.

All rational numbers travel as decimal-free strings ("5", "-3/7");
hyperplane indices are 1-based everywhere.  JSON emission is canonical:
sorted keys, compact separators, UTF-8, so that parse followed by emit
is byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arrangement import Arrangement, EXPLICIT, GENERIC, PROJECTIVE_CLOSURE
from .errors import ValidationError
from .exact import LinearFunctional, MultiPoly, RationalForm, frac
from .osalgebra import CornerResidueVector, DlogCombination, OSElement
from .regions import Region
from .strata import StrataInput

# ---------------------------------------------------------------------------
# rationals


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ValidationError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational {text!r}: {exc}") from None


def emit_rational(value: Fraction) -> str:
    return str(frac(value))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# arrangements


def parse_arrangement(obj: Dict) -> Arrangement:
    if not isinstance(obj, dict):
        raise ValidationError("arrangement must be a JSON object")
    try:
        n = obj["ambient_dim"]
        raw_planes = obj["hyperplanes"]
    except KeyError as exc:
        raise ValidationError(f"arrangement is missing field {exc}") from None
    if not isinstance(n, int) or n < 0:
        raise ValidationError("ambient_dim must be a nonnegative integer")
    variables = tuple(obj.get("variables", ()))
    hyperplanes = []
    names = []
    for k, h in enumerate(raw_planes):
        try:
            constant = parse_rational(h["constant"])
            linear = tuple(parse_rational(v) for v in h["linear"])
        except KeyError as exc:
            raise ValidationError(
                f"hyperplane {k + 1} is missing field {exc}"
            ) from None
        if len(linear) != n:
            raise ValidationError(f"hyperplane {k + 1} has wrong arity")
        hyperplanes.append(LinearFunctional(constant, linear))
        names.append(h.get("name", f"H{k + 1}"))
    infinity = obj.get("infinity", GENERIC)
    mode, f0 = GENERIC, None
    if infinity == GENERIC:
        pass
    elif infinity == PROJECTIVE_CLOSURE:
        mode = PROJECTIVE_CLOSURE
    elif isinstance(infinity, dict):
        mode = EXPLICIT
        f0 = LinearFunctional(
            parse_rational(infinity["constant"]),
            tuple(parse_rational(v) for v in infinity["linear"]),
        )
    else:
        raise ValidationError(f"unknown infinity declaration {infinity!r}")
    return Arrangement(
        ambient_dim=n,
        hyperplanes=tuple(hyperplanes),
        infinity_mode=mode,
        infinity_functional=f0,
        variables=variables,
        names=tuple(names),
    )


def emit_arrangement(arr: Arrangement) -> Dict:
    planes = []
    for i in arr.indices():
        f = arr.functional(i)
        planes.append(
            {
                "name": arr.names[i - 1],
                "constant": emit_rational(f.constant),
                "linear": [emit_rational(g) for g in f.gradient],
            }
        )
    infinity = arr.infinity_mode
    if arr.infinity_mode == EXPLICIT:
        f0 = arr.infinity_functional
        infinity = {
            "constant": emit_rational(f0.constant),
            "linear": [emit_rational(g) for g in f0.gradient],
        }
    return {
        "ambient_dim": arr.ambient_dim,
        "variables": list(arr.variables),
        "hyperplanes": planes,
        "infinity": infinity,
    }


# ---------------------------------------------------------------------------
# regions


def parse_region(obj: Dict, arr: Arrangement) -> Region:
    if not isinstance(obj, dict) or "point" not in obj:
        raise ValidationError("region must be an object with a 'point' field")
    point = tuple(parse_rational(v) for v in obj["point"])
    if len(point) != arr.ambient_dim:
        raise ValidationError("region point has wrong arity")
    orientation = obj.get("orientation", 1)
    if orientation not in (1, -1):
        raise ValidationError("orientation must be 1 or -1")
    from .regions import region_from_point

    return region_from_point(arr, point, orientation)


def emit_region(region: Region) -> Dict:
    return {
        "point": [emit_rational(v) for v in region.witness],
        "orientation": region.orientation,
    }


# ---------------------------------------------------------------------------
# algebra elements


def parse_os_element(obj: Dict, arr: Arrangement) -> OSElement:
    if not isinstance(obj, dict) or "degree" not in obj:
        raise ValidationError("element must be an object with a 'degree' field")
    degree = obj["degree"]
    if not isinstance(degree, int) or degree < 0:
        raise ValidationError("degree must be a nonnegative integer")
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for t in obj.get("terms", []):
        indices = tuple(t["indices"])
        coeff = parse_rational(t["coeff"])
        if indices in terms:
            raise ValidationError(f"duplicate term {list(indices)}")
        terms[indices] = coeff
    return OSElement.build(arr, degree, terms)


def emit_os_element(x: OSElement) -> Dict:
    return {
        "degree": x.degree,
        "terms": [
            {"indices": list(t), "coeff": emit_rational(c)} for t, c in x.terms
        ],
    }


def emit_corner_vector(v: CornerResidueVector) -> Dict:
    return {
        ",".join(str(i) for i in indices): emit_rational(value)
        for indices, value in v.entries
    }


def parse_dlog(obj: Dict) -> DlogCombination:
    if not isinstance(obj, dict):
        raise ValidationError("dlog combination must be a JSON object")
    variable = obj.get("variable", "w")
    terms: Dict[Fraction, Fraction] = {}
    for t in obj.get("terms", []):
        center = parse_rational(t["center"])
        coeff = parse_rational(t["coeff"])
        terms[center] = terms.get(center, Fraction(0)) + coeff
    return DlogCombination.build(variable, terms)


def emit_dlog(x: DlogCombination) -> Dict:
    out: Dict = {
        "variable": x.variable,
        "terms": [
            {"center": emit_rational(a), "coeff": emit_rational(c)}
            for a, c in x.linear
        ],
    }
    if x.atoms:
        out["atoms"] = [
            {"poly": [emit_rational(v) for v in poly], "coeff": emit_rational(c)}
            for poly, c in x.atoms
        ]
    return out


# ---------------------------------------------------------------------------
# strata


def _parse_subset_key(key: str) -> Tuple[int, ...]:
    try:
        values = json.loads(key)
    except json.JSONDecodeError:
        raise ValidationError(f"bad subset key {key!r}") from None
    if not isinstance(values, list) or any(not isinstance(v, int) for v in values):
        raise ValidationError(f"bad subset key {key!r}")
    return tuple(values)


def parse_strata(obj: Dict) -> StrataInput:
    if not isinstance(obj, dict) or "components" not in obj:
        raise ValidationError("strata input needs a 'components' field")
    components = list(obj["components"])
    strata: Dict[Tuple[int, ...], List] = {}
    for key, entries in obj.get("strata", {}).items():
        subset = _parse_subset_key(key)
        bucket = []
        for e in entries:
            if "name" not in e or "faces" not in e:
                raise ValidationError(
                    f"stratum of {key} needs 'name' and 'faces' fields"
                )
            faces = {
                _parse_subset_key(k): v for k, v in e["faces"].items()
            }
            bucket.append((e["name"], faces))
        strata[subset] = bucket
    built = StrataInput.build(components, strata)
    built.validate()
    return built


def emit_strata(s: StrataInput) -> Dict:
    strata: Dict[str, List] = {}
    for subset, entries in s.strata:
        key = canonical_json(list(subset))
        strata[key] = [
            {
                "name": st.name,
                "faces": {
                    canonical_json(list(sub)): target
                    for sub, target in st.faces
                },
            }
            for st in entries
        ]
    return {"components": list(s.components), "strata": strata}


# ---------------------------------------------------------------------------
# polynomials


def emit_poly(p: MultiPoly) -> List[Dict]:
    return [
        {"exp": list(exp), "coeff": emit_rational(c)} for exp, c in p.sorted_terms()
    ]


def parse_poly(obj: List, num_vars: int) -> MultiPoly:
    terms = {}
    for t in obj:
        exp = tuple(t["exp"])
        if len(exp) != num_vars:
            raise ValidationError("polynomial term has wrong arity")
        terms[exp] = terms.get(exp, Fraction(0)) + parse_rational(t["coeff"])
    return MultiPoly(num_vars, terms)


def _coeff_prefix(c: Fraction, lead: bool, latex: bool) -> str:
    sign = "-" if c < 0 else ("" if lead else "+")
    mag = abs(c)
    if mag == 1:
        return sign
    if latex and mag.denominator != 1:
        return f"{sign}\\tfrac{{{mag.numerator}}}{{{mag.denominator}}}"
    return f"{sign}{mag}"


def poly_plain(p: MultiPoly, names: Sequence[str]) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exp, c in p.sorted_terms():
        body = "*".join(
            names[j] if e == 1 else f"{names[j]}^{e}"
            for j, e in enumerate(exp)
            if e
        )
        prefix = _coeff_prefix(c, not parts, latex=False)
        if not body:
            mag = abs(c)
            sign = "-" if c < 0 else ("" if not parts else "+")
            parts.append(f"{sign}{mag}")
        else:
            if prefix not in ("", "+", "-") and body:
                prefix += "*"
            parts.append(prefix + body)
    return "".join(parts)


def poly_latex(p: MultiPoly, names: Sequence[str]) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exp, c in p.sorted_terms():
        body = "".join(
            _latex_name(names[j]) if e == 1 else f"{_latex_name(names[j])}^{{{e}}}"
            for j, e in enumerate(exp)
            if e
        )
        if not body:
            sign = "-" if c < 0 else ("" if not parts else "+")
            mag = abs(c)
            if mag.denominator == 1:
                parts.append(f"{sign}{mag}")
            else:
                parts.append(f"{sign}\\tfrac{{{mag.numerator}}}{{{mag.denominator}}}")
        else:
            parts.append(_coeff_prefix(c, not parts, latex=True) + body)
    return "".join(parts)


def _latex_name(name: str) -> str:
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    if tail:
        return f"{head}_{{{tail}}}"
    return head


# ---------------------------------------------------------------------------
# element and form pretty-printers


def os_plain(x: OSElement) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for indices, c in x.terms:
        body = "w(" + ",".join(str(i) for i in indices) + ")" if indices else "1"
        prefix = _coeff_prefix(c, not parts, latex=False)
        if prefix not in ("", "+", "-"):
            prefix += "*"
        parts.append(prefix + body)
    return " ".join(parts).replace("+", "+ ").replace("-", "- ").strip() or "0"


def os_latex(x: OSElement) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for indices, c in x.terms:
        if indices:
            body = "\\wedge".join(f"\\omega_{{{i}}}" for i in indices)
        else:
            body = "1"
        parts.append(_coeff_prefix(c, not parts, latex=True) + body)
    return "".join(parts)


def form_plain(form: RationalForm, variables: Sequence[str]) -> str:
    if form.is_zero():
        return "0"
    parts = []
    for sub in sorted(form.components):
        numerator = poly_plain(form.components[sub], variables)
        dvars = "^".join(f"d{variables[j]}" for j in sub) or "1"
        den = _den_plain(form, variables)
        if den:
            parts.append(f"(({numerator})/({den})) {dvars}")
        else:
            parts.append(f"({numerator}) {dvars}")
    return " + ".join(parts)


def _den_plain(form: RationalForm, variables: Sequence[str]) -> str:
    factors = []
    for f, exp in form.denominator:
        text = poly_plain(f.to_poly(), variables)
        factors.append(f"({text})" + (f"^{exp}" if exp > 1 else ""))
    return "*".join(factors)


def form_latex(form: RationalForm, variables: Sequence[str]) -> str:
    if form.is_zero():
        return "0"
    parts = []
    for sub in sorted(form.components):
        numerator = poly_latex(form.components[sub], variables)
        den = []
        for f, exp in form.denominator:
            text = poly_latex(f.to_poly(), variables)
            den.append(f"({text})" + (f"^{{{exp}}}" if exp > 1 else ""))
        dvars = "\\wedge ".join(
            f"\\mathrm{{d}}{_latex_name(variables[j])}" for j in sub
        )
        if den:
            body = f"\\frac{{{numerator}}}{{{''.join(den)}}}"
        else:
            body = numerator
        lead = "" if not parts else "+"
        parts.append(f"{lead}{body}\\,{dvars}" if dvars else f"{lead}{body}")
    return "".join(parts)


def emit_rational_form(form: RationalForm) -> Dict:
    return {
        "chart_dim": form.chart_dim,
        "degree": form.degree,
        "components": [
            {"vars": list(sub), "numerator": emit_poly(p)}
            for sub, p in sorted(form.components.items())
        ],
        "denominator": [
            {
                "constant": emit_rational(f.constant),
                "linear": [emit_rational(g) for g in f.gradient],
                "power": exp,
            }
            for f, exp in form.denominator
        ],
    }
