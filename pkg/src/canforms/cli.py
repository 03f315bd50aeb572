"""Command-line entry point.

One command per invocation; every input travels as JSON with rationals
in "p/q" strings.  Exit codes: 0 success, 1 validation error, 2
precondition not met, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import arrangement as arrmod
from . import osalgebra as osmod
from . import regions as regmod
from . import serialize as ser
from . import strata as strmod
from .arrangement import Arrangement, GENERIC
from .errors import CanformsError, InternalInvariantError, ValidationError
from .exact import frac
from .osalgebra import OSElement


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None


def _load_arrangement(args) -> Arrangement:
    if not args.input:
        raise ValidationError("--input is required for this command")
    arr = ser.parse_arrangement(_load_json(args.input))
    if getattr(args, "order", None):
        order = _parse_index_list(args.order)
        arr = arrmod.reorder(arr, order)
    return arr


def _parse_index_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValidationError(f"bad index list {text!r}") from None


def _load_element(args, arr: Arrangement) -> OSElement:
    """An element comes either from a file of terms or from a region."""
    if getattr(args, "element", None):
        return ser.parse_os_element(_load_json(args.element), arr)
    if getattr(args, "region", None):
        region = ser.parse_region(_load_json(args.region), arr)
        return osmod.canonical_form_nbc(region)
    raise ValidationError("need --element or --region")


def _emit(args, plain: str, latex: str, payload) -> None:
    if args.format == "json":
        print(ser.canonical_json(payload))
    elif args.format == "latex":
        print(latex)
    else:
        print(plain)


def _element_payload(x: OSElement, include_arr: bool = False) -> Dict:
    payload = ser.emit_os_element(x)
    if include_arr:
        payload = {
            "arrangement": ser.emit_arrangement(x.arrangement),
            "element": payload,
        }
    return payload


# ---------------------------------------------------------------------------
# command handlers


def _cmd_poset(args) -> int:
    arr = _load_arrangement(args)
    poset = arrmod.build_flat_poset(arr)
    rows = []
    lines = []
    for flat in poset.flats:
        closure = sorted(flat.closure_indices)
        mu = poset.moebius(flat)
        rows.append(
            {"closure": closure, "dim": flat.dim, "moebius": ser.emit_rational(mu)}
        )
        body = ",".join(str(i) for i in closure)
        lines.append(f"{{{body}}} dim={flat.dim} mu={mu}")
    text = "\n".join(lines)
    _emit(args, text, text, rows)
    return 0


def _cmd_moebius(args) -> int:
    arr = _load_arrangement(args)
    poset = arrmod.build_flat_poset(arr)
    mu = poset.moebius(poset.one_hat())
    _emit(args, str(mu), str(mu), ser.emit_rational(mu))
    return 0


def _cmd_rank(args) -> int:
    arr = _load_arrangement(args)
    value = arrmod.combinatorial_rank_moebius(arr)
    _emit(args, str(value), str(value), value)
    return 0


def _cmd_circuits(args) -> int:
    arr = _load_arrangement(args)
    found = arrmod.circuits(arr)
    lines = ["{" + ",".join(str(i) for i in c) + "}" for c in found]
    text = "\n".join(lines)
    _emit(args, text, text, [list(c) for c in found])
    return 0


def _cmd_nbc(args) -> int:
    arr = _load_arrangement(args)
    degree = args.degree if args.degree is not None else arr.ambient_dim
    sets = arrmod.nbc_sets(arr, degree)
    lines = ["{" + ",".join(str(i) for i in s) + "}" for s in sets]
    text = "\n".join(lines)
    _emit(args, text, text, {"count": len(sets), "sets": [list(s) for s in sets]})
    return 0


def _cmd_regions(args) -> int:
    arr = _load_arrangement(args)
    found = arrmod.bounded_regions(arr)
    rows = []
    lines = []
    for sv in found:
        signs = "".join("+" if s > 0 else "-" for s in sv.entries)
        point = ",".join(ser.emit_rational(v) for v in sv.witness)
        lines.append(f"{signs} point=({point})")
        rows.append(
            {
                "signs": list(sv.entries),
                "point": [ser.emit_rational(v) for v in sv.witness],
            }
        )
    text = "\n".join(lines)
    _emit(args, text, text, rows)
    return 0


def _cmd_canonical(args) -> int:
    arr = _load_arrangement(args)
    if not args.region:
        raise ValidationError("--region is required for this command")
    region = ser.parse_region(_load_json(args.region), arr)
    if args.method == "polygon":
        ccw = _parse_index_list(args.ccw) if args.ccw else None
        element = osmod.canonical_form_polygon(region, ccw)
    elif args.method == "simple":
        element = osmod.canonical_form_simple_polytope(region)
    else:
        element = osmod.canonical_form_nbc(region)
    if args.rational:
        form = osmod.to_rational_form(element)
        _emit(
            args,
            ser.form_plain(form, arr.variables),
            ser.form_latex(form, arr.variables),
            ser.emit_rational_form(form),
        )
        return 0
    _emit(args, ser.os_plain(element), ser.os_latex(element), _element_payload(element))
    return 0


def _cmd_residue(args) -> int:
    arr = _load_arrangement(args)
    element = _load_element(args, arr)
    if args.index is None:
        raise ValidationError("--index is required for this command")
    out = osmod.residue(element, args.index)
    _emit(
        args,
        ser.os_plain(out),
        ser.os_latex(out),
        _element_payload(out, include_arr=True),
    )
    return 0


def _cmd_corners(args) -> int:
    arr = _load_arrangement(args)
    element = _load_element(args, arr)
    vector = osmod.corner_residues(element)
    payload = ser.emit_corner_vector(vector)
    lines = [
        ",".join(str(i) for i in idx) + f": {value}"
        for idx, value in vector.entries
    ]
    text = "\n".join(lines)
    _emit(args, text, text, payload)
    return 0


def _cmd_adjoint(args) -> int:
    arr = _load_arrangement(args)
    element = _load_element(args, arr)
    form = osmod.to_rational_form(element)
    poly = osmod.adjoint_polynomial(form, arr)
    names = [f"x{j}" for j in range(arr.ambient_dim + 1)]
    _emit(
        args,
        ser.poly_plain(poly, names),
        ser.poly_latex(poly, names),
        ser.emit_poly(poly),
    )
    return 0


def _cmd_product(args) -> int:
    arr1 = _load_arrangement(args)
    if not args.input2:
        raise ValidationError("--input2 is required for this command")
    arr2 = ser.parse_arrangement(_load_json(args.input2))
    x = _load_element(args, arr1)
    if getattr(args, "element2", None):
        y = ser.parse_os_element(_load_json(args.element2), arr2)
    elif getattr(args, "region2", None):
        region2 = ser.parse_region(_load_json(args.region2), arr2)
        y = osmod.canonical_form_nbc(region2)
    else:
        raise ValidationError("need --element2 or --region2")
    out = osmod.product_form(x, y)
    _emit(
        args,
        ser.os_plain(out),
        ser.os_latex(out),
        _element_payload(out, include_arr=True),
    )
    return 0


def _dlog_plain(x) -> str:
    parts = []
    for a, c in x.linear:
        parts.append(f"{c}*dlog({x.variable}-({a}))")
    for poly, c in x.atoms:
        body = _poly_one_var(list(poly), x.variable)
        parts.append(f"{c}*dlog({body})")
    return " + ".join(parts) if parts else "0"


def _poly_one_var(coeffs: Sequence[Fraction], var: str) -> str:
    terms = []
    degree = len(coeffs) - 1
    for k, c in enumerate(coeffs):
        e = degree - k
        if c == 0:
            continue
        if e == 0:
            terms.append(str(c))
        elif e == 1:
            terms.append(f"{c}*{var}" if c != 1 else var)
        else:
            terms.append(f"{c}*{var}^{e}" if c != 1 else f"{var}^{e}")
    return " + ".join(terms) if terms else "0"


def _cmd_push(args) -> int:
    x = ser.parse_dlog(_load_json(args.input))
    out = osmod.pushforward_power(x, args.power)
    text = _dlog_plain(out)
    _emit(args, text, text, ser.emit_dlog(out))
    return 0


def _cmd_pull(args) -> int:
    x = ser.parse_dlog(_load_json(args.input))
    out = osmod.pullback_power(x, args.power)
    text = _dlog_plain(out)
    _emit(args, text, text, ser.emit_dlog(out))
    return 0


def _cmd_complex(args) -> int:
    strata = ser.parse_strata(_load_json(args.input))
    complex_ = strmod.dual_complex(strata)
    summary = strmod.reduced_homology_dims(complex_)
    top = max(complex_.dims(), default=-1)
    payload = {
        "simplex_counts": [complex_.count(d) for d in range(top + 1)],
        "reduced_homology": list(summary.reduced),
        "euler": summary.euler,
    }
    lines = [
        "reduced homology: [" + ", ".join(str(v) for v in summary.reduced) + "]",
        f"euler: {summary.euler}",
    ]
    text = "\n".join(lines)
    _emit(args, text, text, payload)
    return 0


def _cmd_curve(args) -> int:
    obj = _load_json(args.input)
    if "branches" not in obj or "components" not in obj:
        raise ValidationError("curve input needs 'branches' and 'components'")
    branches = [(b.get("point", f"p{k}"), b["r"]) for k, b in enumerate(obj["branches"])]
    rank = strmod.curve_rank(branches, obj["components"])
    marked = obj.get("marked", 0)
    payload: Dict = {"rank": rank}
    lines = [f"rank: {rank}"]
    if marked:
        relative = strmod.curve_rank_relative(rank, marked)
        payload["relative_rank"] = relative
        lines.append(f"relative rank: {relative}")
    text = "\n".join(lines)
    _emit(args, text, text, payload)
    return 0


def _cmd_genus(args) -> int:
    if args.deltas is not None:
        if args.degree is None:
            raise ValidationError("--degree is required with --deltas")
        deltas = (
            [int(v) for v in args.deltas.split(",") if v.strip()]
            if args.deltas
            else []
        )
        value = strmod.genus_plane_curve(args.degree, deltas)
    elif args.ambient is not None:
        if args.degree is None:
            raise ValidationError("--degree is required with --ambient")
        value = strmod.genus_smooth_hypersurface(args.ambient, args.degree)
    else:
        raise ValidationError("need --deltas (plane curve) or --ambient (hypersurface)")
    _emit(args, str(value), str(value), value)
    return 0


# ---------------------------------------------------------------------------
# the check runner


def _check_poset(arr: Arrangement) -> List[str]:
    poset = arrmod.build_flat_poset(arr)
    for flat in poset.flats:
        below = [g for g in poset.flats if arrmod.FlatPoset.contains(g, flat)]
        total = sum((poset.moebius(g) for g in below), Fraction(0))
        expected = Fraction(1) if flat is poset.zero_hat() else Fraction(0)
        if total != expected:
            raise InternalInvariantError(
                "moebius inversion identity fails at flat "
                f"{sorted(flat.closure_indices)}"
            )
        codim = arr.ambient_dim - flat.dim
        mu = poset.moebius(flat)
        if mu == 0 or (mu > 0) != (codim % 2 == 0):
            raise InternalInvariantError(
                "moebius sign alternation fails at flat "
                f"{sorted(flat.closure_indices)}"
            )
    return [f"PASS poset: {len(poset.flats)} flats, moebius identity and signs"]


def _check_os(arr: Arrangement) -> List[str]:
    lines = []
    top = min(arr.ambient_dim, arr.size)
    for degree in range(1, top + 1):
        relations = osmod.os_relations(arr, degree)
        for rel in relations:
            if not osmod.os_normalize(rel).is_zero():
                raise InternalInvariantError(
                    f"a degree-{degree} relation does not normalize to zero"
                )
        for indices in arrmod.nbc_sets(arr, degree):
            x = OSElement.monomial(arr, indices)
            if osmod.os_normalize(x) != x:
                raise InternalInvariantError(
                    f"nbc monomial {list(indices)} moved under normalization"
                )
        lines.append(
            f"PASS os degree {degree}: {len(relations)} relations vanish, "
            f"{len(arrmod.nbc_sets(arr, degree))} basis monomials fixed"
        )
    return lines


def _check_regions(arr: Arrangement) -> List[str]:
    found = arrmod.bounded_regions(arr)
    coeffs = arrmod.characteristic_polynomial(arr)
    expected = abs(arrmod.evaluate_poly_coeffs(coeffs, Fraction(1)))
    if len(found) != expected:
        raise InternalInvariantError(
            f"bounded region count {len(found)} disagrees with the "
            f"characteristic polynomial value {expected}"
        )
    lines = [
        f"PASS regions: {len(found)} bounded regions match the "
        "characteristic polynomial"
    ]
    n = arr.ambient_dim
    for sv in found[:2]:
        region = regmod.Region(arr, sv.entries, sv.witness, 1)
        element = osmod.canonical_form_nbc(region)
        if element.is_zero():
            raise InternalInvariantError(
                "canonical form of a bounded region is zero"
            )
        for indices, value in osmod.corner_residues(element).entries:
            walk = regmod.iterated_boundary(region, indices)
            if walk != value:
                raise InternalInvariantError(
                    "corner residues disagree with iterated boundaries at "
                    f"{list(indices)}"
                )
        lines.append(
            f"PASS regions: residues of one canonical form match all "
            f"{len(arrmod.nbc_sets(arr, n))} boundary walks"
        )
    return lines


def _check_serialize(arr: Arrangement, path: str) -> List[str]:
    first = ser.canonical_json(ser.emit_arrangement(arr))
    again = ser.canonical_json(
        ser.emit_arrangement(ser.parse_arrangement(json.loads(first)))
    )
    if first != again:
        raise InternalInvariantError("arrangement JSON round-trip is not stable")
    if arr.size:
        x = OSElement.monomial(arr, (1,)).scale(Fraction(-3, 7))
        emitted = ser.canonical_json(ser.emit_os_element(x))
        back = ser.parse_os_element(json.loads(emitted), arr)
        if ser.canonical_json(ser.emit_os_element(back)) != emitted:
            raise InternalInvariantError("element JSON round-trip is not stable")
    return [f"PASS serialize: canonical JSON round-trip on {path}"]


def _cmd_check(args) -> int:
    arr = _load_arrangement(args)
    suites = (
        ["poset", "os", "regions", "serialize"]
        if args.suite == "all"
        else [args.suite]
    )
    lines: List[str] = []
    for suite in suites:
        if suite == "poset":
            lines += _check_poset(arr)
        elif suite == "os":
            lines += _check_os(arr)
        elif suite == "regions":
            if arr.infinity_mode != GENERIC:
                lines.append("SKIP regions: needs generic infinity mode")
                continue
            violation = arrmod.genericity_violation(arr)
            if violation is not None:
                lines.append(
                    "SKIP regions: arrangement is not generic at "
                    f"{sorted(violation)}"
                )
                continue
            lines += _check_regions(arr)
        elif suite == "serialize":
            lines += _check_serialize(arr, args.input)
    print("\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canforms",
        description="Exact calculator for hyperplane arrangements, their "
        "region forms, and stratified boundary invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--format", choices=("plain", "latex", "json"), default="plain")
        return p

    def with_arrangement(p):
        p.add_argument("--input", help="arrangement JSON file")
        p.add_argument("--order", help="permutation of 1..N, e.g. 3,1,2")
        return p

    for name, handler, text in (
        ("poset", _cmd_poset, "intersection poset with Moebius values"),
        ("moebius", _cmd_moebius, "Moebius value of the top flat"),
        ("rank", _cmd_rank, "combinatorial rank"),
        ("circuits", _cmd_circuits, "minimal dependent intersecting sets"),
        ("regions", _cmd_regions, "bounded regions with witness points"),
    ):
        with_arrangement(add(name, handler, help=text))

    p = with_arrangement(add("nbc", _cmd_nbc, help="no-broken-circuit sets"))
    p.add_argument("--degree", type=int, help="set size (default: ambient dim)")

    p = with_arrangement(
        add("canonical", _cmd_canonical, help="canonical form of a region")
    )
    p.add_argument("--region", help="region JSON file")
    p.add_argument("--method", choices=("nbc", "polygon", "simple"), default="nbc")
    p.add_argument("--ccw", help="polygon side order, comma-separated")
    p.add_argument(
        "--rational", action="store_true", help="emit as a rational form"
    )

    for name, handler, text in (
        ("residue", _cmd_residue, "residue along one hyperplane"),
        ("corners", _cmd_corners, "iterated corner residues"),
        ("adjoint", _cmd_adjoint, "adjoint polynomial of a form"),
    ):
        p = with_arrangement(add(name, handler, help=text))
        p.add_argument("--element", help="element JSON file")
        p.add_argument("--region", help="region JSON file")
        if name == "residue":
            p.add_argument("--index", type=int, help="1-based hyperplane index")

    p = with_arrangement(add("product", _cmd_product, help="exterior product"))
    p.add_argument("--element", help="left element JSON file")
    p.add_argument("--region", help="left region JSON file")
    p.add_argument("--input2", help="right arrangement JSON file")
    p.add_argument("--element2", help="right element JSON file")
    p.add_argument("--region2", help="right region JSON file")

    for name, handler, text in (
        ("push", _cmd_push, "trace along z = w^N"),
        ("pull", _cmd_pull, "pullback along z = w^N"),
    ):
        p = add(name, handler, help=text)
        p.add_argument("--input", help="dlog combination JSON file")
        p.add_argument("--power", type=int, required=True)

    p = add("complex", _cmd_complex, help="dual complex homology of strata")
    p.add_argument("--input", help="strata JSON file")

    p = add("curve", _cmd_curve, help="rank of a nodal curve pair")
    p.add_argument("--input", help="curve JSON file")

    p = add("genus", _cmd_genus, help="genus calculators")
    p.add_argument("--degree", type=int)
    p.add_argument("--deltas", help="delta invariants, comma-separated")
    p.add_argument("--ambient", type=int, help="projective ambient dimension")

    p = with_arrangement(add("check", _cmd_check, help="run invariant suites"))
    p.add_argument(
        "--suite",
        choices=("all", "poset", "os", "regions", "serialize"),
        default="all",
    )
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except CanformsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 1 if code else 0
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
