"""JSON wire formats: exact rationals as strings, divisors and curves as
small dictionaries.

Every rational travels as "p/q" (or "p" when integral) so nothing is ever
rounded.  Readers raise MalformedInputError with the offending field named;
writers produce plain dict/list/str structures ready for json.dumps.
"""

from __future__ import annotations

from fractions import Fraction

from .curve import (INF, CurveFunction, CurvePoint, Divisor,
                    HyperellipticCurve, make_curve, validate_support)
from .errors import MalformedInputError
from .polynomials import Poly


def frac_to_str(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def frac_from_str(s, field: str = "value") -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise MalformedInputError(
            f"expected a rational string, got {s!r}", field=field)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInputError(
            f"cannot parse rational {s!r}: {exc}", field=field) from exc


def poly_to_list(p: Poly) -> list[str]:
    return [frac_to_str(c) for c in p.coeffs]


def poly_from_list(obj, field: str = "poly") -> Poly:
    if not isinstance(obj, list):
        raise MalformedInputError(
            f"expected a coefficient list, got {obj!r}", field=field)
    return Poly([frac_from_str(c, field=f"{field}[{i}]")
                 for i, c in enumerate(obj)])


def curve_to_json(curve: HyperellipticCurve) -> dict:
    return {"f": poly_to_list(curve.f)}


def curve_from_json(obj) -> HyperellipticCurve:
    if not isinstance(obj, dict) or "f" not in obj:
        raise MalformedInputError('curve file needs an "f" coefficient list',
                                  field="f")
    return make_curve(poly_from_list(obj["f"], field="f").coeffs)


def point_to_json(p: CurvePoint) -> dict:
    if p.at_infinity:
        return {"inf": True}
    return {"x": frac_to_str(p.x), "y": frac_to_str(p.y)}


def point_from_json(curve: HyperellipticCurve, obj,
                    field: str = "point") -> CurvePoint:
    if not isinstance(obj, dict):
        raise MalformedInputError(f"expected a point object, got {obj!r}",
                                  field=field)
    if obj.get("inf"):
        return INF
    if "x" not in obj or "y" not in obj:
        raise MalformedInputError('a point needs "x" and "y"', field=field)
    return curve.point(frac_from_str(obj["x"], field=f"{field}.x"),
                       frac_from_str(obj["y"], field=f"{field}.y"))


def divisor_to_json(D: Divisor) -> dict:
    return {
        "inf": D.inf_coeff,
        "affine": [{"x": frac_to_str(p.x), "y": frac_to_str(p.y),
                    "mult": mult} for p, mult in D.affine_items()],
    }


def divisor_from_json(curve: HyperellipticCurve, obj,
                      field: str = "divisor") -> Divisor:
    if not isinstance(obj, dict):
        raise MalformedInputError(f"expected a divisor object, got {obj!r}",
                                  field=field)
    coeffs: list[tuple[CurvePoint, int]] = []
    inf = obj.get("inf", 0)
    if not isinstance(inf, int):
        raise MalformedInputError('"inf" must be an integer',
                                  field=f"{field}.inf")
    if inf:
        coeffs.append((INF, inf))
    entries = obj.get("affine", [])
    if not isinstance(entries, list):
        raise MalformedInputError('"affine" must be a list',
                                  field=f"{field}.affine")
    for i, entry in enumerate(entries):
        here = f"{field}.affine[{i}]"
        if not isinstance(entry, dict):
            raise MalformedInputError("expected a point entry", field=here)
        mult = entry.get("mult", 1)
        if not isinstance(mult, int) or mult == 0:
            raise MalformedInputError('"mult" must be a nonzero integer',
                                      field=f"{here}.mult")
        p = point_from_json(curve, entry, field=here)
        coeffs.append((p, mult))
    D = Divisor(coeffs)
    validate_support(curve, D)
    return D


def pool_from_json(curve: HyperellipticCurve, obj) -> tuple[CurvePoint, ...]:
    if not isinstance(obj, dict) or "points" not in obj:
        raise MalformedInputError('pool file needs a "points" list',
                                  field="points")
    pts = obj["points"]
    if not isinstance(pts, list) or not pts:
        raise MalformedInputError('"points" must be a nonempty list',
                                  field="points")
    return tuple(point_from_json(curve, p, field=f"points[{i}]")
                 for i, p in enumerate(pts))


def pool_to_json(pool) -> dict:
    return {"points": [point_to_json(p) for p in pool]}


def function_to_json(h: CurveFunction) -> dict:
    return {"a": poly_to_list(h.a), "b": poly_to_list(h.b),
            "den": poly_to_list(h.den)}


def function_from_json(curve: HyperellipticCurve, obj,
                       field: str = "phi") -> CurveFunction:
    if not isinstance(obj, dict) or "a" not in obj:
        raise MalformedInputError(
            'a function needs "a" (and optionally "b", "den") coefficient '
            "lists", field=field)
    a = poly_from_list(obj["a"], field=f"{field}.a")
    b = poly_from_list(obj.get("b", []), field=f"{field}.b")
    den = poly_from_list(obj.get("den", ["1"]), field=f"{field}.den")
    if den.is_zero():
        raise MalformedInputError("denominator must be nonzero",
                                  field=f"{field}.den")
    return CurveFunction(curve, a, b, den)


def critical_point_to_json(data) -> dict:
    return {"L1": divisor_to_json(data.L1_rep),
            "L2": divisor_to_json(data.L2_rep),
            "M": divisor_to_json(data.M_rep),
            "phi": function_to_json(data.phi),
            "d": data.d}


def critical_point_from_json(curve: HyperellipticCurve, obj):
    from .resolution import make_critical_point
    if not isinstance(obj, dict):
        raise MalformedInputError("expected a critical-point object",
                                  field="top")
    for key in ("L1", "L2", "M", "phi"):
        if key not in obj:
            raise MalformedInputError(f'critical point needs "{key}"',
                                      field=key)
    return make_critical_point(
        curve,
        divisor_from_json(curve, obj["L1"], field="L1"),
        divisor_from_json(curve, obj["L2"], field="L2"),
        divisor_from_json(curve, obj["M"], field="M"),
        function_from_json(curve, obj["phi"], field="phi"))


def matrix_to_json(rows) -> list[list[str]]:
    return [[frac_to_str(e) for e in row] for row in rows]


def class_to_json(cls) -> list[str]:
    return [frac_to_str(c) for c in cls.coords]


def local_entry_to_json(s):
    """A symbolic scalar: numeric 0 when zero, else its string form."""
    return 0 if s.is_zero() else str(s)


def local_matrix_to_json(m) -> list[list]:
    return [[local_entry_to_json(e) for e in row] for row in m.rows]


def chain_to_json(chain) -> dict:
    steps = []
    for x, data in chain.steps:
        steps.append({
            "witness": divisor_to_json(x.witness),
            "class": class_to_json(x.cls),
            "phase": None if x.phase is None else frac_to_str(x.phase),
            "critical_d": data.d,
        })
    return {"top_d": chain.top.d, "steps": steps}
