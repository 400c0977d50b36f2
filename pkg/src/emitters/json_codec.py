"""
JSON codec for Laurent polynomials, graded series, scattering diagrams and
broken lines. Rationals travel as `p/q` strings; encode → decode → encode
is byte-identical through `dumps`.
"""
import os
import sys
import json

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.insert(0, parent_dir)

from algebra.lattice import SkewForm
from algebra.laurent import LaurentPoly, Monomial
from algebra.series import GradedSeries
from brokenlines.broken_lines import BrokenLine, Segment, ThetaResult
from scattering.geometry import format_point, parse_point
from scattering.walls import ScatteringDiagram, Wall
from utils.errors import SchemaError


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


def _require(payload, *keys):
    if not isinstance(payload, dict):
        raise SchemaError(f"expected a JSON object, got {type(payload).__name__}")
    missing = [k for k in keys if k not in payload]
    if missing:
        raise SchemaError(f"missing keys: {', '.join(missing)}")


def _terms(items):
    return [[list(e), c] for e, c in items]


def _read_terms(payload):
    try:
        return {tuple(int(x) for x in e): int(c) for e, c in payload}
    except (TypeError, ValueError) as e:
        raise SchemaError(f"malformed term list: {e}") from e


# ── Polynomials ──────────────────────────────────────────────────────

def encode_laurent(poly: LaurentPoly):
    return {"rank": poly.rank, "terms": _terms(poly.items()), "text": poly.to_text()}


def decode_laurent(payload) -> LaurentPoly:
    _require(payload, "rank", "terms")
    return LaurentPoly(int(payload["rank"]), _read_terms(payload["terms"]))


def encode_series(series: GradedSeries):
    return {"rank": series.rank, "order": series.order, "terms": _terms(series.items())}


def decode_series(payload) -> GradedSeries:
    _require(payload, "rank", "order", "terms")
    return GradedSeries(int(payload["rank"]), int(payload["order"]), _read_terms(payload["terms"]))


# ── Diagrams ─────────────────────────────────────────────────────────

def encode_wall(wall: Wall):
    return {
        "normal": list(wall.normal),
        "generators": [list(g) for g in wall.generators],
        "func": encode_series(wall.func),
    }


def encode_diagram(diagram: ScatteringDiagram):
    payload = {
        "form": [list(row) for row in diagram.form.matrix],
        "order": diagram.order,
        "walls": [encode_wall(w) for w in diagram.walls],
        "chambers": [[list(g) for g in chamber] for chamber in diagram.chambers],
    }
    if diagram.rank == 2:
        payload["rays"] = [{
            "direction": list(r.direction),
            "normal": list(r.normal),
            "func": r.func.to_poly().to_text(),
            "incoming": r.incoming,
        } for r in diagram.rays()]
    return payload


def decode_diagram(payload) -> ScatteringDiagram:
    """Rebuilds the walls; rays are derived again from them."""
    _require(payload, "form", "order", "walls")
    form = SkewForm(payload["form"])
    walls = []
    for w in payload["walls"]:
        _require(w, "normal", "func")
        walls.append(Wall(tuple(w["normal"]), decode_series(w["func"]), form,
                          tuple(tuple(g) for g in w.get("generators", []))))
    chambers = [tuple(tuple(g) for g in c) for c in payload.get("chambers", [])]
    return ScatteringDiagram(form, int(payload["order"]), walls, chambers=chambers)


# ── Broken lines ─────────────────────────────────────────────────────

def encode_broken_line(line: BrokenLine):
    return {
        "initial_exponent": list(line.initial_exponent),
        "endpoint": format_point(line.endpoint),
        "segments": [{
            "coeff": s.monomial.coeff,
            "exponent": list(s.monomial.exponent),
            "start": format_point(s.start) if s.start is not None else None,
            "ray": list(s.ray.direction) if s.ray is not None else None,
            "multiple": s.multiple,
        } for s in line.segments],
    }


def decode_broken_line(payload, diagram: ScatteringDiagram) -> BrokenLine:
    """Rays are looked up in `diagram` by direction."""
    _require(payload, "initial_exponent", "endpoint", "segments")
    segments = []
    for s in payload["segments"]:
        _require(s, "coeff", "exponent")
        ray = None
        if s.get("ray") is not None:
            ray = diagram.ray(tuple(s["ray"]))
            if ray is None:
                raise SchemaError(f"ray {s['ray']} is not in the diagram")
        start = parse_point(s["start"], 2) if s.get("start") is not None else None
        segments.append(Segment(Monomial(int(s["coeff"]), tuple(s["exponent"])),
                                start, ray, int(s.get("multiple", 0))))
    return BrokenLine(tuple(payload["initial_exponent"]),
                      parse_point(payload["endpoint"], 2), tuple(segments))


def encode_theta(result: ThetaResult):
    return {
        "order": result.order,
        "value": encode_laurent(result.value),
        "lines": [encode_broken_line(bl) for bl in result.lines],
    }
