"""
Exact plane geometry for rank-2 diagrams: rational points, angular order
of rays around the origin, and crossing paths (polylines or arcs).
"""
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from scattering.walls import crossing_sign
from utils.errors import (GenericPositionError, InvalidPathError,
                          NonTransversalError, SchemaError)


def parse_rational(text) -> Fraction:
    """`p/q` or a decimal literal, parsed exactly."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"not a rational number: {text!r}") from e


def parse_point(text, dim=None):
    parts = [p for p in str(text).split(",") if p.strip()]
    point = tuple(parse_rational(p) for p in parts)
    if dim is not None and len(point) != dim:
        raise SchemaError(f"expected {dim} coordinates, got {text!r}")
    return point


def format_point(point):
    return ",".join(str(x) for x in point)


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def rot90(v):
    return (-v[1], v[0])


def _half(v):
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def compare_angles(a, b):
    """Order of directions by angle in [0, 2π)."""
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


angle_key = cmp_to_key(compare_angles)


def same_direction(a, b):
    return cross(a, b) == 0 and (a[0] * b[0] + a[1] * b[1]) > 0


def strictly_between_ccw(v, start, end):
    """v lies strictly inside the counter-clockwise arc from start to end."""
    if same_direction(v, start) or same_direction(v, end):
        return False
    if same_direction(start, end):
        return True

    def rel(u):
        c = compare_angles(u, start)
        return (0 if c >= 0 else 1, angle_key(u))

    return rel(v) < rel(end)


def on_ray(point, direction):
    return same_direction(point, direction)


def check_generic(point, diagram):
    """Raise GenericPositionError when point is the origin or lies on a ray."""
    if point[0] == 0 and point[1] == 0:
        raise GenericPositionError("the origin is the singular locus of every diagram")
    for ray in diagram.rays():
        if on_ray(point, ray.direction):
            raise GenericPositionError(
                f"point ({format_point(point)}) lies on the ray {ray.direction}")


def generic_representative(point, diagram, directions):
    """
    A point of the same chamber from which no backward trace along one of
    `directions` runs into the origin. Returns `point` itself when it
    already qualifies; otherwise rotates it counter-clockwise by a shrinking
    step until the trace misses the origin and no ray is swept over.
    """
    check_generic(point, diagram)
    rays = [r.direction for r in diagram.rays()]
    directions = {tuple(d) for d in directions if d[0] or d[1]}

    def aimed_at_origin(p):
        behind = (-p[0], -p[1])
        return any(same_direction(d, behind) for d in directions)

    if not aimed_at_origin(point):
        return point
    step = Fraction(1, 8)
    for _ in range(64):
        nudged = (point[0] - step * point[1], point[1] + step * point[0])
        if not any(strictly_between_ccw(r, point, nudged) or on_ray(nudged, r) for r in rays) \
                and not aimed_at_origin(nudged):
            return nudged
        step /= 2
    raise GenericPositionError(f"no generic point near ({format_point(point)})")


def ray_hit(point, direction, ray):
    """
    Parameters (s, t) with point + s·direction = t·ray, or None if parallel.
    Raises NonTransversalError when the path runs inside the ray's line.
    """
    det = -direction[0] * ray[1] + ray[0] * direction[1]
    if det == 0:
        if cross(point, ray) == 0:
            raise NonTransversalError(f"path runs along the line of ray {ray}")
        return None
    bx, by = -point[0], -point[1]
    s = Fraction(bx * -ray[1] + ray[0] * by, det)
    t = Fraction(direction[0] * by - bx * direction[1], det)
    return s, t


@dataclass(frozen=True)
class Crossing:
    ray: object
    sign: int
    point: tuple


@dataclass(frozen=True)
class CrossingPath:
    """
    A rank-2 path. kind='polyline' walks straight segments between
    waypoints; kind='arc' sweeps angularly from the direction of the first
    waypoint to that of the last (ccw or clockwise).
    """
    waypoints: tuple
    kind: str = "polyline"
    ccw: bool = True

    @classmethod
    def polyline(cls, *points):
        return cls(tuple(tuple(Fraction(x) for x in p) for p in points), "polyline")

    @classmethod
    def arc(cls, start, end, ccw=True):
        return cls((tuple(Fraction(x) for x in start), tuple(Fraction(x) for x in end)), "arc", ccw)

    @classmethod
    def arc_avoiding(cls, start, end, avoid=(1, -1)):
        """The arc from start to end whose interior misses the direction `avoid`."""
        ccw = not strictly_between_ccw(avoid, start, end)
        return cls.arc(start, end, ccw)

    @property
    def start(self):
        return self.waypoints[0]

    @property
    def end(self):
        return self.waypoints[-1]

    def reversed(self):
        return CrossingPath(tuple(reversed(self.waypoints)), self.kind, not self.ccw)

    def crossings(self, diagram, start_on_wall=False):
        """
        Ordered wall crossings with signs. Endpoints must avoid every ray;
        an arc may start on a ray when start_on_wall is set, and that ray
        is then not crossed.
        """
        if self.kind == "arc":
            return self._arc_crossings(diagram, start_on_wall)
        return self._polyline_crossings(diagram)

    def _arc_crossings(self, diagram, start_on_wall):
        start, end = self.start, self.end
        if not start_on_wall:
            check_generic(start, diagram)
        check_generic(end, diagram)
        if self.ccw:
            inside = [r for r in diagram.rays() if strictly_between_ccw(r.direction, start, end)]
        else:
            inside = [r for r in diagram.rays() if strictly_between_ccw(r.direction, end, start)]

        def sweep_key(r):
            return (0 if compare_angles(r.direction, start) >= 0 else 1, angle_key(r.direction))

        inside.sort(key=sweep_key, reverse=not self.ccw)
        result = []
        for r in inside:
            velocity = rot90(r.direction)
            if not self.ccw:
                velocity = (-velocity[0], -velocity[1])
            result.append(Crossing(r, crossing_sign(velocity, r), r.direction))
        return result

    def _polyline_crossings(self, diagram):
        if len(self.waypoints) < 2:
            return []
        check_generic(self.start, diagram)
        check_generic(self.end, diagram)
        rays = diagram.rays()
        result = []
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            velocity = (b[0] - a[0], b[1] - a[1])
            if velocity == (0, 0):
                continue
            hits = []
            for r in rays:
                hit = ray_hit(a, velocity, r.direction)
                if hit is None:
                    continue
                s, t = hit
                if s <= 0 or s > 1 or t < 0:
                    continue
                if t == 0:
                    raise InvalidPathError("path passes through the origin")
                if s == 1:
                    raise InvalidPathError(
                        f"waypoint ({format_point(b)}) lies on the ray {r.direction}")
                hits.append((s, r))
            hits.sort(key=lambda h: h[0])
            for s, r in hits:
                point = (a[0] + s * velocity[0], a[1] + s * velocity[1])
                result.append(Crossing(r, crossing_sign(velocity, r), point))
        return result
