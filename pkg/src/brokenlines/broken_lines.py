"""
Broken lines and theta functions in rank-2 diagrams.

Lines are found by tracing backwards from the endpoint: every final
exponent has the form m₀ + p̃*(e, 0), and each backward wall hit either
passes or undoes a bend by a multiple of the wall exponent.
"""
import os
import sys
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from algebra.lattice import DoubledForm, dot, is_zero
from algebra.laurent import LaurentPoly, Monomial
from algebra.series import n_degree
from scattering.geometry import (check_generic, cross, format_point, generic_representative,
                                 ray_hit, same_direction)
from scattering.walls import Ray, ScatteringDiagram, func_power, crossing_sign, wall_cross
from utils.errors import (DimensionError, GenericPositionError,
                          NonTransversalError, ScatteringLabError)
from utils.logger import setup_logger

logger = setup_logger("BrokenLineEngine")


@dataclass(frozen=True)
class Segment:
    """
    One linear piece of a broken line. `start` is the bend point where the
    piece begins (None for the unbounded initial piece), `ray` the wall
    bent on and `multiple` the power of its exponent picked up there.
    """
    monomial: Monomial
    start: Optional[tuple] = None
    ray: Optional[Ray] = None
    multiple: int = 0

    @property
    def direction(self):
        m = self.monomial.m_part
        return tuple(-x for x in m)


@dataclass(frozen=True)
class BrokenLine:
    initial_exponent: tuple
    endpoint: tuple
    segments: tuple

    @property
    def final_monomial(self) -> Monomial:
        return self.segments[-1].monomial

    @property
    def bends(self):
        return [s for s in self.segments[1:]]

    def signature(self):
        return (self.final_monomial.exponent,
                tuple((s.ray.direction, s.multiple, s.start) for s in self.bends))

    def describe(self):
        parts = [f"start z^{self.initial_exponent}"]
        for s in self.bends:
            parts.append(f"bend on {s.ray.direction} at ({format_point(s.start)}) "
                         f"x{s.multiple} -> {s.monomial.coeff} z^{s.monomial.exponent}")
        return "; ".join(parts)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = "ok"

    def __bool__(self):
        return self.ok


@dataclass
class ThetaResult:
    value: LaurentPoly
    lines: list = field(default_factory=list)
    order: int = 0


def _passes_origin(point, direction):
    return cross(point, direction) == 0 and dot(point, direction) < 0


def validate_broken_line(line: BrokenLine, diagram: ScatteringDiagram) -> Verdict:
    """Check geometry and monomial choices; never raises."""
    try:
        return _validate(line, diagram)
    except ScatteringLabError as e:
        return Verdict(False, str(e))


def _validate(line, diagram):
    if not line.segments:
        return Verdict(False, "no segments")
    first = line.segments[0]
    if first.start is not None or first.monomial.exponent != tuple(line.initial_exponent) \
            or first.monomial.coeff != 1:
        return Verdict(False, "first segment must carry z^m0 with coefficient 1")
    check_generic(line.endpoint, diagram)
    rank = diagram.rank

    ends = [s.start for s in line.segments[1:]] + [line.endpoint]
    for i, (segment, end) in enumerate(zip(line.segments, ends)):
        m = segment.monomial.m_part
        if is_zero(m):
            return Verdict(False, f"segment {i} has zero direction")
        if segment.start is None:
            if i:
                return Verdict(False, f"segment {i} has no bend point")
            continue
        offset = tuple(a - b for a, b in zip(segment.start, end))
        if cross(offset, m) != 0 or dot(offset, m) <= 0:
            return Verdict(False, f"segment {i} does not run along −m towards its end")

    for i in range(1, len(line.segments)):
        prev, seg = line.segments[i - 1], line.segments[i]
        if seg.ray is None:
            return Verdict(False, f"bend {i} has no wall")
        if not same_direction(seg.start, seg.ray.direction):
            return Verdict(False, f"bend {i} at ({format_point(seg.start)}) is not on a wall")
        if diagram.ray(seg.ray.direction) is None:
            return Verdict(False, f"bend {i} uses a ray outside the diagram")
        velocity = prev.direction
        sign = crossing_sign(velocity, seg.ray)
        image = wall_cross(prev.monomial, seg.ray, sign, order=diagram.order)
        exponent = seg.monomial.exponent
        if exponent == prev.monomial.exponent or image.coefficient(exponent) != seg.monomial.coeff:
            return Verdict(False, f"bend {i} does not pick a term of the wall crossing")
        if n_degree(exponent, rank) - n_degree(line.initial_exponent, rank) > diagram.order:
            return Verdict(False, f"bend {i} exceeds the diagram order")
    return Verdict(True)


class BrokenLineEngine:

    def __init__(self, diagram: ScatteringDiagram):
        if diagram.rank != 2:
            raise DimensionError("broken lines are traced in rank-2 diagrams")
        self.diagram = diagram
        self.form = diagram.form
        self.doubled = DoubledForm(diagram.form)
        self.rays = diagram.rays()

    def enumerate(self, m0, endpoint, order=None, final_m=None):
        m0 = tuple(int(x) for x in m0)
        if len(m0) != 4:
            raise DimensionError(f"initial exponent {m0} must have 4 entries")
        if is_zero(m0[:2]):
            raise DimensionError("initial exponent needs a nonzero M-part")
        order = self.diagram.order if order is None else order
        if order > self.diagram.order:
            raise DimensionError(f"order {order} exceeds the diagram order {self.diagram.order}")
        endpoint = tuple(endpoint)
        check_generic(endpoint, self.diagram)

        finals = []
        for e in product(range(order + 1), repeat=2):
            if sum(e) > order:
                continue
            final = tuple(x + y for x, y in zip(m0, self.doubled.wall_exponent(e)))
            if final_m is not None and final[:2] != tuple(final_m):
                continue
            finals.append((e, final))
        # theta is constant on the chamber, so trace from a representative
        # whose final segments all miss the origin
        traced_from = generic_representative(endpoint, self.diagram, [f[:2] for _, f in finals])
        if traced_from != endpoint:
            logger.debug("Endpoint (%s) is aligned with a final exponent; tracing from (%s)",
                         format_point(endpoint), format_point(traced_from))

        lines = []
        for e, final in finals:
            self._trace(m0, final, traced_from, None, e, [], traced_from, lines)
        lines.sort(key=lambda bl: bl.signature())
        logger.info("m0=%s at (%s): %d broken lines up to order %d",
                    m0, format_point(endpoint), len(lines), order)
        return lines

    def _backward_hits(self, point, m, exclude=None):
        if _passes_origin(point, m):
            raise GenericPositionError(
                f"a segment through ({format_point(point)}) with direction {m} meets the origin")
        hits = []
        for ray in self.rays:
            if exclude is not None and ray.direction == exclude:
                continue
            try:
                hit = ray_hit(point, m, ray.direction)
            except NonTransversalError:
                continue
            if hit is None:
                continue
            s, t = hit
            if s > 0 and t > 0:
                hits.append((s, ray))
        hits.sort(key=lambda h: h[0])
        return hits

    def _trace(self, m0, m, point, on_ray, remaining, later, endpoint, out):
        """
        Trace backwards from `point` along +m. `later` holds the bends already
        undone, nearest to the initial segment first.
        """
        m_part = m[:2]
        if is_zero(m_part):
            return
        exclude = on_ray.direction if on_ray is not None else None
        hits = self._backward_hits(point, m_part, exclude=exclude)
        if is_zero(remaining):
            if m == m0:
                out.append(self._assemble(m0, endpoint, later))
            return
        for s, ray in hits:
            bend_point = (point[0] + s * m_part[0], point[1] + s * m_part[1])
            pairing = abs(dot(m_part, ray.normal))
            y = self.doubled.wall_exponent(ray.normal)
            power = func_power(ray.func, pairing, ray.func.order)
            j = 1
            while all(j * x <= r for x, r in zip(ray.normal, remaining)):
                coeff = power.coefficient(tuple(j * x for x in y))
                if coeff:
                    previous = tuple(a - j * b for a, b in zip(m, y))
                    rest = tuple(r - j * x for r, x in zip(remaining, ray.normal))
                    bend = (bend_point, ray, j, coeff, m)
                    self._trace(m0, previous, bend_point, ray, rest, [bend] + later, endpoint, out)
                j += 1

    @staticmethod
    def _assemble(m0, endpoint, bends):
        segments = [Segment(Monomial(1, m0))]
        coeff = 1
        for bend_point, ray, j, c, m_after in bends:
            coeff *= c
            segments.append(Segment(Monomial(coeff, m_after), bend_point, ray, j))
        return BrokenLine(m0, endpoint, tuple(segments))

    def theta(self, m0, endpoint, order=None, final_m=None) -> ThetaResult:
        order = self.diagram.order if order is None else order
        lines = self.enumerate(m0, endpoint, order, final_m)
        terms = {}
        for line in lines:
            mono = line.final_monomial
            terms[mono.exponent] = terms.get(mono.exponent, 0) + mono.coeff
        return ThetaResult(LaurentPoly(2, terms), lines, order)


def enumerate_broken_lines(m0, endpoint, diagram: ScatteringDiagram, order=None, final_m=None):
    return BrokenLineEngine(diagram).enumerate(m0, endpoint, order, final_m)


def theta_function(m0, endpoint, diagram: ScatteringDiagram, order=None) -> ThetaResult:
    return BrokenLineEngine(diagram).theta(m0, endpoint, order)


def restrict_to_A(result) -> LaurentPoly:
    """X_i := 1."""
    value = result.value if isinstance(result, ThetaResult) else result
    return value.substitute_ones("X")


# ── Quick test ──────────────────────────────────────────────────
if __name__ == "__main__":
    from fractions import Fraction
    from scattering.rank2 import ScatteringEngine

    diagram = ScatteringEngine(b=2, order=4).complete()
    result = theta_function((1, -1, 0, 0), (Fraction(3, 2), Fraction(1)), diagram)
    print(result.value.to_text())
    for bl in result.lines:
        print("  ", bl.describe())
