"""
Rank-2 scattering: consistent completion degree by degree, loop
defects and path-ordered products.
"""
import os
import sys
from dataclasses import dataclass

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from algebra.lattice import DoubledForm, SkewForm, primitive, unit
from algebra.laurent import LaurentPoly
from algebra.series import GradedSeries, n_degree
from cluster.seed import Seed
from config import settings
from scattering.geometry import CrossingPath, rot90
from scattering.walls import (ScatteringDiagram, Wall, apply_crossing,
                              crossing_sign, initial_diagram)
from utils.errors import DimensionError, ScatteringError
from utils.logger import setup_logger

logger = setup_logger("ScatteringEngine")


@dataclass(frozen=True)
class PathAutomorphism:
    """p_γ truncated at `order` degrees above the input's base degree."""
    steps: tuple
    order: int

    def apply(self, poly: LaurentPoly, base_degree=None):
        if poly.is_zero():
            return poly
        if base_degree is None:
            base_degree = min(n_degree(e, poly.rank) for e in poly.exponents())
        limit = base_degree + self.order
        for ray, sign in self.steps:
            poly = apply_crossing(poly, ray.func, ray.normal, sign, limit)
        return poly

    __call__ = apply

    def then(self, other):
        return PathAutomorphism(self.steps + other.steps, min(self.order, other.order))


def path_ordered_product(path: CrossingPath, diagram: ScatteringDiagram,
                         start_on_wall=False) -> PathAutomorphism:
    crossings = path.crossings(diagram, start_on_wall=start_on_wall)
    return PathAutomorphism(tuple((c.ray, c.sign) for c in crossings), diagram.order)


def loop_automorphism(diagram: ScatteringDiagram, order=None) -> PathAutomorphism:
    """Counter-clockwise loop starting just below the positive x-axis."""
    steps = []
    for ray in diagram.rays():
        steps.append((ray, crossing_sign(rot90(ray.direction), ray)))
    return PathAutomorphism(tuple(steps), diagram.order if order is None else order)


def loop_defect(diagram: ScatteringDiagram, degree):
    """{i: degree-`degree` part of p_loop(A_i)}, read relative to A_i."""
    rank = diagram.rank
    loop = loop_automorphism(diagram, degree)
    defect = {}
    for i in range(1, rank + 1):
        image = loop.apply(LaurentPoly.a_var(rank, i), base_degree=0)
        defect[i] = LaurentPoly(rank, {e: c for e, c in image.items()
                                       if n_degree(e, rank) == degree})
    return defect


def is_consistent(diagram: ScatteringDiagram, order=None):
    """The loop acts trivially on every A_i up to `order`."""
    order = diagram.order if order is None else order
    loop = loop_automorphism(diagram, order)
    return all(loop.apply(LaurentPoly.a_var(diagram.rank, i), base_degree=0)
               == LaurentPoly.a_var(diagram.rank, i)
               for i in range(1, diagram.rank + 1))


def in_cluster_complex(b, m):
    """m lies outside the closed cone {x > 0, y < 0, x² + bxy + y² ≤ 0}."""
    x, y = m
    return not (x > 0 and y < 0 and x * x + b * x * y + y * y <= 0)


class ScatteringEngine:

    def __init__(self, b=None, order=None):
        self.b = settings.DEFAULT_B if b is None else b
        self.order = settings.DEFAULT_ORDER if order is None else order
        if self.order < 1:
            raise DimensionError(f"order must be >= 1, got {self.order}")
        self.form = SkewForm.rank2(self.b)
        self.doubled = DoubledForm(self.form)

    def initial(self) -> ScatteringDiagram:
        return initial_diagram(Seed.rank2(self.b), self.order)

    def complete(self, diagram: ScatteringDiagram = None) -> ScatteringDiagram:
        diagram = diagram or self.initial()
        if diagram.rank != 2:
            raise DimensionError("completion is only implemented in rank 2")
        k = diagram.order
        completed = ScatteringDiagram(diagram.form, k, list(diagram.walls), diagram.seed)
        for degree in range(1, k + 1):
            defect = loop_defect(completed, degree)
            corrections = self._corrections(defect, degree)
            for n, c in sorted(corrections.items()):
                completed.add_wall(self._outgoing_wall(n, c, k))
            logger.debug("degree %d: %d new factors", degree, len(corrections))
        logger.info("Completed b=%d diagram to order %d: %d rays",
                    self.b, k, len(completed.rays()))
        return completed

    def _corrections(self, defect, degree):
        """Factor exponents c_n for the primitive-normal factors (1 + c_n z^{p̃*(n,0)})."""
        rank = 2
        found = {}
        for i, part in defect.items():
            for exponent, coeff in part.items():
                n = exponent[rank:]
                expected = tuple(x + y for x, y in zip(unit(rank, i), self.form.p_star(n)))
                if exponent[:rank] != expected:
                    raise ScatteringError(f"defect term {exponent} is not A_{i} · z^p̃*(n,0)")
                n_prim, _ = primitive(n)
                if n_prim[i - 1] == 0:
                    raise ScatteringError(f"defect on A_{i} along normal {n_prim} with zero pairing")
                if coeff % n_prim[i - 1]:
                    raise ScatteringError(f"non-integral wall coefficient at degree {degree}")
                c = coeff // n_prim[i - 1]
                if found.setdefault(n, c) != c:
                    raise ScatteringError(f"A_1 and A_2 disagree on the wall for {n}")
        return found

    def _outgoing_wall(self, n, c, order):
        n_prim, _ = primitive(n)
        direction = primitive(tuple(-x for x in self.form.p_star(n)))[0]
        func = GradedSeries.binomial(self.doubled.wall_exponent(n), order, c)
        return Wall(n_prim, func, self.form, generators=(direction,))


def complete_rank2(diagram: ScatteringDiagram, order=None) -> ScatteringDiagram:
    b = diagram.form.matrix[0][1]
    order = diagram.order if order is None else order
    if order != diagram.order:
        diagram = ScatteringDiagram(diagram.form, order,
                                    [w.with_func(w.func.truncate(order)) for w in diagram.walls],
                                    diagram.seed)
    return ScatteringEngine(b, order).complete(diagram)


# ── Quick test ──────────────────────────────────────────────────
if __name__ == "__main__":
    d = ScatteringEngine(b=1, order=4).complete()
    for r in d.rays():
        print(r.direction, r.func.to_poly().to_text())
    print("consistent:", is_consistent(d))
