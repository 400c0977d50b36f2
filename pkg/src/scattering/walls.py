"""
Walls, scattering diagrams and the wall-crossing automorphism
z^m ↦ z^m f^{⟨m, n₀⟩}.

A wall carries a primitive normal n ∈ N⁺, a function in z^{p̃*(n,0)} and
its support. The support is the whole hyperplane n^⊥ when `generators`
is empty, otherwise the cone spanned by the generators (a ray in rank 2).
"""
import os
import sys
from dataclasses import dataclass, field
from functools import lru_cache

import sympy

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from algebra.lattice import DoubledForm, SkewForm, dot, in_positive_cone, primitive
from algebra.laurent import LaurentPoly, Monomial
from algebra.series import GradedSeries, n_degree
from utils.errors import DimensionError, NonTransversalError, ScatteringError
from utils.logger import setup_logger

logger = setup_logger("WallCrossing")

POSITIVE = 1
NEGATIVE = -1


@dataclass(frozen=True)
class Wall:
    normal: tuple
    func: GradedSeries
    form: SkewForm
    generators: tuple = ()

    def __post_init__(self):
        normal = tuple(self.normal)
        if not in_positive_cone(normal) or primitive(normal)[1] != 1:
            raise DimensionError(f"wall normal {normal} must be primitive and in N⁺")
        if self.func.constant_term() != 1:
            raise ScatteringError(f"wall function for {normal} has constant term {self.func.constant_term()}")
        for g in self.generators:
            if dot(g, normal) != 0:
                raise DimensionError(f"support generator {g} is not in {normal}^⊥")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))

    @property
    def rank(self):
        return self.form.rank

    @property
    def exponent(self):
        """p̃*(n, 0): the monomial the wall function is a series in."""
        return DoubledForm(self.form).wall_exponent(self.normal)

    @property
    def direction(self):
        """Primitive ray direction of a rank-2 ray wall, None for a full line."""
        if self.rank != 2 or len(self.generators) != 1:
            return None
        return primitive(self.generators[0])[0]

    def directions(self):
        """Rank 2: the one or two rays making up the support."""
        if self.rank != 2:
            raise DimensionError("ray directions only exist in rank 2")
        if self.generators:
            return [self.direction]
        n1, n2 = self.normal
        ray = primitive((n2, -n1))[0]
        return [ray, tuple(-x for x in ray)]

    def contains(self, m):
        """m ∈ support (closed cone)."""
        if dot(m, self.normal) != 0:
            return False
        if not self.generators:
            return True
        if all(x == 0 for x in m):
            return True
        cols = sympy.Matrix([list(g) for g in self.generators]).T
        try:
            solution, params = cols.gauss_jordan_solve(sympy.Matrix(list(m)))
        except ValueError:
            return False
        if params.shape[0]:
            solution = solution.subs({p: 0 for p in params})
        return all(x >= 0 for x in solution)

    @property
    def is_incoming(self):
        return self.contains(self.form.p_star(self.normal))

    def with_func(self, func):
        return Wall(self.normal, func, self.form, self.generators)


@dataclass(frozen=True)
class Ray:
    """All rank-2 walls sharing one direction, functions multiplied."""
    direction: tuple
    normal: tuple
    func: GradedSeries
    form: SkewForm
    incoming: bool


@dataclass
class ScatteringDiagram:
    form: SkewForm
    order: int
    walls: list = field(default_factory=list)
    seed: object = None
    chambers: list = field(default_factory=list)

    @property
    def rank(self):
        return self.form.rank

    def add_wall(self, wall: Wall):
        if wall.form != self.form:
            raise DimensionError("wall belongs to a different skew form")
        self.walls.append(wall)

    def rays(self):
        """Rank-2 rays in counter-clockwise order starting at angle 0."""
        from scattering.geometry import angle_key

        merged = {}
        for wall in self.walls:
            incoming = wall.is_incoming
            for direction in wall.directions():
                if direction in merged:
                    ray = merged[direction]
                    merged[direction] = Ray(direction, ray.normal, ray.func * wall.func, self.form,
                                            ray.incoming or incoming)
                else:
                    merged[direction] = Ray(direction, wall.normal, wall.func, self.form, incoming)
        return [merged[d] for d in sorted(merged, key=angle_key)]

    def ray(self, direction):
        direction = primitive(direction)[0]
        for ray in self.rays():
            if ray.direction == direction:
                return ray
        return None

    def __len__(self):
        return len(self.walls)


# ── Construction ─────────────────────────────────────────────────────

def initial_diagram(seed, order) -> ScatteringDiagram:
    """One incoming wall ((e_i,0)^⊥, 1 + z^{p̃*(e_i,0)}) per mutable direction."""
    form = seed.epsilon if hasattr(seed, "epsilon") else seed
    doubled = DoubledForm(form)
    diagram = ScatteringDiagram(form, order, seed=seed)
    for i in range(form.rank):
        normal = tuple(1 if j == i else 0 for j in range(form.rank))
        func = GradedSeries.binomial(doubled.wall_exponent(normal), order)
        diagram.add_wall(Wall(normal, func, form))
    return diagram


# ── Crossing ─────────────────────────────────────────────────────────

def crossing_sign(velocity, wall_or_normal) -> int:
    """+1 when ⟨normal, ·⟩ increases along the path, −1 when it decreases."""
    normal = wall_or_normal.normal if isinstance(wall_or_normal, (Wall, Ray)) else wall_or_normal
    value = dot(normal, velocity)
    if value == 0:
        raise NonTransversalError(f"path runs along the wall with normal {tuple(normal)}")
    return POSITIVE if value > 0 else NEGATIVE


@lru_cache(maxsize=8192)
def func_power(func: GradedSeries, exponent: int, budget: int) -> GradedSeries:
    return func.truncate(budget).power(exponent)


def crossing_exponent(m_part, normal, sign):
    """⟨m, n₀⟩ with n₀ = −sign · normal, so that ⟨n₀, γ′⟩ < 0."""
    return -sign * dot(m_part, normal)


def apply_crossing(poly: LaurentPoly, func, normal, sign, max_degree):
    """Apply one crossing to every term, dropping terms of N-degree above max_degree."""
    rank = poly.rank
    terms = {}
    for exponent, coeff in poly.items():
        degree = n_degree(exponent, rank)
        if degree > max_degree:
            continue
        power = crossing_exponent(exponent[:rank], normal, sign)
        if power == 0:
            terms[exponent] = terms.get(exponent, 0) + coeff
            continue
        factor = func_power(func, power, max_degree - degree)
        for e, c in factor.items():
            shifted = tuple(x + y for x, y in zip(exponent, e))
            terms[shifted] = terms.get(shifted, 0) + coeff * c
    return LaurentPoly(rank, terms)


def wall_cross(mono: Monomial, wall, orientation, order=None) -> LaurentPoly:
    """z^m ↦ z^m f^{⟨m,n₀⟩}, expanded to `order` degrees above the monomial."""
    if orientation not in (POSITIVE, NEGATIVE):
        raise NonTransversalError("crossing orientation must be +1 or -1")
    order = wall.func.order if order is None else order
    rank = len(mono.exponent) // 2
    poly = LaurentPoly(rank, {mono.exponent: mono.coeff})
    return apply_crossing(poly, wall.func, wall.normal, orientation, mono.degree + order)


# ── Positivity ───────────────────────────────────────────────────────

def positive_factorization(wall) -> dict:
    """
    Exponents c_j with f = ∏_j (1 + y^j)^{c_j} to the wall order, y = z^{p̃*(n,0)}.
    """
    func = wall.func
    y = DoubledForm(wall.form).wall_exponent(wall.normal)
    step = sum(wall.normal)
    remaining = func
    exponents = {}
    j = 1
    while j * step <= func.order:
        target = tuple(j * x for x in y)
        c = remaining.coefficient(target)
        if c:
            exponents[j] = c
            factor = GradedSeries.binomial(target, func.order)
            remaining = remaining * factor.power(-c)
        j += 1
    if not remaining.is_one():
        raise ScatteringError(f"function on normal {wall.normal} is not a series in z^{y}")
    return exponents


def check_positivity(diagram: ScatteringDiagram):
    """Raise ScatteringError when some ray function has a negative factor exponent."""
    walls = diagram.rays() if diagram.rank == 2 else diagram.walls
    for wall in walls:
        exponents = positive_factorization(wall)
        negative = {j: c for j, c in exponents.items() if c < 0}
        if negative:
            raise ScatteringError(f"negative factor exponents {negative} on normal {wall.normal}")
    return True
