"""
Walls of the cluster complex in any rank, read off the mutation tree:
chambers are spanned by g-vectors, the facet opposite g_k carries the
normal |c_k| and the function 1 + z^{p̃*(|c_k|,0)}.
"""
import os
import sys

import sympy

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from algebra.lattice import DoubledForm, dot
from algebra.series import GradedSeries
from cluster.seed import Seed, check_tropical_duality, mutation_ball
from config import settings
from quiver.ar_theory import classify_indecomposable, is_predecessor
from quiver.quiver import Quiver
from quiver.representations import direct_sum_spec, indecomposable_spec
from scattering.walls import ScatteringDiagram, Wall
from utils.errors import DimensionError, InconclusiveError, UnsupportedError
from utils.logger import setup_logger

logger = setup_logger("ClusterComplex")


def _abs_normal(c):
    return tuple(-x for x in c) if any(x < 0 for x in c) else tuple(c)


def cluster_complex_diagram(seed: Seed, depth, order=None) -> ScatteringDiagram:
    order = settings.DEFAULT_ORDER if order is None else order
    form = seed.epsilon
    doubled = DoubledForm(form)
    diagram = ScatteringDiagram(form, order, seed=seed)
    seen_walls = set()
    seen_chambers = set()
    for s in mutation_ball(seed, depth):
        if not check_tropical_duality(s):
            raise InconclusiveError(f"Gᵀ C ≠ I after word {s.word}")
        gs = s.g_vectors()
        chamber = frozenset(gs)
        if chamber not in seen_chambers:
            seen_chambers.add(chamber)
            diagram.chambers.append(tuple(sorted(gs)))
        for k in range(1, s.rank + 1):
            normal = _abs_normal(s.c_vector(k))
            facet = tuple(sorted(g for j, g in enumerate(gs) if j != k - 1))
            key = (normal, facet)
            if key in seen_walls:
                continue
            seen_walls.add(key)
            func = GradedSeries.binomial(doubled.wall_exponent(normal), order)
            diagram.add_wall(Wall(normal, func, form, generators=facet))
    logger.info("Cluster complex to depth %d: %d chambers, %d walls",
                depth, len(diagram.chambers), len(diagram.walls))
    return diagram


def chamber_of(diagram: ScatteringDiagram, m):
    """First chamber whose cone contains m, as its generator tuple."""
    for chamber in diagram.chambers:
        if _cone_coefficients(chamber, m) is not None:
            return chamber
    return None


def _cone_coefficients(generators, m):
    G = sympy.Matrix([list(g) for g in generators]).T
    if G.rank() < len(generators):
        raise DimensionError("chamber generators are linearly dependent")
    try:
        solution, params = G.gauss_jordan_solve(sympy.Matrix(list(m)))
    except ValueError:
        return None
    if params.shape[0]:
        return None
    if any(x < 0 for x in solution):
        return None
    return tuple(solution)


def decompose_in_chamber(quiver: Quiver, m, generators):
    """
    Write m = Σ λ_i g_i over the chamber generators and return
    ([(d_i, λ_i)], spec of ⊕ D_i^{λ_i}) where −g(d_i) = g_i.
    """
    coefficients = _cone_coefficients(generators, m)
    if coefficients is None or any(not x.is_integer for x in coefficients):
        raise DimensionError(f"{tuple(m)} is not an integral point of the chamber {generators}")
    parts = []
    for g, lam in zip(generators, coefficients):
        lam = int(lam)
        if not lam:
            continue
        d = quiver.g_to_dim(tuple(-x for x in g))
        if any(x < 0 for x in d):
            raise UnsupportedError(f"generator {g} belongs to a shifted projective, not a module")
        parts.append((d, lam))
    if not parts:
        raise DimensionError("the zero vector has no representation")
    specs = [(indecomposable_spec(quiver, d), lam) for d, lam in parts]
    return parts, direct_sum_spec(specs, rigid=True)


def ar_order_check(w1: Wall, w2: Wall, quiver: Quiver) -> bool:
    """
    Leaving w1 from −p*(c₁) and crossing w2 positively means ⟨−p*(c₁), c₂⟩ < 0;
    then C₂ must precede C₁ in the AR order.
    """
    c1, c2 = w1.normal, w2.normal
    if c1 == c2:
        return True
    pairing = quiver.euler_form(c1, c2) - quiver.euler_form(c2, c1)
    if pairing != -dot(w1.form.p_star(c1), c2):
        raise DimensionError("wall form does not match the quiver's skew form")
    if pairing >= 0:
        return True
    node1 = classify_indecomposable(quiver, c1)
    node2 = classify_indecomposable(quiver, c2)
    if node1.component == "R" and node2.component == "R":
        raise UnsupportedError("AR order between two regular normals is not determined")
    result = is_predecessor(quiver, node2, node1)
    if not result:
        logger.warning("AR order violated: %s does not precede %s", node2.label(), node1.label())
    return result
