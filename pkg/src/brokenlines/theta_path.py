"""
Theta functions as path-ordered transports of a single monomial:
ϑ_{Q,m} = p_γ(z^m) for m in a cluster-complex chamber, γ running from
that chamber to Q.
"""
import os
import sys

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from algebra.lattice import DoubledForm, is_zero
from algebra.laurent import LaurentPoly
from algebra.series import GradedSeries, n_degree
from cluster.seed import Seed, mutate_seed
from config import settings
from scattering.geometry import CrossingPath
from scattering.rank2 import in_cluster_complex, path_ordered_product
from scattering.walls import ScatteringDiagram, apply_crossing
from utils.errors import MutationIndexError, UnsupportedError
from utils.logger import setup_logger

logger = setup_logger("ThetaTransport")

BADLANDS_DIRECTION = (1, -1)


def theta_via_path(m0, endpoint, diagram: ScatteringDiagram) -> LaurentPoly:
    m0 = tuple(int(x) for x in m0)
    b = diagram.form.matrix[0][1]
    start = m0[:2]
    monomial = LaurentPoly.monomial(m0)
    if is_zero(start):
        return monomial
    if not in_cluster_complex(b, start):
        raise UnsupportedError(f"{start} lies outside the cluster complex for b={b}")
    path = CrossingPath.arc_avoiding(start, tuple(endpoint), avoid=BADLANDS_DIRECTION)
    transport = path_ordered_product(path, diagram, start_on_wall=True)
    logger.debug("theta_via_path m0=%s: %d crossings", m0, len(transport.steps))
    return transport.apply(monomial, base_degree=n_degree(m0, 2))


def transport_theta(theta: LaurentPoly, start, end, diagram: ScatteringDiagram,
                    base_degree=None) -> LaurentPoly:
    """p_γ(ϑ) along the arc from start to end that avoids the badlands direction."""
    path = CrossingPath.arc_avoiding(tuple(start), tuple(end), avoid=BADLANDS_DIRECTION)
    return path_ordered_product(path, diagram).apply(theta, base_degree)


def theta_via_mutation_path(seed: Seed, word, idx, order=None) -> LaurentPoly:
    """
    Carry z^{(g,0)} from the chamber of μ_word(seed) back to C⁺, crossing the
    wall between consecutive seeds with normal |c_k| of the earlier seed.
    """
    order = settings.DEFAULT_ORDER if order is None else order
    n = seed.rank
    if not 1 <= idx <= n:
        raise MutationIndexError(f"variable index {idx} out of range 1..{n}")
    doubled = DoubledForm(seed.initial)
    seeds = [seed]
    for k in word:
        seeds.append(mutate_seed(seeds[-1], k))
    g = seeds[-1].g_vectors()[idx - 1]
    poly = LaurentPoly.monomial(tuple(g) + (0,) * n)
    for j in range(len(word), 0, -1):
        c = seeds[j - 1].c_vector(word[j - 1])
        positive = all(x >= 0 for x in c)
        normal = tuple(c) if positive else tuple(-x for x in c)
        func = GradedSeries.binomial(doubled.wall_exponent(normal), order)
        # entering the earlier chamber raises ⟨c, ·⟩, so n₀ = −c
        poly = apply_crossing(poly, func, normal, 1 if positive else -1, order)
    return poly
