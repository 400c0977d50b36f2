"""
Auslander-Reiten data on dimension vectors: τ and τ⁻¹ through the Coxeter
matrix, classification into the preprojective (P), regular (R) and
preinjective (I) components, Hom/Ext dimensions from the vanishing rules,
and the P/I components as networkx graphs.
"""
import os
import sys
from dataclasses import dataclass

import networkx as nx

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from config import settings
from quiver.quiver import Quiver
from utils.errors import (InconclusiveError, NotIndecomposableError,
                          TranslateUndefinedError, UnsupportedError)
from utils.logger import setup_logger

logger = setup_logger("ARTheory")

TAU = "tau"
TAU_INVERSE = "tau_inverse"

COMPONENT_RANK = {"P": 0, "R": 1, "I": 2}


@dataclass(frozen=True)
class ARNode:
    """τ^{-power} P(base) for component P, τ^{power} I(base) for I; R carries no label."""
    component: str
    base: int
    power: int
    dim: tuple

    @property
    def key(self):
        return (self.power, self.base)

    def label(self):
        if self.component == "P":
            return f"tau^-{self.power} P({self.base})" if self.power else f"P({self.base})"
        if self.component == "I":
            return f"tau^{self.power} I({self.base})" if self.power else f"I({self.base})"
        return f"R{self.dim}"


def coxeter_translate(quiver: Quiver, d, direction=TAU):
    d = tuple(d)
    if direction == TAU:
        if d in quiver.projectives():
            raise TranslateUndefinedError(f"{d} is projective; τ is undefined")
        image = quiver.apply(quiver.coxeter_matrix, d)
    elif direction == TAU_INVERSE:
        if d in quiver.injectives():
            raise TranslateUndefinedError(f"{d} is injective; τ⁻¹ is undefined")
        image = quiver.apply(quiver.coxeter_inverse, d)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    if any(x < 0 for x in image) or not any(image):
        raise TranslateUndefinedError(f"{direction}({d}) = {image} is not a dimension vector")
    return image


def _self_test():
    # Pins the sign/transpose convention of Φ: τ(C²⇉C³) = 0⇉C.
    image = coxeter_translate(Quiver.kronecker(2), (2, 3), TAU)
    if image != (0, 1):
        raise RuntimeError(f"Coxeter convention broken: τ(2,3) = {image}")


_self_test()


def _orbit_search(quiver: Quiver, d, targets, direction, bound):
    """
    Walk the τ (or τ⁻¹) orbit of d for at most `bound` steps.
    Returns ('hit', base, steps), ('cycle',), ('dead',) or ('bound',).
    """
    seen = set()
    x = d
    for steps in range(bound + 1):
        if x in targets:
            return ("hit", targets[x], steps)
        if x in seen:
            return ("cycle",)
        seen.add(x)
        try:
            x = coxeter_translate(quiver, x, direction)
        except TranslateUndefinedError:
            return ("dead",)
    return ("bound",)


def classify_indecomposable(quiver: Quiver, d, bound=None) -> ARNode:
    d = tuple(d)
    if any(x < 0 for x in d) or not any(d):
        raise NotIndecomposableError(f"{d} is not a nonzero dimension vector")
    bound = settings.AR_SEARCH_BOUND if bound is None else bound

    towards_p = _orbit_search(quiver, d, quiver.projectives(), TAU, bound)
    if towards_p[0] == "hit":
        return ARNode("P", towards_p[1], towards_p[2], d)
    towards_i = _orbit_search(quiver, d, quiver.injectives(), TAU_INVERSE, bound)
    if towards_i[0] == "hit":
        return ARNode("I", towards_i[1], towards_i[2], d)

    if "dead" in (towards_p[0], towards_i[0]):
        raise NotIndecomposableError(f"{d} is not the dimension vector of an indecomposable")
    if "cycle" in (towards_p[0], towards_i[0]):
        return ARNode("R", 0, 0, d)
    if not quiver.is_finite_type():
        logger.debug("%s left unclassified after %d steps on infinite type; regular", d, bound)
        return ARNode("R", 0, 0, d)
    raise InconclusiveError(f"could not classify {d} within {bound} τ-steps")


def hom_ext_dims(quiver: Quiver, c, d):
    """
    (dim Hom(C, D), dim Ext¹(C, D)) for indecomposables C, D with dimension
    vectors c, d; hom − ext always equals χ(c, d).
    """
    node_c = classify_indecomposable(quiver, c)
    node_d = classify_indecomposable(quiver, d)
    chi = quiver.euler_form(c, d)
    rank_c = COMPONENT_RANK[node_c.component]
    rank_d = COMPONENT_RANK[node_d.component]

    if node_c.component == "R" and node_d.component == "R":
        raise UnsupportedError("Hom/Ext between two regular modules is not determined by χ")
    if rank_c == rank_d:
        return max(chi, 0), max(-chi, 0)
    if rank_c < rank_d:
        # Ext¹(P, R) = Ext¹(P, I) = Ext¹(R, I) = 0
        if chi < 0:
            raise InconclusiveError(f"χ({c},{d}) = {chi} < 0 contradicts Ext vanishing")
        return chi, 0
    # Hom(I, P) = Hom(I, R) = Hom(R, P) = 0
    if chi > 0:
        raise InconclusiveError(f"χ({c},{d}) = {chi} > 0 contradicts Hom vanishing")
    return 0, -chi


def ar_component(quiver: Quiver, side="P", bound=2):
    """
    Preprojective (side='P') or preinjective (side='I') component as a
    networkx DiGraph. Nodes are keyed (power, base); edge attribute
    `multiplicity` counts parallel irreducible maps.
    """
    if side not in ("P", "I"):
        raise ValueError(f"side must be 'P' or 'I', got {side!r}")
    n = quiver.n_vertices
    start = quiver.projective_dim if side == "P" else quiver.injective_dim
    direction = TAU_INVERSE if side == "P" else TAU

    graph = nx.DiGraph(side=side, quiver=quiver.name)
    dims = {}
    for a in range(1, n + 1):
        x = start(a)
        for t in range(bound + 1):
            dims[(t, a)] = x
            graph.add_node((t, a), node=ARNode(side, a, t, x), dim=x)
            try:
                x = coxeter_translate(quiver, x, direction)
            except TranslateUndefinedError:
                break

    def link(u, v, multiplicity):
        if u in dims and v in dims:
            previous = graph.edges[u, v]["multiplicity"] if graph.has_edge(u, v) else 0
            graph.add_edge(u, v, multiplicity=previous + multiplicity)

    arrow_matrix = quiver.arrow_matrix
    for t in range(bound + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                mult = arrow_matrix[i - 1][j - 1]
                if not mult:
                    continue
                link((t, j), (t, i), mult)
                if side == "P":
                    link((t, i), (t + 1, j), mult)
                else:
                    link((t + 1, i), (t, j), mult)

    if not nx.is_directed_acyclic_graph(graph):
        raise InconclusiveError(f"{side}-component of {quiver.name} is not acyclic")
    logger.debug("%s-component of %s: %d nodes, %d edges",
                 side, quiver.name, graph.number_of_nodes(), graph.number_of_edges())
    return graph


def is_predecessor(quiver: Quiver, v: ARNode, w: ARNode) -> bool:
    """v ≺ w: a path of irreducible maps, extended across components by P ≺ R ≺ I."""
    if v.dim == w.dim:
        return False
    if v.component != w.component:
        return COMPONENT_RANK[v.component] < COMPONENT_RANK[w.component]
    if v.component == "R":
        raise UnsupportedError("predecessors inside the regular component are not computed")
    graph = ar_component(quiver, v.component, bound=max(v.power, w.power) + 1)
    return nx.has_path(graph, v.key, w.key)
