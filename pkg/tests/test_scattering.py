"""
Quick smoke tests for rank-2 scattering, wall crossing and the cluster complex.
Run:  python tests/test_scattering.py
"""
import os
import sys
from fractions import Fraction
from itertools import combinations

import pytest

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from algebra.lattice import DoubledForm, SkewForm
from algebra.laurent import LaurentPoly, Monomial
from algebra.series import GradedSeries
from cluster.seed import Seed
from quiver.quiver import Quiver
from scattering.cluster_complex import (ar_order_check, chamber_of, cluster_complex_diagram,
                                        decompose_in_chamber)
from scattering.geometry import (angle_key, check_generic, cross, generic_representative,
                                 parse_point, parse_rational, ray_hit, strictly_between_ccw)
from scattering.rank2 import ScatteringEngine, in_cluster_complex, is_consistent, loop_defect
from scattering.walls import (NEGATIVE, POSITIVE, ScatteringDiagram, Wall, check_positivity,
                              crossing_sign, initial_diagram, positive_factorization, wall_cross)
from utils.errors import (DimensionError, GenericPositionError, NonTransversalError,
                          SchemaError, ScatteringError, UnsupportedError)


def _ray_funcs(diagram):
    return {r.direction: r.func for r in diagram.rays()}


def test_wall_cross():
    print("=" * 60)
    print("TEST: wall_cross() on a single incoming wall")
    print("=" * 60)

    form = SkewForm.rank2(1)
    diagram = initial_diagram(Seed.rank2(1), 3)
    wall = diagram.walls[0]
    assert wall.normal == (1, 0)
    assert wall.exponent == (0, 1, 1, 0)
    assert wall.is_incoming

    # ⟨(1,0), e1⟩ = 1: crossing against the normal multiplies by f
    crossed = wall_cross(Monomial(1, (1, 0, 0, 0)), wall, NEGATIVE)
    assert crossed == LaurentPoly(2, {(1, 0, 0, 0): 1, (1, 1, 1, 0): 1})
    back = wall_cross(Monomial(1, (1, 1, 1, 0)), wall, POSITIVE)
    assert back.coefficient((1, 1, 1, 0)) == 1
    assert wall_cross(Monomial(1, (0, 1, 0, 0)), wall, POSITIVE) == LaurentPoly.a_var(2, 2)

    assert crossing_sign((1, 0), wall) == POSITIVE
    with pytest.raises(NonTransversalError):
        crossing_sign((0, 1), wall)
    with pytest.raises(DimensionError):
        Wall((2, 0), wall.func, form)
    with pytest.raises(ScatteringError):
        Wall((1, 0), GradedSeries(2, 3, {(0, 1, 1, 0): 1}), form)
    print("  PASSED")
    print()


def test_completion_b1():
    print("=" * 60)
    print("TEST: b=1 completion adds the single ray 1 + A1⁻¹A2X1X2")
    print("=" * 60)

    diagram = ScatteringEngine(1, 2).complete()
    outgoing = [r for r in diagram.rays() if not r.incoming]
    assert len(outgoing) == 1
    assert outgoing[0].direction == (1, -1)
    assert outgoing[0].func == GradedSeries.binomial((-1, 1, 1, 1), 2)
    assert is_consistent(diagram)
    print("  PASSED")
    print()


def test_completion_b2():
    print("=" * 60)
    print("TEST: b=2 completion to order 8")
    print("=" * 60)

    diagram = ScatteringEngine(2, 8).complete()
    funcs = _ray_funcs(diagram)
    central = GradedSeries.binomial((-2, 2, 1, 1), 8, -1).power(-2)
    assert funcs[(1, -1)] == central
    for exponent in ((-4, 2, 1, 2), (-2, 4, 2, 1), (-6, 4, 2, 3)):
        assert GradedSeries.binomial(exponent, 8) in funcs.values()
    assert is_consistent(diagram)
    assert check_positivity(diagram)
    print(f"  PASSED - {len(funcs)} rays")
    print()


def test_loop_consistency():
    print("=" * 60)
    print("TEST: loop_defect() vanishes after completion")
    print("=" * 60)

    initial = ScatteringEngine(1, 2).initial()
    defect = loop_defect(initial, 2)
    assert any(not part.is_zero() for part in defect.values())
    assert not is_consistent(initial)

    for b, order in ((1, 6), (2, 6), (3, 8)):
        assert is_consistent(ScatteringEngine(b, order).complete()), b
    with pytest.raises(DimensionError):
        ScatteringEngine(2, 0)
    print("  PASSED")
    print()


def test_positivity_check():
    print("=" * 60)
    print("TEST: positive_factorization() / check_positivity()")
    print("=" * 60)

    form = SkewForm.rank2(1)
    exponent = DoubledForm(form).wall_exponent((1, 0))
    diagram = ScatteringDiagram(form, 4)
    diagram.add_wall(Wall((1, 0), GradedSeries.binomial(exponent, 4, -1), form))
    with pytest.raises(ScatteringError):
        check_positivity(diagram)

    squared = GradedSeries.binomial(exponent, 4).power(2)
    assert positive_factorization(Wall((1, 0), squared, form)) == {1: 2}
    print("  PASSED")
    print()


def test_cluster_complex():
    print("=" * 60)
    print("TEST: cluster_complex_diagram() for finite types")
    print("=" * 60)

    a2 = cluster_complex_diagram(Seed.from_quiver(Quiver.named("a2")), 6)
    assert len(a2.chambers) == 5
    assert len(a2.walls) == 5
    assert chamber_of(a2, (1, 1)) == ((0, 1), (1, 0))

    a3 = cluster_complex_diagram(Seed.from_quiver(Quiver.named("a3")), 6)
    assert len(a3.chambers) == 14
    assert len(a3.walls) == 21

    kronecker = cluster_complex_diagram(Seed.rank2(2), 4)
    assert len(kronecker.chambers) == 9
    assert chamber_of(kronecker, (5, -3)) == ((2, -1), (3, -2))
    assert chamber_of(kronecker, (1, -1)) is None, "the limiting ray bounds no chamber"
    print("  PASSED")
    print()


def test_ar_order():
    print("=" * 60)
    print("TEST: ar_order_check() on every pair of walls")
    print("=" * 60)

    for name, depth in (("a2", 6), ("a3", 6), ("kronecker2", 5)):
        quiver = Quiver.named(name)
        diagram = cluster_complex_diagram(Seed.from_quiver(quiver), depth)
        walls = {w.normal: w for w in diagram.walls}
        for w1, w2 in combinations(walls.values(), 2):
            assert ar_order_check(w1, w2, quiver), (name, w1.normal, w2.normal)
            assert ar_order_check(w2, w1, quiver), (name, w2.normal, w1.normal)
    print("  PASSED")
    print()


def test_decompose_in_chamber():
    print("=" * 60)
    print("TEST: decompose_in_chamber()")
    print("=" * 60)

    kronecker = Quiver.kronecker(2)
    generators = ((3, -2), (2, -1))
    parts, spec = decompose_in_chamber(kronecker, (6, -4), generators)
    assert parts == [((1, 2), 2)]
    assert spec.dims == (2, 4)
    with pytest.raises(DimensionError):
        decompose_in_chamber(kronecker, (1, 1), generators)
    with pytest.raises(UnsupportedError):
        decompose_in_chamber(kronecker, (1, 0), ((1, 0), (0, 1)))
    print("  PASSED")
    print()


def test_geometry():
    print("=" * 60)
    print("TEST: exact plane geometry")
    print("=" * 60)

    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_point("3/2, 1", 2) == (Fraction(3, 2), Fraction(1))
    with pytest.raises(SchemaError):
        parse_rational("x")
    with pytest.raises(SchemaError):
        parse_point("1,2,3", 2)

    ordered = sorted([(0, -1), (1, 0), (-1, 0), (0, 1)], key=angle_key)
    assert ordered == [(1, 0), (0, 1), (-1, 0), (0, -1)]
    assert strictly_between_ccw((1, 1), (1, 0), (0, 1))
    assert not strictly_between_ccw((1, -1), (1, 0), (0, 1))
    with pytest.raises(NonTransversalError):
        ray_hit((1, 0), (1, 0), (1, 0))

    diagram = ScatteringEngine(2, 4).complete()
    with pytest.raises(GenericPositionError):
        check_generic((0, 0), diagram)
    with pytest.raises(GenericPositionError):
        check_generic((2, -2), diagram)
    check_generic((Fraction(3, 2), 1), diagram)

    endpoint = (Fraction(3, 2), Fraction(1))
    assert generic_representative(endpoint, diagram, [(1, 0)]) == endpoint
    moved = generic_representative(endpoint, diagram, [(-3, -2)])
    assert moved != endpoint
    check_generic(moved, diagram)
    assert not any(strictly_between_ccw(r.direction, endpoint, moved) for r in diagram.rays())
    assert cross(moved, (-3, -2)) != 0, "the backward trace must miss the origin"

    assert in_cluster_complex(2, (3, -2))
    assert not in_cluster_complex(2, (1, -1))
    print("  PASSED")
    print()


if __name__ == "__main__":
    test_wall_cross()
    test_completion_b1()
    test_completion_b2()
    test_loop_consistency()
    test_positivity_check()
    test_cluster_complex()
    test_ar_order()
    test_decompose_in_chamber()
    test_geometry()
    print("ALL SCATTERING TESTS PASSED!")
