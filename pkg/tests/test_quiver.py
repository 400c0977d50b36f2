"""
Quick smoke tests for quivers, the Coxeter translate and AR components.
Run:  python tests/test_quiver.py
"""
import os
import sys

import pytest

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from quiver.ar_theory import (TAU_INVERSE, ar_component, classify_indecomposable,
                              coxeter_translate, hom_ext_dims, is_predecessor)
from quiver.quiver import Quiver
from utils.errors import (NotIndecomposableError, QuiverError, SchemaError,
                          TranslateUndefinedError, UnsupportedError)


def test_quiver_matrices():
    print("=" * 60)
    print("TEST: Euler form, g-map and projective/injective dimensions")
    print("=" * 60)

    kronecker = Quiver.kronecker(2)
    assert kronecker.euler_form((1, 2), (5, 6)) == 5
    assert kronecker.g_map((5, 6)) == (-7, 6)
    assert kronecker.g_to_dim((-7, 6)) == (5, 6)
    assert kronecker.projectives() == {(1, 2): 1, (0, 1): 2}
    assert kronecker.injectives() == {(1, 0): 1, (2, 1): 2}
    assert kronecker.nakayama_dim(2) == (2, 1)
    assert not kronecker.is_finite_type()

    a3 = Quiver.named("a3")
    assert a3.projective_dim(1) == (1, 1, 1)
    assert a3.injective_dim(3) == (1, 1, 1)
    assert a3.simple_dim(2) == (0, 1, 0)
    assert a3.is_finite_type()
    assert Quiver.named("kronecker3") == Quiver.kronecker(3)

    with pytest.raises(QuiverError):
        Quiver(2, [(2, 1)])
    with pytest.raises(SchemaError):
        Quiver.named("e8")
    print("  PASSED")
    print()


def test_coxeter_translate():
    print("=" * 60)
    print("TEST: coxeter_translate()")
    print("=" * 60)

    kronecker = Quiver.kronecker(2)
    assert coxeter_translate(kronecker, (2, 3)) == (0, 1)
    assert coxeter_translate(kronecker, (0, 1), TAU_INVERSE) == (2, 3)
    assert coxeter_translate(kronecker, (1, 2), TAU_INVERSE) == (3, 4)
    for d in kronecker.projectives():
        with pytest.raises(TranslateUndefinedError):
            coxeter_translate(kronecker, d)
    for d in kronecker.injectives():
        with pytest.raises(TranslateUndefinedError):
            coxeter_translate(kronecker, d, TAU_INVERSE)
    print("  PASSED - τ(2,3) = (0,1); τ of projectives is undefined")
    print()


def test_classification():
    print("=" * 60)
    print("TEST: classify_indecomposable() / hom_ext_dims()")
    print("=" * 60)

    kronecker = Quiver.kronecker(2)
    node = classify_indecomposable(kronecker, (5, 6))
    assert (node.component, node.base, node.power) == ("P", 1, 2), node
    assert classify_indecomposable(kronecker, (2, 1)).component == "I"
    assert classify_indecomposable(kronecker, (2, 2)).component == "R"
    with pytest.raises(NotIndecomposableError):
        classify_indecomposable(kronecker, (1, 3))

    assert classify_indecomposable(Quiver.type_a(3), (0, 1, 0)).key == (1, 3)

    assert hom_ext_dims(kronecker, (1, 2), (5, 6)) == (5, 0)
    assert hom_ext_dims(kronecker, (2, 3), (0, 1)) == (0, 1)
    assert hom_ext_dims(kronecker, (0, 1), (2, 3)) == (3, 0)
    with pytest.raises(UnsupportedError):
        hom_ext_dims(kronecker, (1, 1), (2, 2))
    print(f"  PASSED - (5,6) is {node.label()}")
    print()


def test_ar_component():
    print("=" * 60)
    print("TEST: ar_component() / is_predecessor()")
    print("=" * 60)

    kronecker = Quiver.kronecker(2)
    graph = ar_component(kronecker, "P", bound=2)
    assert graph.number_of_nodes() == 6
    assert graph.number_of_edges() == 5
    assert all(data["multiplicity"] == 2 for _, _, data in graph.edges(data=True))
    assert graph.nodes[(2, 1)]["dim"] == (5, 6)

    p2 = classify_indecomposable(kronecker, (0, 1))
    d = classify_indecomposable(kronecker, (5, 6))
    i2 = classify_indecomposable(kronecker, (2, 1))
    assert is_predecessor(kronecker, p2, d)
    assert not is_predecessor(kronecker, d, p2)
    assert is_predecessor(kronecker, d, i2), "P precedes I"

    injective_side = ar_component(Quiver.type_a(3), "I", bound=1)
    assert injective_side.nodes[(0, 3)]["dim"] == (1, 1, 1)

    a2 = ar_component(Quiver.type_a(2), "P", bound=2)
    assert a2.number_of_nodes() == 3
    assert sorted(data["dim"] for _, data in a2.nodes(data=True)) == [(0, 1), (1, 0), (1, 1)]
    assert sorted(a2.edges()) == [((0, 1), (1, 2)), ((0, 2), (0, 1))]
    print(f"  PASSED - {graph.number_of_nodes()} nodes in the P-component")
    print()


if __name__ == "__main__":
    test_quiver_matrices()
    test_coxeter_translate()
    test_classification()
    test_ar_component()
    print("ALL QUIVER TESTS PASSED!")
