"""
Quick smoke tests for the lattice, Laurent polynomial and graded series core.
Run:  python tests/test_algebra.py
      python -m pytest tests/test_algebra.py -v
"""
import os
import random
import sys
from itertools import product

import pytest

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from algebra.lattice import DoubledForm, SkewForm, dot, primitive
from algebra.laurent import LaurentPoly
from algebra.series import GradedSeries, n_degree
from utils.errors import (DimensionError, LaurentDivisionError, NotInvertibleError,
                          OrderMismatchError, SchemaError)


def test_skew_form():
    print("=" * 60)
    print("TEST: SkewForm / DoubledForm")
    print("=" * 60)

    form = SkewForm.rank2(2)
    assert form.p_star((1, 0)) == (0, 2), "p*(e1) should be (0, b)"
    assert form.p_star((0, 1)) == (-2, 0), "p*(e2) should be (−b, 0)"
    assert form.pair((1, 0), (0, 1)) == 2
    assert form.pair((3, 5), (3, 5)) == 0, "form must be skew"

    doubled = DoubledForm(form)
    assert doubled.wall_exponent((1, 2)) == (-4, 2, 1, 2)
    assert doubled.wall_exponent((1, 1)) == (-2, 2, 1, 1)

    with pytest.raises(DimensionError):
        SkewForm([[0, 1], [1, 0]])
    with pytest.raises(DimensionError):
        dot((1, 2), (1, 2, 3))
    assert primitive((4, 6)) == ((2, 3), 2)
    print("  PASSED - p*, wall exponents and primitive vectors")
    print()


def test_laurent_arithmetic():
    print("=" * 60)
    print("TEST: LaurentPoly arithmetic and text form")
    print("=" * 60)

    a1, a2 = LaurentPoly.a_var(2, 1), LaurentPoly.a_var(2, 2)
    x1 = LaurentPoly.x_var(2, 1)
    poly = (a2 ** 2 + x1) * a1 ** -1
    assert poly.coefficient((-1, 2, 0, 0)) == 1
    assert poly.coefficient((-1, 0, 1, 0)) == 1
    assert len(poly) == 2

    text = poly.to_text()
    assert LaurentPoly.parse_text(2, text) == poly, f"text round trip failed: {text}"
    assert (poly - poly).is_zero()
    assert poly.substitute_ones("X") == (a2 ** 2 + 1) * a1 ** -1

    expr = poly.to_expr()
    assert LaurentPoly.from_expr(expr, 2) == poly
    print(f"  PASSED - {text}")
    print()


def test_exact_divide():
    print("=" * 60)
    print("TEST: LaurentPoly.exact_divide()")
    print("=" * 60)

    a1, a2 = LaurentPoly.a_var(2, 1), LaurentPoly.a_var(2, 2)
    numerator = (a2 ** 2 + 1) * (a1 + 1) * a1 ** -3
    quotient = numerator.exact_divide(a1 + 1)
    assert quotient == (a2 ** 2 + 1) * a1 ** -3

    with pytest.raises(LaurentDivisionError):
        (a1 + 2).exact_divide(a1 + 1)
    with pytest.raises(LaurentDivisionError):
        a1.exact_divide(LaurentPoly.zero(2))
    with pytest.raises(SchemaError):
        LaurentPoly.parse_text(2, "2 * B1")
    print("  PASSED - exact and inexact division")
    print()


def test_graded_series():
    print("=" * 60)
    print("TEST: GradedSeries truncation, inverse and powers")
    print("=" * 60)

    y = (-2, 2, 1, 1)
    f = GradedSeries.binomial(y, 8, -1)
    inverse_square = f.power(-2)
    # (1 − y)^{-2} = Σ (k+1) y^k, y of degree 2, kept while 2k ≤ 8
    for k in range(5):
        exponent = tuple(k * x for x in y)
        assert inverse_square.coefficient(exponent) == k + 1, f"coefficient of y^{k}"
    assert len(inverse_square) == 5
    assert (inverse_square * f * f).is_one()

    g = GradedSeries.binomial((0, 2, 1, 0), 3)
    assert g.power(3).coefficient((0, 6, 3, 0)) == 1
    assert g.power(4).coefficient((0, 8, 4, 0)) == 0, "degree 4 is above the order"
    assert n_degree((0, 8, 4, 0), 2) == 4

    with pytest.raises(OrderMismatchError):
        g + GradedSeries.one(2, 4)
    with pytest.raises(NotInvertibleError):
        GradedSeries(2, 3, {(0, 0, 0, 0): 2}).inverse()
    print("  PASSED - (1 − y)^-2 to order 8")
    print()


def test_skew_pairing_properties():
    print("=" * 60)
    print("TEST: skew pairings on random vectors, p̃* injective")
    print("=" * 60)

    rng = random.Random(7)
    forms = (SkewForm.rank2(2), SkewForm([[0, 1, -2], [-1, 0, 1], [2, -1, 0]]))
    for form in forms:
        doubled = DoubledForm(form)
        r = form.rank
        for _ in range(50):
            n1 = tuple(rng.randint(-5, 5) for _ in range(r))
            n2 = tuple(rng.randint(-5, 5) for _ in range(r))
            a = tuple(rng.randint(-5, 5) for _ in range(2 * r))
            b = tuple(rng.randint(-5, 5) for _ in range(2 * r))
            assert form.pair(n1, n2) == -form.pair(n2, n1)
            assert doubled.skew_pair(a, b) == -doubled.skew_pair(b, a)
            assert doubled.skew_pair(a, a) == 0

    doubled = DoubledForm(SkewForm.rank2(2))
    assert doubled.skew_pair((1, 0, 0, 0), (0, 0, 1, 0)) == -1
    assert doubled.skew_pair((0, 0, 1, 0), (1, 0, 0, 0)) == 1

    grid = list(product(range(-2, 3), repeat=4))
    images = {doubled.tilde_p_star(v) for v in grid}
    assert len(images) == len(grid), "p̃* must be injective"
    print(f"  PASSED - {len(grid)} distinct images")
    print()


def test_series_ring_laws():
    print("=" * 60)
    print("TEST: GradedSeries products are associative and commutative")
    print("=" * 60)

    f = GradedSeries(2, 6, {(0, 0, 0, 0): 1, (-2, 2, 1, 1): 3, (0, 2, 1, 0): -1})
    g = GradedSeries(2, 6, {(0, 0, 0, 0): 1, (-4, 2, 1, 2): 2})
    h = GradedSeries(2, 6, {(0, 0, 0, 0): 1, (-2, 0, 0, 1): 1, (0, 4, 2, 0): 5})
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert f.inverse().inverse() == f
    assert (f * f.inverse()).is_one()
    print("  PASSED")
    print()


if __name__ == "__main__":
    test_skew_form()
    test_laurent_arithmetic()
    test_exact_divide()
    test_graded_series()
    test_skew_pairing_properties()
    test_series_ring_laws()
    print("ALL ALGEBRA TESTS PASSED!")
