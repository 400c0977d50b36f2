"""
Quick smoke tests for the F_p Grassmannian oracle and Caldero–Chapoton.
Run:  python tests/test_grassmannian.py
"""
import os
import sys
from itertools import product

import pytest
import sympy

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from algebra.laurent import LaurentPoly
from quiver.caldero_chapoton import caldero_chapoton, euler_characteristics
from quiver.quiver import Quiver
from quiver.representations import (ExplicitRep, direct_sum_spec, grassmannian_euler_char,
                                    indecomposable_spec, interval_spec, kronecker_indecomposable,
                                    kronecker_spec, q, quiver_grassmannian_polynomial,
                                    subrep_count)
from utils.errors import DimensionError, NotIndecomposableError, SchemaError

KRONECKER = Quiver.kronecker(2)


def test_subrep_counts():
    print("=" * 60)
    print("TEST: subrep_count() over F_p")
    print("=" * 60)

    for p in (2, 3, 5):
        rep = kronecker_indecomposable((2, 3), p)
        assert subrep_count(rep, (1, 2)) == p + 1
        assert subrep_count(rep, (1, 1)) == 0
        assert subrep_count(rep, (0, 1)) == p * p + p + 1

    a3 = Quiver.type_a(3)
    interval = interval_spec(a3, 1, 3).at(3)
    assert subrep_count(interval, (0, 1, 1)) == 1
    assert subrep_count(interval, (1, 0, 0)) == 0
    assert subrep_count(interval, (0, 2, 0)) == 0

    with pytest.raises(NotIndecomposableError):
        kronecker_indecomposable((1, 3), 2)
    with pytest.raises(SchemaError):
        ExplicitRep(Quiver.kronecker(2), 4, (1, 1))
    with pytest.raises(DimensionError):
        ExplicitRep(Quiver.kronecker(2), 2, (1, 1), {0: [[1, 0]]})
    print("  PASSED")
    print()


def test_grassmannian_polynomials():
    print("=" * 60)
    print("TEST: quiver_grassmannian_polynomial()")
    print("=" * 60)

    spec = kronecker_spec((1, 2))
    assert quiver_grassmannian_polynomial(spec, (0, 1)).as_expr() == q + 1
    assert euler_characteristics(spec) == {(0, 0): 1, (0, 1): 2, (0, 2): 1, (1, 2): 1}

    assert grassmannian_euler_char(kronecker_spec((2, 3)), (1, 2)) == 2

    # S2 ⊕ S2 is not rigid and goes through plain interpolation
    simple_sum = direct_sum_spec([(kronecker_spec((0, 1)), 2)])
    assert simple_sum.dims == (0, 2)
    assert quiver_grassmannian_polynomial(simple_sum, (0, 1)) == sympy.Poly(q + 1, q)
    print("  PASSED - Gr_(0,1)(C⇉C²) counts q + 1 points")
    print()


def test_interpolation_across_primes():
    print("=" * 60)
    print("TEST: Kronecker counting polynomials agree on p = 2, 3, 5, 7")
    print("=" * 60)

    checked = 0
    for d in ((1, 2), (2, 3), (3, 4)):
        spec = kronecker_spec(d)
        for e in product(range(d[0] + 1), range(d[1] + 1)):
            poly = quiver_grassmannian_polynomial(spec, e)
            for p in (2, 3, 5, 7):
                assert poly.eval(p) == subrep_count(spec.at(p), e), (d, e, p)
            if not poly.is_zero:
                coeffs = poly.all_coeffs()
                assert coeffs == list(reversed(coeffs)), (d, e)
                assert coeffs[0] == coeffs[-1] == 1, (d, e)
            checked += 1
    assert grassmannian_euler_char(kronecker_spec((3, 4)), (1, 2)) == 3
    print(f"  PASSED - {checked} Grassmannians")
    print()


def test_rigid_fit_needs_fewer_primes():
    print("=" * 60)
    print("TEST: monic palindromic fit of Gr_(2,4)(C⁵⇉C⁶) from p = 2, 3, 5, 7")
    print("=" * 60)

    spec = kronecker_spec((5, 6))
    poly = quiver_grassmannian_polynomial(spec, (2, 4), primes=[2, 3, 5, 7])
    assert poly.degree() == KRONECKER.euler_form((2, 4), (3, 2)) == 6
    assert poly.eval(1) == 18
    print(f"  PASSED - {poly.as_expr()}")
    print()


def test_caldero_chapoton():
    print("=" * 60)
    print("TEST: caldero_chapoton()")
    print("=" * 60)

    kronecker = Quiver.kronecker(2)
    cc = caldero_chapoton(kronecker, kronecker_spec((1, 1)))
    assert cc == LaurentPoly(2, {(1, -1, 0, 0): 1, (-1, -1, 0, 1): 1, (-1, 1, 1, 1): 1})

    cc = caldero_chapoton(kronecker, indecomposable_spec(kronecker, (1, 2)))
    assert cc == LaurentPoly(2, {(3, -2, 0, 0): 1, (1, -2, 0, 1): 2,
                                 (-1, -2, 0, 2): 1, (-1, 0, 1, 2): 1})

    plain = caldero_chapoton(kronecker, kronecker_spec((1, 1)), with_principal=False)
    assert plain == LaurentPoly(2, {(1, -1, 0, 0): 1, (-1, -1, 0, 0): 1, (-1, 1, 0, 0): 1})

    with pytest.raises(DimensionError):
        caldero_chapoton(Quiver.type_a(2), kronecker_spec((1, 1)))
    print(f"  PASSED - CC(C⇉C) = {cc.to_text()}")
    print()


def test_preprojective_oracle():
    print("=" * 60)
    print("TEST: χ(Gr_(2,4)(τ⁻²P(1))) (slow)")
    print("=" * 60)

    assert grassmannian_euler_char(kronecker_spec((5, 6)), (2, 4)) == 18
    print("  PASSED - 18")
    print()


if __name__ == "__main__":
    test_subrep_counts()
    test_grassmannian_polynomials()
    test_interpolation_across_primes()
    test_rigid_fit_needs_fewer_primes()
    test_caldero_chapoton()
    test_preprojective_oracle()
    print("ALL GRASSMANNIAN TESTS PASSED!")
