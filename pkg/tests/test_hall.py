"""
Quick smoke tests for q-polynomials, bending strata and HN phases.
Run:  python tests/test_hall.py
"""
import os
import sys
from fractions import Fraction
from itertools import product

import pytest
import sympy

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from algebra.laurent import LaurentPoly
from hall.qpoly import (at_one, bending_by_compositions, block_inverse_chi, commute_monomial,
                        compositions, gl_poincare, one_ss_chi, one_ss_inverse_chi, qbinom, qpoly)
from hall.strata import (TORSION, TORSION_FREE, ON_WALL, Filtration, StabilityValue,
                         central_charge, first_bending, hall_theta_chi, hn_phases,
                         next_bending, strata_report, torsion_side)
from quiver.caldero_chapoton import caldero_chapoton
from quiver.quiver import Quiver
from quiver.representations import kronecker_spec, q
from utils.errors import (DimensionError, InadmissibleBendError, InvalidStabilityError,
                          NoBendingError, UnsupportedError)

KRONECKER = Quiver.kronecker(2)
STRATA_ENDPOINT = (Fraction(2), Fraction(1))


def _gl_count(d, p):
    """Brute-force |GL_d(F_p)| by counting invertible matrices."""
    count = 0
    for entries in product(range(p), repeat=d * d):
        matrix = sympy.Matrix(d, d, list(entries))
        if matrix.det() % p:
            count += 1
    return count


def test_gaussian_binomials():
    print("=" * 60)
    print("TEST: qbinom() / gl_poincare()")
    print("=" * 60)

    closed_form = (q**5 - 1) * (q**4 - 1) / ((q**2 - 1) * (q - 1))
    assert sympy.simplify(qbinom(5, 2).as_expr() - closed_form) == 0
    assert at_one(qbinom(5, 2)) == 10
    assert at_one(qbinom(4, 1)) == 4
    assert qbinom(2, 3).is_zero
    assert qbinom(-1, 0).is_zero
    assert at_one(qpoly(q) * qbinom(2, 1)) == 2

    for d in (1, 2):
        for p in (2, 3):
            assert gl_poincare(d).eval(p) == _gl_count(d, p), (d, p)
    assert gl_poincare(3).eval(2) == 168
    assert gl_poincare(0) == qpoly(1)
    with pytest.raises(DimensionError):
        gl_poincare(-1)
    print("  PASSED - |GL_3(F_2)| = 168")
    print()


def test_composition_sums():
    print("=" * 60)
    print("TEST: block_inverse_chi() / one_ss_inverse_chi() / bending_by_compositions()")
    print("=" * 60)

    assert list(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert block_inverse_chi(()) == 1
    assert sympy.simplify(block_inverse_chi((1,)) - 1 / (q - 1)) == 0
    assert sympy.simplify(block_inverse_chi((1, 1)) - 1 / ((q - 1) ** 2 * q)) == 0
    with pytest.raises(DimensionError):
        block_inverse_chi((0, 1))

    assert sympy.simplify(one_ss_chi(1) - 1 / (q - 1)) == 0
    assert sympy.simplify(one_ss_inverse_chi(1) + 1 / (q - 1)) == 0
    assert sympy.simplify(one_ss_inverse_chi(2) - 1 / ((q - 1) ** 2 * (q + 1))) == 0

    for eta, gamma, s in ((3, 1, 1), (3, 1, 2), (4, 1, 2), (3, 0, 3), (5, 2, 2)):
        expected = qpoly(q ** (s * gamma)) * qbinom(eta - gamma, s)
        assert bending_by_compositions(eta, gamma, s) == expected, (eta, gamma, s)
    print("  PASSED")
    print()


def test_commute_monomial():
    print("=" * 60)
    print("TEST: commute_monomial()")
    print("=" * 60)

    assert commute_monomial((7, -6), (1, 2)) == 5
    assert commute_monomial((7, -6), (0, 0)) == 0
    assert commute_monomial((0, 0), (1, 2)) == 0
    print("  PASSED")
    print()


def test_first_and_next_bending():
    print("=" * 60)
    print("TEST: strata of the two lines for D = τ⁻²P(1), e = (2,4)")
    print("=" * 60)

    bending = first_bending(KRONECKER, (5, 6), (1, 2), 2)
    assert bending.stratum.qpoly == qbinom(5, 2)
    assert bending.stratum.value() == 10
    assert bending.filtration.dimension == (2, 4)
    assert bending.eta == 5
    # z^{(7,-6)} + (-8,4,2,4) lands on the final m-part (-1,-2)
    assert bending.shift == (-8, 4, 2, 4)

    first = next_bending(KRONECKER, (5, 6), Filtration(), (2, 3), 1)
    assert first.stratum.value() == 4
    assert first.shift == (-6, 4, 2, 3)
    second = next_bending(KRONECKER, (5, 6), first.filtration, (0, 1), 1)
    assert second.stratum.qpoly == qpoly(q * (q + 1))
    assert (second.eta, second.gamma) == (3, 1)
    assert second.shift == (-2, 0, 0, 1)
    assert first.stratum.value() * second.stratum.value() == 8
    f2 = second.filtration
    assert f2.describe() == "0 ⊂ (2, 3) ⊂ (2, 4)"
    assert f2.quotients() == [(2, 3), (0, 1)]

    zero = first_bending(KRONECKER, (5, 6), (1, 2), 0)
    assert zero.stratum.qpoly == qpoly(1) and not zero.filtration.steps
    assert zero.shift == (0, 0, 0, 0)

    big = next_bending(KRONECKER, (5, 6), first.filtration, (0, 1), 3).stratum
    assert big.is_empty and big.value() == 0
    print(f"  PASSED - {f2.describe()}")
    print()


def test_bending_eta_is_hom_not_euler_form():
    print("=" * 60)
    print("TEST: η = dim Hom(C_j, D/V) when Ext¹(C_j, D/V) ≠ 0")
    print("=" * 60)

    # Hom((3,4),(2,3)) = 0 and Ext¹((2,3),(3,4)) = 0, so the bend is admissible;
    # the quotient (0,1) has χ((2,3),(0,1)) = -1 but no homs
    filt = Filtration().extend((3, 4), 1)
    assert KRONECKER.euler_form((2, 3), (0, 1)) == -1
    bending = next_bending(KRONECKER, (3, 5), filt, (2, 3), 1)
    assert bending.eta == 0
    assert bending.gamma == 0
    assert bending.stratum.ambient == 0
    assert bending.stratum.is_empty and bending.stratum.value() == 0
    assert bending.filtration.dimension == (5, 7)
    print(f"  PASSED - η={bending.eta}, stratum empty")
    print()


def test_bending_errors():
    print("=" * 60)
    print("TEST: NoBendingError / InadmissibleBendError / regular walls")
    print("=" * 60)

    with pytest.raises(NoBendingError):
        first_bending(KRONECKER, (0, 1), (1, 2), 1)
    f1 = first_bending(KRONECKER, (5, 6), (0, 1), 1).filtration
    with pytest.raises(InadmissibleBendError):
        next_bending(KRONECKER, (5, 6), f1, (2, 3), 1)
    with pytest.raises(UnsupportedError):
        first_bending(KRONECKER, (5, 6), (1, 1), 1)
    print("  PASSED")
    print()


def test_stability():
    print("=" * 60)
    print("TEST: central_charge() / hn_phases() / torsion_side()")
    print("=" * 60)

    filt = Filtration().extend((2, 3), 1).extend((0, 1), 1)
    values, decreasing = hn_phases(filt, STRATA_ENDPOINT, KRONECKER, (5, 6), (2, 4))
    assert [str(v) for v in values] == ["8+7i", "2+i"]
    assert decreasing

    reversed_filt = Filtration().extend((0, 1), 1).extend((2, 3), 1)
    _, decreasing = hn_phases(reversed_filt, STRATA_ENDPOINT, KRONECKER, (5, 6), (2, 4))
    assert not decreasing

    assert central_charge((1, 2), (2, 1), (0, 1)) == StabilityValue(2, 1)
    assert StabilityValue(0, 1).phase_exceeds(StabilityValue(1, 1))
    with pytest.raises(InvalidStabilityError):
        StabilityValue(1, 0)
    with pytest.raises(InvalidStabilityError):
        hn_phases(filt, (-1, 1), KRONECKER, (5, 6), (2, 4))

    assert torsion_side((7, -6), (0, 1)) == TORSION_FREE
    assert torsion_side((7, -6), (1, 0)) == TORSION
    assert torsion_side((1, -1), (1, 1)) == ON_WALL
    print("  PASSED")
    print()


def test_hall_theta_matches_cc():
    print("=" * 60)
    print("TEST: hall_theta_chi() equals Caldero–Chapoton")
    print("=" * 60)

    theta = hall_theta_chi(KRONECKER, (1, 2), STRATA_ENDPOINT)
    assert theta == caldero_chapoton(KRONECKER, kronecker_spec((1, 2)))
    assert theta == LaurentPoly(2, {(3, -2, 0, 0): 1, (1, -2, 0, 1): 2,
                                    (-1, -2, 0, 2): 1, (-1, 0, 1, 2): 1})
    with pytest.raises(UnsupportedError):
        hall_theta_chi(KRONECKER, (1, 1), STRATA_ENDPOINT)
    print(f"  PASSED - {theta.to_text()}")
    print()


def test_strata_report():
    print("=" * 60)
    print("TEST: strata_report() against the Grassmannian oracle (slow)")
    print("=" * 60)

    report = strata_report(KRONECKER, (5, 6), (2, 4), STRATA_ENDPOINT)
    assert sorted(row["value"] for row in report["lines"]) == [8, 10]
    assert report["total"] == report["oracle"] == 18
    assert all(row["value"] == row["coefficient"] for row in report["lines"])
    print(f"  PASSED - total {report['total']}")
    print()


if __name__ == "__main__":
    test_gaussian_binomials()
    test_composition_sums()
    test_commute_monomial()
    test_first_and_next_bending()
    test_bending_eta_is_hom_not_euler_form()
    test_bending_errors()
    test_stability()
    test_hall_theta_matches_cc()
    test_strata_report()
    print("ALL HALL TESTS PASSED!")
