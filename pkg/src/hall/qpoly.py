"""
q-polynomials at the image of the integration map: Gaussian binomials,
|GL_d|, the classifying-stack products of 1_ss and its inverse, and the
alternating sum that collapses to a single bending stratum.

Polynomials are sympy.Poly in q over ZZ; the only rational functions are
the BGL products, returned as cancelled sympy expressions.
"""
import os
import sys
from functools import lru_cache

import sympy

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from quiver.representations import q
from utils.errors import DimensionError


def qpoly(expr) -> sympy.Poly:
    return sympy.Poly(expr, q, domain="ZZ")


def at_one(poly) -> int:
    """Value at q = 1 by evaluation, never by a limit."""
    return int(poly.eval(1)) if isinstance(poly, sympy.Poly) else int(sympy.sympify(poly).subs(q, 1))


@lru_cache(maxsize=None)
def _qbinom(a, b):
    if b < 0 or b > a:
        return qpoly(0)
    if b == 0 or b == a:
        return qpoly(1)
    # Pascal: (a b) = (a−1 b−1) + q^b (a−1 b)
    return _qbinom(a - 1, b - 1) + qpoly(q ** b) * _qbinom(a - 1, b)


def qbinom(a, b) -> sympy.Poly:
    """Gaussian binomial (a b)_q; zero outside 0 ≤ b ≤ a."""
    if a < 0:
        return qpoly(0)
    return _qbinom(int(a), int(b))


def gl_poincare(d) -> sympy.Poly:
    """[GL_d] = q^{d(d−1)/2} ∏_{k=1}^{d} (q^k − 1)."""
    if d < 0:
        raise DimensionError(f"GL_d needs d >= 0, got {d}")
    expr = q ** (d * (d - 1) // 2)
    for k in range(1, d + 1):
        expr *= q ** k - 1
    return qpoly(sympy.expand(expr))


def block_inverse_chi(parts):
    """χ of ∏_l [BGL_{r_l} → M]: one over the order of the block upper-triangular group."""
    parts = tuple(int(r) for r in parts)
    if any(r < 1 for r in parts):
        raise DimensionError(f"block sizes must be >= 1, got {parts}")
    denominator = sympy.Integer(1)
    for r in parts:
        denominator *= gl_poincare(r).as_expr()
    cross = sum(parts[u] * parts[v] for u in range(len(parts)) for v in range(u + 1, len(parts)))
    return sympy.cancel(1 / (denominator * q ** cross))


def compositions(s):
    """Ordered tuples of positive integers summing to s."""
    if s == 0:
        yield ()
        return
    for first in range(1, s + 1):
        for rest in compositions(s - first):
            yield (first,) + rest


def one_ss_chi(s):
    return sympy.cancel(1 / gl_poincare(s).as_expr())


def one_ss_inverse_chi(s):
    """Degree-s part of 1_ss⁻¹: Σ over compositions of s of (−1)^k χ(∏ BGL_{r_l})."""
    if s == 0:
        return sympy.Integer(1)
    total = sympy.Integer(0)
    for parts in compositions(s):
        total += (-1) ** len(parts) * block_inverse_chi(parts)
    return sympy.factor(sympy.cancel(total))


def bending_by_compositions(eta, gamma, s) -> sympy.Poly:
    """
    The degree-s part of a bending after the first, as the paired sum over
    compositions (r_1..r_k) of s:

        Σ (−1)^{k+1} (q^{(s−r_k)γ + r_k η} − q^{sγ}) · χ(∏ BGL_{r_l}).

    The sum collapses to the stratum q^{sγ}·(η−γ s)_q; a non-polynomial
    remainder means the inputs were inconsistent.
    """
    total = sympy.Integer(0)
    for parts in compositions(s):
        last = parts[-1]
        numerator = q ** ((s - last) * gamma + last * eta) - q ** (s * gamma)
        total += (-1) ** (len(parts) + 1) * numerator * block_inverse_chi(parts)
    total = sympy.cancel(total)
    numer, denom = sympy.fraction(total)
    if sympy.Poly(denom, q).degree() != 0:
        raise DimensionError(f"composition sum for η={eta}, γ={gamma}, s={s} is not polynomial")
    return qpoly(sympy.expand(numer / denom))


def commute_monomial(m, d) -> int:
    """q-exponent picked up when z^{(m,n)} passes a class of dimension d: −m·d."""
    return -sum(a * b for a, b in zip(m, d))


# ── Quick test ────────────────────────────────────────────────────────
if __name__ == "__main__":
    print(qbinom(5, 2).as_expr(), "->", at_one(qbinom(5, 2)))
    print(gl_poincare(2).as_expr())
    print(one_ss_inverse_chi(2))
    print(bending_by_compositions(3, 1, 1).as_expr())
