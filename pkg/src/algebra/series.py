"""
Truncated formal series over the doubled lattice.

A GradedSeries of order k keeps only terms whose N-degree (sum of the
X-exponents) is at most k. Wall functions, their powers and inverses all
live here; coefficients stay integral because every inverted series has
constant term 1.
"""
import os
import sys

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from algebra.laurent import LaurentPoly
from config import settings
from utils.errors import (DimensionError, NotInvertibleError,
                          OrderMismatchError, ResourceLimitError)


def n_degree(exponent, rank):
    return sum(exponent[rank:])


class GradedSeries:

    __slots__ = ("rank", "order", "_terms")

    def __init__(self, rank, order, terms=None):
        if order < 0:
            raise OrderMismatchError(f"order must be >= 0, got {order}")
        self.rank = rank
        self.order = order
        kept = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != 2 * rank:
                raise DimensionError(f"exponent {exponent} does not match rank {rank}")
            if coeff and n_degree(exponent, rank) <= order:
                kept[exponent] = kept.get(exponent, 0) + coeff
        kept = {e: c for e, c in kept.items() if c}
        if len(kept) > settings.MAX_SERIES_TERMS:
            raise ResourceLimitError(
                f"{len(kept)} series terms exceed SCATTERING_MAX_SERIES_TERMS")
        self._terms = dict(sorted(kept.items()))

    # ── Constructors ─────────────────────────────────────────────────

    @classmethod
    def one(cls, rank, order):
        return cls(rank, order, {(0,) * (2 * rank): 1})

    @classmethod
    def from_poly(cls, poly: LaurentPoly, order):
        return cls(poly.rank, order, dict(poly.items()))

    @classmethod
    def binomial(cls, exponent, order, coeff=1):
        """1 + coeff · z^exponent."""
        rank = len(exponent) // 2
        return cls(rank, order, {(0,) * (2 * rank): 1, tuple(exponent): coeff})

    # ── Access ───────────────────────────────────────────────────────

    def items(self):
        return self._terms.items()

    def coefficient(self, exponent):
        return self._terms.get(tuple(exponent), 0)

    def constant_term(self):
        return self._terms.get((0,) * (2 * self.rank), 0)

    def is_one(self):
        return self._terms == {(0,) * (2 * self.rank): 1}

    def to_poly(self):
        return LaurentPoly(self.rank, self._terms)

    def truncate(self, order):
        return GradedSeries(self.rank, order, self._terms)

    def __len__(self):
        return len(self._terms)

    # ── Arithmetic ───────────────────────────────────────────────────

    def _check(self, other):
        if not isinstance(other, GradedSeries):
            raise TypeError(f"cannot combine GradedSeries with {type(other).__name__}")
        if other.rank != self.rank:
            raise DimensionError(f"rank mismatch: {self.rank} vs {other.rank}")
        if other.order != self.order:
            raise OrderMismatchError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return GradedSeries(self.rank, self.order, terms)

    def __sub__(self, other):
        self._check(other)
        return self + GradedSeries(self.rank, self.order,
                                   {e: -c for e, c in other._terms.items()})

    def __mul__(self, other):
        self._check(other)
        rank, order = self.rank, self.order
        right = [(e, c, n_degree(e, rank)) for e, c in other._terms.items()]
        terms = {}
        for e1, c1 in self._terms.items():
            d1 = n_degree(e1, rank)
            for e2, c2, d2 in right:
                if d1 + d2 > order:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return GradedSeries(rank, order, terms)

    def inverse(self):
        """
        Inverse as a geometric series in (f − 1).
        Needs constant term exactly 1 and every other term of positive degree.
        """
        if self.constant_term() != 1:
            raise NotInvertibleError(
                f"constant term is {self.constant_term()}, series is not a unit")
        zero = (0,) * (2 * self.rank)
        tail = {e: -c for e, c in self._terms.items() if e != zero}
        if any(n_degree(e, self.rank) <= 0 for e in tail):
            raise NotInvertibleError("non-constant term of degree 0 is not topologically nilpotent")
        step = GradedSeries(self.rank, self.order, tail)
        result = GradedSeries.one(self.rank, self.order)
        power = GradedSeries.one(self.rank, self.order)
        for _ in range(self.order):
            power = power * step
            if not power._terms:
                break
            result = result + power
        return result

    def power(self, e):
        if e < 0:
            return self.inverse().power(-e)
        result = GradedSeries.one(self.rank, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    __pow__ = power

    # ── Comparison ───────────────────────────────────────────────────

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (self.rank, self.order, self._terms) == (other.rank, other.order, other._terms)

    def __hash__(self):
        return hash((self.rank, self.order, tuple(self._terms.items())))

    def __repr__(self):
        return f"GradedSeries(order={self.order}, {self.to_poly().to_text()})"


def series_mul(f: GradedSeries, g: GradedSeries) -> GradedSeries:
    return f * g


def series_inverse(f: GradedSeries) -> GradedSeries:
    return f.inverse()
