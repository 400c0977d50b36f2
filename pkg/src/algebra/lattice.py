"""
Integer lattices N, M and the doubled lattice N ⊕ M.

Vectors are plain tuples of ints. Doubled vectors are laid out as
(n-part, m-part) on the N side and as (m-part, n-part) on the exponent
side, so a monomial z^(m, n) = A^m X^n reads left to right.
"""
import os
import sys
from math import gcd
from functools import reduce

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from utils.errors import DimensionError

LatticeVec = tuple


def check_rank(*vectors, rank=None):
    """Raise DimensionError unless all vectors share one length (optionally `rank`)."""
    lengths = {len(v) for v in vectors}
    if rank is not None:
        lengths.add(rank)
    if len(lengths) > 1:
        raise DimensionError(f"rank mismatch: lengths {sorted(lengths)}")


def vec_add(a, b):
    check_rank(a, b)
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    check_rank(a, b)
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(k, a):
    return tuple(k * x for x in a)


def dot(a, b):
    check_rank(a, b)
    return sum(x * y for x, y in zip(a, b))


def is_zero(a):
    return all(x == 0 for x in a)


def in_positive_cone(a):
    """True for nonzero vectors of N⁺ (all coordinates >= 0)."""
    return all(x >= 0 for x in a) and not is_zero(a)


def primitive(a):
    """Return (primitive vector, multiplicity) with a = multiplicity · primitive."""
    if is_zero(a):
        raise DimensionError("zero vector has no primitive direction")
    g = reduce(gcd, (abs(x) for x in a))
    return tuple(x // g for x in a), g


def unit(rank, i):
    """e_i with 1-based index i."""
    return tuple(1 if j == i - 1 else 0 for j in range(rank))


class SkewForm:
    """
    Skew-symmetric form on N given by ε_ij = {e_i, e_j}.
    p*(n) = {n, ·} as an element of M.
    """

    def __init__(self, matrix):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise DimensionError("skew form must be a square matrix")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != -rows[j][i]:
                    raise DimensionError(f"matrix is not skew-symmetric at ({i + 1},{j + 1})")
        self.matrix = rows
        self.rank = n

    @classmethod
    def rank2(cls, b):
        return cls([[0, b], [-b, 0]])

    def pair(self, n1, n2):
        check_rank(n1, n2, rank=self.rank)
        return sum(n1[i] * self.matrix[i][j] * n2[j]
                   for i in range(self.rank) for j in range(self.rank))

    def p_star(self, n):
        check_rank(n, rank=self.rank)
        return tuple(sum(n[i] * self.matrix[i][j] for i in range(self.rank))
                     for j in range(self.rank))

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"SkewForm({[list(r) for r in self.matrix]})"


class DoubledForm:
    """
    The form on Ñ = N ⊕ M used for principal coefficients.

    Pairings use the block matrix (ε  −I; I  0). The map p̃* sends
    (n, m) to (p*(n) − m, n), laid out as an exponent (m-part, n-part),
    so p̃*(e_i, 0) = (p*(e_i), e_i) is the exponent of a wall function.
    """

    def __init__(self, form: SkewForm):
        self.form = form
        self.rank = form.rank

    def _split(self, v):
        check_rank(v, rank=2 * self.rank)
        return v[:self.rank], v[self.rank:]

    def skew_pair(self, a, b):
        n1, m1 = self._split(a)
        n2, m2 = self._split(b)
        return self.form.pair(n1, n2) - dot(n1, m2) + dot(m1, n2)

    def tilde_p_star(self, v):
        n, m = self._split(v)
        return vec_sub(self.form.p_star(n), m) + tuple(n)

    def wall_exponent(self, n):
        """p̃*(n, 0) for n in N."""
        return self.tilde_p_star(tuple(n) + (0,) * self.rank)
