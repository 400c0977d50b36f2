"""
Acyclic quivers and the linear algebra of dimension vectors.

Vertices are 1-based and every arrow runs from a smaller to a larger
label. E = I − A is the Euler matrix (A counts arrows i → j), so
χ(c, d) = cᵀ E d and g(d) = E d.
"""
import os
import re
import sys
from functools import cached_property

import sympy

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from algebra.lattice import SkewForm, check_rank
from config import settings
from utils.errors import QuiverError, SchemaError


class Quiver:

    def __init__(self, n_vertices, arrows, name=None):
        if n_vertices < 1:
            raise QuiverError("a quiver needs at least one vertex")
        arrows = tuple((int(s), int(t)) for s, t in arrows)
        for s, t in arrows:
            if not (1 <= s <= n_vertices and 1 <= t <= n_vertices):
                raise QuiverError(f"arrow {s}->{t} leaves the vertex range 1..{n_vertices}")
            if s >= t:
                raise QuiverError(
                    f"arrow {s}->{t}: vertices must be numbered so that source < target")
        self.n_vertices = n_vertices
        self.arrows = arrows
        self.name = name or f"quiver{n_vertices}"

    # ── Constructors ─────────────────────────────────────────────────

    @classmethod
    def kronecker(cls, b=2):
        return cls(2, [(1, 2)] * b, name=f"kronecker{b}")

    @classmethod
    def type_a(cls, n):
        return cls(n, [(i, i + 1) for i in range(1, n)], name=f"a{n}")

    @classmethod
    def named(cls, name):
        """Look up config.yaml first, then the kronecker{b} / a{n} families."""
        entry = settings.quiver_config.get(name)
        if entry:
            return cls(entry["vertices"], entry.get("arrows", []), name=name)
        match = re.fullmatch(r"kronecker(\d+)", name)
        if match:
            return cls.kronecker(int(match.group(1)))
        match = re.fullmatch(r"a(\d+)", name)
        if match:
            return cls.type_a(int(match.group(1)))
        raise SchemaError(f"unknown quiver {name!r}")

    @classmethod
    def from_json(cls, payload):
        try:
            return cls(int(payload["vertices"]), payload.get("arrows", []))
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"bad quiver JSON: {e}") from e

    def to_json(self):
        return {"vertices": self.n_vertices, "arrows": [list(a) for a in self.arrows]}

    # ── Matrices ─────────────────────────────────────────────────────

    @cached_property
    def arrow_matrix(self):
        n = self.n_vertices
        a = [[0] * n for _ in range(n)]
        for s, t in self.arrows:
            a[s - 1][t - 1] += 1
        return tuple(tuple(row) for row in a)

    @cached_property
    def euler_matrix(self):
        n = self.n_vertices
        return sympy.Matrix(n, n, lambda i, j: (1 if i == j else 0) - self.arrow_matrix[i][j])

    @cached_property
    def path_matrix(self):
        """E⁻¹: entry (i, j) counts paths from i to j."""
        return self.euler_matrix.inv()

    @cached_property
    def coxeter_matrix(self):
        """Φ = −E⁻¹Eᵀ; τ acts on dimension vectors as d ↦ Φ d."""
        return -self.path_matrix * self.euler_matrix.T

    @cached_property
    def coxeter_inverse(self):
        return self.coxeter_matrix.inv()

    def skew_form(self):
        a = self.arrow_matrix
        n = self.n_vertices
        return SkewForm([[a[i][j] - a[j][i] for j in range(n)] for i in range(n)])

    # ── Dimension vectors ────────────────────────────────────────────

    def euler_form(self, c, d):
        check_rank(c, d, rank=self.n_vertices)
        value = sympy.Matrix([list(c)]) * self.euler_matrix * sympy.Matrix(list(d))
        return int(value[0, 0])

    def g_map(self, d):
        """E·d. For the Kronecker quiver g((n, n+1)) = (−n−2, n+1), so −g(5,6) = (7,−6);
        the value (2−n, n+1) quoted in some worked examples does not satisfy this."""
        check_rank(d, rank=self.n_vertices)
        return tuple(int(x) for x in self.euler_matrix * sympy.Matrix(list(d)))

    def g_to_dim(self, g):
        """Inverse of g_map."""
        check_rank(g, rank=self.n_vertices)
        return tuple(int(x) for x in self.path_matrix * sympy.Matrix(list(g)))

    def projective_dim(self, i):
        return tuple(int(x) for x in self.path_matrix.row(i - 1))

    def injective_dim(self, i):
        return tuple(int(x) for x in self.path_matrix.col(i - 1))

    def simple_dim(self, i):
        return tuple(1 if j == i else 0 for j in range(1, self.n_vertices + 1))

    def nakayama_dim(self, i):
        """ν P(i) = I(i) on dimension vectors."""
        return self.injective_dim(i)

    def projectives(self):
        return {self.projective_dim(i): i for i in range(1, self.n_vertices + 1)}

    def injectives(self):
        return {self.injective_dim(i): i for i in range(1, self.n_vertices + 1)}

    def apply(self, matrix, d):
        return tuple(int(x) for x in matrix * sympy.Matrix(list(d)))

    def is_finite_type(self):
        """Positive definite symmetrised Euler form (Tits form)."""
        return (self.euler_matrix + self.euler_matrix.T).is_positive_definite

    def is_sink(self, v):
        return all(s != v for s, _ in self.arrows)

    def arrows_into(self, v):
        return [(idx, s) for idx, (s, t) in enumerate(self.arrows) if t == v]

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.n_vertices == other.n_vertices
                and sorted(self.arrows) == sorted(other.arrows))

    def __hash__(self):
        return hash((self.n_vertices, tuple(sorted(self.arrows))))

    def __repr__(self):
        return f"Quiver({self.name}: {self.n_vertices} vertices, arrows={list(self.arrows)})"
