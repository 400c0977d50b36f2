"""
Seeds with principal coefficients and their mutations.

Convention: ε is the transpose of the B-matrix used in most of the
cluster-algebra literature. `Seed.from_b_matrix` does the transpose for
you; every other entry point expects ε.

The extended matrix is ε̃ = (ε  I; −I  0) of size 2n; only the first n
indices mutate. Variables are Laurent polynomials in A_1..A_n, X_1..X_n.
"""
import os
import sys
from collections import deque

import sympy

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from algebra.laurent import LaurentPoly
from algebra.lattice import SkewForm
from utils.errors import (DimensionError, LaurentDivisionError,
                          MalformedVariableError, MutationIndexError, ScatteringError)
from utils.logger import setup_logger

logger = setup_logger("SeedMutation")


def mutate_matrix(eps, k, mutable=None):
    """
    Mutate a square integer matrix at the 1-based index k.

    ε'_ij = −ε_ij              if i = k or j = k
    ε'_ij = ε_ij + (|ε_ik| ε_kj + ε_ik |ε_kj|) / 2   otherwise

    Note the index order ε_ik ε_kj; reading it as ε_ki ε_jk breaks sign coherence.
    """
    rows = [list(map(int, row)) for row in eps]
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise DimensionError("matrix must be square")
    mutable = size if mutable is None else mutable
    if not 1 <= k <= mutable:
        raise MutationIndexError(f"mutation index k={k} out of range 1..{mutable}")
    k -= 1
    out = [row[:] for row in rows]
    for i in range(size):
        for j in range(size):
            if i == k or j == k:
                out[i][j] = -rows[i][j]
            else:
                a, b = rows[i][k], rows[k][j]
                out[i][j] = rows[i][j] + (abs(a) * b + a * abs(b)) // 2
    return tuple(tuple(row) for row in out)


def extended_matrix(form: SkewForm):
    n = form.rank
    top = [list(form.matrix[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    bottom = [[-1 if j == i else 0 for j in range(n)] + [0] * n for i in range(n)]
    return tuple(tuple(row) for row in top + bottom)


class Seed:

    def __init__(self, initial: SkewForm, extended, variables, word=()):
        self.initial = initial
        self.rank = initial.rank
        self.extended = tuple(tuple(row) for row in extended)
        self.variables = tuple(variables)
        self.word = tuple(word)

    # ── Constructors ─────────────────────────────────────────────────

    @classmethod
    def initial_seed(cls, form: SkewForm):
        n = form.rank
        variables = [LaurentPoly.a_var(n, i) for i in range(1, n + 1)]
        return cls(form, extended_matrix(form), variables)

    @classmethod
    def rank2(cls, b):
        return cls.initial_seed(SkewForm.rank2(b))

    @classmethod
    def from_b_matrix(cls, b_matrix):
        """Import a literature B-matrix; ε = Bᵀ."""
        b_matrix = [list(row) for row in b_matrix]
        return cls.initial_seed(SkewForm([list(col) for col in zip(*b_matrix)]))

    @classmethod
    def from_quiver(cls, quiver):
        return cls.initial_seed(quiver.skew_form())

    # ── Derived data ─────────────────────────────────────────────────

    @property
    def epsilon(self):
        n = self.rank
        return SkewForm([row[:n] for row in self.extended[:n]])

    @property
    def c_matrix(self):
        """Rows are the c-vectors: the top-right block of ε̃ (identity initially)."""
        n = self.rank
        return tuple(tuple(row[n:]) for row in self.extended[:n])

    def c_vector(self, k):
        return self.c_matrix[k - 1]

    def g_vectors(self):
        return tuple(g_vector(v, self.initial) for v in self.variables)

    def is_sign_coherent(self):
        return all(all(x >= 0 for x in row) or all(x <= 0 for x in row)
                   for row in self.c_matrix)

    def same_cluster(self, other):
        """Comparison up to simultaneous relabelling of variables."""
        return set(self.variables) == set(other.variables)

    def __eq__(self, other):
        return (isinstance(other, Seed)
                and self.extended == other.extended
                and self.variables == other.variables)

    def __hash__(self):
        return hash((self.extended, self.variables))

    def __repr__(self):
        return f"Seed(word={list(self.word)}, g={self.g_vectors()})"


def _exchange_product(seed: Seed, k, sign):
    n = seed.rank
    row = seed.extended[k - 1]
    product = LaurentPoly.one(n)
    for j, entry in enumerate(row):
        power = entry if sign > 0 else -entry
        if power <= 0:
            continue
        var = seed.variables[j] if j < n else LaurentPoly.x_var(n, j - n + 1)
        product = product * (var ** power)
    return product


def mutate_seed(seed: Seed, k) -> Seed:
    """Seed mutation at k; the new variable comes from an exact Laurent division."""
    n = seed.rank
    if not 1 <= k <= n:
        raise MutationIndexError(f"mutation index k={k} out of range 1..{n}")
    binomial = _exchange_product(seed, k, +1) + _exchange_product(seed, k, -1)
    try:
        new_var = binomial.exact_divide(seed.variables[k - 1])
    except LaurentDivisionError as e:
        logger.error("Exchange relation failed at k=%d after word %s: %s", k, seed.word, e)
        raise
    if not new_var.has_positive_coefficients():
        raise LaurentDivisionError(f"mutation at {k} produced a non-positive variable")
    variables = list(seed.variables)
    variables[k - 1] = new_var
    mutated = Seed(seed.initial, mutate_matrix(seed.extended, k, mutable=n),
                   variables, seed.word + (k,))
    if not mutated.is_sign_coherent():
        logger.error("c-matrix lost sign coherence after word %s", mutated.word)
        raise ScatteringError(f"c-matrix {mutated.c_matrix} is not sign-coherent after {list(mutated.word)}")
    return mutated


def mutate_word(seed: Seed, word) -> Seed:
    for k in word:
        seed = mutate_seed(seed, k)
    return seed


def cluster_variable(seed: Seed, word, idx) -> LaurentPoly:
    if not 1 <= idx <= seed.rank:
        raise MutationIndexError(f"variable index {idx} out of range 1..{seed.rank}")
    return mutate_word(seed, word).variables[idx - 1]


def cluster_monomial(seed: Seed, exponents, x_exponents=None) -> LaurentPoly:
    """Product of one seed's variables (nonnegative powers) times an X-monomial."""
    if len(exponents) != seed.rank:
        raise DimensionError("one exponent per cluster variable expected")
    if any(a < 0 for a in exponents):
        raise DimensionError("cluster monomials use nonnegative powers")
    n = seed.rank
    result = LaurentPoly.one(n)
    for var, power in zip(seed.variables, exponents):
        result = result * (var ** power)
    if x_exponents is not None:
        result = result.shift((0,) * n + tuple(x_exponents))
    return result


def f_polynomial(v: LaurentPoly) -> LaurentPoly:
    return v.substitute_ones("A")


def g_vector(v: LaurentPoly, form: SkewForm):
    """
    Exponent g of the factorization v = A^g · F(X_1 A^{p*(e_1)}, ...).
    Raises MalformedVariableError when v does not have that shape.
    """
    n = form.rank
    if v.rank != n:
        raise DimensionError(f"variable of rank {v.rank} against form of rank {n}")
    leading = [m for m in v.terms() if all(x == 0 for x in m.n_part)]
    if len(leading) != 1 or leading[0].coeff != 1:
        raise MalformedVariableError("no unique X-free leading term with coefficient 1")
    g = leading[0].m_part
    rows = [form.p_star(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
    for mono in v.terms():
        expected = tuple(g[j] + sum(mono.n_part[i] * rows[i][j] for i in range(n))
                         for j in range(n))
        if mono.m_part != expected:
            raise MalformedVariableError(
                f"term {mono.exponent} is not of the form g + p*(a)")
    return tuple(g)


def check_tropical_duality(seed: Seed) -> bool:
    """Gᵀ · C = I with G's columns the g-vectors and C's columns the c-vectors."""
    n = seed.rank
    G = sympy.Matrix(n, n, lambda i, j: seed.g_vectors()[j][i])
    C = sympy.Matrix(n, n, lambda i, j: seed.c_matrix[j][i])
    return G.T * C == sympy.eye(n)


def mutation_ball(seed: Seed, depth):
    """
    Seeds reachable by words of length <= depth without immediate repeats,
    deduplicated by their labelled g-vectors. Breadth-first, so each seed
    keeps a shortest word.
    """
    seen = {seed.g_vectors(): seed}
    queue = deque([seed])
    while queue:
        current = queue.popleft()
        if len(current.word) >= depth:
            continue
        for k in range(1, seed.rank + 1):
            if current.word and current.word[-1] == k:
                continue
            nxt = mutate_seed(current, k)
            key = nxt.g_vectors()
            if key not in seen:
                seen[key] = nxt
                queue.append(nxt)
    logger.info("Mutation ball of depth %d holds %d labelled seeds", depth, len(seen))
    return list(seen.values())


def rank2_sequence(b, start, stop):
    """
    Coefficient-free rank-2 sequence θ_k (X_i := 1) for start <= k <= stop,
    with θ_1 = A_1, θ_2 = A_2 and θ_{k−1} θ_{k+1} = θ_k^b + 1.
    """
    seed0 = Seed.rank2(b)
    values = {1: seed0.variables[0].substitute_ones("X"),
              2: seed0.variables[1].substitute_ones("X")}
    seed = seed0
    for k in range(3, stop + 1):
        vertex = 1 if k % 2 == 1 else 2
        seed = mutate_seed(seed, vertex)
        values[k] = seed.variables[vertex - 1].substitute_ones("X")
    seed = seed0
    for k in range(0, start - 1, -1):
        vertex = 2 if k % 2 == 0 else 1
        seed = mutate_seed(seed, vertex)
        values[k] = seed.variables[vertex - 1].substitute_ones("X")
    return {k: v for k, v in sorted(values.items()) if start <= k <= stop}


# ── Quick test ──────────────────────────────────────────────
if __name__ == "__main__":
    s = mutate_seed(Seed.rank2(1), 1)
    print(s.variables[0].to_text())
    print("g-vectors:", s.g_vectors(), "c-matrix:", s.c_matrix)
