"""
Explicit representations over prime fields and the quiver-Grassmannian
oracle.

Counts of subrepresentations over F_p are obtained by walking the
vertices in topological order (1..n, since arrows increase labels) and
enumerating subspaces in reduced row echelon form. The count at several
primes is interpolated to a polynomial in q, whose value at q = 1 is the
Euler characteristic of the complex quiver Grassmannian.
"""
import os
import sys
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Callable

import sympy

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from config import settings
from quiver.quiver import Quiver
from utils.errors import (DimensionError, NotIndecomposableError, UnsupportedError,
                          PolynomialCountError, ResourceLimitError, SchemaError)
from utils.logger import setup_logger

logger = setup_logger("GrassmannianOracle")

q = sympy.Symbol("q")


# ── Linear algebra over F_p ──────────────────────────────────────────

def rref_mod_p(rows, p):
    """Row-reduce `rows` over F_p. Returns (basis, pivots) with zero rows dropped."""
    matrix = [[x % p for x in row] for row in rows]
    if not matrix:
        return (), ()
    width = len(matrix[0])
    pivots = []
    r = 0
    for c in range(width):
        pivot_row = next((i for i in range(r, len(matrix)) if matrix[i][c]), None)
        if pivot_row is None:
            continue
        matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        inv = pow(matrix[r][c], -1, p)
        matrix[r] = [(x * inv) % p for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][c]:
                factor = matrix[i][c]
                matrix[i] = [(x - factor * y) % p for x, y in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
        if r == len(matrix):
            break
    return tuple(tuple(row) for row in matrix[:r]), tuple(pivots)


def apply_mod_p(matrix, vector, p):
    return tuple(sum(a * x for a, x in zip(row, vector)) % p for row in matrix)


def iter_subspaces(dim, k, p):
    """Every k-dimensional subspace of F_p^dim, as its RREF basis."""
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(dim), k):
        free = [(r, c) for r, pc in enumerate(pivots)
                for c in range(pc + 1, dim) if c not in pivots]
        for values in product(range(p), repeat=len(free)):
            rows = [[0] * dim for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield tuple(tuple(row) for row in rows)


def iter_superspaces(containing, pivots, dim, k, p):
    """k-dimensional subspaces of F_p^dim containing the RREF subspace `containing`."""
    w = len(containing)
    if k < w:
        return
    complement = [c for c in range(dim) if c not in pivots]
    for quotient in iter_subspaces(len(complement), k - w, p):
        lifted = []
        for row in quotient:
            vector = [0] * dim
            for c, x in zip(complement, row):
                vector[c] = x
            lifted.append(tuple(vector))
        yield tuple(containing) + tuple(lifted)


@lru_cache(maxsize=None)
def qbinom_at(n, k, value):
    """Gaussian binomial [n choose k] evaluated at an integer."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= value ** (n - i) - 1
        den *= value ** (i + 1) - 1
    return num // den


# ── Representations ──────────────────────────────────────────────────

@dataclass
class ExplicitRep:
    """Matrices act on column vectors: maps[a] has shape dims[t] × dims[s] for arrow a = (s, t)."""
    quiver: Quiver
    p: int
    dims: tuple
    maps: dict = field(default_factory=dict)

    def __post_init__(self):
        self.dims = tuple(int(x) for x in self.dims)
        if len(self.dims) != self.quiver.n_vertices:
            raise DimensionError(
                f"{len(self.dims)} spaces for a quiver with {self.quiver.n_vertices} vertices")
        if not sympy.isprime(self.p):
            raise SchemaError(f"{self.p} is not prime")
        for idx, (s, t) in enumerate(self.quiver.arrows):
            matrix = self.maps.get(idx)
            if matrix is None:
                matrix = [[0] * self.dims[s - 1] for _ in range(self.dims[t - 1])]
            matrix = tuple(tuple(int(x) % self.p for x in row) for row in matrix)
            if len(matrix) != self.dims[t - 1] or any(len(row) != self.dims[s - 1] for row in matrix):
                raise DimensionError(
                    f"arrow {idx} ({s}->{t}) needs a {self.dims[t - 1]}x{self.dims[s - 1]} matrix")
            self.maps[idx] = matrix

    @classmethod
    def from_json(cls, quiver, payload):
        try:
            maps = {int(k): v for k, v in payload.get("maps", {}).items()}
            return cls(quiver, int(payload["p"]), tuple(payload["dims"]), maps)
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"bad representation JSON: {e}") from e

    def to_json(self):
        return {"p": self.p, "dims": list(self.dims),
                "maps": {str(k): [list(r) for r in v] for k, v in sorted(self.maps.items())}}


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def kronecker_indecomposable(d, p, param=(1, 1)) -> ExplicitRep:
    """
    Indecomposable C^a ⇉ C^b of the Kronecker quiver over F_p.
    (n, n+1): inclusions x ↦ (x, 0) and x ↦ (0, x).
    (k, k): μ·I and the unipotent Jordan block with superdiagonal λ.
    (n+1, n): projections onto the first and the last n coordinates.
    """
    a, b = (int(x) for x in d)
    quiver = Quiver.kronecker(2)
    if b == a + 1:
        f1 = [[1 if i == j else 0 for j in range(a)] for i in range(b)]
        f2 = [[1 if i == j + 1 else 0 for j in range(a)] for i in range(b)]
    elif a == b and a > 0:
        mu, lam = param
        f1 = [[mu if i == j else 0 for j in range(a)] for i in range(a)]
        f2 = [[1 if i == j else (lam if j == i + 1 else 0) for j in range(a)] for i in range(a)]
    elif a == b + 1:
        f1 = [[1 if j == i else 0 for j in range(a)] for i in range(b)]
        f2 = [[1 if j == i + 1 else 0 for j in range(a)] for i in range(b)]
    else:
        raise NotIndecomposableError(f"{(a, b)} is not a Kronecker indecomposable dimension")
    return ExplicitRep(quiver, p, (a, b), {0: f1, 1: f2})


def interval_module(quiver: Quiver, i, j, p) -> ExplicitRep:
    """Type-A path quiver: F_p on vertices i..j, identity maps between them."""
    if not 1 <= i <= j <= quiver.n_vertices:
        raise NotIndecomposableError(f"[{i},{j}] is not an interval of {quiver.name}")
    dims = tuple(1 if i <= v <= j else 0 for v in range(1, quiver.n_vertices + 1))
    maps = {}
    for idx, (s, t) in enumerate(quiver.arrows):
        if t != s + 1:
            raise NotIndecomposableError(f"{quiver.name} is not a type-A path quiver")
        if dims[s - 1] and dims[t - 1]:
            maps[idx] = _identity(1)
    return ExplicitRep(quiver, p, dims, maps)


@dataclass(frozen=True)
class RepresentationSpec:
    """A representation defined over every sample prime: p ↦ ExplicitRep."""
    quiver: Quiver
    dims: tuple
    builder: Callable
    rigid: bool
    name: str = "D"

    def at(self, p) -> ExplicitRep:
        rep = self.builder(p)
        if rep.dims != tuple(self.dims):
            raise DimensionError(f"builder for {self.name} produced dims {rep.dims}")
        return rep


def kronecker_spec(d, param=(1, 1)) -> RepresentationSpec:
    d = tuple(int(x) for x in d)
    kronecker_indecomposable(d, 2, param)
    return RepresentationSpec(Quiver.kronecker(2), d,
                              lambda p: kronecker_indecomposable(d, p, param),
                              rigid=d[0] != d[1], name=f"K{d}" if d[0] != d[1] else f"K{d}{tuple(param)}")


def interval_spec(quiver: Quiver, i, j) -> RepresentationSpec:
    sample = interval_module(quiver, i, j, 2)
    return RepresentationSpec(quiver, sample.dims,
                              lambda p: interval_module(quiver, i, j, p),
                              rigid=True, name=f"M[{i},{j}]")


def zero_spec(quiver: Quiver) -> RepresentationSpec:
    dims = (0,) * quiver.n_vertices
    return RepresentationSpec(quiver, dims, lambda p: ExplicitRep(quiver, p, dims),
                              rigid=True, name="0")


def indecomposable_spec(quiver: Quiver, d) -> RepresentationSpec:
    """Explicit model of the indecomposable with dimension vector d, where one is known."""
    d = tuple(int(x) for x in d)
    if quiver == Quiver.kronecker(2):
        return kronecker_spec(d)
    if quiver == Quiver.type_a(quiver.n_vertices):
        support = [v for v, x in enumerate(d, start=1) if x]
        if support and set(d) <= {0, 1} and support == list(range(support[0], support[-1] + 1)):
            return interval_spec(quiver, support[0], support[-1])
        raise NotIndecomposableError(f"{d} is not an interval module of {quiver.name}")
    raise UnsupportedError(f"no explicit indecomposables are built for {quiver.name}")


def direct_sum_spec(parts, rigid=False) -> RepresentationSpec:
    """Block-diagonal sum of (spec, multiplicity) pairs over one quiver."""
    parts = [(spec, k) for spec, k in parts if k > 0]
    if not parts:
        raise DimensionError("empty direct sum")
    quiver = parts[0][0].quiver
    dims = tuple(sum(spec.dims[v] * k for spec, k in parts) for v in range(quiver.n_vertices))

    def build(p):
        blocks = [spec.at(p) for spec, k in parts for _ in range(k)]
        maps = {}
        for idx, (s, t) in enumerate(quiver.arrows):
            matrix = [[0] * dims[s - 1] for _ in range(dims[t - 1])]
            row0 = col0 = 0
            for rep in blocks:
                for r, row in enumerate(rep.maps[idx]):
                    for c, x in enumerate(row):
                        matrix[row0 + r][col0 + c] = x
                row0 += rep.dims[t - 1]
                col0 += rep.dims[s - 1]
            maps[idx] = matrix
        return ExplicitRep(quiver, p, dims, maps)

    name = " + ".join(f"{spec.name}^{k}" if k > 1 else spec.name for spec, k in parts)
    return RepresentationSpec(quiver, dims, build, rigid=rigid, name=name)


# ── Counting ─────────────────────────────────────────────────────────

def _check_cells(rep: ExplicitRep, e):
    cells = 1
    for v in range(1, rep.quiver.n_vertices + 1):
        if not rep.quiver.is_sink(v):
            cells *= qbinom_at(rep.dims[v - 1], e[v - 1], rep.p)
    if cells > settings.MAX_GRASSMANNIAN_CELLS:
        raise ResourceLimitError(
            f"{cells} Grassmannian cells over F_{rep.p} exceed the limit "
            f"{settings.MAX_GRASSMANNIAN_CELLS}")
    return cells


def subrep_count(rep: ExplicitRep, e) -> int:
    """Number of subrepresentations of `rep` with dimension vector e over F_p."""
    quiver = rep.quiver
    n = quiver.n_vertices
    e = tuple(int(x) for x in e)
    if len(e) != n:
        raise DimensionError(f"dimension vector {e} has the wrong length")
    if any(x < 0 or x > d for x, d in zip(e, rep.dims)):
        return 0
    _check_cells(rep, e)
    p = rep.p
    incoming = {v: quiver.arrows_into(v) for v in range(1, n + 1)}

    def images(chosen, v):
        vectors = []
        for idx, s in incoming[v]:
            matrix = rep.maps[idx]
            vectors.extend(apply_mod_p(matrix, u, p) for u in chosen[s])
        return rref_mod_p(vectors, p) if vectors else ((), ())

    def count_from(v, chosen):
        if v > n:
            return 1
        dim, k = rep.dims[v - 1], e[v - 1]
        forced, pivots = images(chosen, v)
        if len(forced) > k:
            return 0
        if quiver.is_sink(v):
            return qbinom_at(dim - len(forced), k - len(forced), p) * count_from(v + 1, chosen)
        total = 0
        for basis in iter_superspaces(forced, pivots, dim, k, p):
            chosen[v] = basis
            total += count_from(v + 1, chosen)
        chosen.pop(v, None)
        return total

    return count_from(1, {})


# ── Interpolation ────────────────────────────────────────────────────

_COUNTS = {}


def _cached_count(spec: RepresentationSpec, prime, e):
    """subrep_count memoised per (quiver, dims, name, prime, e); the cell limit is checked first."""
    rep = spec.at(prime)
    _check_cells(rep, e)
    key = (spec.quiver.n_vertices, tuple(spec.quiver.arrows), tuple(spec.dims), spec.name, prime, e)
    if key not in _COUNTS:
        _COUNTS[key] = subrep_count(rep, e)
    return _COUNTS[key]


def _ambient_degree(dims, e):
    return sum(x * (d - x) for x, d in zip(e, dims))


def _fit_palindromic(points, degree, monic=False):
    """
    Solve for a palindromic polynomial of the given degree through `points`.
    With `monic` the outer coefficients are fixed to 1 and one point fewer is used.
    """
    first = 1 if monic else 0
    unknowns = degree // 2 + 1 - first
    if len(points) < unknowns:
        raise PolynomialCountError(f"{unknowns} points needed, {len(points)} given")
    rows, rhs = [], []
    for prime, count in points[:unknowns]:
        rows.append([prime ** i + prime ** (degree - i) if i != degree - i else prime ** i
                     for i in range(first, degree // 2 + 1)])
        rhs.append(count - (prime ** degree + 1 if monic else 0))
    coeffs = [0] * (degree + 1)
    if monic:
        coeffs[0] = coeffs[degree] = 1
    if unknowns:
        solution = sympy.Matrix(rows).LUsolve(sympy.Matrix(rhs))
        for i, c in enumerate(solution, start=first):
            if not c.is_integer:
                raise PolynomialCountError(f"non-integral coefficient {c}")
            coeffs[i] = coeffs[degree - i] = int(c)
    return sympy.Poly.from_list(list(reversed(coeffs)), q)


def _verify(poly, spec, e, primes):
    if not primes:
        raise PolynomialCountError("no sample prime left to verify against")
    for prime in primes:
        expected = _cached_count(spec, prime, e)
        if poly.eval(prime) != expected:
            raise PolynomialCountError(
                f"count {expected} at p={prime} disagrees with {poly.as_expr()} for {spec.name}, e={e}")


def _rigid_fit(spec: RepresentationSpec, e, primes):
    """
    Smooth projective irreducible Gr_e(D) of dimension χ(e, d − e): the count
    is palindromic, and monic with constant term 1 when nonempty.
    """
    degree = spec.quiver.euler_form(e, tuple(d - x for d, x in zip(spec.dims, e)))
    if degree < 0 or _cached_count(spec, primes[0], e) == 0:
        poly = sympy.Poly(0, q)
        _verify(poly, spec, e, primes[1:2])
        return poly
    last_error = None
    for monic in (True, False):
        unknowns = degree // 2 + 1 - (1 if monic else 0)
        if unknowns + 1 > len(primes):
            last_error = PolynomialCountError("not enough sample primes")
            continue
        points = [(pr, _cached_count(spec, pr, e)) for pr in primes[:max(unknowns, 1)]]
        try:
            poly = _fit_palindromic(points, degree, monic=monic)
            _verify(poly, spec, e, primes[unknowns:unknowns + 1])
            return poly
        except PolynomialCountError as err:
            logger.debug("%s palindromic fit failed for %s, e=%s: %s",
                         "monic" if monic else "plain", spec.name, e, err)
            last_error = err
    raise last_error


def quiver_grassmannian_polynomial(spec: RepresentationSpec, e, primes=None) -> sympy.Poly:
    """Counting polynomial of Gr_e(D) in q, verified on one extra prime."""
    e = tuple(int(x) for x in e)
    if len(e) != len(spec.dims):
        raise DimensionError(f"dimension vector {e} has the wrong length")
    if any(x < 0 or x > d for x, d in zip(e, spec.dims)):
        return sympy.Poly(0, q)
    if all(x == 0 for x in e) or e == tuple(spec.dims):
        return sympy.Poly(1, q)
    primes = list(primes or settings.SAMPLE_PRIMES)

    if spec.rigid:
        try:
            poly = _rigid_fit(spec, e, primes)
            logger.debug("Gr_%s(%s) = %s", e, spec.name, poly.as_expr())
            return poly
        except PolynomialCountError as err:
            logger.warning("palindromic fit failed for %s, e=%s (%s); using the ambient bound",
                           spec.name, e, err)

    degree = _ambient_degree(spec.dims, e)
    if degree + 2 > len(primes):
        raise ResourceLimitError(
            f"ambient degree {degree} needs {degree + 2} sample primes, {len(primes)} configured")
    points = [(pr, _cached_count(spec, pr, e)) for pr in primes[:degree + 1]]
    poly = sympy.Poly(sympy.interpolate(points, q), q)
    if any(not c.is_integer for c in poly.all_coeffs()):
        raise PolynomialCountError(f"non-integral interpolation {poly.as_expr()} for {spec.name}, e={e}")
    _verify(poly, spec, e, primes[degree + 1:degree + 2])
    logger.debug("Gr_%s(%s) = %s", e, spec.name, poly.as_expr())
    return poly


def grassmannian_euler_char(spec: RepresentationSpec, e, primes=None) -> int:
    return int(quiver_grassmannian_polynomial(spec, e, primes).eval(1))


# ── Quick test ──────────────────────────────────────────────────
if __name__ == "__main__":
    spec = kronecker_spec((2, 3))
    for prime in (2, 3, 5):
        print(f"p={prime}: #Gr_(1,2) = {subrep_count(spec.at(prime), (1, 2))}")
    print("χ(Gr_(1,2)(C²⇉C³)) =", grassmannian_euler_char(spec, (1, 2)))
