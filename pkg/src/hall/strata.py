"""
Bending strata of broken lines for quiver representations.

A broken line for ϑ_{−g(d)} that bends λ_j times on the wall of c_j builds
a filtration 0 ⊂ V_1 ⊂ … ⊂ V_s of a subrepresentation of D with
V_j/V_{j−1} = C_j^{⊕λ_j}. Each bend contributes the Poincaré polynomial of
an affine bundle over a Grassmannian; their product at q = 1 is the
coefficient the line carries.
"""
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import sympy

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from algebra.lattice import DoubledForm, dot, is_zero, vec_add
from algebra.laurent import LaurentPoly
from brokenlines.broken_lines import BrokenLine, enumerate_broken_lines
from config import settings
from hall.qpoly import at_one, commute_monomial, qbinom, qpoly
from quiver.ar_theory import classify_indecomposable, hom_ext_dims
from quiver.caldero_chapoton import euler_characteristics
from quiver.quiver import Quiver
from quiver.representations import (RepresentationSpec, grassmannian_euler_char,
                                    indecomposable_spec, q)
from scattering.geometry import cross, format_point
from scattering.rank2 import ScatteringEngine, in_cluster_complex
from utils.errors import (DimensionError, InadmissibleBendError, InconclusiveError,
                          InvalidStabilityError, NoBendingError, NotIndecomposableError,
                          ScatteringLabError, UnsupportedError)
from utils.logger import setup_logger

logger = setup_logger("HallStrata")

TORSION = "torsion"
TORSION_FREE = "torsion-free"
ON_WALL = "wall"


@dataclass(frozen=True)
class Stratum:
    """q^{affine_exponent} · (ambient λ)_q."""
    affine_exponent: int
    lam: int
    ambient: int

    @property
    def qpoly(self) -> sympy.Poly:
        return qpoly(q ** self.affine_exponent) * qbinom(self.ambient, self.lam)

    @property
    def is_empty(self):
        return self.lam > self.ambient

    def value(self):
        return at_one(self.qpoly)


@dataclass(frozen=True)
class Filtration:
    """Quotients V_j/V_{j−1} = C_j^{⊕λ_j}, listed from the bottom."""
    steps: tuple = ()

    def extend(self, c, lam):
        if lam == 0:
            return self
        return Filtration(self.steps + ((tuple(c), int(lam)),))

    @property
    def dimension(self):
        """dim V_s, the subrepresentation the filtration builds."""
        total = None
        for c, lam in self.steps:
            part = tuple(lam * x for x in c)
            total = part if total is None else vec_add(total, part)
        return total

    def subspaces(self):
        dims, total = [], None
        for c, lam in self.steps:
            part = tuple(lam * x for x in c)
            total = part if total is None else vec_add(total, part)
            dims.append(total)
        return dims

    def quotients(self):
        return [tuple(lam * x for x in c) for c, lam in self.steps]

    def __len__(self):
        return len(self.steps)

    def describe(self):
        if not self.steps:
            return "0"
        return "0 ⊂ " + " ⊂ ".join(str(v) for v in self.subspaces())


@dataclass(frozen=True)
class StabilityValue:
    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))
        if self.im <= 0:
            raise InvalidStabilityError(
                f"Z = {self.re} + {self.im}i is not in the upper half plane")

    def phase_exceeds(self, other: "StabilityValue") -> bool:
        """arg(self) > arg(other), compared exactly in the upper half plane."""
        return cross((other.re, other.im), (self.re, self.im)) > 0

    def __str__(self):
        im = "" if self.im == 1 else str(self.im)
        return f"{self.re}+{im}i"


def central_charge(re_covector, im_covector, c) -> StabilityValue:
    """Z(c) = re·c + i·im·c."""
    return StabilityValue(sum(Fraction(a) * b for a, b in zip(re_covector, c)),
                          sum(Fraction(a) * b for a, b in zip(im_covector, c)))


def torsion_side(m, e):
    pairing = dot(m, e)
    if pairing > 0:
        return TORSION
    if pairing < 0:
        return TORSION_FREE
    return ON_WALL


def _check_endpoint(endpoint):
    endpoint = tuple(Fraction(x) for x in endpoint)
    if not all(x > 0 for x in endpoint):
        raise InvalidStabilityError(
            f"endpoint ({format_point(endpoint)}) is not in the positive chamber")
    return endpoint


def _non_regular(quiver, c):
    node = classify_indecomposable(quiver, c)
    if node.component == "R":
        raise UnsupportedError(f"bending on the regular wall {c} has no stratum formula")
    return node


# ── Bendings ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Bending:
    """
    One bend of a Hall broken line: its stratum, the extended filtration,
    the exponent shift λ·p̃*(c, 0) the monomial picks up, and the η, γ
    entering the stratum.
    """
    stratum: Stratum
    filtration: Filtration
    shift: tuple
    eta: int
    gamma: int = 0


def _shift(quiver, c, lam):
    exponent = DoubledForm(quiver.skew_form()).wall_exponent(c)
    return tuple(int(lam) * x for x in exponent)


def _hom_into_quotient(quiver, cj, quotient):
    """dim Hom(C_j, D/V_{j−1}); a zero quotient has no homs."""
    if is_zero(quotient):
        return 0
    if any(x < 0 for x in quotient):
        raise InadmissibleBendError(f"filtration exceeds D: quotient {quotient}")
    try:
        return hom_ext_dims(quiver, cj, quotient)[0]
    except (NotIndecomposableError, UnsupportedError):
        # decomposable or regular quotient: the generic value
        logger.debug("Hom(%s, %s) from χ on a non-indecomposable quotient", cj, quotient)
        return max(quiver.euler_form(cj, quotient), 0)


def first_bending(quiver: Quiver, d, c1, lam) -> Bending:
    """Stratum Gr(λ₁, Hom(C₁, D)), the first filtration step and the shift λ₁·p̃*(c₁, 0)."""
    d, c1 = tuple(d), tuple(c1)
    _non_regular(quiver, c1)
    hom, _ = hom_ext_dims(quiver, c1, d)
    if hom == 0:
        raise NoBendingError(f"Hom({c1}, {d}) = 0: no bending on the wall of {c1}")
    # z^{−g(d)} passes each copy of C₁ at the cost q^{χ(c₁, d)}
    commutation = commute_monomial(tuple(-x for x in quiver.g_map(d)), c1)
    stratum = Stratum(0, int(lam), hom)
    shift = _shift(quiver, c1, lam)
    logger.debug("first bending on %s x%d: Gr(%d, %d), commutation q^%d, shift %s",
                 c1, lam, lam, hom, commutation, shift)
    return Bending(stratum, Filtration().extend(c1, lam), shift, hom)


def next_bending(quiver: Quiver, d, filt: Filtration, cj, lam) -> Bending:
    """
    Stratum A^{λ_j γ} × Gr(λ_j, η − γ) with η = dim Hom(C_j, D/V_{j−1}) and
    γ = dim Ext¹(V_{j−1}, C_j), taken additively over the quotients.
    """
    d, cj = tuple(d), tuple(cj)
    if not filt.steps:
        return first_bending(quiver, d, cj, lam)
    _non_regular(quiver, cj)
    previous = filt.steps[-1][0]
    hom_prev, _ = hom_ext_dims(quiver, previous, cj)
    _, ext_back = hom_ext_dims(quiver, cj, previous)
    if hom_prev or ext_back:
        raise InadmissibleBendError(
            f"bend on {cj} after {previous}: Hom = {hom_prev}, Ext¹ back = {ext_back}")
    if lam == 0:
        return Bending(Stratum(0, 0, 0), filt, _shift(quiver, cj, 0), 0)

    quotient = tuple(a - b for a, b in zip(d, filt.dimension))
    eta = _hom_into_quotient(quiver, cj, quotient)
    gamma = sum(mult * hom_ext_dims(quiver, c, cj)[1] for c, mult in filt.steps)
    ambient = max(eta - gamma, 0)
    stratum = Stratum(int(lam) * gamma, int(lam), ambient)
    if eta - gamma < lam:
        logger.debug("empty stratum on %s: η=%d γ=%d λ=%d", cj, eta, gamma, lam)
    return Bending(stratum, filt.extend(cj, lam), _shift(quiver, cj, lam), eta, gamma)


def broken_line_strata(line: BrokenLine, quiver: Quiver, d):
    """(Filtration, q-polynomial) of one broken line of ϑ_{−g(d)}."""
    d = tuple(d)
    minus_g = tuple(-x for x in quiver.g_map(d))
    if tuple(line.initial_exponent[:quiver.n_vertices]) != minus_g:
        raise DimensionError(f"line starts at {line.initial_exponent}, not at −g({d}) = {minus_g}")
    filt = Filtration()
    total = qpoly(1)
    for previous, segment in zip(line.segments, line.segments[1:]):
        normal = segment.ray.normal
        if dot(normal, previous.monomial.m_part) >= 0:
            raise InadmissibleBendError(
                f"bend on {segment.ray.direction} is not a positive crossing")
        bending = next_bending(quiver, d, filt, normal, segment.multiple)
        jump = tuple(a - b for a, b in zip(segment.monomial.exponent, previous.monomial.exponent))
        if jump != bending.shift:
            raise InadmissibleBendError(
                f"bend on {segment.ray.direction} moves the exponent by {jump}, not {bending.shift}")
        filt = bending.filtration
        total = total * bending.stratum.qpoly
    return filt, total


# ── Theta functions and phases ───────────────────────────────────────

def hall_theta_chi(quiver: Quiver, d, endpoint, spec: RepresentationSpec = None,
                   primes=None) -> LaurentPoly:
    """
    χ-image of 1_F^{-1} z^{(m₀,0)} 1_F with m₀ = −g(d): one term χ(Gr_e(D)) for
    every subrepresentation dimension on the torsion-free side of m₀.

    The Euler characteristics come from the Grassmannian table behind the
    Caldero–Chapoton function, so this cross-checks CC on the Hall side. It
    does not sum bending strata; `strata_report` does that per line and
    compares the total with the F_p oracle.
    """
    d = tuple(d)
    _check_endpoint(endpoint)
    n = quiver.n_vertices
    m0 = tuple(-x for x in quiver.g_map(d))
    if n == 2 and not in_cluster_complex(quiver.skew_form().matrix[0][1], m0):
        raise UnsupportedError(f"m0 = {m0} lies outside the cluster complex")
    spec = spec or indecomposable_spec(quiver, d)
    doubled = DoubledForm(quiver.skew_form())

    try:
        table = euler_characteristics(spec, primes)
    except ScatteringLabError as e:
        logger.error("Hall theta for %s failed: %s", d, e)
        raise
    terms = {}
    for e, chi in table.items():
        if not is_zero(e) and torsion_side(m0, e) != TORSION_FREE:
            raise InconclusiveError(f"χ(Gr_{e}) = {chi} but {e} is not torsion-free for m0 = {m0}")
        exponent = vec_add(m0 + (0,) * n, doubled.wall_exponent(e))
        terms[exponent] = terms.get(exponent, 0) + chi
    return LaurentPoly(n, terms)


def hn_phases(filt: Filtration, endpoint, quiver: Quiver, d, e):
    """
    Z(c) = −m_F·c + i·Q·c on every quotient, m_F = −g(d) + p*(e). Returns
    the values and whether their phases strictly decrease up the filtration.
    """
    endpoint = _check_endpoint(endpoint)
    form = quiver.skew_form()
    m_f = vec_add(tuple(-x for x in quiver.g_map(d)), form.p_star(e))
    re = tuple(-x for x in m_f)
    values = [central_charge(re, endpoint, c) for c in filt.quotients()]
    decreasing = all(a.phase_exceeds(b) for a, b in zip(values, values[1:]))
    return values, decreasing


# ── Reports ──────────────────────────────────────────────────────────

def strata_lines(quiver: Quiver, d, e, endpoint, order=None):
    """Broken lines of ϑ_{−g(d)} ending at `endpoint` with final exponent −g(d) + p̃*(e, 0)."""
    if quiver.n_vertices != 2:
        raise UnsupportedError("strata are traced in rank-2 diagrams only")
    order = max(sum(e), 1) if order is None else order
    b = quiver.skew_form().matrix[0][1]
    diagram = ScatteringEngine(b, order).complete()
    m0 = tuple(-x for x in quiver.g_map(d)) + (0, 0)
    final_m = vec_add(m0[:2], quiver.skew_form().p_star(e))
    return enumerate_broken_lines(m0, endpoint, diagram, order, final_m=final_m)


def strata_report(quiver: Quiver, d, e, endpoint, lines=None, with_oracle=True):
    """Per-line filtrations, q-polynomials, q = 1 values, HN phases, and the total."""
    d, e = tuple(d), tuple(e)
    endpoint = _check_endpoint(endpoint)
    if lines is None:
        lines = strata_lines(quiver, d, e, endpoint)
    rows, total = [], 0
    for line in lines:
        filt, poly = broken_line_strata(line, quiver, d)
        if filt.dimension is not None and filt.dimension != e:
            continue
        values, decreasing = hn_phases(filt, endpoint, quiver, d, e)
        value = at_one(poly)
        if value != line.final_monomial.coeff:
            logger.warning("line %s: strata give %d, coefficient is %d",
                           line.describe(), value, line.final_monomial.coeff)
        rows.append({
            "bends": [[list(c), lam] for c, lam in filt.steps],
            "filtration": filt.describe(),
            "qpoly": str(poly.as_expr()),
            "value": value,
            "coefficient": line.final_monomial.coeff,
            "phases": [str(v) for v in values],
            "hn_decreasing": decreasing,
        })
        total += value
    report = {
        "quiver": quiver.name,
        "D": list(d),
        "e": list(e),
        "endpoint": format_point(endpoint),
        "lines": rows,
        "total": total,
    }
    if with_oracle:
        report["oracle"] = grassmannian_euler_char(indecomposable_spec(quiver, d), e)
    logger.info("strata of %s at e=%s: %d lines, total %d", d, e, len(rows), total)
    return report


# ── Quick test ────────────────────────────────────────────────────────
if __name__ == "__main__":
    kronecker = Quiver.kronecker(2)
    endpoint = tuple(Fraction(x) for x in settings.STRATA_ENDPOINT.split(","))
    first = next_bending(kronecker, (5, 6), Filtration(), (2, 3), 1)
    second = next_bending(kronecker, (5, 6), first.filtration, (0, 1), 1)
    print(second.filtration.describe(), (first.stratum.qpoly * second.stratum.qpoly).as_expr())
    print(hn_phases(second.filtration, endpoint, kronecker, (5, 6), (2, 4)))
