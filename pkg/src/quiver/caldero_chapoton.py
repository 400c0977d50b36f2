"""
Caldero–Chapoton formula: z^{−g(d)} Σ_e χ(Gr_e(D)) z^{p*(e)}, with the
principal-coefficient variant z^{(−g(d),0)} Σ_e χ(Gr_e(D)) z^{p̃*(e,0)}.
"""
import os
import sys
from itertools import product

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from algebra.lattice import DoubledForm, vec_add
from algebra.laurent import LaurentPoly
from quiver.quiver import Quiver
from quiver.representations import RepresentationSpec, grassmannian_euler_char
from utils.errors import DimensionError, ScatteringLabError
from utils.logger import setup_logger

logger = setup_logger("CalderoChapoton")


def euler_characteristics(spec: RepresentationSpec, primes=None):
    """{e: χ(Gr_e(D))} over every e ≤ dim D, zeros dropped."""
    table = {}
    for e in product(*(range(d + 1) for d in spec.dims)):
        chi = grassmannian_euler_char(spec, e, primes)
        if chi:
            table[e] = chi
    return table


def caldero_chapoton(quiver: Quiver, spec: RepresentationSpec, with_principal=True,
                     primes=None) -> LaurentPoly:
    if spec.quiver != quiver:
        raise DimensionError(f"{spec.name} is a representation of {spec.quiver.name}, not {quiver.name}")
    n = quiver.n_vertices
    form = quiver.skew_form()
    doubled = DoubledForm(form)
    minus_g = tuple(-x for x in quiver.g_map(spec.dims))

    try:
        table = euler_characteristics(spec, primes)
    except ScatteringLabError as e:
        logger.error("Grassmannian oracle failed for %s: %s", spec.name, e)
        raise

    terms = {}
    for e, chi in table.items():
        if with_principal:
            shift = doubled.wall_exponent(e)
            exponent = vec_add(minus_g + (0,) * n, shift)
        else:
            exponent = vec_add(minus_g, form.p_star(e)) + (0,) * n
        terms[exponent] = terms.get(exponent, 0) + chi

    result = LaurentPoly(n, terms)
    if not result.has_positive_coefficients():
        logger.warning("CC(%s) has a non-positive coefficient: %s", spec.name, result.to_text())
    logger.info("CC(%s): %d terms", spec.name, len(result))
    return result


# ── Quick test ──────────────────────────────────────────────────
if __name__ == "__main__":
    from quiver.representations import kronecker_spec

    kronecker = Quiver.kronecker(2)
    print("CC(C⇉C) =", caldero_chapoton(kronecker, kronecker_spec((1, 1))).to_text())
