"""
Exact Laurent polynomials in A_1..A_n, X_1..X_n with integer coefficients.

Terms are keyed by exponent tuples of length 2n, (A-exponents, X-exponents),
and always listed in lexicographic exponent order so text and JSON output
are byte-stable.
"""
import os
import re
import sys
from dataclasses import dataclass

import sympy
from sympy.polys.polyerrors import ExactQuotientFailed

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)

sys.path.append(parent_dir)

from config import settings
from utils.errors import (DimensionError, LaurentDivisionError,
                          ResourceLimitError, SchemaError)


@dataclass(frozen=True)
class Monomial:
    coeff: int
    exponent: tuple

    def __post_init__(self):
        if len(self.exponent) % 2:
            raise DimensionError("exponent must live in the doubled lattice")

    @property
    def rank(self):
        return len(self.exponent) // 2

    @property
    def m_part(self):
        return self.exponent[:self.rank]

    @property
    def n_part(self):
        return self.exponent[self.rank:]

    @property
    def degree(self):
        return sum(self.n_part)


def symbols_for(rank):
    """The sympy symbols A1..An, X1..Xn in exponent order."""
    a = sympy.symbols(" ".join(f"A{i}" for i in range(1, rank + 1)), seq=True)
    x = sympy.symbols(" ".join(f"X{i}" for i in range(1, rank + 1)), seq=True)
    return tuple(a) + tuple(x)


_TERM_RE = re.compile(r"^(?P<coeff>-?\d+)(?:\s*\*\s*(?P<factors>.+))?$")
_FACTOR_RE = re.compile(r"^(?P<name>[AX])(?P<index>\d+)(?:\^(?P<power>-?\d+))?$")


class LaurentPoly:
    """Immutable sparse Laurent polynomial."""

    __slots__ = ("rank", "_terms")

    def __init__(self, rank, terms=None):
        self.rank = rank
        cleaned = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != 2 * rank:
                raise DimensionError(
                    f"exponent {exponent} does not match rank {rank}")
            if coeff:
                cleaned[exponent] = cleaned.get(exponent, 0) + int(coeff)
        cleaned = {e: c for e, c in cleaned.items() if c}
        if len(cleaned) > settings.MAX_SERIES_TERMS:
            raise ResourceLimitError(
                f"{len(cleaned)} terms exceed SCATTERING_MAX_SERIES_TERMS")
        self._terms = dict(sorted(cleaned.items()))

    # ── Constructors ─────────────────────────────────────────────────

    @classmethod
    def zero(cls, rank):
        return cls(rank)

    @classmethod
    def one(cls, rank):
        return cls(rank, {(0,) * (2 * rank): 1})

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls(len(exponent) // 2, {tuple(exponent): coeff})

    @classmethod
    def a_var(cls, rank, i):
        exponent = [0] * (2 * rank)
        exponent[i - 1] = 1
        return cls(rank, {tuple(exponent): 1})

    @classmethod
    def x_var(cls, rank, i):
        exponent = [0] * (2 * rank)
        exponent[rank + i - 1] = 1
        return cls(rank, {tuple(exponent): 1})

    @classmethod
    def from_monomials(cls, rank, monomials):
        terms = {}
        for mono in monomials:
            terms[mono.exponent] = terms.get(mono.exponent, 0) + mono.coeff
        return cls(rank, terms)

    # ── Access ───────────────────────────────────────────────────────

    def terms(self):
        """Monomials in lexicographic exponent order."""
        return [Monomial(c, e) for e, c in self._terms.items()]

    def items(self):
        return self._terms.items()

    def coefficient(self, exponent):
        return self._terms.get(tuple(exponent), 0)

    def exponents(self):
        return list(self._terms)

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms())

    # ── Arithmetic ───────────────────────────────────────────────────

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.rank != self.rank:
                raise DimensionError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, int):
            return LaurentPoly(self.rank, {(0,) * (2 * self.rank): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(self.rank, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.rank, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly(self.rank, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise LaurentDivisionError("only unit monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly(self.rank, {tuple(x * k for x in e): c ** -k})
        result = LaurentPoly.one(self.rank)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exponent, coeff=1):
        """Multiply by coeff · z^exponent."""
        return LaurentPoly(self.rank, {
            tuple(x + y for x, y in zip(e, exponent)): c * coeff
            for e, c in self._terms.items()
        })

    def exact_divide(self, other):
        """
        Exact division in the Laurent ring.
        Raises LaurentDivisionError when the quotient is not a Laurent polynomial.
        """
        other = self._coerce(other)
        if other.is_zero():
            raise LaurentDivisionError("division by zero")
        if self.is_zero():
            return LaurentPoly.zero(self.rank)
        width = 2 * self.rank
        low_self = [min(e[i] for e in self._terms) for i in range(width)]
        low_other = [min(e[i] for e in other._terms) for i in range(width)]
        gens = symbols_for(self.rank)
        numerator = sympy.Poly.from_dict(
            {tuple(x - y for x, y in zip(e, low_self)): c for e, c in self._terms.items()},
            gens, domain="ZZ")
        denominator = sympy.Poly.from_dict(
            {tuple(x - y for x, y in zip(e, low_other)): c for e, c in other._terms.items()},
            gens, domain="ZZ")
        try:
            quotient = numerator.exquo(denominator)
        except ExactQuotientFailed as e:
            raise LaurentDivisionError(f"inexact Laurent division: {e}") from e
        offset = [x - y for x, y in zip(low_self, low_other)]
        return LaurentPoly(self.rank, {
            tuple(x + y for x, y in zip(e, offset)): int(c)
            for e, c in quotient.as_dict().items()
        })

    # ── Substitutions ────────────────────────────────────────────────

    def substitute_ones(self, part):
        """Set all A_i (part='A') or all X_i (part='X') to 1."""
        if part not in ("A", "X"):
            raise SchemaError(f"unknown variable family {part!r}")
        terms = {}
        for e, c in self._terms.items():
            if part == "A":
                e = (0,) * self.rank + e[self.rank:]
            else:
                e = e[:self.rank] + (0,) * self.rank
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(self.rank, terms)

    def map_terms(self, fn):
        """Sum of fn(Monomial) over all terms; fn returns a LaurentPoly."""
        total = LaurentPoly.zero(self.rank)
        for mono in self.terms():
            total = total + fn(mono)
        return total

    # ── Comparison ───────────────────────────────────────────────────

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(self.rank, {(0,) * (2 * self.rank): other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        return hash((self.rank, tuple(self._terms.items())))

    def has_positive_coefficients(self):
        return all(c > 0 for c in self._terms.values())

    # ── Text / sympy forms ───────────────────────────────────────────

    def _factor_text(self, exponent):
        names = [f"A{i}" for i in range(1, self.rank + 1)] + \
                [f"X{i}" for i in range(1, self.rank + 1)]
        parts = []
        for name, power in zip(names, exponent):
            if power == 1:
                parts.append(name)
            elif power:
                parts.append(f"{name}^{power}")
        return " ".join(parts)

    def to_text(self):
        """Canonical form `c * A1^a1 ... Xn^bn + ...`."""
        if not self._terms:
            return "0"
        chunks = []
        for i, (e, c) in enumerate(self._terms.items()):
            factors = self._factor_text(e)
            body = f"{abs(c)} * {factors}" if factors else f"{abs(c)}"
            if i == 0:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(chunks)

    @classmethod
    def parse_text(cls, rank, text):
        text = text.strip()
        if text == "0":
            return cls.zero(rank)
        # Normalize binary minus to "+ -"
        pieces = re.split(r"\s+([+-])\s+", text)
        signed = [pieces[0]]
        for op, body in zip(pieces[1::2], pieces[2::2]):
            signed.append(body if op == "+" else f"-{body}")
        terms = {}
        for chunk in signed:
            match = _TERM_RE.match(chunk.strip())
            if not match:
                raise SchemaError(f"cannot parse term {chunk!r}")
            exponent = [0] * (2 * rank)
            for factor in (match.group("factors") or "").split():
                fm = _FACTOR_RE.match(factor)
                if not fm:
                    raise SchemaError(f"cannot parse factor {factor!r}")
                index = int(fm.group("index"))
                if not 1 <= index <= rank:
                    raise SchemaError(f"variable index {index} out of range")
                slot = index - 1 if fm.group("name") == "A" else rank + index - 1
                exponent[slot] += int(fm.group("power") or 1)
            key = tuple(exponent)
            terms[key] = terms.get(key, 0) + int(match.group("coeff"))
        return cls(rank, terms)

    def to_expr(self):
        gens = symbols_for(self.rank)
        return sympy.Add(*[
            c * sympy.Mul(*[g ** p for g, p in zip(gens, e)])
            for e, c in self._terms.items()
        ])

    @classmethod
    def from_expr(cls, expr, rank):
        gens = symbols_for(rank)
        index = {g: i for i, g in enumerate(gens)}
        terms = {}
        for term, coeff in sympy.expand(expr).as_coefficients_dict().items():
            if not coeff.is_integer:
                raise SchemaError(f"non-integer coefficient {coeff}")
            exponent = [0] * (2 * rank)
            if term != 1:
                for base, power in term.as_powers_dict().items():
                    if base not in index or not power.is_integer:
                        raise SchemaError(f"unexpected factor {base}^{power}")
                    exponent[index[base]] += int(power)
            key = tuple(exponent)
            terms[key] = terms.get(key, 0) + int(coeff)
        return cls(rank, terms)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"

    __str__ = to_text
