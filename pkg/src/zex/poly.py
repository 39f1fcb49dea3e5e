"""Sparse multivariate polynomials with exact rational coefficients.

Terms live in a dict keyed by sorted ((var, exp), ...) tuples; zero
coefficients are never stored, so equality is dict equality.  Printing and
the canonical term order are graded lexicographic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

Term = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]


def _merge(t1: Term, t2: Term) -> Term:
    if not t1:
        return t2
    if not t2:
        return t1
    d = dict(t1)
    for v, e in t2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Term, Fraction] | None = None):
        self.terms: dict[Term, Fraction] = {}
        if terms:
            for t, c in terms.items():
                if c:
                    self.terms[t] = Fraction(c)

    @staticmethod
    def const(c: Scalar) -> "Poly":
        c = Fraction(c)
        return Poly({(): c} if c else {})

    @staticmethod
    def var(name: str, exp: int = 1) -> "Poly":
        if exp == 0:
            return Poly.const(1)
        return Poly({((name, exp),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms[()]

    def variables(self) -> set[str]:
        return {v for t in self.terms for v, _ in t}

    def total_degree(self) -> int:
        return max((sum(e for _, e in t) for t in self.terms), default=0)

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for t, c in other.terms.items():
            s = out.get(t, Fraction(0)) + c
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        p = Poly()
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly()
        p.terms = {t: -c for t, c in self.terms.items()}
        return p

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Poly._coerce(other) - self

    def __mul__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Term, Fraction] = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                t = _merge(t1, t2)
                s = out.get(t, Fraction(0)) + c1 * c2
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        p = Poly()
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponents are nonnegative integers")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def subst(self, env: Mapping[str, "Poly | Scalar"]) -> "Poly":
        out = Poly()
        for t, c in self.terms.items():
            factor = Poly.const(c)
            for v, e in t:
                rep = env.get(v)
                rep = Poly.var(v) if rep is None else Poly._coerce(rep)
                factor = factor * rep ** e
            out = out + factor
        return out

    def eval(self, env: Mapping[str, object]):
        """Evaluate with all variables bound; works for Fraction or mpmath values."""
        total = None
        for t, c in self.terms.items():
            val = c
            for v, e in t:
                val = val * env[v] ** e
            total = val if total is None else total + val
        return Fraction(0) if total is None else total

    def _sort_key(self):
        def term_key(t: Term):
            return (-sum(e for _, e in t), t)
        return sorted(self.terms.items(), key=lambda tc: term_key(tc[0]))

    def __eq__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for t, c in self._sort_key():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in t)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")
