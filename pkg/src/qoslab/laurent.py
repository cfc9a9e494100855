"""Exact Laurent polynomials in the deformation symbol q.

Coefficients are arbitrary-precision integers; exponents are arbitrary
signed integers.  All identity checks in this package must produce a
literal zero in this ring, never a small float.
"""

from __future__ import annotations

import re


class LaurentPoly:
    """Integer-coefficient Laurent polynomial in q, stored as {exponent: coeff}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = c
        self.terms = t

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c):
        return LaurentPoly({0: c})

    @staticmethod
    def monomial(coeff, exp):
        return LaurentPoly({exp: coeff})

    # -- ring structure -----------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {0: 1}

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for e, c in other.terms.items():
            c2 = t.get(e, 0) + c
            if c2:
                t[e] = c2
            else:
                t.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = t
        return out

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                c = t.get(e, 0) + c1 * c2
                if c:
                    t[e] = c
                else:
                    t.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = t
        return out

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only for monomials")
            ((e, c),) = self.terms.items()
            if c not in (1, -1):
                raise ValueError("negative powers only for unit-coefficient monomials")
            return LaurentPoly({e * k: c**k if c == -1 else 1})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    # -- evaluation ----------------------------------------------------

    def eval(self, x):
        """Evaluate at a nonzero number x (ring homomorphism)."""
        if x == 0:
            if any(e < 0 for e in self.terms):
                raise ZeroDivisionError("negative exponent at x = 0")
            return self.terms.get(0, 0) * 1.0
        return sum(c * x**e for e, c in sorted(self.terms.items()))

    def subs_eps_linear(self):
        """Coefficients (p(1), p'(1)) of the expansion p(e^eps) = p(1) + eps p'(1) + ...

        Used to extract classical Poisson brackets from quantum commutators.
        """
        c0 = sum(self.terms.values())
        c1 = sum(e * c for e, c in self.terms.items())
        return c0, c1

    # -- canonical text form -------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*q^{e}" for e, c in sorted(self.terms.items()))

    def __repr__(self):
        return f"LaurentPoly({self})"

    @staticmethod
    def parse(text):
        text = text.strip()
        if text == "0":
            return LaurentPoly()
        terms = {}
        for part in text.split("+"):
            m = re.fullmatch(r"\s*(-?\d+)\*q\^(-?\d+)\s*", part)
            if not m:
                raise ValueError(f"bad Laurent term: {part!r}")
            c, e = int(m.group(1)), int(m.group(2))
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(terms)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1, 1)


class DeformParam:
    """A signed power of q: p = sign * q^power, with sign in {+1,-1}, power in {1,2}."""

    __slots__ = ("sign", "power")

    def __init__(self, sign, power):
        if sign not in (1, -1) or power not in (1, 2):
            raise ValueError("sign must be +-1 and power 1 or 2")
        self.sign = sign
        self.power = power

    def __eq__(self, other):
        return (
            isinstance(other, DeformParam)
            and self.sign == other.sign
            and self.power == other.power
        )

    def __hash__(self):
        return hash((self.sign, self.power))

    def __repr__(self):
        s = "-" if self.sign < 0 else ""
        return f"{s}q^{self.power}" if self.power != 1 else f"{s}q"

    def pow(self, k):
        """p^k as a one-term LaurentPoly, for any integer k."""
        sign = self.sign if k % 2 else 1
        return LaurentPoly.monomial(sign, k * self.power)

    def value(self, q):
        return self.sign * q**self.power


# The four site-algebra flavours used throughout the identity suite.
P_Q = DeformParam(1, 1)
P_MINUS_Q = DeformParam(-1, 1)
P_Q2 = DeformParam(1, 2)
P_MINUS_Q2 = DeformParam(-1, 2)


def param_power(p: DeformParam, k: int) -> LaurentPoly:
    return p.pow(k)
