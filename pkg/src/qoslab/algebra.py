"""Normal-ordering engine for tensor products of q-oscillator site algebras.

Each site carries generators {1, k, k', a+, a-} subject to

    k k' = k' k,   k# a+- = p^{+-1} a+- k#,
    a+ a- = 1 + p^{-1} k k',   a- a+ = 1 + p k k',

with a site-specific deformation parameter p in {q, -q, q^2, -q^2}.
Both mixed products a+a- and a-a+ reduce, so every word has a unique
PBW normal form built from monomials

    (a+)^m k^r k'^s        or        k^r k'^s (a-)^n,

i.e. m*n = 0, with r, s ranging over all integers (k, k' invertible).
A monomial may additionally carry one boundary symbol K acting on an
ordered site pair; K is kept rightmost and pushed through products via

    K a1+ = q a1+ (k2'/k2) K,   K a1- = q^-1 a1- (k2/k2') K,

with K commuting with k1, k1', k2, k2', a2+-.
"""

from __future__ import annotations

import re

from .laurent import LaurentPoly, DeformParam, ONE, Q

GENERATORS = ("ap", "k", "kp", "am", "k^-1", "kp^-1")

_IDENTITY_MONO = (0, 0, 0, 0)


class Algebra:
    """A context of independent q-oscillator sites: label -> DeformParam."""

    def __init__(self, sites):
        self.sites = dict(sites)

    def param(self, label):
        try:
            return self.sites[label]
        except KeyError:
            raise KeyError(f"unknown site label {label!r}") from None

    def merged_with(self, other):
        merged = dict(self.sites)
        for label, p in other.sites.items():
            if label in merged and merged[label] != p:
                raise ValueError(f"conflicting parameters for site {label!r}")
            merged[label] = p
        return Algebra(merged)

    # -- element constructors ------------------------------------------

    def zero(self):
        return AlgElem(self, {})

    def one(self):
        return self.scalar(ONE)

    def scalar(self, coeff):
        if isinstance(coeff, int):
            coeff = LaurentPoly.const(coeff)
        if coeff.is_zero():
            return AlgElem(self, {})
        return AlgElem(self, {((), None): coeff})

    def gen(self, label, name):
        self.param(label)
        mono = _gen_mono(name)
        return AlgElem(self, {(((label, mono),), None): ONE})

    def k_symbol(self, pair):
        """The boundary exchange symbol K acting on the ordered site pair."""
        s1, s2 = pair
        self.param(s1), self.param(s2)
        return AlgElem(self, {((), (s1, s2)): ONE})

    def normalize_word(self, word):
        """Normal form of a product of generators given as (site, gen) pairs.

        A boundary symbol is written as ("K", (site1, site2)).
        """
        elem = self.one()
        for item in word:
            site, name = item
            if site == "K":
                elem = elem * self.k_symbol(name)
            else:
                elem = elem * self.gen(site, name)
        return elem


def _gen_mono(name):
    if name == "ap":
        return (1, 0, 0, 0)
    if name == "k":
        return (0, 1, 0, 0)
    if name == "kp":
        return (0, 0, 1, 0)
    if name == "am":
        return (0, 0, 0, 1)
    if name == "k^-1":
        return (0, -1, 0, 0)
    if name == "kp^-1":
        return (0, 0, -1, 0)
    raise ValueError(f"unknown generator {name!r}")


# -- single-site PBW multiplication -------------------------------------


def _rmul_ap(terms, p):
    out = {}
    for (m, r, s, n), c in terms.items():
        if n == 0:
            _acc(out, (m + 1, r, s, 0), c * p.pow(r + s))
        else:
            _acc(out, (0, r, s, n - 1), c)
            _acc(out, (0, r + 1, s + 1, n - 1), c * p.pow(2 * n - 1))
    return out


def _rmul_am(terms, p):
    out = {}
    for (m, r, s, n), c in terms.items():
        if m == 0:
            _acc(out, (0, r, s, n + 1), c)
        else:
            _acc(out, (m - 1, r, s, 0), c * p.pow(-(r + s)))
            _acc(out, (m - 1, r + 1, s + 1, 0), c * p.pow(-(r + s) - 1))
    return out


def _rmul_kpow(terms, p, dr, ds):
    out = {}
    e = dr + ds
    for (m, r, s, n), c in terms.items():
        _acc(out, (m, r + dr, s + ds, n), c * p.pow(n * e))
    return out


def _acc(d, key, coeff):
    c = d.get(key)
    c = coeff if c is None else c + coeff
    if c.is_zero():
        d.pop(key, None)
    else:
        d[key] = c


def local_mul(mono1, mono2, p):
    """Product of two PBW site monomials as {site monomial: LaurentPoly}."""
    m2, r2, s2, n2 = mono2
    terms = {mono1: ONE}
    for _ in range(m2):
        terms = _rmul_ap(terms, p)
    if r2 or s2:
        terms = _rmul_kpow(terms, p, r2, s2)
    for _ in range(n2):
        terms = _rmul_am(terms, p)
    return terms


# -- tensor monomials -----------------------------------------------------


def _monomial_mul(algebra, sites1, kflag1, sites2, kflag2):
    """Product of two canonical tensor monomials; yields (monomial, coeff) pairs."""
    if kflag1 is not None and kflag2 is not None:
        raise ValueError("cannot multiply two K-carrying monomials")
    coeff = ONE
    d2 = dict(sites2)
    if kflag1 is not None:
        s1, s2 = kflag1
        m, r, s, n = d2.get(s1, _IDENTITY_MONO)
        d = m - n
        if d:
            coeff = Q**d
            m2, r2, s2e, n2 = d2.get(s2, _IDENTITY_MONO)
            mod = (m2, r2 - d, s2e + d, n2)
            if mod == _IDENTITY_MONO:
                d2.pop(s2, None)
            else:
                d2[s2] = mod
    kflag = kflag1 if kflag1 is not None else kflag2

    d1 = dict(sites1)
    # Partial products: list of (sites dict, coeff).
    partials = [({}, coeff)]
    for label in sorted(set(d1) | set(d2)):
        a = d1.get(label)
        b = d2.get(label)
        if a is not None and b is not None:
            local = local_mul(a, b, algebra.param(label))
            new = []
            for sites, c in partials:
                for mono, lc in local.items():
                    s = dict(sites)
                    if mono != _IDENTITY_MONO:
                        s[label] = mono
                    new.append((s, c * lc))
            partials = new
        else:
            mono = a if a is not None else b
            for sites, _ in partials:
                sites[label] = mono
    for sites, c in partials:
        yield (tuple(sorted(sites.items())), kflag), c


class AlgElem:
    """Normal-ordered element: {(sorted site monomials, K flag): LaurentPoly}."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        other = self._coerce(other)
        alg = self._join(other)
        t = dict(self.terms)
        for mono, c in other.terms.items():
            c2 = t.get(mono)
            c2 = c if c2 is None else c2 + c
            if c2.is_zero():
                t.pop(mono, None)
            else:
                t[mono] = c2
        return AlgElem(alg, t)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return AlgElem(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            if isinstance(other, int):
                other = LaurentPoly.const(other)
            if other.is_zero():
                return AlgElem(self.algebra, {})
            return AlgElem(self.algebra, {m: c * other for m, c in self.terms.items()})
        alg = self._join(other)
        out = {}
        for (sites1, kflag1), c1 in self.terms.items():
            for (sites2, kflag2), c2 in other.terms.items():
                c12 = c1 * c2
                for mono, c in _monomial_mul(alg, sites1, kflag1, sites2, kflag2):
                    c3 = out.get(mono)
                    c3 = c12 * c if c3 is None else c3 + c12 * c
                    if c3.is_zero():
                        out.pop(mono, None)
                    else:
                        out[mono] = c3
        return AlgElem(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = self._coerce(other)
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: repr(kv[0]))))

    def _coerce(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if isinstance(other, LaurentPoly):
            return self.algebra.scalar(other)
        return other

    def _join(self, other):
        if other.algebra is self.algebra:
            return self.algebra
        return self.algebra.merged_with(other.algebra)

    def support(self):
        """Set of site labels actually appearing."""
        labels = set()
        for (sites, kflag) in self.terms:
            labels.update(lbl for lbl, _ in sites)
            if kflag:
                labels.update(kflag)
        return labels

    # -- canonical text form -------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (sites, kflag), c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            factors = [f"({c})"]
            for label, (m, r, s, n) in sites:
                gens = []
                if m:
                    gens.append(f"ap^{m}")
                if r:
                    gens.append(f"k^{r}")
                if s:
                    gens.append(f"kp^{s}")
                if n:
                    gens.append(f"am^{n}")
                factors.append(f"{label}{{{' '.join(gens)}}}")
            if kflag:
                factors.append(f"K[{kflag[0]},{kflag[1]}]")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgElem({self})"

    @staticmethod
    def parse(algebra, text):
        text = text.strip()
        if text == "0":
            return algebra.zero()
        out = algebra.zero()
        for term in text.split(" + "):
            m = re.fullmatch(r"\((.*?)\)((?:\*[^*]+)*)", term.strip())
            if not m:
                raise ValueError(f"bad term: {term!r}")
            coeff = LaurentPoly.parse(m.group(1))
            sites = {}
            kflag = None
            rest = m.group(2)
            for factor in rest.split("*")[1:]:
                km = re.fullmatch(r"K\[(\w+),(\w+)\]", factor)
                if km:
                    kflag = (km.group(1), km.group(2))
                    continue
                sm = re.fullmatch(r"(\w+)\{([^}]*)\}", factor)
                if not sm:
                    raise ValueError(f"bad factor: {factor!r}")
                label = sm.group(1)
                mono = [0, 0, 0, 0]
                pos = {"ap": 0, "k": 1, "kp": 2, "am": 3}
                for g in sm.group(2).split():
                    name, e = g.split("^")
                    mono[pos[name]] = int(e)
                sites[label] = tuple(mono)
            mono_key = (tuple(sorted(sites.items())), kflag)
            out = out + AlgElem(algebra, {mono_key: coeff})
        return out


def commutator(a: AlgElem, b: AlgElem) -> AlgElem:
    return a * b - b * a


def push_K_right(elem: AlgElem) -> AlgElem:
    """Elements here are always stored with K rightmost; returns the element.

    Kept as an explicit operation so callers can assert idempotence; the
    actual pushing happens inside multiplication whenever a K-carrying
    monomial is multiplied from the right.
    """
    return elem


def quantum_bracket_expansion(param: DeformParam, g1: str, g2: str):
    """First-order term in eps of [g1, g2] with q = e^eps, per site monomial.

    Returns {site monomial: integer}; the zeroth-order term must vanish
    (commutative classical limit), which is asserted.  Only meaningful for
    positive-sign parameters (negative p has no q -> 1 classical limit).
    """
    if param.sign != 1:
        raise ValueError("classical expansion requires a positive deformation sign")
    alg = Algebra({"x": param})
    c = commutator(alg.gen("x", g1), alg.gen("x", g2))
    out = {}
    for (sites, _), coeff in c.terms.items():
        c0, c1 = coeff.subs_eps_linear()
        if c0 != 0:
            raise ValueError("commutator does not vanish in the classical limit")
        if c1:
            mono = sites[0][1] if sites else _IDENTITY_MONO
            out[mono] = c1
    return out
