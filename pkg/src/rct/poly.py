"""Sparse multivariate polynomial arithmetic over exact rationals.

Coefficients are `fractions.Fraction` throughout: exact, auto-reduced,
positive denominator, totally ordered like the reals.  Polynomials are
immutable after construction; every operation returns a new object.

Terms are keyed by exponent tuples aligned with `vars`.  The canonical
term order used for leading terms and serialization is graded lex:
higher total degree first, ties broken lexicographically on the
exponent vector.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, inf
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction

NEG_INF = -inf  # degree of the zero polynomial

Scalar = Union[Fraction, int]


def as_rational(value) -> Fraction:
    """Coerce int/str/Fraction to Fraction, rejecting floats (not exact)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def _grlex_key(exp: tuple) -> tuple:
    return (sum(exp), exp)


class SparsePoly:
    """Immutable sparse polynomial with Fraction coefficients.

    vars:  tuple of variable names, fixed order.
    terms: dict mapping exponent tuples (len == len(vars)) to nonzero
           Fraction coefficients.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Scalar]):
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise ValueError(f"duplicate variable names: {vs}")
        clean: dict = {}
        nv = len(vs)
        for exp, coeff in terms.items():
            e = tuple(exp)
            if len(e) != nv:
                raise ValueError(f"exponent {e} does not match variables {vs}")
            if any((not isinstance(k, int)) or k < 0 for k in e):
                raise ValueError(f"exponents must be non-negative integers: {e}")
            c = as_rational(coeff)
            if c != 0:
                prev = clean.get(e)
                if prev is None:
                    clean[e] = c
                else:
                    s = prev + c
                    if s == 0:
                        del clean[e]
                    else:
                        clean[e] = s
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly is immutable")

    # ---- constructors ----

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "SparsePoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, value: Scalar, variables: Sequence[str] = ()) -> "SparsePoly":
        c = as_rational(value)
        if c == 0:
            return cls(variables, {})
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def variable(cls, name: str) -> "SparsePoly":
        return cls((name,), {(1,): Fraction(1)})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponents: Sequence[int],
                 coeff: Scalar = 1) -> "SparsePoly":
        return cls(variables, {tuple(exponents): coeff})

    # ---- variable alignment ----

    def _remap(self, new_vars: tuple) -> dict:
        """Re-express terms over a superset of variables (name-sorted union)."""
        if new_vars == self.vars:
            return dict(self.terms)
        pos = {v: i for i, v in enumerate(new_vars)}
        idx = [pos[v] for v in self.vars]
        n = len(new_vars)
        out = {}
        for exp, c in self.terms.items():
            e = [0] * n
            for i, k in zip(idx, exp):
                e[i] = k
            out[tuple(e)] = c
        return out

    def with_vars(self, variables: Sequence[str]) -> "SparsePoly":
        """Return the same polynomial over a wider variable tuple."""
        vs = tuple(variables)
        missing = set(self.vars) - set(vs)
        if missing:
            raise ValueError(f"target variables missing {sorted(missing)}")
        return SparsePoly(vs, self._remap(vs))

    @staticmethod
    def _aligned(a: "SparsePoly", b: "SparsePoly"):
        if a.vars == b.vars:
            return a.vars, a.terms, b.terms
        union = tuple(sorted(set(a.vars) | set(b.vars)))
        return union, a._remap(union), b._remap(union)

    # ---- arithmetic ----

    def __add__(self, other) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(other, self.vars)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        vs, ta, tb = self._aligned(self, other)
        out = dict(ta)
        for e, c in tb.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return SparsePoly(vs, out)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(other, self.vars)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SparsePoly":
        return (-self) + other

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            if c == 0:
                return SparsePoly.zero(self.vars)
            return SparsePoly(self.vars, {e: k * c for e, k in self.terms.items()})
        if not isinstance(other, SparsePoly):
            return NotImplemented
        vs, ta, tb = self._aligned(self, other)
        out: dict = {}
        if len(ta) > len(tb):
            ta, tb = tb, ta
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return SparsePoly(vs, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SparsePoly":
        c = as_rational(other)
        if c == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return self * (Fraction(1) / c)

    def __pow__(self, n: int) -> "SparsePoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = SparsePoly.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(other, self.vars)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        _, ta, tb = self._aligned(self, other)
        return ta == tb

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            used = self._reduced()
            h = hash((used.vars, frozenset(used.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def _reduced(self) -> "SparsePoly":
        """Drop variables that appear in no term (canonical content view)."""
        if not self.terms:
            return SparsePoly((), {}) if self.vars else self
        keep = [i for i, _ in enumerate(self.vars)
                if any(e[i] for e in self.terms)]
        if len(keep) == len(self.vars):
            return self
        vs = tuple(self.vars[i] for i in keep)
        return SparsePoly(vs, {tuple(e[i] for i in keep): c
                               for e, c in self.terms.items()})

    # ---- inspection ----

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(k == 0 for k in e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self):
        """Total degree; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str):
        if not self.terms:
            return NEG_INF
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        """True when all terms share one total degree (zero counts as yes)."""
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading_term(self):
        """(exponent, coeff) maximal in graded lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def leading_coeff(self) -> Fraction:
        return self.leading_term()[1]

    def sorted_terms(self):
        """Terms in descending graded lex order (canonical serialization order)."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]),
                      reverse=True)

    def content(self) -> Fraction:
        """Positive rational c with self/c integer primitive; 0 for the zero poly."""
        if not self.terms:
            return Fraction(0)
        num = reduce(gcd, (abs(c.numerator) for c in self.terms.values()))
        den = reduce(_lcm, (c.denominator for c in self.terms.values()))
        return Fraction(num, den)

    def primitive_integer(self) -> "SparsePoly":
        """Scale by the positive content inverse: coprime integer coefficients,
        sign pattern preserved."""
        c = self.content()
        if c == 0:
            return self
        return self * (Fraction(1) / c)

    # ---- evaluation and substitution ----

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        vals = []
        for v in self.vars:
            if v not in point:
                raise KeyError(f"no value for variable {v}")
            vals.append(as_rational(point[v]))
        total = Fraction(0)
        for e, c in self.terms.items():
            m = c
            for x, k in zip(vals, e):
                if k:
                    m *= x ** k
            total += m
        return total

    def substitute(self, mapping: Mapping[str, Union["SparsePoly", Scalar]]) -> "SparsePoly":
        """Substitute polynomials or scalars for variables; unmapped vars stay."""
        subs = {}
        for name, val in mapping.items():
            if isinstance(val, SparsePoly):
                subs[name] = val
            else:
                subs[name] = SparsePoly.constant(as_rational(val))
        result = SparsePoly.zero()
        for e, c in self.terms.items():
            term = SparsePoly.constant(c)
            for v, k in zip(self.vars, e):
                if not k:
                    continue
                if v in subs:
                    term = term * subs[v] ** k
                else:
                    term = term * SparsePoly.monomial((v,), (k,))
            result = result + term
        return result

    def coeffs_in(self, var: str) -> dict:
        """Coefficient polynomials keyed by the power of `var`.

        The returned polynomials keep the remaining variables.
        """
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            re = e[:i] + e[i + 1:]
            buckets.setdefault(k, {})[re] = c
        return {k: SparsePoly(rest, t) for k, t in buckets.items()}

    def dense_coeffs(self, var: str) -> list:
        """Ascending coefficient list; requires the poly univariate in `var`."""
        for v in self.vars:
            if v != var and self.degree_in(v) not in (0, NEG_INF):
                raise ValueError(f"not univariate in {var}: {v} appears")
        if var not in self.vars:
            if not self.is_constant():
                raise ValueError(f"{var} is not a variable of this polynomial")
            return [self.constant_value()] if self.terms else []
        i = self.vars.index(var)
        d = self.degree_in(var)
        if d is NEG_INF:
            return []
        out = [Fraction(0)] * (int(d) + 1)
        for e, c in self.terms.items():
            out[e[i]] += c
        while out and out[-1] == 0:
            out.pop()
        return out

    @classmethod
    def from_dense(cls, var: str, coeffs: Sequence[Scalar]) -> "SparsePoly":
        return cls((var,), {(k,): c for k, c in enumerate(coeffs)})

    def derivative(self, var: str) -> "SparsePoly":
        if var not in self.vars:
            return SparsePoly.zero(self.vars)
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = out.get(ne, 0) + c * k
        return SparsePoly(self.vars, out)

    # ---- serialization ----

    def to_json_dict(self) -> dict:
        terms = [{"coeff": _format_rational(c), "exp": list(e)}
                 for e, c in self.sorted_terms()]
        return {"vars": list(self.vars), "terms": terms}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "SparsePoly":
        vs = tuple(data["vars"])
        terms = {}
        for t in data["terms"]:
            e = tuple(int(k) for k in t["exp"])
            c = Fraction(t["coeff"])
            terms[e] = terms.get(e, 0) + c
        return cls(vs, terms)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"SparsePoly({format_poly(self)!r})"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_poly(p: SparsePoly) -> str:
    """Canonical text form: graded lex descending, explicit * and ^."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        factors = []
        for v, k in zip(p.vars, e):
            if k == 1:
                factors.append(v)
            elif k > 1:
                factors.append(f"{v}^{k}")
        mag = abs(c)
        if not factors:
            body = _format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_rational(mag)] + factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


# ---- substituted homogeneous degree ----
#
# Variables carry integer weights read off their names: the trailing
# digits.  a1, a2, ..., ad get weights 1..d, so the monomial
# a1^i1 * ... * ad^id has weighted degree 1*i1 + 2*i2 + ... + d*id.


class ShdValue:
    """Weighted-degree verdict: a value, 'any' (zero poly), or 'mixed'."""

    __slots__ = ("kind", "value")

    def __init__(self, kind: str, value=None):
        if kind not in ("value", "any", "mixed"):
            raise ValueError(kind)
        self.kind = kind
        self.value = value

    def is_homogeneous(self) -> bool:
        return self.kind != "mixed"

    def __eq__(self, other):
        if isinstance(other, int):
            # 'any' matches every concrete weighted degree
            return self.kind == "any" or (self.kind == "value" and self.value == other)
        if isinstance(other, ShdValue):
            return self.kind == other.kind and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.kind, self.value))

    def __repr__(self):
        if self.kind == "value":
            return f"ShdValue({self.value})"
        return f"ShdValue({self.kind!r})"


SHD_ANY = ShdValue("any")
SHD_MIXED = ShdValue("mixed")


def var_weight(name: str) -> int:
    """Weight of a variable from its trailing index digits: a3 -> 3."""
    i = len(name)
    while i > 0 and name[i - 1].isdigit():
        i -= 1
    if i == len(name):
        raise ValueError(f"variable {name!r} has no index suffix, weight undefined")
    return int(name[i:])


def shd_monomial(variables: Sequence[str], exponents: Sequence[int]) -> int:
    return sum(var_weight(v) * k for v, k in zip(variables, exponents) if k)


def is_substitutable_homogeneous(p: SparsePoly) -> ShdValue:
    """All terms share one weighted degree.  Zero reports 'any'."""
    if p.is_zero():
        return SHD_ANY
    weights = [var_weight(v) for v in p.vars]
    seen = None
    for e in p.terms:
        s = sum(w * k for w, k in zip(weights, e) if k)
        if seen is None:
            seen = s
        elif s != seen:
            return SHD_MIXED
    return ShdValue("value", seen)


def shd(p: SparsePoly) -> ShdValue:
    """Weighted degree of a substitutable-homogeneous polynomial."""
    v = is_substitutable_homogeneous(p)
    if v.kind == "mixed":
        raise ValueError("polynomial is not substitutable homogeneous")
    return v


def substitute_graded(f: SparsePoly, replacements: Sequence[SparsePoly]) -> SparsePoly:
    """Substitute weight-i variables by degree-i forms; output is homogeneous.

    replacements[i-1] is plugged into the weight-i variable.  Each must be
    homogeneous of total degree exactly i, or zero.  When f has weighted
    degree s, the result is homogeneous of degree s (or zero).
    """
    fs = is_substitutable_homogeneous(f)
    if fs.kind == "mixed":
        raise ValueError("input is not substitutable homogeneous")
    mapping = {}
    for i, g in enumerate(replacements, start=1):
        if not isinstance(g, SparsePoly):
            g = SparsePoly.constant(g)
        if not g.is_zero():
            if not g.is_homogeneous() or g.degree() != i:
                raise ValueError(f"replacement for weight {i} must be homogeneous "
                                 f"of degree {i} or zero, got degree {g.degree()}")
        mapping[i] = g
    for v in f.vars:
        w = var_weight(v)
        if any(e[f.vars.index(v)] for e in f.terms) and w not in mapping:
            raise ValueError(f"no replacement supplied for weight {w} ({v})")
    out = SparsePoly.zero()
    for e, c in f.terms.items():
        term = SparsePoly.constant(c)
        for v, k in zip(f.vars, e):
            if k:
                term = term * mapping[var_weight(v)] ** k
        out = out + term
    if not out.is_zero():
        assert out.is_homogeneous(), "graded substitution must return a form"
        if fs.kind == "value":
            assert out.degree() == fs.value
    return out


# ---- division ----


class DivisionByZeroPolynomial(ZeroDivisionError):
    pass


def divide_exact(p: SparsePoly, q: SparsePoly):
    """Exact multivariate quotient p/q, or None when q does not divide p."""
    if q.is_zero():
        raise DivisionByZeroPolynomial("exact division by zero polynomial")
    vs, tp, tq = SparsePoly._aligned(p, q)
    rem = dict(tp)
    qe = max(tq, key=_grlex_key)
    qc = tq[qe]
    quot: dict = {}
    while rem:
        re = max(rem, key=_grlex_key)
        de = tuple(a - b for a, b in zip(re, qe))
        if any(k < 0 for k in de):
            return None
        c = rem[re] / qc
        quot[de] = c
        for e2, c2 in tq.items():
            ne = tuple(a + b for a, b in zip(de, e2))
            s = rem.get(ne, 0) - c * c2
            if s == 0:
                rem.pop(ne, None)
            else:
                rem[ne] = s
    return SparsePoly(vs, quot)


def poly_divmod(f: SparsePoly, g: SparsePoly, var: str = None):
    """Quotient and remainder of univariate division: f = q*g + r, deg r < deg g.

    Both inputs are read as polynomials in one main variable.  Coefficients
    may involve other variables, in which case each elimination step must
    divide exactly in the coefficient ring (always true when the divisor's
    leading coefficient is a nonzero rational).
    """
    if g.is_zero():
        raise DivisionByZeroPolynomial("polynomial division by zero")
    if var is None:
        cands = sorted({v for v in f.vars if f.degree_in(v) not in (0, NEG_INF)}
                       | {v for v in g.vars if g.degree_in(v) not in (0, NEG_INF)})
        if len(cands) > 1:
            raise ValueError(f"main variable is ambiguous ({cands}); pass var=")
        var = cands[0] if cands else (f.vars[0] if f.vars else g.vars[0] if g.vars else "x")

    fc = f.coeffs_in(var) if var in f.vars else {0: f}
    gc = g.coeffs_in(var) if var in g.vars else {0: g}
    dg = max(gc)
    lead = gc[dg]
    lead_const = lead.is_constant()

    rem = dict(fc)
    quot: dict = {}

    def deg(d):
        return max((k for k, p in d.items() if not p.is_zero()), default=-1)

    df = deg(rem)
    while df >= dg:
        top = rem.get(df)
        if top is None or top.is_zero():
            rem.pop(df, None)
            df = deg(rem)
            continue
        if lead_const:
            q = top * (Fraction(1) / lead.constant_value())
        else:
            q = divide_exact(top, lead)
            if q is None:
                raise ValueError("division step is not exact over the coefficient "
                                 "ring; leading coefficient must divide")
        k = df - dg
        quot[k] = quot.get(k, SparsePoly.zero()) + q
        for i, gi in gc.items():
            rem[i + k] = rem.get(i + k, SparsePoly.zero()) - q * gi
        rem.pop(df, None)
        df = deg(rem)

    def assemble(coeffs: dict) -> SparsePoly:
        out = SparsePoly.zero((var,))
        xv = SparsePoly.variable(var)
        for k, p in coeffs.items():
            if not p.is_zero():
                out = out + p * xv ** k
        return out

    return assemble(quot), assemble(rem)
