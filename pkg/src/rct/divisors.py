"""Divisor spaces over the x_0 vertex and their membership certificates.

A divisor here is a nonzero homogeneous form f of degree d in x_0..x_n.
Div' consists of divisors not passing through (1:0:...:0), normalized so
the x_0^d coefficient is 1.  E consists of normalized divisors whose
restriction to every real line through the vertex, the monic univariate
polynomial f(x_0, x) for x != 0, has d distinct real roots.  Div''
additionally requires f_t(1,1,0,...,0) != 0 for all t in (0,1].

E-membership is decided through the critical polynomials: writing
p_i(x_1..x_n) for the coefficient of x_0^{d-i}, the form
H_j = F_j(p_1,...,p_d) is homogeneous, and membership is equivalent to
every H_j being positive away from the origin.  For n = 1 that is a
finite exact check.  For n >= 2 positive verdicts are evidence over a
deterministic direction grid, while refutations are exact: a witness
direction is certified by a Sturm count below d.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .critical import (
    D_MAX_DEFAULT,
    RootVerdict,
    critical_polynomials,
    has_d_distinct_real_roots,
)
from .poly import Rational, SparsePoly, as_rational
from .sturm import count_distinct_roots_in, count_distinct_roots_total

__all__ = [
    "Divisor",
    "MembershipReport",
    "in_div_prime",
    "scale_divisor",
    "paper_family",
    "in_E",
    "e_certificate_forms",
    "sampled_sphere_min",
    "positivity_margin",
    "in_div_double_prime",
    "circle_grid",
    "sphere_grid",
    "default_grid",
    "DEFAULT_GRID_N2",
    "DEFAULT_GRID_N3",
]

DEFAULT_GRID_N2 = 2000
DEFAULT_GRID_N3 = 20000


def xvar(i: int) -> str:
    return f"x{i}"


class Divisor:
    """Nonzero homogeneous form of degree d in x_0..x_n."""

    __slots__ = ("n", "d", "f", "normalized")

    def __init__(self, f: SparsePoly, n: Optional[int] = None):
        if f.is_zero():
            raise ValueError("the zero polynomial is not a divisor")
        if not f.is_homogeneous():
            raise ValueError("divisor polynomial must be homogeneous")
        seen = -1
        for v in f.vars:
            if not (v.startswith("x") and v[1:].isdigit()):
                raise ValueError(f"divisor variables are x0..xn, got {v!r}")
            seen = max(seen, int(v[1:]))
        if n is None:
            n = max(seen, 1)
        elif seen > n:
            raise ValueError(f"variable x{seen} exceeds stated n={n}")
        d = f.degree()
        allvars = tuple(xvar(i) for i in range(n + 1))
        self.f = f.with_vars(allvars)
        self.n = n
        self.d = d
        self.normalized = self._x0_coeff_top() == 1

    def _x0_coeff_top(self) -> Fraction:
        lead = tuple(self.d if i == 0 else 0 for i in range(self.n + 1))
        return self.f.terms.get(lead, Fraction(0))

    def x0_coefficients(self) -> dict:
        """Map i -> p_i, the coefficient of x_0^{d-i} in x_1..x_n."""
        out = {}
        for power, poly in self.f.coeffs_in(xvar(0)).items():
            out[self.d - power] = poly
        return out

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.n == other.n \
            and self.f == other.f

    def __hash__(self):
        return hash((self.n, self.f))

    def __repr__(self):
        from .poly import format_poly
        return f"Divisor(n={self.n}, d={self.d}, {format_poly(self.f)})"

    def to_json_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "normalized": self.normalized,
                "f": self.f.to_json_dict()}

    @staticmethod
    def from_json_dict(data: dict) -> "Divisor":
        return Divisor(SparsePoly.from_json_dict(data["f"]), int(data["n"]))


@dataclass
class MembershipReport:
    """Verdict for one of the divisor sets, with its certificate."""

    set_name: str                 # DivPrime | E | DivDoublePrime
    verdict: str                  # member | non_member | evidence_only
    mode: str                     # exact | sampled
    witness: Optional[object] = None
    data: dict = field(default_factory=dict)

    def ok(self) -> bool:
        return self.verdict in ("member", "evidence_only")

    def to_json_dict(self, verbose: bool = False) -> dict:
        out = {"set": self.set_name, "verdict": self.verdict,
               "mode": self.mode}
        if self.witness is not None:
            out["witness"] = [str(c) for c in self.witness]
        for k, v in self.data.items():
            if not verbose and k.startswith("samples_"):
                continue
            out[k] = v
        return out


def in_div_prime(D: Divisor):
    """Membership in Div': the vertex (1:0:...:0) is off the divisor.

    Returns (flag, normalized divisor or None).
    """
    top = D._x0_coeff_top()
    if top == 0:
        return False, None
    if top == 1:
        return True, D
    return True, Divisor(D.f * (Fraction(1) / top), D.n)


def scale_divisor(D: Divisor, t: Rational) -> Divisor:
    """The flow f_t: the x_0^{i_0} coefficient picks up t^{d-i_0}.

    f_1 = f, f_0 = x_0^d, and (f_t)_s = f_{ts}.
    """
    if not D.normalized:
        raise ValueError("scale_divisor needs a normalized divisor")
    t = as_rational(t)
    terms = {}
    for exps, coeff in D.f.terms.items():
        w = D.d - exps[0]
        if t == 0:
            if w == 0:
                terms[exps] = coeff
        else:
            terms[exps] = coeff * t ** w
    return Divisor(SparsePoly(D.f.vars, terms), D.n)


def paper_family(n: int, k: int):
    """The product family: G = prod_{i=1..k} (x_0^2 - i(x_1^2+...+x_n^2)).

    Returns (G, x_0*G), of degrees 2k and 2k+1.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    allvars = tuple(xvar(i) for i in range(n + 1))
    x0sq = SparsePoly.monomial(allvars,
                               tuple(2 if i == 0 else 0 for i in range(n + 1)))
    S = SparsePoly.zero(allvars)
    for i in range(1, n + 1):
        S = S + SparsePoly.monomial(
            allvars, tuple(2 if j == i else 0 for j in range(n + 1)))
    G = SparsePoly.constant(1, allvars)
    for i in range(1, k + 1):
        G = G * (x0sq - S * i)
    x0 = SparsePoly.monomial(allvars,
                             tuple(1 if i == 0 else 0 for i in range(n + 1)))
    return Divisor(G, n), Divisor(x0 * G, n)


def circle_grid(count: int) -> list:
    """Integer directions (q^2-p^2, 2pq) sweeping the half circle."""
    out = [(1, 0), (0, 1)]
    for j in range(count):
        t = Fraction(2 * j - count, count)  # -1 .. 1
        p, q = t.numerator, t.denominator
        v = (q * q - p * p, 2 * p * q)
        if v != (0, 0):
            out.append(v)
    return out


def sphere_grid(count: int, scale: int = 1000) -> list:
    """Deterministic integer directions near the Fibonacci sphere lattice.

    Entries stay below the scale so downstream exact evaluation works on
    small integers.
    """
    out = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    golden = (1 + math.sqrt(5)) / 2
    for j in range(count):
        z = 1 - (2 * j + 1) / count
        rho = math.sqrt(max(0.0, 1 - z * z))
        theta = 2 * math.pi * j / golden
        v = (round(scale * rho * math.cos(theta)),
             round(scale * rho * math.sin(theta)),
             round(scale * z))
        if v != (0, 0, 0):
            g = math.gcd(math.gcd(abs(v[0]), abs(v[1])), abs(v[2]))
            out.append((v[0] // g, v[1] // g, v[2] // g))
    return out


def default_grid(n: int, count: Optional[int] = None) -> list:
    """Direction grid for R^n minus the origin; deterministic for all n."""
    if n == 1:
        return [(1,)]
    if n == 2:
        return circle_grid(count or DEFAULT_GRID_N2)
    if n == 3:
        return sphere_grid(count or DEFAULT_GRID_N3)
    rng = random.Random(0)
    out = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    for _ in range(count or DEFAULT_GRID_N3):
        v = tuple(rng.randint(-999, 999) for _ in range(n))
        if any(v):
            out.append(v)
    return out


def _fiber_poly(D: Divisor, direction: Sequence[Rational]) -> SparsePoly:
    sub = {xvar(i + 1): as_rational(c) for i, c in enumerate(direction)}
    return D.f.substitute(sub)


def _compile_int_terms(p: SparsePoly):
    """(term list with integer coefficients, cleared denominator)."""
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    terms = [(int(c * den), exps) for exps, c in p.sorted_terms()]
    return terms, den


class _FiberChecker:
    """Per-divisor sample loop: integer evaluation of p_i and F_j.

    The direction grid is integral, so after clearing the coefficient
    denominators once (sign-safe: F_j is graded homogeneous, and scaling
    a direction by Q > 0 scales a_i by Q^i) every sample runs in plain
    int arithmetic with cached powers.
    """

    def __init__(self, D: Divisor, use_critical: bool):
        self.D = D
        self.d = D.d
        self.use_critical = use_critical
        ps = D.x0_coefficients()
        zero = SparsePoly.zero(D.f.vars[1:])
        compiled = [_compile_int_terms(ps.get(i, zero).with_vars(D.f.vars[1:]))
                    for i in range(1, D.d + 1)]
        Q = 1
        for _, den in compiled:
            Q = Q * den // math.gcd(Q, den)
        self.p_terms = [t for t, _ in compiled]
        self.p_mult = [Q ** i // compiled[i - 1][1]
                       for i in range(1, D.d + 1)]
        self.x_maxexp = [0] * D.n
        for terms in self.p_terms:
            for _, exps in terms:
                for v in range(D.n):
                    self.x_maxexp[v] = max(self.x_maxexp[v], exps[v])
        if use_critical:
            cs = critical_polynomials(D.d)
            self.f_terms = []
            self.a_maxexp = [0] * D.d
            avars = tuple(f"a{i}" for i in range(1, D.d + 1))
            for F in cs.F:
                terms, den = _compile_int_terms(F.with_vars(avars))
                assert den == 1
                self.f_terms.append(terms)
                for _, exps in terms:
                    for v in range(D.d):
                        self.a_maxexp[v] = max(self.a_maxexp[v], exps[v])

    @staticmethod
    def _powers(vals, maxexp):
        out = []
        for v, m in zip(vals, maxexp):
            row = [1] * (m + 1)
            for k in range(1, m + 1):
                row[k] = row[k - 1] * v
            out.append(row)
        return out

    @staticmethod
    def _eval(terms, pw) -> int:
        s = 0
        for coeff, exps in terms:
            t = coeff
            for v, e in enumerate(exps):
                if e:
                    t *= pw[v][e]
            s += t
        return s

    def coeff_point(self, direction) -> list:
        """Integers a_i proportional to the fiber coefficients (weight i)."""
        pw = self._powers([int(c) for c in direction], self.x_maxexp)
        return [self._eval(self.p_terms[i], pw) * self.p_mult[i]
                for i in range(self.d)]

    def critical_verdict(self, direction) -> RootVerdict:
        a = self.coeff_point(direction)
        pw = self._powers(a, self.a_maxexp)
        verdict = RootVerdict.TRUE
        for terms in self.f_terms:
            val = self._eval(terms, pw)
            if val == 0:
                return RootVerdict.DEGENERATE
            if val < 0:
                verdict = RootVerdict.FALSE
        return verdict

    def check(self, direction):
        """(fiber has d distinct real roots, certificate dict)."""
        cert: dict = {"direction": [str(c) for c in direction]}
        if self.use_critical and all(int(c) == c for c in direction):
            v = self.critical_verdict(direction)
            if v is RootVerdict.TRUE:
                cert["route"] = "critical"
                return True, cert
            cert["route"] = "critical" if v is RootVerdict.FALSE \
                else "critical-degenerate"
        else:
            cert["route"] = "sturm"
        count = count_distinct_roots_total(_fiber_poly(self.D, direction),
                                           xvar(0))
        cert["sturm_count"] = count
        return count == self.d, cert


def in_E(D: Divisor, grid_size: Optional[int] = None) -> MembershipReport:
    """Membership in E: every real line through the vertex meets the
    divisor in d distinct real points.

    n = 1 is decided exactly.  For n >= 2 a positive answer is evidence
    over the deterministic grid (every sample individually certified);
    a negative answer is exact, with a witnessed direction.
    """
    ok, norm = in_div_prime(D)
    if not ok:
        return MembershipReport("E", "non_member", "exact",
                                data={"reason": "divisor passes through the vertex"})
    D = norm
    use_critical = D.d <= D_MAX_DEFAULT and D.d >= 2
    checker = _FiberChecker(D, use_critical)
    if D.n == 1:
        good, cert = checker.check((1,))
        if good:
            return MembershipReport("E", "member", "exact",
                                    data={"certificate": cert})
        return MembershipReport("E", "non_member", "exact",
                                witness=(Fraction(1),), data={"certificate": cert})
    grid = default_grid(D.n, grid_size)
    for direction in grid:
        good, cert = checker.check(direction)
        if not good:
            return MembershipReport(
                "E", "non_member", "exact",
                witness=tuple(as_rational(c) for c in direction),
                data={"certificate": cert, "grid_size": len(grid)})
    return MembershipReport("E", "evidence_only", "sampled",
                            data={"grid_size": len(grid),
                                  "samples_all_certified": True})


def e_certificate_forms(D: Divisor, d_max: int = D_MAX_DEFAULT) -> list:
    """The substituted critical polynomials H_j = F_j(p_1..p_d), j = 2..d.

    Membership in E is equivalent to all of these being positive on
    R^n minus the origin.
    """
    from .poly import substitute_graded

    ok, norm = in_div_prime(D)
    if not ok:
        raise ValueError("divisor passes through the vertex")
    D = norm
    if not 2 <= D.d <= d_max:
        raise ValueError(f"degree must be in 2..{d_max}")
    cs = critical_polynomials(D.d)
    ps = D.x0_coefficients()
    zero = SparsePoly.zero(tuple(xvar(i) for i in range(1, D.n + 1)))
    gs = [ps.get(i, zero) for i in range(1, D.d + 1)]
    return [substitute_graded(cs.F[j - 2], gs) for j in range(2, D.d + 1)]


def sampled_sphere_min(H: SparsePoly, directions: Sequence) -> Fraction:
    """Exact minimum of H(x)/|x|^k over a direction grid (k = deg H, even)."""
    k = H.degree()
    if k < 0:
        raise ValueError("zero polynomial")
    if k % 2:
        raise ValueError("odd-degree forms cannot be positive on directions")
    best = None
    for direction in directions:
        vals = [as_rational(c) for c in direction]
        point = {v: c for v, c in zip(H.vars, vals)}
        norm2 = sum(c * c for c in vals)
        val = H.evaluate(point) / norm2 ** (k // 2)
        if best is None or val < best:
            best = val
    return best


def positivity_margin(H: SparsePoly, delta: Rational) -> Fraction:
    """The perturbation radius eps = delta / (2M), M = C(n+k-1, k).

    Any change of each coefficient by less than eps moves sphere values
    by less than delta/2, so positivity with margin delta survives.
    """
    delta = as_rational(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if H.is_zero() or not H.is_homogeneous():
        raise ValueError("need a nonzero homogeneous form")
    n = len(H.vars)
    k = H.degree()
    M = math.comb(n + k - 1, k)
    return delta / (2 * M)


def _g_of_t(D: Divisor) -> SparsePoly:
    """g(t) = f_t(1, 1, 0, ..., 0) as a polynomial in t."""
    sub = {xvar(i): as_rational(1 if i <= 1 else 0) for i in range(D.n + 1)}
    # f_t scales the x_0^{i_0} coefficient by t^{d-i_0}; evaluating at
    # (1,1,0,...,0) leaves sum over i_0+i_1 = d of c * t^{i_1}
    tvar = SparsePoly.variable("t")
    total = SparsePoly.zero(("t",))
    for power, poly in D.f.coeffs_in(xvar(0)).items():
        point = {v: sub[v] for v in poly.vars}
        c = poly.evaluate(point)
        if c != 0:
            total = total + tvar ** (D.d - power) * c
    return total


def in_div_double_prime(D: Divisor,
                        e_report: Optional[MembershipReport] = None,
                        grid_size: Optional[int] = None) -> MembershipReport:
    """Membership in Div'': E-membership plus f_t(1,1,0,...,0) != 0 on (0,1].

    The g(t) step is always exact (Sturm); the overall verdict inherits
    the E verdict's strength.
    """
    ok, norm = in_div_prime(D)
    if not ok:
        return MembershipReport("DivDoublePrime", "non_member", "exact",
                                data={"reason": "divisor passes through the vertex"})
    D = norm
    if e_report is None:
        e_report = in_E(D, grid_size)
    g = _g_of_t(D)
    data: dict = {"g": None, "g_exact": True,
                  "e_verdict": e_report.verdict}
    from .poly import format_poly
    data["g"] = format_poly(g)
    g1 = g.evaluate({"t": Fraction(1)}) if not g.is_constant() else \
        g.constant_value()
    if g1 == 0:
        data["reason"] = "f_t degenerates at t = 1"
        return MembershipReport("DivDoublePrime", "non_member", "exact",
                                witness=(Fraction(1),), data=data)
    roots_inside = 0 if g.is_constant() else \
        count_distinct_roots_in(g, Fraction(0), Fraction(1), "t")
    if roots_inside:
        data["reason"] = f"g(t) has {roots_inside} root(s) in (0,1)"
        return MembershipReport("DivDoublePrime", "non_member", "exact",
                                data=data)
    if e_report.verdict == "non_member":
        data["reason"] = "fails E-membership"
        return MembershipReport("DivDoublePrime", "non_member",
                                e_report.mode, witness=e_report.witness,
                                data=data)
    verdict = "member" if e_report.verdict == "member" else "evidence_only"
    return MembershipReport("DivDoublePrime", verdict, e_report.mode,
                            data=data)
