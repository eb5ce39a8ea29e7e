"""Sturm sequences and exact real-root counting for rational polynomials.

The chain is the plain Euclidean one: f0 = f, f1 = f', and each later
entry is the negated remainder of the two before it.  No content is
removed and no pseudo-remainders are taken, so every entry is the exact
field remainder.  Sign changes are counted after deleting zeros; the
difference of the counts at two non-root endpoints is the number of
distinct real roots between them, multiplicities ignored.

Sign evaluation clears denominators once per chain and runs on plain
integers, which keeps bisection refinement cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .poly import NEG_INF, SparsePoly, as_rational

SignSeq = list  # of -1/0/+1


class EndpointRootError(ValueError):
    """Raised when a counting endpoint is itself a root."""


def _main_var(f: SparsePoly, var: str = None) -> str:
    if var is not None:
        return var
    cands = [v for v in f.vars if f.degree_in(v) not in (0, NEG_INF)]
    if len(cands) != 1:
        raise ValueError(f"main variable is ambiguous for {f}; pass var=")
    return cands[0]


def _dense(f: SparsePoly, var: str) -> list:
    coeffs = f.dense_coeffs(var)
    if len(coeffs) < 2:
        raise ValueError("need a non-constant polynomial")
    return coeffs


def _dense_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    """Univariate (quotient, remainder) over Fraction, dense ascending lists."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    while len(r) - 1 >= db and any(c != 0 for c in r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        k = len(r) - 1 - db
        c = r[-1] / lb
        q[k] = c
        for i, bc in enumerate(b):
            r[i + k] -= c * bc
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return q, r


@dataclass(frozen=True)
class SturmSeq:
    """Euclidean sign chain of one polynomial.

    polys[0] is the input, polys[1] its derivative, and the chain stops
    at the last nonzero remainder (a gcd of f and f' up to scalar).
    """

    var: str
    polys: tuple

    def __len__(self):
        return len(self.polys)

    def as_sparse(self) -> tuple:
        return tuple(SparsePoly.from_dense(self.var, p) for p in self.polys)


def sturm_sequence(f: SparsePoly, var: str = None) -> SturmSeq:
    """Build the Euclidean Sturm chain of a non-constant rational polynomial."""
    var = _main_var(f, var)
    f0 = _dense(f, var)
    f1 = [c * k for k, c in enumerate(f0)][1:]
    chain = [f0, f1]
    while True:
        _, r = _dense_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return SturmSeq(var=var, polys=tuple(tuple(p) for p in chain))


def sign_changes(signs: Iterable[int]) -> int:
    """Sign changes after deleting zeros."""
    cleaned = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(cleaned, cleaned[1:]) if a * b < 0)


# ---- integerized evaluation ----


class _IntChain:
    """Sturm chain with denominators cleared, for integer-only sign queries.

    Scaling each entry by a positive constant changes no signs, so the
    chain built here answers exactly the same queries as the Fraction one.
    """

    __slots__ = ("polys",)

    def __init__(self, seq: SturmSeq):
        polys = []
        for p in seq.polys:
            den = 1
            for c in p:
                den = den * c.denominator // gcd(den, c.denominator)
            ip = [int(c * den) for c in p]
            g = 0
            for c in ip:
                g = gcd(g, c)
            if g > 1:
                ip = [c // g for c in ip]
            polys.append(ip)
        self.polys = polys

    def signs_at(self, x: Fraction) -> SignSeq:
        # sign(f(p/q)) = sign(sum_i c_i p^i q^(n-i)) since q > 0
        p, q = x.numerator, x.denominator
        out = []
        for cs in self.polys:
            acc = 0
            qpow = 1
            for i in range(len(cs) - 1, -1, -1):
                acc = acc * p + cs[i] * qpow
                qpow *= q
            out.append(0 if acc == 0 else (1 if acc > 0 else -1))
        return out

    def signs_at_pos_inf(self) -> SignSeq:
        return [0 if p[-1] == 0 else (1 if p[-1] > 0 else -1) for p in self.polys]

    def signs_at_neg_inf(self) -> SignSeq:
        out = []
        for p in self.polys:
            s = 1 if p[-1] > 0 else -1
            if (len(p) - 1) % 2:
                s = -s
            out.append(s)
        return out

    def changes_at(self, x: Fraction) -> int:
        return sign_changes(self.signs_at(x))

    def is_root(self, x: Fraction) -> bool:
        return self.signs_at(x)[0] == 0


def sign_sequence_at(seq: SturmSeq, x) -> SignSeq:
    """Signs of the chain at a rational point (zeros kept in place)."""
    return _IntChain(seq).signs_at(as_rational(x))


def cauchy_root_bound(f: SparsePoly, var: str = None) -> Fraction:
    """1 + max |c_i| / |c_lead|; every real root lies strictly inside."""
    var = _main_var(f, var)
    cs = _dense(f, var)
    lead = abs(cs[-1])
    m = max(abs(c) for c in cs[:-1]) if len(cs) > 1 else Fraction(0)
    return 1 + m / lead


def expand_endpoints_clear(f: SparsePoly, a, b, var: str = None):
    """Widen (a, b) outward in root-bound steps until neither end is a root.

    The returned interval contains the original one; widening can pick up
    additional roots, which is inherent to moving endpoints outward.
    """
    var = _main_var(f, var)
    a, b = as_rational(a), as_rational(b)
    step = cauchy_root_bound(f, var)
    seq = _IntChain(sturm_sequence(f, var))
    while seq.is_root(a):
        a -= step
    while seq.is_root(b):
        b += step
    return a, b


def count_distinct_roots_in(f: SparsePoly, a, b, var: str = None) -> int:
    """Distinct real roots in the open interval (a, b); endpoints must not be roots."""
    var = _main_var(f, var)
    a, b = as_rational(a), as_rational(b)
    if a >= b:
        raise ValueError(f"empty interval: ({a}, {b})")
    seq = sturm_sequence(f, var)
    chain = _IntChain(seq)
    sa, sb = chain.signs_at(a), chain.signs_at(b)
    if sa[0] == 0:
        raise EndpointRootError(f"left endpoint {a} is a root; nudge endpoints first")
    if sb[0] == 0:
        raise EndpointRootError(f"right endpoint {b} is a root; nudge endpoints first")
    return sign_changes(sa) - sign_changes(sb)


def count_distinct_roots_total(f: SparsePoly, var: str = None) -> int:
    """Distinct real roots over the whole line, from the signs at both infinities."""
    var = _main_var(f, var)
    chain = _IntChain(sturm_sequence(f, var))
    return sign_changes(chain.signs_at_neg_inf()) - sign_changes(chain.signs_at_pos_inf())


def isolate_roots_bisection(f: SparsePoly, precision, var: str = None) -> list:
    """Disjoint rational intervals, one per distinct real root, width <= precision.

    Counting is exact at every stage, so the number of returned intervals
    always equals the total distinct-root count.  A rational root hit
    exactly is returned as a width-zero interval [r, r].
    """
    var = _main_var(f, var)
    precision = as_rational(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    seq = sturm_sequence(f, var)
    chain = _IntChain(seq)

    bound = cauchy_root_bound(f, var)
    lo, hi = -bound, bound

    def split_point(a: Fraction, b: Fraction) -> Fraction:
        # midpoint, shifted deterministically until it is not a root
        m = (a + b) / 2
        k = 3
        while chain.is_root(m):
            m = a + (b - a) * Fraction(2 ** (k - 1) + 1, 2 ** k)
            k += 1
        return m

    out = []
    va, vb = chain.changes_at(lo), chain.changes_at(hi)
    stack = [(lo, va, hi, vb)]
    while stack:
        a, va, b, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            while b - a > precision:
                m = (a + b) / 2
                sm = chain.signs_at(m)
                if sm[0] == 0:
                    a = b = m
                    break
                vm = sign_changes(sm)
                if va - vm == 1:
                    b, vb = m, vm
                else:
                    a, va = m, vm
            out.append((a, b))
            continue
        m = split_point(a, b)
        vm = chain.changes_at(m)
        stack.append((m, vm, b, vb))
        stack.append((a, va, m, vm))
    out.sort()
    return out
