"""Chow forms of projective cycles and the taffy homotopy.

A cycle of dimension r and degree d in P^N is represented by its Chow form:
a polynomial in r+1 groups of dual variables u<i>_<j> (group i, coordinate
j = 0..N), homogeneous of degree d in each group, determined by the cycle
up to a nonzero scalar.  Construction is supported for 0-cycles, linear
cycles, and products; anything else may be supplied as data and is taken
at face value.

The scaling action ^tF substitutes u<i>_j -> t*u<i>_j for the first m+1
coordinates of every group.  Collecting powers of t gives the t-expansion;
a form with a single nonzero coefficient is a t-eigenform, and eigenweight
(m+1)*d characterizes suspension forms.  The taffy homotopy reverses the
expansion coefficients, H(t) = g_d + g_{d-1} t + ... + g_0 t^d, sliding
any form with g_d != 0 onto a suspension form at t = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .poly import Rational, SparsePoly, as_rational

__all__ = [
    "MHForm",
    "TExpansion",
    "TaffyPath",
    "chow_of_points",
    "chow_of_linear",
    "mul_cycles",
    "t_expand",
    "eigenform_degree",
    "is_suspension",
    "taffy",
    "det_action_check",
    "is_real_form",
    "proportional",
]


def group_var(i: int, j: int) -> str:
    return f"u{i}_{j}"


def _var_group_coord(name: str) -> tuple:
    # u<i>_<j>
    if not name.startswith("u") or "_" not in name:
        raise ValueError(f"not a Chow variable: {name!r}")
    i, j = name[1:].split("_", 1)
    return int(i), int(j)


@dataclass(frozen=True)
class MHForm:
    """Multihomogeneous form of degree d in each of r+1 groups.

    m is the split index: coordinates 0..m of every group form the block
    scaled by the ^t action.
    """

    N: int
    r: int
    d: int
    m: int
    form: SparsePoly

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("degree must be at least 1")
        if not 0 <= self.m <= self.N:
            raise ValueError("split index m must satisfy 0 <= m <= N")
        if self.form.is_zero():
            raise ValueError("zero polynomial is not a Chow form")
        groups = [_var_group_coord(v) for v in self.form.vars]
        for i, j in groups:
            if not (0 <= i <= self.r and 0 <= j <= self.N):
                raise ValueError(f"variable u{i}_{j} outside shape "
                                 f"(r={self.r}, N={self.N})")
        for exps in self.form.terms:
            per_group = [0] * (self.r + 1)
            for (i, _), e in zip(groups, exps):
                per_group[i] += e
            if any(g != self.d for g in per_group):
                raise ValueError(
                    "form is not homogeneous of the stated degree in "
                    "every variable group")

    def with_m(self, m: int) -> "MHForm":
        return MHForm(self.N, self.r, self.d, m, self.form)

    def evaluate(self, hyperplanes: Sequence[Sequence[Rational]]) -> Fraction:
        """Value at u^i = hyperplanes[i]; zero means common incidence."""
        if len(hyperplanes) != self.r + 1:
            raise ValueError(f"need {self.r + 1} hyperplanes")
        point = {}
        for i, h in enumerate(hyperplanes):
            if len(h) != self.N + 1:
                raise ValueError(f"hyperplane {i} needs {self.N + 1} coefficients")
            for j, c in enumerate(h):
                point[group_var(i, j)] = as_rational(c)
        return self.form.evaluate(point)

    def __mul__(self, other: "MHForm") -> "MHForm":
        return mul_cycles(self, other)

    def to_json_dict(self) -> dict:
        return {"N": self.N, "r": self.r, "d": self.d, "m": self.m,
                "form": self.form.to_json_dict()}

    @staticmethod
    def from_json_dict(data: dict) -> "MHForm":
        return MHForm(int(data["N"]), int(data["r"]), int(data["d"]),
                      int(data["m"]), SparsePoly.from_json_dict(data["form"]))


def _as_point(coords: Sequence[Rational]) -> tuple:
    pt = tuple(as_rational(c) for c in coords)
    if all(c == 0 for c in pt):
        raise ValueError("projective point cannot be the zero vector")
    return pt


def chow_of_points(points: Iterable, m: int = 0) -> MHForm:
    """Chow form of a 0-cycle: the product of incidence linear forms.

    Each entry is either a coordinate sequence or a (coordinates,
    multiplicity) pair.
    """
    factors = []
    N = None
    for entry in points:
        if (isinstance(entry, (tuple, list)) and len(entry) == 2
                and isinstance(entry[0], (tuple, list))
                and isinstance(entry[1], int)):
            coords, mult = entry
        else:
            coords, mult = entry, 1
        if mult < 1:
            raise ValueError("multiplicity must be positive")
        pt = _as_point(coords)
        if N is None:
            N = len(pt) - 1
        elif len(pt) - 1 != N:
            raise ValueError("all points must share one ambient space")
        factors.append((pt, mult))
    if N is None:
        raise ValueError("need at least one point")
    vs = tuple(group_var(0, j) for j in range(N + 1))
    form = SparsePoly.constant(1, vs)
    for pt, mult in factors:
        lin = SparsePoly(vs, {tuple(1 if k == j else 0 for k in range(N + 1)): c
                              for j, c in enumerate(pt) if c != 0})
        form = form * lin ** mult
    return MHForm(N, 0, sum(mult for _, mult in factors), m, form)


def _rank(rows: list) -> int:
    mat = [list(row) for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                q = mat[i][col] / prow[col]
                mat[i] = [a - q * b for a, b in zip(mat[i], prow)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def _det_poly(mat: list) -> SparsePoly:
    # cofactor expansion; matrices here are (r+1) x (r+1) with tiny r
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det_poly(minor)
        if j % 2:
            term = term * Fraction(-1)
        total = term if total is None else total + term
    return total


def chow_of_linear(span: Sequence[Sequence[Rational]], m: int = 0) -> MHForm:
    """Chow form of the linear cycle spanned by r+1 independent points.

    The incidence determinant det[ u^i(p_k) ] vanishes exactly when all
    r+1 hyperplanes meet the span in a common point.
    """
    pts = [_as_point(p) for p in span]
    if not pts:
        raise ValueError("need at least one spanning point")
    N = len(pts[0]) - 1
    if any(len(p) != N + 1 for p in pts):
        raise ValueError("all points must share one ambient space")
    r = len(pts) - 1
    if r > N:
        raise ValueError("too many spanning points for the ambient space")
    if _rank(pts) != r + 1:
        raise ValueError("spanning points are linearly dependent")
    allvars = tuple(group_var(i, j) for i in range(r + 1) for j in range(N + 1))
    mat = []
    for i in range(r + 1):
        row = []
        for p in pts:
            lin = SparsePoly.zero(allvars)
            for j, c in enumerate(p):
                if c != 0:
                    lin = lin + SparsePoly.variable(group_var(i, j)) * c
            row.append(lin)
        mat.append(row)
    return MHForm(N, r, 1, m, _det_poly(mat))


def mul_cycles(F: MHForm, G: MHForm) -> MHForm:
    """Chow form of a cycle sum: degrees add, shapes must match."""
    if (F.N, F.r, F.m) != (G.N, G.r, G.m):
        raise ValueError("cycle shapes differ (N, r, m must match)")
    return MHForm(F.N, F.r, F.d + G.d, F.m, F.form * G.form)


@dataclass(frozen=True)
class TExpansion:
    """Coefficients of ^tF by powers of t: ^tF = sum g_i t^i."""

    N: int
    r: int
    d: int
    m: int
    coefficients: tuple

    @property
    def L(self) -> int:
        return len(self.coefficients) - 1

    def nonzero_indices(self) -> list:
        return [i for i, g in enumerate(self.coefficients) if not g.is_zero()]

    def coefficient_form(self, i: int) -> MHForm:
        g = self.coefficients[i]
        if g.is_zero():
            raise ValueError(f"g_{i} is zero")
        return MHForm(self.N, self.r, self.d, self.m, g)

    def recombine(self, t: Rational) -> SparsePoly:
        t = as_rational(t)
        total = None
        for i, g in enumerate(self.coefficients):
            term = g * t ** i
            total = term if total is None else total + term
        return total


def t_expand(F: MHForm) -> TExpansion:
    """Split ^tF by powers of t, exactly.

    The t-power of a term is its total exponent over the scaled block
    (coordinates 0..m of every group).  The top power is bounded by
    (m+1)*d for every form this module constructs.
    """
    groups = [_var_group_coord(v) for v in F.form.vars]
    scaled = [j <= F.m for _, j in groups]
    buckets: dict = {}
    for exps, coeff in F.form.terms.items():
        w = sum(e for e, s in zip(exps, scaled) if s)
        buckets.setdefault(w, {})[exps] = coeff
    top = max(buckets)
    bound = (F.m + 1) * F.d
    if top > bound:
        raise AssertionError(
            f"t-degree {top} exceeds the cycle bound {bound}; "
            "input is not the Chow form of a cycle with this split index")
    coeffs = tuple(SparsePoly(F.form.vars, buckets.get(i, {}))
                   for i in range(top + 1))
    return TExpansion(F.N, F.r, F.d, F.m, coeffs)


def eigenform_degree(F: MHForm):
    """The s with ^tF = t^s F, or None when no such s exists."""
    te = t_expand(F)
    nz = te.nonzero_indices()
    if len(nz) != 1:
        return None
    s = nz[0]
    assert te.coefficients[s] == F.form, "single bucket must reproduce F"
    return s


def is_suspension(F: MHForm, proper_intersection: bool = False) -> bool:
    """True iff ^tF = t^((m+1)d) F.

    With proper_intersection set, an eigenform of weight below (m+1)*d is
    rejected as inconsistent input rather than merely non-suspension.
    """
    s = eigenform_degree(F)
    want = (F.m + 1) * F.d
    if proper_intersection and s is not None and s < want:
        raise ValueError(
            f"eigenweight {s} below the proper-intersection bound {want}; "
            "input is inconsistent")
    return s == want


@dataclass(frozen=True)
class TaffyPath:
    """The homotopy H(t) = g_d + g_{d-1} t + ... + g_0 t^d (m = 0)."""

    expansion: TExpansion

    def __call__(self, t: Rational) -> MHForm:
        te = self.expansion
        t = as_rational(t)
        total = None
        for i, g in enumerate(te.coefficients):
            term = g * t ** (te.d - i)
            total = term if total is None else total + term
        return MHForm(te.N, te.r, te.d, te.m, total)


def taffy(F: MHForm) -> TaffyPath:
    """Deformation of F onto the suspension form g_d at t = 0.

    Requires m = 0 and g_d != 0 (the cycle meets the base properly).
    H(1) = F; H(0) = g_d is always a suspension form.
    """
    if F.m != 0:
        raise ValueError("taffy is defined for split index m = 0")
    te = t_expand(F)
    if te.L < F.d or te.coefficients[F.d].is_zero():
        raise ValueError(
            "top coefficient g_d vanishes: improper intersection with "
            "the base point")
    return TaffyPath(te)


def _det_frac(mat: list) -> Fraction:
    mat = [[as_rational(c) for c in row] for row in mat]
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        for i in range(col + 1, n):
            if mat[i][col] != 0:
                q = mat[i][col] / mat[col][col]
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[col])]
    return det


def det_action_check(F: MHForm, A: Sequence[Sequence[Rational]]) -> bool:
    """Verify F(Au) = det(A)^d F(u) exactly.

    A mixes the r+1 variable groups: (Au)^i = sum_k A[i][k] u^k.
    """
    n = F.r + 1
    if len(A) != n or any(len(row) != n for row in A):
        raise ValueError(f"matrix must be {n}x{n}")
    det = _det_frac(A)
    if det == 0:
        raise ValueError("matrix is singular")
    allvars = F.form.vars
    mapping = {}
    for i in range(n):
        for j in range(F.N + 1):
            img = SparsePoly.zero(allvars)
            for k in range(n):
                c = as_rational(A[i][k])
                if c != 0:
                    img = img + SparsePoly.variable(group_var(k, j)) * c
            mapping[group_var(i, j)] = img
    lhs = F.form.substitute(mapping)
    rhs = F.form * det ** F.d
    return lhs == rhs


def is_real_form(F: MHForm) -> bool:
    """All coefficients rational; the stand-in for being defined over R."""
    return all(isinstance(c, Fraction) for c in F.form.terms.values())


def proportional(F: MHForm, G: MHForm) -> bool:
    """Projective equality: equal up to a nonzero rational scalar."""
    if (F.N, F.r, F.d) != (G.N, G.r, G.d):
        return False
    a = F.form.leading_coeff()
    b = G.form.leading_coeff()
    return F.form * b == G.form * a
