"""The divisor map in action: spread a 0-cycle, intersect, project back.

Take Z = (1:2) + (1:-1) in P^1.  Suspend it into P^2 (a fan of lines
through the vertex), intersect with the scaled divisor tD, and push the
d * deg(Z) intersection points forward through the projection
(x0 : x1 : x2) -> (x1 - x0 : x2).  As t -> 0 the output cycle converges
to d * Z at rate O(t).
"""

import math
from fractions import Fraction

from rct import (
    ZeroCycle,
    cycle_distance,
    default_demo,
    format_poly,
    psi_demo,
)


def banner(text):
    print()
    print("=" * 64)
    print(text)
    print("=" * 64)


banner("The default inputs")
Z, D = default_demo()
print(f"Z = {Z}")
print(f"D: {format_poly(D.f)}   (degree {D.d}, checked to lie in Div'')")

banner("One evaluation, with certificates")
res = psi_demo(Z, D, Fraction(1, 2))
print(f"t = 1/2 output: {res.output}")
print(f"degree {res.output.degree()} = d * deg(Z) = {D.d * Z.degree()}")
assert res.output.degree() == D.d * Z.degree()
for cert in res.certificates:
    ivs = cert["intervals"]
    print(f"  line over ({':'.join(cert['q'])}): Sturm count "
          f"{cert['sturm_count']}, intervals of width <= 1e-12")
    assert cert["sturm_count"] == D.d

banner("The limit t -> 0")
print(f"{'t':>8}  {'residual vs d*Z':>16}")
prev = None
residuals = []
for exp in (1, 2, 3):
    t = Fraction(1, 10 ** exp)
    res = psi_demo(Z, D, t, check_divisor=False)
    residuals.append(res.residual)
    print(f"{str(t):>8}  {res.residual:>16.3e}")
    if prev is not None:
        assert res.residual < prev
    prev = res.residual
assert residuals[-1] < 1e-2

slopes = [math.log10(a / b) for a, b in zip(residuals, residuals[1:])]
print(f"decade-to-decade slopes: {[round(s, 3) for s in slopes]}")
print("slope 1 means the residual shrinks linearly in t, as it should")

banner("Distances between cycles")
A = ZeroCycle([(1, 2), (1, -1)])
B = ZeroCycle([(-1, -2), (1, -1)])  # antipodal lift, same cycle
print(f"distance(A, A-with-flipped-lift) = {cycle_distance(A, B)}")
assert cycle_distance(A, B) == 0.0
C = ZeroCycle([(1, 2.1), (1, -1)])
print(f"distance to a nudged cycle       = {cycle_distance(A, C):.4f}")
