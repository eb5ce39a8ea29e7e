"""Cycle forms and the taffy pull.

A cycle of dimension r and degree d in P^N is encoded by one
multihomogeneous form in r+1 groups of dual variables.  Scaling the
first coordinate by t acts on these forms; sorting by t-powers splits a
form into buckets, and the curve t -> H(t) pulls any admissible cycle
straight onto a suspension as t -> 0.
"""

from fractions import Fraction

from rct import (
    chow_of_linear,
    chow_of_points,
    eigenform_degree,
    format_poly,
    is_suspension,
    mul_cycles,
    proportional,
    t_expand,
    taffy,
)


def banner(text):
    print()
    print("=" * 64)
    print(text)
    print("=" * 64)


banner("Points in P^1")
F = chow_of_points([(1, 2)])
print(f"form of the point (1:2):      {format_poly(F.form)}")
two = chow_of_points([(1, 0), (0, 1)])
print(f"form of (1:0) + (0:1):        {format_poly(two.form)}")
fat = chow_of_points([((1, 1), 2)])
print(f"form of 2*(1:1):              {format_poly(fat.form)}")
assert fat.d == 2

banner("Products are unions")
prod = mul_cycles(chow_of_points([(1, 2)]), chow_of_points([(3, -1)]))
assert proportional(prod, chow_of_points([(1, 2), (3, -1)]))
print("form((1:2)) * form((3:-1)) is the form of the two-point cycle")

banner("Lines in P^2 and the scaling split")
L = chow_of_linear([(1, 1, 0), (0, 0, 1)])
print(f"skew line L:                  {format_poly(L.form)}")
exp = t_expand(L)
for i, g in enumerate(exp.coefficients):
    if not g.is_zero():
        print(f"  t^{i} bucket: {format_poly(g)}")
print(f"eigenform degree: {eigenform_degree(L)}")
assert eigenform_degree(L) is None and not is_suspension(L)

susp = chow_of_linear([(1, 0, 0), (0, 3, 5)])
print(f"\nsuspension line:              {format_poly(susp.form)}")
print(f"eigenform degree: {eigenform_degree(susp)}")
assert eigenform_degree(susp) == susp.d == 1
assert is_suspension(susp)

banner("The taffy pull")
H = taffy(L)
assert H(1) == L
print("H(1) is the input form (exact equality)")
for t in (Fraction(1, 2), Fraction(1, 10), Fraction(0)):
    Ft = H(t)
    print(f"  H({t}):  {format_poly(Ft.form)}")
end = H(0)
assert is_suspension(end)
assert proportional(end, chow_of_linear([(1, 0, 0), (0, 0, 1)]))
print("H(0) is the suspension line {x1 = 0}, projectively exactly")

# pulling a suspension does nothing
assert taffy(susp)(Fraction(1, 7)) == susp
print("pulling an already-straight form is the constant path")

banner("Improper cycles are refused")
try:
    taffy(chow_of_points([(0, 1)]))
except ValueError as e:
    print(f"point on the base: {e}")
