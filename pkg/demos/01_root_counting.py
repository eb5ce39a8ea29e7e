"""How many real roots does a polynomial have, exactly?

Sturm's theorem turns root counting into a sign-change count along a
remainder chain, with no floating point anywhere.  Bisection against the
same counts then pins each root inside an arbitrarily small rational
interval.
"""

from fractions import Fraction

from rct import (
    cauchy_root_bound,
    count_distinct_roots_in,
    count_distinct_roots_total,
    format_poly,
    isolate_roots_bisection,
    parse_poly,
    sturm_sequence,
)


def banner(text):
    print()
    print("=" * 64)
    print(text)
    print("=" * 64)


banner("The remainder chain")
f = parse_poly("x^5 - 3*x^3 + x - 1/2")
seq = sturm_sequence(f, "x")
print(f"f = {format_poly(f)}")
for i, p in enumerate(seq.as_sparse()):
    print(f"  f_{i} = {format_poly(p)}")

banner("Counting, globally and in an interval")
total = count_distinct_roots_total(f, "x")
print(f"distinct real roots of f: {total}")
assert total == 3

bound = cauchy_root_bound(f, "x")
print(f"all real roots lie in [-{bound}, {bound}]")
inside = count_distinct_roots_in(f, Fraction(0), Fraction(2), "x")
print(f"roots in the open interval (0, 2): {inside}")
assert inside == 1
assert count_distinct_roots_in(f, Fraction(-2), Fraction(0), "x") == 2

banner("Multiple roots are counted once")
g = parse_poly("(x - 1)^2 * (x + 2)")
print(f"g = {format_poly(g)}")
print(f"distinct real roots of g: {count_distinct_roots_total(g, 'x')}")
assert count_distinct_roots_total(g, "x") == 2

banner("Isolation by bisection")
prec = Fraction(1, 10**12)
for lo, hi in isolate_roots_bisection(f, prec, "x"):
    mid = (lo + hi) / 2
    print(f"  root near {float(mid):+.12f}   width {float(hi - lo):.1e}")

# endpoints stay rational, so widths are exact too
h = parse_poly("x^2 - 1/4")
ivs = isolate_roots_bisection(h, Fraction(1, 1000), "x")
print(f"\nx^2 - 1/4 isolates to {[(str(a), str(b)) for a, b in ivs]}")
assert len(ivs) == 2
assert all(b - a <= Fraction(1, 1000) for a, b in ivs)
assert all(a <= s <= b for (a, b), s in zip(ivs, (Fraction(-1, 2),
                                                  Fraction(1, 2))))

print("\nEvery count above is exact; floats appear only in the printing.")
