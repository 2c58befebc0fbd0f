"""Finite fields and elliptic curve groups from scratch.

Builds a prime field and an extension field, does some arithmetic, then
walks the rational points of a curve and identifies its group structure.
"""

from stopset import FieldSpec, curve, group_structure, rational_points, scalar_mul, sqrt

# prime field arithmetic
f5 = FieldSpec(5)
a, b = f5.element(3), f5.element(4)
print(f"F_5: 3 + 4 = {a + b}, 3 * 4 = {a * b}, 3^-1 = {a.inverse()}")
print(f"square roots of 4 in F_5: {sorted(str(r) for r in sqrt(f5.element(4)))}")

# extension field: F_25 = F_5[t] / (t^2 + t + 1), elements are coefficient lists
f25 = FieldSpec(5, 2)
t = f25.element([0, 1])
print(f"\nF_25 modulus (low degree first): {f25.modulus}")
print(f"t * t = {t * t}, t^24 = {t ** 24}")

# the curve y^2 = x^3 + x + 1 over F_5
E = curve(f5, 1, 1)
pts = rational_points(E)
print(f"\ncurve y^2 = x^3 + x + 1 over F_5 has {len(pts)} rational points:")
print("  " + ", ".join("O" if P.is_infinity else f"({P.x},{P.y})" for P in pts))

gs = group_structure(E)
print(f"group structure: Z/{gs.m1} x Z/{gs.m2}")
g = gs.generators[1]
print(f"generator ({g.x},{g.y}) sweeps the whole group:")
for i in range(1, gs.order + 1):
    Q = scalar_mul(E, i, g)
    label = "O" if Q.is_infinity else f"({Q.x},{Q.y})"
    print(f"  [{i}]P = {label}")
