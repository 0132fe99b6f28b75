"""Tour of the tower arithmetic: F_p < F_q < F_{q^t} < F_{q^2t}.

Elements are plain ints (base-p digit encoding), the modulus is the
lexicographically smallest irreducible, and everything is reproducible.
"""

from scatlin import make_field

ctx = make_field(3, 1, 3)  # q = 3, t = 3: the 729-element top field
print(f"tower: {ctx}")
print(f"modulus (little-endian over F_3): {ctx.modulus}")
print(f"generator index: {ctx.generator}")

x = 123
print(f"\nx = {x}")
print(f"x^q         = {ctx.frob(x, 1)}")
print(f"x^(q^2t)    = {ctx.frob(x, ctx.n)}   (back to x)")
print(f"Tr onto F_q^t: {ctx.trace_rel(x, 3)}  (lands in the middle field: "
      f"{ctx.in_subfield(ctx.trace_rel(x, 3), 3)})")
print(f"N onto F_q^t : {ctx.norm_rel(x, 3)}")

ker = ctx.ker_trace()
print(f"\n|ker Tr| = {len(ker)} = q^t; the middle field meets it only in 0")
x0, x1 = ctx.tower_split(x)
print(f"tower split: {x} = {x0} (middle field) + {x1} (trace kernel)")

# semilinear equations z^(q^k) = c*z decide solvability through a norm test
c = ctx.pow(ctx.generator, ctx.q - 1)
z = ctx.solve_semilinear(c, 1)
print(f"\nz with z^q = c*z for c = g^(q-1): z = {z} (the generator itself)")
print(f"JSON descriptor: {ctx.to_json()}")
