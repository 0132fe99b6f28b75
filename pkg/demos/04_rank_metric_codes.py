"""Rank-metric codes <X, f>: distance, the maximum-rank bound, idealizers.

The span of X and f is a maximum rank distance code with minimum distance
n - 1 exactly when f is scattered; idealizer orders are equivalence
invariants and detect the family structure.
"""

from scatlin import LinPoly, make_field, RankCode, QuadParams, build_quadrinomial
from scatlin.mrdcodes import right_idealizer, left_idealizer
from scatlin.sweep import condition_pairs

ctx = make_field(3, 1, 3)
n = ctx.n

mono = RankCode(LinPoly.monomial(ctx, 1, 1))
print(f"monomial code: min distance {mono.min_distance()} (n-1 = {n - 1}), "
      f"MRD: {mono.is_mrd()}")
print(f"  right idealizer order {len(right_idealizer(mono))} = q^n")

mid = RankCode(LinPoly.monomial(ctx, 1, ctx.t))
print(f"middle-Frobenius code: min distance {mid.min_distance()} "
      f"(kernel of X - X^(q^t) is the whole middle field), MRD: {mid.is_mrd()}")

m, h = condition_pairs(ctx, 1)[0]
member = build_quadrinomial(QuadParams(ctx, 1, m, h))
code = RankCode(member)
print(f"\nfamily member m={m}, h={h}: {member}")
print(f"  min distance {code.min_distance()}, MRD: {code.is_mrd()}")
print(f"  right idealizer order {len(right_idealizer(code))} = q^2")
print(f"  left idealizer order {len(left_idealizer(code))} = q^n (scalar line)")
