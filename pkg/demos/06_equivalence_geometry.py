"""Equivalence testing and the projective separation of the three families.

The beta-sweep decides linear equivalence of graph subspaces exactly; the
printed necessary conditions narrow where witnesses can live.  On the
geometry side, the intersection chain of the projection vertex under the
cyclic collineation separates monomial, binomial and four-term members:
intersection numbers 1 / 2 / at least 3.
"""

from scatlin import LinPoly, make_field, QuadParams, build_quadrinomial
from scatlin.equivalence import gammal_equivalent, gl_equivalent, pair_report
from scatlin.projgeom import polynomial_vertex, intersection_number, intersect_dim
from scatlin.sweep import condition_pairs

ctx = make_field(3, 1, 5)
m, h = condition_pairs(ctx, 1)[0]
p1 = QuadParams(ctx, 1, m, h)
member = build_quadrinomial(p1)
mono = LinPoly.monomial(ctx, 1, 1)

print("pairwise tests at (3,5,1):")
rep = pair_report(p1, p1)
print(f"  self pair: case {rep['case']}, witness {rep['gl_witness']}, agree {rep['agree']}")
print(f"  versus the monomial: linear witness {gl_equivalent(member, mono)}, "
      f"semilinear {gammal_equivalent(member, mono)}")

delta = next(d for d in range(2, ctx.size) if ctx.norm_rel(d, 1) not in (0, 1))
lp = LinPoly.from_terms(ctx, 1, {1: 1, ctx.n - 1: delta})

print("\nprojection vertices in PG(9, 3^10):")
for name, f in [("monomial", mono), ("binomial", lp), ("four-term", member)]:
    gamma = polynomial_vertex(ctx, 1, f)
    chain = [gamma, gamma.sigma_image()]
    d1 = intersect_dim(chain)
    chain.append(chain[-1].sigma_image())
    d2 = intersect_dim(chain)
    print(f"  {name:9s}: dim {gamma.dim}, chain dims {d1}, {d2}, "
          f"intersection number {intersection_number(gamma)}")
