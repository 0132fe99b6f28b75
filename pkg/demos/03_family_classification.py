"""Sweeping the four-term family: conditions versus oracle verdicts.

Walks the full (m, h) grid at (3,3,1), compares the sufficient-condition
cases against the fiber oracle, and shows a constructive witness for a
member in the bad power set.
"""

from scatlin import make_field, QuadParams, build_quadrinomial, trace_zero_power_set
from scatlin.quadrinomial import nonscattered_witness
from scatlin.sweep import classify_sweep, conjecture_scan

ctx = make_field(3, 1, 3)

plus = trace_zero_power_set(ctx, 1, +1)
minus = trace_zero_power_set(ctx, 1, -1)
print(f"power sets at (3,3): |plus\\0| = {(plus != 0).sum()}, |minus\\0| = {(minus != 0).sum()}")
print("together with 0 they cover the whole middle field here, so only the")
print("plus-set case is populated at this size.\n")

records, summary = classify_sweep(ctx, 1, h_dedup=True, with_witness=False)
print(f"grid sweep: {summary['pairs']} (m, h-orbit) pairs")
print(f"  condition cases: {summary['case_counts']}")
print(f"  prior-class tags: {summary['prior_counts']}")
print(f"  scattered members: {summary['scattered']}")
print(f"  condition-applies but not scattered: "
      f"{len(summary['violations_applies_not_scattered'])}  (soundness)")
mz = summary["conjecture_data_scattered_not_applies"]
print(f"  scattered outside the conditions: {len(mz)}, all with m = 0: "
      f"{all(m == 0 for m, _ in mz)}  (degenerate binomial members)\n")

scan = conjecture_scan(ctx, 1)
print("exponent-ordering comparison (expected characterization):")
print(f"  main ordering, m != 0 mismatches:    {scan['nonzero_m_mismatches_main']}")
print(f"  swapped ordering, m != 0 mismatches: {scan['nonzero_m_mismatches_swapped']}\n")

m_bad = int(minus[minus != 0][0])
w = nonscattered_witness(QuadParams(ctx, 1, m_bad, 1))
f = build_quadrinomial(QuadParams(ctx, 1, m_bad, 1))
print(f"witness for m = {m_bad} in the minus power set, h = 1: {w}")
print(f"  f(x)*y == f(y)*x: {ctx.mul(f.eval(w['x']), w['y']) == ctx.mul(f.eval(w['y']), w['x'])}")
print(f"  x/y outside the base field: {not ctx.in_subfield(ctx.div(w['x'], w['y']), 1)}")
