"""Graph-subspace stabilizers and the standard-form triangle.

The invertible matrices (a, b; c, d) with f(a*X + b*f) = c*X + d*f form,
with the zero matrix, a matrix field of the same order as the right
idealizer.  For even towers the family stabilizer is the scalar Frobenius
diagonal over F_{q^2}; for odd towers it picks up off-diagonal entries with
an explicit closed form, and the polynomial leaves standard form.
"""

from scatlin import make_field, QuadParams, build_quadrinomial, standard_form, stabilizer
from scatlin.sweep import condition_pairs

for (p, t) in [(3, 4), (3, 5)]:
    ctx = make_field(p, 1, t)
    m, h = condition_pairs(ctx, 1)[0]
    member = build_quadrinomial(QuadParams(ctx, 1, m, h))
    st = stabilizer(member)
    sf = standard_form(member)
    print(f"t = {t} ({'even' if t % 2 == 0 else 'odd'} tower), member m={m}, h={h}")
    print(f"  |stabilizer with zero| = {st.order_with_zero} = q^2")
    print(f"  diagonal only: {st.is_diagonal_only()}")
    print(f"  exponent-difference gcd r = {sf['r']}; standard form: {sf['is_standard']}")
    print(f"  closure flags: {st.closure_flags()}")
    if st.is_diagonal_only():
        ok = all(d == ctx.frob(a, 1) and ctx.in_subfield(a, 2) for a, b, g, d in st.elements)
        print(f"  diagonal pattern (alpha, alpha^q), alpha in F_q^2: {ok}")
    else:
        sample = st.elements[-1]
        print(f"  sample off-diagonal element: {sample}")
    print()
