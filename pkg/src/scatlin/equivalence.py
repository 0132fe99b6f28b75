"""Linear and semilinear equivalence of graph subspaces {(x, f(x))}.

Two polynomials are GL-equivalent when an invertible 2x2 matrix over the top
field carries one graph onto the other, i.e. g o (alpha*X + beta*f) equals
gamma*X + delta*f as reduced polynomials.  The decision procedure sweeps
beta: the coefficient slots outside supp(g), supp(f) and 0 constrain beta
alone and prune the sweep to a handful of survivors, each leaving one
F_q-linear system for (alpha, gamma, delta).  Cost O(q^n) sweep work plus a
small solve per survivor, which keeps pairwise testing comfortable at
n = 10.  Semilinear equivalence loops the p-power coefficient twists in
front of the linear test.

The module also evaluates the printed necessary conditions for two family
members to be GL-equivalent, organised by the residue class of the second
step against the first.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
import numpy as np

from . import gflinalg
from .fieldcore import FieldCtx
from .linpoly import LinPoly
from .quadrinomial import QuadParams, build_quadrinomial


@dataclass
class GLSearchResult:
    witness: tuple | None  # (alpha, beta, gamma, delta) or None
    beta_candidates: int
    systems_solved: int


def _q1_view(f: LinPoly) -> LinPoly:
    """Rewrite into the plain q-exponent indexing (step 1)."""
    return LinPoly.from_q_view(f.ctx, 1, f.q_view())


def _span_slot_values(outer: LinPoly, inner: LinPoly, bs: np.ndarray):
    """Slot values of outer o (b*inner) for every b in bs (step-1 polys)."""
    ctx = outer.ctx
    acc = {k: np.zeros((bs.size, ctx.deg), dtype=np.int64) for k in range(ctx.n)}
    for i in outer.support():
        fb = ctx.frob_vec(bs, i)
        for j in inner.support():
            k = (i + j) % ctx.n
            cst = ctx.mul(int(outer.coeffs[i]), ctx.frob(int(inner.coeffs[j]), i))
            acc[k] += ctx.DIGITS[ctx.scale_vec(cst, fb)]
    return {k: (v % ctx.p) @ ctx.PP for k, v in acc.items()}


def gl_search(f: LinPoly, g: LinPoly, budget: int | None = None) -> GLSearchResult:
    """Full beta sweep for g o (alpha*X + beta*f) = gamma*X + delta*f.

    Returns the canonically smallest invertible witness (ordered by beta,
    then by solution coordinates) or None, together with sweep statistics.
    """
    if f.ctx != g.ctx:
        raise ValueError("mismatched field contexts")
    ctx = f.ctx
    fq, gq = _q1_view(f), _q1_view(g)
    bs = ctx.elements()
    slot_vals = _span_slot_values(gq, fq, bs)

    interesting = set(gq.support()) | set(fq.support()) | {0}
    ok = np.ones(ctx.size, dtype=bool)
    for k in range(ctx.n):
        if k not in interesting:
            ok &= slot_vals[k] == 0
    betas = np.nonzero(ok)[0]
    if budget is not None and betas.size > budget:
        betas = betas[:budget]
    n_candidates = int(betas.size)

    d = ctx.deg
    eye = np.eye(d, dtype=np.int64)
    zero = np.zeros((d, d), dtype=np.int64)
    # per-slot alpha blocks are beta-independent
    slot_order = sorted(interesting)
    rows_alpha = {}
    for k in slot_order:
        gk = int(gq.coeffs[k])
        m_alpha = (ctx.mult_matrix(gk) @ ctx.frob_matrix(k)) % ctx.p if gk else zero
        m_gamma = -eye if k == 0 else zero
        fk = int(fq.coeffs[k])
        m_delta = -ctx.mult_matrix(fk) if fk else zero
        rows_alpha[k] = np.hstack([m_alpha, m_gamma, m_delta]) % ctx.p
    mat = np.vstack([rows_alpha[k] for k in slot_order])

    # the system matrix is beta-independent, so consistency across the whole
    # sweep is one left-kernel product instead of a solve per beta
    left_null = gflinalg.nullspace(mat.T, ctx.p)
    if left_null.shape[1] and betas.size:
        rhs_all = np.empty((mat.shape[0], betas.size), dtype=np.int64)
        for idx, k in enumerate(slot_order):
            rhs_all[idx * d: (idx + 1) * d, :] = ctx.DIGITS[
                ctx.NEG[slot_vals[k][betas]]
            ].T
        chk = (left_null.T @ rhs_all) % ctx.p
        betas = betas[(chk == 0).all(axis=0)]

    solved = 0
    for beta in betas:
        rhs = np.concatenate(
            [ctx.DIGITS[ctx.NEG[slot_vals[k][beta]]] for k in slot_order]
        )
        sol = gflinalg.solve_affine(mat, rhs, ctx.p)
        solved += 1
        if sol is None:
            continue
        part, null = sol
        combos = (gflinalg.span_vectors(null, ctx.p) + part) % ctx.p
        alpha = ctx.from_digits_vec(combos[:, :d])
        gamma = ctx.from_digits_vec(combos[:, d: 2 * d])
        delta = ctx.from_digits_vec(combos[:, 2 * d:])
        beta_arr = np.full(alpha.shape, int(beta), dtype=np.int64)
        det = ctx.add_vec(ctx.mul_vec(alpha, delta), ctx.NEG[ctx.mul_vec(beta_arr, gamma)])
        good = np.nonzero(det != 0)[0]
        if good.size:
            order = np.lexsort((delta[good], gamma[good], alpha[good]))
            i = good[order[0]]
            w = (int(alpha[i]), int(beta), int(gamma[i]), int(delta[i]))
            if not verify_gl_witness(f, g, w):
                raise AssertionError("witness failed exact recheck")
            return GLSearchResult(w, n_candidates, solved)
    return GLSearchResult(None, n_candidates, solved)


def gl_equivalent(f: LinPoly, g: LinPoly, budget: int | None = None):
    """Witness matrix (alpha, beta, gamma, delta) carrying the graph of f onto
    the graph of g, or None when the graphs sit in different orbits."""
    return gl_search(f, g, budget).witness


def verify_gl_witness(f: LinPoly, g: LinPoly, w) -> bool:
    """Exact recheck: g o (alpha*X + beta*f) = gamma*X + delta*f, det != 0."""
    ctx = f.ctx
    alpha, beta, gamma, delta = w
    det = ctx.sub(ctx.mul(alpha, delta), ctx.mul(beta, gamma))
    if det == 0:
        return False
    fq, gq = _q1_view(f), _q1_view(g)
    inner = LinPoly.from_terms(ctx, 1, {0: alpha}).add(fq.scale(beta))
    lhs = gq.compose(inner)
    rhs = LinPoly.from_terms(ctx, 1, {0: gamma}).add(fq.scale(delta))
    return lhs == rhs


def invert_witness(ctx: FieldCtx, w):
    """Matrix inverse scaled to determinant 1 is unnecessary; plain adjugate
    over the field inverts the witness."""
    alpha, beta, gamma, delta = w
    det = ctx.sub(ctx.mul(alpha, delta), ctx.mul(beta, gamma))
    dinv = ctx.inv(det)
    return (
        ctx.mul(delta, dinv),
        ctx.neg(ctx.mul(beta, dinv)),
        ctx.neg(ctx.mul(gamma, dinv)),
        ctx.mul(alpha, dinv),
    )


def multiply_witnesses(ctx: FieldCtx, w2, w1):
    """Matrix product w2 @ w1 on (alpha, beta; gamma, delta) tuples."""
    a2, b2, c2, d2 = w2
    a1, b1, c1, d1 = w1
    return (
        ctx.add(ctx.mul(a2, a1), ctx.mul(b2, c1)),
        ctx.add(ctx.mul(a2, b1), ctx.mul(b2, d1)),
        ctx.add(ctx.mul(c2, a1), ctx.mul(d2, c1)),
        ctx.add(ctx.mul(c2, b1), ctx.mul(d2, d1)),
    )


def gammal_equivalent(f: LinPoly, g: LinPoly, budget: int | None = None):
    """Semilinear-orbit test: some p-power twist of f is GL-equivalent to g.

    Returns (automorphism power j, witness matrix) or None.
    """
    ctx = f.ctx
    for j in range(ctx.e * ctx.n):
        w = gl_equivalent(f.frobenius_twist(j), g, budget)
        if w is not None:
            return j, w
    return None


# ---------------------------------------------------------------------------
# necessary conditions for equivalence inside the family


_CASES = ("a", "b", "c", "d", "e")


def step_case(ctx: FieldCtx, s: int, ell: int) -> str:
    """Residue class of the second step against the first: b, c, d, e for
    -s, s, t-s, t+s mod 2t respectively, else a."""
    n, t = ctx.n, ctx.t
    matches = []
    if (ell + s) % n == 0:
        matches.append("b")
    if (ell - s) % n == 0:
        matches.append("c")
    if (ell - (t - s)) % n == 0:
        matches.append("d")
    if (ell - (t + s)) % n == 0:
        matches.append("e")
    if not matches:
        return "a"
    assert len(matches) == 1, f"ambiguous step classification {matches}"
    return matches[0]


def necessary_conditions(p1: QuadParams, p2: QuadParams, require_large_t: bool = True) -> dict:
    """Printed necessary conditions for two family members to be GL-equivalent.

    p1 carries (m, h, s), p2 carries (mu, k, ell).  Classifies ell against
    {-s, s, t-s, t+s} mod 2t; for classes b..e evaluates the subfield
    membership of k*h, h/k or h*k (in both gcd spellings, asserted equal)
    and the two alternative product identities decided constructively
    through the semilinear solver plus a scan of the middle-field coset.
    """
    ctx = p1.ctx
    if ctx != p2.ctx:
        raise ValueError("mismatched field contexts")
    if require_large_t and ctx.t < 5:
        raise ValueError("the condition calculus is stated for t >= 5")
    if p1.m == 0 or p2.m == 0:
        raise ValueError("both m parameters must be nonzero")
    s, ell = p1.s, p2.s
    m, h = p1.m, p1.h
    mu, k = p2.m, p2.h
    t, n, q = ctx.t, ctx.n, ctx.q

    case = step_case(ctx, s, ell)
    report = {"case": case, "conditions_hold": None, "alternatives": [None, None],
              "subfield_membership": None, "witness_z": [None, None]}
    if case == "a":
        report["conditions_hold"] = False
        report["verdict"] = "not GL-equivalent"
        return report

    combo = {
        "b": ctx.mul(k, h),
        "c": ctx.div(h, k),
        "d": ctx.div(h, k),
        "e": ctx.mul(h, k),
    }[case]
    g_plain = gcd(t - 2, n)
    g_scaled = gcd(s * (t - 2), n)
    assert g_plain == g_scaled, "the two gcd spellings must agree for coprime s"
    member = ctx.in_subfield(combo, g_plain)
    report["subfield_membership"] = bool(member)
    report["subfield_degree"] = g_plain

    mu_qs = ctx.frob(mu, s)
    mu_inv_qst1 = ctx.frob(ctx.inv(mu), s * (t - 1))
    targets = {
        # (sign on the semilinear constant, target value for z^(q^(s(t-2))-1))
        "b": [(+1, ctx.mul(m, mu_qs)), (-1, ctx.neg(ctx.mul(m, mu)))],
        "c": [(-1, ctx.neg(ctx.mul(m, mu_inv_qst1))), (+1, ctx.div(m, mu))],
        "d": [(+1, ctx.neg(ctx.mul(m, mu_qs))), (-1, ctx.mul(m, mu))],
        "e": [(-1, ctx.mul(m, mu_inv_qst1)), (+1, ctx.neg(ctx.div(m, mu)))],
    }[case]

    base = ctx.pow(combo, q ** ((3 * s) % n) - 1)
    expo = q ** ((s * (t - 2)) % n) - 1
    mid_units = ctx.subfield(t)
    mid_units = mid_units[mid_units != 0]
    alts = []
    zs_found = []
    for sign, target in targets:
        c_val = base if sign > 0 else ctx.neg(base)
        z0 = ctx.solve_semilinear(c_val, (s * t) % n)
        if z0 is None:
            alts.append(False)
            zs_found.append(None)
            continue
        zs = ctx.mul_vec(np.full(mid_units.size, z0, dtype=np.int64), mid_units)
        hits = np.nonzero(ctx.pow_vec(zs, expo) == target)[0]
        if hits.size:
            alts.append(True)
            zs_found.append(int(zs[hits[0]]))
        else:
            alts.append(False)
            zs_found.append(None)
    report["alternatives"] = alts
    report["witness_z"] = zs_found
    report["conditions_hold"] = bool(member and any(alts))
    return report


def pair_report(p1: QuadParams, p2: QuadParams, budget: int | None = None,
                require_large_t: bool = True) -> dict:
    """Bundled pair test: beta-sweep witness plus the printed conditions.

    agree means: either no witness was found, or the witness lands in a
    class whose conditions hold.
    """
    f = build_quadrinomial(p1)
    g = build_quadrinomial(p2)
    res = gl_search(f, g, budget)
    cond = necessary_conditions(p1, p2, require_large_t=require_large_t)
    if res.witness is None:
        agree = True
    else:
        agree = cond["case"] != "a" and bool(cond["conditions_hold"])
    return {
        "case": cond["case"],
        "gl_witness": list(map(int, res.witness)) if res.witness else None,
        "conditions": cond,
        "agree": agree,
        "beta_candidates": res.beta_candidates,
        "systems_solved": res.systems_solved,
    }


# ---------------------------------------------------------------------------
# search for parameters outside every known orbit


def find_new_example(ctx: FieldCtx, s: int) -> dict:
    """First (m, h) in canonical order that meets the sufficient conditions
    while avoiding the subfield and power-class obstructions that would allow
    equivalence to a member with m = 1 or h = 1.

    Requires q >= 7 for odd t and q >= 5 for even t; refuses otherwise.
    Also reports the counting margin that guarantees existence.
    """
    from .quadrinomial import trace_zero_power_set, scattered_conditions

    t, q = ctx.t, ctx.q
    odd_t = t % 2 == 1
    if (odd_t and q < 7) or (not odd_t and q < 5):
        raise ValueError(
            f"counting argument needs q >= 7 for odd t / q >= 5 for even t; got q={q}, t={t}"
        )
    qt = q ** t
    # D: (q-1)-th powers of the top field that lie in the middle field
    mid = ctx.subfield(t)
    mid_nz = mid[mid != 0]
    d_mask = ctx.LOG[mid_nz] % (q - 1) == 0
    d_set = set(mid_nz[d_mask].tolist())
    assert len(d_set) == 2 * (qt - 1) // (q - 1), "power-class count mismatch"

    plus = set(trace_zero_power_set(ctx, s, +1).tolist())
    minus = set(trace_zero_power_set(ctx, s, -1).tolist())
    g_sub = gcd(t - 2, ctx.n)
    if odd_t and q % 4 == 3:
        m_pool = [m for m in sorted(plus) if m != 0 and m not in d_set]
        norm_targets = [ctx.neg_one]
        margin = {"pool": "plus-power-set", "pool_size": (qt - 1) // 2,
                  "obstruction_size": 2 * (qt - 1) // (q - 1)}
    else:
        m_pool = [
            m for m in sorted(set(mid_nz.tolist()) - plus - minus - d_set)
        ]
        norm_targets = [ctx.neg_one, 1]
        margin = {"pool": "outside-both-power-sets",
                  "pool_size": qt - 1,
                  "obstruction_size": 2 * (qt - 1) // (q - 1) + len(plus | minus) - 1}
    if not m_pool:
        raise ValueError("counting margin failed: no admissible m")

    hs = ctx.nonzero_elements()
    norms = ctx.pow_vec(hs, (ctx.size - 1) // (qt - 1))
    for m in m_pool:
        for target in norm_targets:
            cand = hs[(norms == target) & (ctx.FROB[g_sub][hs] != hs)]
            for h in cand:
                params = QuadParams(ctx, s, int(m), int(h))
                if scattered_conditions(params).applies:
                    return {"params": params, "margin": margin,
                            "m": int(m), "h": int(h),
                            "subfield_degree_avoided": g_sub}
    raise ValueError("no admissible pair found despite the counting margin")
