"""Rank-metric codes spanned by X and one linearized polynomial.

For f in the reduced algebra, the code is the top-field span {a*X + b*f}.
Minimum distance, the maximum-rank-distance test, the two idealizers, the
stabilizer of the graph subspace {(x, f(x))} and the standard-form detector
all live here.

The stabilizer and idealizer computations never enumerate the full 2x2
matrix group (size ~ q^(4n)).  The workhorse is residual matching: the
equation f(alpha*X + beta*f) = gamma*X + delta*f is, for fixed beta, an
F_q-linear constraint on (alpha, gamma, delta), and the coefficient slots
outside supp(f) constrain beta alone, which prunes the beta sweep to a
handful of survivors.  Total cost O(q^n * n^2); a naive double sweep over
(alpha, beta) is kept for cross-validation at the smallest scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
import numpy as np

from . import gflinalg
from .fieldcore import FieldCtx, BudgetExceededError
from .linpoly import LinPoly

IDEALIZER_GRID_BOUND_DEFAULT = 3 ** 12


class RankCode:
    """The 2-dimensional top-field span <X, f>, with cached statistics."""

    def __init__(self, f: LinPoly):
        qv = f.q_view()
        if not qv[1:].any():
            raise ValueError("f must be independent of X: the span would be 1-dimensional")
        self.f = f
        self.ctx = f.ctx
        self._min_distance = None

    def codeword_ranks(self) -> np.ndarray:
        """Ranks (as F_q-maps) of one representative per projective class.

        Classes are (1, b) for every b, plus (0, 1); scaling by a nonzero
        field element never changes the rank.
        """
        ctx = self.ctx
        F = self.f.matrix()
        bs = ctx.elements()
        # multiplication-by-b matrices for every b, batched by basis column
        M = np.empty((ctx.size, ctx.deg, ctx.deg), dtype=np.int64)
        for j in range(ctx.deg):
            col = ctx.mul_vec(bs, np.full(ctx.size, int(ctx.PP[j]), dtype=np.int64))
            M[:, :, j] = ctx.DIGITS[col]
        mats = (np.einsum("bij,jk->bik", M, F) + np.eye(ctx.deg, dtype=np.int64)) % ctx.p
        ranks = gflinalg.rank_batched(mats, ctx.p)
        ranks = np.append(ranks, gflinalg.rank(F, ctx.p))
        assert (ranks % ctx.e == 0).all()
        return ranks // ctx.e

    def min_distance(self) -> int:
        """Minimum rank over the nonzero codewords (one per projective class)."""
        if self._min_distance is None:
            self._min_distance = int(self.codeword_ranks().min())
        return self._min_distance

    def is_mrd(self) -> bool:
        """Meets the Singleton-like bound: |C| = q^(n(n-d+1)) with d = min dist.

        The span has q^(2n) elements, so this reduces to d = n - 1.
        """
        return self.min_distance() == self.ctx.n - 1


# ---------------------------------------------------------------------------
# idealizers


def right_idealizer(code: RankCode, bound: int = IDEALIZER_GRID_BOUND_DEFAULT,
                    method: str = "residual"):
    """All h = a*X + b*f with f o h back in the span, as (a, b) pairs.

    Since X is a codeword, any right-idealizer element h = X o h must itself
    lie in the span, so the search space is exactly the q^(2n) pairs (a, b).
    The residual method prunes b through the off-support slots and solves an
    F_q-linear system per survivor; the grid method tests every pair and is
    refused above `bound`.
    """
    if method == "grid":
        return _idealizer_grid(code, bound, side="right")
    return _right_idealizer_residual(code)


def left_idealizer(code: RankCode, bound: int = IDEALIZER_GRID_BOUND_DEFAULT,
                   method: str = "linear"):
    """All g = a*X + b*f with g o f back in the span, as (a, b) pairs.

    Left composition by a*X + b*f is plainly linear in (a, b), so one
    F_q-linear solve settles it; the grid method remains for cross-checks.
    """
    if method == "grid":
        return _idealizer_grid(code, bound, side="left")
    ctx = code.ctx
    f = code.f
    ff = f.compose(f)
    # slot equations: a*f_k + b*(f o f)_k = a'*[k=0] + b'*f_k
    rows = []
    rhs_zero = []
    d = ctx.deg
    for k in range(ctx.n):
        blocks = [
            ctx.mult_matrix(int(f.coeffs[k])),
            ctx.mult_matrix(int(ff.coeffs[k])),
            -np.eye(d, dtype=np.int64) if k == 0 else np.zeros((d, d), dtype=np.int64),
            -ctx.mult_matrix(int(f.coeffs[k])),
        ]
        rows.append(np.hstack(blocks))
    mat = np.vstack(rows) % ctx.p
    basis = gflinalg.nullspace(mat, ctx.p)
    sols = gflinalg.span_vectors(basis, ctx.p)
    a = ctx.from_digits_vec(sols[:, :d])
    b = ctx.from_digits_vec(sols[:, d: 2 * d])
    pairs = sorted(set(zip(a.tolist(), b.tolist())))
    return pairs


def _right_idealizer_residual(code: RankCode):
    ctx = code.ctx
    f = code.f
    s = f.s
    supp = f.support()
    bs = ctx.elements()
    slot_vals = _compose_with_span_of_f(f, f, bs)  # slot -> f o (b*f) values per b

    off = [k for k in range(ctx.n) if k not in supp and k != 0]
    ok = np.ones(ctx.size, dtype=bool)
    for k in off:
        ok &= slot_vals[k] == 0
    pairs = []
    d = ctx.deg
    for b in np.nonzero(ok)[0]:
        # unknowns (a, b'): f_k * a^(q^(sk)) + B_k(b) = b'*f_k  on supp \ {0}
        rows = []
        rhs = []
        for k in supp:
            if k == 0:
                continue
            mk = (ctx.mult_matrix(int(f.coeffs[k])) @ ctx.frob_matrix((s * k) % ctx.n)) % ctx.p
            rows.append(np.hstack([mk, -ctx.mult_matrix(int(f.coeffs[k]))]))
            rhs.append(ctx.DIGITS[ctx.NEG[slot_vals[k][b]]])
        if rows:
            sol = gflinalg.solve_affine(np.vstack(rows) % ctx.p, np.concatenate(rhs), ctx.p)
            if sol is None:
                continue
            part, null = sol
            for v in gflinalg.span_vectors(null, ctx.p):
                u = (part + v) % ctx.p
                pairs.append((int(ctx.from_digits(u[:d])), int(b)))
        else:  # f supported only at slot 0 cannot happen (rejected at init)
            continue
    return sorted(set(pairs))


def _compose_with_span_of_f(outer: LinPoly, inner: LinPoly, bs: np.ndarray):
    """Slot values of outer o (b*inner) for every b, as {slot: array}."""
    ctx = outer.ctx
    s = outer.s
    acc = {k: np.zeros((bs.size, ctx.deg), dtype=np.int64) for k in range(ctx.n)}
    for i in outer.support():
        fb = ctx.frob_vec(bs, (s * i) % ctx.n)
        for j in inner.support():
            k = (i + j) % ctx.n
            cst = ctx.mul(int(outer.coeffs[i]), ctx.frob(int(inner.coeffs[j]), (s * i) % ctx.n))
            acc[k] += ctx.DIGITS[ctx.scale_vec(cst, fb)]
    return {k: (v % ctx.p) @ ctx.PP for k, v in acc.items()}


def _idealizer_grid(code: RankCode, bound: int, side: str):
    """Literal sweep over all q^(2n) pairs (a, b); refused above `bound`."""
    ctx = code.ctx
    if ctx.size ** 2 > bound:
        raise BudgetExceededError(
            f"pair enumeration needs {ctx.size ** 2} tests, above bound {bound}; "
            "use the residual/linear method instead"
        )
    f = code.f
    s = f.s
    supp = f.support()
    els = ctx.elements()
    if side == "right":
        a_part = {k: ctx.scale_vec(int(f.coeffs[k]), ctx.frob_vec(els, (s * k) % ctx.n))
                  for k in supp}
        b_part = _compose_with_span_of_f(f, f, els)
    else:
        ff = f.compose(f)
        a_part = {k: ctx.scale_vec(int(f.coeffs[k]), els) for k in supp}
        b_part = {k: ctx.scale_vec(int(ff.coeffs[k]), els) for k in range(ctx.n)}

    na = ctx.size
    ok = np.ones((na, na), dtype=bool)
    for k in range(ctx.n):
        av = a_part.get(k)
        bv = b_part.get(k)
        if av is None and bv is None:
            continue
        if k == 0:
            continue  # slot 0 is absorbed by a'
        if k in supp:
            continue  # handled by the ratio consistency below
        grid = _add_outer(ctx, av, bv)
        ok &= grid == 0
    # consistency of b' across the support slots (skipping slot 0)
    ratio = None
    for k in supp:
        if k == 0:
            continue
        grid = _add_outer(ctx, a_part.get(k), b_part.get(k))
        rk = _div_by_const(ctx, grid, int(f.coeffs[k]))
        if ratio is None:
            ratio = rk
        else:
            ok &= ratio == rk
    aa, bb = np.nonzero(ok)
    return sorted(set(zip(aa.tolist(), bb.tolist())))


def _add_outer(ctx: FieldCtx, av, bv):
    """Outer sum grid of two index vectors (either may be None == zeros)."""
    na = ctx.size
    if av is None:
        av = np.zeros(na, dtype=np.int64)
    if bv is None:
        bv = np.zeros(na, dtype=np.int64)
    dig = ctx.DIGITS[av][:, None, :] + ctx.DIGITS[bv][None, :, :]
    return (dig % ctx.p) @ ctx.PP


def _div_by_const(ctx: FieldCtx, arr, c: int):
    return ctx.scale_vec(ctx.inv(c), arr)


# ---------------------------------------------------------------------------
# stabilizer of the graph subspace


@dataclass
class StabilizerSet:
    """Invertible 2x2 matrices (a, b; c, d) with f(a*X + b*f) = c*X + d*f."""

    f: LinPoly
    elements: list  # tuples (alpha, beta, gamma, delta), all invertible

    @property
    def order_with_zero(self) -> int:
        return len(self.elements) + 1

    def is_diagonal_only(self) -> bool:
        return all(b == 0 and c == 0 for _, b, c, _ in self.elements)

    def closure_flags(self, pair_cap: int = 4_000_000, seed: int = 0) -> dict:
        """Additive/multiplicative closure of the set with the zero matrix.

        Exhaustive when the pair count fits under pair_cap, otherwise a
        seeded sample (reported in the flags).
        """
        ctx = self.f.ctx
        mats = np.array(self.elements + [(0, 0, 0, 0)], dtype=np.int64)
        nmat = len(mats)
        keys = _matrix_keys(ctx, mats)
        key_set = np.sort(keys)
        exhaustive = nmat * nmat <= pair_cap
        if exhaustive:
            ii, jj = np.meshgrid(np.arange(nmat), np.arange(nmat), indexing="ij")
            ii, jj = ii.ravel(), jj.ravel()
        else:
            rng = np.random.default_rng(seed)
            ii = rng.integers(0, nmat, 20000)
            jj = rng.integers(0, nmat, 20000)
        A, B = mats[ii], mats[jj]
        sums = np.stack([ctx.add_vec(A[:, k], B[:, k]) for k in range(4)], axis=1)
        prods = np.stack(
            [
                ctx.add_vec(ctx.mul_vec(A[:, 0], B[:, 0]), ctx.mul_vec(A[:, 1], B[:, 2])),
                ctx.add_vec(ctx.mul_vec(A[:, 0], B[:, 1]), ctx.mul_vec(A[:, 1], B[:, 3])),
                ctx.add_vec(ctx.mul_vec(A[:, 2], B[:, 0]), ctx.mul_vec(A[:, 3], B[:, 2])),
                ctx.add_vec(ctx.mul_vec(A[:, 2], B[:, 1]), ctx.mul_vec(A[:, 3], B[:, 3])),
            ],
            axis=1,
        )
        add_ok = np.isin(_matrix_keys(ctx, sums), key_set).all()
        mul_ok = np.isin(_matrix_keys(ctx, prods), key_set).all()
        return {"additive": bool(add_ok), "multiplicative": bool(mul_ok),
                "exhaustive": exhaustive}

    def to_report(self, sample: int = 8) -> dict:
        flags = self.closure_flags()
        return {
            "order": self.order_with_zero,
            "is_field": flags["additive"] and flags["multiplicative"],
            "diagonal_only": self.is_diagonal_only(),
            "sample_elements": [list(map(int, m)) for m in self.elements[:sample]],
        }


def _matrix_keys(ctx: FieldCtx, mats: np.ndarray) -> np.ndarray:
    base = np.int64(ctx.size)
    return ((mats[:, 0] * base + mats[:, 1]) * base + mats[:, 2]) * base + mats[:, 3]


def stabilizer(f: LinPoly) -> StabilizerSet:
    """All invertible (a, b; c, d) with f o (a*X + b*f) = c*X + d*f.

    Residual matching: slots outside supp(f) and 0 depend on beta alone and
    prune the beta sweep; each survivor leaves an F_q-linear system for
    (alpha, gamma, delta) whose solutions are enumerated and verified.
    """
    if f.is_zero():
        raise ValueError("stabilizer of the zero polynomial is not defined")
    ctx = f.ctx
    s = f.s
    supp = f.support()
    bs = ctx.elements()
    slot_vals = _compose_with_span_of_f(f, f, bs)

    off = [k for k in range(ctx.n) if k not in supp and k != 0]
    ok = np.ones(ctx.size, dtype=bool)
    for k in off:
        ok &= slot_vals[k] == 0

    d = ctx.deg
    elements = []
    eye = np.eye(d, dtype=np.int64)
    for beta in np.nonzero(ok)[0]:
        rows, rhs = [], []
        for k in set(supp) | {0}:
            fk = int(f.coeffs[k])
            m_alpha = (
                (ctx.mult_matrix(fk) @ ctx.frob_matrix((s * k) % ctx.n)) % ctx.p
                if fk
                else np.zeros((d, d), dtype=np.int64)
            )
            m_gamma = -eye if k == 0 else np.zeros((d, d), dtype=np.int64)
            m_delta = -ctx.mult_matrix(fk) if fk else np.zeros((d, d), dtype=np.int64)
            rows.append(np.hstack([m_alpha, m_gamma, m_delta]))
            rhs.append(ctx.DIGITS[ctx.NEG[slot_vals[k][beta]]])
        sol = gflinalg.solve_affine(np.vstack(rows) % ctx.p, np.concatenate(rhs), ctx.p)
        if sol is None:
            continue
        part, null = sol
        combos = (gflinalg.span_vectors(null, ctx.p) + part) % ctx.p
        alpha = ctx.from_digits_vec(combos[:, :d])
        gamma = ctx.from_digits_vec(combos[:, d: 2 * d])
        delta = ctx.from_digits_vec(combos[:, 2 * d:])
        beta_arr = np.full(alpha.shape, int(beta), dtype=np.int64)
        det = ctx.add_vec(ctx.mul_vec(alpha, delta), ctx.NEG[ctx.mul_vec(beta_arr, gamma)])
        keep = det != 0
        _verify_graph_identity(f, alpha[keep], beta_arr[keep], gamma[keep], delta[keep])
        elements.extend(
            zip(alpha[keep].tolist(), beta_arr[keep].tolist(),
                gamma[keep].tolist(), delta[keep].tolist())
        )
    elements.sort()
    st = StabilizerSet(f, elements)
    assert (1, 0, 0, 1) in elements, "identity matrix missing from stabilizer"
    return st


def _verify_graph_identity(f: LinPoly, alpha, beta, gamma, delta):
    """Exact recheck of f o (alpha*X + beta*f) = gamma*X + delta*f, vectorized."""
    ctx = f.ctx
    s = f.s
    supp = f.support()
    bvals = _compose_with_span_of_f(f, f, beta)
    for k in range(ctx.n):
        lhs = ctx.DIGITS[bvals[k]].copy()
        if k in supp:
            fk = int(f.coeffs[k])
            lhs += ctx.DIGITS[ctx.scale_vec(fk, ctx.frob_vec(alpha, (s * k) % ctx.n))]
            rhs = ctx.scale_vec(fk, delta)
        else:
            rhs = np.zeros(alpha.shape, dtype=np.int64)
        if k == 0:
            rhs = ctx.add_vec(rhs, gamma)
        lhs_idx = (lhs % ctx.p) @ ctx.PP
        if not np.array_equal(lhs_idx, rhs):
            raise AssertionError("stabilizer solution failed exact verification")


def stabilizer_naive(f: LinPoly, bound: int = 3 ** 12) -> StabilizerSet:
    """Double sweep over (alpha, beta); cross-validation reference."""
    ctx = f.ctx
    if ctx.size ** 2 > bound:
        raise BudgetExceededError("naive stabilizer sweep above bound")
    s = f.s
    supp = f.support()
    els = ctx.elements()
    b_part = _compose_with_span_of_f(f, f, els)
    a_part = {
        k: ctx.scale_vec(int(f.coeffs[k]), ctx.frob_vec(els, (s * k) % ctx.n)) for k in supp
    }
    na = ctx.size
    ok = np.ones((na, na), dtype=bool)
    slot_grid = {}
    for k in range(ctx.n):
        grid = _add_outer(ctx, a_part.get(k), b_part.get(k))
        slot_grid[k] = grid
        if k != 0 and k not in supp:
            ok &= grid == 0
    # read off gamma and delta, then check remaining support slots
    ratio = None
    for k in supp:
        if k == 0:
            continue
        rk = _div_by_const(ctx, slot_grid[k], int(f.coeffs[k]))
        if ratio is None:
            ratio = rk
        else:
            ok &= ratio == rk
    delta = ratio
    gamma = slot_grid[0]
    if 0 in supp:
        gamma = ctx.add_vec(gamma, ctx.NEG[ctx.scale_vec(int(f.coeffs[0]), delta)])
        # slot 0 carries f_0*delta when 0 is in the support
    aa_all, bb_all = np.arange(na), np.arange(na)
    A = np.broadcast_to(aa_all[:, None], (na, na))
    B = np.broadcast_to(bb_all[None, :], (na, na))
    det = ctx.add_vec(
        ctx.mul_vec(A.ravel(), delta.ravel()),
        ctx.NEG[ctx.mul_vec(B.ravel(), gamma.ravel())],
    ).reshape(na, na)
    ok &= det != 0
    aa, bb = np.nonzero(ok)
    elements = sorted(
        zip(
            aa.tolist(),
            bb.tolist(),
            gamma[aa, bb].tolist(),
            delta[aa, bb].tolist(),
        )
    )
    return StabilizerSet(f, elements)


# ---------------------------------------------------------------------------
# standard form


def standard_form(f: LinPoly) -> dict:
    """Exponent-difference profile of f in the plain q-exponent view.

    delta_set is {(i - j) mod n : both coefficients nonzero, i != j} plus n;
    r is its gcd; f is standard when r > 1, and then all exponents share one
    residue s0 mod r with gcd(s0, r) = 1.
    """
    if f.is_zero():
        raise ValueError("standard form of the zero polynomial is not defined")
    ctx = f.ctx
    qv = f.q_view()
    supp_q = [i for i in range(ctx.n) if qv[i]]
    deltas = {(i - j) % ctx.n for i in supp_q for j in supp_q if i != j}
    deltas.add(ctx.n)
    r = 0
    for dlt in deltas:
        r = gcd(r, dlt)
    report = {
        "delta_set": sorted(deltas),
        "r": int(r),
        "is_standard": r > 1,
        "residue": None,
        "shape_ok": None,
    }
    if r > 1:
        residues = {i % r for i in supp_q}
        report["shape_ok"] = len(residues) == 1
        if len(residues) == 1:
            s0 = residues.pop()
            report["residue"] = int(s0)
            report["shape_ok"] = gcd(s0, r) == 1
    return report
