"""Scatteredness oracles and linear-set statistics on the projective line.

The primary oracle buckets x -> f(x)/x over the punctured field and demands
that every bucket be a single F_q-line; the cross-check oracle counts roots
of f + m*X for every shift m, naively, and is kept deliberately independent
of the fiber pass.
"""

from __future__ import annotations

import numpy as np

from .fieldcore import BudgetExceededError
from .linpoly import LinPoly

ROOTS_ORACLE_BOUND_DEFAULT = 3 ** 10


def _fiber_keys(f: LinPoly):
    """Per nonzero x: (bucket key of f(x)/x, F_q-line class of x)."""
    ctx = f.ctx
    vals = f.eval_field()[1:]          # f(x) for x = 1 .. size-1 (by index)
    xs = np.arange(1, ctx.size, dtype=np.int64)
    logs_x = ctx.LOG[xs]
    # ratio f(x)/x in log form; kernel elements get the sentinel ctx.order
    ratio = np.where(
        vals == 0, ctx.order, (ctx.LOG[vals] - logs_x) % ctx.order
    )
    line_mod = ctx.order // (ctx.q - 1)
    line_class = logs_x % line_mod
    return ratio, line_class, line_mod


def linear_set_size(f: LinPoly) -> int:
    """Number of distinct projective points <(x, f(x))>, x != 0."""
    ratio, _, _ = _fiber_keys(f)
    return int(np.unique(ratio).size)


def is_scattered_fiber(f: LinPoly) -> bool:
    """True iff every fiber of x -> f(x)/x lies on a single F_q-line."""
    ratio, line_class, line_mod = _fiber_keys(f)
    keys = ratio * (line_mod + 1) + line_class
    return np.unique(keys).size == np.unique(ratio).size


def is_scattered_roots(
    f: LinPoly,
    size_bound: int = ROOTS_ORACLE_BOUND_DEFAULT,
    chunk: int = 1 << 21,
) -> bool:
    """True iff f + m*X has at most q roots for every shift m.

    Quadratic in the field size; refuses beyond size_bound and points to the
    fiber oracle instead.  Used for cross-validation only.
    """
    ctx = f.ctx
    if ctx.size > size_bound:
        raise BudgetExceededError(
            f"roots oracle is O(size^2); {ctx.size} exceeds bound {size_bound}. "
            "Use is_scattered_fiber for production checks."
        )
    vals = f.eval_field()
    target = ctx.NEG[vals]             # root at x  <=>  m*x == -f(x)
    xs = ctx.elements()
    log_x = ctx.LOG[xs]
    rows = max(1, chunk // ctx.size)
    for start in range(0, ctx.size, rows):
        ms = np.arange(start, min(start + rows, ctx.size), dtype=np.int64)
        prod = ctx.EXP[ctx.LOG[ms][:, None] + log_x[None, :]]
        prod[ms == 0, :] = 0
        prod[:, xs == 0] = 0
        counts = (prod == target[None, :]).sum(axis=1)
        if (counts > ctx.q).any():
            return False
    return True
