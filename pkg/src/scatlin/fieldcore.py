"""Exact arithmetic in the tower F_p <= F_q <= F_{q^t} <= F_{q^(2t)}, q = p^e.

Elements of the top field are plain ints: the canonical index whose base-p
digits (little-endian) are the coefficients of the residue polynomial modulo
a fixed irreducible.  Index 0 is the additive and index 1 the multiplicative
identity, and all I/O, sorting and tie-breaking use this index, so every
derived quantity in the package is reproducible bit for bit.

Two conventions make results comparable across runs and machines:

* the modulus is the lexicographically smallest monic irreducible of degree
  e*2t over F_p, ordered by coefficient tuple with the constant term first
  (not a Conway polynomial -- no bundled tables);
* the generator is the smallest index that has full multiplicative order.

Exp/log/Zech-free arithmetic: multiplication runs through exp/log tables,
addition through digit vectors, Frobenius through precomputed index maps.
All bulk operations accept numpy arrays of indices.
"""

from __future__ import annotations

import json
from functools import lru_cache
from math import gcd
import numpy as np

LOG_TABLE_BOUND_DEFAULT = 2 ** 24


class FieldConstructionError(ValueError):
    """Raised when (p, e, t) cannot yield a valid tower context."""


class BudgetExceededError(RuntimeError):
    """An operation refused to run because the field exceeds its size budget."""


class DirectSumError(ArithmeticError):
    """A decomposition was requested along subspaces that do not split the field."""


# ---------------------------------------------------------------------------
# F_p[x] helpers (coefficient lists, little-endian, not necessarily trimmed)


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pmod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    inv_lead = 1  # monic
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    del a[dm:]
    return _trim(a)


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b with b made monic on the fly
        lead_inv = pow(b[-1], p - 2, p)
        bm = [(c * lead_inv) % p for c in b]
        r = list(a)
        db = len(bm) - 1
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] % p
            if c:
                for j in range(db + 1):
                    r[i - db + j] = (r[i - db + j] - c * bm[j]) % p
        del r[db:]
        a, b = b, _trim(r)
    return a


def _x_power_ppow(k, m, p):
    """x**(p**k) modulo the monic polynomial m, by k-fold p-th powering."""
    cur = [0, 1]  # x
    for _ in range(k):
        # cur -> cur(x)**p = cur(x**p) in characteristic p
        nxt = [0] * ((len(cur) - 1) * p + 1) if cur else []
        for i, ci in enumerate(cur):
            if ci:
                nxt[i * p] = ci
        cur = _pmod(nxt, m, p)
    return cur


def _is_irreducible(m, p):
    """Degree-d monic m is irreducible over F_p.

    Checks gcd(x^(p^k) - x, m) = 1 for every proper divisor k of d, then
    x^(p^d) = x mod m.
    """
    d = len(m) - 1
    for k in range(1, d):
        if d % k:
            continue
        xk = _x_power_ppow(k, m, p)
        diff = list(xk)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(m, _trim(diff), p)
        if len(g) != 1:
            return False
    xd = list(_x_power_ppow(d, m, p))
    while len(xd) < 2:
        xd.append(0)
    xd[1] = (xd[1] - 1) % p
    return _trim(xd) == []


def smallest_irreducible(p: int, d: int) -> list:
    """Lexicographically smallest monic irreducible of degree d over F_p.

    Candidates are ordered by the tuple (c_0, c_1, ..., c_{d-1}), constant
    term first; the returned list is little-endian with the leading 1.
    """
    for k in range(p ** d):
        # decode k into (c_0,...,c_{d-1}); c_0 is the most significant digit
        coeffs = [(k // p ** (d - 1 - i)) % p for i in range(d)]
        if coeffs[0] == 0:
            continue  # divisible by x
        m = coeffs + [1]
        if _is_irreducible(m, p):
            return m
    raise FieldConstructionError(f"no irreducible of degree {d} over F_{p}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _factorize(n: int):
    fs = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            fs[d] = fs.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        fs[n] = fs.get(n, 0) + 1
    return fs


# ---------------------------------------------------------------------------


class FieldCtx:
    """Immutable tower context with precomputed tables.

    Pure value object: safe to share across worker processes (each process
    rebuilds its own copy through make_field's cache).
    """

    def __init__(self, p: int, e: int, t: int, log_bound: int = LOG_TABLE_BOUND_DEFAULT):
        if not _is_prime(p):
            raise FieldConstructionError(f"p must be prime, got {p}")
        if p == 2:
            raise FieldConstructionError("p must be odd")
        if e < 1:
            raise FieldConstructionError("e must be >= 1")
        if t < 3:
            raise FieldConstructionError(f"t must be >= 3, got {t}")
        self.p = p
        self.e = e
        self.t = t
        self.n = 2 * t
        self.q = p ** e
        self.deg = e * 2 * t
        self.size = p ** self.deg
        self.order = self.size - 1
        self.log_bound = log_bound
        if self.size > log_bound:
            raise BudgetExceededError(
                f"field size {self.size} exceeds the log-table bound {log_bound}"
            )
        self.modulus = smallest_irreducible(p, self.deg)
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _build_tables(self):
        p, d, size = self.p, self.deg, self.size
        idx = np.arange(size, dtype=np.int64)
        digits = np.empty((size, d), dtype=np.int8)
        for j in range(d):
            digits[:, j] = (idx // p ** j) % p
        self.DIGITS = digits  # int8: digit sums of <= 2t terms stay far below 127
        self.PP = p ** np.arange(d, dtype=np.int64)

        # matrix of the p-power map on the power basis
        pf = np.zeros((d, d), dtype=np.int64)
        for j in range(d):
            col = _pmod([0] * (j * p) + [1], self.modulus, p)
            for i, c in enumerate(col):
                pf[i, j] = c
        self._pfrob_mat = pf

        # generator: smallest index of full multiplicative order
        fac = _factorize(self.order)
        self.generator = self._find_generator(fac)

        # exp table by repeated multiplication with the generator
        gmat = self._mult_matrix_poly(self.generator)
        exp = np.empty(2 * self.order, dtype=np.int64)
        v = np.zeros(d, dtype=np.int64)
        v[0] = 1
        for k in range(self.order):
            exp[k] = int(v @ self.PP)
            v = (gmat @ v) % p
        if exp[0] != 1 or int(v @ self.PP) != 1:
            raise FieldConstructionError("generator order check failed")
        exp[self.order:] = exp[: self.order]
        self.EXP = exp
        log = np.zeros(size, dtype=np.int64)
        log[exp[: self.order]] = np.arange(self.order, dtype=np.int64)
        self.LOG = log  # LOG[0] is a filler; every user masks zeros

        self.NEG = ((p - digits) % p) @ self.PP
        self.neg_one = int(self.NEG[1])

        # q-Frobenius index maps, one per tower step 0..n-1
        pfrob_idx = ((digits @ pf.T) % p) @ self.PP
        qf = pfrob_idx
        for _ in range(self.e - 1):
            qf = pfrob_idx[qf]
        frob = np.empty((self.n, size), dtype=np.int64)
        frob[0] = idx
        for i in range(1, self.n):
            frob[i] = qf[frob[i - 1]]
        if not np.array_equal(qf[frob[self.n - 1]], idx):
            raise FieldConstructionError("Frobenius order check failed")
        self.FROB = frob

    def _mult_matrix_poly(self, a_idx: int) -> np.ndarray:
        """Multiplication-by-a as a matrix over F_p, from polynomial arithmetic."""
        p, d = self.p, self.deg
        a = [(a_idx // p ** j) % p for j in range(d)]
        mat = np.zeros((d, d), dtype=np.int64)
        for j in range(d):
            col = _pmod(_pmul(a, [0] * j + [1], p), self.modulus, p)
            for i, c in enumerate(col):
                mat[i, j] = c
        return mat

    def _find_generator(self, order_factors) -> int:
        p, d = self.p, self.deg
        cofactors = [self.order // r for r in order_factors]

        def powmod(a_idx, k):
            # square-and-multiply on coefficient lists (pre-table bootstrap)
            a = [(a_idx // p ** j) % p for j in range(d)]
            acc = [1]
            while k:
                if k & 1:
                    acc = _pmod(_pmul(acc, a, p), self.modulus, p)
                a = _pmod(_pmul(a, a, p), self.modulus, p)
                k >>= 1
            return sum(c * p ** i for i, c in enumerate(acc))

        for cand in range(2, self.size):
            if all(powmod(cand, cf) != 1 for cf in cofactors):
                return cand
        raise FieldConstructionError("no generator found")

    # -- scalar arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(((self.DIGITS[a] + self.DIGITS[b]) % self.p) @ self.PP)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, int(self.NEG[b]))

    def neg(self, a: int) -> int:
        return int(self.NEG[a])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.EXP[self.LOG[a] + self.LOG[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.EXP[(self.order - self.LOG[a]) % self.order])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        """a**k with k any python int (negative allowed for a != 0)."""
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0 if k else 1
        return int(self.EXP[(self.LOG[a] * (k % self.order)) % self.order])

    def frob(self, x: int, i: int) -> int:
        """x**(q**i), the tower Frobenius, i taken mod 2t."""
        return int(self.FROB[i % self.n][x])

    # -- vector arithmetic (numpy arrays of indices) --------------------------

    def add_vec(self, a, b):
        return ((self.DIGITS[a] + self.DIGITS[b]) % self.p) @ self.PP

    def sum_vec(self, terms):
        acc = self.DIGITS[terms[0]].copy()
        for tm in terms[1:]:
            acc += self.DIGITS[tm]
        return (acc % self.p) @ self.PP

    def neg_vec(self, a):
        return self.NEG[a]

    def mul_vec(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.EXP[self.LOG[a] + self.LOG[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def scale_vec(self, c: int, a):
        if c == 0:
            return np.zeros_like(np.asarray(a))
        a = np.asarray(a)
        return np.where(a == 0, 0, self.EXP[self.LOG[a] + self.LOG[c]])

    def frob_vec(self, a, i: int):
        return self.FROB[i % self.n][a]

    def pow_vec(self, a, k: int):
        a = np.asarray(a)
        return np.where(a == 0, 0, self.EXP[(self.LOG[a] * (k % self.order)) % self.order])

    def inv_vec(self, a):
        a = np.asarray(a)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of 0")
        return self.EXP[(self.order - self.LOG[a]) % self.order]

    # -- tower structure -----------------------------------------------------

    def trace_rel(self, x: int, d: int) -> int:
        """Relative trace onto F_{q^d}: sum of x**(q^(d*i)), i = 0..2t/d - 1."""
        if d <= 0 or self.n % d:
            raise ValueError(f"d must divide 2t = {self.n}, got {d}")
        acc = self.DIGITS[x].copy()
        for i in range(1, self.n // d):
            acc = acc + self.DIGITS[self.frob(x, d * i)]
        return int((acc % self.p) @ self.PP)

    def norm_rel(self, x: int, d: int) -> int:
        """Relative norm onto F_{q^d}: x**((q^2t - 1)/(q^d - 1))."""
        if d <= 0 or self.n % d:
            raise ValueError(f"d must divide 2t = {self.n}, got {d}")
        if x == 0:
            return 0
        return self.pow(x, self.order // (self.q ** d - 1))

    def in_subfield(self, x: int, d: int) -> bool:
        """x lies in F_{q^d}  <=>  frob(x, d) == x."""
        if d <= 0 or self.n % d:
            raise ValueError(f"d must divide 2t = {self.n}, got {d}")
        return self.frob(x, d) == x

    def subfield(self, d: int) -> np.ndarray:
        """Sorted indices of F_{q^d} inside the top field."""
        cache = getattr(self, "_subfield_cache", None)
        if cache is None:
            cache = self._subfield_cache = {}
        hit = cache.get(d % self.n)
        if hit is None:
            idx = np.arange(self.size, dtype=np.int64)
            hit = idx[self.FROB[d % self.n] == idx]
            hit.setflags(write=False)
            cache[d % self.n] = hit
        return hit

    def ker_trace(self) -> np.ndarray:
        """Sorted indices of ker Tr onto F_{q^t}: the w with w**(q^t) = -w."""
        cached = getattr(self, "_ker_trace_cache", None)
        if cached is None:
            idx = np.arange(self.size, dtype=np.int64)
            cached = idx[self.FROB[self.t] == self.NEG[idx]]
            cached.setflags(write=False)
            self._ker_trace_cache = cached
        return cached

    def tower_split(self, x: int):
        """Unique x = x0 + x1 with x0 in F_{q^t} and x1 in ker Tr."""
        two_inv = self.inv(self.add(1, 1))
        x0 = self.mul(self.add(x, self.frob(x, self.t)), two_inv)
        x1 = self.sub(x, x0)
        return x0, x1

    def solve_semilinear(self, c: int, k: int):
        """Some z != 0 with z**(q^k) = c*z, or None when no solution exists.

        Solvability is a norm condition: c must lie in the subgroup of
        (q^k - 1)-th powers.  The witness comes from the discrete-log table
        when available, otherwise from a linear scan of the cyclic group.
        """
        if c == 0:
            raise ValueError("c must be nonzero")
        step = (self.q ** (k % self.n) - 1) % self.order
        if step == 0:
            return 1 if c == 1 else None
        g0 = gcd(step, self.order)
        if self.LOG is not None:
            lc = int(self.LOG[c])
            if lc % g0:
                return None
            # solve step * j = lc (mod order)
            m = self.order // g0
            j = (lc // g0 * pow(step // g0, -1, m)) % m
            return int(self.EXP[j])
        for j in range(self.order):  # pragma: no cover - scan fallback
            if (step * j) % self.order == self.LOG[c]:
                return int(self.EXP[j])
        return None

    # -- matrices over F_p ----------------------------------------------------

    def mult_matrix(self, a: int) -> np.ndarray:
        """Multiplication by a as a deg x deg matrix over F_p (power basis)."""
        cols = [self.mul(a, int(self.PP[j])) for j in range(self.deg)]
        return self.DIGITS[cols].T.copy()

    def frob_matrix(self, i: int) -> np.ndarray:
        cols = [self.frob(int(self.PP[j]), i) for j in range(self.deg)]
        return self.DIGITS[cols].T.copy()

    def from_digits(self, dig) -> int:
        return int((np.asarray(dig, dtype=np.int64) % self.p) @ self.PP)

    def from_digits_vec(self, dig) -> np.ndarray:
        return (np.asarray(dig, dtype=np.int64) % self.p) @ self.PP

    # -- misc ------------------------------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def nonzero_elements(self) -> np.ndarray:
        return np.arange(1, self.size, dtype=np.int64)

    def to_dict(self) -> dict:
        return {"p": self.p, "e": self.e, "t": self.t, "modulus": list(self.modulus)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_dict(d: dict) -> "FieldCtx":
        ctx = make_field(d["p"], d["e"], d["t"])
        if list(ctx.modulus) != list(d["modulus"]):
            raise FieldConstructionError("modulus mismatch: foreign convention")
        return ctx

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, t={self.t}, size={self.size})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.e, self.t) == (other.p, other.e, other.t)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.t))


@lru_cache(maxsize=None)
def make_field(p: int, e: int, t: int, log_bound: int = LOG_TABLE_BOUND_DEFAULT) -> FieldCtx:
    """Tower context for F_p <= F_{p^e} <= ... <= F_{p^(e*2t)}, cached per process."""
    return FieldCtx(p, e, t, log_bound)
