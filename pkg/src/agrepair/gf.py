"""Finite-field towers GF(p) <= GF(p**t) = GF(q) with trace, dual bases and
linearized maps.

An element of GF(q) is a plain integer in [0, q).  The integer is the base-p
expansion of the element's coordinate vector with respect to the polynomial
basis 1, x, ..., x**(t-1), least-significant digit first.  The base order p
may itself be a prime power; GF(p) is then built recursively the same way and
the encodings nest, so the copy of GF(p) inside GF(q) is exactly the set of
codes below p.  That makes digit lists, subfield membership and serialization
line up with no conversion tables.

Scalar arithmetic is table-driven (discrete log / antilog over a fixed
primitive element).  The *_arr methods are vectorised counterparts operating
on numpy integer arrays; they are what the linear-algebra layer runs on.

Towers are immutable after construction and all operations are pure, so
instances can be shared freely between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 1 << 16  # desk-scale cap; table construction is O(q)
_ADD_TABLE_MAX = 2048     # odd characteristic: dense q x q add table below this


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(n: int):
    """Return (p0, e) with n == p0**e and p0 prime, or None."""
    if n < 2:
        return None
    p0 = 2
    while p0 * p0 <= n:
        if n % p0 == 0:
            e = 0
            m = n
            while m % p0 == 0:
                m //= p0
                e += 1
            return (p0, e) if m == 1 else None
        p0 += 1
    return (n, 1)


def _factor(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FieldTower:
    """GF(q) = GF(p**t) presented as a degree-t extension of GF(p).

    Parameters
    ----------
    p : base subfield order (prime or prime power)
    t : extension degree, >= 1
    modulus : optional monic degree-t irreducible over GF(p), given as t+1
        coefficient codes, least-significant first.  When omitted, the
        lexicographically least monic irreducible (by integer encoding of the
        non-leading coefficients) is selected, which pins the representation
        across runs.
    """

    def __init__(self, p: int, t: int, modulus=None):
        pp = prime_power(p)
        if pp is None:
            raise ValueError(f"base order p={p} is not a prime power")
        if t < 1:
            raise ValueError(f"extension degree t={t} must be >= 1")
        q = p ** t
        if q > MAX_FIELD_SIZE:
            raise ValueError(f"field size q={q} exceeds the supported cap {MAX_FIELD_SIZE}")
        self.p = p
        self.t = t
        self.q = q
        self.char, base_deg = pp
        self.degree = base_deg * t  # total degree over the prime field
        self.base = None if is_prime(p) else FieldTower(self.char, base_deg)

        if modulus is None:
            modulus = self._least_irreducible()
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != t + 1 or modulus[t] != 1:
            raise ValueError("modulus must be monic of degree t")
        if any(not 0 <= c < p for c in modulus):
            raise ValueError("modulus coefficients must be codes in [0, p)")
        if not self._poly_is_irreducible(modulus):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = modulus

        self._build_tables()

        # polynomial basis 1, x, ..., x^(t-1) and its trace-dual
        self.zeta = tuple(p ** u for u in range(t))
        self.theta = self.dual_basis(self.zeta)

    # ------------------------------------------------------------------
    # base-field scalar helpers (used during construction only)
    # ------------------------------------------------------------------
    def _badd(self, a, b):
        return (a + b) % self.p if self.base is None else self.base.add(a, b)

    def _bsub(self, a, b):
        return (a - b) % self.p if self.base is None else self.base.sub(a, b)

    def _bmul(self, a, b):
        return (a * b) % self.p if self.base is None else self.base.mul(a, b)

    def _binv(self, a):
        return pow(a, self.p - 2, self.p) if self.base is None else self.base.inv(a)

    def _digits(self, code, n=None):
        n = self.t if n is None else n
        out = []
        for _ in range(n):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def _undigits(self, digits):
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    # dense polynomial arithmetic over GF(p), coefficients LSD-first
    def _poly_mod(self, a, m):
        a = list(a)
        dm = len(m) - 1
        inv_lead = self._binv(m[dm])
        for i in range(len(a) - 1, dm - 1, -1):
            c = a[i]
            if c == 0:
                continue
            f = self._bmul(c, inv_lead)
            for k in range(dm + 1):
                a[i - dm + k] = self._bsub(a[i - dm + k], self._bmul(f, m[k]))
        return a[:dm]

    def _poly_mul_mod(self, a, b, m):
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = self._badd(out[i + j], self._bmul(ai, bj))
        return self._poly_mod(out, m)

    def _poly_eval(self, poly, x):
        acc = 0
        for c in reversed(poly):
            acc = self._badd(self._bmul(acc, x), c)
        return acc

    def _poly_is_irreducible(self, poly):
        t = len(poly) - 1
        if t == 1:
            return True
        for a in range(self.p):
            if self._poly_eval(poly, a) == 0:
                return False
        # no linear factors; trial division by every monic divisor candidate
        # of degree 2..t//2 (desk scale keeps this cheap)
        for d in range(2, t // 2 + 1):
            for lower in range(self.p ** d):
                div = list(self._digits(lower, d)) + [1]
                rem = self._poly_mod(list(poly), div)
                if not any(rem):
                    return False
        return True

    def _least_irreducible(self):
        for lower in range(self.q):
            cand = self._digits(lower, self.t) + (1,)
            if self._poly_is_irreducible(cand):
                return cand
        raise AssertionError("no irreducible polynomial found")  # unreachable

    def _slow_mul(self, a, b):
        pa = self._digits(a)
        pb = self._digits(b)
        prod = self._poly_mul_mod(pa, pb, self.modulus)
        return self._undigits(prod + [0] * (self.t - len(prod)))

    def _slow_pow(self, a, k):
        acc, base = 1, a
        while k:
            if k & 1:
                acc = self._slow_mul(acc, base)
            base = self._slow_mul(base, base)
            k >>= 1
        return acc

    # ------------------------------------------------------------------
    # table construction
    # ------------------------------------------------------------------
    def _build_tables(self):
        q = self.q
        order = q - 1
        prime_factors = _factor(order) if order > 1 else []
        gen = 1
        for cand in range(2, q):
            if all(self._slow_pow(cand, order // f) != 1 for f in prime_factors):
                gen = cand
                break
        self.generator = gen

        exp = np.zeros(4 * order + 2 if order else 4, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        v = 1
        for i in range(order):
            exp[i] = v
            exp[i + order] = v
            log[v] = i
            v = self._slow_mul(v, gen)
        log[0] = 2 * order  # sentinel: any product involving 0 lands on a 0 entry
        self._exp = exp
        self._log = log
        self._order = order

        p0 = self.char
        e = self.degree
        self._prime_pows = p0 ** np.arange(e, dtype=np.int64)
        if p0 == 2:
            self._add_table = None
        elif q <= _ADD_TABLE_MAX:
            codes = np.arange(q, dtype=np.int64)
            dig = (codes[:, None] // self._prime_pows[None, :]) % p0
            summed = (dig[:, None, :] + dig[None, :, :]) % p0
            self._add_table = (summed * self._prime_pows).sum(axis=2)
        else:
            self._add_table = None
        if p0 == 2:
            self._neg_table = None
        else:
            codes = np.arange(q, dtype=np.int64)
            dig = (codes[:, None] // self._prime_pows[None, :]) % p0
            self._neg_table = (((-dig) % p0) * self._prime_pows).sum(axis=1)

    # ------------------------------------------------------------------
    # scalar arithmetic on integer codes
    # ------------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.char == 2:
            return a ^ b
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return int(self.add_arr(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        return a if self.char == 2 else int(self._neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self._exp[self._order - self._log[a]])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return int(self._exp[(int(self._log[a]) * k) % self._order])

    def frob(self, a: int) -> int:
        """Frobenius relative to the base subfield: a -> a**p."""
        return self.pow(a, self.p)

    def trace(self, a: int) -> int:
        """Trace into GF(p): a + a**p + ... + a**(p**(t-1)).  Returns a code < p."""
        acc, x = a, a
        for _ in range(self.t - 1):
            x = self.frob(x)
            acc = self.add(acc, x)
        return acc

    # ------------------------------------------------------------------
    # vectorised arithmetic on numpy arrays of codes
    # ------------------------------------------------------------------
    def add_arr(self, a, b):
        if self.char == 2:
            return np.bitwise_xor(a, b)
        if self._add_table is not None:
            return self._add_table[a, b]
        p0 = self.char
        da = (np.asarray(a)[..., None] // self._prime_pows) % p0
        db = (np.asarray(b)[..., None] // self._prime_pows) % p0
        return (((da + db) % p0) * self._prime_pows).sum(axis=-1)

    def neg_arr(self, a):
        return a if self.char == 2 else self._neg_table[a]

    def sub_arr(self, a, b):
        return self.add_arr(a, self.neg_arr(b))

    def mul_arr(self, a, b):
        return self._exp[self._log[a] + self._log[b]]

    def inv_arr(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._exp[self._order - self._log[a]]

    def pow_arr(self, a, k: int):
        a = np.asarray(a)
        if k == 0:
            return np.ones_like(a)
        out = self._exp[(self._log[a] * (k % self._order)) % self._order]
        return np.where(a == 0, 0, out)

    def frob_arr(self, a):
        return self.pow_arr(a, self.p)

    def trace_arr(self, a):
        acc, x = np.asarray(a), np.asarray(a)
        for _ in range(self.t - 1):
            x = self.frob_arr(x)
            acc = self.add_arr(acc, x)
        return acc

    # ------------------------------------------------------------------
    # digit views and elements
    # ------------------------------------------------------------------
    def digits(self, code: int) -> tuple:
        """Base-p digit vector, least-significant first, length t."""
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for GF({self.q})")
        return self._digits(code)

    def from_digits(self, digits) -> int:
        digits = tuple(int(d) for d in digits)
        if len(digits) != self.t:
            raise ValueError(f"expected {self.t} digits, got {len(digits)}")
        if any(not 0 <= d < self.p for d in digits):
            raise ValueError(f"digits must lie in [0, {self.p})")
        return self._undigits(digits)

    def digits_arr(self, a):
        """(..., t) array of base-p digit codes for an array of element codes."""
        return (np.asarray(a)[..., None] // (self.p ** np.arange(self.t, dtype=np.int64))) % self.p

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.tower != self:
                raise ValueError("element belongs to a different tower")
            return value
        if isinstance(value, (list, tuple, np.ndarray)):
            return FieldElement(self, self.from_digits(value))
        code = int(value)
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for GF({self.q})")
        return FieldElement(self, code)

    def elements(self):
        return (FieldElement(self, c) for c in range(self.q))

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def gen(self):
        """The adjoined root x (code p); primitive only by accident."""
        return FieldElement(self, self.p if self.t > 1 else self.generator)

    # ------------------------------------------------------------------
    # dual bases and trace representation
    # ------------------------------------------------------------------
    def dual_basis(self, primal) -> tuple:
        """Basis theta with trace(zeta_i * theta_j) = [i == j].

        Computed by inverting the Gram matrix trace(zeta_i * zeta_j) over
        GF(p); raises ValueError when the input is linearly dependent (the
        trace form is non-degenerate, so dependence is the only failure).
        """
        primal = [self.element(z).code for z in primal]
        t = self.t
        if len(primal) != t:
            raise ValueError(f"primal basis must have {t} elements")
        gram = [[self.trace(self.mul(zi, zj)) for zj in primal] for zi in primal]
        inv = _invert_matrix(self, gram)
        if inv is None:
            raise ValueError("primal set is linearly dependent over the base subfield")
        dual = []
        for j in range(t):
            acc = 0
            for k in range(t):
                acc = self.add(acc, self.mul(inv[k][j], primal[k]))
            dual.append(acc)
        return tuple(dual)

    def __eq__(self, other):
        return (
            isinstance(other, FieldTower)
            and (self.p, self.t, self.modulus) == (other.p, other.t, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.t, self.modulus))

    def __repr__(self):
        return f"FieldTower(p={self.p}, t={self.t}, q={self.q})"


@lru_cache(maxsize=None)
def tower(p: int, t: int) -> FieldTower:
    """Memoised tower factory with the default (lex-least) modulus."""
    return FieldTower(p, t)


def _invert_matrix(tw: FieldTower, rows):
    """Tiny exact Gauss-Jordan inverse; returns None when singular."""
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        f = tw.inv(aug[col][col])
        aug[col] = [tw.mul(f, v) for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [tw.sub(v, tw.mul(f, w)) for v, w in zip(aug[r], aug[col])]
    return [r[n:] for r in aug]


@dataclass(frozen=True)
class FieldElement:
    """One element of a FieldTower, wrapping its integer code."""

    tower: FieldTower
    code: int

    @property
    def digits(self) -> tuple:
        return self.tower.digits(self.code)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.tower != self.tower:
                raise ValueError("operands belong to different towers")
            return other.code
        return self.tower.element(other).code

    def __add__(self, other):
        return FieldElement(self.tower, self.tower.add(self.code, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.tower, self.tower.sub(self.code, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.tower, self.tower.sub(self._coerce(other), self.code))

    def __mul__(self, other):
        return FieldElement(self.tower, self.tower.mul(self.code, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.tower, self.tower.div(self.code, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.tower, self.tower.div(self._coerce(other), self.code))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg(self.code))

    def __pow__(self, k: int):
        return FieldElement(self.tower, self.tower.pow(self.code, k))

    def inverse(self):
        return FieldElement(self.tower, self.tower.inv(self.code))

    def frobenius(self):
        return FieldElement(self.tower, self.tower.frob(self.code))

    def trace(self) -> int:
        return self.tower.trace(self.code)

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"<{self.code} in GF({self.tower.q})>"


def trace_reconstruct(traces, tw: FieldTower) -> FieldElement:
    """Rebuild alpha from its trace coordinates (trace(alpha * zeta_u))_u.

    Inverse of the trace representation: alpha = sum_u trace(alpha zeta_u) theta_u.
    """
    traces = list(traces)
    if len(traces) != tw.t:
        raise ValueError(f"expected {tw.t} trace values, got {len(traces)}")
    acc = 0
    for val, th in zip(traces, tw.theta):
        val = int(val)
        if not 0 <= val < tw.p:
            raise ValueError(f"trace value {val} outside the base subfield")
        acc = tw.add(acc, tw.mul(val, th))
    return FieldElement(tw, acc)


class LinearizedMap:
    """The GF(p)-linear map x -> prod_{v in V} (x - v) for a subspace V.

    `V` is spanned by `v_basis` (l independent elements); the kernel of the
    map is exactly V and the image has codimension l over GF(p).  The
    normalisation constant c = prod of -v over nonzero v in V equals the
    value of L(x)/x extended to x = 0, which is what `quotient` computes:
    evaluating L(z h)/h at zeros of h stays well defined through it.
    """

    def __init__(self, tw: FieldTower, v_basis):
        from .linalg import rank_over_base

        v_basis = tuple(tw.element(v).code for v in v_basis)
        l = len(v_basis)
        if l > tw.t:
            raise ValueError("subspace dimension exceeds the extension degree")
        if rank_over_base(tw, v_basis) != l:
            raise ValueError("v_basis is linearly dependent over the base subfield")
        self.tower = tw
        self.v_basis = v_basis
        self.l = l
        kernel = []
        for coeffs in itertools.product(range(tw.p), repeat=l):
            acc = 0
            for c, v in zip(coeffs, v_basis):
                acc = tw.add(acc, tw.mul(c, v))
            kernel.append(acc)
        kernel = sorted(set(kernel))
        if len(kernel) != tw.p ** l:
            raise ValueError("v_basis is linearly dependent over the base subfield")
        self.kernel = tuple(kernel)
        c = 1
        for v in kernel:
            if v:
                c = tw.mul(c, tw.neg(v))
        self.c = c

    @property
    def image_dim(self) -> int:
        return self.tower.t - self.l

    def quotient(self, x: int) -> int:
        """prod over nonzero v in V of (x - v); equals L(x)/x away from 0 and c at 0."""
        tw = self.tower
        acc = 1
        for v in self.kernel:
            if v:
                acc = tw.mul(acc, tw.sub(x, v))
        return acc

    def __call__(self, x) -> int:
        tw = self.tower
        if isinstance(x, FieldElement):
            x = x.code
        return tw.mul(x, self.quotient(x))

    def quotient_arr(self, xs):
        tw = self.tower
        acc = np.ones_like(np.asarray(xs))
        for v in self.kernel:
            if v:
                acc = tw.mul_arr(acc, tw.sub_arr(xs, v))
        return acc

    def eval_arr(self, xs):
        return self.tower.mul_arr(np.asarray(xs), self.quotient_arr(xs))

    def image(self):
        """All values of the map (used by tests; O(q))."""
        return sorted(set(int(v) for v in self.eval_arr(np.arange(self.tower.q))))
