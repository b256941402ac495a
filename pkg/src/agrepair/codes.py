"""Reed-Solomon and Hermitian one-point evaluation codes.

Both families are handled through one EvalCode shape: a list of evaluation
points, a monomial basis of functions whose only pole sits at the common
point at infinity, and the generator matrix of their evaluations.  The pole
degree s plays the role the polynomial degree bound plays for Reed-Solomon
(s = k - 1 there); any s + 1 coordinates determine a codeword, which is what
`erasure_decode` exploits and what every repair path is checked against.

The Hermitian curve y**r + y = x**(r+1) over GF(r**2) contributes the two
special constructions the repair schemes need: `vanishing_line`, a function
whose divisor is (r+1)(P - Pinf) (it vanishes at one chosen affine point and
nowhere else), and `vanishing_function`, a nonzero function with pole order
at most genus+1 vanishing at a chosen point, whose few extra zeros are the
price of the generic (weak) repair path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .gf import FieldElement, FieldTower


class DecodeError(Exception):
    pass


class UnderdeterminedError(DecodeError):
    """Too few coordinates (or too little rank) to pin down the codeword."""


class InconsistentError(DecodeError):
    """The supplied coordinates do not agree with any codeword."""


class DualVectorError(Exception):
    """No dual vector with the required support/nonzero pattern exists."""


# ----------------------------------------------------------------------
# Hermitian curve
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HermitianCurve:
    """The curve y**r + y = x**(r+1) over GF(r**2) with its r**3 affine points.

    Points are sorted by (a, b) integer codes, so the enumeration is
    reproducible.  The point at infinity is never materialised; it only
    enters through pole orders.
    """

    tower: FieldTower
    r: int
    points: np.ndarray  # (r**3, 2) int64 codes
    genus: int

    def on_curve(self, a: int, b: int) -> bool:
        tw = self.tower
        lhs = tw.add(tw.pow(b, self.r), b)
        return lhs == tw.pow(a, self.r + 1)

    def point_index(self, a: int, b: int) -> int:
        idx = np.nonzero((self.points[:, 0] == a) & (self.points[:, 1] == b))[0]
        if idx.size == 0:
            raise ValueError(f"({a}, {b}) is not on the curve")
        return int(idx[0])


def hermitian_curve(tw: FieldTower) -> HermitianCurve:
    q = tw.q
    r2 = round(q ** 0.5)
    if r2 * r2 != q:
        raise ValueError(f"Hermitian curve needs a square field size, got q={q}")
    r = r2
    codes = np.arange(q, dtype=np.int64)
    # bucket b by the value of b**r + b, then read fibers off a**(r+1)
    images = tw.add_arr(tw.pow_arr(codes, r), codes)
    buckets: dict[int, list[int]] = {}
    for b, z in zip(codes, images):
        buckets.setdefault(int(z), []).append(int(b))
    pts = []
    for a in range(q):
        z = int(tw.pow(a, r + 1))
        for b in sorted(buckets.get(z, ())):
            pts.append((a, b))
    points = np.array(pts, dtype=np.int64)
    if points.shape[0] != r ** 3:
        raise AssertionError(f"curve enumeration produced {points.shape[0]} points, expected {r ** 3}")
    return HermitianCurve(tower=tw, r=r, points=points, genus=r * (r - 1) // 2)


def rr_basis(r: int, s: int) -> list[tuple[int, int]]:
    """Monomials x**i y**j with pole order i*r + j*(r+1) <= s and j <= r-1.

    Sorted by pole order (ties by j; gcd(r, r+1) = 1 makes ties impossible
    within the j range).  For s >= 2*genus - 1 the count is s - genus + 1.
    """
    if s < 0:
        raise ValueError("pole degree must be >= 0")
    mons = [
        (i, j)
        for j in range(min(r, s // (r + 1) + 1))
        for i in range((s - j * (r + 1)) // r + 1)
    ]
    mons.sort(key=lambda ij: (ij[0] * r + ij[1] * (r + 1), ij[1]))
    return mons


# ----------------------------------------------------------------------
# evaluation codes
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EvalCode:
    """An evaluation code with one common pole.

    kind      "rs" or "hermitian"
    points    (n,) codes for RS, (n, 2) (a, b) codes for Hermitian
    s         pole degree bound of the function space (RS: k - 1)
    monomials exponents of the function basis: ints e for x**e (RS),
              pairs (i, j) for x**i y**j (Hermitian)
    generator k x n matrix of basis evaluations
    """

    tower: FieldTower
    kind: str
    points: np.ndarray
    s: int
    genus: int
    monomials: tuple
    generator: np.ndarray
    curve: HermitianCurve | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def threshold(self) -> int:
        """Number of coordinates that always determines a codeword."""
        return self.s + 1


@dataclass(frozen=True)
class Codeword:
    code: EvalCode
    symbols: np.ndarray  # (n,) int64 codes

    def __eq__(self, other):
        return isinstance(other, Codeword) and np.array_equal(self.symbols, other.symbols)

    def __getitem__(self, i: int) -> int:
        return int(self.symbols[i])


def _rs_generator(tw: FieldTower, points: np.ndarray, k: int) -> np.ndarray:
    return np.stack([tw.pow_arr(points, e) for e in range(k)])


def _hermitian_rows(tw: FieldTower, points: np.ndarray, monomials) -> np.ndarray:
    a, b = points[:, 0], points[:, 1]
    return np.stack(
        [tw.mul_arr(tw.pow_arr(a, i), tw.pow_arr(b, j)) for i, j in monomials]
    )


def rs_code(tw: FieldTower, k: int, points=None, n: int | None = None) -> EvalCode:
    if points is None:
        if n is None:
            n = tw.q
        points = np.arange(n, dtype=np.int64)
    points = np.asarray(points, dtype=np.int64)
    n = points.shape[0]
    if np.unique(points).size != n:
        raise ValueError("evaluation points must be pairwise distinct")
    if n > tw.q:
        raise ValueError(f"cannot place {n} distinct points in GF({tw.q})")
    if k < 1:
        raise ValueError("dimension k must be >= 1")
    if k > n:
        raise ValueError(f"k={k} exceeds length n={n}")
    return EvalCode(
        tower=tw,
        kind="rs",
        points=points,
        s=k - 1,
        genus=0,
        monomials=tuple(range(k)),
        generator=_rs_generator(tw, points, k),
    )


def hermitian_code(curve: HermitianCurve, s: int, n: int | None = None) -> EvalCode:
    pts = curve.points if n is None else curve.points[:n]
    n = pts.shape[0]
    if s >= n:
        raise ValueError(f"pole degree s={s} must be below the length n={n}")
    mons = rr_basis(curve.r, s)
    if not mons:
        raise ValueError("empty function basis")
    return EvalCode(
        tower=curve.tower,
        kind="hermitian",
        points=pts,
        s=s,
        genus=curve.genus,
        monomials=tuple(mons),
        generator=_hermitian_rows(curve.tower, pts, mons),
        curve=curve,
    )


def augmented_generator(code: EvalCode, extra_pole: int) -> np.ndarray:
    """Generator of the same-kind code with pole degree s + extra_pole.

    Used for dual-support searches; the row space may be the whole ambient
    space once the pole degree passes n, which is fine for that purpose.
    """
    s_aug = code.s + extra_pole
    if code.kind == "rs":
        return _rs_generator(code.tower, code.points, s_aug + 1)
    return _hermitian_rows(code.tower, code.points, rr_basis(code.curve.r, s_aug))


def encode(code: EvalCode, message) -> Codeword:
    msg = np.asarray([m.code if isinstance(m, FieldElement) else int(m) for m in message], dtype=np.int64)
    if msg.shape[0] != code.k:
        raise ValueError(f"message length {msg.shape[0]} != dimension {code.k}")
    return Codeword(code, linalg.matvec(code.tower, code.generator.T, msg))


def encode_many(code: EvalCode, messages: np.ndarray) -> np.ndarray:
    """(m, k) message block -> (m, n) codeword block."""
    return linalg.matmul(code.tower, np.asarray(messages, dtype=np.int64), code.generator)


def erasure_decode(code: EvalCode, known) -> Codeword:
    """Recover the unique codeword agreeing with the given (position, value) pairs.

    Needs at least threshold = s + 1 coordinates; raises UnderdeterminedError
    below that (or if the provided positions do not pin the message down) and
    InconsistentError when the values match no codeword.
    """
    known = list(known)
    positions = np.asarray([p for p, _ in known], dtype=np.int64)
    values = np.asarray(
        [v.code if isinstance(v, FieldElement) else int(v) for _, v in known], dtype=np.int64
    )
    if np.unique(positions).size != positions.size:
        raise ValueError("duplicate positions")
    if positions.size and (positions.min() < 0 or positions.max() >= code.n):
        raise ValueError("position out of range")
    if positions.size < code.threshold:
        raise UnderdeterminedError(
            f"{positions.size} coordinates given, {code.threshold} needed"
        )
    tw = code.tower
    mat = code.generator[:, positions].T
    aug = np.concatenate([mat, values[:, None]], axis=1)
    r, pivots = linalg.rref(tw, aug)
    if any(p >= code.k for p in pivots):
        raise InconsistentError("coordinates match no codeword")
    if len(pivots) < code.k:
        raise UnderdeterminedError("coordinates do not determine the message")
    msg = np.zeros(code.k, dtype=np.int64)
    for row_idx, p in enumerate(pivots):
        msg[p] = r[row_idx, code.k]
    return encode(code, msg)


def erasure_decode_many(code: EvalCode, positions, value_rows: np.ndarray) -> np.ndarray:
    """Batched erasure decoding against one fixed known-position set.

    value_rows has one codeword's known values per row; returns the decoded
    (m, n) codeword block.  Same algorithm as `erasure_decode`, one
    elimination for the whole batch.
    """
    positions = np.asarray(positions, dtype=np.int64)
    if positions.size < code.threshold:
        raise UnderdeterminedError(
            f"{positions.size} coordinates given, {code.threshold} needed"
        )
    tw = code.tower
    mat = code.generator[:, positions].T
    msgs = linalg.solve(tw, mat, np.asarray(value_rows, dtype=np.int64).T)
    if msgs is None:
        raise InconsistentError("coordinates match no codeword")
    return encode_many(code, msgs.T)


# ----------------------------------------------------------------------
# special functions on the Hermitian curve
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class VanishingLine:
    """h = y + alpha*x - gamma with divisor (r+1)(P - Pinf)."""

    curve: HermitianCurve
    point: tuple[int, int]
    alpha: int
    gamma: int

    def at(self, a: int, b: int) -> int:
        tw = self.curve.tower
        return tw.sub(tw.add(b, tw.mul(self.alpha, a)), self.gamma)

    def values(self, points: np.ndarray) -> np.ndarray:
        tw = self.curve.tower
        a, b = points[:, 0], points[:, 1]
        return tw.sub_arr(tw.add_arr(b, tw.mul_arr(np.int64(self.alpha), a)), self.gamma)


def vanishing_line(curve: HermitianCurve, point) -> VanishingLine:
    """The line function vanishing (to order r+1) at one affine point only.

    alpha solves a = -alpha**r in closed form via the inverse Frobenius
    (alpha = (-a)**r), and gamma = b - alpha**(r+1); this works in every
    characteristic.
    """
    a, b = (int(point[0]), int(point[1]))
    tw = curve.tower
    if not curve.on_curve(a, b):
        raise ValueError(f"({a}, {b}) is not on the curve")
    alpha = tw.pow(tw.neg(a), curve.r)
    gamma = tw.sub(b, tw.pow(alpha, curve.r + 1))
    return VanishingLine(curve=curve, point=(a, b), alpha=alpha, gamma=gamma)


def vanishing_function(code: EvalCode, i: int):
    """A nonzero function with pole order <= genus+1 vanishing at point i.

    Generic replacement for `vanishing_line` when only the weak repair
    guarantee is needed: returns (values at all code points, extra zero
    positions I_i).  The pole budget genus+1 caps len(I_i) at genus.
    """
    if code.kind != "hermitian":
        raise ValueError("generic vanishing functions are for Hermitian codes")
    tw = code.tower
    mons = rr_basis(code.curve.r, code.genus + 1)
    rows = _hermitian_rows(tw, code.points, mons)
    constraint = rows[:, i][None, :]
    basis = linalg.nullspace(tw, constraint)
    if basis.shape[0] == 0:
        raise ValueError("no nonzero vanishing function at this pole budget")
    coeffs = basis[0]
    values = linalg.matvec(tw, rows.T, coeffs)
    zero_set = [int(j) for j in np.nonzero(values == 0)[0] if j != i]
    if values[i] != 0:
        raise AssertionError("constraint violated")  # unreachable
    return values, zero_set


# ----------------------------------------------------------------------
# dual vectors with prescribed support
# ----------------------------------------------------------------------


def dual_support_vector(
    code_aug_generator: np.ndarray,
    tw: FieldTower,
    i: int,
    helpers,
    densify: bool = True,
) -> np.ndarray:
    """A vector w orthogonal to every row of code_aug_generator with
    w_i != 0 and support inside helpers + {i}, normalised to w_i = 1.

    Found as a nullspace vector of the column-restricted generator.  With
    `densify`, zero coordinates inside the allowed support are greedily
    filled in (adding scaled nullspace basis vectors, deterministically)
    so that as many helpers as possible carry weight; helpers that stay at
    zero cost nothing and download nothing.
    """
    helpers = sorted(int(j) for j in helpers)
    if i in helpers:
        raise ValueError("target cannot be its own helper")
    cols = sorted(helpers + [i])
    pos_i = cols.index(i)
    sub = code_aug_generator[:, cols]
    basis = linalg.nullspace(tw, sub)
    if basis.shape[0] == 0:
        raise DualVectorError("restricted dual code is trivial")
    pick = next((row for row in basis if row[pos_i] != 0), None)
    if pick is None:
        raise DualVectorError("no dual vector is nonzero at the repair position")
    w = pick.copy()
    if densify:
        for pos in range(len(cols)):
            if w[pos] != 0:
                continue
            vec = next((row for row in basis if row[pos] != 0), None)
            if vec is None:
                continue
            forbidden = {0}
            nz = np.nonzero(w)[0]
            for k in nz[vec[nz] != 0]:
                forbidden.add(tw.neg(tw.div(int(w[k]), int(vec[k]))))
            c = next((c for c in range(1, tw.q) if c not in forbidden), None)
            if c is None:
                continue
            w = tw.add_arr(w, tw.mul_arr(np.int64(c), vec))
    w = tw.mul_arr(w, tw.inv(int(w[pos_i])))
    out = np.zeros(code_aug_generator.shape[1], dtype=np.int64)
    out[cols] = w
    return out
