import numpy as np
import pytest

from agrepair import codes, linalg
from agrepair.gf import tower


def dot(tw, u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = tw.add(acc, tw.mul(int(a), int(b)))
    return acc


# ----------------------------------------------------------------------
# Hermitian curve
# ----------------------------------------------------------------------


def test_curve_r2_exhaustive():
    f4 = tower(2, 2)
    cv = codes.hermitian_curve(f4)
    oracle = sorted(
        (a, b)
        for a in range(4)
        for b in range(4)
        if f4.add(f4.pow(b, 2), b) == f4.pow(a, 3)
    )
    assert [tuple(p) for p in cv.points.tolist()] == oracle
    assert cv.points.shape[0] == 8
    assert cv.genus == 1
    # a=0 pairs with {0,1}; every nonzero a pairs with {g, g+1}
    assert [tuple(p) for p in cv.points[:2]] == [(0, 0), (0, 1)]
    for a in (1, 2, 3):
        fiber = sorted(int(b) for aa, b in cv.points if aa == a)
        assert fiber == [2, 3]


def test_curve_r3_exhaustive():
    f9 = tower(3, 2)
    cv = codes.hermitian_curve(f9)
    oracle = sorted(
        (a, b)
        for a in range(9)
        for b in range(9)
        if f9.add(f9.pow(b, 3), b) == f9.pow(a, 4)
    )
    assert [tuple(p) for p in cv.points.tolist()] == oracle
    assert cv.points.shape[0] == 27


@pytest.mark.parametrize("p,t,r", [(2, 2, 2), (3, 2, 3), (2, 4, 4), (8, 2, 8)])
def test_curve_point_counts(p, t, r):
    tw = tower(p, t)
    cv = codes.hermitian_curve(tw)
    assert cv.r == r
    assert cv.points.shape[0] == r ** 3
    eq = tw.add_arr(tw.pow_arr(cv.points[:, 1], r), cv.points[:, 1])
    assert np.array_equal(eq, tw.pow_arr(cv.points[:, 0], r + 1))
    # each x-coordinate carries exactly r points
    _, counts = np.unique(cv.points[:, 0], return_counts=True)
    assert (counts == r).all()


def test_curve_needs_square_field():
    with pytest.raises(ValueError):
        codes.hermitian_curve(tower(2, 3))


# ----------------------------------------------------------------------
# Riemann-Roch monomial basis
# ----------------------------------------------------------------------


def test_rr_basis_cases():
    assert codes.rr_basis(2, 0) == [(0, 0)]
    assert codes.rr_basis(2, 5) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)]
    assert len(codes.rr_basis(8, 475)) == 448
    with pytest.raises(ValueError):
        codes.rr_basis(2, -1)


@pytest.mark.parametrize("r", [2, 3, 4, 8])
def test_rr_basis_dimension_formula(r):
    genus = r * (r - 1) // 2
    for s in range(2 * genus - 1, 2 * genus + 40):
        assert len(codes.rr_basis(r, s)) == s - genus + 1
    # sorted by strictly increasing pole order
    orders = [i * r + j * (r + 1) for i, j in codes.rr_basis(r, 3 * genus + 5)]
    assert orders == sorted(orders) and len(set(orders)) == len(orders)


# ----------------------------------------------------------------------
# construction and encoding
# ----------------------------------------------------------------------


def test_rs_frozen_codeword():
    f4 = tower(2, 2)
    rs = codes.rs_code(f4, k=2, n=4)
    assert codes.encode(rs, [0, 2]).symbols.tolist() == [0, 2, 3, 1]  # f = g*x
    assert codes.encode(rs, [1, 0]).symbols.tolist() == [1, 1, 1, 1]
    assert codes.encode(rs, [0, 0]).symbols.tolist() == [0, 0, 0, 0]


def test_rs_validation():
    f4 = tower(2, 2)
    with pytest.raises(ValueError):
        codes.rs_code(f4, k=0, n=4)
    with pytest.raises(ValueError):
        codes.rs_code(f4, k=2, points=[0, 0, 1])
    with pytest.raises(ValueError):
        codes.rs_code(f4, k=5, n=4)
    with pytest.raises(ValueError):
        codes.rs_code(f4, k=2, n=5)


def test_encode_is_linear():
    f16 = tower(2, 4)
    rs = codes.rs_code(f16, k=5, n=12)
    rng = np.random.default_rng(0)
    m1, m2 = rng.integers(0, 16, size=(2, 5))
    lam = int(rng.integers(1, 16))
    lhs = codes.encode(rs, f16.add_arr(f16.mul_arr(np.int64(lam), m1), m2)).symbols
    rhs = f16.add_arr(
        f16.mul_arr(np.int64(lam), codes.encode(rs, m1).symbols),
        codes.encode(rs, m2).symbols,
    )
    assert np.array_equal(lhs, rhs)


def test_hermitian_code_monomial_rows():
    f4 = tower(2, 2)
    cv = codes.hermitian_curve(f4)
    hc = codes.hermitian_code(cv, s=5)
    assert hc.k == 5 and hc.n == 8 and hc.threshold == 6
    msg = [0, 1, 0, 0, 0]  # the monomial x
    assert codes.encode(hc, msg).symbols.tolist() == cv.points[:, 0].tolist()
    assert codes.encode(hc, [1, 0, 0, 0, 0]).symbols.tolist() == [1] * 8
    with pytest.raises(ValueError):
        codes.hermitian_code(cv, s=8)  # s must stay below n


def test_hermitian_sub_support():
    f9 = tower(3, 2)
    cv = codes.hermitian_curve(f9)
    hc = codes.hermitian_code(cv, s=9, n=20)
    assert hc.n == 20
    assert np.array_equal(hc.points, cv.points[:20])


# ----------------------------------------------------------------------
# erasure decoding
# ----------------------------------------------------------------------


def test_decode_identity_on_full_codeword():
    f4 = tower(2, 2)
    rs = codes.rs_code(f4, k=2, n=4)
    cw = codes.encode(rs, [1, 3])
    assert codes.erasure_decode(rs, list(enumerate(cw.symbols))) == cw


def test_rs_two_point_recovery():
    f4 = tower(2, 2)
    rs = codes.rs_code(f4, k=2, n=4)
    cw = codes.encode(rs, [0, 2])
    for i in range(4):
        for j in range(i + 1, 4):
            got = codes.erasure_decode(rs, [(i, cw.symbols[i]), (j, cw.symbols[j])])
            assert got == cw


def test_hermitian_threshold_recovery_random():
    f4 = tower(2, 2)
    hc = codes.hermitian_code(codes.hermitian_curve(f4), s=5)
    rng = np.random.default_rng(1)
    for _ in range(100):
        msg = rng.integers(0, 4, size=hc.k)
        cw = codes.encode(hc, msg)
        sub = rng.choice(hc.n, size=6, replace=False)
        got = codes.erasure_decode(hc, [(int(p), int(cw.symbols[p])) for p in sub])
        assert got == cw


def test_decode_error_types():
    f4 = tower(2, 2)
    hc = codes.hermitian_code(codes.hermitian_curve(f4), s=5)
    cw = codes.encode(hc, [1, 2, 3, 0, 1])
    with pytest.raises(codes.UnderdeterminedError):
        codes.erasure_decode(hc, [(i, cw.symbols[i]) for i in range(5)])
    bad = [(i, int(cw.symbols[i])) for i in range(7)]
    bad[0] = (0, int(cw.symbols[0]) ^ 1)
    with pytest.raises(codes.InconsistentError):
        codes.erasure_decode(hc, bad)
    with pytest.raises(ValueError):
        codes.erasure_decode(hc, [(0, 1), (0, 1), (1, 0), (2, 0), (3, 0), (4, 0)])


def test_decode_many_matches_single():
    f16 = tower(2, 4)
    hc = codes.hermitian_code(codes.hermitian_curve(f16), s=12)
    rng = np.random.default_rng(2)
    msgs = rng.integers(0, 16, size=(8, hc.k))
    cws = codes.encode_many(hc, msgs)
    positions = sorted(rng.choice(hc.n, size=hc.threshold + 3, replace=False).tolist())
    block = codes.erasure_decode_many(hc, positions, cws[:, positions])
    assert np.array_equal(block, cws)
    one = codes.erasure_decode(hc, [(p, int(cws[3, p])) for p in positions])
    assert np.array_equal(one.symbols, block[3])


def test_encode_decode_round_trip_all_kinds():
    rng = np.random.default_rng(3)
    f16 = tower(2, 4)
    configs = [
        codes.rs_code(f16, k=7, n=16),
        codes.hermitian_code(codes.hermitian_curve(tower(3, 2)), s=9),
    ]
    for code in configs:
        for _ in range(20):
            msg = rng.integers(0, code.tower.q, size=code.k)
            cw = codes.encode(code, msg)
            sel = rng.choice(code.n, size=code.threshold, replace=False)
            got = codes.erasure_decode(code, [(int(p), int(cw.symbols[p])) for p in sel])
            assert got == cw


# ----------------------------------------------------------------------
# vanishing functions
# ----------------------------------------------------------------------


def test_vanishing_line_frozen_r2():
    f4 = tower(2, 2)
    cv = codes.hermitian_curve(f4)
    h = codes.vanishing_line(cv, (1, 2))  # P = (1, g)
    assert h.alpha == 1 and h.gamma == 3  # h = y + x + (g+1)
    vals = h.values(cv.points)
    assert list(np.nonzero(vals == 0)[0]) == [cv.point_index(1, 2)]
    with pytest.raises(ValueError):
        codes.vanishing_line(cv, (1, 0))  # not on the curve


@pytest.mark.parametrize("p,t", [(2, 2), (3, 2)])
def test_vanishing_line_divisor_property(p, t):
    tw = tower(p, t)
    cv = codes.hermitian_curve(tw)
    for idx, (a, b) in enumerate(cv.points.tolist()):
        h = codes.vanishing_line(cv, (a, b))
        assert h.at(a, b) == 0
        vals = h.values(cv.points)
        assert list(np.nonzero(vals == 0)[0]) == [idx]
        # gamma lands in the right root set: gamma^r + gamma = -alpha^(r+1)
        lhs = tw.add(tw.pow(h.gamma, cv.r), h.gamma)
        assert lhs == tw.neg(tw.pow(h.alpha, cv.r + 1))


def test_vanishing_function_r2_is_the_line_through_x():
    f4 = tower(2, 2)
    hc = codes.hermitian_code(codes.hermitian_curve(f4), s=5)
    for i in range(hc.n):
        vals, extra = codes.vanishing_function(hc, i)
        assert vals[i] == 0
        assert len(extra) == 1  # the other point sharing the x-coordinate
        a_i = hc.points[i, 0]
        assert hc.points[extra[0], 0] == a_i


@pytest.mark.parametrize("p,t", [(2, 2), (3, 2)])
def test_vanishing_function_zero_budget(p, t):
    tw = tower(p, t)
    cv = codes.hermitian_curve(tw)
    hc = codes.hermitian_code(cv, s=2 * cv.genus)
    for i in range(hc.n):
        vals, extra = codes.vanishing_function(hc, i)
        assert vals[i] == 0 and np.any(vals)
        assert len(extra) <= cv.genus


# ----------------------------------------------------------------------
# dual vectors with prescribed support
# ----------------------------------------------------------------------


def test_all_ones_is_dual_for_full_hermitian_support():
    for p, t in [(2, 2), (3, 2)]:
        tw = tower(p, t)
        cv = codes.hermitian_curve(tw)
        hc = codes.hermitian_code(cv, s=cv.genus + 2)
        aug = codes.augmented_generator(hc, hc.n + 2 * hc.genus - 2 - hc.s)
        ones = np.ones(hc.n, dtype=np.int64)
        for row in aug:
            assert dot(tw, row, ones) == 0


@pytest.mark.parametrize("p,t", [(2, 2), (3, 2)])
def test_global_residue_identity_random_functions(p, t):
    tw = tower(p, t)
    cv = codes.hermitian_curve(tw)
    n, genus = cv.points.shape[0], cv.genus
    mons = codes.rr_basis(cv.r, n + 2 * genus - 2)
    rows = np.stack(
        [tw.mul_arr(tw.pow_arr(cv.points[:, 0], i), tw.pow_arr(cv.points[:, 1], j)) for i, j in mons]
    )
    rng = np.random.default_rng(9)
    for _ in range(200):
        coeffs = rng.integers(0, tw.q, size=len(mons))
        vals = linalg.matvec(tw, rows.T, coeffs)
        acc = 0
        for v in vals:
            acc = tw.add(acc, int(v))
        assert acc == 0


def test_rs_classical_dual_vector():
    f4 = tower(2, 2)
    rs_aug = codes.rs_code(f4, k=3, n=4)  # one dimension below the length
    w = codes.dual_support_vector(rs_aug.generator, f4, 0, [1, 2, 3])
    assert w[0] == 1
    for row in rs_aug.generator:
        assert dot(f4, row, w) == 0
    assert (w != 0).all()  # classical multiplier vector has full support


def test_dual_support_zero_pattern_and_orthogonality():
    f16 = tower(2, 4)
    cv = codes.hermitian_curve(f16)
    hc = codes.hermitian_code(cv, s=8)
    aug = codes.augmented_generator(hc, 5)
    helpers = list(range(20, 34))
    w = codes.dual_support_vector(aug, f16, 2, helpers)
    assert w[2] == 1
    outside = [j for j in range(hc.n) if j != 2 and j not in helpers]
    assert not w[outside].any()
    for row in aug:
        assert dot(f16, row, w) == 0


def test_dual_support_densify_fills_support():
    f16 = tower(2, 4)
    cv = codes.hermitian_curve(f16)
    hc = codes.hermitian_code(cv, s=8)
    aug = codes.augmented_generator(hc, 5)  # pole degree 13 < d = 14
    rng = np.random.default_rng(11)
    for _ in range(25):
        i = int(rng.integers(hc.n))
        others = np.asarray([j for j in range(hc.n) if j != i])
        helpers = sorted(rng.choice(others, size=14, replace=False).tolist())
        w = codes.dual_support_vector(aug, f16, i, helpers)
        assert w[i] == 1
        assert all(w[j] != 0 for j in helpers)


def test_dual_support_error_when_impossible():
    f4 = tower(2, 2)
    rs_full = codes.rs_code(f4, k=4, n=4)  # dual code is trivial
    with pytest.raises(codes.DualVectorError):
        codes.dual_support_vector(rs_full.generator, f4, 0, [1, 2, 3])
