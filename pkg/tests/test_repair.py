import numpy as np
import pytest

from agrepair import codes, repair
from agrepair.gf import tower


def herm_code(p, t, s, n=None):
    tw = tower(p, t)
    return codes.hermitian_code(codes.hermitian_curve(tw), s=s, n=n)


# ----------------------------------------------------------------------
# scheme structure
# ----------------------------------------------------------------------


def test_table_normalisation_at_target():
    f16 = tower(2, 4)
    rs = codes.rs_code(f16, k=6, n=16)
    for l in (1, 2, 3):
        scheme = repair.build_scheme(rs, 4, l=l)
        assert np.array_equal(scheme.table[:, 4], np.asarray(f16.zeta))


def test_strong_uniform_counts():
    f16 = tower(2, 4)
    rs = codes.rs_code(f16, k=6, n=16)
    scheme = repair.build_scheme(rs, 0, l=2)
    assert set(scheme.counts.values()) == {2}  # t - l
    hc = herm_code(2, 4, s=8)
    scheme = repair.build_scheme(hc, 7, l=1)
    assert set(scheme.counts.values()) == {3}


def test_weak_counts_full_at_extra_zeros():
    hc = herm_code(2, 2, s=4)
    scheme = repair.build_scheme(hc, 0, l=1, variant=repair.VARIANT_WEAK)
    assert len(scheme.extra_zeros) <= hc.genus
    for j in scheme.active:
        expect = 2 if j in scheme.extra_zeros else 1
        assert scheme.counts[j] == expect


def test_rs_gf4_hand_checked_responses():
    """Responses must equal the raw trace formula computed from first principles."""
    f4 = tower(2, 2)
    rs = codes.rs_code(f4, k=2, n=4)
    cw = codes.encode(rs, [1, 2])
    i = 2
    scheme = repair.build_scheme(rs, i, l=1)
    lin = scheme.lin
    for j in scheme.active:
        a_j, a_i = int(rs.points[j]), int(rs.points[i])
        h_ij = f4.sub(a_j, a_i)
        expected = []
        for u in _chosen_indices(scheme, j):
            zu = f4.zeta[u]
            # h_(i,u)(P_j) = L(zeta_u * h) / (c * h) evaluated directly
            val = f4.div(lin(f4.mul(zu, h_ij)), f4.mul(lin.c, h_ij))
            coeff = f4.mul(int(scheme.w[j]), val)
            expected.append(f4.trace(f4.mul(coeff, int(cw.symbols[j]))))
        assert list(repair.helper_response(scheme, j, int(cw.symbols[j]))) == expected


def _chosen_indices(scheme, j):
    """Recover which u-indices the scheme selected for helper j."""
    tw = scheme.code.tower
    out = []
    for v in range(scheme.counts[j]):
        target = tw.div(int(scheme.mu[j][v]), int(scheme.w[j]))
        matches = [u for u in range(tw.t) if int(scheme.table[u, j]) == target]
        out.append(matches[0])
    return out


# ----------------------------------------------------------------------
# end-to-end correctness
# ----------------------------------------------------------------------


def test_rs_gf4_exhaustive():
    f4 = tower(2, 2)
    rs = codes.rs_code(f4, k=2, n=4)
    for m0 in range(4):
        for m1 in range(4):
            cw = codes.encode(rs, [m0, m1])
            for i in range(4):
                scheme = repair.build_scheme(rs, i, l=1)
                value, transcript = repair.run_repair(scheme, cw.symbols)
                assert value.code == cw.symbols[i]
                assert transcript.total_symbols == 3
                assert transcript.total_bits == 3.0


def test_rs_gf16_all_targets():
    f16 = tower(2, 4)
    rs = codes.rs_code(f16, k=8, n=16)
    rng = np.random.default_rng(1)
    cw = codes.encode(rs, rng.integers(0, 16, size=8))
    for i in range(16):
        scheme = repair.build_scheme(rs, i, l=3)
        value, transcript = repair.run_repair(scheme, cw.symbols)
        assert value.code == cw.symbols[i]
        assert transcript.total_symbols == 15


def test_zero_codeword_zero_responses():
    hc = herm_code(2, 2, s=5)
    scheme = repair.build_scheme(hc, 3, l=1)
    value, transcript = repair.run_repair(scheme, np.zeros(8, dtype=np.int64))
    assert value.code == 0
    assert all(not any(r) for r in transcript.responses.values())


@pytest.mark.parametrize(
    "p,t,s,l,variant",
    [
        (2, 2, 5, 1, repair.VARIANT_LINE),
        (2, 2, 4, 1, repair.VARIANT_WEAK),
        (3, 2, 9, 1, repair.VARIANT_WEAK),
        (2, 4, 20, 1, repair.VARIANT_LINE),
        (2, 4, 20, 2, repair.VARIANT_LINE),
    ],
)
def test_repair_matches_truth_and_decode_oracle(p, t, s, l, variant):
    code = herm_code(p, t, s=s)
    tw = code.tower
    rng = np.random.default_rng(p * t + s)
    for _ in range(40):
        msg = rng.integers(0, tw.q, size=code.k)
        cw = codes.encode(code, msg)
        i = int(rng.integers(code.n))
        scheme = repair.build_scheme(code, i, l=l, variant=variant)
        value, _ = repair.run_repair(scheme, cw.symbols)
        others = [j for j in range(code.n) if j != i]
        oracle = codes.erasure_decode(code, [(j, int(cw.symbols[j])) for j in others])
        assert value.code == cw.symbols[i] == oracle.symbols[i]


def test_sub_helper_regime_exact_bandwidth():
    code = herm_code(2, 4, s=8)
    rng = np.random.default_rng(7)
    for _ in range(30):
        i = int(rng.integers(code.n))
        others = np.asarray([j for j in range(code.n) if j != i])
        helpers = sorted(rng.choice(others, size=14, replace=False).tolist())
        cw = codes.encode(code, rng.integers(0, 16, size=code.k))
        scheme = repair.build_scheme(code, i, helpers=helpers, l=1)
        value, transcript = repair.run_repair(scheme, cw.symbols)
        assert value.code == cw.symbols[i]
        assert transcript.total_symbols == 14 * 3  # d * (t - l)
        assert not scheme.pruned


def test_weak_bandwidth_bound():
    for p, t, s, d in [(2, 2, 4, 7), (3, 2, 9, 26)]:
        code = herm_code(p, t, s=s)
        tw = code.tower
        rng = np.random.default_rng(s)
        for _ in range(20):
            i = int(rng.integers(code.n))
            others = np.asarray([j for j in range(code.n) if j != i])
            helpers = sorted(rng.choice(others, size=d, replace=False).tolist())
            scheme = repair.build_scheme(code, i, helpers=helpers, l=1, variant=repair.VARIANT_WEAK)
            assert len(scheme.extra_zeros) <= code.genus
            measured, _ = repair.bandwidth(scheme)
            assert measured <= repair.bound_symbols(scheme)
            cw = codes.encode(code, rng.integers(0, tw.q, size=code.k))
            value, _ = repair.run_repair(scheme, cw.symbols)
            assert value.code == cw.symbols[i]


def test_full_length_shortcut_consistent_with_search():
    """All-ones dual and generic dual search must rebuild the same symbol."""
    code = herm_code(2, 2, s=4)
    rng = np.random.default_rng(13)
    cw = codes.encode(code, rng.integers(0, 4, size=code.k))
    i = 5
    full = repair.build_scheme(code, i, l=1)  # s=4 <= n+2g-2-3=5: all-ones path
    assert (full.w == 1).all()
    aug = codes.augmented_generator(code, 3)
    w = codes.dual_support_vector(aug, code.tower, i, [j for j in range(8) if j != i])
    searched = repair.build_scheme(code, i, l=1, dual_vector=w)
    v1, _ = repair.run_repair(full, cw.symbols)
    v2, _ = repair.run_repair(searched, cw.symbols)
    assert v1.code == v2.code == cw.symbols[i]


def test_dual_vector_scaling_invariance():
    f16 = tower(2, 4)
    rs = codes.rs_code(f16, k=6, n=16)
    rng = np.random.default_rng(5)
    cw = codes.encode(rs, rng.integers(0, 16, size=6))
    base = repair.build_scheme(rs, 3, l=2)
    for lam in (2, 7, 15):
        scaled = f16.mul_arr(np.int64(lam), base.w)
        scheme = repair.build_scheme(rs, 3, l=2, dual_vector=scaled)
        value, _ = repair.run_repair(scheme, cw.symbols)
        assert value.code == cw.symbols[3]


def test_bandwidth_justifies_over_trivial_repair():
    """Sub-symbol download beats shipping threshold whole symbols."""
    configs = [
        repair.build_scheme(codes.rs_code(tower(2, 4), k=8, n=16), 0, l=3),
        repair.build_scheme(herm_code(8, 2, s=475), 0, l=1),
    ]
    for scheme in configs:
        measured, _ = repair.bandwidth(scheme)
        assert measured < repair.trivial_symbols(scheme)


def test_bandwidth_survey_full_and_sampled():
    code = herm_code(2, 2, s=5)
    worst, checked = repair.bandwidth_survey(code, l=1, variant=repair.VARIANT_LINE)
    assert checked == code.n
    assert worst == 7  # (n-1) * (t-l)
    sub = herm_code(2, 4, s=8)
    worst, checked = repair.bandwidth_survey(sub, l=1, variant=repair.VARIANT_LINE, d=14, trials=10)
    assert checked == 10
    assert worst == 42


# ----------------------------------------------------------------------
# errors and edge cases
# ----------------------------------------------------------------------


def test_precondition_errors_name_the_inequality():
    f4 = tower(2, 2)
    rs = codes.rs_code(f4, k=2, n=4)
    with pytest.raises(repair.RepairPreconditionError, match=r"s <= d - \(p\*\*l - 1\)"):
        repair.build_scheme(rs, 0, l=2)
    hc = herm_code(2, 4, s=8)
    with pytest.raises(repair.RepairPreconditionError, match=r"r \+ 1"):
        repair.build_scheme(hc, 0, helpers=list(range(1, 9)), l=1)
    with pytest.raises(repair.RepairPreconditionError, match="genus"):
        repair.build_scheme(hc, 0, helpers=list(range(1, 12)), l=1, variant=repair.VARIANT_WEAK)
    big = herm_code(2, 2, s=6)
    with pytest.raises(repair.RepairPreconditionError, match=r"n \+ 2\*genus"):
        repair.build_scheme(big, 0, l=1)


def test_variant_code_kind_mismatch():
    f4 = tower(2, 2)
    rs = codes.rs_code(f4, k=2, n=4)
    hc = herm_code(2, 2, s=5)
    with pytest.raises(ValueError):
        repair.build_scheme(rs, 0, l=1, variant=repair.VARIANT_LINE)
    with pytest.raises(ValueError):
        repair.build_scheme(hc, 0, l=1, variant=repair.VARIANT_RS)
    with pytest.raises(ValueError):
        repair.build_scheme(hc, 0, l=1, variant="bogus")


def test_helper_validation():
    hc = herm_code(2, 2, s=4)
    with pytest.raises(ValueError):
        repair.build_scheme(hc, 0, helpers=[0, 1, 2, 3, 4, 5, 6], l=1)
    with pytest.raises(ValueError):
        repair.build_scheme(hc, 0, helpers=[], l=1)
    with pytest.raises(ValueError):
        repair.build_scheme(hc, 9, l=1)


def test_helper_response_validation():
    hc = herm_code(2, 2, s=5)
    scheme = repair.build_scheme(hc, 2, l=1)
    with pytest.raises(ValueError):
        repair.helper_response(scheme, 2, 1)
    resp = {j: repair.helper_response(scheme, j, 0) for j in scheme.active}
    missing = dict(resp)
    missing.pop(scheme.active[0])
    with pytest.raises(ValueError, match="missing response"):
        repair.reconstruct(scheme, missing)
    short = dict(resp)
    short[scheme.active[0]] = resp[scheme.active[0]][:-1] + (0, 0)
    with pytest.raises(ValueError, match="sent"):
        repair.reconstruct(scheme, short)


def test_supplied_dual_vector_validation():
    hc = herm_code(2, 2, s=4)
    bad = np.ones(8, dtype=np.int64)
    bad[3] = 0
    with pytest.raises(codes.DualVectorError):
        repair.build_scheme(hc, 3, l=1, dual_vector=bad)
    small = herm_code(2, 2, s=2)
    outside = np.zeros(8, dtype=np.int64)
    outside[0] = 1
    outside[1] = 1
    with pytest.raises(codes.DualVectorError):
        repair.build_scheme(small, 0, helpers=[2, 3, 4, 5, 6], l=1, dual_vector=outside)


def test_scheme_and_transcript_serialize_to_json():
    import json

    code = herm_code(3, 2, s=9)
    scheme = repair.build_scheme(code, 4, l=1)
    blob = repair.scheme_to_json(scheme)
    json.dumps(blob)  # round-trippable plain data
    assert blob["target"] == 4 and blob["l"] == 1
    assert set(blob["value_table"]) == set(scheme.active)
    tw = code.tower
    for j in scheme.active:
        digs = blob["dual_vector"][j]
        assert tw.from_digits(digs) == int(scheme.w[j])
        assert len(blob["chosen_indices"][j]) == scheme.counts[j] == blob["per_helper_symbols"][j]
    rng = np.random.default_rng(0)
    cw = codes.encode(code, rng.integers(0, 9, size=code.k))
    _, transcript = repair.run_repair(scheme, cw.symbols)
    tr = repair.transcript_to_json(transcript)
    json.dumps(tr)
    assert tr["total_symbols"] == transcript.total_symbols
    assert all(v < tw.p for resp in tr["responses"].values() for v in resp)
