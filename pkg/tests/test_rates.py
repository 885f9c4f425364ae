import math

import numpy as np
import pytest

from conftest import cn
from mimorate.beamforming import BeamformerSet, combiner, precoder, zf_precoder
from mimorate.core import ConfigError, LinkDirection, Normalization, Scheme, SystemConfig
from mimorate.linalg import column_norm_sq
from mimorate.rates import (CHUNK_TRIALS, Link, RateEstimate, downlink_sinr, ergodic_sum_rate,
                            ergodic_zf_mat_u1, sum_rate, trial_rates, uplink_sinr)

DL, UL = LinkDirection.DOWNLINK, LinkDirection.UPLINK
VEC, MAT = Normalization.VECTOR, Normalization.MATRIX


def test_sum_rate():
    assert sum_rate([0.0, 0.0]) == 0
    assert sum_rate([1.0, 3.0]) == 3
    assert sum_rate([7.0]) == 3


def test_downlink_identity_channel():
    g = precoder(np.eye(2), Scheme.ZF, VEC)
    assert np.allclose(downlink_sinr(np.eye(2), g, 1.0), [0.5, 0.5])


@pytest.mark.parametrize("mode", [VEC, MAT])
def test_single_user_mrt(rng, mode):
    h = cn(rng, 1, 12)
    pt = 0.7
    sinr = downlink_sinr(h, precoder(h, Scheme.MRT, mode), pt)
    assert sinr[0] == pytest.approx(pt * np.sum(np.abs(h) ** 2))


def test_zf_vector_sinr_matches_column_norms(rng):
    h = cn(rng, 50, 5, 11)
    pt = 2.5
    f = zf_precoder(h)
    sinr = downlink_sinr(h, precoder(h, Scheme.ZF, VEC), pt)
    assert np.allclose(sinr * 5 * column_norm_sq(f) / pt, 1.0, atol=1e-8)


def test_mrc_single_user(rng):
    h = cn(rng, 1, 9)
    pu = 3.0
    assert uplink_sinr(h, combiner(h, Scheme.MRC), pu)[0] == pytest.approx(pu * np.sum(np.abs(h) ** 2))


def test_mrc_general_identity(rng):
    h = cn(rng, 4, 10)
    pu = 0.3
    norms = np.sum(np.abs(h) ** 2, axis=1)
    inner = np.abs(np.conj(h) @ h.T) ** 2
    interf = inner.sum(axis=1) - np.diagonal(inner)
    expected = pu * norms**2 / (pu * interf + norms)
    assert np.allclose(uplink_sinr(h, combiner(h, Scheme.MRC), pu), expected)


def test_zf_uplink_small_matrix_oracle(rng):
    h = cn(rng, 2, 3)
    g = h @ np.conj(h.T)
    # Explicit 2x2 inverse diagonal
    det = (g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]).real
    inv_diag = np.array([g[1, 1].real / det, g[0, 0].real / det])
    pu = 1.7
    assert np.allclose(uplink_sinr(h, combiner(h, Scheme.ZF), pu), pu / inv_diag, rtol=1e-8)


@pytest.mark.parametrize("scheme", [Scheme.ZF, Scheme.MRC])
def test_uplink_scale_invariance(rng, scheme):
    h = cn(rng, 4, 10)
    w = combiner(h, scheme)
    scaled = w.matrix.copy()
    scaled[:, 1] *= 5.0
    scaled[:, 3] *= 0.01
    w2 = BeamformerSet(scaled, scheme, Normalization.NONE, UL)
    a, b = uplink_sinr(h, w, 0.8), uplink_sinr(h, w2, 0.8)
    assert np.allclose(a, b, rtol=1e-12, atol=0)


def test_direction_and_shape_checks(rng):
    h = cn(rng, 2, 4)
    with pytest.raises(ValueError):
        downlink_sinr(h, combiner(h, Scheme.MRC), 1.0)
    with pytest.raises(ValueError):
        uplink_sinr(h, precoder(h, Scheme.MRT, VEC), 1.0)
    with pytest.raises(ValueError):
        downlink_sinr(cn(rng, 2, 5), precoder(h, Scheme.MRT, VEC), 1.0)
    w = BeamformerSet(np.zeros((4, 2), complex), Scheme.MRC, Normalization.NONE, UL)
    with pytest.raises(ValueError):
        uplink_sinr(h, w, 1.0)


def test_link_names_roundtrip():
    for name in ("zf-vec", "zf-mat", "mrt-vec", "mrt-mat", "zf-ul", "mrc-ul"):
        assert Link.parse(name).name == name
    for bad in ("mrc-vec", "mrt-ul", "zf-none", "foo"):
        with pytest.raises(ValueError):
            Link.parse(bad)


@pytest.mark.parametrize("k", [2, 8, 20])
def test_amgm_ordering_per_realization(k):
    cfg = SystemConfig(m=24, k=k, trials=1000, seed=3)
    pts = [0.1, 1.0, 10.0]
    vec = trial_rates(cfg, Link(DL, Scheme.ZF, VEC), pts)
    mat = trial_rates(cfg, Link(DL, Scheme.ZF, MAT), pts)
    assert np.all(vec >= mat - 1e-10)


def test_single_trial_equals_its_draw():
    from mimorate.channel import StreamKey, draw_channel

    cfg = SystemConfig(m=6, k=3, pt=0.5, trials=1, seed=42)
    est = ergodic_sum_rate(cfg, DL, Scheme.MRT, MAT)
    h = draw_channel(cfg, StreamKey(42, 0))
    assert est.mean_rate == sum_rate(downlink_sinr(h, precoder(h, Scheme.MRT, MAT), 0.5))
    assert est.std_error == 0 and est.trials == 1


def test_serial_and_parallel_bit_identical():
    cfg = SystemConfig(m=12, k=6, pt=1.0, trials=3 * CHUNK_TRIALS + 17, seed=9)
    a = ergodic_sum_rate(cfg, DL, Scheme.ZF, VEC)
    b = ergodic_sum_rate(cfg, DL, Scheme.ZF, VEC, workers=4)
    assert a == b


def test_std_error_shrinks_with_trials():
    ratios = []
    for seed in range(4):
        small = ergodic_sum_rate(SystemConfig(m=8, k=4, pu=1.0, trials=1000, seed=seed), UL, Scheme.MRC)
        big = ergodic_sum_rate(SystemConfig(m=8, k=4, pu=1.0, trials=4000, seed=seed), UL, Scheme.MRC)
        ratios.append(small.std_error / big.std_error)
    assert np.mean(ratios) == pytest.approx(2.0, rel=0.2)


def test_rate_estimate_from_samples():
    est = RateEstimate.from_samples([1.0, 2.0, 3.0, 4.0])
    assert est.mean_rate == 2.5
    assert est.std_error == pytest.approx(np.std([1, 2, 3, 4], ddof=1) / 2)
    assert est.ci95_halfwidth == pytest.approx(1.96 * est.std_error)


def test_zf_requires_k_at_most_m():
    with pytest.raises(ConfigError):
        ergodic_sum_rate(SystemConfig(m=4, k=5, trials=10), DL, Scheme.ZF, VEC)


def test_zf_mat_u1_single_user_diversity():
    # K = 1: E{1/|f|^2} = E{|h|^2} = M, so the bound is log2(1 + pt M)
    cfg = SystemConfig(m=8, k=1, pt=0.5, trials=4000, seed=5)
    est = ergodic_zf_mat_u1(cfg)
    expected = math.log2(1 + 0.5 * 8)
    assert abs(est.mean_rate - expected) <= 3 * est.std_error


def test_zf_mat_u1_below_vector_bound():
    cfg = SystemConfig(m=24, k=20, pt=1.0, trials=2000, seed=1)
    est = ergodic_zf_mat_u1(cfg)
    assert est.mean_rate <= 20 * math.log2(1 + 5 / 20) + 3 * est.std_error


def test_zf_mat_u1_vanishes_at_zero_power():
    est = ergodic_zf_mat_u1(SystemConfig(m=8, k=4, pt=1e-12, trials=100))
    assert est.mean_rate == pytest.approx(0.0, abs=1e-9)
