import numpy as np
import pytest

from airmv.channel import PdpConfig
from airmv.encoding import Method
from airmv.simulate import (
    mv_error_batch,
    run_trial_batches,
    simulate_cer,
    stream,
)


class TestStreams:
    def test_keyed_streams_distinct(self):
        a = stream(7, 0, 1).standard_normal(4)
        b = stream(7, 0, 2).standard_normal(4)
        assert not np.allclose(a, b)

    def test_replay(self):
        a = stream(7, 3, 1).standard_normal(4)
        b = stream(7, 3, 1).standard_normal(4)
        np.testing.assert_array_equal(a, b)


class TestRunTrialBatches:
    def test_thread_count_invariance(self):
        def counter(rng, n):
            return int(np.sum(rng.random(n) < 0.3))

        base = run_trial_batches(counter, 9_999, seed=1, key=(4,), threads=1,
                                 batch_size=1000)
        for threads in (2, 5):
            again = run_trial_batches(counter, 9_999, seed=1, key=(4,),
                                      threads=threads, batch_size=1000)
            assert again == base

    def test_covers_all_trials(self):
        def counter(rng, n):
            return n

        assert run_trial_batches(counter, 12_345, seed=0, batch_size=1000) == 12_345

    def test_rejects_zero_trials(self):
        with pytest.raises(ValueError):
            run_trial_batches(lambda rng, n: 0, 0, seed=0)


class TestCerSimulation:
    def test_unanimous_noiseless_flat_is_exact(self):
        for method in Method:
            p, se = simulate_cer(
                method, 4, 5, 5, PdpConfig(1), 0.0, 2_000, seed=21,
                key=(ord(method.value[0]),),
            )
            assert p == 0.0 and se == 0.0

    def test_tie_counts_every_trial(self):
        p, _ = simulate_cer(Method.DIFFERENTIAL, 4, 6, 3, PdpConfig(1), 0.1,
                            1_000, seed=22)
        assert p == 1.0

    def test_unbalanced_beats_balanced(self):
        pdp_cfg = PdpConfig(1)
        near, _ = simulate_cer(Method.INDEXED, 8, 9, 5, pdp_cfg, 0.1, 30_000, seed=23)
        far, _ = simulate_cer(Method.INDEXED, 8, 9, 9, pdp_cfg, 0.1, 30_000, seed=23)
        assert far < near

    def test_batch_reproducibility(self):
        args = (Method.UNCODED, 4, 5, 4, PdpConfig(2, 0.5), 0.5)
        a = mv_error_batch(stream(3, 0), 4_000, *args)
        b = mv_error_batch(stream(3, 0), 4_000, *args)
        assert a == b


class TestEncodeBatch:
    def test_matches_direct_synthesis(self):
        from airmv.huffman import radius_param, synthesize_coeffs
        from airmv.encoding import vote_pattern
        from airmv.simulate import encode_batch

        rng = np.random.default_rng(9)
        for method, K in ((Method.UNCODED, 8), (Method.DIFFERENTIAL, 8),
                          (Method.INDEXED, 16)):
            rp = radius_param(K)
            m = method.votes_per_codeword(K)
            votes = rng.integers(0, 2, size=(40, 3, m)) * 2 - 1
            fast = encode_batch(method, votes, rp)
            direct = synthesize_coeffs(vote_pattern(method, votes), rp)
            np.testing.assert_allclose(fast, direct, atol=1e-12)

    def test_large_codebook_falls_back(self):
        from airmv.huffman import radius_param
        from airmv.simulate import _codebook

        assert _codebook(Method.UNCODED, radius_param(32)) is None
        assert _codebook(Method.INDEXED, radius_param(128)) is not None


def test_snr_sweep_shows_error_floor():
    """More SNR helps, but fading keeps a floor: the drop from 8 to 16 dB
    is a fraction of the drop from 0 to 8 dB (K=16, U=25, N+=22)."""
    pdp_cfg = PdpConfig(1)
    cers = {}
    for snr in (0.0, 8.0, 16.0):
        p, se = simulate_cer(
            Method.INDEXED, 16, 25, 22, pdp_cfg, 10 ** (-snr / 10), 30_000,
            seed=31, key=(int(snr),),
        )
        cers[snr] = (p, se)
    p0, s0 = cers[0.0]
    p8, s8 = cers[8.0]
    p16, s16 = cers[16.0]
    assert p0 - p8 > 3 * (s0 + s8)          # SNR helps at first
    assert p16 <= p8 + 3 * (s8 + s16)       # never worse at high SNR
    assert (p8 - p16) < 0.5 * (p0 - p8)     # but the curve flattens
