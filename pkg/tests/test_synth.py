"""
Tests for the synthetic plume generator and the scenario registry.
"""

from dataclasses import replace

import numpy as np
import pytest

from csplume.cube.layout import flatten
from csplume.errors import InvalidParameterError
from csplume.models.synth import SynthConfig
from csplume.synth import (
    default_scenario,
    envelope,
    generate_background,
    generate_video,
    get_scenario,
    list_scenarios,
    plume_profile,
    signature_for,
)
from csplume.synth.scenarios import DEFAULT, SMALL
from csplume.wavelet.haar import haar_forward_cube


def quiet(cfg, **changes):
    """Same scenario without noise."""
    return replace(cfg, noise_sigma=0.0, **changes)


class TestEnvelope:
    """Tests for the release envelope."""

    def test_default_anchors(self):
        cfg = DEFAULT
        assert envelope(cfg, 0) == 0.0
        assert envelope(cfg, 20) == 0.0
        assert envelope(cfg, 30) == pytest.approx(0.5)
        assert envelope(cfg, 40) == 1.0
        assert envelope(cfg, 55) == pytest.approx(0.5)
        assert envelope(cfg, 70) == 0.0
        assert envelope(cfg, 139) == 0.0

    def test_tail_level(self):
        cfg = replace(DEFAULT, tail_level=0.2)
        assert envelope(cfg, 70) == pytest.approx(0.2)
        assert envelope(cfg, 120) == 0.2

    def test_bounded(self):
        for cfg in (DEFAULT, SMALL, get_scenario("DRIFTING")):
            levels = [envelope(cfg, t) for t in range(cfg.frame_count)]
            assert min(levels) >= 0.0
            assert max(levels) == 1.0


class TestSignature:
    """Tests for signature_for."""

    def test_unit_norm_line(self):
        s = signature_for(DEFAULT)
        assert s.shape == (64,)
        assert np.linalg.norm(s) == pytest.approx(1.0)
        assert np.argmax(s) in (31, 32)

    def test_configured_signature_normalized(self):
        cfg = replace(SMALL, signature=tuple([0.0] * 15 + [3.0]))
        np.testing.assert_allclose(signature_for(cfg), [0.0] * 15 + [1.0])


class TestGenerateVideo:
    """Tests for generate_video."""

    def test_shapes(self, small_scenario):
        video, truth = generate_video(small_scenario)
        assert len(video) == 40
        assert (video.b, video.n1, video.n2) == (16, 16, 16)
        assert truth.alpha.shape == (40, 16, 16)
        assert truth.mask.shape == (40, 16, 16)

    def test_no_plume_no_noise_frames_identical(self, small_scenario):
        """kappa = 0 and no noise: every frame is the background."""
        video, truth = generate_video(quiet(small_scenario, peak_strength=0.0))
        for frame in video.frames[1:]:
            np.testing.assert_array_equal(frame.data, video.frames[0].data)
        assert not truth.mask.any()

    def test_peak_centre_adds_kappa_signature(self, small_scenario):
        """At the peak frame the centre pixel is background + kappa * s."""
        cfg = quiet(small_scenario)
        video, truth = generate_video(cfg)
        r, c = (int(v) for v in cfg.plume_center)
        difference = video.frames[cfg.peak].data[:, r, c] - video.frames[0].data[:, r, c]
        np.testing.assert_allclose(difference, cfg.peak_strength * truth.signature, atol=1e-12)
        assert truth.alpha[cfg.peak, r, c] == pytest.approx(cfg.peak_strength)

    def test_before_release_is_background(self, small_scenario):
        _, truth = generate_video(small_scenario)
        assert not truth.alpha[: small_scenario.release_start + 1].any()
        assert truth.plume_pixels(small_scenario.peak) > 0

    def test_deterministic(self, small_scenario):
        first, _ = generate_video(small_scenario)
        second, _ = generate_video(small_scenario)
        np.testing.assert_array_equal(first.stack(), second.stack())

    def test_workers_do_not_change_output(self, small_scenario):
        serial, _ = generate_video(small_scenario)
        threaded, _ = generate_video(small_scenario, workers=4)
        np.testing.assert_array_equal(serial.stack(), threaded.stack())

    def test_seed_changes_output(self, small_scenario):
        first, _ = generate_video(small_scenario)
        other, _ = generate_video(replace(small_scenario, seed=1))
        assert not np.array_equal(first.stack(), other.stack())

    def test_noise_level(self, small_scenario):
        """Residual after removing the noiseless video has the configured spread."""
        noisy, _ = generate_video(small_scenario)
        clean, _ = generate_video(quiet(small_scenario))
        residual = noisy.stack() - clean.stack()
        assert residual.std() == pytest.approx(small_scenario.noise_sigma, rel=0.05)

    def test_mask_grows_with_kappa(self, small_scenario):
        """Zero kappa has an empty mask; a stronger plume never loses mask pixels."""
        masks = [generate_video(replace(small_scenario, peak_strength=k))[1].mask for k in (0.0, 3.0, 6.0)]
        assert not masks[0].any()
        assert np.all(masks[1] <= masks[2])

    def test_mask_threshold(self, small_scenario):
        _, truth = generate_video(small_scenario)
        np.testing.assert_array_equal(truth.mask, truth.alpha > 0.05 * small_scenario.peak_strength)


class TestBackground:
    """Tests for generate_background and the plume profile."""

    def test_offsets_near_level(self, small_scenario):
        background = generate_background(small_scenario, np.random.default_rng(3))
        minimum = small_scenario.background_level * 0.9
        maximum = small_scenario.background_level * 1.1 + small_scenario.background_range
        assert background.min() >= minimum
        assert background.max() <= maximum

    def test_plateau_background_is_haar_sparse(self, small_scenario):
        """4x4 plateaus leave at most n/4 non-zero Haar coefficients per band."""
        video, _ = generate_video(quiet(small_scenario, peak_strength=0.0))
        coeffs = haar_forward_cube(flatten(video.frames[0])).columns
        nonzero = np.count_nonzero(np.abs(coeffs) > 1e-9, axis=0)
        assert np.all(nonzero <= 256 // 4)

    def test_polynomial_background(self, small_scenario):
        cfg = quiet(small_scenario, background_kind="polynomial", peak_strength=0.0)
        video, _ = generate_video(cfg)
        assert np.all(np.isfinite(video.stack()))
        assert video.stack().std() > 0

    def test_drift_moves_peak(self):
        cfg = replace(SMALL, drift=(0.0, 0.25))
        profile = plume_profile(cfg)
        early = np.unravel_index(np.argmax(profile[cfg.release_start + 1]), profile.shape[1:])
        late = np.unravel_index(np.argmax(profile[cfg.decay - 1]), profile.shape[1:])
        assert early[0] == late[0]
        assert late[1] > early[1]

    def test_spread_widens_plume(self):
        still = plume_profile(SMALL)
        spreading = plume_profile(replace(SMALL, spread_rate=0.05))
        t = SMALL.peak
        assert spreading[t].sum() > still[t].sum()


class TestSynthConfig:
    """Tests for SynthConfig validation and serialization."""

    def test_round_trip(self):
        cfg = replace(SMALL, drift=(0.5, -0.5), signature=tuple(range(1, 17)))
        assert SynthConfig.from_dict(cfg.to_dict()) == cfg

    def test_unknown_field(self):
        with pytest.raises(InvalidParameterError):
            SynthConfig.from_dict({"n1": 8, "colour": "red"})

    @pytest.mark.parametrize(
        "changes",
        [
            {"peak": 10, "release_start": 10},
            {"decay": 200},
            {"peak_strength": -1.0},
            {"plateau_size": 3},
            {"background_kind": "stripes"},
            {"tail_level": 1.5},
            {"signature": (1.0, 2.0)},
        ],
    )
    def test_invalid(self, changes):
        with pytest.raises(InvalidParameterError):
            replace(DEFAULT, **changes)


class TestScenarios:
    """Tests for the scenario registry."""

    def test_default(self):
        cfg = default_scenario()
        assert (cfg.n1, cfg.n2, cfg.b, cfg.frame_count) == (64, 64, 64, 140)
        assert (cfg.release_start, cfg.peak, cfg.decay) == (20, 40, 70)

    def test_lookup(self):
        assert get_scenario("weak").peak_strength == 3.0
        assert get_scenario("Small") is SMALL
        assert get_scenario("nonexistent") is None

    def test_list(self):
        assert list_scenarios() == ["DEFAULT", "WEAK", "SMALL", "DRIFTING"]
