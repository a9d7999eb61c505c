"""
Tests for bulk coherence and the persistence gate.
"""

import numpy as np
import pytest

from csplume.detection.coherence import bulk_coherence
from csplume.detection.persistence import persist, persistence_filter, run_lengths
from csplume.errors import InvalidParameterError
from csplume.models.detection import DetectionMap, DetectionSeries


def series_of(values, threshold):
    """DetectionSeries from a (frames, n1, n2) array."""
    maps = tuple(DetectionMap(v) for v in values)
    counts = tuple(int(np.count_nonzero(v > threshold)) for v in values)
    return DetectionSeries(maps=maps, threshold=threshold, counts=counts)


def bulk_brute_force(values, radius):
    n1, n2 = values.shape
    out = np.empty_like(values)
    for r in range(n1):
        for c in range(n2):
            window = values[max(0, r - radius) : r + radius + 1, max(0, c - radius) : c + radius + 1]
            out[r, c] = 1.0 - np.prod(1.0 - window)
    return out


def persist_brute_force(values, threshold, length):
    """Scan each pixel's time series for runs."""
    out = np.zeros_like(values)
    frames = values.shape[0]
    for index in np.ndindex(values.shape[1:]):
        track = values[(slice(None), *index)]
        t = 0
        while t < frames:
            if track[t] > threshold:
                end = t
                while end < frames and track[end] > threshold:
                    end += 1
                if end - t >= length:
                    out[(slice(t, end), *index)] = track[t:end]
                t = end
            else:
                t += 1
    return out


class TestBulkCoherence:
    """Tests for bulk_coherence."""

    def test_radius_zero_is_identity(self, rng):
        """r = 0 leaves every value alone."""
        m = DetectionMap(rng.uniform(size=(5, 7)))
        np.testing.assert_array_equal(bulk_coherence(m, 0).values, m.values)

    def test_three_pixel_row(self):
        """[0.5, 0.5, 0] with r=1 gives [0.75, 0.75, 0.5]."""
        m = DetectionMap(np.array([[0.5, 0.5, 0.0]]))
        np.testing.assert_allclose(bulk_coherence(m, 1).values, [[0.75, 0.75, 0.5]], atol=1e-15)

    def test_certain_pixel_saturates_neighbors(self):
        """A single c=1 forces 1 across its whole window."""
        values = np.zeros((5, 5))
        values[2, 2] = 1.0
        bulk = bulk_coherence(DetectionMap(values), 1).values
        np.testing.assert_array_equal(bulk[1:4, 1:4], 1.0)
        assert bulk[0, 0] == 0.0

    def test_matches_brute_force(self, rng):
        """Window products agree with a direct double loop, borders included."""
        for radius in (1, 2, 3):
            values = rng.uniform(size=(6, 9))
            bulk = bulk_coherence(DetectionMap(values), radius).values
            np.testing.assert_allclose(bulk, bulk_brute_force(values, radius), atol=1e-14)

    def test_never_below_pixel(self, rng):
        """Bulk coherence is at least the pixel's own score and stays in [0, 1]."""
        values = rng.uniform(size=(8, 8))
        bulk = bulk_coherence(DetectionMap(values), 2).values
        assert np.all(bulk >= values - 1e-15)
        assert np.all((bulk >= 0.0) & (bulk <= 1.0))

    def test_monotone(self, rng):
        """Raising any c_i never lowers the result."""
        values = rng.uniform(size=(6, 6))
        raised = values.copy()
        raised[3, 2] = min(1.0, raised[3, 2] + 0.3)
        before = bulk_coherence(DetectionMap(values), 1).values
        after = bulk_coherence(DetectionMap(raised), 1).values
        assert np.all(after >= before - 1e-15)

    def test_negative_radius(self):
        with pytest.raises(InvalidParameterError):
            bulk_coherence(DetectionMap(np.zeros((2, 2))), -1)


class TestRunLengths:
    """Tests for run_lengths and persist on single tracks."""

    def test_runs(self):
        above = np.array([True, True, False, True, True, True, False])
        np.testing.assert_array_equal(run_lengths(above), [2, 2, 0, 3, 3, 3, 0])

    def test_run_of_four_dropped(self):
        """Four frames above threshold, L=5: all zeroed."""
        track = np.array([0.0, 0.9, 0.9, 0.9, 0.9, 0.0])
        np.testing.assert_array_equal(persist(track, 0.5, 5), np.zeros(6))

    def test_run_of_five_kept(self):
        """Five frames above threshold, L=5: all kept."""
        track = np.array([0.0, 0.6, 0.7, 0.8, 0.9, 0.6, 0.1])
        np.testing.assert_array_equal(persist(track, 0.5, 5), [0.0, 0.6, 0.7, 0.8, 0.9, 0.6, 0.0])

    def test_run_touching_both_ends(self):
        track = np.full(5, 0.9)
        np.testing.assert_array_equal(persist(track, 0.5, 5), track)

    def test_equal_to_threshold_breaks_run(self):
        """Runs need values strictly above threshold."""
        track = np.array([0.9, 0.9, 0.5, 0.9, 0.9])
        np.testing.assert_array_equal(persist(track, 0.5, 3), np.zeros(5))


class TestPersistenceFilter:
    """Tests for persistence_filter on whole series."""

    def test_length_one_keeps_above(self, rng):
        """L = 1 keeps exactly the values above threshold."""
        values = rng.uniform(size=(6, 3, 3))
        filtered = persistence_filter(series_of(values, 0.4), 0.4, 1).stack()
        np.testing.assert_array_equal(filtered, np.where(values > 0.4, values, 0.0))

    def test_idempotent(self, rng):
        """Filtering a filtered series changes nothing."""
        values = rng.uniform(size=(12, 4, 4))
        once = persistence_filter(series_of(values, 0.3), 0.3, 3)
        twice = persistence_filter(once, 0.3, 3)
        np.testing.assert_array_equal(once.stack(), twice.stack())
        assert once.counts == twice.counts

    def test_never_increases(self, rng):
        values = rng.uniform(size=(10, 5, 5))
        filtered = persistence_filter(series_of(values, 0.5), 0.5, 2).stack()
        assert np.all(filtered <= values)

    def test_matches_brute_force(self, rng):
        """Vectorized gate agrees with a per-pixel run scan."""
        values = rng.uniform(size=(30, 4, 5))
        for length in (1, 2, 3, 5):
            filtered = persistence_filter(series_of(values, 0.35), 0.35, length).stack()
            np.testing.assert_array_equal(filtered, persist_brute_force(values, 0.35, length))

    def test_counts_recomputed(self):
        values = np.zeros((6, 1, 2))
        values[0:5, 0, 0] = 0.9
        values[2:4, 0, 1] = 0.9
        filtered = persistence_filter(series_of(values, 0.5), 0.5, 5)
        assert filtered.counts == (1, 1, 1, 1, 1, 0)
        assert filtered.threshold == 0.5

    def test_invalid_length(self):
        with pytest.raises(InvalidParameterError):
            persistence_filter(series_of(np.zeros((2, 1, 1)), 0.5), 0.5, 0)
