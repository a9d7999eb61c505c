"""
Tests for cube models, flattening and ROI extraction.
"""

import numpy as np
import pytest

from csplume.cube.layout import extract_roi, flatten, unflatten
from csplume.errors import DimensionMismatchError, InvalidParameterError, RoiOutOfBoundsError
from csplume.models.cube import CubeVideo, FlatCube, HyperCube, Spectrum


class TestHyperCube:
    """Tests for the HyperCube model."""

    def test_dimensions(self):
        """Data of shape (b, n1, n2) exposes n1, n2 and b."""
        cube = HyperCube(np.zeros((20, 64, 32)))
        assert (cube.n1, cube.n2, cube.b) == (64, 32, 20)

    def test_values_length(self):
        """Flat values hold exactly n1*n2*b elements."""
        cube = HyperCube(np.ones((3, 4, 5)))
        assert cube.values.size == 60

    def test_rejects_nan(self):
        """Non-finite data is refused."""
        data = np.zeros((1, 2, 2))
        data[0, 1, 1] = np.nan
        with pytest.raises(InvalidParameterError):
            HyperCube(data)

    def test_rejects_wrong_rank(self):
        """A 2-D array is not a cube."""
        with pytest.raises(InvalidParameterError):
            HyperCube(np.zeros((4, 4)))

    def test_is_immutable(self):
        """The stored array cannot be written to."""
        cube = HyperCube(np.zeros((1, 2, 2)))
        with pytest.raises(ValueError):
            cube.data[0, 0, 0] = 1.0

    def test_pixels_round_trip(self, rng):
        """from_pixels inverts pixels."""
        cube = HyperCube(rng.normal(size=(3, 4, 5)))
        back = HyperCube.from_pixels(cube.pixels(), 4, 5)
        np.testing.assert_array_equal(back.data, cube.data)

    def test_pixel_spectrum(self, rng):
        """Row r*n2+c of pixels() is the spectrum at (r, c)."""
        cube = HyperCube(rng.normal(size=(3, 4, 5)))
        np.testing.assert_array_equal(cube.pixels()[2 * 5 + 3], cube.data[:, 2, 3])


class TestFlatten:
    """Tests for flatten."""

    def test_single_element(self):
        """A 1x1x1 cube flattens to one column [5.0]."""
        flat = flatten(HyperCube(np.array([[[5.0]]])))
        assert flat.n == 1
        assert flat.columns[:, 0].tolist() == [5.0]

    def test_row_major(self):
        """Rows [[1, 2], [3, 4]] flatten to [1, 2, 3, 4]."""
        flat = flatten(HyperCube(np.array([[[1.0, 2.0], [3.0, 4.0]]])))
        assert flat.columns[:, 0].tolist() == [1.0, 2.0, 3.0, 4.0]

    def test_band_order_preserved(self, rng):
        """Each column follows the index arithmetic r*n2 + c of its band."""
        data = rng.normal(size=(2, 2, 2))
        flat = flatten(HyperCube(data))
        assert flat.columns.shape == (4, 2)
        for j in range(2):
            for r in range(2):
                for c in range(2):
                    assert flat.columns[r * 2 + c, j] == data[j, r, c]


class TestUnflatten:
    """Tests for unflatten."""

    def test_round_trip(self, rng):
        """unflatten(flatten(C)) = C for a random 4x4x3 cube."""
        cube = HyperCube(rng.normal(size=(3, 4, 4)))
        np.testing.assert_array_equal(unflatten(flatten(cube), 4, 4).data, cube.data)

    def test_round_trip_random_shapes(self, rng):
        """Both compositions are identities over random shapes."""
        for _ in range(10):
            b, n1, n2 = rng.integers(1, 7, size=3)
            cube = HyperCube(rng.normal(size=(b, n1, n2)))
            flat = flatten(cube)
            np.testing.assert_array_equal(unflatten(flat, n1, n2).data, cube.data)
            np.testing.assert_array_equal(flatten(unflatten(flat, n1, n2)).columns, flat.columns)

    def test_mismatch(self):
        """n=4 cannot fill a 4x2 grid."""
        with pytest.raises(DimensionMismatchError):
            unflatten(FlatCube(np.zeros((4, 1))), 4, 2)

    def test_column_to_band(self):
        """Column [1, 2, 3, 4] on a 2x2 grid is [[1, 2], [3, 4]]."""
        cube = unflatten(FlatCube(np.array([[1.0], [2.0], [3.0], [4.0]])), 2, 2)
        assert cube.data[0].tolist() == [[1.0, 2.0], [3.0, 4.0]]


class TestExtractRoi:
    """Tests for extract_roi."""

    def test_full_window_is_identity(self, rng):
        """Extracting the whole grid returns the same cube."""
        cube = HyperCube(rng.normal(size=(2, 6, 5)))
        np.testing.assert_array_equal(extract_roi(cube, 0, 0, 6, 5).data, cube.data)

    def test_field_of_view(self):
        """A 64x64 window of a 128x128x20 cube is 64x64x20."""
        roi = extract_roi(HyperCube(np.zeros((20, 128, 128))), 32, 32, 64, 64)
        assert (roi.n1, roi.n2, roi.b) == (64, 64, 20)

    def test_out_of_bounds(self):
        """r0 + h beyond n1 raises."""
        with pytest.raises(RoiOutOfBoundsError):
            extract_roi(HyperCube(np.zeros((1, 8, 8))), 4, 0, 5, 8)

    def test_commutes_with_per_pixel_operation(self, rng):
        """Cropping then scoring pixels equals scoring then cropping."""
        cube = HyperCube(rng.normal(size=(3, 8, 8)))

        def score(c):
            return np.linalg.norm(c.data, axis=0)

        np.testing.assert_allclose(
            score(extract_roi(cube, 2, 1, 4, 5)), score(cube)[2:6, 1:6], rtol=1e-15
        )


class TestCubeVideo:
    """Tests for the CubeVideo model."""

    def test_requires_frames(self):
        """An empty video is invalid."""
        with pytest.raises(InvalidParameterError):
            CubeVideo(())

    def test_shapes_must_match(self):
        """All frames share one shape."""
        with pytest.raises(DimensionMismatchError):
            CubeVideo((HyperCube(np.zeros((1, 2, 2))), HyperCube(np.zeros((1, 2, 3)))))

    def test_stack_round_trip(self, rng):
        """from_array and stack are inverse."""
        array = rng.normal(size=(3, 2, 4, 4))
        video = CubeVideo.from_array(array)
        assert len(video) == 3
        np.testing.assert_array_equal(video.stack(), array)


class TestSpectrum:
    """Tests for the Spectrum model."""

    def test_normalized(self):
        """normalized() has unit norm."""
        assert np.linalg.norm(Spectrum([3.0, 4.0]).normalized().values) == pytest.approx(1.0)

    def test_zero_cannot_normalize(self):
        """A zero spectrum has no direction."""
        with pytest.raises(InvalidParameterError):
            Spectrum([0.0, 0.0]).normalized()
