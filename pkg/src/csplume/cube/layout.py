"""
Band flattening and spatial cropping.

Each band is flattened row-major: element (r, c) of band j becomes row
r * n2 + c of column j. Every later stage relies on this convention.
"""

import numpy as np

from csplume.errors import DimensionMismatchError, RoiOutOfBoundsError
from csplume.models.cube import FlatCube, HyperCube


def flatten(cube: HyperCube) -> FlatCube:
    """
    Flatten every band of a cube into a column of the n x b matrix X.

    Args:
        cube: Cube of shape n1 x n2 x b.

    Returns:
        FlatCube with n = n1 * n2.

    Example:
        >>> cube = HyperCube(np.array([[[1.0, 2.0], [3.0, 4.0]]]))
        >>> flatten(cube).columns[:, 0].tolist()
        [1.0, 2.0, 3.0, 4.0]
    """
    return FlatCube(cube.data.reshape(cube.b, cube.n1 * cube.n2).T)


def unflatten(flat: FlatCube, n1: int, n2: int) -> HyperCube:
    """
    Rebuild a cube from flattened band columns.

    Args:
        flat: Flattened cube with n = n1 * n2.
        n1: Rows per band.
        n2: Columns per band.

    Returns:
        The n1 x n2 x b cube whose flatten() is ``flat``.

    Raises:
        DimensionMismatchError: If n1 * n2 differs from flat.n.

    Example:
        >>> flat = FlatCube(np.array([[1.0], [2.0], [3.0], [4.0]]))
        >>> unflatten(flat, 2, 2).data[0].tolist()
        [[1.0, 2.0], [3.0, 4.0]]
    """
    if n1 < 1 or n2 < 1 or n1 * n2 != flat.n:
        raise DimensionMismatchError(f"{n1} x {n2} grid does not hold {flat.n} pixels")
    return HyperCube(flat.columns.T.reshape(flat.b, n1, n2))


def extract_roi(cube: HyperCube, r0: int, c0: int, h: int, w: int) -> HyperCube:
    """
    Cut an h x w spatial window out of a cube, keeping every band.

    Args:
        cube: Source cube.
        r0: First row of the window.
        c0: First column of the window.
        h: Window height.
        w: Window width.

    Returns:
        The h x w x b sub-cube.

    Raises:
        RoiOutOfBoundsError: If the window does not fit inside the cube.

    Example:
        >>> cube = HyperCube(np.zeros((20, 128, 128)))
        >>> roi = extract_roi(cube, 32, 32, 64, 64)
        >>> (roi.n1, roi.n2, roi.b)
        (64, 64, 20)
    """
    if min(r0, c0) < 0 or h < 1 or w < 1 or r0 + h > cube.n1 or c0 + w > cube.n2:
        raise RoiOutOfBoundsError(
            f"window rows {r0}:{r0 + h}, cols {c0}:{c0 + w} outside {cube.n1} x {cube.n2}"
        )
    return HyperCube(cube.data[:, r0 : r0 + h, c0 : c0 + w])
