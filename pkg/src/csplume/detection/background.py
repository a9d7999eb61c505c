"""
Background mean and covariance of chemical-free pixels.
"""

import logging
from collections.abc import Sequence

import numpy as np
from scipy.linalg import cholesky

from csplume.errors import DegenerateCovarianceError, EmptySelectionError, InvalidParameterError
from csplume.models.cube import CubeVideo
from csplume.models.detection import BackgroundModel
from csplume.types import FloatArray

logger = logging.getLogger(__name__)

# Diagonal-loading fractions tried in order; each multiplies trace/b.
LOADING_STEPS = (0.0, 1e-6, 1e-4, 1e-2)
MIN_EIGENVALUE_FRACTION = 1e-10


def load_covariance(covariance: FloatArray) -> tuple[FloatArray, float]:
    """
    Apply the smallest diagonal load that makes a covariance well conditioned.

    Tries epsilon in ``LOADING_STEPS`` and returns the first loaded matrix
    Gamma + epsilon * (trace/b) * I whose smallest eigenvalue is at least
    1e-10 * trace/b.

    Args:
        covariance: Symmetric b x b matrix.

    Returns:
        The loaded matrix and the epsilon applied.

    Raises:
        DegenerateCovarianceError: If the trace is zero (all-constant data) or
            no load in the ladder is enough.

    Example:
        >>> loaded, eps = load_covariance(np.array([[0.25, -0.25], [-0.25, 0.25]]))
        >>> eps
        1e-06
    """
    covariance = np.asarray(covariance, dtype=np.float64)
    b = covariance.shape[0]
    scale = float(np.trace(covariance)) / b
    if not scale > 0:
        raise DegenerateCovarianceError(
            "background covariance has zero trace (constant data); "
            "use more varied background frames or load the covariance explicitly"
        )
    identity = np.eye(b)
    for epsilon in LOADING_STEPS:
        loaded = covariance + epsilon * scale * identity
        if np.linalg.eigvalsh(loaded)[0] >= MIN_EIGENVALUE_FRACTION * scale:
            if epsilon > 0:
                logger.info("covariance loaded with epsilon=%g", epsilon)
            return loaded, epsilon
    raise DegenerateCovarianceError(
        f"covariance stays singular after loading with epsilon={LOADING_STEPS[-1]}"
    )


def background_from_covariance(
    mean: FloatArray, covariance: FloatArray, pixel_count: int = 0
) -> BackgroundModel:
    """
    Build a background model from a known mean and covariance.

    The covariance is symmetrized and loaded as in ``load_covariance``.
    """
    mean = np.array(mean, dtype=np.float64)
    covariance = np.array(covariance, dtype=np.float64)
    if covariance.shape != (mean.shape[0], mean.shape[0]):
        raise InvalidParameterError(
            f"covariance shape {covariance.shape} does not match mean length {mean.shape[0]}"
        )
    covariance = 0.5 * (covariance + covariance.T)
    loaded, epsilon = load_covariance(covariance)
    factor = cholesky(loaded, lower=True)
    for array in (mean, loaded, factor):
        array.setflags(write=False)
    return BackgroundModel(
        mean=mean,
        covariance=loaded,
        epsilon=epsilon,
        cholesky=factor,
        pixel_count=pixel_count,
    )


def estimate_background(video: CubeVideo, frame_indices: Sequence[int]) -> BackgroundModel:
    """
    Estimate the background mean and MLE covariance from chemical-free frames.

    Gamma = (1/N) sum (x - mean)(x - mean)^T over all N pixels of the given
    frames, loaded when needed (always when N < b).

    Args:
        video: The video the frames come from.
        frame_indices: Frames known to contain no target chemical.

    Returns:
        The background model.

    Raises:
        EmptySelectionError: If no frames are given.
        InvalidParameterError: If an index is outside the video.
        DegenerateCovarianceError: If the selected pixels are all identical.
    """
    indices = [int(i) for i in frame_indices]
    if not indices:
        raise EmptySelectionError("background estimation needs at least one frame")
    outside = [i for i in indices if not 0 <= i < len(video)]
    if outside:
        raise InvalidParameterError(f"background frames {outside} outside video of {len(video)}")
    pixels = np.concatenate([video.frames[i].pixels() for i in indices])
    mean = pixels.mean(axis=0)
    covariance = np.atleast_2d(np.cov(pixels, rowvar=False, bias=True))
    logger.debug("background from %d frames, %d pixels", len(indices), pixels.shape[0])
    return background_from_covariance(mean, covariance, pixel_count=pixels.shape[0])
