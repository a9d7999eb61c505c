"""
Adaptive coherence estimator (ACE).

ace(x, s) = (s^T G^-1 x)^2 / ((s^T G^-1 s)(x^T G^-1 x)), the squared cosine
between pixel and signature after whitening with the background covariance G.
G^-1 is applied through its Cholesky factor, never inverted.
"""

import numpy as np
from scipy.linalg import solve_triangular

from csplume.errors import DegenerateSignatureError, DimensionMismatchError
from csplume.models.cube import HyperCube, Spectrum
from csplume.models.detection import BackgroundModel, DetectionMap
from csplume.types import FloatArray


def _whitened_signature(
    signature: Spectrum | FloatArray, model: BackgroundModel, signature_is_absolute: bool
) -> FloatArray:
    s = np.asarray(signature.values if isinstance(signature, Spectrum) else signature, dtype=np.float64)
    if s.shape != (model.b,):
        raise DimensionMismatchError(f"signature has length {s.shape[0]}, model has {model.b} bands")
    if signature_is_absolute:
        s = s - model.mean
    if not np.any(s):
        raise DegenerateSignatureError("target signature is zero after centering")
    return solve_triangular(model.cholesky, s, lower=True)


def _coherence(s_hat: FloatArray, z: FloatArray) -> FloatArray:
    """Squared whitened cosine of s_hat against every column of z."""
    numerator = (s_hat @ z) ** 2
    denominator = (s_hat @ s_hat) * np.einsum("ij,ij->j", z, z)
    values = np.divide(numerator, denominator, out=np.zeros_like(numerator), where=denominator > 0)
    return np.clip(values, 0.0, 1.0)


def ace(
    x: Spectrum | FloatArray,
    signature: Spectrum | FloatArray,
    model: BackgroundModel,
    demean: bool = True,
    signature_is_absolute: bool = False,
) -> float:
    """
    ACE score of one pixel under test.

    Args:
        x: Pixel spectrum of length b.
        signature: Target signature, additive to the background unless
            ``signature_is_absolute``.
        model: Background model.
        demean: Subtract the background mean from x.
        signature_is_absolute: Subtract the background mean from the signature too.

    Returns:
        Score in [0, 1]; 0 when the centered pixel is zero.

    Raises:
        DegenerateSignatureError: If the (centered) signature is zero.

    Example:
        >>> from csplume.detection.background import background_from_covariance
        >>> model = background_from_covariance(np.zeros(2), np.eye(2))
        >>> round(ace(np.array([1.0, 1.0]), np.array([1.0, 0.0]), model), 12)
        0.5
    """
    s_hat = _whitened_signature(signature, model, signature_is_absolute)
    pixel = np.asarray(x.values if isinstance(x, Spectrum) else x, dtype=np.float64)
    if pixel.shape != (model.b,):
        raise DimensionMismatchError(f"pixel has length {pixel.shape[0]}, model has {model.b} bands")
    if demean:
        pixel = pixel - model.mean
    z = solve_triangular(model.cholesky, pixel, lower=True)
    return float(_coherence(s_hat, z[:, None])[0])


def ace_map(
    cube: HyperCube,
    signature: Spectrum | FloatArray,
    model: BackgroundModel,
    demean: bool = True,
    signature_is_absolute: bool = False,
) -> DetectionMap:
    """ACE of every pixel of a cube, laid out on its n1 x n2 grid."""
    if cube.b != model.b:
        raise DimensionMismatchError(f"cube has {cube.b} bands, model has {model.b}")
    s_hat = _whitened_signature(signature, model, signature_is_absolute)
    pixels = cube.pixels()
    if demean:
        pixels = pixels - model.mean
    z = solve_triangular(model.cholesky, pixels.T, lower=True)
    return DetectionMap(_coherence(s_hat, z).reshape(cube.n1, cube.n2))
