"""
Bulk (multipulse) coherence over a square spatial neighborhood.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from csplume.errors import InvalidParameterError
from csplume.models.detection import DetectionMap


def bulk_coherence(detection_map: DetectionMap, radius: int = 1) -> DetectionMap:
    """
    Combine per-pixel scores c_i into 1 - prod(1 - c_i) over each neighborhood.

    The neighborhood is the (2r+1) x (2r+1) window centred on the pixel,
    truncated at the image border.

    Args:
        detection_map: Per-pixel scores in [0, 1].
        radius: Window radius r; 0 returns the map unchanged.

    Returns:
        The bulk coherence map.

    Example:
        >>> m = DetectionMap(np.array([[0.5, 0.5, 0.0]]))
        >>> bulk_coherence(m, 1).values.tolist()
        [[0.75, 0.75, 0.5]]
    """
    if radius < 0:
        raise InvalidParameterError(f"radius must be non-negative, got {radius}")
    if radius == 0:
        return detection_map
    complement = np.pad(1.0 - detection_map.values, radius, mode="constant", constant_values=1.0)
    width = 2 * radius + 1
    windows = sliding_window_view(complement, (width, width))
    return DetectionMap(np.clip(1.0 - windows.prod(axis=(2, 3)), 0.0, 1.0))
