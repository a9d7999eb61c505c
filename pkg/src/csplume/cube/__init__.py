"""
Cube layout and HSC video I/O.
"""

from csplume.cube.hsc import load_video, save_video
from csplume.cube.layout import extract_roi, flatten, unflatten

__all__ = [
    # layout
    "flatten",
    "unflatten",
    "extract_roi",
    # hsc
    "load_video",
    "save_video",
]
