"""
Synthetic plume videos and named scenarios.
"""

from csplume.synth.generator import (
    envelope,
    generate_background,
    generate_video,
    plume_profile,
    signature_for,
)
from csplume.synth.scenarios import default_scenario, get_scenario, list_scenarios

__all__ = [
    # generator
    "generate_video",
    "generate_background",
    "envelope",
    "plume_profile",
    "signature_for",
    # scenarios
    "default_scenario",
    "get_scenario",
    "list_scenarios",
]
