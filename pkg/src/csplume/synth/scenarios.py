"""
Named Plume Scenarios

Each scenario is a SynthConfig. DEFAULT mirrors the reference field release:
64x64 pixels, 140 frames, release starting at frame 20, peak near frame 40 and
the scene clear again around frame 70. It carries 64 bands so the 3x3 bulk
coherence of plume-free pixels stays well below 1 in both detection arms.

- WEAK: same geometry, half the concentration
- SMALL: 16x16 pixels, 16 bands over 40 frames, for quick runs and tests
- DRIFTING: plume that drifts, spreads and leaves a dissipated tail
"""

from dataclasses import replace

from csplume.models.synth import SynthConfig

DEFAULT = SynthConfig(
    b=64,
    plateau_size=32,
    signature_width=4.0,
    noise_sigma=0.25,
)

WEAK = replace(DEFAULT, peak_strength=3.0)

SMALL = SynthConfig(
    n1=16,
    n2=16,
    b=16,
    frame_count=40,
    plateau_size=4,
    plume_center=(8.0, 8.0),
    plume_sigma=2.5,
    release_start=8,
    peak=16,
    decay=28,
)

DRIFTING = replace(
    DEFAULT,
    drift=(0.0, 0.2),
    spread_rate=0.01,
    tail_level=0.2,
)

# Registry of all scenarios
_SCENARIOS: dict[str, SynthConfig] = {
    "DEFAULT": DEFAULT,
    "WEAK": WEAK,
    "SMALL": SMALL,
    "DRIFTING": DRIFTING,
}


def default_scenario() -> SynthConfig:
    """
    The canonical release scenario.

    Example:
        >>> cfg = default_scenario()
        >>> (cfg.n1, cfg.n2, cfg.b, cfg.frame_count, cfg.release_start, cfg.peak, cfg.decay)
        (64, 64, 64, 140, 20, 40, 70)
    """
    return DEFAULT


def get_scenario(name: str) -> SynthConfig | None:
    """
    Get a scenario by name.

    Args:
        name: Scenario name (e.g., "default", "SMALL"). Case-insensitive.

    Returns:
        Scenario configuration or None if not found.

    Example:
        >>> get_scenario("small").n1
        16
        >>> get_scenario("missing") is None
        True
    """
    return _SCENARIOS.get(name.upper())


def list_scenarios() -> list[str]:
    """
    List all available scenario names.

    Example:
        >>> list_scenarios()
        ['DEFAULT', 'WEAK', 'SMALL', 'DRIFTING']
    """
    return list(_SCENARIOS.keys())
