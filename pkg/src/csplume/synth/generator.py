"""
Synthetic plume release videos with ground truth.

Every frame is background + alpha * signature + noise. The background mixes a
few smooth spatial fields across bands on top of per-band offsets, so each band
is compressible in the Haar basis. Randomness comes from child seeds of
``SeedSequence(cfg.seed)``: one for the background, one per frame for noise.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from csplume.models.cube import CubeVideo, HyperCube, Spectrum
from csplume.models.synth import GroundTruth, SynthConfig
from csplume.types import FloatArray

logger = logging.getLogger(__name__)

# Ground-truth mask keeps pixels whose concentration exceeds this fraction of kappa.
MASK_FRACTION = 0.05


def envelope(cfg: SynthConfig, frame: int) -> float:
    """
    Piecewise-linear release envelope at one frame.

    0 before release_start, rising to 1 at peak, falling to tail_level at
    decay and holding tail_level afterwards.

    Example:
        >>> cfg = SynthConfig()
        >>> envelope(cfg, 20), envelope(cfg, 40), envelope(cfg, 55), envelope(cfg, 100)
        (0.0, 1.0, 0.5, 0.0)
    """
    if frame <= cfg.release_start:
        return 0.0
    if frame <= cfg.peak:
        return (frame - cfg.release_start) / (cfg.peak - cfg.release_start)
    if frame <= cfg.decay:
        fall = (frame - cfg.peak) / (cfg.decay - cfg.peak)
        return 1.0 - (1.0 - cfg.tail_level) * fall
    return cfg.tail_level


def signature_for(cfg: SynthConfig) -> FloatArray:
    """Unit-norm target signature: the configured one or a Gaussian line."""
    if cfg.signature is not None:
        s = np.asarray(cfg.signature, dtype=np.float64)
    else:
        bands = np.arange(cfg.b, dtype=np.float64)
        centre = cfg.signature_center * (cfg.b - 1)
        s = np.exp(-((bands - centre) ** 2) / (2.0 * cfg.signature_width**2))
    return Spectrum(s).normalized().values


def plume_profile(cfg: SynthConfig) -> FloatArray:
    """
    alpha / kappa for every frame and pixel, shape (frame_count, n1, n2).

    The centre moves by ``drift`` per frame after release and the width grows
    by ``spread_rate`` (relative) per frame after release.
    """
    rows, cols = np.meshgrid(np.arange(cfg.n1), np.arange(cfg.n2), indexing="ij")
    profile = np.zeros((cfg.frame_count, cfg.n1, cfg.n2))
    for t in range(cfg.frame_count):
        level = envelope(cfg, t)
        if level == 0.0:
            continue
        elapsed = max(0, t - cfg.release_start)
        r0 = cfg.plume_center[0] + cfg.drift[0] * elapsed
        c0 = cfg.plume_center[1] + cfg.drift[1] * elapsed
        sigma = cfg.plume_sigma * (1.0 + cfg.spread_rate * elapsed)
        dist2 = (rows - r0) ** 2 + (cols - c0) ** 2
        profile[t] = level * np.exp(-dist2 / (2.0 * sigma**2))
    return profile


def _plateau_field(cfg: SynthConfig, rng: np.random.Generator) -> FloatArray:
    size = cfg.plateau_size
    blocks = rng.uniform(0.0, 1.0, size=(-(-cfg.n1 // size), -(-cfg.n2 // size)))
    field = np.repeat(np.repeat(blocks, size, axis=0), size, axis=1)
    return field[: cfg.n1, : cfg.n2]


def _polynomial_field(cfg: SynthConfig, rng: np.random.Generator) -> FloatArray:
    y, x = np.meshgrid(np.linspace(-1.0, 1.0, cfg.n1), np.linspace(-1.0, 1.0, cfg.n2), indexing="ij")
    field = np.zeros((cfg.n1, cfg.n2))
    for i in range(cfg.polynomial_order + 1):
        for j in range(cfg.polynomial_order + 1 - i):
            field += rng.normal() * x**i * y**j
    spread = field.max() - field.min()
    return (field - field.min()) / spread if spread > 0 else np.zeros_like(field)


def generate_background(cfg: SynthConfig, rng: np.random.Generator) -> FloatArray:
    """
    Deterministic background cube of shape (b, n1, n2).

    Band j is offset_j + background_range * mean_c(loading[c, j] * field_c),
    with fields in [0, 1] and offsets within 10% of background_level.
    """
    make_field = _plateau_field if cfg.background_kind == "plateau" else _polynomial_field
    fields = np.stack([make_field(cfg, rng) for _ in range(cfg.background_components)])
    loadings = rng.uniform(0.0, 1.0, size=(cfg.background_components, cfg.b))
    offsets = cfg.background_level * (1.0 + 0.1 * rng.uniform(-1.0, 1.0, size=cfg.b))
    mixed = np.einsum("cj,crs->jrs", loadings, fields) / cfg.background_components
    return offsets[:, None, None] + cfg.background_range * mixed


def generate_video(cfg: SynthConfig, workers: int = 1) -> tuple[CubeVideo, GroundTruth]:
    """
    Generate a plume release video and its ground truth.

    Pixel (r, c) of frame t is background(r, c) + alpha(r, c, t) * signature
    + noise, alpha = kappa * envelope(t) * exp(-dist^2 / (2 sigma^2)).
    The same config always yields a bitwise-identical video, whatever ``workers``.

    Args:
        cfg: Scenario.
        workers: Threads used to draw per-frame noise.

    Returns:
        The video and the ground truth (alpha, mask alpha > 0.05 kappa, signature).
    """
    root = np.random.SeedSequence(cfg.seed)
    background_seed, *frame_seeds = root.spawn(1 + cfg.frame_count)
    background = generate_background(cfg, np.random.default_rng(background_seed))
    signature = signature_for(cfg)
    profile = plume_profile(cfg)
    alpha = cfg.peak_strength * profile
    if cfg.peak_strength > 0:
        mask = profile > MASK_FRACTION
    else:
        mask = np.zeros(profile.shape, dtype=bool)

    def frame(t: int) -> HyperCube:
        data = background + alpha[t][None, :, :] * signature[:, None, None]
        if cfg.noise_sigma > 0:
            noise = np.random.default_rng(frame_seeds[t]).standard_normal(data.shape)
            data = data + cfg.noise_sigma * noise
        return HyperCube(data)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            frames = tuple(pool.map(frame, range(cfg.frame_count)))
    else:
        frames = tuple(frame(t) for t in range(cfg.frame_count))
    logger.info(
        "generated %d frames of %dx%dx%d (kappa=%g, noise=%g)",
        cfg.frame_count,
        cfg.n1,
        cfg.n2,
        cfg.b,
        cfg.peak_strength,
        cfg.noise_sigma,
    )
    truth = GroundTruth(alpha=alpha, mask=mask, signature=signature)
    return CubeVideo(frames), truth
