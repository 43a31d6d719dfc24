"""Replay quality metrics on intensity, and target energy normalisation."""
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import DimensionError
from .field import check_same_shape


@dataclass(frozen=True)
class SsimParams:
    k1: float = 0.01
    k2: float = 0.03
    dynamic_range: float = 1.0
    window: int = 11
    std: float = 1.5

    @property
    def c1(self):
        return (self.k1 * self.dynamic_range) ** 2

    @property
    def c2(self):
        return (self.k2 * self.dynamic_range) ** 2


def normalize_target(amp):
    """Scale a non-negative amplitude image so that ``sum(amp**2) == amp.size``.

    That is the energy of a unit-magnitude hologram of the same size, which
    the unitary transform carries unchanged into the replay field.
    """
    amp = np.asarray(amp, dtype=float)
    if np.any(amp < 0) or not np.all(np.isfinite(amp)):
        raise ValueError("target amplitudes must be finite and non-negative")
    energy = np.sum(amp**2)
    if energy <= 0:
        raise ValueError("target has zero energy")
    return amp * np.sqrt(amp.size / energy)


def mse_intensity(t, r):
    """Mean squared difference between ``|r|**2`` and ``t**2``."""
    check_same_shape(t, r)
    diff = np.abs(r) ** 2 - np.asarray(t) ** 2
    return float(np.mean(diff**2))


def _gaussian_1d(size, std):
    g = np.exp(-0.5 * ((np.arange(size) - (size - 1) / 2) / std) ** 2)
    return g / g.sum()


def _filter_valid(img, g):
    # separable weighted sum over every window lying fully inside the image
    rows = sliding_window_view(img, len(g), axis=1) @ g
    return sliding_window_view(rows, len(g), axis=0) @ g


def ssim_map(t_int, r_int, p=SsimParams()):
    t = np.asarray(t_int, dtype=float)
    r = np.asarray(r_int, dtype=float)
    check_same_shape(t, r)
    if t.ndim != 2 or min(t.shape) < p.window:
        raise DimensionError(f"{p.window}x{p.window} window does not fit a {t.shape} image")
    g = _gaussian_1d(p.window, p.std)

    mu_t = _filter_valid(t, g)
    mu_r = _filter_valid(r, g)
    var_t = _filter_valid(t * t, g) - mu_t * mu_t
    var_r = _filter_valid(r * r, g) - mu_r * mu_r
    cov = _filter_valid(t * r, g) - mu_t * mu_r

    s1 = (2 * mu_t * mu_r + p.c1) / (mu_t * mu_t + mu_r * mu_r + p.c1)
    s2 = (2 * cov + p.c2) / (var_t + var_r + p.c2)
    return s1 * s2


def ssim(t_int, r_int, p=SsimParams()):
    """Mean SSIM over all Gaussian windows that fit inside the image."""
    return float(np.mean(ssim_map(t_int, r_int, p)))


def replay_ssim(t, r, p=SsimParams()):
    """SSIM between target and replay intensities, both divided by ``max(t**2)``."""
    t_int = np.asarray(t) ** 2
    scale = t_int.max()
    return ssim(t_int / scale, np.abs(r) ** 2 / scale, p)
