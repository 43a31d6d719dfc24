"""Unitary 2-D DFTs and the Fresnel quadratic phase.

Forward kernel is ``exp(-2*pi*i*(u*x/nx + v*y/ny))`` with a ``1/sqrt(nx*ny)``
prefactor in both directions, so the transforms are unitary and a
single-pixel change ``dH`` at ``(x, y)`` moves every replay sample by
``dH * exp(-2*pi*i*(u*x/nx + v*y/ny)) / sqrt(nx*ny)``.
"""
from dataclasses import dataclass
import math

import numpy as np

from .field import check_field


def dft_forward_oracle(h):
    """Forward transform by direct summation; O(N^2), for testing only."""
    h = np.asarray(h, dtype=complex)
    nx, ny = check_field(h)
    out = np.empty_like(h)
    x = np.arange(nx)
    y = np.arange(ny)[:, None]
    for v in range(ny):
        for u in range(nx):
            kernel = np.exp(-2j * np.pi * (u * x / nx + v * y / ny))
            out[v, u] = np.sum(h * kernel)
    return out / math.sqrt(nx * ny)


def fft_forward(h):
    check_field(h)
    return np.fft.fft2(h, norm="ortho")


def fft_inverse(r):
    check_field(r)
    return np.fft.ifft2(r, norm="ortho")


@dataclass(frozen=True)
class FresnelParams:
    """Quadratic phase coefficient ``q`` in radians per squared pixel.

    ``q`` stands in for ``pi / (wavelength * distance)`` expressed in pixel
    units; ``q = 0`` is the Fraunhofer case.
    """

    q: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.q):
            raise ValueError(f"Fresnel coefficient must be finite, got {self.q}")


def fresnel_phase(nx, ny, p):
    """Unimodular factor ``exp(i*q*(xc**2 + yc**2))`` on centred coordinates."""
    xc = np.arange(nx) - nx // 2
    yc = np.arange(ny)[:, None] - ny // 2
    return np.exp(1j * p.q * (xc**2 + yc**2))


def fresnel_premultiply(h, p):
    nx, ny = check_field(h)
    if p.q == 0:
        return np.array(h, dtype=complex)
    return h * fresnel_phase(nx, ny, p)
