"""Random replay-plane phase seeds."""
from dataclasses import dataclass
import enum
import math

import numpy as np

from .field import check_same_shape


class PhaseKind(str, enum.Enum):
    UNIFORM = "uniform"
    DUAL_VON_MISES = "dual_von_mises"


@dataclass(frozen=True)
class PhaseDistribution:
    """Seed phase law.

    ``DUAL_VON_MISES`` is an equal mixture of von Mises densities centred at
    ``mu`` and ``mu + pi`` with concentration ``1 / sigma**2``.  The default
    ``mu = pi/2`` puts the seeded replay on the imaginary axis, perpendicular
    to the real-valued perturbation that SSQ produces.
    """

    kind: PhaseKind = PhaseKind.UNIFORM
    sigma: float = 0.05
    mu: float = math.pi / 2

    def __post_init__(self):
        object.__setattr__(self, "kind", PhaseKind(self.kind))
        if self.kind is PhaseKind.DUAL_VON_MISES and not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    @property
    def centers(self):
        return (self.mu, self.mu + math.pi)

    @property
    def kappa(self):
        return 1.0 / self.sigma**2

    @classmethod
    def uniform(cls):
        return cls(PhaseKind.UNIFORM)

    @classmethod
    def banded(cls, sigma):
        return cls(PhaseKind.DUAL_VON_MISES, sigma)


def sample_phases(nx, ny, dist, rng):
    """Draw an ``(ny, nx)`` grid of seed phases.

    ``rng`` is an integer seed or a ``numpy.random.Generator``; one stream
    is consumed sequentially so equal seeds give bit-identical grids.
    """
    rng = np.random.default_rng(rng)
    if dist.kind is PhaseKind.UNIFORM:
        return rng.uniform(0.0, 2 * np.pi, size=(ny, nx))
    phases = rng.vonmises(dist.mu, dist.kappa, size=(ny, nx))
    flip = rng.random(size=(ny, nx)) < 0.5
    return np.mod(phases + np.pi * flip, 2 * np.pi)


def seed_replay(amp, phases):
    check_same_shape(amp, phases)
    return np.asarray(amp) * np.exp(1j * np.asarray(phases))
