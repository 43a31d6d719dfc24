"""Grid conventions and the conjugate pair map.

Fields are numpy arrays of shape ``(ny, nx)`` in row-major order, so the
pixel with column ``x`` and row ``y`` is ``field[y, x]``.  Grid indices are
passed around as ``(x, y)`` tuples.  Pixel ``(0, 0)`` is the DC element of
the discrete transform, and the point "opposite" ``(x, y)`` is its modular
negation ``(-x mod nx, -y mod ny)``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError


def check_dims(nx, ny):
    """Reject grids that are odd-sized or smaller than 2x2."""
    for name, n in (("nx", nx), ("ny", ny)):
        if int(n) != n or n < 2 or n % 2:
            raise DimensionError(f"{name}={n}: grid sides must be even and >= 2")


def check_field(h, ndim=2):
    """Validate a field array and return its ``(nx, ny)``."""
    h = np.asarray(h)
    if h.ndim != ndim:
        raise DimensionError(f"expected a 2-D grid, got shape {h.shape}")
    ny, nx = h.shape
    check_dims(nx, ny)
    return nx, ny


def check_same_shape(a, b):
    if np.shape(a) != np.shape(b):
        raise DimensionError(f"shape mismatch: {np.shape(a)} vs {np.shape(b)}")


def conj_partner(idx, nx, ny):
    """Index of the pixel that pairs with ``idx`` under modular negation."""
    x, y = idx
    if not (0 <= x < nx and 0 <= y < ny):
        raise IndexError(f"index {idx} outside {nx}x{ny} grid")
    return ((-x) % nx, (-y) % ny)


def partner_into(h, buf):
    """Fill ``buf`` so that ``buf[y, x]`` is ``h`` at the partner of ``(x, y)``."""
    buf[0, 0] = h[0, 0]
    buf[0, 1:] = h[0, :0:-1]
    buf[1:, 0] = h[:0:-1, 0]
    buf[1:, 1:] = h[:0:-1, :0:-1]
    return buf


def partner_view(h):
    """Array whose ``[y, x]`` entry is ``h`` at the partner of ``(x, y)``."""
    h = np.asarray(h)
    return partner_into(h, np.empty_like(h))


@dataclass(frozen=True)
class PairMap:
    """Partition of an ``nx`` x ``ny`` grid into partner pairs and fixed points.

    ``pairs`` has shape ``(P, 2, 2)``: ``pairs[k, 0]`` is the canonical
    (lexicographically smaller) ``(x, y)`` member and ``pairs[k, 1]`` its
    partner.  ``selfs`` has shape ``(S, 2)``.
    """

    nx: int
    ny: int
    pairs: np.ndarray
    selfs: np.ndarray

    @property
    def first(self):
        """Flat row-major indices of the canonical pair members."""
        return self.pairs[:, 0, 1] * self.nx + self.pairs[:, 0, 0]

    @property
    def second(self):
        return self.pairs[:, 1, 1] * self.nx + self.pairs[:, 1, 0]

    @property
    def self_flat(self):
        return self.selfs[:, 1] * self.nx + self.selfs[:, 0]


def build_pair_map(nx, ny):
    check_dims(nx, ny)
    x, y = np.meshgrid(np.arange(nx), np.arange(ny), indexing="xy")
    x, y = x.ravel(), y.ravel()
    px, py = (-x) % nx, (-y) % ny
    fixed = (px == x) & (py == y)
    canon = ~fixed & ((x < px) | ((x == px) & (y < py)))
    pairs = np.stack(
        [np.stack([x[canon], y[canon]], axis=1), np.stack([px[canon], py[canon]], axis=1)],
        axis=1,
    )
    selfs = np.stack([x[fixed], y[fixed]], axis=1)
    return PairMap(int(nx), int(ny), pairs, selfs)
