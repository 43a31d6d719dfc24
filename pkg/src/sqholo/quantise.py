"""Phase-only quantisers: nearest neighbour (NNQ) and soft sympathetic (SSQ).

SSQ moves a pixel and its partner under modular negation together, so that
the change of one is the complex conjugate of the change of the other.  The
replay-field perturbation from such a pair is then purely real.  With the
replay seeded close to the imaginary axis, quantisation error lands mostly
in replay phase rather than intensity.
"""
from dataclasses import dataclass
import enum
import math
import numpy as np

from .errors import DimensionError
from ._kernels import TINY2, ssq_kernel
from .field import build_pair_map, check_field, partner_into

MAX_LEVELS = 1024


class Strategy(str, enum.Enum):
    NNQ = "nnq"
    SSQ = "ssq"
    NONE = "none"


@dataclass(frozen=True)
class QuantisationConfig:
    """Quantiser selection.

    ``levels=None`` means a continuous phase device; otherwise ``levels``
    phase states sit at ``2*pi*k/levels``.  Equidistant angles round to the
    higher level index.
    """

    strategy: Strategy = Strategy.NNQ
    levels: int | None = 256
    tie_break: str = "up"

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        if self.levels is not None and not 2 <= self.levels <= MAX_LEVELS:
            raise ValueError(f"levels must be in [2, {MAX_LEVELS}] or None, got {self.levels}")
        if self.tie_break != "up":
            raise ValueError(f"unknown tie-break rule {self.tie_break!r}")


@dataclass(frozen=True)
class PairQuantResult:
    a_out: complex
    b_out: complex
    used_fallback: bool
    residual: float


@dataclass(frozen=True)
class FallbackStats:
    count: int
    pairs: int

    @property
    def rate(self):
        return self.count / self.pairs if self.pairs else 0.0


def _table(levels):
    if levels is None:
        return np.ones(1, dtype=complex)
    return np.exp(2j * np.pi * np.arange(levels) / levels)


def _snap_scalar(z, levels):
    """Unit-circle projection followed by nearest-level rounding (ties up)."""
    if z == 0:
        return 1 + 0j
    if levels is None:
        return z / abs(z)
    step = 2 * math.pi / levels
    k = math.floor(math.atan2(z.imag, z.real) / step + 0.5) % levels
    return complex(_table(levels)[k])


def nnq(v, cfg=None):
    """Nearest achievable state to ``v``; ``cfg=None`` means continuous phase."""
    return _snap_scalar(complex(v), None if cfg is None else cfg.levels)


def snap_field(z, levels):
    """Vectorised unit-circle projection and nearest-level rounding."""
    z = np.asarray(z, dtype=complex)
    if levels is None:
        mag = np.abs(z)
        zero = mag == 0
        mag[zero] = 1.0
        out = z / mag
        out[zero] = 1.0
        return out
    k = np.angle(z)
    k *= levels / (2 * np.pi)
    k += 0.5
    np.floor(k, out=k)
    idx = k.astype(np.int64)
    idx %= levels
    return _table(levels)[idx]


def nnq_field(h, cfg):
    check_field(h)
    return snap_field(h, cfg.levels)


def _norm(re, im):
    n2 = re * re + im * im
    if n2 < TINY2 or n2 == math.inf:
        return math.hypot(re, im)
    return math.sqrt(n2)


def _ssq_continuous(a, b):
    """Place ``a`` and its partner ``b`` on the unit circle with conjugate changes.

    With ``A = a`` and ``B = conj(b)``, the chord ``A -> B`` is translated
    (never rotated) until both ends touch the circle; its midpoint moves
    from ``c`` to ``m``.  Returns ``(a_out, b_out, used_fallback)`` before
    level snapping.
    """
    d = a - b.conjugate()
    c = (a + b.conjugate()) / 2
    dm = _norm(d.real, d.imag)
    if dm == 0:
        am = abs(a)
        a_out = a / am if am > 0 else 1 + 0j
        return a_out, a_out.conjugate(), False
    u = d / dm
    if dm > 2:
        # no translation reaches the circle: centre the chord on the origin,
        # which puts the two ends at +-d/|d| before projection
        return u, -u.conjugate(), True
    t = math.sqrt(max(1 - 0.25 * dm * dm, 0.0))
    m = complex(-u.imag * t, u.real * t)
    # two midpoints qualify, +m and -m; take the one nearer c (ties: +m).
    # Same operation order as the compiled kernel so near-ties agree.
    if t * (u.real * c.imag - u.imag * c.real) < 0:
        m = -m
    delta = m - c
    return a + delta, b + delta.conjugate(), False


def ssq_pair(a, b, cfg=None):
    """Quantise the pixel pair ``(H[x, y], H[-x, -y])`` jointly."""
    levels = None if cfg is None else cfg.levels
    a, b = complex(a), complex(b)
    a_out, b_out, fallback = _ssq_continuous(a, b)
    if levels is not None:
        a_out, b_out = _snap_scalar(a_out, levels), _snap_scalar(b_out, levels)
    residual = abs((a_out - a) - (b_out - b).conjugate())
    return PairQuantResult(a_out, b_out, fallback, residual)


def quantise_self_paired(v, cfg=None):
    """Quantise a pixel that is its own partner by moving it horizontally.

    A self-paired change must equal its own conjugate, so only the real
    part moves unless the pixel lies beyond ``|Im| = 1``.
    """
    v = complex(v)
    if abs(v.imag) <= 1.0:
        s = -1.0 if v.real < 0 else 1.0
        out = complex(s * math.sqrt(max(1.0 - v.imag**2, 0.0)), v.imag)
    else:
        out = v / abs(v)
    return _snap_scalar(out, None if cfg is None else cfg.levels)


class SsqWorkspace:
    """Scratch buffers reused across :func:`ssq_field` calls on one grid.

    Saves two large allocations (and their page faults) per call, which is
    most of the SSQ overhead beyond the arithmetic at large sizes.
    """

    def __init__(self, nx, ny):
        self.shape = (ny, nx)
        self.partner = np.empty(self.shape, complex)
        self.out = np.empty(self.shape, complex)


def ssq_field(h, pm, cfg, carrier=None, work=None):
    """Apply SSQ to every pair and fixed point of ``h``.

    ``carrier`` is an optional unimodular field that the forward model
    multiplies in before transforming (the Fresnel quadratic phase).  The
    conjugate-change constraint is then enforced on ``h * carrier`` so the
    replay perturbation stays real, and the result is divided back before
    level snapping.
    """
    nx, ny = check_field(h)
    if (nx, ny) != (pm.nx, pm.ny):
        raise DimensionError(f"field is {nx}x{ny} but pair map is {pm.nx}x{pm.ny}")
    g = np.ascontiguousarray(h, dtype=complex)
    if carrier is not None:
        if np.shape(carrier) != g.shape:
            raise DimensionError("carrier shape does not match field")
        g = g * carrier
    if work is None or work.shape != g.shape:
        work = SsqWorkspace(nx, ny)
    out = work.out
    count = ssq_kernel(g.reshape(-1), partner_into(g, work.partner).reshape(-1), out.reshape(-1))
    flat_g, flat_out = g.reshape(-1), out.reshape(-1)
    for i in pm.self_flat:
        v = complex(flat_g[i])
        count -= abs(v.imag) > 1.0  # the kernel treats a fixed point as a pair
        flat_out[i] = quantise_self_paired(v)
    if carrier is not None:
        out /= carrier
    # the snap allocates; otherwise hand back a copy, never the workspace
    out = snap_field(out, cfg.levels) if cfg.levels is not None else out.copy()
    return out, FallbackStats(int(count) // 2, len(pm.pairs))


def quantise_field(h, cfg, pm=None, carrier=None, work=None):
    """Dispatch on ``cfg.strategy``; returns ``(field, FallbackStats | None)``."""
    if cfg.strategy is Strategy.NONE:
        return np.array(h, dtype=complex), None
    if cfg.strategy is Strategy.NNQ:
        return nnq_field(h, cfg), None
    if pm is None:
        ny, nx = np.shape(h)
        pm = build_pair_map(nx, ny)
    return ssq_field(h, pm, cfg, carrier=carrier, work=work)
