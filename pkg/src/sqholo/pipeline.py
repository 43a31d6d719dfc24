"""Hologram generation: single transform, Gerchberg-Saxton, time multiplexing.

The single-transform pipeline covers both one-step phase retrieval and
single-transform time-multiplexed generation: seed the replay with the
target amplitude and a random phase, inverse transform, quantise, forward
transform.  Metrics always compare intensities.
"""
from dataclasses import dataclass, field
import time

import numpy as np

from .field import build_pair_map, check_field
from .metrics import mse_intensity, replay_ssim, ssim, SsimParams
from .quantise import QuantisationConfig, SsqWorkspace, Strategy, quantise_field
from .seed import PhaseDistribution, sample_phases, seed_replay
from .transforms import fft_forward, fft_inverse, fresnel_phase


@dataclass(frozen=True)
class PipelineConfig:
    quant: QuantisationConfig = field(default_factory=QuantisationConfig)
    dist: PhaseDistribution = field(default_factory=PhaseDistribution)
    fresnel: object = None  # FresnelParams or None
    subframes: int = 24
    iterations: int = 25

    def __post_init__(self):
        if self.subframes < 1:
            raise ValueError("subframes must be >= 1")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")


@dataclass(frozen=True)
class RunRecord:
    step: int
    mse: float
    ssim: float
    fallback_rate: float
    wall_time: float


class _Model:
    """Forward/backward optics for one grid size and config."""

    def __init__(self, nx, ny, cfg):
        self.cfg = cfg
        self.pm = build_pair_map(nx, ny)
        self.carrier = None
        if cfg.fresnel is not None and cfg.fresnel.q != 0:
            self.carrier = fresnel_phase(nx, ny, cfg.fresnel)
        self.work = SsqWorkspace(nx, ny) if cfg.quant.strategy is Strategy.SSQ else None

    def backward(self, replay):
        """Replay field to the unconstrained SLM field."""
        g = fft_inverse(replay)
        return g if self.carrier is None else g / self.carrier

    def forward(self, holo):
        return fft_forward(holo if self.carrier is None else holo * self.carrier)

    def quantise(self, h):
        out, stats = quantise_field(h, self.cfg.quant, self.pm, carrier=self.carrier, work=self.work)
        return out, (stats.rate if stats is not None else 0.0)


def _record(step, t, replay, fallback_rate, wall_time):
    return RunRecord(step, mse_intensity(t, replay), replay_ssim(t, replay), fallback_rate, wall_time)


def single_frame(t, cfg, rng, _model=None):
    """One seeded inverse transform, quantisation and replay.

    ``t`` must already be energy-normalised.  Returns
    ``(hologram, replay, RunRecord)``.
    """
    nx, ny = check_field(t)
    model = _model or _Model(nx, ny, cfg)
    start = time.perf_counter()
    phases = sample_phases(nx, ny, cfg.dist, rng)
    holo, rate = model.quantise(model.backward(seed_replay(t, phases)))
    replay = model.forward(holo)
    elapsed = time.perf_counter() - start
    return holo, replay, _record(0, t, replay, rate, elapsed)


def gs_run(t, cfg, rng):
    """Gerchberg-Saxton iterations; step 0 is :func:`single_frame`.

    Later steps keep the replay phase, restore the target amplitude and
    re-quantise.  Returns one record per iteration.
    """
    nx, ny = check_field(t)
    model = _Model(nx, ny, cfg)
    _, replay, rec = single_frame(t, cfg, rng, _model=model)
    records = [rec]
    for step in range(1, cfg.iterations):
        start = time.perf_counter()
        constrained = t * np.exp(1j * np.angle(replay))
        holo, rate = model.quantise(model.backward(constrained))
        replay = model.forward(holo)
        records.append(_record(step, t, replay, rate, time.perf_counter() - start))
    return records


def frame_seeds(master, n):
    """Per-frame seeds: frame 0 reuses ``master``, later frames get spawned children."""
    root = np.random.SeedSequence(master)
    return [master] + root.spawn(n - 1) if n > 1 else [master]


def time_multiplex(t, cfg, rng):
    """Average replay intensity over ``cfg.subframes`` independent frames.

    Returns ``(avg_intensity, RunRecord)`` with metrics on the average and
    the mean fallback rate across frames.
    """
    nx, ny = check_field(t)
    model = _Model(nx, ny, cfg)
    start = time.perf_counter()
    total = np.zeros((ny, nx))
    rates = []
    for seed in frame_seeds(rng, cfg.subframes):
        _, replay, rec = single_frame(t, cfg, seed, _model=model)
        total += np.abs(replay) ** 2
        rates.append(rec.fallback_rate)
    avg = total / cfg.subframes
    elapsed = time.perf_counter() - start
    t_int = np.asarray(t) ** 2
    mse = float(np.mean((avg - t_int) ** 2))
    scale = t_int.max()
    score = ssim(t_int / scale, avg / scale, SsimParams())
    return avg, RunRecord(0, mse, score, float(np.mean(rates)), elapsed)
