"""Replicated experiments over quantiser variants, sweeps and iterations.

A *variant* names a quantiser together with a seed law, e.g. ``nnq-uniform``
or ``ssq-banded``.  Every replicate uses the same derived seed for all
variants and sweep points, so comparisons are paired.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import csv
import io
import math

import numpy as np

from .errors import NumericalError, SqholoError
from .images import load_image
from .pipeline import PipelineConfig, gs_run, single_frame, time_multiplex
from .quantise import QuantisationConfig, Strategy
from .seed import PhaseDistribution, PhaseKind
from .transforms import FresnelParams

KINDS = ("single", "gs", "sweep-sigma", "sweep-levels", "multiplex")
DEFAULT_VARIANTS = ("nnq-uniform", "nnq-banded", "ssq-banded")
DEFAULT_SWEEPS = {
    "sweep-sigma": (0.01, 0.05, 0.2, 0.5, 1.0),
    "sweep-levels": (2, 4, 8, 16, 32, 64, 128, 256),
}
CSV_HEADER = ("experiment", "sweep", "seed", "step", "mse", "ssim", "fallback_rate", "wall_time_s")


class TaskError(SqholoError):
    """A single (variant, sweep value, replicate) run failed."""

    def __init__(self, context, cause):
        super().__init__(f"{context}: {cause}")
        self.cause = cause


def parse_variant(name):
    """``"ssq-banded"`` -> ``(Strategy.SSQ, PhaseKind.DUAL_VON_MISES)``."""
    try:
        strategy, seed = name.split("-")
        kind = {"uniform": PhaseKind.UNIFORM, "banded": PhaseKind.DUAL_VON_MISES}[seed]
        return Strategy(strategy), kind
    except (ValueError, KeyError):
        raise ValueError(
            f"bad variant {name!r}; expected <nnq|ssq|none>-<uniform|banded>"
        ) from None


@dataclass(frozen=True)
class ExperimentSpec:
    kind: str
    image: str = "coffee"
    size: int | None = 128
    target_domain: str = "intensity"
    levels: int | None = 256
    sigma: float = 0.05
    fresnel_q: float = 0.0
    subframes: int = 24
    iterations: int = 25
    variants: tuple = DEFAULT_VARIANTS
    sweep: tuple = ()
    replicates: int = 20
    seed: int = 0
    workers: int = 1
    timing: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if not self.variants:
            raise ValueError("at least one variant is required")
        for v in self.variants:
            parse_variant(v)
        if self.size is not None and (self.size < 2 or self.size % 2):
            raise ValueError(f"size must be even and >= 2, got {self.size}")
        if self.kind in DEFAULT_SWEEPS and not self.sweep:
            object.__setattr__(self, "sweep", DEFAULT_SWEEPS[self.kind])
        # fail before any work if some variant/sweep combination is invalid
        for v in self.variants:
            for value in self.sweep_values:
                self.config(v, value)

    @property
    def sweep_values(self):
        return self.sweep if self.kind in DEFAULT_SWEEPS else (None,)

    def config(self, variant, sweep_value=None):
        strategy, seed_kind = parse_variant(variant)
        levels, sigma = self.levels, self.sigma
        if self.kind == "sweep-sigma":
            sigma = float(sweep_value)
        elif self.kind == "sweep-levels":
            levels = int(sweep_value)
        dist = PhaseDistribution(seed_kind, sigma)
        return PipelineConfig(
            quant=QuantisationConfig(strategy, levels),
            dist=dist,
            fresnel=FresnelParams(self.fresnel_q) if self.fresnel_q else None,
            subframes=self.subframes,
            iterations=self.iterations if self.kind == "gs" else 1,
        )


def replicate_seed(master, replicate):
    """64-bit seed for one replicate, derived from the master seed."""
    lo, hi = np.random.SeedSequence([master, replicate]).generate_state(2)
    return int(lo) | (int(hi) << 32)


def _run_task(kind, t, cfg, seed):
    if kind == "gs":
        return gs_run(t, cfg, seed)
    if kind == "multiplex":
        return [time_multiplex(t, cfg, seed)[1]]
    return [single_frame(t, cfg, seed)[2]]


def _task(args):
    kind, t, cfg, seed, context = args
    try:
        records = _run_task(kind, t, cfg, seed)
    except Exception as exc:
        raise TaskError(context, exc) from exc
    for rec in records:
        if not (math.isfinite(rec.mse) and math.isfinite(rec.ssim)):
            raise TaskError(context, NumericalError(f"non-finite metrics at step {rec.step}"))
    return records


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    rows: list = field(default_factory=list)
    summary: list = field(default_factory=list)


def run_experiment(spec, target=None):
    """Execute every variant x sweep value x replicate; returns rows and summaries.

    ``target`` may be given directly (a normalised amplitude array) instead
    of loading ``spec.image``.
    """
    t = load_image(spec.image, spec.size, spec.target_domain) if target is None else target
    seeds = [replicate_seed(spec.seed, r) for r in range(spec.replicates)]
    keys, jobs = [], []
    for variant in spec.variants:
        for value in spec.sweep_values:
            cfg = spec.config(variant, value)
            for seed in seeds:
                keys.append((variant, value, seed))
                context = f"{spec.kind}:{variant} sweep={value} seed={seed}"
                jobs.append((spec.kind, t, cfg, seed, context))

    if spec.workers > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            results = list(pool.map(_task, jobs))
    else:
        results = [_task(job) for job in jobs]

    result = ExperimentResult(spec)
    grouped = {}
    for (variant, value, seed), records in zip(keys, results):
        exp_id = f"{spec.kind}:{variant}"
        for rec in records:
            result.rows.append((exp_id, value, seed, rec))
            grouped.setdefault((exp_id, value, rec.step), []).append(rec)
    for (exp_id, value, step), recs in grouped.items():
        result.summary.append((exp_id, value, step, _aggregate(recs)))
    return result


def _aggregate(recs):
    out = {}
    for name in ("mse", "ssim", "fallback_rate", "wall_time"):
        vals = np.array([getattr(r, name) for r in recs])
        out[name] = (float(vals.mean()), 2 * float(vals.std(ddof=1)) if len(vals) > 1 else 0.0)
    return out


def _num(x):
    return "" if x is None else repr(x) if isinstance(x, float) else str(x)


def write_csv(result, fh):
    """Write raw rows, then ``mean`` and ``2std`` summary rows, LF-terminated."""
    timing = result.spec.timing
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for exp_id, value, seed, rec in result.rows:
        wall = rec.wall_time if timing else None
        w.writerow([exp_id, _num(value), seed, rec.step, _num(rec.mse), _num(rec.ssim),
                    _num(float(rec.fallback_rate)), _num(wall)])
    for exp_id, value, step, agg in result.summary:
        for label, i in (("mean", 0), ("2std", 1)):
            wall = agg["wall_time"][i] if timing else None
            w.writerow([exp_id, _num(value), label, step, _num(agg["mse"][i]),
                        _num(agg["ssim"][i]), _num(agg["fallback_rate"][i]), _num(wall)])


def csv_text(result):
    buf = io.StringIO()
    write_csv(result, buf)
    return buf.getvalue()


def summary_table(result):
    """``{variant: {(sweep, step): {"mse": (mean, 2std), ...}}}`` for plotting and checks."""
    table = {}
    for exp_id, value, step, agg in result.summary:
        variant = exp_id.split(":", 1)[1]
        table.setdefault(variant, {})[(value, step)] = agg
    return table

