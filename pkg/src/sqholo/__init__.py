"""Phase-only hologram quantisation with nearest-neighbour and soft sympathetic schemes."""
from .errors import DimensionError, ImageError, NumericalError, SqholoError
from .field import PairMap, build_pair_map, conj_partner
from .metrics import SsimParams, mse_intensity, normalize_target, replay_ssim, ssim
from .pipeline import PipelineConfig, RunRecord, gs_run, single_frame, time_multiplex
from .quantise import (
    PairQuantResult,
    QuantisationConfig,
    Strategy,
    nnq,
    nnq_field,
    quantise_self_paired,
    ssq_field,
    ssq_pair,
)
from .seed import PhaseDistribution, PhaseKind, sample_phases, seed_replay
from .transforms import (
    FresnelParams,
    dft_forward_oracle,
    fft_forward,
    fft_inverse,
    fresnel_premultiply,
)

__version__ = "0.1.0"
