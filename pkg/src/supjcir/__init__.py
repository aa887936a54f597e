"""Superposed jump-CIR models and robust dynamic Orlicz risk bounds."""

from .errors import *  # noqa: F401,F403
from .jumps import DistortedJump, ExponentialJump, JumpMultiplier, NoJumps, TemperedStable, jump_moment
from .kernels import BACKEND
from .mixing import DiscreteMixing, GammaMixing, inverse_moment, mixed_acf, quantile_discretize
from .orlicz import (
    Bound,
    ExponentialOrlicz,
    Identity,
    OrliczFunction,
    PowerConcave,
    PowerConvex,
    RiskQuery,
    RiskReport,
    admissibility_check,
    normalized_disutility,
    stationary_log_disutility,
)
from .process import SupJcirModel, log_mgf, model_acf, stationary_moments

__version__ = "0.1.0"
