"""Kasami-Welch - exact exponential sums over GF(2^n) and what they count.

Enumerates the sums T(alpha, beta) and S(alpha, beta, gamma) of
Tr(alpha x^(2^(3k)+1) + beta x^(2^k+1)) [+ Tr(gamma x)], checks their value
distributions against closed-form tables, and derives from them the weight
distributions of the associated cyclic codes and the correlation
distribution of the corresponding binary sequence family.

Example:
    >>> from kasami_welch import Toolkit
    >>> kit = Toolkit("5/1")
    >>> kit.t_distribution().entries
    {-8: 186, 0: 527, 8: 310, 32: 1}
    >>> kit.verify().certified
    True
"""

__version__ = "0.1.0a1"
__license__ = "MIT"

# Public API
from kasami_welch.cyclic_codes import WeightDistribution, punctured_C1_weights, weight_distribution
from kasami_welch.distributions import (
    DistributionReport,
    RankCensus,
    ValueDistribution,
    compare,
    rank_census,
    theorem1_table,
    theorem2_table,
)
from kasami_welch.errors import (
    ClosedFormError,
    DegenerateInputError,
    FieldError,
    KasamiWelchError,
    ParameterError,
    ProvenanceMismatchError,
    SequenceParameterError,
    SizeGuardError,
    VerificationError,
)
from kasami_welch.exp_sums import s_naive, t_fast, t_naive
from kasami_welch.field_core import FieldSpec, ParamSet, make_field, validate_params
from kasami_welch.sequences import (
    CorrelationDistribution,
    SeqId,
    cmax,
    correlation,
    correlation_distribution,
    theorem3_table,
)
from kasami_welch.toolkit import Toolkit, VerificationSummary

__all__ = [
    "__version__",
    "Toolkit",
    "VerificationSummary",
    "FieldSpec",
    "ParamSet",
    "make_field",
    "validate_params",
    "t_naive",
    "t_fast",
    "s_naive",
    "ValueDistribution",
    "RankCensus",
    "DistributionReport",
    "theorem1_table",
    "theorem2_table",
    "rank_census",
    "compare",
    "WeightDistribution",
    "weight_distribution",
    "punctured_C1_weights",
    "SeqId",
    "CorrelationDistribution",
    "correlation",
    "correlation_distribution",
    "cmax",
    "theorem3_table",
    "KasamiWelchError",
    "FieldError",
    "ParameterError",
    "SequenceParameterError",
    "DegenerateInputError",
    "SizeGuardError",
    "ClosedFormError",
    "VerificationError",
    "ProvenanceMismatchError",
]
