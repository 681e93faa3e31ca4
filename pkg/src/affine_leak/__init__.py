"""Min-entropy leakage analysis of secure three-party affine computations."""

from .combinatorics import (
    DEFAULT_CAP,
    count_outputs,
    enumerate_outputs,
    floor_sum,
    gcd,
    normalize,
    prefix_count,
)
from .domain import (
    AffineSpec,
    DiscreteDistribution,
    EntropyBounds,
    IntegerInterval,
    LeakageReport,
    Method,
    NormalizedAffine,
    validate_spec,
)
from .entropy import (
    ChannelTable,
    analyze,
    conditional_min_entropy_closed,
    conditional_min_entropy_simplified,
    conditional_vulnerability_direct,
    conditional_vulnerability_naive,
    entropy_bounds,
    log2_rational,
    min_entropy,
)
from .priors import parse_distribution, serialize_distribution, spiked_prior, uniform_prior
from .sweep import (
    PolynomialSpec,
    eval_poly,
    run_benchmark,
    sweep_attacker_input,
    sweep_spike_weight,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSpec",
    "analyze",
    "ChannelTable",
    "conditional_min_entropy_closed",
    "conditional_min_entropy_simplified",
    "conditional_vulnerability_direct",
    "conditional_vulnerability_naive",
    "count_outputs",
    "DEFAULT_CAP",
    "DiscreteDistribution",
    "entropy_bounds",
    "EntropyBounds",
    "enumerate_outputs",
    "eval_poly",
    "floor_sum",
    "gcd",
    "IntegerInterval",
    "LeakageReport",
    "log2_rational",
    "Method",
    "min_entropy",
    "normalize",
    "NormalizedAffine",
    "parse_distribution",
    "PolynomialSpec",
    "prefix_count",
    "run_benchmark",
    "serialize_distribution",
    "spiked_prior",
    "sweep_attacker_input",
    "sweep_spike_weight",
    "uniform_prior",
    "validate_spec",
]
