"""Value types shared by every analysis.

All integers are Python ints (arbitrary precision) and all probabilities are
:class:`fractions.Fraction`; floats only appear as entropies in bits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping, Optional

from .errors import EmptyInterval, InvalidDistribution, PriorDomainMismatch, SumNotOne


@dataclass(frozen=True)
class IntegerInterval:
    """The inclusive integer range ``lo..hi``."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise EmptyInterval(f"empty interval [{self.lo}, {self.hi}]")

    def size(self) -> int:
        return self.hi - self.lo + 1

    def values(self) -> range:
        return range(self.lo, self.hi + 1)

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __iter__(self) -> Iterator[int]:
        return iter(self.values())

    def __str__(self) -> str:
        return f"{self.lo}:{self.hi}"


@dataclass(frozen=True)
class AffineSpec:
    """The computation ``o = alpha + beta*y + gamma*z`` over two input intervals.

    The attacker's own input is already folded into the three constants.
    Zero coefficients are legal.
    """

    alpha: int
    beta: int
    gamma: int
    y_domain: IntegerInterval
    z_domain: IntegerInterval

    def output(self, y: int, z: int) -> int:
        return self.alpha + self.beta * y + self.gamma * z

    def pair_count(self) -> int:
        return self.y_domain.size() * self.z_domain.size()


@dataclass(frozen=True)
class NormalizedAffine:
    """Reduced form ``beta'*y + gamma'*z`` with ``y in 0..n`` and ``z in 0..m``.

    ``d`` is the gcd that was divided out of the original coefficients.
    """

    beta_prime: int
    gamma_prime: int
    n: int
    m: int
    d: int = 1

    def __post_init__(self):
        if self.beta_prime < 1 or self.gamma_prime < 1:
            raise ValueError("normalized coefficients must be positive")
        if self.n < 0 or self.m < 0:
            raise ValueError("normalized bounds must be non-negative")
        if self.d < 1:
            raise ValueError("gcd must be positive")
        if math.gcd(self.beta_prime, self.gamma_prime) != 1:
            raise ValueError("normalized coefficients must be coprime")

    @property
    def max_output(self) -> int:
        return self.beta_prime * self.n + self.gamma_prime * self.m

    def pair_count(self) -> int:
        return (self.n + 1) * (self.m + 1)


@dataclass(frozen=True)
class DiscreteDistribution:
    """Exact probability mass function over an integer interval.

    Values listed in ``explicit`` carry their own mass; every other value of
    the support carries ``default``. This keeps uniform and spiked priors over
    huge intervals constant-size while allowing fully tabulated priors.
    Zero-mass points inside the support are permitted.
    """

    support: IntegerInterval
    explicit: Mapping[int, Fraction] = field(default_factory=dict)
    default: Fraction = Fraction(0)

    def __post_init__(self):
        explicit = {int(k): Fraction(v) for k, v in self.explicit.items()}
        default = Fraction(self.default)
        size = self.support.size()
        for value, p in explicit.items():
            if value not in self.support:
                raise InvalidDistribution(f"value {value} lies outside support {self.support}")
            if not 0 <= p <= 1:
                raise InvalidDistribution(f"mass {p} at value {value} is not in [0, 1]")
        implicit = size - len(explicit)
        if implicit and not 0 <= default <= 1:
            raise InvalidDistribution(f"default mass {default} is not in [0, 1]")
        if not implicit:
            default = Fraction(0)
        total = sum(explicit.values(), Fraction(0)) + default * implicit
        if total != 1:
            raise SumNotOne(total)
        object.__setattr__(self, "explicit", MappingProxyType(explicit))
        object.__setattr__(self, "default", default)

    @classmethod
    def from_masses(cls, support: IntegerInterval, masses: Mapping[int, Fraction]):
        """Tabulated distribution; support values missing from ``masses`` get zero."""
        return cls(support, dict(masses), Fraction(0))

    def prob(self, value: int) -> Fraction:
        if value not in self.support:
            return Fraction(0)
        return self.explicit.get(value, self.default)

    def max_mass(self) -> Fraction:
        best = max(self.explicit.values(), default=Fraction(0))
        if len(self.explicit) < self.support.size():
            best = max(best, self.default)
        return best

    def is_uniform(self) -> bool:
        target = Fraction(1, self.support.size())
        if len(self.explicit) < self.support.size() and self.default != target:
            return False
        return all(p == target for p in self.explicit.values())

    def masses(self) -> Iterator[tuple[int, Fraction]]:
        """Yield ``(value, mass)`` for every support value, in ascending order."""
        for value in self.support:
            yield value, self.explicit.get(value, self.default)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.masses())

    def __eq__(self, other):
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        if self.support != other.support:
            return False
        keys = set(self.explicit) | set(other.explicit)
        if len(keys) < self.support.size() and self.default != other.default:
            return False
        return all(self.prob(k) == other.prob(k) for k in keys)

    def __hash__(self):
        return hash((self.support, self.max_mass()))


class Method(str, enum.Enum):
    CLOSED = "closed"
    SIMPLIFIED = "simplified"
    NAIVE = "naive"


@dataclass(frozen=True)
class LeakageReport:
    """Result of one leakage analysis.

    ``ratio`` keeps the unreduced ``(N_O, |I_Y|*|I_Z|)`` pair when the method
    derives the vulnerability from an output count; ``vulnerability`` is always
    the reduced fraction.
    """

    vulnerability: Fraction
    entropy_bits: float
    method: Method
    output_count: Optional[int] = None
    ratio: Optional[tuple[int, int]] = None

    def vulnerability_text(self) -> str:
        if self.ratio is not None:
            return f"{self.ratio[0]}/{self.ratio[1]}"
        return f"{self.vulnerability.numerator}/{self.vulnerability.denominator}"

    def as_dict(self) -> dict:
        v = self.vulnerability
        return {
            "method": self.method.value,
            "vulnerability": self.vulnerability_text(),
            "vulnerability_reduced": f"{v.numerator}/{v.denominator}",
            "entropy_bits": self.entropy_bits,
            "n_outputs": self.output_count,
        }


@dataclass(frozen=True)
class EntropyBounds:
    """Sandwich ``lower <= H(Y|O) <= upper`` valid for arbitrary priors."""

    lower: float
    upper: float
    prior_entropy_y: float
    prior_entropy_z: float
    output_count: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "lower_bits": self.lower,
            "upper_bits": self.upper,
            "prior_entropy_y": self.prior_entropy_y,
            "prior_entropy_z": self.prior_entropy_z,
            "n_outputs": self.output_count,
        }


def validate_spec(spec: AffineSpec, prior_y: DiscreteDistribution, prior_z: DiscreteDistribution):
    """Check that the priors live exactly on the spec's input intervals.

    Returns the triple unchanged so it can be used inline.
    """
    if not isinstance(spec.y_domain, IntegerInterval) or not isinstance(spec.z_domain, IntegerInterval):
        raise TypeError("spec domains must be IntegerInterval instances")
    if prior_y.support != spec.y_domain:
        raise PriorDomainMismatch(f"prior on Y has support {prior_y.support}, spec declares {spec.y_domain}")
    if prior_z.support != spec.z_domain:
        raise PriorDomainMismatch(f"prior on Z has support {prior_z.support}, spec declares {spec.z_domain}")
    return spec, prior_y, prior_z
