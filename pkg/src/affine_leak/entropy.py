"""Min-entropy of the targeted input given the public output.

Three engines compute the same Bayes vulnerability ``V(Y|O)``:

``conditional_vulnerability_naive``
    Exhaustive evaluation over an explicit channel table, for any prior.
``conditional_min_entropy_simplified``
    Uniform priors; the output count comes from enumerating every pair.
``conditional_min_entropy_closed``
    Uniform priors; the output count comes from the closed formula and
    costs a single gcd.

``entropy_bounds`` brackets ``H(Y|O)`` for arbitrary priors in constant time.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional

from . import combinatorics
from .domain import (
    AffineSpec,
    DiscreteDistribution,
    EntropyBounds,
    IntegerInterval,
    LeakageReport,
    Method,
    validate_spec,
)
from .errors import DomainTooLarge, NonPositive, PriorDomainMismatch, ZeroCoefficient

_MANTISSA_BITS = 53


def _log2_int(k: int) -> float:
    shift = k.bit_length() - _MANTISSA_BITS
    if shift <= 0:
        return math.log2(k)
    return shift + math.log2(k >> shift)


def log2_rational(r) -> float:
    """Base-2 logarithm of a positive rational without float overflow.

    Numerator and denominator are each shifted into double range before the
    float logarithm is taken, so huge integers lose nothing beyond rounding.
    """
    r = Fraction(r)
    if r <= 0:
        raise NonPositive(f"log2 of non-positive value {r}")
    return _log2_int(r.numerator) - _log2_int(r.denominator)


def entropy_of(vulnerability) -> float:
    """``-log2(vulnerability)`` in bits; a vulnerability of 1 gives exactly 0.0."""
    if vulnerability == 1:
        return 0.0
    return -log2_rational(vulnerability)


def min_entropy(d: DiscreteDistribution) -> float:
    """Prior min-entropy ``-log2 max p`` in bits."""
    return entropy_of(d.max_mass())


@dataclass(frozen=True)
class ChannelTable:
    """A total function from ``y_domain x z_domain`` to integer outputs."""

    y_domain: IntegerInterval
    z_domain: IntegerInterval
    entries: Mapping[tuple[int, int], int]

    def __post_init__(self):
        expected = self.y_domain.size() * self.z_domain.size()
        if len(self.entries) != expected:
            raise ValueError(f"table has {len(self.entries)} entries, domain has {expected} pairs")
        for y, z in self.entries:
            if y not in self.y_domain or z not in self.z_domain:
                raise ValueError(f"pair ({y}, {z}) lies outside the table domains")

    @classmethod
    def from_function(
        cls,
        func: Callable[[int, int], int],
        y_domain: IntegerInterval,
        z_domain: IntegerInterval,
        cap: int | None = None,
    ) -> "ChannelTable":
        pairs = y_domain.size() * z_domain.size()
        limit = combinatorics.DEFAULT_CAP if cap is None else cap
        if pairs > limit:
            raise DomainTooLarge(pairs, limit)
        entries = {(y, z): func(y, z) for y in y_domain for z in z_domain}
        return cls(y_domain, z_domain, entries)

    @classmethod
    def from_affine(cls, spec: AffineSpec, cap: int | None = None) -> "ChannelTable":
        return cls.from_function(spec.output, spec.y_domain, spec.z_domain, cap)


def _integer_weights(d: DiscreteDistribution) -> tuple[dict[int, int], int]:
    """Scale a distribution to integer weights over a common denominator."""
    denom = d.default.denominator
    for p in d.explicit.values():
        denom = math.lcm(denom, p.denominator)
    weights = {v: p.numerator * (denom // p.denominator) for v, p in d.masses()}
    return weights, denom


def conditional_vulnerability_naive(
    table: ChannelTable,
    prior_y: DiscreteDistribution,
    prior_z: DiscreteDistribution,
    target: str = "Y",
) -> Fraction:
    """Exact ``V(T|O) = sum_o max_t p(t) * p(o|t)`` by exhaustive evaluation.

    Each input pair is visited once: the co-input's mass is accumulated per
    ``(output, target value)`` and the per-output maximum is summed afterwards.
    All arithmetic is on integers scaled by the priors' common denominators.
    """
    if prior_y.support != table.y_domain or prior_z.support != table.z_domain:
        raise PriorDomainMismatch("priors do not match the channel table domains")
    wy, ly = _integer_weights(prior_y)
    wz, lz = _integer_weights(prior_z)
    if target == "Y":
        acc: dict[tuple[int, int], int] = {}
        for (y, z), o in table.entries.items():
            key = (o, y)
            acc[key] = acc.get(key, 0) + wz[z]
        best: dict[int, int] = {}
        for (o, y), mass in acc.items():
            score = wy[y] * mass
            if score > best.get(o, 0):
                best[o] = score
    elif target == "Z":
        acc = {}
        for (y, z), o in table.entries.items():
            key = (o, z)
            acc[key] = acc.get(key, 0) + wy[y]
        best = {}
        for (o, z), mass in acc.items():
            score = wz[z] * mass
            if score > best.get(o, 0):
                best[o] = score
    else:
        raise ValueError(f"target must be 'Y' or 'Z', not {target!r}")
    return Fraction(sum(best.values()), ly * lz)


def conditional_vulnerability_direct(
    table: ChannelTable,
    prior_y: DiscreteDistribution,
    prior_z: DiscreteDistribution,
    deadline: float | None = None,
) -> Fraction:
    """``V(Y|O)`` evaluated term by term, in ``O(|D_O| * |I_Y| * |I_Z|)``.

    For every output and every ``y`` the conditional ``p(o|y)`` is rebuilt by
    scanning all of ``z``. Same value as :func:`conditional_vulnerability_naive`;
    this is the quadratic procedure whose cost the benchmark measures.
    ``deadline`` is a :func:`time.monotonic` timestamp; passing it raises
    :class:`TimeoutError` once exceeded.
    """
    if prior_y.support != table.y_domain or prior_z.support != table.z_domain:
        raise PriorDomainMismatch("priors do not match the channel table domains")
    wy, ly = _integer_weights(prior_y)
    wz, lz = _integer_weights(prior_z)
    ys, zs = list(table.y_domain), list(table.z_domain)
    entries = table.entries
    total = 0
    for o in sorted(set(entries.values())):
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutError("direct evaluation exceeded its deadline")
        best = 0
        for y in ys:
            conditional = 0
            for z in zs:
                if entries[y, z] == o:
                    conditional += wz[z]
            score = wy[y] * conditional
            if score > best:
                best = score
        total += best
    return Fraction(total, ly * lz)


def naive_report(
    spec: AffineSpec,
    prior_y: DiscreteDistribution,
    prior_z: DiscreteDistribution,
    cap: int | None = None,
) -> LeakageReport:
    """Run the exhaustive oracle on an affine spec and wrap it as a report."""
    validate_spec(spec, prior_y, prior_z)
    table = ChannelTable.from_affine(spec, cap)
    v = conditional_vulnerability_naive(table, prior_y, prior_z, "Y")
    return LeakageReport(v, entropy_of(v), Method.NAIVE, len(set(table.entries.values())))


def _zero_branch(spec: AffineSpec, method: Method) -> Optional[LeakageReport]:
    n1, m1 = spec.y_domain.size(), spec.z_domain.size()
    if spec.beta == 0:
        # Y is independent of O
        outputs = m1 if spec.gamma else 1
        v = Fraction(1, n1)
        return LeakageReport(v, entropy_of(v), method, outputs, (1, n1))
    if spec.gamma == 0:
        # y = (o - alpha) / beta
        return LeakageReport(Fraction(1), 0.0, method, n1, (n1, n1))
    return None


def conditional_min_entropy_closed(spec: AffineSpec) -> LeakageReport:
    """``H(Y|O)`` under uniform priors from the closed-form output count.

    Constant time in the interval sizes; the only non-constant step is the
    gcd of the two coefficients.
    """
    zero = _zero_branch(spec, Method.CLOSED)
    if zero is not None:
        return zero
    outputs = combinatorics.count_outputs(combinatorics.normalize(spec))
    pairs = spec.pair_count()
    v = Fraction(outputs, pairs)
    return LeakageReport(v, entropy_of(v), Method.CLOSED, outputs, (outputs, pairs))


def conditional_min_entropy_simplified(spec: AffineSpec, cap: int | None = None) -> LeakageReport:
    """``H(Y|O)`` under uniform priors, counting outputs by enumeration."""
    zero = _zero_branch(spec, Method.SIMPLIFIED)
    if zero is not None:
        return zero
    outputs = len(combinatorics.enumerate_outputs(combinatorics.normalize(spec), cap))
    pairs = spec.pair_count()
    v = Fraction(outputs, pairs)
    return LeakageReport(v, entropy_of(v), Method.SIMPLIFIED, outputs, (outputs, pairs))


def entropy_bounds(
    spec: AffineSpec,
    prior_y: DiscreteDistribution,
    prior_z: DiscreteDistribution,
) -> EntropyBounds:
    """Bracket ``H(Y|O)`` for arbitrary priors.

    ``lower = max(H(Y) + H(Z) - log2 N_O, 0)`` and ``upper = min(H(Y), H(Z))``.
    The lower bound is evaluated as ``-log2(N_O * max p_Y * max p_Z)`` on the
    exact rational, so it coincides with the closed form at uniform priors.
    """
    validate_spec(spec, prior_y, prior_z)
    if spec.beta == 0 or spec.gamma == 0:
        raise ZeroCoefficient("bounds need both coefficients non-zero")
    outputs = combinatorics.count_outputs(combinatorics.normalize(spec))
    hy, hz = min_entropy(prior_y), min_entropy(prior_z)
    product = outputs * prior_y.max_mass() * prior_z.max_mass()
    lower = 0.0 if product >= 1 else -log2_rational(product)
    return EntropyBounds(lower, min(hy, hz), hy, hz, outputs)


def analyze(
    spec: AffineSpec,
    prior_y: DiscreteDistribution,
    prior_z: DiscreteDistribution,
    method: str = "auto",
    cap: int | None = None,
) -> LeakageReport:
    """Dispatch to one engine.

    ``auto`` uses the closed form when both priors are uniform and the naive
    oracle otherwise; :class:`DomainTooLarge` propagates when the oracle would
    exceed ``cap``.
    """
    validate_spec(spec, prior_y, prior_z)
    uniform = prior_y.is_uniform() and prior_z.is_uniform()
    if method == "auto":
        method = "closed" if uniform else "naive"
    if method in ("closed", "simplified") and not uniform:
        raise ValueError(f"method {method!r} is only valid for uniform priors")
    if method == "closed":
        return conditional_min_entropy_closed(spec)
    if method == "simplified":
        return conditional_min_entropy_simplified(spec, cap)
    if method == "naive":
        return naive_report(spec, prior_y, prior_z, cap)
    raise ValueError(f"unknown method {method!r}")
