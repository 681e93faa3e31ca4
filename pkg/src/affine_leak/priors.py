"""Prior beliefs: uniform, spiked and file-backed distributions.

File format (UTF-8)::

    #sparse            optional first line: unlisted support values get mass 0
    # any other line starting with '#' is a comment
    0<TAB>1/2
    1<TAB>0/1
    2<TAB>1/2

Masses are exact rationals ``p/q`` or bare integers; decimals are rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, TextIO, Union

from .domain import DiscreteDistribution, IntegerInterval
from .errors import (
    CenterOutOfRange,
    DegenerateSupport,
    DistributionSyntaxError,
    DuplicateValue,
    SumNotOne,
    SupportMismatch,
    WeightOutOfRange,
)

_INT = re.compile(r"[+-]?\d+\Z")
_RATIONAL = re.compile(r"(\d+)(?:/(\d+))?\Z")


def uniform_prior(support: IntegerInterval) -> DiscreteDistribution:
    return DiscreteDistribution(support, {}, Fraction(1, support.size()))


def point_mass(support: IntegerInterval, value: int) -> DiscreteDistribution:
    if value not in support:
        raise CenterOutOfRange(f"{value} is not in {support}")
    return DiscreteDistribution(support, {value: Fraction(1)}, Fraction(0))


def spiked_prior(support: IntegerInterval, center: int, weight) -> DiscreteDistribution:
    """Mass ``weight`` at ``center``, the rest spread evenly over the other values."""
    weight = Fraction(weight)
    if center not in support:
        raise CenterOutOfRange(f"center {center} is not in {support}")
    if not 0 <= weight <= 1:
        raise WeightOutOfRange(f"weight {weight} is not in [0, 1]")
    size = support.size()
    if size == 1:
        if weight != 1:
            raise DegenerateSupport("a single-value support needs weight 1")
        return DiscreteDistribution(support, {center: Fraction(1)}, Fraction(0))
    return DiscreteDistribution(support, {center: weight}, (1 - weight) / (size - 1))


def parse_rational(token: str) -> Fraction:
    """Parse ``p/q`` or a bare non-negative integer; anything else is a ValueError."""
    match = _RATIONAL.match(token.strip())
    if not match:
        raise ValueError(f"not an exact rational: {token!r}")
    num, den = int(match.group(1)), int(match.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator: {token!r}")
    return Fraction(num, den)


def parse_distribution(text: Union[str, TextIO, Iterable[str]], declared_support: IntegerInterval) -> DiscreteDistribution:
    """Read a distribution file and check it against ``declared_support``.

    Raises
    ------
    DistributionSyntaxError
        Malformed record (with 1-based line and column).
    DuplicateValue
        The same value appears twice.
    SupportMismatch
        A value lies outside the support, or a non-sparse file omits one.
    SumNotOne
        Masses do not add up to exactly 1; ``deficit`` holds ``1 - total``.
    """
    lines = text.splitlines() if isinstance(text, str) else [line.rstrip("\n") for line in text]
    sparse = False
    masses: dict[int, Fraction] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r")
        if lineno == 1 and line.lstrip("﻿").strip() == "#sparse":
            sparse = True
            continue
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise DistributionSyntaxError("expected '<value><TAB><p>/<q>'", lineno, 1)
        value_txt, mass_txt = fields
        if not _INT.match(value_txt.strip()):
            raise DistributionSyntaxError(f"bad integer value {value_txt!r}", lineno, 1)
        try:
            mass = parse_rational(mass_txt)
        except ValueError as exc:
            raise DistributionSyntaxError(str(exc), lineno, len(value_txt) + 2) from None
        value = int(value_txt)
        if value in masses:
            raise DuplicateValue(f"value {value} listed twice", lineno, 1)
        if value not in declared_support:
            raise SupportMismatch(f"value {value} on line {lineno} is outside {declared_support}")
        masses[value] = mass
    if not sparse and len(masses) != declared_support.size():
        missing = next(v for v in declared_support if v not in masses)
        raise SupportMismatch(f"value {missing} of {declared_support} is missing (add '#sparse' to allow gaps)")
    total = sum(masses.values(), Fraction(0))
    if total != 1:
        raise SumNotOne(total)
    return DiscreteDistribution.from_masses(declared_support, masses)


def load_distribution(path, declared_support: IntegerInterval) -> DiscreteDistribution:
    with open(path, encoding="utf-8") as fh:
        return parse_distribution(fh.read(), declared_support)


def serialize_distribution(d: DiscreteDistribution, sparse: bool = False) -> str:
    """Inverse of :func:`parse_distribution`; ``sparse`` drops zero-mass lines."""
    out = ["#sparse"] if sparse else []
    for value, p in d.masses():
        if sparse and p == 0:
            continue
        out.append(f"{value}\t{p.numerator}/{p.denominator}")
    return "\n".join(out) + "\n"
