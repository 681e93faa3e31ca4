"""Brute-force reference computations that share no code with the package."""

import math
import random
from fractions import Fraction

from affine_leak.domain import AffineSpec, DiscreteDistribution, IntegerInterval


def brute_outputs(alpha, beta, gamma, ys, zs):
    """Independent of the package: the set of outputs by double loop."""
    return {alpha + beta * y + gamma * z for y in ys for z in zs}


def brute_vulnerability(alpha, beta, gamma, py, pz):
    """Textbook V(Y|O) with Fractions; py, pz are dicts value -> mass."""
    total = Fraction(0)
    outputs = brute_outputs(alpha, beta, gamma, py, pz)
    for o in outputs:
        total += max(
            py[y] * sum((pz[z] for z in pz if alpha + beta * y + gamma * z == o), Fraction(0))
            for y in py
        )
    return total


def random_distribution(rng: random.Random, support: IntegerInterval, zero_prob=0.2):
    weights = {v: (0 if rng.random() < zero_prob else rng.randint(1, 9)) for v in support}
    if not any(weights.values()):
        weights[support.lo] = 1
    total = sum(weights.values())
    return DiscreteDistribution.from_masses(support, {v: Fraction(w, total) for v, w in weights.items()})


def random_spec(rng: random.Random, coef=6, size=12):
    beta = rng.choice([k for k in range(-coef, coef + 1) if k])
    gamma = rng.choice([k for k in range(-coef, coef + 1) if k])
    y_lo, z_lo = rng.randint(-5, 5), rng.randint(-5, 5)
    y = IntegerInterval(y_lo, y_lo + rng.randint(0, size - 1))
    z = IntegerInterval(z_lo, z_lo + rng.randint(0, size - 1))
    return AffineSpec(rng.randint(-10, 10), beta, gamma, y, z)


COPRIME_PAIRS_10 = [(b, g) for b in range(1, 11) for g in range(1, 11) if math.gcd(b, g) == 1]
