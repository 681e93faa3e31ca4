"""Counting the outputs of ``beta*y + gamma*z`` over a box of integers.

The closed form :func:`count_outputs` is the workhorse; :func:`enumerate_outputs`
and :func:`preimage_table` are brute-force oracles kept deliberately simple.
"""

from __future__ import annotations

import numpy as np

from .domain import AffineSpec, NormalizedAffine
from .errors import DomainTooLarge, NotCoprime, ZeroCoefficient

DEFAULT_CAP = 10**8

# numpy's int64 is safe for outputs below this bound
_INT64_SAFE = 2**62


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of ``|a|`` and ``|b|`` by Euclid's algorithm.

    ``gcd(0, 0)`` is 0.
    """
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def floor_sum(p: int, q: int) -> int:
    """Sum of ``floor(k*p/q)`` for ``k = 1..q-1`` by direct summation.

    For coprime ``p`` and ``q`` the sum equals ``(p-1)(q-1)/2``; the identity is
    checked on every call.
    """
    if p < 1 or q < 1:
        raise ValueError("floor_sum needs positive integers")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) = {gcd(p, q)}")
    total = sum((k * p) // q for k in range(1, q))
    assert 2 * total == (p - 1) * (q - 1), (p, q, total)
    return total


def normalize(spec: AffineSpec) -> NormalizedAffine:
    """Reduce a spec to coprime positive coefficients over ``0..n`` x ``0..m``.

    Dropping alpha, shifting both intervals to start at zero, flipping signs
    (``y -> n - y`` keeps the interval) and dividing out the gcd all preserve
    the number of distinct outputs.
    """
    if spec.beta == 0 or spec.gamma == 0:
        raise ZeroCoefficient(f"beta={spec.beta}, gamma={spec.gamma}")
    d = gcd(spec.beta, spec.gamma)
    return NormalizedAffine(
        beta_prime=abs(spec.beta) // d,
        gamma_prime=abs(spec.gamma) // d,
        n=spec.y_domain.size() - 1,
        m=spec.z_domain.size() - 1,
        d=d,
    )


def is_injective(na: NormalizedAffine) -> bool:
    """True when no two input pairs share an output (``n < gamma'`` or ``m < beta'``)."""
    return na.n < na.gamma_prime or na.m < na.beta_prime


def count_outputs(na: NormalizedAffine) -> int:
    """Number of distinct values of ``beta'*y + gamma'*z`` in constant time.

    Both branch comparisons are inclusive: ``n >= gamma'`` and ``m >= beta'``
    select the collision formula, which still holds at ``m == beta'``.
    """
    b, g, n, m = na.beta_prime, na.gamma_prime, na.n, na.m
    if is_injective(na):
        return (n + 1) * (m + 1)
    return b * n + g * m + 1 - (b - 1) * (g - 1)


def prefix_count(beta_prime: int, gamma_prime: int) -> int:
    """Outputs lying in ``0..beta'*gamma'-1`` when ``n >= gamma'`` and ``m >= beta'``."""
    if beta_prime < 1 or gamma_prime < 1:
        raise ValueError("coefficients must be positive")
    if gcd(beta_prime, gamma_prime) != 1:
        raise NotCoprime(f"gcd({beta_prime}, {gamma_prime}) != 1")
    twice_gaps = (beta_prime - 1) * (gamma_prime - 1)
    assert twice_gaps % 2 == 0
    return beta_prime * gamma_prime - twice_gaps // 2


def _check_cap(pairs: int, cap: int | None) -> int:
    cap = DEFAULT_CAP if cap is None else cap
    if pairs > cap:
        raise DomainTooLarge(pairs, cap)
    return cap


def enumerate_outputs(na: NormalizedAffine, cap: int | None = None) -> list[int]:
    """The sorted set of outputs, found by visiting every input pair.

    Raises :class:`DomainTooLarge` when ``(n+1)(m+1)`` exceeds ``cap``.
    """
    cap = _check_cap(na.pair_count(), cap)
    b, g, n, m = na.beta_prime, na.gamma_prime, na.n, na.m
    top = na.max_output
    if top < _INT64_SAFE and top + 1 <= cap:
        # bitset over 0..top, one vectorised row per y
        seen = np.zeros(top + 1, dtype=bool)
        column = g * np.arange(m + 1, dtype=np.int64)
        for y in range(n + 1):
            seen[b * y + column] = True
        return np.flatnonzero(seen).tolist()
    return sorted({b * y + g * z for y in range(n + 1) for z in range(m + 1)})


def enumerate_spec_outputs(spec: AffineSpec, cap: int | None = None) -> list[int]:
    """Sorted distinct outputs of a raw, unnormalized spec (pure Python)."""
    _check_cap(spec.pair_count(), cap)
    return sorted({spec.output(y, z) for y in spec.y_domain for z in spec.z_domain})


def preimage_table(na: NormalizedAffine, cap: int | None = None):
    """Every input pair with its output, sorted by ``(output, y)``.

    Returns three int64 arrays ``(outputs, ys, zs)``; consecutive rows with
    equal output are the collisions.
    """
    _check_cap(na.pair_count(), cap)
    if na.max_output >= _INT64_SAFE:
        raise OverflowError("preimage_table only supports outputs below 2**62")
    ys, zs = np.meshgrid(
        np.arange(na.n + 1, dtype=np.int64), np.arange(na.m + 1, dtype=np.int64), indexing="ij"
    )
    ys, zs = ys.ravel(), zs.ravel()
    outputs = na.beta_prime * ys + na.gamma_prime * zs
    order = np.lexsort((ys, outputs))
    return outputs[order], ys[order], zs[order]


def residues(beta_prime: int, gamma_prime: int) -> set[int]:
    """``{beta' * j mod gamma' : j in 0..gamma'-1}``."""
    return {(beta_prime * j) % gamma_prime for j in range(gamma_prime)}


__all__ = [
    "DEFAULT_CAP",
    "count_outputs",
    "enumerate_outputs",
    "enumerate_spec_outputs",
    "floor_sum",
    "gcd",
    "is_injective",
    "normalize",
    "prefix_count",
    "preimage_table",
    "residues",
]
