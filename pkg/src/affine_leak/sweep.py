"""Attacker-input sweeps, spike-weight sweeps and the timing harness."""

from __future__ import annotations

import enum
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from . import combinatorics
from .domain import AffineSpec, IntegerInterval
from .entropy import (
    ChannelTable,
    conditional_min_entropy_closed,
    conditional_min_entropy_simplified,
    conditional_vulnerability_direct,
    conditional_vulnerability_naive,
    entropy_bounds,
    entropy_of,
)
from .errors import DomainTooLarge
from .priors import spiked_prior, uniform_prior


def eval_poly(coeffs: Sequence[int], x: int) -> int:
    """Horner evaluation of ``c0 + c1*x + c2*x**2 + ...``."""
    if not coeffs:
        raise ValueError("a polynomial needs at least one coefficient")
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class PolynomialSpec:
    """Affine coefficients written as integer polynomials in the attacker's input."""

    alpha_coeffs: tuple[int, ...]
    beta_coeffs: tuple[int, ...]
    gamma_coeffs: tuple[int, ...]

    def __post_init__(self):
        for name in ("alpha_coeffs", "beta_coeffs", "gamma_coeffs"):
            coeffs = tuple(int(c) for c in getattr(self, name))
            if not coeffs:
                raise ValueError(f"{name} must not be empty")
            object.__setattr__(self, name, coeffs)

    def at(self, x: int, y_domain: IntegerInterval, z_domain: IntegerInterval) -> AffineSpec:
        return AffineSpec(
            eval_poly(self.alpha_coeffs, x),
            eval_poly(self.beta_coeffs, x),
            eval_poly(self.gamma_coeffs, x),
            y_domain,
            z_domain,
        )


# f(x, y, z) = (3x - 6) y + (x^2 - 2x + 6) z
EXAMPLE_SWEEP = PolynomialSpec((0,), (-6, 3), (6, -2, 1))
EXAMPLE_X_RANGE = IntegerInterval(0, 30)


class Branch(str, enum.Enum):
    CLOSED = "closed"
    BETA_ZERO = "betaZero"
    GAMMA_ZERO = "gammaZero"


def branch_of(spec: AffineSpec) -> Branch:
    if spec.beta == 0:
        return Branch.BETA_ZERO
    if spec.gamma == 0:
        return Branch.GAMMA_ZERO
    return Branch.CLOSED


@dataclass(frozen=True)
class SweepRow:
    x: int
    beta: int
    gamma: int
    entropy_bits: float
    vulnerability: Fraction
    branch: Branch
    vulnerability_text: str = ""


def _sweep_row(poly: PolynomialSpec, x: int, y_domain, z_domain) -> SweepRow:
    spec = poly.at(x, y_domain, z_domain)
    report = conditional_min_entropy_closed(spec)
    return SweepRow(
        x, spec.beta, spec.gamma, report.entropy_bits, report.vulnerability,
        branch_of(spec), report.vulnerability_text(),
    )


def sweep_attacker_input(
    poly: PolynomialSpec,
    x_range: IntegerInterval,
    y_domain: IntegerInterval,
    z_domain: IntegerInterval,
    workers: int = 1,
) -> list[SweepRow]:
    """Closed-form ``H(Y|O)`` under uniform priors for every ``x`` in ``x_range``.

    Rows come back ordered by ``x`` whatever ``workers`` is.
    """
    xs = list(x_range)
    if workers <= 1:
        return [_sweep_row(poly, x, y_domain, z_domain) for x in xs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda x: _sweep_row(poly, x, y_domain, z_domain), xs))
    return sorted(rows, key=lambda row: row.x)


@dataclass(frozen=True)
class SpikeRow:
    weight: Fraction
    naive_bits: Optional[float]
    lower: float
    upper: float


def equally_spaced_weights(count: int) -> list[Fraction]:
    """``k/count`` for ``k = 1..count``."""
    if count < 1:
        raise ValueError("need at least one weight")
    return [Fraction(k, count) for k in range(1, count + 1)]


def sweep_spike_weight(
    spec: AffineSpec,
    weights: Iterable,
    spike_center: int,
    cap: int | None = None,
) -> list[SpikeRow]:
    """Bounds and, when affordable, the exact ``H(Y|O)`` for a spiked spectator prior.

    ``Y`` is uniform; ``Z`` puts ``weight`` on ``spike_center``. The naive value is
    ``None`` when the channel table would exceed ``cap``.
    """
    prior_y = uniform_prior(spec.y_domain)
    table = None
    try:
        table = ChannelTable.from_affine(spec, cap)
    except DomainTooLarge:
        pass
    rows = []
    for w in weights:
        w = Fraction(w)
        prior_z = spiked_prior(spec.z_domain, spike_center, w)
        bounds = entropy_bounds(spec, prior_y, prior_z)
        naive = None
        if table is not None:
            naive = entropy_of(conditional_vulnerability_naive(table, prior_y, prior_z))
        rows.append(SpikeRow(w, naive, bounds.lower, bounds.upper))
    return rows


# -- benchmark ---------------------------------------------------------------

BENCH_METHODS = ("naive", "simplified", "closed")
PREDECLARE_FACTOR = 10
SUBSECOND_REPEATS = 3


class BenchStatus(str, enum.Enum):
    OK = "ok"
    TIMEOUT = "timeout"
    PREDICTED_TIMEOUT = "predicted-timeout"
    OVER_CAP = "over-cap"


@dataclass(frozen=True)
class BenchRow:
    """One cell of the timing table; ``seconds`` is ``None`` for every non-ok status."""

    p: int
    method: str
    seconds: Optional[float]
    status: BenchStatus
    entropies: Optional[tuple[float, ...]] = None

    @property
    def timed_out(self) -> bool:
        return self.status is not BenchStatus.OK


def _run_closed(specs, deadline, cap):
    return [conditional_min_entropy_closed(s).entropy_bits for s in specs]


def _run_simplified(specs, deadline, cap):
    out = []
    for s in specs:
        if time.monotonic() > deadline:
            raise TimeoutError
        out.append(conditional_min_entropy_simplified(s, cap).entropy_bits)
    return out


def _run_naive(specs, deadline, cap):
    out = []
    for s in specs:
        if time.monotonic() > deadline:
            raise TimeoutError
        table = ChannelTable.from_affine(s, cap)
        u_y, u_z = uniform_prior(s.y_domain), uniform_prior(s.z_domain)
        out.append(entropy_of(conditional_vulnerability_direct(table, u_y, u_z, deadline)))
    return out


_RUNNERS: dict[str, Callable] = {
    "closed": _run_closed,
    "simplified": _run_simplified,
    "naive": _run_naive,
}


def _cost(method: str, spec: AffineSpec) -> int:
    """Work units used by the infeasibility estimate."""
    pairs = spec.pair_count()
    if method == "naive":
        return pairs * pairs
    if method == "simplified":
        return pairs
    return 1


def benchmark_specs(p: int, poly: PolynomialSpec = EXAMPLE_SWEEP, x_range: IntegerInterval = EXAMPLE_X_RANGE):
    domain = IntegerInterval(0, 5**p)
    return [poly.at(x, domain, domain) for x in x_range]


def _time_once(method, specs, limit, cap):
    start = time.monotonic()
    entropies = _RUNNERS[method](specs, start + limit, cap)
    elapsed = time.monotonic() - start
    if elapsed > limit:
        raise TimeoutError
    return elapsed, entropies


def _measure(method, specs, limit, cap):
    elapsed, entropies = _time_once(method, specs, limit, cap)
    if elapsed < 1.0:
        samples = [elapsed] + [_time_once(method, specs, limit, cap)[0] for _ in range(SUBSECOND_REPEATS - 1)]
        elapsed = statistics.median(samples)
    return elapsed, entropies


def run_benchmark(
    p_list: Sequence[int],
    methods: Sequence[str] = BENCH_METHODS,
    time_limit: float = 60.0,
    poly: PolynomialSpec = EXAMPLE_SWEEP,
    x_range: IntegerInterval = EXAMPLE_X_RANGE,
    cap: int | None = None,
    agreement_tol: float = 1e-9,
) -> list[BenchRow]:
    """Time each method on the full attacker sweep with inputs in ``0..5**p``.

    Every method is first calibrated on ``p = 0`` to obtain seconds per work
    unit; a cell whose estimate exceeds ``PREDECLARE_FACTOR * time_limit`` is
    reported as ``predicted-timeout`` without running. Cells that start but
    overrun the limit are aborted and reported as ``timeout``. Rows are
    produced sequentially on the calling thread.

    Completed methods must agree on every entropy to ``agreement_tol`` bits,
    otherwise :class:`AssertionError` is raised.
    """
    if time_limit <= 0:
        raise ValueError("time_limit must be positive")
    for method in methods:
        if method not in _RUNNERS:
            raise ValueError(f"unknown benchmark method {method!r}")
    effective_cap = combinatorics.DEFAULT_CAP if cap is None else cap

    calibration = {}
    base_specs = benchmark_specs(0, poly, x_range)
    for method in methods:
        seconds, _ = _measure(method, base_specs, time_limit, effective_cap)
        units = sum(_cost(method, s) for s in base_specs)
        calibration[method] = seconds / units

    rows = []
    for p in p_list:
        specs = benchmark_specs(p, poly, x_range)
        completed = {}
        for method in methods:
            estimate = calibration[method] * sum(_cost(method, s) for s in specs)
            if method != "closed" and estimate > PREDECLARE_FACTOR * time_limit:
                rows.append(BenchRow(p, method, None, BenchStatus.PREDICTED_TIMEOUT))
                continue
            try:
                seconds, entropies = _measure(method, specs, time_limit, effective_cap)
            except TimeoutError:
                rows.append(BenchRow(p, method, None, BenchStatus.TIMEOUT))
                continue
            except DomainTooLarge:
                rows.append(BenchRow(p, method, None, BenchStatus.OVER_CAP))
                continue
            completed[method] = entropies
            rows.append(BenchRow(p, method, seconds, BenchStatus.OK, tuple(entropies)))
        _check_agreement(p, completed, agreement_tol)
    return rows


def _check_agreement(p, completed, tol):
    if len(completed) < 2:
        return
    (ref_name, ref), *others = completed.items()
    for name, values in others:
        for x_index, (a, b) in enumerate(zip(ref, values)):
            if abs(a - b) > tol:
                raise AssertionError(
                    f"p={p}: {ref_name} and {name} disagree at sweep point {x_index}: {a} vs {b}"
                )
