"""Monte-Carlo oracle for the quadrature algebra.

Draws homodyne samples of a squeezed quadrature propagated through loss
(and optional phase jitter) and compares the sample variance against the
closed-form prediction. Sampling uses numpy's default PCG64 generator
seeded explicitly, so a given (inputs, seed) pair is bit-reproducible.
If sampling were ever sharded across workers, substreams would have to
come from ``SeedSequence.spawn`` on the same seed; the implementation
here is a single stream.

Loss is realized as a beam splitter: transmit the field amplitude with
sqrt(eta) and fill the open port with vacuum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import QuadratureState, apply_loss, dephase, readout_variance

# Acceptance window on the z-score of the variance estimate.
Z_MAX = 3.0


@dataclass(frozen=True)
class SampleRun:
    """Outcome of one Monte-Carlo variance estimate.

    ``standard_error`` uses the Gaussian sampling distribution of the
    variance: estimated_variance * sqrt(2 / (n_samples - 1)).
    """

    n_samples: int
    seed: int
    estimated_variance: float
    standard_error: float


@dataclass(frozen=True)
class OracleVerdict:
    """Comparison of an analytic variance against a sampled one."""

    name: str
    analytic: float
    run: SampleRun
    z: float
    passed: bool


def _se(estimate: float, n: int) -> float:
    return estimate * math.sqrt(2.0 / (n - 1))


def sample_lossy_squeezed(
    v_sq: float,
    efficiency: float,
    *,
    n_samples: int,
    seed: int,
    v_anti: float | None = None,
    angle: float = 0.0,
    sigma_jitter: float = 0.0,
) -> SampleRun:
    """Sample the readout quadrature of a squeezed field after loss.

    Per sample: draw the quadrature angle (mean ``angle``, RMS jitter
    ``sigma_jitter``), draw the field quadrature with the projected
    variance, then mix with vacuum on a beam splitter of power
    transmission ``efficiency``. Returns the unbiased sample variance
    and its standard error.

    ``v_anti`` defaults to the minimum-uncertainty partner of ``v_sq``;
    it only matters when the angle or the jitter is nonzero.
    """
    if not math.isfinite(v_sq) or v_sq <= 0.0:
        raise DomainError(f"v_sq must be positive and finite, got {v_sq!r}")
    if not math.isfinite(efficiency) or not 0.0 < efficiency <= 1.0:
        raise DomainError(f"efficiency must lie in (0, 1], got {efficiency!r}")
    if not math.isfinite(sigma_jitter) or sigma_jitter < 0.0:
        raise DomainError(f"sigma_jitter must be >= 0, got {sigma_jitter!r}")
    if n_samples < 2:
        raise DomainError(f"n_samples must be >= 2, got {n_samples!r}")
    if v_anti is None:
        v_anti = max(v_sq, 1.0 / v_sq)
    elif not math.isfinite(v_anti) or v_anti < v_sq:
        raise DomainError(f"v_anti must be >= v_sq, got {v_anti!r}")

    rng = np.random.default_rng(seed)
    if angle != 0.0 or sigma_jitter > 0.0:
        theta = angle + sigma_jitter * rng.standard_normal(n_samples)
        projected = v_sq * np.cos(theta) ** 2 + v_anti * np.sin(theta) ** 2
    else:
        projected = v_sq
    field = np.sqrt(projected) * rng.standard_normal(n_samples)
    mixed = math.sqrt(efficiency) * field + math.sqrt(1.0 - efficiency) * rng.standard_normal(n_samples)
    estimate = float(np.var(mixed, ddof=1))
    return SampleRun(
        n_samples=n_samples,
        seed=seed,
        estimated_variance=estimate,
        standard_error=_se(estimate, n_samples),
    )


def sample_two_stage(
    v_sq: float,
    efficiency_first: float,
    efficiency_second: float,
    *,
    n_samples: int,
    seed: int,
) -> SampleRun:
    """Sample loss applied as two consecutive beam splitters.

    In distribution this must match a single splitter with the product
    efficiency; used to check that losses compose multiplicatively.
    """
    for name, eta in (
        ("efficiency_first", efficiency_first),
        ("efficiency_second", efficiency_second),
    ):
        if not math.isfinite(eta) or not 0.0 < eta <= 1.0:
            raise DomainError(f"{name} must lie in (0, 1], got {eta!r}")
    if not math.isfinite(v_sq) or v_sq <= 0.0:
        raise DomainError(f"v_sq must be positive and finite, got {v_sq!r}")
    if n_samples < 2:
        raise DomainError(f"n_samples must be >= 2, got {n_samples!r}")
    rng = np.random.default_rng(seed)
    field = math.sqrt(v_sq) * rng.standard_normal(n_samples)
    once = math.sqrt(efficiency_first) * field + math.sqrt(1.0 - efficiency_first) * rng.standard_normal(n_samples)
    twice = math.sqrt(efficiency_second) * once + math.sqrt(1.0 - efficiency_second) * rng.standard_normal(n_samples)
    estimate = float(np.var(twice, ddof=1))
    return SampleRun(
        n_samples=n_samples,
        seed=seed,
        estimated_variance=estimate,
        standard_error=_se(estimate, n_samples),
    )


def oracle_compare(name: str, analytic: float, run: SampleRun) -> OracleVerdict:
    """Judge a sample run against its closed-form prediction.

    Passes when the estimate lies within Z_MAX standard errors of the
    analytic value.
    """
    if not math.isfinite(analytic) or analytic <= 0.0:
        raise DomainError(f"analytic variance must be positive, got {analytic!r}")
    z = (run.estimated_variance - analytic) / run.standard_error
    return OracleVerdict(
        name=name,
        analytic=analytic,
        run=run,
        z=z,
        passed=abs(z) <= Z_MAX,
    )


def standard_suite(seed: int = 42, n_samples: int = 1_000_000) -> tuple[OracleVerdict, ...]:
    """The stock oracle checks the ``oracle`` subcommand runs.

    Three single-splitter variance checks, a two-splitter composition
    check, and a phase-jitter check against the Gaussian-average closed
    form. Seeds for the individual runs are derived from ``seed`` by
    fixed offsets, so the whole suite is reproducible from one number.
    """
    if n_samples < 10_000:
        raise DomainError(
            f"oracle verdicts need n_samples >= 10000, got {n_samples!r}"
        )

    def loss_variance(v: float, eta: float) -> float:
        return v + (1.0 - eta) * (1.0 - v)

    checks = []

    trio = (
        ("squeezed_10db_eta_0.62", 0.1, 0.62),
        ("vacuum_eta_0.50", 1.0, 0.5),
        ("squeezed_9db_eta_0.833", 0.126, 0.833),
    )
    for i, (name, v, eta) in enumerate(trio):
        run = sample_lossy_squeezed(v, eta, n_samples=n_samples, seed=seed + i)
        checks.append(oracle_compare(name, loss_variance(v, eta), run))

    run = sample_two_stage(0.1, 0.9, 0.8, n_samples=n_samples, seed=seed + 3)
    checks.append(oracle_compare("two_stage_0.9x0.8", loss_variance(0.1, 0.72), run))

    state = QuadratureState(0.1, 10.0)
    sigma = 0.05
    eta = 0.62
    analytic = readout_variance(dephase(apply_loss(state, eta), sigma))
    run = sample_lossy_squeezed(
        0.1, eta, n_samples=n_samples, seed=seed + 4, v_anti=10.0, sigma_jitter=sigma
    )
    checks.append(oracle_compare("jitter_sigma_0.05_eta_0.62", analytic, run))

    return tuple(checks)
