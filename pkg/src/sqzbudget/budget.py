"""Noise-budget assembly: spectra, improvement metrics, sweeps.

The budget combines the quantum-noise ASD (scaled by the squeezing
factor) with the technical envelope in quadrature, and reports the
squeezed-versus-unsqueezed improvement two ways:

* ``broadband_improvement_db``: median of the per-frequency improvement
  over the summary band, taken from the full spectra (technical noise
  dilutes it at the low edge of the band);
* ``shot_limited_improvement_db``: the asymptote where quantum noise
  dominates, -20*log10(squeezing factor). This is the number that
  saturates at -10*log10(1 - eta) for strong injected squeezing.

Improvements are power dB of the noise-power ratio, i.e.
20*log10(asd_off / asd_on).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .config import RunConfig
from .errors import ConfigError, DomainError
from .ifo import (
    FrequencyGrid,
    IfoConfig,
    shot_noise_asd,
    squeezing_factor,
    technical_noise_asd,
)
from .losses import DegradationRow, chain_efficiency, degradation_report
from .quadrature import SqueezeLevel, state_from_db


@dataclass(frozen=True)
class NoiseSpectrum:
    """Strain noise budget on a frequency grid.

    ``quantum`` already includes any squeezing factor; ``total`` is the
    quadrature sum of the two sources, enforced at construction.
    """

    grid: FrequencyGrid
    quantum: np.ndarray
    tech: np.ndarray
    total: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.grid)
        for name in ("quantum", "tech", "total"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (n,):
                raise DomainError(
                    f"{name} must have one entry per grid point "
                    f"({arr.shape} vs {n})"
                )
            if not np.all(np.isfinite(arr)):
                raise DomainError(f"{name} must be finite")
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if np.any(self.quantum <= 0.0) or np.any(self.tech < 0.0):
            raise DomainError("quantum must be positive and tech non-negative")
        expected = np.hypot(self.quantum, self.tech)
        if not np.allclose(self.total, expected, rtol=1e-12, atol=0.0):
            raise DomainError("total must be the quadrature sum of the sources")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NoiseSpectrum):
            return NotImplemented
        return (
            self.grid == other.grid
            and np.array_equal(self.quantum, other.quantum)
            and np.array_equal(self.tech, other.tech)
            and np.array_equal(self.total, other.total)
        )

    __hash__ = None  # type: ignore[assignment]


def total_noise(cfg: IfoConfig, grid: FrequencyGrid, sqz: float = 1.0) -> NoiseSpectrum:
    """Assemble the noise budget, optionally with squeezing applied.

    ``sqz`` multiplies the quantum-noise amplitude: 1 for squeezing off,
    the squeezing factor otherwise. Sources add in quadrature.
    """
    if not math.isfinite(sqz) or sqz <= 0.0:
        raise DomainError(f"squeezing factor must be positive and finite, got {sqz!r}")
    shot = np.asarray(shot_noise_asd(cfg, grid.values))
    tech = np.asarray(technical_noise_asd(cfg, grid.values))
    quantum = sqz * shot
    return NoiseSpectrum(grid, quantum, tech, np.hypot(quantum, tech))


def improvement_db(
    off: NoiseSpectrum,
    on: NoiseSpectrum,
    band: tuple[float, float] = (1000.0, 5000.0),
) -> tuple[np.ndarray, float]:
    """Per-frequency improvement in dB plus the band median.

    20*log10(off.total / on.total) bin by bin (power dB of the noise
    power ratio), and the median over grid points inside ``band``. Both
    spectra must live on the same grid.
    """
    if off.grid != on.grid:
        raise DomainError("spectra are on different frequency grids")
    lo, hi = band
    if not (math.isfinite(lo) and math.isfinite(hi)) or not 0.0 < lo < hi:
        raise DomainError(f"band must satisfy 0 < lo < hi, got {band!r}")
    per_bin = 20.0 * np.log10(off.total / on.total)
    f = off.grid.values
    mask = (f >= lo) & (f <= hi)
    if not np.any(mask):
        raise DomainError(f"band {band!r} contains no grid points")
    return per_bin, float(np.median(per_bin[mask]))


def shot_limited_improvement_db(sqz: float) -> float:
    """Improvement where quantum noise dominates: -20*log10(sqz)."""
    if not math.isfinite(sqz) or sqz <= 0.0:
        raise DomainError(f"squeezing factor must be positive and finite, got {sqz!r}")
    return -20.0 * math.log10(sqz)


def detection_rate_gain(amplitude_ratio: float) -> float:
    """Detection-rate gain from a sensitivity amplitude ratio.

    Event rate scales with the observable volume, i.e. with range cubed:
    a ratio r in amplitude sensitivity gains r^3 in rate. Multiplicative:
    gain(r1*r2) = gain(r1)*gain(r2).
    """
    if not math.isfinite(amplitude_ratio) or amplitude_ratio <= 0.0:
        raise DomainError(
            f"amplitude ratio must be positive and finite, got {amplitude_ratio!r}"
        )
    return amplitude_ratio**3


def required_efficiency_for_improvement(target_db: float, level: SqueezeLevel) -> float:
    """Efficiency needed to reach a target shot-limited improvement.

    Inverts eta*v + (1 - eta) = 10**(-target_db/10) for an aligned,
    jitter-free readout of the given injected level:

        eta = (1 - 10**(-target_db/10)) / (1 - v_in)

    Raises if the target is unreachable (it exceeds the injected level,
    so no passive efficiency suffices, or the input is not squeezed).
    """
    if not math.isfinite(target_db) or target_db <= 0.0:
        raise DomainError(f"target_db must be positive and finite, got {target_db!r}")
    v_in = 10.0 ** (-level.squeeze_db / 10.0)
    if v_in >= 1.0:
        raise DomainError(
            "injected level is not squeezed (squeeze_db = 0); no efficiency helps"
        )
    if target_db > level.squeeze_db:
        raise DomainError(
            f"target of {target_db!r} dB exceeds the injected "
            f"{level.squeeze_db!r} dB; unreachable at any efficiency"
        )
    v_target = 10.0 ** (-target_db / 10.0)
    return (1.0 - v_target) / (1.0 - v_in)


@dataclass(frozen=True)
class BudgetReport:
    """Everything one budget evaluation produced.

    ``ledger`` tabulates the named loss stages; when the configuration
    pins ``eta_total`` the budget itself uses that measured value, and
    ``eta_effective`` records which number was used.
    """

    run: RunConfig
    spectrum_off: NoiseSpectrum
    spectrum_on: NoiseSpectrum
    improvement_db: np.ndarray
    broadband_improvement_db: float
    shot_limited_improvement_db: float
    squeezing_factor: float
    rate_gain: float
    eta_effective: float
    eta_stage_product: float
    ledger: tuple[DegradationRow, ...]
    anchor_computed_asd: float


def build_report(run: RunConfig) -> BudgetReport:
    """Evaluate the full noise budget for one run configuration."""
    state = state_from_db(run.level, run.injection_angle_rad)
    chain = run.effective_chain()
    sqz = squeezing_factor(state, chain, run.sigma_jitter_rad)
    grid = run.grid()
    off = total_noise(run.ifo, grid, 1.0)
    on = total_noise(run.ifo, grid, sqz)
    per_bin, band_median = improvement_db(
        off, on, (run.band_min_hz, run.band_max_hz)
    )
    per_bin = per_bin.copy()
    per_bin.setflags(write=False)
    anchor_f = run.ifo.anchor_freq_hz
    anchor_total = math.hypot(
        float(shot_noise_asd(run.ifo, anchor_f)),
        float(technical_noise_asd(run.ifo, anchor_f)),
    )
    return BudgetReport(
        run=run,
        spectrum_off=off,
        spectrum_on=on,
        improvement_db=per_bin,
        broadband_improvement_db=band_median,
        shot_limited_improvement_db=shot_limited_improvement_db(sqz),
        squeezing_factor=sqz,
        rate_gain=detection_rate_gain(1.0 / sqz),
        eta_effective=chain_efficiency(chain),
        eta_stage_product=chain_efficiency(run.loss_stages),
        ledger=degradation_report(run.level, run.loss_stages),
        anchor_computed_asd=anchor_total,
    )


SWEEP_AXES = ("eta", "injected_db", "sigma")


@dataclass(frozen=True)
class SweepRow:
    """One sweep point with the improvement metrics evaluated there."""

    value: float
    broadband_improvement_db: float
    shot_limited_improvement_db: float
    rate_gain: float


def _run_at(run: RunConfig, axis: str, value: float) -> RunConfig:
    if axis == "eta":
        return replace(run, eta_total=value)
    if axis == "injected_db":
        level = SqueezeLevel(value, max(run.level.antisqueeze_db, value))
        return replace(run, level=level)
    return replace(run, sigma_jitter_rad=value)


def _check_sweep_value(axis: str, index: int, value: float) -> None:
    ok = math.isfinite(value)
    if ok:
        if axis == "eta":
            ok = 0.0 < value <= 1.0
        elif axis == "injected_db":
            ok = value >= 0.0
        else:
            ok = value >= 0.0
    if not ok:
        bound = {
            "eta": "(0, 1]",
            "injected_db": ">= 0",
            "sigma": ">= 0",
        }[axis]
        raise DomainError(
            f"sweep value [{index}] = {value!r} is outside the {axis} "
            f"domain {bound}"
        )


def sweep(run: RunConfig, axis: str, values) -> tuple[SweepRow, ...]:
    """Evaluate the budget along one parameter axis.

    ``axis`` is one of ``eta`` (overall efficiency), ``injected_db``
    (injected squeezing, anti-squeezing floored at the configured
    level), or ``sigma`` (phase jitter RMS). Every value is validated
    up front; an invalid one aborts the whole sweep naming its index.
    """
    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis '{axis}'; expected one of {SWEEP_AXES}")
    values = [float(v) for v in values]
    if len(values) == 0:
        raise ConfigError("sweep needs at least one value")
    for i, v in enumerate(values):
        _check_sweep_value(axis, i, v)
    rows = []
    for v in values:
        report = build_report(_run_at(run, axis, v))
        rows.append(
            SweepRow(
                value=v,
                broadband_improvement_db=report.broadband_improvement_db,
                shot_limited_improvement_db=report.shot_limited_improvement_db,
                rate_gain=report.rate_gain,
            )
        )
    return tuple(rows)
