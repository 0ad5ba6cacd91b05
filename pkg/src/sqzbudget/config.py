"""Run configuration: flat key = value text format and validation.

The format is deliberately small: one ``key = value`` pair per line,
``#`` starts a comment (whole-line or trailing), blank lines ignored.
Every key has a default, so the empty document is the GEO 600 preset.
Unknown and duplicate keys are rejected, not ignored; error messages
carry the line number, the key, and the violated bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import ConfigError, DomainError
from .ifo import FrequencyGrid, IfoConfig
from .losses import LossElement
from .quadrature import SqueezeLevel

_GRID_SPACINGS = ("log", "linear")


@dataclass(frozen=True)
class RunConfig:
    """One complete budget run: instrument, source, losses, grid, band."""

    ifo: IfoConfig = field(default_factory=IfoConfig)
    level: SqueezeLevel = SqueezeLevel(10.0, 15.0)
    injection_angle_rad: float = 0.0
    sigma_jitter_rad: float = 0.0
    loss_stages: tuple[LossElement, ...] = (
        LossElement("sr_cavity", 0.90),
        LossElement("output_mode_cleaner", 0.90),
        LossElement("detection", 0.80),
    )
    eta_total: float | None = 0.62
    f_min_hz: float = 10.0
    f_max_hz: float = 10000.0
    grid_points: int = 1000
    grid_spacing: str = "log"
    band_min_hz: float = 1000.0
    band_max_hz: float = 5000.0

    def grid(self) -> FrequencyGrid:
        if self.grid_spacing == "linear":
            return FrequencyGrid.linspace(self.f_min_hz, self.f_max_hz, self.grid_points)
        return FrequencyGrid.logspace(self.f_min_hz, self.f_max_hz, self.grid_points)

    def effective_chain(self) -> tuple[LossElement, ...]:
        """Loss chain the budget actually uses.

        A measured overall efficiency, when present, overrides the
        product of the named stages (stage values are nominal and their
        product need not match the measured total).
        """
        if self.eta_total is not None:
            return (LossElement("total", self.eta_total),)
        return self.loss_stages

    def to_text(self) -> str:
        """Serialize to the flat config format; parses back equal."""
        stages = ",".join(f"{e.name}:{e.efficiency!r}" for e in self.loss_stages)
        eta = "none" if self.eta_total is None else repr(self.eta_total)
        lines = [
            "# instrument",
            f"arm_length_eff = {self.ifo.arm_length_eff!r}",
            f"power_bs = {self.ifo.power_bs!r}",
            f"wavelength = {self.ifo.wavelength!r}",
            f"sr_pole_hz = {self.ifo.sr_pole_hz!r}",
            f"anchor_freq_hz = {self.ifo.anchor_freq_hz!r}",
            f"anchor_asd = {self.ifo.anchor_asd!r}",
            f"tech_displacement_asd = {self.ifo.tech_displacement_asd!r}",
            f"tech_corner_hz = {self.ifo.tech_corner_hz!r}",
            "",
            "# squeezed source",
            f"squeeze_db = {self.level.squeeze_db!r}",
            f"antisqueeze_db = {self.level.antisqueeze_db!r}",
            f"injection_angle_rad = {self.injection_angle_rad!r}",
            f"sigma_jitter_rad = {self.sigma_jitter_rad!r}",
            "",
            "# losses: named stages, and the measured total that overrides",
            "# their product when not 'none'",
            f"loss_stages = {stages}",
            f"eta_total = {eta}",
            "",
            "# analysis grid and summary band",
            f"f_min_hz = {self.f_min_hz!r}",
            f"f_max_hz = {self.f_max_hz!r}",
            f"grid_points = {self.grid_points!r}",
            f"grid_spacing = {self.grid_spacing}",
            f"band_min_hz = {self.band_min_hz!r}",
            f"band_max_hz = {self.band_max_hz!r}",
        ]
        return "\n".join(lines) + "\n"


def default_run_config() -> RunConfig:
    """The GEO 600 preset: every key at its default."""
    return RunConfig()


def default_config_text() -> str:
    """The GEO 600 preset in config-file form (what ``preset`` prints)."""
    return default_run_config().to_text()


def _cast_float(raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"not a number: {raw!r}") from None


def _cast_int(raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"not an integer: {raw!r}") from None


def _positive(key: str, value: float) -> float:
    if not math.isfinite(value) or value <= 0.0:
        raise ConfigError(f"{key} = {value!r} violates bound: must be > 0 and finite")
    return value


def _non_negative(key: str, value: float) -> float:
    if not math.isfinite(value) or value < 0.0:
        raise ConfigError(f"{key} = {value!r} violates bound: must be >= 0 and finite")
    return value


def _unit_interval(key: str, value: float) -> float:
    if not math.isfinite(value) or not 0.0 < value <= 1.0:
        raise ConfigError(f"{key} = {value!r} violates bound: must lie in (0, 1]")
    return value


def _finite(key: str, value: float) -> float:
    if not math.isfinite(value):
        raise ConfigError(f"{key} = {value!r} violates bound: must be finite")
    return value


def _parse_eta_total(key: str, raw: str) -> float | None:
    if raw.lower() == "none":
        return None
    return _unit_interval(key, _cast_float(raw))


def _parse_loss_stages(key: str, raw: str) -> tuple[LossElement, ...]:
    stages = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            raise ConfigError(f"{key}: empty stage entry in {raw!r}")
        name, sep, eff_raw = part.partition(":")
        name = name.strip()
        if not sep or not name:
            raise ConfigError(
                f"{key}: stage {part!r} must have the form name:efficiency"
            )
        eff = _unit_interval(f"{key}[{name}]", _cast_float(eff_raw.strip()))
        stages.append(LossElement(name, eff))
    if not stages:
        raise ConfigError(f"{key} must name at least one stage")
    return tuple(stages)


# key -> value parser; each returns the validated value or raises
# ConfigError naming the key and the violated bound.
_KEY_PARSERS: dict[str, Callable[[str], object]] = {
    "arm_length_eff": lambda raw: _positive("arm_length_eff", _cast_float(raw)),
    "power_bs": lambda raw: _positive("power_bs", _cast_float(raw)),
    "wavelength": lambda raw: _positive("wavelength", _cast_float(raw)),
    "sr_pole_hz": lambda raw: _positive("sr_pole_hz", _cast_float(raw)),
    "anchor_freq_hz": lambda raw: _positive("anchor_freq_hz", _cast_float(raw)),
    "anchor_asd": lambda raw: _positive("anchor_asd", _cast_float(raw)),
    "tech_displacement_asd": lambda raw: _non_negative(
        "tech_displacement_asd", _cast_float(raw)
    ),
    "tech_corner_hz": lambda raw: _positive("tech_corner_hz", _cast_float(raw)),
    "squeeze_db": lambda raw: _non_negative("squeeze_db", _cast_float(raw)),
    "antisqueeze_db": lambda raw: _finite("antisqueeze_db", _cast_float(raw)),
    "injection_angle_rad": lambda raw: _finite("injection_angle_rad", _cast_float(raw)),
    "sigma_jitter_rad": lambda raw: _non_negative("sigma_jitter_rad", _cast_float(raw)),
    "loss_stages": lambda raw: _parse_loss_stages("loss_stages", raw),
    "eta_total": lambda raw: _parse_eta_total("eta_total", raw),
    "f_min_hz": lambda raw: _positive("f_min_hz", _cast_float(raw)),
    "f_max_hz": lambda raw: _positive("f_max_hz", _cast_float(raw)),
    "grid_points": lambda raw: _grid_points(raw),
    "grid_spacing": lambda raw: _grid_spacing(raw),
    "band_min_hz": lambda raw: _positive("band_min_hz", _cast_float(raw)),
    "band_max_hz": lambda raw: _positive("band_max_hz", _cast_float(raw)),
}


def _grid_points(raw: str) -> int:
    value = _cast_int(raw)
    if value < 2:
        raise ConfigError(f"grid_points = {value!r} violates bound: must be >= 2")
    return value


def _grid_spacing(raw: str) -> str:
    if raw not in _GRID_SPACINGS:
        raise ConfigError(
            f"grid_spacing = {raw!r} violates bound: must be one of {_GRID_SPACINGS}"
        )
    return raw


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_config(text: str) -> RunConfig:
    """Parse config text into a validated RunConfig.

    Unset keys take their GEO 600 defaults. Raises ConfigError on
    unknown keys, duplicates, malformed lines, out-of-bound values, and
    cross-field inconsistencies.
    """
    values: dict[str, object] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw_line)
        if not line:
            continue
        key, sep, raw_value = line.partition("=")
        key = key.strip()
        raw_value = raw_value.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw_line!r}")
        if key not in _KEY_PARSERS:
            raise ConfigError(f"line {lineno}: unknown key '{key}'")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        if not raw_value:
            raise ConfigError(f"line {lineno}: {key} has no value")
        try:
            values[key] = _KEY_PARSERS[key](raw_value)
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
    return _build(values)


def load_config(path: str) -> RunConfig:
    """Read and parse a config file; errors carry the file name."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from None
    try:
        return parse_config(text)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _build(values: dict[str, object]) -> RunConfig:
    defaults = default_run_config()

    def get(key: str, fallback):
        return values.get(key, fallback)

    squeeze_db = get("squeeze_db", defaults.level.squeeze_db)
    antisqueeze_db = get("antisqueeze_db", defaults.level.antisqueeze_db)
    if antisqueeze_db < squeeze_db:
        raise ConfigError(
            f"antisqueeze_db = {antisqueeze_db!r} violates bound: must be "
            f">= squeeze_db ({squeeze_db!r})"
        )

    f_min = get("f_min_hz", defaults.f_min_hz)
    f_max = get("f_max_hz", defaults.f_max_hz)
    if f_max <= f_min:
        raise ConfigError(
            f"f_max_hz = {f_max!r} violates bound: must be > f_min_hz ({f_min!r})"
        )
    band_min = get("band_min_hz", defaults.band_min_hz)
    band_max = get("band_max_hz", defaults.band_max_hz)
    if band_max <= band_min:
        raise ConfigError(
            f"band_max_hz = {band_max!r} violates bound: must be > "
            f"band_min_hz ({band_min!r})"
        )
    if band_max < f_min or band_min > f_max:
        raise ConfigError(
            f"summary band [{band_min!r}, {band_max!r}] does not overlap the "
            f"grid [{f_min!r}, {f_max!r}]"
        )
    anchor_freq = get("anchor_freq_hz", defaults.ifo.anchor_freq_hz)
    if not f_min <= anchor_freq <= f_max:
        raise ConfigError(
            f"anchor_freq_hz = {anchor_freq!r} violates bound: must lie inside "
            f"the grid [{f_min!r}, {f_max!r}]"
        )

    try:
        ifo = IfoConfig(
            arm_length_eff=get("arm_length_eff", defaults.ifo.arm_length_eff),
            power_bs=get("power_bs", defaults.ifo.power_bs),
            wavelength=get("wavelength", defaults.ifo.wavelength),
            sr_pole_hz=get("sr_pole_hz", defaults.ifo.sr_pole_hz),
            anchor_freq_hz=anchor_freq,
            anchor_asd=get("anchor_asd", defaults.ifo.anchor_asd),
            tech_displacement_asd=get(
                "tech_displacement_asd", defaults.ifo.tech_displacement_asd
            ),
            tech_corner_hz=get("tech_corner_hz", defaults.ifo.tech_corner_hz),
        )
        level = SqueezeLevel(squeeze_db, antisqueeze_db)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None

    return RunConfig(
        ifo=ifo,
        level=level,
        injection_angle_rad=get("injection_angle_rad", defaults.injection_angle_rad),
        sigma_jitter_rad=get("sigma_jitter_rad", defaults.sigma_jitter_rad),
        loss_stages=get("loss_stages", defaults.loss_stages),
        eta_total=values.get("eta_total", defaults.eta_total),
        f_min_hz=f_min,
        f_max_hz=f_max,
        grid_points=get("grid_points", defaults.grid_points),
        grid_spacing=get("grid_spacing", defaults.grid_spacing),
        band_min_hz=band_min,
        band_max_hz=band_max,
    )
