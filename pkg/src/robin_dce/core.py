"""Domain types, parameter validation and unit conventions.

All quantities are in natural units (hbar = c = k_B = 1): frequencies and
temperatures share one unit, lengths and times share the inverse unit.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError

#: epsilon0 / gamma0 above this ratio is reported as out of the perturbative regime
PERTURBATIVE_RATIO = 0.1
#: omega0 * tau below this is reported as not narrowband
NARROWBAND_PRODUCT = 10.0


class ThermalConvention(str, enum.Enum):
    """How the thermal closed form treats frequencies above the drive frequency.

    ``AS_PRINTED`` keeps the factor ``(w0 - w) * nbar(w0 - w)`` for every ``w``;
    above ``w0`` the argument is negative and the factor picks up a
    temperature-independent ``|w0 - w|`` piece, so it does not vanish at T=0.
    ``SELF_CONSISTENT`` uses ``|w0 - w| * nbar(|w0 - w|)``, identical below
    ``w0`` and identically zero at T=0.
    """

    AS_PRINTED = "as-printed"
    SELF_CONSISTENT = "self-consistent"


class Method(str, enum.Enum):
    CLOSED_FORM = "closed"
    GENERAL_QUADRATURE = "general"


class RateMethod(str, enum.Enum):
    CLOSED_FORM = "closed-form"
    SERIES_BRANCH = "series-branch"
    QUADRATURE = "quadrature"


class Flag(str, enum.Enum):
    OK = "ok"
    OUT_OF_PERTURBATIVE_REGIME = "out-of-perturbative-regime"
    NOT_NARROWBAND = "not-narrowband"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class PhysicalParams:
    """Mirror and bath parameters.

    Attributes
    ----------
    gamma0 : float
        Static Robin parameter (length), must be > 0.
    epsilon0 : float
        Amplitude of the Robin-parameter perturbation (length).
    omega0 : float
        Dominant drive frequency.
    tau : float
        Damping time of the drive.
    temperature : float
        Bath temperature, in frequency units.
    """

    gamma0: float
    epsilon0: float = 0.01
    omega0: float = 1.0
    tau: float = 100.0
    temperature: float = 0.0

    @property
    def xi(self) -> float:
        """Dimensionless product ``omega0 * gamma0``."""
        return self.omega0 * self.gamma0

    def replace(self, **changes) -> "PhysicalParams":
        values = {f: getattr(self, f) for f in self.__dataclass_fields__}
        values.update(changes)
        return PhysicalParams(**values)


@dataclass(frozen=True)
class ValidationReport:
    flags: tuple[Flag, ...]
    messages: tuple[str, ...] = ()

    @property
    def hard(self) -> bool:
        return Flag.DEGENERATE in self.flags

    @property
    def ok(self) -> bool:
        return self.flags == (Flag.OK,)

    @property
    def perturbative(self) -> bool:
        return Flag.OUT_OF_PERTURBATIVE_REGIME not in self.flags

    @property
    def narrowband(self) -> bool:
        return Flag.NOT_NARROWBAND not in self.flags

    def labels(self) -> list[str]:
        return [f.value for f in self.flags]

    def __str__(self) -> str:
        if not self.messages:
            return "ok"
        return "; ".join(self.messages)


def validate_params(p: PhysicalParams) -> ValidationReport:
    """Report hard (``degenerate``) and soft violations for a parameter set.

    Never raises; callers decide what to do with hard flags.
    """
    flags: list[Flag] = []
    messages: list[str] = []

    def hard(msg: str) -> None:
        if Flag.DEGENERATE not in flags:
            flags.append(Flag.DEGENERATE)
        messages.append(f"degenerate: {msg}")

    values = {name: getattr(p, name) for name in p.__dataclass_fields__}
    for name, value in values.items():
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            hard(f"{name}={value!r} is not a finite number")
    if flags:
        return ValidationReport(tuple(flags), tuple(messages))

    if p.gamma0 <= 0:
        hard(f"gamma0={p.gamma0} must be > 0")
    if p.tau <= 0:
        hard(f"tau={p.tau} must be > 0")
    if p.epsilon0 < 0:
        hard(f"epsilon0={p.epsilon0} must be >= 0")
    if p.omega0 < 0:
        hard(f"omega0={p.omega0} must be >= 0")
    if p.temperature < 0:
        hard(f"temperature={p.temperature} must be >= 0")
    if not flags:
        if p.epsilon0 > PERTURBATIVE_RATIO * p.gamma0:
            flags.append(Flag.OUT_OF_PERTURBATIVE_REGIME)
            messages.append(
                f"out-of-perturbative-regime: epsilon0/gamma0="
                f"{p.epsilon0 / p.gamma0:.3g} > {PERTURBATIVE_RATIO}"
            )
        if p.omega0 * p.tau < NARROWBAND_PRODUCT:
            flags.append(Flag.NOT_NARROWBAND)
            messages.append(
                f"not-narrowband: omega0*tau={p.omega0 * p.tau:.3g} < {NARROWBAND_PRODUCT:g}"
            )
    if not flags:
        flags.append(Flag.OK)
    return ValidationReport(tuple(flags), tuple(messages))


def require_valid(p: PhysicalParams) -> ValidationReport:
    report = validate_params(p)
    if report.hard:
        raise InvalidParameterError(str(report))
    return report


@dataclass(frozen=True)
class ScaleNote:
    """Factors linking raw densities and rates to the plotted scaled quantities.

    ``scaled = spectrum_scale * dN/dw`` and ``scaled_rate = rate_scale * R``.
    """

    spectrum_scale: float
    rate_scale: float
    frequency_unit: float | None
    issues: tuple[str, ...] = ()

    def to_scaled_spectrum(self, raw):
        return np.asarray(raw) * self.spectrum_scale

    def to_raw_spectrum(self, scaled):
        return np.asarray(scaled) / self.spectrum_scale

    def to_scaled_rate(self, raw):
        return np.asarray(raw) * self.rate_scale

    def to_raw_rate(self, scaled):
        return np.asarray(scaled) / self.rate_scale


def scaled_units_note(p: PhysicalParams, normalize_frequency: bool = True) -> ScaleNote:
    issues = []
    if p.epsilon0 > 0 and p.tau > 0:
        spectrum_scale = 2 * math.pi / (p.epsilon0**2 * p.tau)
        rate_scale = 2 * math.pi / p.epsilon0**2
    else:
        spectrum_scale = rate_scale = math.nan
        issues.append("epsilon0-zero" if p.epsilon0 <= 0 else "tau-nonpositive")
    unit = None
    if normalize_frequency:
        if p.omega0 > 0:
            unit = p.omega0
        else:
            issues.append("omega0-zero")
    return ScaleNote(spectrum_scale, rate_scale, unit, tuple(issues))


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing, non-negative frequency points (at least two)."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).copy()
        if pts.ndim != 1 or pts.size < 2:
            raise InvalidParameterError("frequency grid needs at least 2 points")
        if not np.all(np.isfinite(pts)):
            raise InvalidParameterError("frequency grid contains non-finite values")
        if pts[0] < 0:
            raise InvalidParameterError("frequency grid must be non-negative")
        if np.any(np.diff(pts) <= 0):
            raise InvalidParameterError("frequency grid must be strictly increasing")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @classmethod
    def linspace(cls, start: float, stop: float, count: int) -> "FrequencyGrid":
        return cls(np.linspace(start, stop, int(count)))

    @classmethod
    def parse(cls, text: str) -> "FrequencyGrid":
        start, stop, count = parse_range(text)
        return cls.linspace(start, stop, count)

    def __len__(self) -> int:
        return self.points.size

    def __iter__(self):
        return iter(self.points)


def parse_range(text: str) -> tuple[float, float, int]:
    """Parse ``start:stop:count``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidParameterError(f"expected start:stop:count, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise InvalidParameterError(f"bad range {text!r}: {exc}") from None
    if count < 2 or not stop > start:
        raise InvalidParameterError(f"range {text!r} needs count >= 2 and stop > start")
    return start, stop, count


@dataclass(frozen=True)
class SpectralResult:
    """Scaled densities ``(2 pi / eps0^2 tau) dN/dw`` on a grid."""

    grid: FrequencyGrid
    vacuum: np.ndarray
    thermal: np.ndarray
    total: np.ndarray
    method: Method
    convention: ThermalConvention
    params: PhysicalParams
    flags: tuple[Flag, ...] = field(default=(Flag.OK,))


@dataclass(frozen=True)
class RateResult:
    """Scaled rates ``(2 pi / eps0^2) R``."""

    vacuum_rate: float
    thermal_rate: float
    total_rate: float
    method_vac: RateMethod
    convention: ThermalConvention
    params: PhysicalParams | None = None
    flags: tuple[Flag, ...] = (Flag.OK,)
