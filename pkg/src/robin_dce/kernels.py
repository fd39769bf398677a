"""Pointwise kernels: the drive, its Fourier transform, mode weights,
Bose-Einstein occupation and the Bogoliubov kernels.

Fourier convention: ``dG(w) = integral dg(t) exp(+i w t) dt``.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .core import PhysicalParams
from .errors import InvalidParameterError, OccupationPoleError


@dataclass(frozen=True)
class DampedCosine:
    """``epsilon0 * cos(omega0 t) * exp(-|t| / tau)``."""

    epsilon0: float
    omega0: float
    tau: float

    def __post_init__(self):
        if not self.tau > 0:
            raise InvalidParameterError(f"tau must be > 0, got {self.tau}")
        if not self.omega0 >= 0:
            raise InvalidParameterError(f"omega0 must be >= 0, got {self.omega0}")

    @classmethod
    def from_params(cls, p: PhysicalParams, unit_amplitude: bool = False) -> "DampedCosine":
        return cls(1.0 if unit_amplitude else p.epsilon0, p.omega0, p.tau)


@dataclass(frozen=True)
class Tabulated:
    """Uniformly sampled, compactly supported perturbation profile."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float).copy()
        v = np.asarray(self.values, dtype=float).copy()
        if t.ndim != 1 or t.shape != v.shape:
            raise InvalidParameterError("times and values must be 1-D and of equal length")
        if t.size < 8:
            raise InvalidParameterError(f"tabulated profile needs >= 8 samples, got {t.size}")
        steps = np.diff(t)
        if np.any(steps <= 0):
            raise InvalidParameterError("sample times must be strictly increasing")
        if np.max(np.abs(steps - steps.mean())) > 1e-6 * steps.mean():
            raise InvalidParameterError("sample times must be uniformly spaced")
        if v[0] != 0.0 or v[-1] != 0.0:
            raise InvalidParameterError("profile must vanish at the first and last sample")
        t.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @property
    def step(self) -> float:
        return (self.times[-1] - self.times[0]) / (self.times.size - 1)

    @property
    def duration(self) -> float:
        return self.times[-1] - self.times[0]

    @classmethod
    def sample(cls, func, t_min: float, t_max: float, n: int) -> "Tabulated":
        """Sample ``func`` on ``n`` uniform points, forcing zero end values."""
        t = np.linspace(t_min, t_max, n)
        v = np.asarray(func(t), dtype=float).copy()
        v[0] = v[-1] = 0.0
        return cls(t, v)

    @classmethod
    def from_file(cls, path) -> "Tabulated":
        """Read a two-column ``time delta_gamma`` text file (``#`` comments allowed)."""
        try:
            data = np.loadtxt(Path(path), comments="#", ndmin=2)
        except ValueError as exc:
            raise InvalidParameterError(f"cannot parse profile file {path}: {exc}") from None
        if data.shape[1] != 2:
            raise InvalidParameterError(f"profile file {path} must have exactly two columns")
        return cls(data[:, 0], data[:, 1])


PerturbationProfile = Union[DampedCosine, Tabulated]


def delta_gamma(t, profile: PerturbationProfile):
    t = np.asarray(t, dtype=float)
    if isinstance(profile, DampedCosine):
        out = profile.epsilon0 * np.cos(profile.omega0 * t) * np.exp(-np.abs(t) / profile.tau)
    else:
        out = np.interp(t, profile.times, profile.values, left=0.0, right=0.0)
    return out[()] if out.ndim == 0 else out


def _lorentz_pair(omega, omega0, tau):
    return tau * (1.0 / (1.0 + ((omega - omega0) * tau) ** 2)
                  + 1.0 / (1.0 + ((omega + omega0) * tau) ** 2))


def delta_gamma_ft(omega, profile: PerturbationProfile):
    """Fourier transform of the drive at ``omega`` (complex).

    For the damped cosine this is the Lorentzian pair
    ``eps0 tau [1/(1+(w-w0)^2 tau^2) + 1/(1+(w+w0)^2 tau^2)]``; tabulated
    profiles use the trapezoid rule over their support.
    """
    omega = np.asarray(omega, dtype=float)
    if isinstance(profile, DampedCosine):
        out = (profile.epsilon0 * _lorentz_pair(omega, profile.omega0, profile.tau)).astype(complex)
    else:
        out = _trapezoid_ft(omega.ravel(), profile).reshape(omega.shape)
    return out[()] if out.ndim == 0 else out


def _trapezoid_ft(omega: np.ndarray, profile: Tabulated, chunk_elems: int = 1 << 22) -> np.ndarray:
    t, v, h = profile.times, profile.values, profile.step
    # End samples are zero, so trapezoid weights reduce to a plain sum.
    out = np.empty(omega.size, dtype=complex)
    per = max(1, chunk_elems // t.size)
    for start in range(0, omega.size, per):
        w = omega[start:start + per, None]
        phase = w * t[None, :]
        out[start:start + per] = h * (np.cos(phase) @ v + 1j * (np.sin(phase) @ v))
    return out


def spectral_weight(omega, gamma0):
    """Robin mode weight ``w / (1 + gamma0^2 w^2)``; odd in ``w``."""
    omega = np.asarray(omega, dtype=float)
    out = omega / (1.0 + (gamma0 * omega) ** 2)
    return out[()] if out.ndim == 0 else out


def _nbar_positive(x):
    # x = w/T > 0; written to avoid overflow for large x
    return -np.exp(-x) / np.expm1(-x)


def bose_einstein(omega, temperature):
    """Mean occupation ``1 / (exp(w/T) - 1)`` for either sign of ``w``.

    Negative frequencies use the reflection ``nbar(-w) = -(1 + nbar(w))``.
    At T=0 the continuous limits are used: 0 above zero frequency, -1 below.
    Raises :class:`OccupationPoleError` at ``w == 0``.
    """
    omega = np.asarray(omega, dtype=float)
    if temperature < 0:
        raise InvalidParameterError(f"temperature must be >= 0, got {temperature}")
    if np.any(omega == 0):
        raise OccupationPoleError("Bose-Einstein occupation has a pole at omega=0")
    if temperature == 0:
        out = np.where(omega > 0, 0.0, -1.0)
    else:
        with np.errstate(over="ignore", under="ignore"):
            pos = _nbar_positive(np.abs(omega) / temperature)
        out = np.where(omega > 0, pos, -1.0 - pos)
    return out[()] if out.ndim == 0 else out


def occupation_weighted(omega, temperature, gamma0):
    """``spectral_weight(w) * bose_einstein(w)``, continuous at ``w = 0``.

    The removable singularity takes its limit value ``temperature``.
    """
    omega = np.asarray(omega, dtype=float)
    a = np.abs(omega)
    if temperature == 0:
        # w*nbar(w) -> 0 for w>0 and |w| for w<0
        xn = np.where(omega < 0, a, 0.0)
    else:
        x = a / temperature
        with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
            # |w| nbar(|w|) = T x / (e^x - 1), series near x=0
            xn_pos = np.where(
                x < 1e-8,
                temperature * (1.0 - 0.5 * x),
                a * _nbar_positive(np.where(x < 1e-8, 1.0, x)),
            )
        # W(-a) nbar(-a) = W(a) (1 + nbar(a))
        xn = np.where(omega < 0, a + xn_pos, xn_pos)
    out = xn / (1.0 + (gamma0 * omega) ** 2)
    return out[()] if out.ndim == 0 else out


def _profile(p: PhysicalParams, profile):
    return DampedCosine.from_params(p) if profile is None else profile


def beta_kernel(omega, mu, p: PhysicalParams, profile: PerturbationProfile | None = None):
    """Creation (mixing) kernel ``2i sqrt(W(w) W(mu)) dG(w + mu)``."""
    w = np.sqrt(spectral_weight(omega, p.gamma0) * spectral_weight(mu, p.gamma0))
    return 2j * w * delta_gamma_ft(np.add(omega, mu), _profile(p, profile))


def alpha_correction_kernel(omega, mu, p: PhysicalParams, profile: PerturbationProfile | None = None):
    """Scattering kernel ``-2i sqrt(W(w) W(mu)) dG(w - mu)``."""
    w = np.sqrt(spectral_weight(omega, p.gamma0) * spectral_weight(mu, p.gamma0))
    return -2j * w * delta_gamma_ft(np.subtract(omega, mu), _profile(p, profile))
