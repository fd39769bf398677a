"""Spectral distributions of the created particles.

All outputs are scaled densities ``(2 pi / eps0^2 tau) dN/dw``.  The closed
forms hold in the narrowband limit ``omega0 tau >> 1``; the general forms
integrate the Bogoliubov kernels over the partner frequency ``mu``.
"""
from __future__ import annotations

import math

import numpy as np

from .core import (
    FrequencyGrid,
    Method,
    PhysicalParams,
    SpectralResult,
    ThermalConvention,
    require_valid,
)
from .errors import InvalidParameterError, QuadratureError
from .kernels import (
    DampedCosine,
    PerturbationProfile,
    delta_gamma_ft,
    occupation_weighted,
    spectral_weight,
)
from .quadrature import QuadratureConfig, integrate, integrate_algebraic_tail


def _scalar_or_array(out):
    return out[()] if out.ndim == 0 else out


def spectrum_vac_closed(omega, p: PhysicalParams):
    """Vacuum density ``W(w) W(w0 - w)`` on ``[0, w0]``, zero above ``w0``."""
    omega = np.asarray(omega, dtype=float)
    g2 = p.gamma0**2
    rest = p.omega0 - omega
    inside = (omega >= 0) & (rest > 0)
    val = omega * rest / ((1.0 + g2 * omega**2) * (1.0 + g2 * rest**2))
    return _scalar_or_array(np.where(inside, val, 0.0))


def spectrum_thermal_closed(omega, p: PhysicalParams,
                            conv: ThermalConvention = ThermalConvention.SELF_CONSISTENT):
    """Thermal correction ``W(w) * W(x) nbar(x)`` with ``x = w0 - w``.

    ``SELF_CONSISTENT`` uses ``x = |w0 - w|``.  The removable point ``w = w0``
    takes the value ``W(w0) T``.
    """
    omega = np.asarray(omega, dtype=float)
    conv = ThermalConvention(conv)
    x = p.omega0 - omega
    if conv is ThermalConvention.SELF_CONSISTENT:
        if p.temperature == 0:
            return _scalar_or_array(np.zeros_like(omega))
        x = np.abs(x)
    val = spectral_weight(omega, p.gamma0) * occupation_weighted(x, p.temperature, p.gamma0)
    return _scalar_or_array(np.where(omega > 0, val, 0.0))


def _breakpoints(omega: float, omega0: float, tau: float, upper: float) -> list[float]:
    centres = {omega0 - omega, omega - omega0, omega + omega0, omega}
    pts = set()
    for c in centres:
        for k in (0.0, 1.0, -1.0, 5.0, -5.0, 25.0, -25.0):
            q = c + k / tau
            if 0 < q < upper:
                pts.add(q)
    return sorted(pts)


def _general_setup(p: PhysicalParams, profile):
    if profile is None:
        # Unit amplitude; the eps0^2 of the scale cancels.
        return DampedCosine.from_params(p, unit_amplitude=True), 2 * math.pi / p.tau
    if not p.epsilon0 > 0:
        raise InvalidParameterError("epsilon0 must be > 0 to scale a tabulated profile")
    return profile, 2 * math.pi / (p.epsilon0**2 * p.tau)


def spectrum_general(omega: float, p: PhysicalParams,
                     profile: PerturbationProfile | None = None,
                     cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """Vacuum and thermal scaled densities from the kernels, by quadrature.

    vacuum  = s (2 pi)^-2 int_0^inf |beta(w, mu)|^2 dmu
    thermal = s (2 pi)^-2 int_0^inf (|beta|^2 + |alpha|^2) nbar(mu) dmu

    with ``s = 2 pi / (eps0^2 tau)``.  Thermal is exactly 0 at T=0.
    """
    omega = float(omega)
    if not omega > 0:
        raise InvalidParameterError(f"spectrum_general needs omega > 0, got {omega}")
    cfg = cfg or QuadratureConfig()
    prof, scale = _general_setup(p, profile)
    pref = scale / (2 * math.pi) ** 2 * 4.0 * spectral_weight(omega, p.gamma0)
    g0 = p.gamma0
    width = p.tau
    split = max(2.0 * (p.omega0 + omega), omega + p.omega0 + 50.0 / width, 1.0 / g0)
    pts = _breakpoints(omega, p.omega0, width, split * 4)

    def vac_integrand(mu):
        return spectral_weight(mu, g0) * np.abs(delta_gamma_ft(omega + mu, prof)) ** 2

    # A sampled drive carries no information past its Nyquist frequency and its
    # trapezoid transform is periodic, so the mu integral is cut at half of it.
    band = None if isinstance(prof, DampedCosine) else 0.5 * math.pi / prof.step - omega
    if band is not None and not band > split:
        raise InvalidParameterError(
            f"tabulated step {prof.step:g} too coarse for omega={omega:g}; need pi/(2 step) > {split + omega:g}")

    def over_mu(f, tail_split):
        if band is None:
            return integrate_algebraic_tail(f, 0.0, tail_split, cfg, pts)
        return integrate(f, 0.0, band, cfg, [q for q in pts if q < band])

    vac = over_mu(vac_integrand, split)
    vacuum = pref * vac.value

    if p.temperature == 0:
        return vacuum, 0.0

    T = p.temperature

    def th_integrand(mu):
        both = (np.abs(delta_gamma_ft(omega + mu, prof)) ** 2
                + np.abs(delta_gamma_ft(omega - mu, prof)) ** 2)
        return occupation_weighted(mu, T, g0) * both

    th = over_mu(th_integrand, split + 40 * T)
    return vacuum, pref * th.value


def spectrum_total(grid: FrequencyGrid, p: PhysicalParams,
                   conv: ThermalConvention = ThermalConvention.SELF_CONSISTENT,
                   method: Method = Method.CLOSED_FORM,
                   profile: PerturbationProfile | None = None,
                   cfg: QuadratureConfig | None = None) -> SpectralResult:
    """Evaluate vacuum, thermal and total scaled densities on ``grid``."""
    report = require_valid(p)
    conv = ThermalConvention(conv)
    method = Method(method)
    w = grid.points
    if method is Method.CLOSED_FORM:
        if profile is not None and not isinstance(profile, DampedCosine):
            raise InvalidParameterError("closed forms need the damped-cosine drive")
        vac = np.asarray(spectrum_vac_closed(w, p), dtype=float)
        th = np.asarray(spectrum_thermal_closed(w, p, conv), dtype=float)
    else:
        vac = np.zeros_like(w)
        th = np.zeros_like(w)
        for i, wi in enumerate(w):
            if wi == 0:
                continue
            try:
                vac[i], th[i] = spectrum_general(wi, p, profile, cfg)
            except QuadratureError as exc:
                raise QuadratureError(f"at omega={wi!r}: {exc}", exc.value, exc.error) from exc
    for arr in (vac, th):
        arr.flags.writeable = False
    total = vac + th
    total.flags.writeable = False
    return SpectralResult(grid, vac, th, total, method, conv, p, report.flags)
