"""Total particle-creation rates, scaled as ``(2 pi / eps0^2) R``."""
from __future__ import annotations

import math

import numpy as np

from .core import (
    Method,
    PhysicalParams,
    RateMethod,
    RateResult,
    ThermalConvention,
    require_valid,
)
from .kernels import PerturbationProfile, spectral_weight
from .quadrature import (
    QuadratureConfig,
    integrate,
    integrate_algebraic_tail,
    integrate_semi_infinite,
)
from .spectra import spectrum_general, spectrum_thermal_closed, spectrum_vac_closed

#: below this xi the direct vacuum-rate formula is replaced by its Maclaurin series
XI_SERIES_THRESHOLD = 0.05
_SERIES_TERMS = 12


def _series_coefficient(k: int) -> float:
    # coefficient of xi^(2k) in [(2+xi^2) ln(1+xi^2) - 2 xi atan xi] / xi^4
    return (-1) ** k * (3 * k + 4) / ((k + 1) * (k + 2) * (2 * k + 3))


def vacuum_rate_shape(xi: float) -> tuple[float, RateMethod]:
    """Dimensionless ``F(xi)`` with ``rate_vac = omega0^3 F(xi)``.

    ``F(xi) = [(2+xi^2) ln(1+xi^2) - 2 xi atan(xi)] / [xi^4 (4+xi^2)]``.
    The numerator cancels to O(xi^4), so small ``xi`` uses the series.
    """
    xi = float(xi)
    if xi < 0:
        raise ValueError(f"xi must be >= 0, got {xi}")
    if xi < XI_SERIES_THRESHOLD:
        return vacuum_rate_series(xi), RateMethod.SERIES_BRANCH
    return vacuum_rate_direct(xi), RateMethod.CLOSED_FORM


def vacuum_rate_direct(xi: float) -> float:
    """The unguarded closed form, for branch-continuity checks."""
    x2 = xi * xi
    return ((2.0 + x2) * math.log1p(x2) - 2.0 * xi * math.atan(xi)) / (x2 * x2 * (4.0 + x2))


def vacuum_rate_series(xi: float, terms: int = _SERIES_TERMS) -> float:
    x2 = xi * xi
    acc = 0.0
    for k in reversed(range(terms)):
        acc = acc * x2 + _series_coefficient(k)
    return acc / (4.0 + x2)


def rate_vac_closed(p: PhysicalParams) -> float:
    """Closed-form scaled vacuum rate ``omega0^3 F(omega0 gamma0)``."""
    if p.omega0 == 0:
        return 0.0
    shape, _ = vacuum_rate_shape(p.xi)
    return p.omega0**3 * shape


def _vac_method(p: PhysicalParams) -> RateMethod:
    if p.omega0 == 0:
        return RateMethod.CLOSED_FORM
    return vacuum_rate_shape(p.xi)[1]


def rate_vac_quadrature(p: PhysicalParams, cfg: QuadratureConfig | None = None) -> float:
    """Integral of the closed vacuum density over ``[0, omega0]``."""
    if p.omega0 == 0:
        return 0.0
    return integrate(lambda w: spectrum_vac_closed(w, p), 0.0, p.omega0, cfg).value


def default_tail_scale(p: PhysicalParams, lorentz_margin: bool = False) -> float:
    """Truncation length ``omega0 + 40 T`` for thermal integrands.

    ``lorentz_margin`` adds ``10 / tau`` for densities with drive-width
    wings. The closed densities have none, and leaving it out keeps scaled
    closed-form rates bit-identical under changes of ``tau``.
    """
    return p.omega0 + 40.0 * p.temperature + (10.0 / p.tau if lorentz_margin else 0.0)


def _spontaneous_excess(p: PhysicalParams, cfg: QuadratureConfig) -> float:
    # As-printed minus self-consistent thermal density above omega0 is the
    # T-independent W(w) W(w - w0); its tail decays like 1/w^2.
    g0, w0 = p.gamma0, p.omega0

    def f(w):
        return spectral_weight(w, g0) * spectral_weight(w - w0, g0)

    split = w0 + max(1.0, 1.0 / g0)
    return integrate_algebraic_tail(f, w0, split, cfg).value


def rate_thermal(p: PhysicalParams,
                 conv: ThermalConvention = ThermalConvention.SELF_CONSISTENT,
                 cfg: QuadratureConfig | None = None) -> float:
    """Scaled thermal rate: quadrature of the closed thermal density on (0, inf)."""
    conv = ThermalConvention(conv)
    cfg = cfg or QuadratureConfig()
    extra = 0.0
    if conv is ThermalConvention.AS_PRINTED:
        extra = _spontaneous_excess(p, cfg)
    if p.temperature == 0:
        return extra
    scale = cfg.tail_decay_scale if cfg.tail_decay_scale is not None else default_tail_scale(p)
    T = p.temperature
    pts = [q for q in (p.omega0 - 10 * T, p.omega0 - T, p.omega0,
                       p.omega0 + T, p.omega0 + 10 * T) if q > 0]
    res = integrate_semi_infinite(
        lambda w: spectrum_thermal_closed(w, p, ThermalConvention.SELF_CONSISTENT),
        0.0, cfg, scale=scale, points=pts,
    )
    return res.value + extra


def _rate_general(p: PhysicalParams, profile: PerturbationProfile | None,
                  cfg: QuadratureConfig) -> tuple[float, float]:
    # Nested quadrature of the general spectra; inner integrals are looser
    # than the outer one.
    inner = QuadratureConfig(max(cfg.rel_tol * 10, 1e-10), cfg.abs_tol, cfg.max_subdivisions)
    cache: dict[float, tuple[float, float]] = {}

    def both(w):
        out = []
        for wi in np.atleast_1d(w):
            wi = float(wi)
            if wi not in cache:
                cache[wi] = (0.0, 0.0) if wi <= 0 else spectrum_general(wi, p, profile, inner)
            out.append(cache[wi])
        return np.array(out)

    width = 1.0 / p.tau
    pts = [q for q in (p.omega0 - 5 * width, p.omega0, p.omega0 + 5 * width) if q > 0]
    split = 2 * p.omega0 + 40 * p.temperature + 50 * width
    vac = integrate_algebraic_tail(lambda w: both(w)[:, 0], 0.0, split, cfg, pts).value
    th = 0.0
    if p.temperature > 0:
        th = integrate_algebraic_tail(lambda w: both(w)[:, 1], 0.0, split, cfg, pts).value
    return vac, th


def rate_total(p: PhysicalParams,
               conv: ThermalConvention = ThermalConvention.SELF_CONSISTENT,
               cfg: QuadratureConfig | None = None,
               method: Method = Method.CLOSED_FORM,
               profile: PerturbationProfile | None = None) -> RateResult:
    """Vacuum plus thermal scaled rates.

    ``method='closed'`` uses the closed vacuum rate and integrates the closed
    thermal density; ``'general'`` integrates the kernel-based spectra twice.
    """
    report = require_valid(p)
    conv = ThermalConvention(conv)
    cfg = cfg or QuadratureConfig()
    if Method(method) is Method.GENERAL_QUADRATURE:
        vac, th = _rate_general(p, profile, cfg)
        vmethod = RateMethod.QUADRATURE
    else:
        vac = rate_vac_closed(p)
        vmethod = _vac_method(p)
        th = rate_thermal(p, conv, cfg)
    return RateResult(vac, th, vac + th, vmethod, conv, p, report.flags)
