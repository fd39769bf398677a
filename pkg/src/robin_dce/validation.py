"""Self-checks run by ``robin-dce validate``.

Each check cross-validates the library against an identity or an
independent oracle and reports the measured figure next to its threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath
import numpy as np

from .core import PhysicalParams, ThermalConvention
from .kernels import DampedCosine, Tabulated, delta_gamma, delta_gamma_ft
from .quadrature import QuadratureConfig, integrate
from .rates import (
    XI_SERIES_THRESHOLD,
    rate_thermal,
    rate_total,
    rate_vac_closed,
    vacuum_rate_direct,
    vacuum_rate_series,
)
from .spectra import spectrum_general, spectrum_thermal_closed, spectrum_vac_closed

SC = ThermalConvention.SELF_CONSISTENT
AP = ThermalConvention.AS_PRINTED
TEMPERATURES = (0.02, 0.05, 0.07, 0.1)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    detail: str = ""


def exact_vacuum_rate_shape(xi, dps: int = 50) -> mpmath.mpf:
    """Vacuum-rate shape ``F(xi)`` in extended precision."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(xi)
        num = (2 + x**2) * mpmath.log(1 + x**2) - 2 * x * mpmath.atan(x)
        return +(num / (x**4 * (4 + x**2)))


def fourier_oracle_profile(omega0: float = 1.0, tau: float = 10.0, step_fraction: float = 5e-5,
                           support: float = 25.0) -> Tabulated:
    """Finely sampled damped cosine (unit amplitude) for the transform check."""
    prof = DampedCosine(1.0, omega0, tau)
    n = int(round(2 * support / step_fraction)) + 1
    return Tabulated.sample(lambda t: delta_gamma(t, prof), -support * tau, support * tau, n)


def check_vacuum_symmetry() -> CheckResult:
    worst = 0.0
    for g0, w0 in [(1, 1), (5, 1), (10, 1), (1, 10)]:
        p = PhysicalParams(gamma0=g0, omega0=w0)
        w = np.linspace(0, w0, 1001)
        worst = max(worst, float(np.max(np.abs(spectrum_vac_closed(w, p)
                                                - spectrum_vac_closed(w0 - w, p)))))
    return CheckResult("vacuum_symmetry", worst <= 1e-12, worst, 1e-12)


def check_thermal_asymmetry() -> CheckResult:
    worst = math.inf
    for conv in (SC, AP):
        for g0 in (1, 5, 10):
            for T in TEMPERATURES:
                p = PhysicalParams(gamma0=g0, omega0=1.0, temperature=T)
                w = np.linspace(0, 1, 1001)[501:-1]
                gap = spectrum_thermal_closed(w, p, conv) - spectrum_thermal_closed(1 - w, p, conv)
                worst = min(worst, float(np.min(gap)))
    return CheckResult("thermal_asymmetry", worst > 0, worst, 0.0,
                       "min of dN_T(w) - dN_T(w0-w) over w in (w0/2, w0)")


def check_temperature_monotonicity() -> CheckResult:
    w = np.linspace(0, 1.5, 301)
    worst = math.inf
    for g0 in (1, 5, 10):
        prev = None
        for T in (0.0,) + TEMPERATURES:
            p = PhysicalParams(gamma0=g0, omega0=1.0, temperature=T)
            cur = spectrum_vac_closed(w, p) + spectrum_thermal_closed(w, p, SC)
            if prev is not None:
                worst = min(worst, float(np.min(cur - prev)))
            prev = cur
    rate_gap = math.inf
    for w0 in (0.1, 1.0, 10.0, 30.0):
        p = PhysicalParams(gamma0=1.0, omega0=w0)
        rate_gap = min(rate_gap, rate_total(p.replace(temperature=0.1)).total_rate
                       - rate_total(p).total_rate)
    ok = worst >= 0 and rate_gap > 0
    return CheckResult("temperature_monotonicity", ok, min(worst, rate_gap), 0.0,
                       f"spectra min step {worst:.3g}, rate min gain {rate_gap:.3g}")


def check_rate_identity() -> CheckResult:
    worst = 0.0
    for xi in (0.1, 1.0, 5.0, 10.0):
        p = PhysicalParams(gamma0=xi, omega0=1.0)
        quad = integrate(lambda w: spectrum_vac_closed(w, p), 0.0, 1.0,
                         QuadratureConfig(rel_tol=1e-12), points=[0.5]).value
        worst = max(worst, abs(quad / rate_vac_closed(p) - 1))
    return CheckResult("rate_identity", worst <= 1e-8, worst, 1e-8,
                       "quadrature of vacuum density vs closed rate, xi in {0.1,1,5,10}")


def general_vs_closed_deviation(omega0_tau: float, gamma0: float = 1.0) -> float:
    p = PhysicalParams(gamma0=gamma0, omega0=1.0, tau=omega0_tau)
    worst = 0.0
    for w in np.linspace(0.1, 0.9, 17):
        vac, _ = spectrum_general(w, p)
        worst = max(worst, abs(vac / spectrum_vac_closed(w, p) - 1))
    return float(worst)


def check_general_convergence() -> CheckResult:
    devs = {wt: general_vs_closed_deviation(wt) for wt in (10.0, 100.0, 1000.0)}
    ok = devs[100.0] <= 0.05 and devs[1000.0] < devs[100.0] < devs[10.0]
    detail = ", ".join(f"w0*tau={wt:g}: {d:.3e}" for wt, d in devs.items())
    return CheckResult("general_vs_closed", ok, devs[100.0], 0.05, detail)


def check_fourier_oracle() -> CheckResult:
    prof = fourier_oracle_profile()
    analytic = DampedCosine(1.0, 1.0, 10.0)
    w = np.linspace(0, 3, 61)
    num = delta_gamma_ft(w, prof)
    ref = delta_gamma_ft(w, analytic).real
    worst = float(np.max(np.abs(num - ref) / np.abs(ref)))
    return CheckResult("fourier_oracle", worst <= 1e-6, worst, 1e-6,
                       "trapezoid transform of sampled damped cosine, w0*tau=10, w in [0, 3 w0]")


def check_series_continuity() -> CheckResult:
    xi = XI_SERIES_THRESHOLD
    direct = vacuum_rate_direct(xi)
    series = vacuum_rate_series(xi)
    exact = float(exact_vacuum_rate_shape(xi))
    gap = abs(direct - series) / abs(direct)
    err = max(abs(direct - exact), abs(series - exact)) / exact
    return CheckResult("series_branch_continuity", gap <= 1e-8 and err <= 1e-8, gap, 1e-8,
                       f"xi*={xi}, max error vs 50-digit reference {err:.2e}")


def check_zero_temperature() -> CheckResult:
    w = np.linspace(0, 3, 601)
    worst = 0.0
    for g0 in (1, 5, 10):
        for w0 in (0.0, 0.5, 1.0, 10.0):
            p = PhysicalParams(gamma0=g0, omega0=w0)
            worst = max(worst, float(np.max(np.abs(spectrum_thermal_closed(w, p, SC)))),
                        abs(rate_thermal(p, SC)))
    return CheckResult("zero_temperature_recovery", worst == 0.0, worst, 0.0)


def check_residual_rate() -> CheckResult:
    hot = rate_total(PhysicalParams(gamma0=1.0, omega0=0.0, temperature=0.1)).total_rate
    cold = rate_total(PhysicalParams(gamma0=1.0, omega0=0.0)).total_rate
    return CheckResult("residual_rate", hot > 0 and cold == 0.0, hot, 0.0,
                       f"rate(w0=0, T=0.1)={hot:.6e}, rate(w0=0, T=0)={cold!r}")


def check_convention_divergence() -> CheckResult:
    p = PhysicalParams(gamma0=1.0, omega0=1.0, temperature=0.1)
    below = np.linspace(0, 1, 501)[:-1]
    above = np.linspace(1, 1.5, 251)[1:]
    diff_below = float(np.max(np.abs(spectrum_thermal_closed(below, p, AP)
                                     - spectrum_thermal_closed(below, p, SC))))
    diff_above = float(np.min(np.abs(spectrum_thermal_closed(above, p, AP)
                                     - spectrum_thermal_closed(above, p, SC))))
    return CheckResult("convention_divergence", diff_below == 0.0 and diff_above > 0, diff_above,
                       0.0, f"max |AP-SC| below w0 = {diff_below!r}, min above w0 = {diff_above:.3e}")


CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_vacuum_symmetry,
    check_thermal_asymmetry,
    check_temperature_monotonicity,
    check_rate_identity,
    check_general_convergence,
    check_fourier_oracle,
    check_series_continuity,
    check_zero_temperature,
    check_residual_rate,
    check_convention_divergence,
)


def run_checks() -> list[CheckResult]:
    results = []
    for check in CHECKS:
        try:
            results.append(check())
        except Exception as exc:  # a crashing check is a failed check
            results.append(CheckResult(check.__name__.removeprefix("check_"), False,
                                       math.nan, math.nan, f"error: {exc}"))
    return results
