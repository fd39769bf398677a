"""Adaptive Gauss-Kronrod (7/15) integration on finite and semi-infinite ranges.

Integrands are called with a 1-D array of abscissae and must return an
array of the same shape; scalar-only callables are detected and looped.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import QuadratureError, TailUnboundedError

# Kronrod 15-point abscissae (positive half, descending); odd indices are
# the 7-point Gauss nodes. Values from QUADPACK dqk15.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-node rule on [-1, 1].
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
_g_idx = [1, 3, 5, 7, 9, 11, 13]
GAUSS_WEIGHTS[_g_idx] = np.concatenate([_WG[:-1], _WG[::-1]])

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and limits for every numerical integral.

    ``tail_decay_scale`` is the length of the integration range used for
    semi-infinite integrands (``None`` lets the caller choose it; the spectra
    and rates use ``omega0 + 40 T + 10 / tau``).
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000
    tail_decay_scale: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.rel_tol < 1:
            raise ValueError(f"rel_tol must be in (0, 1), got {self.rel_tol}")
        if self.abs_tol < 0:
            raise ValueError(f"abs_tol must be >= 0, got {self.abs_tol}")
        if self.max_subdivisions < 10:
            raise ValueError(f"max_subdivisions must be >= 10, got {self.max_subdivisions}")

    def with_tail(self, scale: float) -> "QuadratureConfig":
        return QuadratureConfig(self.rel_tol, self.abs_tol, self.max_subdivisions, scale)


@dataclass(frozen=True)
class QuadResult:
    """Integral value and error estimate; unpacks as ``value, error``."""

    value: float
    error: float
    intervals: int
    truncated_at: float | None = None

    def __iter__(self):
        yield self.value
        yield self.error


def _vectorize(f: Callable) -> Callable[[np.ndarray], np.ndarray]:
    def g(x: np.ndarray) -> np.ndarray:
        try:
            y = np.asarray(f(x), dtype=float)
        except (TypeError, ValueError):
            y = None
        if y is None or y.shape != x.shape:
            y = np.array([float(f(xi)) for xi in x])
        return y

    return g


def _gk15(f, a: float, b: float) -> tuple[float, float]:
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    y = f(c + h * NODES)
    if not np.all(np.isfinite(y)):
        raise QuadratureError(f"integrand is not finite on [{a}, {b}]")
    kronrod = h * float(KRONROD_WEIGHTS @ y)
    gauss = h * float(GAUSS_WEIGHTS @ y)
    resabs = abs(h) * float(KRONROD_WEIGHTS @ np.abs(y))
    err = abs(kronrod - gauss)
    # Floor at roundoff level of the panel so flat or cancelling panels settle.
    err = max(err, 50 * _EPS * resabs)
    return kronrod, err


def integrate(
    f: Callable,
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
    points: Iterable[float] = (),
) -> QuadResult:
    """Integrate ``f`` over ``[a, b]`` by globally adaptive bisection.

    ``points`` are optional interior breakpoints (peaks, kinks) used to seed
    the initial panels. Raises :class:`QuadratureError` if the tolerance
    ``max(rel_tol * |value|, abs_tol)`` is not met within
    ``cfg.max_subdivisions`` panels.
    """
    cfg = cfg or QuadratureConfig()
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    fv = _vectorize(f)

    edges = sorted({a, b, *(float(p) for p in points if a < p < b)})
    heap: list[tuple[float, int, float, float, float]] = []
    counter = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _gk15(fv, lo, hi)
        heap.append((-err, counter, lo, hi, val))
        counter += 1
    heapq.heapify(heap)

    def totals():
        return (math.fsum(item[4] for item in heap), math.fsum(-item[0] for item in heap))

    value, error = totals()
    while error > max(cfg.rel_tol * abs(value), cfg.abs_tol):
        if len(heap) >= cfg.max_subdivisions:
            raise QuadratureError(
                f"no-convergence on [{a}, {b}] after {len(heap)} panels "
                f"(value={value!r}, error={error:.3g})",
                value,
                error,
            )
        neg_err, _, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            heapq.heappush(heap, (neg_err, counter, lo, hi, _))
            raise QuadratureError(
                f"no-convergence: panel [{lo}, {hi}] cannot be bisected further",
                value,
                error,
            )
        for sub_lo, sub_hi in ((lo, mid), (mid, hi)):
            val, err = _gk15(fv, sub_lo, sub_hi)
            heapq.heappush(heap, (-err, counter, sub_lo, sub_hi, val))
            counter += 1
        value, error = totals()
    return QuadResult(value, error, len(heap))


def _tail_estimate(fv, b: float, length: float) -> float:
    """Bound on the integral beyond ``b`` assuming local exponential decay."""
    h = 0.05 * length
    y0, y1 = np.abs(fv(np.array([b - h, b])))
    if y1 == 0.0:
        return 0.0
    if y0 <= y1:
        return math.inf
    decay_length = h / math.log(y0 / y1)
    return y1 * decay_length


def integrate_semi_infinite(
    f: Callable,
    a: float,
    cfg: QuadratureConfig | None = None,
    scale: float | None = None,
    points: Iterable[float] = (),
    max_extensions: int = 8,
) -> QuadResult:
    """Integrate an exponentially decaying ``f`` over ``[a, inf)``.

    The range is truncated at ``a + L`` with ``L = scale`` (or
    ``cfg.tail_decay_scale``); ``L`` is doubled until the estimated
    exponential tail beyond the cut falls below ``abs_tol``. The truncation
    point is recorded on the result and the tail bound is folded into the
    error estimate.
    """
    cfg = cfg or QuadratureConfig()
    length = scale if scale is not None else cfg.tail_decay_scale
    if length is None or not length > 0 or not math.isfinite(length):
        raise TailUnboundedError(f"tail-unbounded: decay scale must be positive, got {length!r}")
    fv = _vectorize(f)
    points = tuple(points)
    for _ in range(max_extensions + 1):
        b = a + length
        res = integrate(fv, a, b, cfg, points)
        tail = _tail_estimate(fv, b, length)
        if tail <= max(cfg.abs_tol, 0.1 * cfg.rel_tol * abs(res.value)):
            return QuadResult(res.value, res.error + tail, res.intervals, b)
        length *= 2
    raise QuadratureError(
        f"no-convergence: tail beyond {b} still ~{tail:.3g}", res.value, res.error + tail
    )


def integrate_algebraic_tail(
    f: Callable,
    a: float,
    split: float,
    cfg: QuadratureConfig | None = None,
    points: Iterable[float] = (),
) -> QuadResult:
    """Integrate ``f`` over ``[a, inf)`` for power-law tails.

    ``[a, split]`` is integrated directly and ``[split, inf)`` after the map
    ``x = split / s``, which sends the tail to ``s in (0, 1]``. Needs
    ``f(x) = o(1/x)`` and ``split > 0``.
    """
    cfg = cfg or QuadratureConfig()
    if not split > max(a, 0.0):
        raise ValueError(f"split must exceed max(a, 0), got {split}")
    fv = _vectorize(f)
    head = integrate(fv, a, split, cfg, points)

    def mapped(s):
        s = np.asarray(s, dtype=float)
        out = np.zeros_like(s)
        nz = s > 0
        x = split / s[nz]
        out[nz] = fv(x) * split / s[nz] ** 2
        return out

    tail_points = [split / p for p in points if p > split]
    tail = integrate(mapped, 0.0, 1.0, cfg, tail_points)
    return QuadResult(head.value + tail.value, head.error + tail.error,
                      head.intervals + tail.intervals, math.inf)
