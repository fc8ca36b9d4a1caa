"""The limiting degree distribution (c_d) by three independent routes.

* fixed point: monotone lower/upper iterates for the clique-size limits y_k,
  converted with c_d = (d+1) y_{d+1};
* quadrature: c_d = (d+1) * int_0^inf y^d e^{-y} / (1+y)^{d+2} dy;
* asymptotic: c_d ~ sqrt(e*pi) d^{1/4} exp(-2 sqrt(d)).
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .partition import InvariantError
from .quadrature import QuadratureError, integrate

LOG_SQRT_E_PI = 0.5 * (1.0 + math.log(math.pi))

METHODS = ("fixed-point", "quadrature", "asymptotic")


class ConvergenceError(ArithmeticError):
    """The bounding iterates did not close within the sweep budget."""

    def __init__(self, width: float, sweeps: int):
        super().__init__(f"enclosure width {width:.3e} after {sweeps} sweeps")
        self.width = width
        self.sweeps = sweeps


# -- fixed point --------------------------------------------------------------

@dataclass
class BoundingPair:
    """Lower iterate ``a`` and upper iterate ``b`` for y_1..y_K after ``sweeps`` sweeps."""

    lower: np.ndarray
    upper: np.ndarray
    sweeps: int

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower


@dataclass
class FixedPointResult:
    y: np.ndarray  # y[0] is y_1
    pair: BoundingPair
    report: int  # y is certified for indices 1..report
    width: float  # sup of upper - lower over the report window
    widths: list[float] = field(default_factory=list)  # per-sweep history


def _sweep(x: np.ndarray, boundary: float, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    ext = np.empty(x.size + 2)
    ext[0] = 0.0
    ext[1:-1] = x
    ext[-1] = boundary
    new = left * ext[:-2] + right * ext[2:]
    new[0] = (1.0 + 2.0 * x[1]) / 3.0
    return new


def sweep_once(x: np.ndarray, boundary: float = 0.0) -> np.ndarray:
    """One Jacobi sweep of the clique-limit equations on a truncated index set."""
    k = np.arange(1, x.size + 1, dtype=float)
    return _sweep(x, boundary, (k - 1) / (2 * k + 1), (k + 1) / (2 * k + 1))


def upper_boundary(k_max: int) -> float:
    """Value pinned at index K_max+1 for the upper iterate: 2x the asymptotic y_{K+1}, capped at 1."""
    return min(1.0, 2.0 * cd_asymptotic(k_max) / (k_max + 1))


def fixed_point_yk(k_max: int, tol: float = 1e-8, max_sweeps: int | None = None,
                   report: int | None = None, keep_history: bool = False) -> FixedPointResult:
    """Squeeze y_1..y_K between the monotone iterates started at 0 and at 1.

    Indices beyond ``k_max`` are pinned (0 below, ``upper_boundary`` above), and
    only ``k <= report`` (default ``k_max // 2``) enters the stopping rule so
    the truncation cannot leak into reported values. The returned ``y`` is the
    midpoint, within ``tol / 2`` of both iterates on the report window.

    Raises:
        ConvergenceError: the enclosure is still wider than ``tol`` after
            ``max_sweeps`` (default ``50 * k_max``) sweeps.
    """
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    if tol <= 0:
        raise ValueError("tol must be positive")
    report = k_max // 2 if report is None else report
    if not 1 <= report <= k_max:
        raise ValueError("report window must lie inside 1..k_max")
    max_sweeps = 50 * k_max if max_sweeps is None else max_sweeps

    k = np.arange(1, k_max + 1, dtype=float)
    left = (k - 1) / (2 * k + 1)
    right = (k + 1) / (2 * k + 1)
    b_edge = upper_boundary(k_max)
    a = np.zeros(k_max)
    b = np.ones(k_max)
    history = []
    width = 1.0
    for sweep in range(1, max_sweeps + 1):
        a_next = _sweep(a, 0.0, left, right)
        b_next = _sweep(b, b_edge, left, right)
        # rounding is monotone, so these hold exactly in floating point too
        if (a_next < a).any() or (b_next > b).any() or (a_next > b_next).any():
            raise InvariantError(f"bounding iterates lost monotonicity at sweep {sweep}")
        a, b = a_next, b_next
        width = float((b[:report] - a[:report]).max())
        if keep_history:
            history.append(width)
        if width < tol:
            pair = BoundingPair(a, b, sweep)
            return FixedPointResult(0.5 * (a + b), pair, report, width, history)
    raise ConvergenceError(width, max_sweeps)


# -- conversions ----------------------------------------------------------------

def yk_from_cd(c: Sequence[float]) -> np.ndarray:
    """y_{d+1} = c_d / (d+1); element 0 of the result is y_1."""
    c = np.asarray(c, dtype=float)
    return c / np.arange(1, c.size + 1)


def cd_from_yk(y: Sequence[float]) -> np.ndarray:
    """c_d = (d+1) y_{d+1}; element 0 of ``y`` is y_1."""
    y = np.asarray(y, dtype=float)
    return y * np.arange(1, y.size + 1)


# -- quadrature -------------------------------------------------------------------

def peak_location(d: int) -> float:
    """Maximiser of y^d e^{-y} / (1+y)^{d+2} on [0, inf)."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return -1.5 + math.sqrt(d + 2.25)


def log_integrand(d: int, y):
    """f(y) = d log y - (d+2) log(1+y) - y, vectorised."""
    y = np.asarray(y, dtype=float)
    head = d * np.log(y) if d else np.zeros_like(y)
    return head - (d + 2) * np.log1p(y) - y


def _f(d: int, y: float) -> float:
    return (d * math.log(y) if d else 0.0) - (d + 2) * math.log1p(y) - y


def log_integrand_drop(d: int, y, peak: float):
    """f(y) - f(peak) without subtracting two large logs (vectorised)."""
    y = np.asarray(y, dtype=float)
    t = y - peak
    out = -(d + 2) * np.log1p(t / (1.0 + peak)) - t
    if d:
        out += d * np.log1p(t / peak)
    return out


@dataclass
class QuadratureValue:
    d: int
    log_value: float  # log c_d
    rel_error: float  # estimated relative error, incl. discarded ends
    window: tuple[float, float]

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


def cd_quadrature_full(d: int, rel_tol: float = 1e-11) -> QuadratureValue:
    """Integral representation of c_d evaluated in log space.

    The integrand is scaled by its peak value, integrated on a window around
    the peak, and the two discarded ends are bounded explicitly: on the left
    the integrand is increasing, on the right it is at most e^{-y}/(1+y)^2.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    peak = peak_location(d)
    f_peak = _f(d, peak) if peak > 0 else _f(0, 0.0)
    scale = max(1.0, math.sqrt(peak))
    log_thr = math.log(rel_tol) - 7.0

    def below(y):
        return float(log_integrand_drop(d, y, peak)) - log_thr

    lo = 0.0
    if d > 0 and peak > 0:
        probe = max(peak - scale, peak / 2)
        while probe > 1e-300 and below(probe) > 0:
            probe /= 2
        if probe > 1e-300:
            lo = brentq(below, probe, peak, xtol=1e-12 * scale)
    probe = peak + scale
    while below(probe) > 0:
        probe = peak + 2 * (probe - peak)
    hi = brentq(below, peak, probe, xtol=1e-12 * scale)

    def scaled(y):
        return np.exp(log_integrand_drop(d, y, peak))

    pts = [lo]
    for t in (-8, -4, -2, 0, 2, 4, 8):
        p = peak + t * scale
        if lo < p < hi:
            pts.append(p)
    pts.append(hi)
    res = integrate(scaled, pts, rel_tol=rel_tol / 4, limit=20000)
    total, err = res.value, res.error

    left_bound = lo * math.exp(log_thr) if lo > 0 else 0.0
    # right end: (y/(1+y))^d <= 1 so the integrand is below e^{-y}/(1+hi)^2
    def log_right_bound(h):
        return -h - 2 * math.log1p(h) - f_peak

    target = math.log(rel_tol / 10 * total)
    if log_right_bound(hi) > target:
        # push the window out until the analytic tail bound is negligible
        far = hi
        while log_right_bound(far) > target:
            far = 2 * far + 1
        far = brentq(lambda h: log_right_bound(h) - target, hi, far)
        extra = integrate(scaled, [hi, far], rel_tol=rel_tol / 4,
                          abs_tol=rel_tol / 10 * total, limit=20000)
        total += extra.value
        err += extra.error
        hi = far
    err += left_bound + math.exp(log_right_bound(hi))
    rel = err / total
    if not rel <= rel_tol:
        raise QuadratureError(f"c_{d}: tolerance {rel_tol} unreachable", total, err)
    log_value = math.log(d + 1) + f_peak + math.log(total)
    return QuadratureValue(d, log_value, rel, (lo, hi))


def log_cd_quadrature(d: int, rel_tol: float = 1e-11) -> float:
    return cd_quadrature_full(d, rel_tol).log_value


def cd_quadrature(d: int, rel_tol: float = 1e-11) -> float:
    """c_d from the integral representation, to relative accuracy ``rel_tol``."""
    return cd_quadrature_full(d, rel_tol).value


# -- asymptotics ----------------------------------------------------------------

def log_cd_asymptotic(d: float) -> float:
    if d < 1:
        raise ValueError("asymptotic form needs d >= 1")
    return LOG_SQRT_E_PI + 0.25 * math.log(d) - 2.0 * math.sqrt(d)


def cd_asymptotic(d: float) -> float:
    """sqrt(e*pi) * d^{1/4} * exp(-2 sqrt(d)); leading order only, not exact for finite d."""
    return math.exp(log_cd_asymptotic(d))


def asymptotic_tail(d_max: int, rel_tol: float = 1e-17) -> float:
    """Sum of the asymptotic form over d > d_max, summed until terms stop mattering."""
    total = 0.0
    start = d_max + 1
    while True:
        d = np.arange(start, start + 4096, dtype=float)
        terms = np.exp(LOG_SQRT_E_PI + 0.25 * np.log(d) - 2.0 * np.sqrt(d))
        total += float(terms.sum())
        if terms[-1] <= rel_tol * total or terms[-1] == 0.0:
            return total
        start += 4096


# -- checks -------------------------------------------------------------------------

def recursion_residuals(c: Sequence[float]) -> np.ndarray:
    """|3c_0 - 1 - c_1| at index 0, |(2d+3)c_d - (d+1)(c_{d-1}+c_{d+1})| at index d >= 1."""
    c = np.asarray(c, dtype=float)
    if c.size < 2:
        raise ValueError("need at least c_0 and c_1")
    out = np.empty(c.size - 1)
    out[0] = abs(3 * c[0] - 1 - c[1])
    d = np.arange(1, c.size - 1, dtype=float)
    out[1:] = np.abs((2 * d + 3) * c[1:-1] - (d + 1) * (c[:-2] + c[2:]))
    return out


def generating_function_residual(c: Sequence[float], z: float) -> float:
    """(1-z)^2 G'(z) - (3-2z) G(z) + 1 for the truncated series G(z) = sum c_d z^d."""
    c = np.asarray(c, dtype=float)
    d = np.arange(c.size, dtype=float)
    powers = z ** d
    g = float(np.dot(c, powers))
    dg = float(np.dot(c[1:] * d[1:], powers[:-1]))
    return (1 - z) ** 2 * dg - (3 - 2 * z) * g + 1


@dataclass
class TheoreticalDistribution:
    values: np.ndarray  # c_0..c_{d_max}
    method: str
    d_max: int
    tol: float
    tail: float  # estimated mass beyond d_max

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")


def normalization_check(distribution, d_max: int | None = None, tail_factor: float = 2.0) -> float:
    """|1 - sum_{d <= d_max} c_d - tail|, the tail being ``tail_factor`` times the asymptotic sum.

    Pass ``tail_factor=0`` to ignore the tail entirely.
    """
    values = getattr(distribution, "values", distribution)
    values = np.asarray(values, dtype=float)
    d_max = values.size - 1 if d_max is None else d_max
    if d_max >= values.size:
        raise ValueError("distribution does not reach d_max")
    tail = tail_factor * asymptotic_tail(d_max) if tail_factor else 0.0
    return abs(1.0 - math.fsum(values[: d_max + 1]) - tail)


def theoretical_distribution(method: str, d_max: int, tol: float = 1e-10,
                             k_max: int | None = None) -> TheoreticalDistribution:
    """c_0..c_{d_max} by one method.

    For ``fixed-point`` the truncation ``k_max`` defaults to
    ``max(2000, 4 * (d_max + 1))`` so the requested degrees sit well inside
    the report window.
    """
    if d_max < 0:
        raise ValueError("d_max must be nonnegative")
    if method == "quadrature":
        values = np.array([cd_quadrature(d, tol) for d in range(d_max + 1)])
    elif method == "fixed-point":
        k_max = max(2000, 4 * (d_max + 1)) if k_max is None else k_max
        if d_max + 1 > k_max // 2:
            raise ValueError("k_max too small for the requested d_max")
        fp = fixed_point_yk(k_max, tol)
        values = cd_from_yk(fp.y[: d_max + 1])
    elif method == "asymptotic":
        values = np.array([cd_asymptotic(d) if d >= 1 else math.nan for d in range(d_max + 1)])
    else:
        raise ValueError(f"unknown method {method!r}")
    return TheoreticalDistribution(values, method, d_max, tol, asymptotic_tail(d_max))
