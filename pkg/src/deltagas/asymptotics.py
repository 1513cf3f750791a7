"""Closed-form asymptotic series for the observables, the reduced
Laplace-log integral behind them, and a log-log residual order fitter.

Conventions: kappa is the small kernel parameter (charge series),
gamma the small coupling (energy series), r = 2/kappa the long
interval (moment series). A residual quoted as O(s^(n+)) means s^n
times some power of log(1/s); such claims are checked empirically by
fitting the slope of log|residual| against log(scale).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import panel_rule
from .specfun import EULER_GAMMA, PI


def charge_series(kappa: float, order: int) -> float:
    """Small-kappa expansion of the Fermi charge Q.

    order 1:  1/pi + (kappa/2 pi^2)(log(1/kappa) + log pi + 1)
    order 2:  adds (kappa^2/4 pi^3)(log(1/kappa) + log pi + 1/2)

    Valid for 0 < kappa < 1. The residual of order 2 against the solved
    Q is O(kappa^(3+)).
    """
    if order not in (1, 2):
        raise ValueError("charge_series: order must be 1 or 2")
    if not 0 < kappa < 1:
        raise DomainError("charge_series: kappa must lie in (0, 1)")
    lk = math.log(1 / kappa) + math.log(PI)
    q = 1 / PI + (kappa / (2 * PI ** 2)) * (lk + 1.0)
    if order == 2:
        q += (kappa ** 2 / (4 * PI ** 3)) * (lk + 0.5)
    return q


def energy_series(gamma: float, order: int) -> float:
    """Weak-coupling expansion of the Fermi energy:
    pi^2/12 - gamma/2 + gamma^2/6 through second order (0 < gamma < 1)."""
    if order not in (0, 1, 2):
        raise ValueError("energy_series: order must be 0, 1 or 2")
    if not 0 < gamma < 1:
        raise DomainError("energy_series: gamma must lie in (0, 1)")
    e = PI ** 2 / 12
    if order >= 1:
        e -= gamma / 2
    if order >= 2:
        e += gamma ** 2 / 6
    return e


@dataclass(frozen=True)
class LongIntervalSeries:
    """Two-correction expansions of the Fermi observables at large r."""

    r: float
    moment0: float
    moment2: float
    gamma: float
    energy: float


def long_interval_series(r: float) -> LongIntervalSeries:
    """Large-r expansions of m0, m2, gamma and the energy (L = log(pi r/2)):

    m0 = r + (L+1)/pi + (L+1/2)/(pi^2 r)                      + O(r^(-2+))
    m2 = r^3/12 + r^2(L-1)/(4 pi)
         + r(L^2 - L - 5/2 + 2 pi^2/3)/(4 pi^2)               + O(r^(0+))
    gamma = pi/r - (L+1)/r^2                                  + O(r^(-3+))
    energy = pi^2/12 - pi/(2r) + (L + 1 + pi^2/3)/(2 r^2)     + O(r^(-3+))
    """
    if r <= 2:
        raise DomainError("long_interval_series: r must exceed 2")
    ell = math.log(PI * r / 2)
    m0 = r + (ell + 1.0) / PI + (ell + 0.5) / (PI ** 2 * r)
    m2 = (r ** 3 / 12 + r ** 2 * (ell - 1.0) / (4 * PI)
          + r * (ell ** 2 - ell - 2.5 + 2 * PI ** 2 / 3) / (4 * PI ** 2))
    gamma = PI / r - (ell + 1.0) / r ** 2
    e = PI ** 2 / 12 - PI / (2 * r) + (ell + 1.0 + PI ** 2 / 3) / (2 * r ** 2)
    return LongIntervalSeries(r=float(r), moment0=m0, moment2=m2,
                              gamma=gamma, energy=e)


def jump_density_series(x: float) -> float:
    """Two-term small-x form of the minus jump density:
    x/2 pi - (x^2/4 pi^2)(log(1/x) + log(pi/2) - gamma_E + 1),
    accurate to O(x^(3+))."""
    if x <= 0:
        raise DomainError("jump_density_series: x must be positive")
    return (x / (2 * PI)
            - (x ** 2 / (4 * PI ** 2)) * (math.log(1 / x) + math.log(PI / 2)
                                          - EULER_GAMMA + 1.0))


def _laplace_log_rule(x: float, nodes_per_panel: int):
    # resolve log(1+y)/y on [0, 1], then geometric panels out to where
    # exp(-x y) has killed the tail
    top = max(2.0, 60.0 / x)
    levels = int(math.ceil(math.log2(top)))
    breaks = np.concatenate(([0.0, 0.5, 1.0], 2.0 ** np.arange(1, levels + 1.0)))
    return panel_rule(breaks, nodes_per_panel)


def laplace_log_integral(x: float, mode: str = "quadrature",
                         nodes_per_panel: int = 20) -> float:
    """The reduced integral I(x) = int_0^inf exp(-x y) log(1+y)/y dy.

    mode "quadrature" evaluates directly on graded panels (any x > 0);
    mode "series" evaluates the small-x expansion
        log^2(x)/2 + gamma_E log x + C + x log x - (2 - gamma_E) x
    with C = pi^2/4 + gamma_E^2/2, valid for 0 < x <= 1, residual
    O(x^(2+)).
    """
    if x <= 0:
        raise DomainError("laplace_log_integral: x must be positive")
    if mode == "series":
        if x > 1:
            raise DomainError("laplace_log_integral: series mode needs x <= 1")
        lx = math.log(x)
        c = PI ** 2 / 4 + EULER_GAMMA ** 2 / 2
        return 0.5 * lx ** 2 + EULER_GAMMA * lx + c + x * lx - (2.0 - EULER_GAMMA) * x
    if mode != "quadrature":
        raise ValueError("laplace_log_integral: mode must be quadrature or series")
    y, w = _laplace_log_rule(x, nodes_per_panel)
    vals = np.exp(-x * y) * np.log1p(y) / y
    return float(w @ vals)


def laplace_log_constant(nodes_per_panel: int = 40) -> float:
    """Quadrature of C = int_0^inf [log(1+y) - (1-exp(-y)) log y] dy/y.

    Substituting y = e^t turns the integrand into
    log(1+e^t) + (exp(-e^t) - 1) t, which decays double-exponentially
    on the right and exponentially on the left; equal panels on
    [-40, 40] then converge past machine precision. The closed form is
    pi^2/4 + gamma_E^2/2.
    """
    t, w = panel_rule(np.linspace(-40.0, 40.0, 41), nodes_per_panel)
    vals = np.logaddexp(0.0, t) + np.expm1(-np.exp(t)) * t
    return float(w @ vals)


@dataclass(frozen=True)
class TailBlock:
    """Series and quadrature routes to the block 1 - x I(x)."""

    series: float
    quadrature: float


def laplace_log_block(x: float) -> TailBlock:
    """The combination 1 - x I(x) both ways.

    The series route expands through second order,
        1 - [log^2(x)/2 + gamma_E log x + C] x - [log x - 2 + gamma_E] x^2,
    residual O(x^(3+)); the quadrature route uses the direct I(x).
    """
    if not 0 < x <= 1:
        raise DomainError("laplace_log_block: x must lie in (0, 1]")
    lx = math.log(x)
    c = PI ** 2 / 4 + EULER_GAMMA ** 2 / 2
    series = 1.0 - (0.5 * lx ** 2 + EULER_GAMMA * lx + c) * x - (lx - 2.0 + EULER_GAMMA) * x ** 2
    quadrature = 1.0 - x * laplace_log_integral(x)
    return TailBlock(series=series, quadrature=quadrature)


@dataclass(frozen=True)
class ResidualFit:
    """Least-squares fit of log|residual| against log(scale)."""

    samples: tuple
    slope: float
    intercept: float
    r_squared: float


def fit_order(samples) -> ResidualFit:
    """Fit the empirical decay order of residuals.

    Parameters
    ----------
    samples : iterable of (scale, residual)
        At least 4 pairs with positive scales, at least 3 of them with
        nonzero residual (zero residuals are dropped before fitting).

    Returns
    -------
    ResidualFit
        slope/intercept of the log-log least squares line and its
        r_squared (defined as 1 when the residuals are constant).
    """
    pts = tuple((float(s), float(rho)) for s, rho in samples)
    if len(pts) < 4:
        raise DomainError("fit_order: need at least 4 samples")
    s = np.array([p[0] for p in pts])
    rho = np.array([p[1] for p in pts])
    if np.any(s <= 0):
        raise DomainError("fit_order: scales must be positive")
    keep = rho != 0
    if keep.sum() < 3:
        raise DomainError("fit_order: need at least 3 nonzero residuals")
    lx = np.log(s[keep])
    ly = np.log(np.abs(rho[keep]))
    slope, intercept = np.polyfit(lx, ly, 1)
    pred = slope * lx + intercept
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    ss_res = float(np.sum((ly - pred) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return ResidualFit(samples=pts, slope=float(slope),
                       intercept=float(intercept), r_squared=r_squared)
