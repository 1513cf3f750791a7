"""Physical observables built on the solver: charge Q, coupling gamma,
and the scaled ground-state energy for both statistics, plus inversion
of the monotone kappa -> gamma map.

In the rescaled normalization (Solution.moment0 = m0, moment2 = m2):

    Fermi:  Q = kappa m0 / 2 pi,  gamma = kappa / 2Q = pi / m0,
            energy = pi^2 m2 / m0^3
    Bose:   Q = kappa m0 / 4 pi (= kappa/gamma),  gamma = 4 pi / m0,
            energy = gamma^3 m2 / 4 pi
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.optimize import brentq

from .errors import DomainError, InversionError
from .nystrom import (DEFAULT_NODES_PER_PANEL, DEFAULT_PANEL_WIDTH, Solution,
                      Statistics, solve)

_PI = math.pi
_KAPPA_FLOOR = 1e-4
_KAPPA_CEIL = 1e4


@dataclass(frozen=True)
class SolverConfig:
    """Grid parameters threaded through to the solver."""

    panel_width: float = DEFAULT_PANEL_WIDTH
    nodes_per_panel: int = DEFAULT_NODES_PER_PANEL
    error_estimate: bool = True


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class ObservablePoint:
    """One solved parameter point with its derived observables."""

    kappa: float
    r: float
    gamma: float
    Q: float
    energy: float
    err_estimate: float | None
    statistics: Statistics


@lru_cache(maxsize=512)
def _solve_cached(statistics: Statistics, r: float, panel_width: float,
                  nodes_per_panel: int, error_estimate: bool) -> Solution:
    return solve(statistics, r, panel_width=panel_width,
                 nodes_per_panel=nodes_per_panel, error_estimate=error_estimate)


def solution_at(kappa: float, statistics: Statistics = Statistics.FERMI,
                config: SolverConfig = DEFAULT_CONFIG) -> Solution:
    """Cached solve at interval length r = 2/kappa."""
    if kappa <= 0:
        raise DomainError("kappa must be positive")
    return _solve_cached(statistics, 2.0 / kappa, config.panel_width,
                         config.nodes_per_panel, config.error_estimate)


def charge(kappa: float, statistics: Statistics = Statistics.FERMI,
           config: SolverConfig = DEFAULT_CONFIG) -> float:
    """Charge observable.

    Fermi: Q = (1/pi) integral of the unit-interval density, the
    equal-potential capacitor charge; increases from 1/pi to 2/pi as
    kappa runs from 0 to infinity. Bose: the zeroth-moment observable
    kappa/gamma (opposite potentials), so gamma * Q = kappa there,
    against gamma * Q = kappa/2 for Fermi.
    """
    sol = solution_at(kappa, statistics, config)
    if statistics is Statistics.FERMI:
        return kappa * sol.moment0 / (2 * _PI)
    return kappa * sol.moment0 / (4 * _PI)


def coupling(kappa: float, statistics: Statistics = Statistics.FERMI,
             config: SolverConfig = DEFAULT_CONFIG) -> float:
    """Coupling gamma at the given kappa (pi/m0 Fermi, 4 pi/m0 Bose)."""
    factor = 2.0 if statistics is Statistics.FERMI else 1.0
    return kappa / (factor * charge(kappa, statistics, config))


def energy(kappa: float, statistics: Statistics = Statistics.FERMI,
           config: SolverConfig = DEFAULT_CONFIG) -> float:
    """Scaled ground-state energy at the given kappa.

    Fermi: pi^2 m2 / m0^3, decreasing from pi^2/12 to pi^2/48.
    Bose: gamma^3 m2 / 4 pi, increasing to the hard-core limit pi^2/3.
    """
    sol = solution_at(kappa, statistics, config)
    if statistics is Statistics.FERMI:
        return _PI ** 2 * sol.moment2 / sol.moment0 ** 3
    gamma = 4 * _PI / sol.moment0
    return gamma ** 3 * sol.moment2 / (4 * _PI)


def kappa_from_coupling(gamma: float, statistics: Statistics = Statistics.FERMI,
                        config: SolverConfig = DEFAULT_CONFIG) -> float:
    """Invert the monotone map kappa -> gamma by bracketed root finding.

    For Fermi the root is bracketed a priori: Q in (1/pi, 2/pi) pins
    kappa in (2 gamma/pi, 4 gamma/pi). The Bose bracket starts from the
    weak- and strong-coupling forms (gamma ~ 2 kappa^2 and pi kappa)
    and expands if needed. Monotonicity over the bracket is verified.

    Raises
    ------
    InversionError
        If no bracket inside [1e-4, 1e4] contains the target or the map
        is not increasing over the bracket.
    """
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    solver_cfg = SolverConfig(config.panel_width, config.nodes_per_panel,
                              error_estimate=False)

    def g(kappa):
        return coupling(kappa, statistics, solver_cfg)

    if statistics is Statistics.FERMI:
        lo, hi = 2 * gamma / _PI * 0.99, 4 * gamma / _PI * 1.01
    else:
        lo = 0.5 * min(gamma / _PI, math.sqrt(gamma / 2))
        hi = 2.0 * max(gamma / _PI, math.sqrt(gamma / 2))
    lo, hi = max(lo, _KAPPA_FLOOR), min(hi, _KAPPA_CEIL)
    glo, ghi = g(lo), g(hi)
    while glo > gamma:
        if lo <= _KAPPA_FLOOR:
            raise InversionError(f"gamma={gamma} below the invertible range")
        lo = max(lo / 2, _KAPPA_FLOOR)
        glo = g(lo)
    while ghi < gamma:
        if hi >= _KAPPA_CEIL:
            raise InversionError(f"gamma={gamma} above the invertible range")
        hi = min(hi * 2, _KAPPA_CEIL)
        ghi = g(hi)
    if not glo < ghi:
        raise InversionError("kappa -> gamma is not increasing over the bracket")
    kappa = brentq(lambda k: g(k) - gamma, lo, hi, xtol=1e-14, rtol=8.9e-16)
    return float(kappa)


def observable_point(statistics: Statistics = Statistics.FERMI, *,
                     kappa: float | None = None, gamma: float | None = None,
                     config: SolverConfig = DEFAULT_CONFIG) -> ObservablePoint:
    """Assemble the observables at a point given by kappa or by gamma."""
    if (kappa is None) == (gamma is None):
        raise DomainError("give exactly one of kappa or gamma")
    if kappa is None:
        kappa = kappa_from_coupling(gamma, statistics, config)
    sol = solution_at(kappa, statistics, config)
    q = charge(kappa, statistics, config)
    gam = coupling(kappa, statistics, config)
    err = sol.err_estimate
    if err is not None:
        # propagate the moment0 uncertainty into Q units
        err = err * kappa / (2 * _PI if statistics is Statistics.FERMI else 4 * _PI)
    return ObservablePoint(kappa=float(kappa), r=sol.r, gamma=gam, Q=q,
                           energy=energy(kappa, statistics, config),
                           err_estimate=err, statistics=statistics)
