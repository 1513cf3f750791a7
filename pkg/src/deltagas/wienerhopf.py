"""Wiener-Hopf machinery for the symbol sigma(xi) = (1 + exp(-|xi|))/2.

The factorization sigma = factor_plus * factor_minus (factors analytic
and nonvanishing in the upper/lower half-planes, both -> 1 at infinity
along the real axis) is evaluated in closed form through log-gamma.
The two jump densities live on the half-line and carry the damped
integrals that appear when the factored equation is projected; the
plus projection of the source term is evaluated by graded quadrature.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import AccuracyError, DomainError
from .quadrature import geometric_breakpoints, panel_rule
from .specfun import EULER_GAMMA, PI, log_gamma

_LOG_2PI = math.log(2 * PI)
_APERY = 1.2020569031595943  # zeta(3)
_SERIES_CUTOFF = 1e-4
_GRADING_LEVELS = 40


def symbol(xi):
    """Fourier symbol (1 + exp(-|xi|))/2 of the half-plus-Lorentzian kernel."""
    x = np.asarray(xi, dtype=float)
    out = 0.5 * (1.0 + np.exp(-np.abs(x)))
    return float(out) if out.ndim == 0 else out


def indicator_transform(xi, r: float):
    """Fourier transform 2 sin(r xi / 2)/xi of the indicator of (-r/2, r/2)."""
    if r <= 0:
        raise DomainError("indicator_transform: r must be positive")
    x = np.asarray(xi, dtype=float)
    out = r * np.sinc(r * x / (2 * PI))
    return float(out) if out.ndim == 0 else out


def factor_plus(xi):
    """Upper factor of the symbol, analytic for Im xi >= 0, value 1 at 0.

    factor_plus(xi) = sqrt(pi) * exp((xi/2 pi i)(log(-i xi) - log 2 pi - 1))
                      / Gamma(1/2 + xi/2 pi i)
    """
    a = np.asarray(xi, dtype=complex)
    scalar = a.ndim == 0
    a = np.atleast_1d(a)
    if np.any(a.imag < 0):
        raise DomainError("factor_plus: defined on the closed upper half-plane")
    out = np.ones_like(a)
    m = a != 0
    if m.any():
        zm = a[m]
        t = zm / (2j * PI)
        out[m] = np.exp(0.5 * math.log(PI) + t * (np.log(-1j * zm) - _LOG_2PI - 1.0)
                        - log_gamma(0.5 + t))
    return complex(out[0]) if scalar else out


def factor_minus(xi):
    """Lower factor, analytic for Im xi <= 0; conjugate of factor_plus on reals."""
    a = np.asarray(xi, dtype=complex)
    scalar = a.ndim == 0
    a = np.atleast_1d(a)
    if np.any(a.imag > 0):
        raise DomainError("factor_minus: defined on the closed lower half-plane")
    out = np.ones_like(a)
    m = a != 0
    if m.any():
        zm = a[m]
        t = zm / (2j * PI)
        out[m] = np.exp(0.5 * math.log(PI) - t * (np.log(1j * zm) - _LOG_2PI - 1.0)
                        - log_gamma(0.5 - t))
    return complex(out[0]) if scalar else out


def jump_density_minus(x):
    """Density (1/pi) factor_minus(-ix) tan(x/2) of the damped half-line
    integrals; defined for 0 < x < pi, positive, ~ x/(2 pi) at 0."""
    a = np.asarray(x, dtype=float)
    if np.any(a <= 0) or np.any(a >= PI):
        raise DomainError("jump_density_minus: x must lie in (0, pi)")
    vals = factor_minus(-1j * np.atleast_1d(a).astype(complex))
    out = (np.atleast_1d(vals).real / PI) * np.tan(np.atleast_1d(a) / 2)
    return float(out[0]) if a.ndim == 0 else out


def jump_density_plus(y):
    """Density -(1/pi) factor_plus(iy)^2 tan(y/2); negative on (0, pi)."""
    a = np.asarray(y, dtype=float)
    if np.any(a <= 0) or np.any(a >= PI):
        raise DomainError("jump_density_plus: y must lie in (0, pi)")
    vals = factor_plus(1j * np.atleast_1d(a).astype(complex))
    out = -(np.atleast_1d(vals).real ** 2 / PI) * np.tan(np.atleast_1d(a) / 2)
    return float(out[0]) if a.ndim == 0 else out


@dataclass(frozen=True)
class WienerHopfContext:
    """Evaluation context for the damped half-line integrals.

    r is the interval length of the underlying problem; x_max truncates
    the half-line (the integrand carries exp(-r x), so anything past
    pi/2 is noise for the supported r); quad_points is the node count
    per graded panel.
    """

    r: float
    x_max: float = PI / 2
    quad_points: int = 64

    def __post_init__(self):
        if self.r <= 0:
            raise DomainError("WienerHopfContext: r must be positive")
        if not 0 < self.x_max <= PI / 2:
            raise DomainError("WienerHopfContext: x_max must lie in (0, pi/2]")
        if self.quad_points < 32:
            raise DomainError("WienerHopfContext: quad_points must be >= 32")


@lru_cache(maxsize=32)
def _density_table(x_max: float, n: int):
    # panels graded geometrically toward 0 so exp(-r x) is resolved for
    # every r >= 10 with the same mesh
    x, w = panel_rule(geometric_breakpoints(x_max, _GRADING_LEVELS), n)
    psi = jump_density_minus(x)
    for arr in (x, w, psi):
        arr.setflags(write=False)
    return x, w, psi


def _source_head(xi: complex) -> complex:
    """(i/xi)(1/factor_plus(xi) - 1), with a three-term series near 0
    where the direct form loses all its digits to cancellation."""
    if abs(xi) > _SERIES_CUTOFF:
        return (1j / xi) * (1.0 / factor_plus(xi) - 1.0)
    a = np.log(-1j * xi) + math.log(2 / PI) + EULER_GAMMA - 1.0
    return complex(-a / (2 * PI)
                   - 1j * xi / (4 * PI ** 2) * (PI ** 2 / 4 + a * a / 2)
                   + xi ** 2 / (8 * PI ** 3) * (7 * _APERY / 3 + PI ** 2 * a / 4 + a ** 3 / 6))


def source_plus(xi, ctx: WienerHopfContext) -> complex:
    """Plus projection of the factored source term.

    source_plus(xi) = (i/xi)(1/factor_plus(xi) - 1)
                      - int_0^x_max exp(-r x) psi(x) / (x (x - i xi)) dx
    with psi = jump_density_minus.

    Parameters
    ----------
    xi : complex
        Point in the open upper half-plane.
    ctx : WienerHopfContext
        Must have r >= 10; the truncation at x_max relies on the
        exponential damping.

    Raises
    ------
    AccuracyError
        If doubling the panel node count moves the result by more than
        1e-6 relative.
    """
    xi = complex(xi)
    if xi.imag <= 0:
        raise DomainError("source_plus: xi must lie in the open upper half-plane")
    if ctx.r < 10:
        raise DomainError("source_plus: damped representation needs r >= 10")
    head = _source_head(xi)
    vals = []
    for n in (ctx.quad_points, 2 * ctx.quad_points):
        x, w, psi = _density_table(ctx.x_max, n)
        integrand = np.exp(-ctx.r * x) * psi / (x * (x - 1j * xi))
        vals.append(head - complex(w @ integrand))
    err = abs(vals[1] - vals[0])
    if err > 1e-6 * max(1.0, abs(vals[1])):
        raise AccuracyError("source_plus: quadrature did not converge under doubling")
    return vals[1]
