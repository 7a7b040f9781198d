"""Through-thickness displacement profiles of the normal fiber.

Each profile phi maps the signed thickness offset x3 to the normal
displacement of the deformed fiber, with phi(0) = 0 and phi'(0) > 0.
Closed-form profiles here are the stationary ones for their material
class; the generic cubic carrier is shared by all series formulas.
"""

from __future__ import annotations

import numpy as np
from dataclasses import dataclass
from scipy.optimize import brentq

SHC_SERIES_CUTOFF = 1e-4


class ProfileConstraintError(ValueError):
    """Profile preconditions (unimodular metric, admissible fiber) violated."""


def _shc(z):
    # sinh(z)/z, stable through z = 0
    if abs(z) < SHC_SERIES_CUTOFF:
        z2 = z * z
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0
    return np.sinh(z) / z


@dataclass(frozen=True)
class PolyProfile:
    """Cubic fiber profile alpha x3 + beta x3^2 + gamma x3^3."""

    alpha: float
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("profile slope alpha at the mid-plane must be positive")

    def phi(self, x3):
        return x3 * (self.alpha + x3 * (self.beta + x3 * self.gamma))

    def dphi(self, x3):
        return self.alpha + x3 * (2.0 * self.beta + 3.0 * x3 * self.gamma)


@dataclass(frozen=True)
class HyperbolicProfile:
    """Stationary fiber profile of the Saint Venant-Kirchhoff sheet.

    Member of the family phi_p (1 - cosh(2 H x3)) + xi sinh(2 H x3) with
    phi_p = lam / (2 H (2 mu + lam)); evaluated through sinh(z)/z so small
    curvature (and H = 0, where xi alone is meaningless) stays stable.
    """

    H: float
    lam: float
    mu: float
    h: float
    xi: float
    alpha_bar: float = None

    def __post_init__(self):
        if self.mu <= 0 or self.lam <= 0:
            raise ValueError("Lame constants must be positive")
        if self.h <= 0:
            raise ValueError("half thickness must be positive")
        if self.alpha_bar is None:
            object.__setattr__(self, "alpha_bar", 2.0 * self.H * self.xi)
        if not self.alpha_bar > 0:
            raise ValueError("mid-plane slope 2 H xi must be positive")

    @property
    def alpha(self):
        return self.alpha_bar

    @property
    def beta(self):
        return -self.lam * self.H / (2.0 * self.mu + self.lam)

    @property
    def gamma(self):
        return 2.0 * self.alpha_bar * self.H * self.H / 3.0

    def phi(self, x3):
        ratio = self.lam / (2.0 * self.mu + self.lam)
        s1 = _shc(self.H * x3)
        return (-ratio * self.H * x3 * x3 * s1 * s1
                + self.alpha_bar * x3 * _shc(2.0 * self.H * x3))

    def dphi(self, x3):
        ratio = self.lam / (2.0 * self.mu + self.lam)
        z = 2.0 * self.H * x3
        return self.alpha_bar * np.cosh(z) - ratio * np.sinh(z)


class ExactIncompressibleProfile(object):
    """Profile solving det C_f = 1 exactly along the fiber.

    phi satisfies phi + H phi^2 + (K/3) phi^3 = x3 / sqrt(det C); the
    cubic is inverted numerically on its monotone branch through 0.
    """

    def __init__(self, jet):
        self.H = jet.H
        self.K = jet.K
        self.root_detC = np.sqrt(jet.detC)

    def _antiderivative(self, p):
        return p + self.H * p * p + self.K * p ** 3 / 3.0

    def _area_factor(self, p):
        return 1.0 + 2.0 * self.H * p + self.K * p * p

    def phi(self, x3):
        t = x3 / self.root_detC
        if t == 0.0:
            return 0.0
        sign = 1.0 if t > 0 else -1.0
        target = abs(t)
        lo, hi = 0.0, abs(t)
        f = lambda p: sign * self._antiderivative(sign * p) - target
        while f(hi) < 0.0:
            if self._area_factor(sign * hi) <= 0.0:
                raise ProfileConstraintError(
                    f"fiber offset x3 = {x3:.6g} leaves the orientation-preserving range")
            hi *= 2.0
        p = brentq(f, lo, hi, xtol=1e-15, rtol=8.9e-16)
        return sign * p

    def dphi(self, x3):
        p = self.phi(x3)
        area = self._area_factor(p)
        if area <= 0.0:
            raise ProfileConstraintError(
                f"fiber offset x3 = {x3:.6g} leaves the orientation-preserving range")
        return 1.0 / (self.root_detC * area)


def _unimodular_tol(jet, tol):
    if tol is not None:
        return tol
    return 1e-8 if getattr(jet, "derivative_mode", "analytic") == "analytic" else 1e-4


def incompressible_profile(jet, tol=None):
    """Cubic profile keeping det C_f = 1 through quadratic order, for an
    area-preserving mid-surface.

    Coefficients {1, -H, (6 H^2 - K)/3}.  Raises ProfileConstraintError
    when det C deviates from 1; use ``incompressible_profile_general``
    for surfaces that stretch area.
    """
    tol = _unimodular_tol(jet, tol)
    if abs(jet.detC - 1.0) > tol:
        raise ProfileConstraintError(
            f"det C = {jet.detC:.12g} is not 1 within {tol:g}; "
            "use incompressible_profile_general for area-changing stretches")
    return PolyProfile(alpha=1.0, beta=-jet.H,
                       gamma=(6.0 * jet.H * jet.H - jet.K) / 3.0)


def incompressible_profile_general(jet):
    """Cubic profile keeping det C_f = 1 through quadratic order for any
    mid-surface stretch."""
    d = jet.detC
    if d <= 0:
        raise ProfileConstraintError("det C must be positive")
    return PolyProfile(alpha=1.0 / np.sqrt(d),
                       beta=-jet.H / d,
                       gamma=(6.0 * jet.H * jet.H - jet.K) / (3.0 * d ** 1.5))


def cg_profile(jet, material):
    """Energy-minimizing cubic profile for the Ciarlet-Geymonat model.

    alpha minimizes the leading-order fiber energy, beta the h^3 term;
    the cubic coefficient does not enter the h^3 energy at this alpha and
    is fixed to zero.
    """
    a, b = material.a, material.b
    s = a + b
    D = a + b * jet.detC
    alpha = np.sqrt(s / D)
    beta = -(a / (8.0 * D)) * jet.b1 + (s * (a - 4.0 * b * jet.detC) / (4.0 * D * D)) * jet.H
    return PolyProfile(alpha=float(alpha), beta=float(beta), gamma=0.0)


def svk_profile(H, lam, mu, h):
    """Energy-minimizing hyperbolic profile for Saint Venant-Kirchhoff.

    The free odd coefficient is fixed by minimizing the fiber energy over
    the stationary family at half thickness h.
    """
    if h <= 0:
        raise ValueError("half thickness must be positive")
    c = np.cosh(2.0 * H * h)
    alpha_bar = (lam * lam * c + 4.0 * mu * (lam + mu)) / ((2.0 * mu + lam) ** 2 * c)
    xi = alpha_bar / (2.0 * H) if H != 0.0 else np.inf
    return HyperbolicProfile(H=H, lam=lam, mu=mu, h=h, xi=xi, alpha_bar=float(alpha_bar))


def deformed_thickness(profile, h, quad_order=16):
    """Thickness of the deformed sheet: quadrature of phi' over [-h, h]."""
    if h <= 0:
        raise ValueError("half thickness must be positive")
    nodes, weights = np.polynomial.legendre.leggauss(quad_order)
    return h * sum(w * profile.dphi(h * t) for t, w in zip(nodes, weights))
