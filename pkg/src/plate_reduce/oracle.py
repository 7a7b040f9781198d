"""Numerical oracles for the closed-form plate energies.

Everything here works from quadrature, finite differences, and direct
minimization of the bulk energy; none of it knows the closed-form
profiles or energy contents it is used to verify.
"""

from __future__ import annotations

import warnings

import numpy as np
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

from . import materials as _materials
from .surface_geometry import evaluate_jet

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


class BracketError(ValueError):
    """The bracket shows no interior descent to minimize into."""


class ResolutionError(ValueError):
    """Step count too small for the requested integration range."""


class FitError(ValueError):
    """The sample set cannot support the requested power fit."""


@dataclass(frozen=True)
class HFit:
    """Least-squares coefficients of E(h) = c1 h + c3 h^3."""

    h_samples: Tuple[float, ...]
    energies: Tuple[float, ...]
    c1: float
    c3: float
    residual_norm: float


def through_thickness_energy(surface, x, material, profile, h, quad_order=8):
    """Integrate the bulk energy density through the thickness at one point.

    Gauss-Legendre quadrature of W along the fiber x3 in [-h, h]; the
    in-plane profile gradient is dropped, matching the closed forms this
    oracle exists to check.
    """
    return through_thickness_energy_from_jet(
        evaluate_jet(surface, x), material, profile, h, quad_order)


def through_thickness_energy_from_jet(jet, material, profile, h, quad_order=8):
    """Same as ``through_thickness_energy`` from a precomputed jet.

    ``jet`` may be any object with scalar fields trC, detC, H, K, b1 for
    invariant-based materials; SaintVenantKirchhoff needs a full jet.
    """
    if quad_order < 2:
        raise ValueError("quad_order must be at least 2")
    nodes, weights = np.polynomial.legendre.leggauss(quad_order)
    svk = isinstance(material, _materials.SaintVenantKirchhoff)
    if not svk:
        series = _materials.invariant_series(jet, _as_cubic(profile))
    total = 0.0
    for t, wt in zip(nodes, weights):
        x3 = h * t
        try:
            if svk:
                F = _materials.fiber_deformation_gradient(jet, profile, x3)
                w = _materials.volumetric_energy(material, C_f=F.T @ F)
            else:
                i1, i2, i3 = series.exact(x3)
                w = _materials.volumetric_energy(material, i1, i2, i3)
        except _materials.StiffeningLimitError as e:
            raise _materials.StiffeningLimitError(
                f"inadmissible fiber point x3 = {x3:.9g}: {e}") from e
        total += wt * w
    return h * total


class _CubicView(object):
    # adapter so general profiles expose alpha/beta/gamma for the series path
    def __init__(self, profile):
        self.phi = profile.phi
        self.dphi = profile.dphi
        d = 1e-5
        self.alpha = profile.dphi(0.0)
        self.beta = (profile.phi(d) + profile.phi(-d)) / (2.0 * d * d)
        self.gamma = (profile.phi(2 * d) - 2 * profile.phi(d)
                      + 2 * profile.phi(-d) - profile.phi(-2 * d)) / (12.0 * d ** 3)


def _as_cubic(profile):
    if hasattr(profile, "alpha") and hasattr(profile, "gamma"):
        return profile
    return _CubicView(profile)


def fit_h_powers(h_samples, energies=None):
    """Fit E(h) = c1 h + c3 h^3 by least squares.

    Takes parallel arrays of thicknesses and energies, or a single
    iterable of (h, energy) pairs.  Needs at least 4 distinct samples
    spanning a decade; no higher-order term is included, so keep max(h)
    small enough that h^5 leakage is below the tolerance of the
    comparison at hand.
    """
    if energies is None:
        pairs = np.asarray(list(h_samples), dtype=float)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise FitError("expected (h, energy) pairs")
        h_samples, energies = pairs[:, 0], pairs[:, 1]
    hs = np.asarray(h_samples, dtype=float)
    es = np.asarray(energies, dtype=float)
    if hs.shape != es.shape or hs.ndim != 1:
        raise FitError("h_samples and energies must be 1-d and equally long")
    if len(hs) < 4:
        raise FitError("need at least 4 samples")
    if len(np.unique(hs)) != len(hs):
        raise FitError("h samples must be distinct")
    if np.any(hs <= 0):
        raise FitError("h samples must be positive")
    if hs.max() / hs.min() < 10.0:
        raise FitError("h samples must span at least one decade")
    order = np.argsort(hs)[::-1]
    hs, es = hs[order], es[order]
    design = np.stack([hs, hs ** 3], axis=1)
    coef, _, rank, _ = np.linalg.lstsq(design, es, rcond=None)
    if rank < 2:
        raise FitError("rank-deficient design matrix")
    resid = design @ coef - es
    return HFit(h_samples=tuple(hs), energies=tuple(es),
                c1=float(coef[0]), c3=float(coef[1]),
                residual_norm=float(np.linalg.norm(resid)))


def minimize_scalar(f, bracket, tol=1e-12):
    """Golden-section minimization on a bracket.

    Returns (argmin, fmin).  Raises BracketError when the midpoint sits
    above both ends (no unimodal descent to follow).
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not hi > lo:
        raise BracketError("bracket must satisfy lo < hi")
    f_lo, f_hi = f(lo), f(hi)
    f_mid = f(0.5 * (lo + hi))
    if f_mid > f_lo and f_mid > f_hi:
        raise BracketError("midpoint above both bracket ends; no descent found")
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    xs = [a, c, d, b]
    fs = [f(a), fc, fd, f_hi if b == hi else f(b)]
    k = int(np.argmin(fs))
    return xs[k], fs[k]


def parabolic_refine(f, x0, delta):
    """One exact-for-quadratics refinement of a minimizer estimate."""
    fm, f0, fp = f(x0 - delta), f(x0), f(x0 + delta)
    denom = fm - 2.0 * f0 + fp
    if denom <= 0.0:
        return x0
    return x0 + 0.5 * delta * (fm - fp) / denom


@dataclass(frozen=True)
class SvkProfileSolution:
    """Sampled minimizing profile of the 1D fiber energy for SVK bending."""

    x3: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    slope: float
    energy: float
    ode_residual: float


def solve_svk_profile_ode(H, lam, mu, h, n_steps=400, slope_bracket=(0.5, 1.5)):
    """Shoot the SVK profile stationarity ODE and scan its free slope.

    Integrates phi'' = 4 H^2 phi - 2 lam H / (2 mu + lam) with phi(0) = 0
    by classical RK4 from the mid-plane outward in both directions, then
    minimizes the through-thickness SVK energy over the initial slope.
    The energy is evaluated from the bulk density on a developable fiber
    (principal curvatures 2H and 0), Simpson-integrated on the RK4 grid.
    """
    if n_steps < 100:
        raise ValueError("n_steps must be at least 100")
    if n_steps % 2:
        n_steps += 1
    if 2.0 * abs(H) * h / n_steps > 0.05:
        raise ResolutionError("curvature too large for this step count; raise n_steps")
    material = _materials.SaintVenantKirchhoff(lam=lam, mu=mu)
    coef = 4.0 * H * H
    forcing = -2.0 * lam * H / (2.0 * mu + lam)
    dt = h / n_steps

    def rhs(phi):
        return coef * phi + forcing

    def profile_for(s):
        # RK4 on the first-order system (phi, psi) from the mid-plane out
        x3 = np.linspace(-h, h, 2 * n_steps + 1)
        phi = np.empty(2 * n_steps + 1)
        psi = np.empty(2 * n_steps + 1)
        phi[n_steps], psi[n_steps] = 0.0, s
        for sgn in (1.0, -1.0):
            p, q = 0.0, s
            step = sgn * dt
            idx = range(n_steps + 1, 2 * n_steps + 1) if sgn > 0 else range(n_steps - 1, -1, -1)
            for i in idx:
                k1p, k1q = q, rhs(p)
                k2p, k2q = q + 0.5 * step * k1q, rhs(p + 0.5 * step * k1p)
                k3p, k3q = q + 0.5 * step * k2q, rhs(p + 0.5 * step * k2p)
                k4p, k4q = q + step * k3q, rhs(p + step * k3p)
                p += step * (k1p + 2 * k2p + 2 * k3p + k4p) / 6.0
                q += step * (k1q + 2 * k2q + 2 * k3q + k4q) / 6.0
                phi[i], psi[i] = p, q
        return x3, phi, psi

    def fiber_energy(s):
        x3, phi, psi = profile_for(s)
        dens = np.empty_like(phi)
        for i in range(len(x3)):
            c11 = (1.0 + 2.0 * H * phi[i]) ** 2
            C_f = np.diag([c11, 1.0, psi[i] ** 2])
            dens[i] = _materials.volumetric_energy(material, C_f=C_f)
        # composite Simpson on the uniform grid
        n = len(x3) - 1
        total = dens[0] + dens[-1] + 4.0 * dens[1:-1:2].sum() + 2.0 * dens[2:-2:2].sum()
        return total * dt / 3.0

    slope, energy = minimize_scalar(fiber_energy, slope_bracket, tol=1e-10)
    slope = parabolic_refine(fiber_energy, slope, 1e-5)
    energy = fiber_energy(slope)
    x3, phi, psi = profile_for(slope)
    inner = slice(1, -1)
    second = (phi[2:] - 2.0 * phi[1:-1] + phi[:-2]) / dt ** 2
    residual = float(np.max(np.abs(second - rhs(phi[inner]))))
    return SvkProfileSolution(x3=x3, phi=phi, dphi=psi, slope=float(slope),
                              energy=float(energy), ode_residual=residual)


def order_of_residual(residual, h_set):
    """Log-log slope of residual(h) over h_set.

    Nonpositive residuals (at the round-off floor) are excluded with a
    warning.  h_set should span at least 1.5 decades.
    """
    hs = np.asarray(sorted(h_set, reverse=True), dtype=float)
    if hs.max() / hs.min() < 10.0 ** 1.5:
        raise ValueError("h_set must span at least 1.5 decades")
    vals = np.array([residual(h) for h in hs], dtype=float)
    keep = vals > 0.0
    if not np.all(keep):
        warnings.warn("residuals at or below zero hit the round-off floor; "
                      f"excluding {int((~keep).sum())} point(s)", RuntimeWarning)
    if keep.sum() < 2:
        raise ValueError("fewer than 2 usable residuals above the floor")
    slope = np.polyfit(np.log(hs[keep]), np.log(vals[keep]), 1)[0]
    return float(slope)
