"""Closed-form stretching and bending contents of thin-sheet energies.

A through-thickness integral of a nonlinear elastic energy along the
optimal fiber profile collapses to ``h * w_s + h^3 * w_b`` in the half
thickness h.  This module evaluates the per-unit-area contents ``w_s``
(stretching) and ``w_b`` (bending) in closed form for the supported
material models, exposes the eigenframe-coupling analysis of the bending
content, and integrates contents over a surface patch.
"""

from dataclasses import dataclass

import numpy as np

from .materials import (
    CiarletGeymonat,
    Gent,
    MaterialDomainError,
    MooneyRivlin,
    NeoHookean,
    SaintVenantKirchhoff,
    StiffeningLimitError,
    invariant_series,
    volumetric_energy,
)
from .surface_geometry import evaluate_jet
from .thickness_profile import (
    cg_profile,
    incompressible_profile,
    incompressible_profile_general,
)

__all__ = [
    "EnergyContents",
    "energy_series_coefficients",
    "series_contents",
    "gent_contents",
    "gent_contents_unimodular",
    "gent_contents_general",
    "cg_contents",
    "cg_stretching_closed",
    "cg_bending_closed",
    "cg_bending_lame",
    "cg_small_strain_contents",
    "svk_content",
    "eigenframe_coupling",
    "coupling_stationary_angles",
    "point_contents",
    "integrate_contents",
]


@dataclass(frozen=True)
class EnergyContents:
    """Per-unit-area energy contents of a reduced plate theory.

    Attributes
    ----------
    stretching : float
        Content multiplying h (membrane term).
    bending : float
        Content multiplying h^3.
    formula_id : str
        Identifier of the closed form that produced the values.
    """

    stretching: float
    bending: float
    formula_id: str


def _detc_tolerance(jet, tol):
    if tol is not None:
        return tol
    return 1e-8 if getattr(jet, "derivative_mode", "analytic") == "analytic" else 1e-4


# ---------------------------------------------------------------------------
# generic quadratic expansion of the fiber energy


def _invariant_partials(material, I1, I2, I3):
    """Gradient and Hessian of the stored energy in the invariants.

    Only invariant-based models are supported; entries the model does not
    depend on stay zero.
    """
    g = np.zeros(3)
    h = np.zeros((3, 3))
    if isinstance(material, Gent):
        gap = material.jm - (I1 - 3.0)
        if gap <= 0.0:
            raise StiffeningLimitError(
                f"I1 = {I1:.9g} reached the extensibility limit "
                f"Jm + 3 = {material.jm + 3.0:.9g}")
        g[0] = 0.5 * material.mu * material.jm / gap
        h[0, 0] = 0.5 * material.mu * material.jm / gap**2
    elif isinstance(material, NeoHookean):
        g[0] = 0.5 * material.mu
    elif isinstance(material, MooneyRivlin):
        g[0] = 0.5 * material.mu * material.chi
        g[1] = 0.5 * material.mu * (1.0 - material.chi)
    elif isinstance(material, CiarletGeymonat):
        s = material.a + material.b
        g[0] = material.a
        g[2] = material.b - s / I3
        h[2, 2] = s / I3**2
    else:
        raise TypeError(
            f"{type(material).__name__} has no invariant representation; "
            "its fiber energy cannot be expanded this way")
    return g, h


def energy_series_coefficients(material, series):
    """Constant and quadratic x3-coefficients of the fiber energy density.

    Parameters
    ----------
    material : invariant-based material model
    series : InvariantSeries
        Quadratic expansion of the fiber invariants along a profile.

    Returns
    -------
    (w0, w2) : pair of floats
        Fiber energy ``w0 + O(x3) + w2 x3^2 + O(x3^3)``; the odd term
        integrates away, so the thickness integral over (-h, h) is
        ``2 h w0 + (2/3) h^3 w2 + O(h^5)``.
    """
    I1, I2, I3 = series.i1[0], series.i2[0], series.i3[0]
    g, h = _invariant_partials(material, I1, I2, I3)
    w0 = volumetric_energy(material, I1, I2, I3)
    v1 = np.array([series.i1[1], series.i2[1], series.i3[1]])
    v2 = np.array([series.i1[2], series.i2[2], series.i3[2]])
    w2 = g @ v2 + 0.5 * (v1 @ h @ v1)
    return float(w0), float(w2)


def series_contents(jet, material, profile, formula_id="series"):
    """Stretching/bending contents from the quadratic invariant expansion
    along ``profile``.

    Exact as the h- and h^3-contents for any cubic profile, since the
    discarded invariant orders only enter at h^5.
    """
    series = invariant_series(jet, profile)
    w0, w2 = energy_series_coefficients(material, series)
    return EnergyContents(2.0 * w0, (2.0 / 3.0) * w2, formula_id)


# ---------------------------------------------------------------------------
# Gent


def gent_contents_unimodular(jet, mu, jm):
    """Gent contents for an area-preserving mid-surface (det C = 1)."""
    trc, b1, H, K = jet.trC, jet.b1, jet.H, jet.K
    delta = jm - (trc - 2.0)
    if delta <= 0.0:
        raise StiffeningLimitError(
            f"tr C - 2 = {trc - 2.0:.9g} reached the extensibility limit Jm = {jm:.9g}")
    w_s = -mu * jm * np.log1p(-(trc - 2.0) / jm)
    w_b = (mu / 3.0) * jm * (
        2.0 * ((b1 - 2.0 * H) / delta) ** 2
        + (16.0 * H * H - K * (trc + 2.0)) / delta)
    return EnergyContents(float(w_s), float(w_b), "gent_unimodular")


def gent_contents_general(jet, mu, jm):
    """Gent contents without the det C = 1 restriction.

    Reduces to the unimodular formulas on det C = 1 inputs.
    """
    trc, detc, b1, H, K = jet.trC, jet.detC, jet.b1, jet.H, jet.K
    den = detc * (jm - trc + 3.0) - 1.0
    if den <= 0.0:
        raise StiffeningLimitError(
            f"det C (Jm - tr C + 3) - 1 = {den:.9g} is not positive "
            f"(tr C = {trc:.9g}, det C = {detc:.9g}, Jm = {jm:.9g})")
    w_s = -mu * jm * np.log1p(-(detc * (trc - 3.0) + 1.0) / (jm * detc))
    w_b = (mu * jm / (3.0 * detc)) * (
        2.0 * ((detc * b1 - 2.0 * H) / den) ** 2
        + (16.0 * H * H - K * (detc * trc + 2.0)) / den)
    return EnergyContents(float(w_s), float(w_b), "gent_general")


def gent_contents(jet, mu, jm, tol=None):
    """Stretching and bending contents for the Gent model.

    Picks the area-preserving closed form when |det C - 1| <= tol
    (default 1e-8 for analytic jets, 1e-4 for finite-difference ones) and
    the general-stretch form otherwise.

    Raises
    ------
    StiffeningLimitError
        When the stretch reaches the model's extensibility limit.
    """
    if abs(jet.detC - 1.0) <= _detc_tolerance(jet, tol):
        return gent_contents_unimodular(jet, mu, jm)
    return gent_contents_general(jet, mu, jm)


# ---------------------------------------------------------------------------
# Ciarlet-Geymonat


def cg_contents(jet, material):
    """Stretching and bending contents for the Ciarlet-Geymonat model.

    The bending content is obtained by inserting the minimizing profile
    into the quadratic expansion of the fiber energy; the equivalent
    rearrangements `cg_bending_closed` and `cg_bending_lame` are kept as
    cross-checks.
    """
    profile = cg_profile(jet, material)
    return series_contents(jet, material, profile, "cg_minimizing_profile")


def cg_stretching_closed(jet, material):
    """Closed-form Ciarlet-Geymonat stretching content."""
    a, b = material.a, material.b
    s = a + b
    D = a + b * jet.detC
    return 2.0 * (a * jet.trC + s * (1.0 - np.log(s * jet.detC / D)) - (3.0 * a + b))


def cg_bending_closed(jet, material):
    """Closed-form Ciarlet-Geymonat bending content in the (a, b) constants."""
    a, b = material.a, material.b
    trc, detc, b1, H, K = jet.trC, jet.detC, jet.b1, jet.H, jet.K
    s = a + b
    D = a + b * detc
    return (
        a * s * s * (7.0 * a + 32.0 * b * detc) / (3.0 * D**3) * H * H
        + 5.0 * a * a * s / (3.0 * D * D) * b1 * H
        - 2.0 * a * s * (D * trc + 2.0 * s) / (3.0 * D * D) * K
        - a * a / (12.0 * D) * b1 * b1
    )


def cg_bending_lame(jet, lam, mu):
    """Ciarlet-Geymonat bending content written in the Lame constants."""
    trc, detc, b1, H, K = jet.trC, jet.detC, jet.b1, jet.H, jet.K
    D = 2.0 * mu + lam * detc
    return (
        mu * (2.0 * mu + lam) ** 2 * (16.0 * lam * detc + 7.0 * mu) / (3.0 * D**3) * H * H
        + 5.0 * mu * mu * (2.0 * mu + lam) / (3.0 * D * D) * b1 * H
        - mu * (2.0 * mu + lam) * (D * trc + 2.0 * (2.0 * mu + lam)) / (3.0 * D * D) * K
        - mu * mu / (12.0 * D) * b1 * b1
    )


def cg_small_strain_contents(E, H, K, lam, mu):
    """Leading quadratic contents for small mid-surface strain E.

    Parameters
    ----------
    E : (2, 2) array_like
        Mid-surface strain, (C - I)/2.
    H, K : float
        Mean and Gaussian curvature.
    lam, mu : float
        Lame constants.
    """
    E = np.asarray(E, dtype=float)
    tr_e = np.trace(E)
    w1 = 2.0 * lam * mu / (lam + 2.0 * mu) * tr_e * tr_e + 2.0 * mu * np.trace(E @ E)
    w3 = 16.0 / 3.0 * mu * (lam + mu) / (2.0 * mu + lam) * H * H - 4.0 / 3.0 * mu * K
    return EnergyContents(float(w1), float(w3), "cg_small_strain")


# ---------------------------------------------------------------------------
# Saint Venant-Kirchhoff


def svk_content(H, K, lam, mu):
    """Bending content of the Saint Venant-Kirchhoff variant on isometries.

    The mid-surface is assumed unstretched (C = I), which makes the
    stretching content zero; K is accepted for formula completeness even
    though isometries of a flat sheet have K = 0.
    """
    w3 = 16.0 / 3.0 * mu * (lam + mu) / (2.0 * mu + lam) * H * H - 4.0 / 3.0 * mu * K
    return EnergyContents(0.0, float(w3), "svk_isometry")


# ---------------------------------------------------------------------------
# eigenframe coupling of the bending content


def _coupling_coefficients(kappa1, kappa2, lambda1):
    if lambda1 <= 0.0:
        raise ValueError(f"lambda1 = {lambda1:.9g} must be positive")
    l2 = lambda1 * lambda1
    a = kappa1 * l2 + kappa2 / l2 - (kappa1 + kappa2)
    b = kappa2 * l2 + kappa1 / l2 - (kappa1 + kappa2)
    return a, b


def eigenframe_coupling(kappa1, kappa2, lambda1, phi_angle):
    """Bending coupling between stretch and curvature eigenframes.

    For an area-preserving stretch (lambda1, 1/lambda1) whose first
    principal direction makes angle ``phi_angle`` with the first curvature
    direction, the only frame-dependent bending term is the square of a
    cos^2/sin^2 combination; it vanishes when the frames can align the
    stretch with the curvatures.

    Returns
    -------
    float
        The (nonnegative) coupling term.
    """
    a, b = _coupling_coefficients(kappa1, kappa2, lambda1)
    c = np.cos(phi_angle)
    s = np.sin(phi_angle)
    return float((a * c * c + b * s * s) ** 2)


def coupling_stationary_angles(kappa1, kappa2, lambda1):
    """Stationary angles of the eigenframe coupling in [0, pi/2].

    The axis angles 0 and pi/2 are always stationary; an interior angle
    appears when the coefficient ratio makes tan^2 of it positive, and
    the coupling vanishes there.
    """
    a, b = _coupling_coefficients(kappa1, kappa2, lambda1)
    angles = [0.0, 0.5 * np.pi]
    if a * b < 0.0:
        angles.append(float(np.arctan(np.sqrt(-a / b))))
    return np.sort(np.array(angles))


# ---------------------------------------------------------------------------
# per-point dispatch and area integration


def point_contents(jet, material, tol=None):
    """Contents of the reduced energy at one surface point for any model.

    Gent and Ciarlet-Geymonat use their closed forms; the other
    incompressible models go through the series expansion along the
    volume-preserving profile; Saint Venant-Kirchhoff requires an
    unstretched mid-surface.
    """
    if isinstance(material, Gent):
        return gent_contents(jet, material.mu, material.jm, tol=tol)
    if isinstance(material, CiarletGeymonat):
        return cg_contents(jet, material)
    if isinstance(material, (NeoHookean, MooneyRivlin)):
        name = ("neo_hookean" if isinstance(material, NeoHookean)
                else "mooney_rivlin")
        if abs(jet.detC - 1.0) <= _detc_tolerance(jet, tol):
            profile = incompressible_profile(jet, tol=tol)
        else:
            profile = incompressible_profile_general(jet)
        return series_contents(jet, material, profile, f"{name}_series")
    if isinstance(material, SaintVenantKirchhoff):
        strain = np.max(np.abs(jet.C - np.eye(2)))
        if strain > _detc_tolerance(jet, tol):
            raise MaterialDomainError(
                f"Saint Venant-Kirchhoff content needs an unstretched "
                f"mid-surface; max |C - I| = {strain:.6g}")
        return svk_content(jet.H, jet.K, material.lam, material.mu)
    raise TypeError(f"unknown material {type(material).__name__}")


def integrate_contents(surface, material, h, grid=(8, 8)):
    """Integrate the reduced energy over the surface's reference domain.

    Tensor-product Gauss-Legendre quadrature with ``grid`` nodes per axis
    on the flat reference area element.  Accumulation is a fixed-order
    pairwise reduction, so totals are reproducible bit-for-bit.

    Returns
    -------
    (total_stretch, total_bend, total) : triple of floats
        Area integrals of w_s and w_b, and ``h*total_stretch +
        h^3*total_bend``.

    Raises
    ------
    StiffeningLimitError, MaterialDomainError
        Re-raised with the offending grid node attached.
    """
    if h <= 0.0:
        raise ValueError(f"half thickness h = {h:.9g} must be positive")
    nx, ny = grid
    (u0, u1), (v0, v1) = surface.domain
    xu, wu = np.polynomial.legendre.leggauss(int(nx))
    xv, wv = np.polynomial.legendre.leggauss(int(ny))
    su, cu = 0.5 * (u1 - u0), 0.5 * (u1 + u0)
    sv, cv = 0.5 * (v1 - v0), 0.5 * (v1 + v0)

    ws = np.empty((nx, ny))
    wb = np.empty((nx, ny))
    weights = np.outer(wu * su, wv * sv)
    for i in range(int(nx)):
        for j in range(int(ny)):
            x = np.array([su * xu[i] + cu, sv * xv[j] + cv])
            try:
                jet = evaluate_jet(surface, x)
                contents = point_contents(jet, material)
            except (StiffeningLimitError, MaterialDomainError) as err:
                raise type(err)(
                    f"at grid node ({x[0]:.6g}, {x[1]:.6g}): {err}") from err
            ws[i, j] = contents.stretching
            wb[i, j] = contents.bending

    total_stretch = float(np.sum(weights * ws))
    total_bend = float(np.sum(weights * wb))
    return total_stretch, total_bend, h * total_stretch + h**3 * total_bend
