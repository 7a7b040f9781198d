"""Bulk hyperelastic energy densities and fiber invariants.

The deformation of a thin sheet is resolved along the thickness fiber:
mid-surface jet plus a through-thickness profile give the full 3D
deformation gradient, its principal invariants, and the energy density
of the chosen material model.
"""

from __future__ import annotations

import numpy as np
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union


class StiffeningLimitError(ValueError):
    """First invariant reached the finite-extensibility limit of the model."""


class MaterialDomainError(ValueError):
    """Invariants outside the domain of the energy density."""


@dataclass(frozen=True)
class Gent(object):
    """Incompressible rubber model with a finite extensibility limit."""

    mu: float
    jm: float

    def __post_init__(self):
        if self.mu <= 0 or self.jm <= 0:
            raise ValueError("Gent requires mu > 0 and jm > 0")


@dataclass(frozen=True)
class NeoHookean(object):
    mu: float

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError("NeoHookean requires mu > 0")


@dataclass(frozen=True)
class MooneyRivlin(object):
    mu: float
    chi: float

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError("MooneyRivlin requires mu > 0")
        if not (0.0 < self.chi <= 1.0):
            raise ValueError("MooneyRivlin requires chi in (0, 1]")


@dataclass(frozen=True)
class CiarletGeymonat(object):
    """Compressible model a*I1 + b*I3 - (c/2) ln I3 + d.

    The pair (c, d) is locked to c = 2(a+b), d = -(3a+b) so the reference
    state is stress free with energy zero; supplying inconsistent values
    is rejected.
    """

    a: float
    b: float
    c: float = None
    d: float = None

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("CiarletGeymonat requires a > 0 and b > 0")
        c_ref = 2.0 * (self.a + self.b)
        d_ref = -(3.0 * self.a + self.b)
        if self.c is None:
            object.__setattr__(self, "c", c_ref)
        elif abs(self.c - c_ref) > 1e-12 * c_ref:
            raise ValueError("c must equal 2(a+b) for a stress-free reference state")
        if self.d is None:
            object.__setattr__(self, "d", d_ref)
        elif abs(self.d - d_ref) > 1e-12 * abs(d_ref):
            raise ValueError("d must equal -(3a+b) for zero reference energy")

    @classmethod
    def from_lame(cls, lam, mu):
        if lam <= 0 or mu <= 0:
            raise ValueError("Lame constants must be positive")
        return cls(a=mu / 2.0, b=lam / 4.0)


@dataclass(frozen=True)
class SaintVenantKirchhoff(object):
    lam: float
    mu: float

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError("SaintVenantKirchhoff requires mu > 0")


MaterialModel = Union[Gent, NeoHookean, MooneyRivlin, CiarletGeymonat, SaintVenantKirchhoff]


def lame_constants(material):
    """Lame pair (lambda, mu) of a compressible model."""
    if isinstance(material, CiarletGeymonat):
        return 4.0 * material.b, 2.0 * material.a
    if isinstance(material, SaintVenantKirchhoff):
        return material.lam, material.mu
    raise TypeError(f"no Lame constants for {type(material).__name__}")


def material_from_config(spec):
    """Build a material from a config mapping like {"model": "gent", ...}."""
    if not isinstance(spec, dict) or "model" not in spec:
        raise ValueError("material spec must be a mapping with a 'model' key")
    spec = dict(spec)
    model = spec.pop("model")
    try:
        if model == "gent":
            out = Gent(mu=float(spec.pop("mu")), jm=float(spec.pop("jm")))
        elif model == "neo_hookean":
            out = NeoHookean(mu=float(spec.pop("mu")))
        elif model == "mooney_rivlin":
            out = MooneyRivlin(mu=float(spec.pop("mu")), chi=float(spec.pop("chi")))
        elif model == "ciarlet_geymonat":
            if "lambda" in spec or "mu" in spec:
                out = CiarletGeymonat.from_lame(float(spec.pop("lambda")), float(spec.pop("mu")))
            else:
                c = spec.pop("c", None)
                d = spec.pop("d", None)
                out = CiarletGeymonat(
                    a=float(spec.pop("a")), b=float(spec.pop("b")),
                    c=None if c is None else float(c),
                    d=None if d is None else float(d),
                )
        elif model == "svk":
            out = SaintVenantKirchhoff(lam=float(spec.pop("lambda")), mu=float(spec.pop("mu")))
        else:
            raise ValueError(f"unknown material model '{model}'")
    except KeyError as e:
        raise ValueError(f"material '{model}' is missing parameter {e}") from e
    if spec:
        raise ValueError(f"unknown material parameters {sorted(spec)} for '{model}'")
    return out


def molecular_params(n_chains, n_links, k_boltzmann, temperature):
    """Shear modulus and extensibility limit from chain statistics.

    Returns (mu, jm) = (n k T, 3 (N - 1)).
    """
    if n_links <= 1:
        raise MaterialDomainError("chain segment count N must exceed 1")
    if n_chains <= 0 or k_boltzmann <= 0 or temperature <= 0:
        raise MaterialDomainError("chain density, k, and temperature must be positive")
    return n_chains * k_boltzmann * temperature, 3.0 * (n_links - 1.0)


def symmetric_sqrt(A):
    """Principal square root of a symmetric positive-definite matrix."""
    vals, vecs = np.linalg.eigh(np.asarray(A, dtype=float))
    if vals[0] <= 0.0:
        raise MaterialDomainError("matrix is not positive definite")
    return (vecs * np.sqrt(vals)) @ vecs.T


def volumetric_energy(material, I1=None, I2=None, I3=None, C_f=None):
    """Energy density per unit reference volume at the given invariants.

    Invariant-based models take (I1, I2, I3); SaintVenantKirchhoff needs
    the full right Cauchy-Green matrix ``C_f``.
    """
    if isinstance(material, SaintVenantKirchhoff):
        if C_f is None:
            raise ValueError("SaintVenantKirchhoff energy needs C_f")
        U = symmetric_sqrt(C_f)
        E = U - np.eye(3)
        return 0.5 * material.lam * np.trace(E) ** 2 + material.mu * np.trace(E @ E)
    if isinstance(material, Gent):
        gap = 1.0 - (I1 - 3.0) / material.jm
        if gap <= 0.0:
            raise StiffeningLimitError(
                f"I1 = {I1:.9g} reached the extensibility limit Jm + 3 = {material.jm + 3.0:.9g}"
            )
        return -0.5 * material.mu * material.jm * np.log(gap)
    if isinstance(material, NeoHookean):
        return 0.5 * material.mu * (I1 - 3.0)
    if isinstance(material, MooneyRivlin):
        return 0.5 * material.mu * (
            material.chi * (I1 - 3.0) + (1.0 - material.chi) * (I2 - 3.0))
    if isinstance(material, CiarletGeymonat):
        if I3 <= 0.0:
            raise MaterialDomainError(f"I3 = {I3:.9g} must be positive")
        return material.a * I1 + material.b * I3 - 0.5 * material.c * np.log(I3) + material.d
    raise TypeError(f"unknown material {type(material).__name__}")


def small_strain_energy(material, E_f):
    """Quadratic strain energy (lambda/2) tr^2 E + mu tr E^2 of a model's
    Lame pair, for asymptotic cross-checks."""
    lam, mu = lame_constants(material)
    E_f = np.asarray(E_f, dtype=float)
    return 0.5 * lam * np.trace(E_f) ** 2 + mu * np.trace(E_f @ E_f)


# ---------------------------------------------------------------------------
# fiber deformation and invariants


def fiber_deformation_gradient(jet, profile, x3, grad_phi=None):
    """3x3 deformation gradient along the thickness fiber.

    Columns 1-2 are the in-plane gradient of the displaced surface, column
    3 the fiber direction; the in-plane gradient of the profile is dropped
    unless ``grad_phi`` (2,) is supplied.
    """
    phi = profile.phi(x3)
    dphi = profile.dphi(x3)
    F = np.empty((3, 3))
    F[:, :2] = jet.grad_y + phi * jet.grad_nu
    if grad_phi is not None:
        F[:, 0] += grad_phi[0] * jet.normal
        F[:, 1] += grad_phi[1] * jet.normal
    F[:, 2] = dphi * jet.normal
    return F


def exact_invariants_from_jet(jet, profile, x3):
    """Principal invariants of C_f = F^T F built numerically from the jet."""
    F = fiber_deformation_gradient(jet, profile, x3)
    C_f = F.T @ F
    i1 = np.trace(C_f)
    i2 = 0.5 * (i1 * i1 - np.trace(C_f @ C_f))
    i3 = np.linalg.det(C_f)
    return float(i1), float(i2), float(i3)


def exact_invariants(surface, x, profile, x3):
    """Invariants of the fiber deformation at reference point x, offset x3."""
    from .surface_geometry import evaluate_jet

    return exact_invariants_from_jet(evaluate_jet(surface, x), profile, x3)


@dataclass(frozen=True)
class InvariantSeries:
    """Quadratic-in-x3 coefficients of the fiber invariants, plus an exact
    evaluator from the same jet data.

    Each triple is (constant, linear, quadratic).
    """

    i1: Tuple[float, float, float]
    i2: Tuple[float, float, float]
    i3: Tuple[float, float, float]
    exact: Callable[[float], Tuple[float, float, float]]

    def at(self, x3):
        """Evaluate the truncated series at offset x3."""
        ev = lambda c: c[0] + c[1] * x3 + c[2] * x3 * x3
        return ev(self.i1), ev(self.i2), ev(self.i3)


def invariant_series(jet, profile):
    """Fiber invariants through quadratic order for a cubic profile.

    ``jet`` needs only the scalar fields trC, detC, H, K, b1; ``profile``
    needs alpha, beta, gamma (cubic coefficients, phi(0) = 0).  The
    closed-form route, independent of the matrix route above.
    """
    trC, detC = jet.trC, jet.detC
    H, K, b1 = jet.H, jet.K, jet.b1
    al, be, ga = profile.alpha, profile.beta, profile.gamma

    # tr C_phi and phi'^2 through x3^2
    t0, t1, t2 = trC, 2.0 * al * b1, 2.0 * be * b1 + al * al * (2.0 * H * b1 - K * trC)
    p0, p1, p2 = al * al, 4.0 * al * be, 4.0 * be * be + 6.0 * al * ga

    i1 = (t0 + p0, t1 + p1, t2 + p2)

    # det C_phi through x3^2
    d0 = detC
    d1 = 4.0 * H * al * detC
    d2 = detC * (4.0 * H * be + (4.0 * H * H + 2.0 * K) * al * al)

    i3 = (p0 * d0,
          p0 * d1 + p1 * d0,
          p0 * d2 + p1 * d1 + p2 * d0)

    i2 = (d0 + p0 * t0,
          d1 + p0 * t1 + p1 * t0,
          d2 + p0 * t2 + p1 * t1 + p2 * t0)

    def _exact(x3):
        phi = profile.phi(x3)
        dphi = profile.dphi(x3)
        tr_cphi = trC + 2.0 * phi * b1 + phi * phi * (2.0 * H * b1 - K * trC)
        area = 1.0 + 2.0 * H * phi + K * phi * phi
        det_cphi = detC * area * area
        pp = dphi * dphi
        return tr_cphi + pp, det_cphi + pp * tr_cphi, pp * det_cphi

    return InvariantSeries(i1=i1, i2=i2, i3=i3, exact=_exact)
