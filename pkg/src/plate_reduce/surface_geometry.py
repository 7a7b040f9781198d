"""Point-local differential geometry of a deformed mid-surface.

A deformation maps a flat reference domain into 3-space.  Everything the
plate energy formulas need at a point (tangents, normal, stretch
eigenframe, curvature invariants) is collected into a single jet record.
"""

from __future__ import annotations

import numpy as np
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

# Relative eigenvalue gap below which the stretch frame is treated as an
# exact tie and pinned to the coordinate axes.
UMBILIC_GAP = 1e-12

_GL64 = np.polynomial.legendre.leggauss(64)


class DomainError(ValueError):
    """Evaluation point outside the reference domain (or too close to its
    boundary for the requested finite-difference stencil)."""


class DegenerateImmersionError(ValueError):
    """The surface gradient lost rank at the evaluation point."""


class AreaDistortionError(ValueError):
    """A formula that assumes det C = 1 was applied where det C != 1."""


@dataclass(frozen=True)
class ParametricSurface:
    """Deformation of a flat rectangular reference domain into 3-space.

    Parameters
    ----------
    map : callable
        x (2,) -> y (3,).
    grad : callable, optional
        x -> dy (3, 2).  Required in analytic mode.
    hess : callable, optional
        x -> ddy (3, 2, 2), symmetric in the last two axes.  Required in
        analytic mode.
    derivative_mode : str
        "analytic" or "finite-difference".
    step : float
        Central-difference step for finite-difference mode and for any
        in-plane differencing done on top of the surface.
    domain : tuple
        ((x1_min, x1_max), (x2_min, x2_max)).
    """

    map: Callable[[np.ndarray], np.ndarray]
    grad: Optional[Callable[[np.ndarray], np.ndarray]] = None
    hess: Optional[Callable[[np.ndarray], np.ndarray]] = None
    derivative_mode: str = "analytic"
    step: float = 1e-4
    domain: Tuple[Tuple[float, float], Tuple[float, float]] = ((-0.5, 0.5), (-0.5, 0.5))
    name: str = "custom"

    def __post_init__(self):
        if self.derivative_mode not in ("analytic", "finite-difference"):
            raise ValueError("derivative_mode must be 'analytic' or 'finite-difference'")
        if self.derivative_mode == "analytic" and (self.grad is None or self.hess is None):
            raise ValueError("analytic mode requires grad and hess callables")
        if not self.step > 0:
            raise ValueError("step must be positive")


@dataclass(frozen=True)
class SurfaceJet:
    """Second-order data of a surface at one reference point.

    The stretch eigenframe (r1, r2) lives in the reference plane with
    lambda1 >= lambda2 > 0 and r2 the +90 degree rotation of r1; (l1, l2)
    is its image frame on the tangent plane, and ``shape_op`` is the
    surface gradient of the normal expressed in that frame.
    """

    x: np.ndarray
    grad_y: np.ndarray
    hess_y: np.ndarray
    grad_nu: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    normal: np.ndarray
    C: np.ndarray
    B: np.ndarray
    lambda1: float
    lambda2: float
    r1: np.ndarray
    r2: np.ndarray
    l1: np.ndarray
    l2: np.ndarray
    shape_op: np.ndarray
    H: float
    K: float
    b1: float
    trC: float
    detC: float
    derivative_mode: str = "analytic"


def _check_domain(surface, x, margin):
    (lo1, hi1), (lo2, hi2) = surface.domain
    if not (lo1 + margin <= x[0] <= hi1 - margin and lo2 + margin <= x[1] <= hi2 - margin):
        raise DomainError(
            f"point ({x[0]:.6g}, {x[1]:.6g}) outside domain of '{surface.name}' "
            f"(margin {margin:g})"
        )


def _fd_grad(surface, x, step):
    g = np.empty((3, 2))
    for k in range(2):
        e = np.zeros(2)
        e[k] = step
        g[:, k] = (surface.map(x + e) - surface.map(x - e)) / (2.0 * step)
    return g


def _fd_hess(surface, x, step):
    h = np.empty((3, 2, 2))
    for k in range(2):
        e = np.zeros(2)
        e[k] = step
        gp = _fd_grad(surface, x + e, step)
        gm = _fd_grad(surface, x - e, step)
        h[:, :, k] = (gp - gm) / (2.0 * step)
    # nested differences are not exactly symmetric; enforce it
    return 0.5 * (h + h.transpose(0, 2, 1))


def _stretch_frame(C):
    """Eigenvalues and deterministic eigenframe of a 2x2 SPD matrix.

    Returns (mu1, mu2, r1, r2) with mu1 >= mu2, r2 = rot90(r1).  Ties are
    pinned to r1 = e1; otherwise r1 is chosen in the +x1 half plane (+x2
    on its edge).
    """
    mean = 0.5 * (C[0, 0] + C[1, 1])
    diff = 0.5 * (C[0, 0] - C[1, 1])
    gap = np.hypot(diff, C[0, 1])
    mu1 = mean + gap
    mu2 = mean - gap
    if gap <= UMBILIC_GAP * abs(mean):
        r1 = np.array([1.0, 0.0])
    else:
        v1 = np.array([C[0, 1], mu1 - C[0, 0]])
        v2 = np.array([mu1 - C[1, 1], C[0, 1]])
        v = v1 if v1 @ v1 >= v2 @ v2 else v2
        r1 = v / np.linalg.norm(v)
        if r1[0] < 0.0 or (r1[0] == 0.0 and r1[1] < 0.0):
            r1 = -r1
    r2 = np.array([-r1[1], r1[0]])
    return mu1, mu2, r1, r2


def evaluate_jet(surface, x):
    """Evaluate the full second-order jet of ``surface`` at ``x``.

    Raises DomainError outside the domain and DegenerateImmersionError if
    the surface gradient loses rank.
    """
    x = np.asarray(x, dtype=float)
    fd = surface.derivative_mode == "finite-difference"
    _check_domain(surface, x, 2.0 * surface.step if fd else 0.0)
    if fd:
        grad_y = _fd_grad(surface, x, surface.step)
        hess_y = _fd_hess(surface, x, surface.step)
    else:
        grad_y = np.asarray(surface.grad(x), dtype=float)
        hess_y = np.asarray(surface.hess(x), dtype=float)

    a1 = grad_y[:, 0]
    a2 = grad_y[:, 1]
    w = np.cross(a1, a2)
    area = np.linalg.norm(w)
    scale = max(a1 @ a1, a2 @ a2)
    if area <= 1e-12 * max(scale, 1e-30):
        raise DegenerateImmersionError(
            f"surface gradient is rank deficient at ({x[0]:.6g}, {x[1]:.6g})"
        )
    nu = w / area

    C = grad_y.T @ grad_y
    B = grad_y @ grad_y.T
    trC = C[0, 0] + C[1, 1]
    detC = C[0, 0] * C[1, 1] - C[0, 1] * C[1, 0]

    mu1, mu2, r1, r2 = _stretch_frame(C)
    if mu2 <= 0.0:
        raise DegenerateImmersionError(
            f"stretch tensor not positive definite at ({x[0]:.6g}, {x[1]:.6g})"
        )
    lam1 = np.sqrt(mu1)
    lam2 = np.sqrt(mu2)
    l1 = grad_y @ r1 / lam1
    l2 = grad_y @ r2 / lam2

    # gradient of the unit normal from the product-rule gradient of a1 x a2
    grad_nu = np.empty((3, 2))
    for k in range(2):
        dw = np.cross(hess_y[:, 0, k], a2) + np.cross(a1, hess_y[:, 1, k])
        grad_nu[:, k] = (dw - nu * (nu @ dw)) / area

    # surface gradient of the normal in the (l1, l2) frame
    S = np.empty((2, 2))
    dnu_r1 = grad_nu @ r1
    dnu_r2 = grad_nu @ r2
    S[0, 0] = l1 @ dnu_r1 / lam1
    S[0, 1] = l1 @ dnu_r2 / lam2
    S[1, 0] = l2 @ dnu_r1 / lam1
    S[1, 1] = l2 @ dnu_r2 / lam2

    H = 0.5 * (S[0, 0] + S[1, 1])
    K = S[0, 0] * S[1, 1] - S[0, 1] * S[1, 0]
    b1 = mu1 * S[0, 0] + mu2 * S[1, 1]

    return SurfaceJet(
        x=x, grad_y=grad_y, hess_y=hess_y, grad_nu=grad_nu,
        a1=a1, a2=a2, normal=nu, C=C, B=B,
        lambda1=float(lam1), lambda2=float(lam2), r1=r1, r2=r2, l1=l1, l2=l2,
        shape_op=S, H=float(H), K=float(K), b1=float(b1),
        trC=float(trC), detC=float(detC),
        derivative_mode=surface.derivative_mode,
    )


def appendix_H_K(jet, tol=None):
    """Mean and Gauss curvature from raw Cartesian second derivatives.

    Valid only for area-preserving mid-surfaces (det C = 1); an
    independent cross-check of the eigenframe route.
    """
    if tol is None:
        tol = 1e-8 if jet.derivative_mode == "analytic" else 1e-4
    if abs(jet.detC - 1.0) > tol:
        raise AreaDistortionError(
            f"det C = {jet.detC:.12g} is not 1 within {tol:g}; "
            "this shortcut assumes an area-preserving mid-surface"
        )
    nu = jet.normal
    b = np.array([[nu @ jet.hess_y[:, 0, 0], nu @ jet.hess_y[:, 0, 1]],
                  [nu @ jet.hess_y[:, 1, 0], nu @ jet.hess_y[:, 1, 1]]])
    a1, a2 = jet.a1, jet.a2
    two_h = (a1 @ a2) * (b[1, 0] + b[0, 1]) - (a2 @ a2) * b[0, 0] - (a1 @ a1) * b[1, 1]
    k = b[0, 0] * b[1, 1] - b[1, 0] * b[0, 1]
    return 0.5 * two_h, k


@dataclass(frozen=True)
class OrientationReport:
    """Minimum fiber Jacobian over a sampling grid and fiber range."""

    min_det_F: float
    argmin_x: Tuple[float, float]
    argmin_x3: float
    n_points: int
    n_nonpositive: int
    passed: bool


def verify_orientation(surface, profile, h, grid=(5, 5), n_x3=9):
    """Check that the thickened deformation preserves orientation.

    ``profile`` is either a fixed through-thickness profile (methods
    ``phi``/``dphi``) or a callable x -> profile; in the callable case the
    in-plane profile gradient is estimated by central differences and
    included in the fiber deformation gradient.  Diagnostic only: negative
    Jacobians are reported, not raised.
    """
    per_point = callable(profile) and not hasattr(profile, "phi")
    step = surface.step
    margin = 2.0 * step + (2.0 * step if surface.derivative_mode == "finite-difference" else 0.0)
    (lo1, hi1), (lo2, hi2) = surface.domain
    xs = np.linspace(lo1 + margin, hi1 - margin, grid[0])
    ys = np.linspace(lo2 + margin, hi2 - margin, grid[1])
    x3s = np.linspace(-h, h, n_x3)

    best = np.inf
    arg_x = (xs[0], ys[0])
    arg_x3 = x3s[0]
    bad = 0
    for x1 in xs:
        for x2 in ys:
            x = np.array([x1, x2])
            jet = evaluate_jet(surface, x)
            if per_point:
                prof = profile(x)
                neighbors = []
                for k in range(2):
                    e = np.zeros(2)
                    e[k] = step
                    neighbors.append((profile(x + e), profile(x - e)))
            else:
                prof = profile
            for x3 in x3s:
                phi = prof.phi(x3)
                dphi = prof.dphi(x3)
                F = np.empty((3, 3))
                F[:, :2] = jet.grad_y + phi * jet.grad_nu
                if per_point:
                    for k in range(2):
                        pp, pm = neighbors[k]
                        gphi_k = (pp.phi(x3) - pm.phi(x3)) / (2.0 * step)
                        F[:, k] += gphi_k * jet.normal
                F[:, 2] = dphi * jet.normal
                det = np.linalg.det(F)
                if det < best:
                    best = det
                    arg_x = (float(x1), float(x2))
                    arg_x3 = float(x3)
                if det <= 0.0:
                    bad += 1
    n_total = grid[0] * grid[1] * n_x3
    return OrientationReport(
        min_det_F=float(best), argmin_x=arg_x, argmin_x3=arg_x3,
        n_points=n_total, n_nonpositive=bad, passed=bool(best > 0.0),
    )


# ---------------------------------------------------------------------------
# catalog surfaces


def _bump_scalars(v, amp, w):
    """Radial building blocks of the area-preserving bump at v = |x|^2 / 2.

    Returns (m, m', m'', zeta_v, zeta_vv) for the planar shrink factor m
    and the height zeta; primes are d/dv.
    """
    q = v / w
    e = np.exp(-q * q)
    gp = 2.0 * amp * v * e / w ** 2
    gpp = 2.0 * amp * (1.0 - 2.0 * q * q) * e / w ** 2
    if q < 0.01:
        # series branches: the direct quotients lose digits as v -> 0
        n = amp * (v / w ** 2 - v ** 3 / (2 * w ** 4) + v ** 5 / (6 * w ** 6) - v ** 7 / (24 * w ** 8))
        n1 = amp * (1.0 / w ** 2 - 3 * v ** 2 / (2 * w ** 4) + 5 * v ** 4 / (6 * w ** 6) - 7 * v ** 6 / (24 * w ** 8))
        n2 = amp * (-3.0 * v / w ** 4 + 10 * v ** 3 / (3 * w ** 6) - 7 * v ** 5 / (4 * w ** 8))
    else:
        n = -amp * np.expm1(-q * q) / v
        n1 = (gp - n) / v
        n2 = (gpp - 2.0 * n1) / v
    m = np.sqrt(1.0 - n)
    m1 = -n1 / (2.0 * m)
    m2 = -n2 / (2.0 * m) - n1 * n1 / (4.0 * m ** 3)
    G = 2.0 * amp * e / w ** 2
    G1 = -4.0 * amp * v * e / w ** 4
    s = G * (2.0 - gp) / (2.0 * (1.0 - n))
    s1 = (G1 * (2.0 - gp) - G * gpp) / (2.0 * (1.0 - n)) + G * (2.0 - gp) * n1 / (2.0 * (1.0 - n) ** 2)
    zv = np.sqrt(s)
    zvv = s1 / (2.0 * zv)
    return m, m1, m2, zv, zvv


def _bump_height(v, amp, w):
    # integrate zeta' = sqrt(s) from 0 to v with fixed-order quadrature
    if v == 0.0:
        return 0.0
    nodes, weights = _GL64
    t = 0.5 * v * (nodes + 1.0)
    total = 0.0
    for tk, wk in zip(t, weights):
        total += wk * _bump_scalars(tk, amp, w)[3]
    return 0.5 * v * total


def _make_bump(amp, s):
    w = s * s
    if amp < 0:
        raise ValueError("bump amplitude must be nonnegative")
    if amp > 0:
        vs = np.linspace(1e-6, 8.0 * w, 2000)
        q = vs / w
        gp = 2.0 * amp * vs * np.exp(-q * q) / w ** 2
        n = -amp * np.expm1(-q * q) / vs
        if gp.max() > 1.8 or n.max() > 0.9:
            raise ValueError(
                f"bump with A={amp:g}, s={s:g} is too steep to stay an immersion; "
                "reduce A or increase s"
            )

    def _map(x):
        v = 0.5 * (x[0] ** 2 + x[1] ** 2)
        if amp == 0.0:
            return np.array([x[0], x[1], 0.0])
        m = _bump_scalars(v, amp, w)[0]
        return np.array([x[0] * m, x[1] * m, _bump_height(v, amp, w)])

    def _grad(x):
        if amp == 0.0:
            return np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        v = 0.5 * (x[0] ** 2 + x[1] ** 2)
        m, m1, _, zv, _ = _bump_scalars(v, amp, w)
        g = np.empty((3, 2))
        g[0, 0] = m + x[0] ** 2 * m1
        g[0, 1] = x[0] * x[1] * m1
        g[1, 0] = x[0] * x[1] * m1
        g[1, 1] = m + x[1] ** 2 * m1
        g[2, 0] = x[0] * zv
        g[2, 1] = x[1] * zv
        return g

    def _hess(x):
        hh = np.zeros((3, 2, 2))
        if amp == 0.0:
            return hh
        v = 0.5 * (x[0] ** 2 + x[1] ** 2)
        m, m1, m2, zv, zvv = _bump_scalars(v, amp, w)
        x1, x2 = x[0], x[1]
        hh[0, 0, 0] = 3.0 * x1 * m1 + x1 ** 3 * m2
        hh[0, 0, 1] = x2 * m1 + x1 ** 2 * x2 * m2
        hh[0, 1, 0] = hh[0, 0, 1]
        hh[0, 1, 1] = x1 * m1 + x1 * x2 ** 2 * m2
        hh[1, 0, 0] = x2 * m1 + x1 ** 2 * x2 * m2
        hh[1, 0, 1] = x1 * m1 + x1 * x2 ** 2 * m2
        hh[1, 1, 0] = hh[1, 0, 1]
        hh[1, 1, 1] = 3.0 * x2 * m1 + x2 ** 3 * m2
        for i in range(2):
            for j in range(2):
                hh[2, i, j] = (1.0 if i == j else 0.0) * zv + x[i] * x[j] * zvv
        return hh

    return _map, _grad, _hess


def catalog_surface(name, derivative_mode="analytic", step=1e-4, **params):
    """Build one of the named benchmark surfaces.

    Names: plane, uniform_stretch{l1,l2}, cylinder{R}, sphere_cap{R},
    saddle{a}, gaussian_bump{A,s}.
    """
    box = ((-0.5, 0.5), (-0.5, 0.5))
    if name == "plane":
        _reject_unknown(params, set(), name)
        _map = lambda x: np.array([x[0], x[1], 0.0])
        _grad = lambda x: np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        _hess = lambda x: np.zeros((3, 2, 2))
    elif name == "uniform_stretch":
        _reject_unknown(params, {"l1", "l2"}, name)
        l1 = float(params.get("l1", 2.0))
        l2 = float(params.get("l2", 0.5))
        if l1 <= 0 or l2 <= 0:
            raise ValueError("stretch factors must be positive")
        _map = lambda x: np.array([l1 * x[0], l2 * x[1], 0.0])
        _grad = lambda x: np.array([[l1, 0.0], [0.0, l2], [0.0, 0.0]])
        _hess = lambda x: np.zeros((3, 2, 2))
    elif name == "cylinder":
        _reject_unknown(params, {"R"}, name)
        R = float(params.get("R", 1.0))
        if R <= 0:
            raise ValueError("cylinder radius must be positive")
        _map = lambda x: np.array(
            [R * np.sin(x[0] / R), x[1], R * (1.0 - np.cos(x[0] / R))])
        _grad = lambda x: np.array(
            [[np.cos(x[0] / R), 0.0], [0.0, 1.0], [np.sin(x[0] / R), 0.0]])

        def _hess(x, R=R):
            hh = np.zeros((3, 2, 2))
            hh[0, 0, 0] = -np.sin(x[0] / R) / R
            hh[2, 0, 0] = np.cos(x[0] / R) / R
            return hh

        half = min(0.5, 1.4 * R)
        box = ((-half, half), (-0.5, 0.5))
    elif name == "sphere_cap":
        _reject_unknown(params, {"R"}, name)
        R = float(params.get("R", 2.0))
        if R <= 0:
            raise ValueError("sphere radius must be positive")

        def _map(x, R=R):
            root = np.sqrt(R * R - x[0] ** 2 - x[1] ** 2)
            return np.array([x[0], x[1], R - root])

        def _grad(x, R=R):
            root = np.sqrt(R * R - x[0] ** 2 - x[1] ** 2)
            return np.array([[1.0, 0.0], [0.0, 1.0], [x[0] / root, x[1] / root]])

        def _hess(x, R=R):
            root = np.sqrt(R * R - x[0] ** 2 - x[1] ** 2)
            hh = np.zeros((3, 2, 2))
            for i in range(2):
                for j in range(2):
                    hh[2, i, j] = (1.0 if i == j else 0.0) / root + x[i] * x[j] / root ** 3
            return hh

        half = 0.45 * R
        box = ((-half, half), (-half, half))
    elif name == "saddle":
        _reject_unknown(params, {"a"}, name)
        a = float(params.get("a", 1.0))
        _map = lambda x: np.array([x[0], x[1], a * x[0] * x[1]])
        _grad = lambda x: np.array([[1.0, 0.0], [0.0, 1.0], [a * x[1], a * x[0]]])

        def _hess(x, a=a):
            hh = np.zeros((3, 2, 2))
            hh[2, 0, 1] = a
            hh[2, 1, 0] = a
            return hh
    elif name == "gaussian_bump":
        _reject_unknown(params, {"A", "s"}, name)
        amp = float(params.get("A", 0.5))
        s = float(params.get("s", 1.0))
        if s <= 0:
            raise ValueError("bump width must be positive")
        _map, _grad, _hess = _make_bump(amp, s)
        box = ((-0.75, 0.75), (-0.75, 0.75))
    else:
        raise ValueError(f"unknown catalog surface '{name}'")

    return ParametricSurface(
        map=_map, grad=_grad, hess=_hess,
        derivative_mode=derivative_mode, step=step, domain=box, name=name,
    )


def _reject_unknown(params, allowed, name):
    extra = set(params) - allowed
    if extra:
        raise ValueError(f"unknown parameters {sorted(extra)} for surface '{name}'")


def sampled_injectivity(surface, n=12):
    """Sampling check (not a proof) that the map does not self-intersect."""
    (lo1, hi1), (lo2, hi2) = surface.domain
    xs = np.linspace(lo1, hi1, n)
    ys = np.linspace(lo2, hi2, n)
    pts = np.array([surface.map(np.array([a, b])) for a in xs for b in ys])
    ref = np.array([[a, b] for a in xs for b in ys])
    d_img = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    d_ref = np.linalg.norm(ref[:, None, :] - ref[None, :, :], axis=2)
    mask = d_ref > 1e-12
    return bool(np.all(d_img[mask] > 1e-9 * d_ref[mask]))
