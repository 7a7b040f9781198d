"""Planar connector fields of a stretch eigenframe and their compatibility.

The eigenframe (r1, r2) of the mid-surface metric rotates from point to
point; its rate of rotation is a planar connector field c.  The pushed
frame (l1, l2) on the surface carries a second connector c*, and the
normal's gradient decomposes through two more planar fields d1*, d2*.
Cross-derivatives of these fields reproduce the Gaussian curvature and
satisfy compatibility identities, both of which this module checks
numerically.
"""

import warnings
from dataclasses import dataclass, replace
from typing import List, Tuple

import numpy as np

from .surface_geometry import DomainError, evaluate_jet

__all__ = [
    "ConnectorFrame",
    "FrameGrid",
    "CodazziReport",
    "compute_frame",
    "c_star_from_metric",
    "curvatures_from_frame",
    "sample_frame_grid",
    "gauss_from_connectors",
    "gauss_uniform_stretch",
    "check_codazzi",
]

# eigenvalue gap (in units of the metric scale) below which the stretch
# frame is treated as umbilic and connector division is refused
UMBILIC_GAP = 1e-10


@dataclass(frozen=True)
class ConnectorFrame:
    """Connector data of the stretch eigenframe at one point.

    Attributes
    ----------
    x : (2,) ndarray
        Evaluation point in the reference plane.
    lambda1, lambda2 : float
        Principal stretches, lambda1 >= lambda2.
    r1, r2 : (2,) ndarray
        Stretch eigenframe in the reference plane (right-handed).
    c : (2,) ndarray
        Rotation rate of the r-frame: c_k = r2 . (d_k r1).
    c_star : (2,) ndarray
        Rotation rate of the pushed frame: c*_k = l2 . (d_k l1).
    d1_star, d2_star : (2,) ndarray
        Normal-gradient components, di* = -(grad nu)^T li.
    dij : (2, 2) ndarray
        Components of the d-fields in the r-frame, dij[i, j] = di* . rj.
    c1, c2 : float
        Components of c in the r-frame.
    c12 : float
        r1 . (grad c) r2, from central differences of the c-field; nan
        when not computed.
    ill_conditioned : bool
        True when an umbilic stretch made the c-division unreliable.
    """

    x: np.ndarray
    lambda1: float
    lambda2: float
    r1: np.ndarray
    r2: np.ndarray
    c: np.ndarray
    c_star: np.ndarray
    d1_star: np.ndarray
    d2_star: np.ndarray
    dij: np.ndarray
    c1: float
    c2: float
    c12: float
    ill_conditioned: bool = False

    def flipped(self):
        """The same frame with both eigenvectors negated (gauge flip).

        c, c_star, dij and c12 are even under the flip; the d-fields and
        the r-components of c are odd.
        """
        return replace(
            self,
            r1=-self.r1, r2=-self.r2,
            d1_star=-self.d1_star, d2_star=-self.d2_star,
            c1=-self.c1, c2=-self.c2,
        )


def _metric_gradient(jet):
    """d_k C as a (2, 2, 2) array, first index the derivative direction."""
    g, h = jet.grad_y, jet.hess_y
    return (np.einsum("mik,mj->kij", h, g) + np.einsum("mi,mjk->kij", g, h))


def _c_vector(jet):
    """Rotation rate of the stretch frame, with an ill-conditioning flag."""
    dC = _metric_gradient(jet)
    num = np.array([jet.r2 @ dC[k] @ jet.r1 for k in range(2)])
    gap = jet.lambda1**2 - jet.lambda2**2
    scale = jet.lambda1**2 + jet.lambda2**2
    if gap <= UMBILIC_GAP * scale:
        # constant-metric umbilics (plane, cylinder) have zero numerator and
        # a well-defined zero rotation rate; anything else is unresolvable
        dscale = np.max(np.abs(dC)) + scale
        c = np.where(np.abs(num) <= 1e-9 * dscale, 0.0, np.nan)
        return c, True
    return num / gap, False


def compute_frame(surface, x, c12_step=1e-4, with_c12=True):
    """Connector fields of the stretch eigenframe at a point.

    Parameters
    ----------
    surface : ParametricSurface
    x : (2,) array_like
        Evaluation point; must leave room for the c12 stencil.
    c12_step : float
        Central-difference step for the gradient of the c-field.
    with_c12 : bool
        Skip the (four-point) c12 stencil when False; c12 is then nan.

    Warns
    -----
    RuntimeWarning
        At umbilic points of the stretch, where the eigenframe rotation
        rate is ill-conditioned; the output is flagged.
    """
    x = np.asarray(x, dtype=float)
    jet = evaluate_jet(surface, x)
    c, ill = _c_vector(jet)
    if ill:
        warnings.warn(
            f"umbilic stretch at ({x[0]:.6g}, {x[1]:.6g}): frame rotation "
            "rate is ill-conditioned", RuntimeWarning)

    lam1, lam2 = jet.lambda1, jet.lambda2
    r1, r2, l1, l2 = jet.r1, jet.r2, jet.l1, jet.l2
    h = jet.hess_y
    c_star = np.array([
        (l2 @ (h[:, :, k] @ r1) + lam2 * c[k]) / lam1 for k in range(2)])
    d1 = -jet.grad_nu.T @ l1
    d2 = -jet.grad_nu.T @ l2
    dij = np.array([[d1 @ r1, d1 @ r2], [d2 @ r1, d2 @ r2]])

    c12 = np.nan
    if with_c12:
        cs = []
        for k in range(2):
            for sgn in (-1.0, 1.0):
                xn = x.copy()
                xn[k] += sgn * c12_step
                cn, illn = _c_vector(evaluate_jet(surface, xn))
                ill = ill or illn
                cs.append(cn)
        grad_c = np.column_stack([
            (cs[1] - cs[0]) / (2.0 * c12_step),
            (cs[3] - cs[2]) / (2.0 * c12_step)])
        c12 = float(r1 @ grad_c @ r2)

    return ConnectorFrame(
        x=x, lambda1=lam1, lambda2=lam2, r1=r1, r2=r2,
        c=c, c_star=c_star, d1_star=d1, d2_star=d2, dij=dij,
        c1=float(c @ r1), c2=float(c @ r2), c12=c12,
        ill_conditioned=bool(ill))


def c_star_from_metric(frame, jet, grad_lambdas):
    """Surface-frame connector from purely metric data.

    Parameters
    ----------
    frame : ConnectorFrame
    jet : SurfaceJet
        Jet at the same point (supplies C).
    grad_lambdas : (2, 2) array_like
        Row i is the reference-plane gradient of stretch lambda_i.

    Returns
    -------
    (2,) ndarray
        (1/sqrt(det C)) C c - (1/lambda2)(grad lambda1 . r2) r1
        + (1/lambda1)(grad lambda2 . r1) r2; matches frame.c_star.
    """
    gl = np.asarray(grad_lambdas, dtype=float)
    return (jet.C @ frame.c) / np.sqrt(jet.detC) \
        - (gl[0] @ frame.r2) / frame.lambda2 * frame.r1 \
        + (gl[1] @ frame.r1) / frame.lambda1 * frame.r2


def curvatures_from_frame(frame):
    """Mean and Gaussian curvature recovered from the d-components.

    Returns
    -------
    (H, K) : pair of floats
    """
    d, l1, l2 = frame.dij, frame.lambda1, frame.lambda2
    H = -0.5 * (d[0, 0] / l1 + d[1, 1] / l2)
    K = (d[0, 0] * d[1, 1] - d[0, 1] * d[1, 0]) / (l1 * l2)
    return float(H), float(K)


# ---------------------------------------------------------------------------
# grid sampling and cross-derivative identities


@dataclass(frozen=True)
class FrameGrid:
    """Connector frames on a rectangular grid with gauge-continuous signs."""

    xs: np.ndarray
    ys: np.ndarray
    frames: List[List[ConnectorFrame]]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.xs), len(self.ys)

    @property
    def spacing(self) -> Tuple[float, float]:
        return float(self.xs[1] - self.xs[0]), float(self.ys[1] - self.ys[0])

    def field(self, name):
        """Stack one frame attribute into an (nx, ny, ...) array."""
        return np.array([[getattr(f, name) for f in row] for row in self.frames])


def sample_frame_grid(surface, grid=(9, 9), bounds=None, inset=0.08,
                      c12_step=1e-4, with_c12=False):
    """Sample connector frames on a uniform grid.

    The grid covers ``bounds`` when given, otherwise the surface domain
    shrunk by the fraction ``inset`` on each side (room for difference
    stencils).  Eigenvector signs are made continuous by propagating from
    the first node down the first column and then along rows, flipping
    frames whose r1 opposes its predecessor's.
    """
    nx, ny = int(grid[0]), int(grid[1])
    if nx < 3 or ny < 3:
        raise ValueError(f"grid {grid} too small for central differences")
    if bounds is None:
        (u0, u1), (v0, v1) = surface.domain
        du, dv = (u1 - u0) * inset, (v1 - v0) * inset
        bounds = ((u0 + du, u1 - du), (v0 + dv, v1 - dv))
    (u0, u1), (v0, v1) = bounds
    xs = np.linspace(u0, u1, nx)
    ys = np.linspace(v0, v1, ny)

    frames = [[compute_frame(surface, np.array([x, y]), c12_step, with_c12)
               for y in ys] for x in xs]

    sign = np.ones((nx, ny))
    for i in range(1, nx):
        d = frames[i][0].r1 @ frames[i - 1][0].r1
        sign[i, 0] = sign[i - 1, 0] * (1.0 if d >= 0.0 else -1.0)
    for i in range(nx):
        for j in range(1, ny):
            d = frames[i][j].r1 @ frames[i][j - 1].r1
            sign[i, j] = sign[i, j - 1] * (1.0 if d >= 0.0 else -1.0)
    frames = [[frames[i][j] if sign[i, j] > 0 else frames[i][j].flipped()
               for j in range(ny)] for i in range(nx)]
    return FrameGrid(xs=xs, ys=ys, frames=frames)


def _interior(grid, i, j):
    nx, ny = grid.shape
    if i is None:
        i = nx // 2
    if j is None:
        j = ny // 2
    if not (1 <= i <= nx - 2 and 1 <= j <= ny - 2):
        raise DomainError(
            f"node ({i}, {j}) of a {nx}x{ny} grid has no central-difference "
            "neighbors")
    return i, j


def _curl_at(grid, name, i, j):
    dx, dy = grid.spacing
    f = grid.frames
    d1v2 = (getattr(f[i + 1][j], name)[1] - getattr(f[i - 1][j], name)[1]) / (2 * dx)
    d2v1 = (getattr(f[i][j + 1], name)[0] - getattr(f[i][j - 1], name)[0]) / (2 * dy)
    return d1v2 - d2v1


def gauss_from_connectors(grid, jet=None, i=None, j=None):
    """Gaussian curvature from the skew gradient of the surface connector.

    Central-differences curl(c*) at grid node (i, j) (default the center)
    and divides by -lambda1*lambda2 there; ``jet``, when given, supplies
    the stretches instead of the node.

    Raises
    ------
    DomainError
        When (i, j) has no interior neighbors.
    """
    i, j = _interior(grid, i, j)
    node = grid.frames[i][j]
    lam1 = jet.lambda1 if jet is not None else node.lambda1
    lam2 = jet.lambda2 if jet is not None else node.lambda2
    return float(-_curl_at(grid, "c_star", i, j) / (lam1 * lam2))


def gauss_uniform_stretch(frame, lambda1):
    """Gaussian curvature of a spatially uniform area-preserving stretch.

    With lambda2 = 1/lambda1 constant over the plane, the curvature
    reduces to (1/lambda2^2 - 1/lambda1^2)(c2^2 - c1^2 + c12).
    """
    l2inv = lambda1 * lambda1
    return float((l2inv - 1.0 / l2inv)
                 * (frame.c2**2 - frame.c1**2 + frame.c12))


def _cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class CodazziReport:
    """Max absolute residuals of the connector compatibility identities."""

    curl_c_star: float
    curl_d1_star: float
    curl_d2_star: float
    c_compatibility: float
    n_interior: int
    spacing: Tuple[float, float]

    def max_residual(self):
        return max(self.curl_c_star, self.curl_d1_star, self.curl_d2_star)


def check_codazzi(grid):
    """Residuals of the compatibility identities over a frame grid.

    Checks curl c* = d2* x d1*, curl d1* = c* x d2*, curl d2* = d1* x c*
    (planar curls, scalar crosses), and the symmetry of grad c, at every
    interior node; reports the max absolute residual of each.
    """
    nx, ny = grid.shape
    r = np.zeros(4)
    n = 0
    for i in range(1, nx - 1):
        for j in range(1, ny - 1):
            f = grid.frames[i][j]
            r[0] = max(r[0], abs(_curl_at(grid, "c_star", i, j)
                                 - _cross2(f.d2_star, f.d1_star)))
            r[1] = max(r[1], abs(_curl_at(grid, "d1_star", i, j)
                                 - _cross2(f.c_star, f.d2_star)))
            r[2] = max(r[2], abs(_curl_at(grid, "d2_star", i, j)
                                 - _cross2(f.d1_star, f.c_star)))
            r[3] = max(r[3], abs(_curl_at(grid, "c", i, j)))
            n += 1
    return CodazziReport(
        curl_c_star=float(r[0]), curl_d1_star=float(r[1]),
        curl_d2_star=float(r[2]), c_compatibility=float(r[3]),
        n_interior=n, spacing=grid.spacing)
