"""Mid-surface jets: catalog values, internal identities, and guards."""

import numpy as np
import pytest

from plate_reduce import (
    AreaDistortionError,
    DegenerateImmersionError,
    DomainError,
    ParametricSurface,
    appendix_H_K,
    catalog_surface,
    evaluate_jet,
    sampled_injectivity,
    verify_orientation,
    PolyProfile,
)


def jet_of(name, x, **kwargs):
    return evaluate_jet(catalog_surface(name, **kwargs), np.array(x))


# ---------------------------------------------------------------------------
# frozen catalog values


def test_cylinder_jet_is_an_isometry():
    jet = jet_of("cylinder", (0.05, -0.3))
    assert jet.trC == pytest.approx(2.0, abs=1e-14)
    assert jet.detC == pytest.approx(1.0, abs=1e-14)
    assert jet.H == pytest.approx(-0.5, abs=1e-14)
    assert jet.K == pytest.approx(0.0, abs=1e-14)
    assert jet.b1 == pytest.approx(-1.0, abs=1e-14)
    assert jet.lambda1 == pytest.approx(1.0, abs=1e-14)
    assert jet.lambda2 == pytest.approx(1.0, abs=1e-14)


def test_uniform_stretch_jet():
    jet = jet_of("uniform_stretch", (0.1, 0.2))
    assert jet.lambda1 == pytest.approx(2.0, abs=1e-14)
    assert jet.lambda2 == pytest.approx(0.5, abs=1e-14)
    assert jet.trC == pytest.approx(4.25, abs=1e-14)
    assert jet.detC == pytest.approx(1.0, abs=1e-14)
    assert jet.H == 0.0 and jet.K == 0.0


def test_sphere_cap_jet():
    jet = jet_of("sphere_cap", (0.25, -0.15))
    # radius 2 cap: umbilic point with principal curvatures -1/2
    assert jet.H == pytest.approx(-0.5, abs=1e-12)
    assert jet.K == pytest.approx(0.25, abs=1e-12)
    assert jet.detC - 1.0 == pytest.approx(0.02171136653895278, rel=1e-12)
    # curvature umbilic: b1 = trC * H
    assert jet.b1 == pytest.approx(jet.trC * jet.H, rel=1e-12)


def test_gaussian_bump_preserves_area_exactly():
    jet = jet_of("gaussian_bump", (0.3, 0.2))
    assert jet.detC == pytest.approx(1.0, abs=1e-14)
    assert jet.trC - 2.0 == pytest.approx(1.087053017535311e-3, rel=1e-10)
    assert jet.H == pytest.approx(-0.9936737954268056, rel=1e-12)
    assert jet.K == pytest.approx(0.9873695386931628, rel=1e-12)
    assert jet.b1 - 2.0 * jet.H == pytest.approx(-7.998072318544658e-4,
                                                 rel=1e-9)


def test_bump_apex_is_an_isometry_point():
    jet = jet_of("gaussian_bump", (0.0, 0.0))
    assert np.max(np.abs(jet.C - np.eye(2))) <= 1e-12


def test_saddle_jet():
    jet = jet_of("saddle", (0.2, 0.15))
    assert jet.detC - 1.0 == pytest.approx(0.0625, abs=1e-14)
    assert jet.K < 0.0


def test_plane_jet_is_trivial():
    jet = jet_of("plane", (0.1, -0.2))
    assert jet.trC == 2.0 and jet.detC == 1.0
    assert jet.H == 0.0 and jet.K == 0.0 and jet.b1 == 0.0


# ---------------------------------------------------------------------------
# internal identities of the jet


@pytest.mark.parametrize("name,x", [
    ("gaussian_bump", (0.3, 0.2)),
    ("sphere_cap", (0.25, -0.15)),
    ("saddle", (0.2, 0.15)),
    ("cylinder", (0.05, -0.3)),
])
def test_jet_identities(name, x):
    jet = jet_of(name, x)
    # frames orthonormal, image frame consistent with the stretches
    assert abs(jet.r1 @ jet.r2) <= 1e-14
    assert jet.r1 @ jet.r1 == pytest.approx(1.0, abs=1e-14)
    assert np.allclose(jet.C @ jet.r1, jet.lambda1 ** 2 * jet.r1, atol=1e-12)
    assert np.allclose(jet.C @ jet.r2, jet.lambda2 ** 2 * jet.r2, atol=1e-12)
    assert np.allclose(jet.grad_y @ jet.r1, jet.lambda1 * jet.l1, atol=1e-12)
    assert abs(jet.l1 @ jet.l2) <= 1e-12
    # unit normal orthogonal to the tangent plane
    assert abs(jet.normal @ jet.normal - 1.0) <= 1e-12
    assert abs(jet.normal @ jet.a1) <= 1e-12
    assert abs(jet.normal @ jet.a2) <= 1e-12
    assert np.allclose(jet.a1, jet.grad_y[:, 0])
    # (grad y)^T grad nu is symmetric and traces to b1
    M = jet.grad_y.T @ jet.grad_nu
    assert np.max(np.abs(M - M.T)) <= 1e-12
    assert jet.b1 == pytest.approx(np.trace(M), abs=1e-12)
    # curvatures come from the shape operator
    assert jet.H == pytest.approx(0.5 * np.trace(jet.shape_op), abs=1e-14)
    assert jet.K == pytest.approx(np.linalg.det(jet.shape_op), abs=1e-14)
    assert np.allclose(jet.B, jet.grad_y @ jet.grad_y.T, atol=1e-14)
    assert jet.trC == pytest.approx(np.trace(jet.C), abs=1e-14)
    assert jet.detC == pytest.approx(np.linalg.det(jet.C), rel=1e-12)


def test_finite_difference_jet_matches_analytic():
    ana = jet_of("gaussian_bump", (0.3, 0.2))
    fd = jet_of("gaussian_bump", (0.3, 0.2),
                derivative_mode="finite-difference")
    assert fd.derivative_mode == "finite-difference"
    assert abs(fd.H - ana.H) <= 1e-7
    assert abs(fd.K - ana.K) <= 1e-7
    assert abs(fd.b1 - ana.b1) <= 1e-7
    assert abs(fd.trC - ana.trC) <= 1e-7
    assert np.max(np.abs(fd.C - ana.C)) <= 1e-7


# ---------------------------------------------------------------------------
# curvatures from raw second derivatives


@pytest.mark.parametrize("name,x", [
    ("plane", (0.1, -0.2)),
    ("uniform_stretch", (0.1, 0.2)),
    ("cylinder", (0.05, -0.3)),
    ("gaussian_bump", (0.3, 0.2)),
])
def test_appendix_H_K_matches_jet_on_unimodular_surfaces(name, x):
    jet = jet_of(name, x)
    h_alt, k_alt = appendix_H_K(jet)
    assert h_alt == pytest.approx(jet.H, abs=1e-10)
    assert k_alt == pytest.approx(jet.K, abs=1e-10)


def test_appendix_H_K_rejects_area_distortion():
    jet = jet_of("sphere_cap", (0.25, -0.15))
    with pytest.raises(AreaDistortionError, match="det C"):
        appendix_H_K(jet)
    with pytest.raises(AreaDistortionError):
        appendix_H_K(jet_of("saddle", (0.2, 0.15)))
    # an explicit tolerance can admit mild distortion
    h_alt, _ = appendix_H_K(jet, tol=0.1)
    assert abs(h_alt - jet.H) <= 0.05


# ---------------------------------------------------------------------------
# guards


def test_evaluate_jet_outside_domain():
    with pytest.raises(DomainError, match="outside domain"):
        jet_of("cylinder", (5.0, 0.0))


def test_degenerate_immersion_is_rejected():
    flat = ParametricSurface(
        map=lambda x: np.array([x[0], 0.0, 0.0]),
        grad=lambda x: np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]),
        hess=lambda x: np.zeros((3, 2, 2)))
    with pytest.raises(DegenerateImmersionError, match="rank deficient"):
        evaluate_jet(flat, np.array([0.0, 0.0]))


def test_parametric_surface_validation():
    with pytest.raises(ValueError, match="derivative_mode"):
        ParametricSurface(map=lambda x: np.zeros(3), derivative_mode="exact")
    with pytest.raises(ValueError, match="grad and hess"):
        ParametricSurface(map=lambda x: np.zeros(3))
    with pytest.raises(ValueError, match="step"):
        ParametricSurface(map=lambda x: np.zeros(3),
                          derivative_mode="finite-difference", step=0.0)


def test_catalog_surface_validation():
    with pytest.raises(ValueError, match="unknown catalog surface"):
        catalog_surface("nope")
    with pytest.raises(ValueError, match="unknown parameters"):
        catalog_surface("cylinder", bogus=1.0)
    with pytest.raises(ValueError, match="radius"):
        catalog_surface("cylinder", R=-1.0)
    with pytest.raises(ValueError, match="too steep"):
        catalog_surface("gaussian_bump", A=5.0, s=0.2)
    with pytest.raises(ValueError, match="positive"):
        catalog_surface("uniform_stretch", l1=-2.0)


# ---------------------------------------------------------------------------
# orientation and injectivity


def test_verify_orientation_passes_at_working_thickness():
    report = verify_orientation(catalog_surface("cylinder"),
                                PolyProfile(1.0, 0.5, 0.5), 0.01)
    assert report.passed
    assert report.n_points == 5 * 5 * 9
    assert report.n_nonpositive == 0
    assert report.min_det_F > 0.99


def test_verify_orientation_flags_excessive_thickness():
    report = verify_orientation(catalog_surface("cylinder"),
                                PolyProfile(1.0, 0.5, 0.5), 0.9)
    assert not report.passed
    assert report.n_nonpositive > 0
    assert report.min_det_F <= 0.0
    assert abs(report.argmin_x3) <= 0.9


@pytest.mark.parametrize("name", ["plane", "cylinder", "gaussian_bump"])
def test_sampled_injectivity_on_catalog(name):
    assert sampled_injectivity(catalog_surface(name))


def test_sampled_injectivity_detects_a_fold():
    folded = ParametricSurface(
        map=lambda x: np.array([x[0] ** 2, x[1], 0.0]),
        grad=lambda x: np.array([[2.0 * x[0], 0.0], [0.0, 1.0], [0.0, 0.0]]),
        hess=lambda x: np.array([[[2.0, 0.0], [0.0, 0.0]],
                                 [[0.0, 0.0], [0.0, 0.0]],
                                 [[0.0, 0.0], [0.0, 0.0]]]))
    assert not sampled_injectivity(folded)
