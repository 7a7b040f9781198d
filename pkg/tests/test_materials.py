"""Energy densities, fiber invariants, and material construction."""

import numpy as np
import pytest
from types import SimpleNamespace

from plate_reduce import (
    CiarletGeymonat,
    Gent,
    MaterialDomainError,
    MooneyRivlin,
    NeoHookean,
    PolyProfile,
    SaintVenantKirchhoff,
    StiffeningLimitError,
    catalog_surface,
    evaluate_jet,
    exact_invariants,
    exact_invariants_from_jet,
    fiber_deformation_gradient,
    incompressible_profile,
    invariant_series,
    lame_constants,
    material_from_config,
    molecular_params,
    small_strain_energy,
    symmetric_sqrt,
    volumetric_energy,
)

ALL_MODELS = (Gent(mu=1.0, jm=10.0), NeoHookean(mu=1.0),
              MooneyRivlin(mu=1.0, chi=0.4),
              CiarletGeymonat.from_lame(1.0, 1.0),
              SaintVenantKirchhoff(lam=1.0, mu=1.0))


# ---------------------------------------------------------------------------
# energy densities


@pytest.mark.parametrize("material", ALL_MODELS,
                         ids=[type(m).__name__ for m in ALL_MODELS])
def test_energy_vanishes_at_identity(material):
    if isinstance(material, SaintVenantKirchhoff):
        w = volumetric_energy(material, C_f=np.eye(3))
    else:
        w = volumetric_energy(material, 3.0, 3.0, 1.0)
    assert abs(w) <= 1e-14


def test_gent_density_frozen_value():
    w = volumetric_energy(Gent(mu=1.0, jm=10.0), 5.25, 5.25, 1.0)
    assert w == pytest.approx(-5.0 * np.log(0.775), rel=1e-14)
    assert w == pytest.approx(1.2744612481439501, rel=1e-14)


def test_gent_extensibility_limit():
    with pytest.raises(StiffeningLimitError, match="extensibility limit"):
        volumetric_energy(Gent(mu=1.0, jm=10.0), 13.0, 3.0, 1.0)


def test_gent_approaches_neo_hookean_for_large_jm():
    w_gent = volumetric_energy(Gent(mu=2.0, jm=1e8), 4.0, 4.0, 1.0)
    w_nh = volumetric_energy(NeoHookean(mu=2.0), 4.0, 4.0, 1.0)
    assert w_gent == pytest.approx(w_nh, rel=1e-6)


def test_mooney_rivlin_interpolates_both_invariants():
    w = volumetric_energy(MooneyRivlin(mu=2.0, chi=0.25), 5.0, 4.0, 1.0)
    assert w == pytest.approx(0.5 * 2.0 * (0.25 * 2.0 + 0.75 * 1.0), rel=1e-14)


def test_cg_reference_state_is_stress_free():
    material = CiarletGeymonat.from_lame(1.0, 1.0)

    def w_of(eps):
        s = (1.0 + eps) ** 2
        return volumetric_energy(material, 3.0 * s, 3.0 * s * s, s ** 3)

    assert abs((w_of(1e-5) - w_of(-1e-5)) / 2e-5) <= 1e-8
    assert 0.0 < w_of(1e-5) < 1e-8


def test_cg_rejects_nonpositive_volume():
    with pytest.raises(MaterialDomainError, match="positive"):
        volumetric_energy(CiarletGeymonat(a=1.0, b=1.0), 3.0, 3.0, -1.0)


def test_svk_density():
    material = SaintVenantKirchhoff(lam=1.0, mu=1.0)
    # C = diag(4, 1, 1): E = diag(1, 0, 0)
    assert volumetric_energy(material, C_f=np.diag([4.0, 1.0, 1.0])) == \
        pytest.approx(1.5, rel=1e-14)
    with pytest.raises(ValueError, match="C_f"):
        volumetric_energy(material, 3.0, 3.0, 1.0)


def test_unknown_material_is_rejected():
    with pytest.raises(TypeError, match="unknown material"):
        volumetric_energy(object(), 3.0, 3.0, 1.0)


# ---------------------------------------------------------------------------
# model construction


def test_model_parameter_validation():
    with pytest.raises(ValueError):
        Gent(mu=-1.0, jm=10.0)
    with pytest.raises(ValueError):
        Gent(mu=1.0, jm=0.0)
    with pytest.raises(ValueError):
        NeoHookean(mu=0.0)
    with pytest.raises(ValueError):
        MooneyRivlin(mu=1.0, chi=0.0)
    with pytest.raises(ValueError):
        MooneyRivlin(mu=1.0, chi=1.5)
    with pytest.raises(ValueError):
        CiarletGeymonat(a=-1.0, b=1.0)
    with pytest.raises(ValueError):
        SaintVenantKirchhoff(lam=1.0, mu=-1.0)


def test_cg_constants_are_locked():
    material = CiarletGeymonat.from_lame(1.0, 1.0)
    assert material.a == 0.5 and material.b == 0.25
    assert material.c == 1.5 and material.d == -1.75
    assert CiarletGeymonat(a=0.5, b=0.25, c=1.5, d=-1.75) == material
    with pytest.raises(ValueError, match="c must equal"):
        CiarletGeymonat(a=0.5, b=0.25, c=2.0)
    with pytest.raises(ValueError, match="d must equal"):
        CiarletGeymonat(a=0.5, b=0.25, d=-2.0)
    with pytest.raises(ValueError, match="Lame"):
        CiarletGeymonat.from_lame(-1.0, 1.0)


def test_lame_constants():
    assert lame_constants(CiarletGeymonat.from_lame(2.0, 0.8)) == \
        pytest.approx((2.0, 0.8), rel=1e-14)
    assert lame_constants(SaintVenantKirchhoff(lam=1.3, mu=0.7)) == (1.3, 0.7)
    with pytest.raises(TypeError):
        lame_constants(NeoHookean(mu=1.0))


def test_small_strain_energy_matches_lame_form():
    E = np.array([[0.8, 0.3, 0.1], [0.3, -0.5, 0.2], [0.1, 0.2, 0.4]])
    w = small_strain_energy(CiarletGeymonat.from_lame(1.3, 0.7), E)
    expected = 0.5 * 1.3 * np.trace(E) ** 2 + 0.7 * np.trace(E @ E)
    assert w == pytest.approx(expected, rel=1e-14)


def test_material_from_config():
    assert material_from_config({"model": "gent", "mu": 2.0, "jm": 5.0}) == \
        Gent(mu=2.0, jm=5.0)
    assert material_from_config({"model": "neo_hookean", "mu": 1.5}) == \
        NeoHookean(mu=1.5)
    assert material_from_config(
        {"model": "mooney_rivlin", "mu": 1.0, "chi": 0.7}) == \
        MooneyRivlin(mu=1.0, chi=0.7)
    assert material_from_config(
        {"model": "ciarlet_geymonat", "lambda": 1.0, "mu": 1.0}) == \
        CiarletGeymonat.from_lame(1.0, 1.0)
    assert material_from_config(
        {"model": "ciarlet_geymonat", "a": 0.5, "b": 0.25}) == \
        CiarletGeymonat.from_lame(1.0, 1.0)
    assert material_from_config(
        {"model": "svk", "lambda": 1.3, "mu": 0.7}) == \
        SaintVenantKirchhoff(lam=1.3, mu=0.7)


def test_material_from_config_rejects_bad_specs():
    with pytest.raises(ValueError, match="'model'"):
        material_from_config({"mu": 1.0})
    with pytest.raises(ValueError, match="'model'"):
        material_from_config("gent")
    with pytest.raises(ValueError, match="unknown material model"):
        material_from_config({"model": "hooke"})
    with pytest.raises(ValueError, match="missing parameter"):
        material_from_config({"model": "gent", "mu": 1.0})
    with pytest.raises(ValueError, match="unknown material parameters"):
        material_from_config({"model": "neo_hookean", "mu": 1.0, "jm": 5.0})


def test_molecular_params():
    mu, jm = molecular_params(2.0, 4.0, 1.5, 2.0)
    assert mu == pytest.approx(6.0) and jm == pytest.approx(9.0)
    with pytest.raises(MaterialDomainError):
        molecular_params(2.0, 1.0, 1.5, 2.0)
    with pytest.raises(MaterialDomainError):
        molecular_params(2.0, 4.0, 1.5, -2.0)


def test_symmetric_sqrt():
    rng = np.random.default_rng(7)
    for _ in range(5):
        M = rng.normal(size=(3, 3))
        A = M.T @ M + 0.1 * np.eye(3)
        R = symmetric_sqrt(A)
        assert np.max(np.abs(R - R.T)) <= 1e-12
        assert np.max(np.abs(R @ R - A)) <= 1e-10
    with pytest.raises(MaterialDomainError):
        symmetric_sqrt(np.diag([1.0, -1.0, 1.0]))


def test_error_types_are_value_errors():
    assert issubclass(StiffeningLimitError, ValueError)
    assert issubclass(MaterialDomainError, ValueError)


# ---------------------------------------------------------------------------
# fiber deformation and invariants


def cylinder_jet():
    return evaluate_jet(catalog_surface("cylinder"), np.array([0.05, -0.3]))


def test_fiber_deformation_gradient():
    jet = cylinder_jet()
    profile = PolyProfile(1.0)
    F = fiber_deformation_gradient(jet, profile, 0.0)
    assert np.allclose(F[:, 2], jet.normal, atol=1e-14)
    assert np.linalg.det(F) == pytest.approx(1.0, rel=1e-12)
    shifted = fiber_deformation_gradient(jet, profile, 0.0,
                                         grad_phi=np.array([0.2, -0.1]))
    assert np.allclose(shifted[:, 0] - F[:, 0], 0.2 * jet.normal, atol=1e-14)
    assert np.allclose(shifted[:, 1] - F[:, 1], -0.1 * jet.normal, atol=1e-14)


def test_exact_invariants_routes_agree():
    jet = cylinder_jet()
    profile = PolyProfile(1.0, 0.5, 0.5)
    by_jet = exact_invariants_from_jet(jet, profile, 0.2)
    by_surface = exact_invariants(catalog_surface("cylinder"),
                                  np.array([0.05, -0.3]), profile, 0.2)
    assert np.allclose(by_jet, by_surface, rtol=1e-14)


def test_invariant_series_matches_matrix_route_exactly():
    jet = cylinder_jet()
    profile = PolyProfile(1.0, 0.5, 0.5)
    series = invariant_series(jet, profile)
    for x3 in (0.0, 0.3, -0.2):
        exact = np.array(series.exact(x3))
        matrix = np.array(exact_invariants_from_jet(jet, profile, x3))
        assert np.max(np.abs(exact - matrix)) <= 1e-12


def test_invariant_series_truncation_is_cubic():
    series = invariant_series(cylinder_jet(), PolyProfile(1.0, 0.5, 0.5))
    assert np.allclose(series.at(0.0),
                       (series.i1[0], series.i2[0], series.i3[0]))
    gap = lambda x3: np.max(np.abs(np.array(series.at(x3))
                                   - np.array(series.exact(x3))))
    big, small = gap(1e-2), gap(1e-3)
    assert small <= 1e-8
    assert 800.0 <= big / small <= 1250.0


def test_invariant_series_needs_only_scalar_jet_fields():
    jet = evaluate_jet(catalog_surface("gaussian_bump"), np.array([0.3, 0.2]))
    scalars = SimpleNamespace(trC=jet.trC, detC=jet.detC, H=jet.H, K=jet.K,
                              b1=jet.b1)
    profile = incompressible_profile(jet)
    full = invariant_series(jet, profile)
    slim = invariant_series(scalars, profile)
    assert full.i1 == slim.i1 and full.i2 == slim.i2 and full.i3 == slim.i3
    assert full.exact(0.05) == slim.exact(0.05)
