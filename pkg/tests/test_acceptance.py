"""Acceptance gate: run every built-in verification check at its stated
tolerance and print one PASS/FAIL line per check."""

import pytest

from plate_reduce import cli_io


def test_check_registry_is_complete():
    assert cli_io.CHECK_IDS == (
        "incompressibility_order",
        "gent_bending",
        "gent_stretching",
        "theorema_egregium",
        "codazzi_residuals",
        "cg_profile_minimality",
        "cg_small_strain",
        "svk_profile",
        "thickness_formula",
        "eigenframe_coupling",
        "cross_path_curvatures",
        "orientation",
    )


@pytest.mark.parametrize("check_id,check", cli_io.CHECKS,
                         ids=[cid for cid, _ in cli_io.CHECKS])
def test_acceptance(check_id, check, capsys):
    verdict = check(cli_io.VerifyContext())
    status = "PASS" if verdict["passed"] else "FAIL"
    with capsys.disabled():
        print(f"[{status}] {check_id}: {verdict['detail']}")
    assert verdict["check_id"] == check_id
    assert verdict["passed"], f"{check_id}: {verdict['detail']}"
