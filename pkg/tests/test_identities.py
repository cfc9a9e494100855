import pytest

from qoslab import identities


@pytest.mark.parametrize("fn", [
    identities.check_tetra_ML,
    identities.check_tetra_NN,
    identities.check_tetra_torus,
    identities.check_ML_exchange,
    identities.check_boundary_reflection,
    identities.check_cform_equivalence,
])
def test_identity_exact_zero(fn):
    rep = fn()
    assert rep.passed
    assert rep.residual == 0.0


@pytest.mark.parametrize("fn", [
    identities.check_tetra_ML,
    identities.check_tetra_NN,
    identities.check_tetra_torus,
    identities.check_ML_exchange,
    identities.check_boundary_reflection,
    identities.check_cform_equivalence,
])
def test_negative_controls_fail(fn):
    rep = fn(control=True)
    assert rep.passed  # a control run passes when the broken identity fails


def test_cform_tensor_blocks():
    rep = identities.check_cform_tensor_blocks()
    assert rep.passed


def test_report_serialization():
    rep = identities.check_ML_exchange()
    d = rep.to_dict()
    assert d["name"] == rep.name
    assert set(d) == {"name", "params", "mode", "residual", "passed",
                      "wall_time_ms", "detail"}
