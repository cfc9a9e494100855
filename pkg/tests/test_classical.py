import random

import numpy as np
import sympy
import pytest

from qoslab.laurent import P_Q, P_Q2
from qoslab import classical


def test_derive_bracket_values():
    short = classical.derive_bracket(P_Q)
    assert short == {"n": 1, "alpha": 1, "beta": -2}
    long = classical.derive_bracket(P_Q2)
    assert long == {"n": 2, "alpha": 2, "beta": -4}


def _random_poly(rng, symbols):
    terms = sympy.Integer(0)
    for _ in range(3):
        term = sympy.Integer(rng.randint(-3, 3))
        for s in symbols:
            term *= s ** rng.randint(0, 2)
        terms += term
    return terms


def test_bracket_antisymmetry_and_jacobi():
    rng = random.Random(7)
    specs = {"u": classical.derive_bracket(P_Q),
             "v": classical.derive_bracket(P_Q2)}
    symbols = list(classical.site_symbols("u")) + list(classical.site_symbols("v"))
    br = lambda f, g: classical.poisson_bracket(f, g, specs)
    for _ in range(5):
        f = _random_poly(rng, symbols)
        g = _random_poly(rng, symbols)
        h = _random_poly(rng, symbols)
        assert sympy.expand(br(f, f)) == 0
        assert sympy.expand(br(f, g) + br(g, f)) == 0
        jacobi = br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))
        assert sympy.expand(jacobi) == 0


def test_constraint_is_casimir_and_ratio_central():
    rng = random.Random(11)
    spec = classical.derive_bracket(P_Q2)
    specs = {"u": spec}
    k, kp, ap, am = classical.site_symbols("u")
    casimir = ap * am - k * kp - 1
    for _ in range(5):
        f = _random_poly(rng, [k, kp, ap, am])
        assert sympy.expand(
            classical.poisson_bracket(casimir, f, specs)) == 0
        # k'/k is central: {k', f} k = {k, f} k'
        lhs = classical.poisson_bracket(kp, f, specs) * k
        rhs = classical.poisson_bracket(k, f, specs) * kp
        assert sympy.expand(lhs - rhs) == 0


def test_korepanov_det_single_site():
    coeffs = classical.korepanov_det(1, 1)
    k, kp, ap, am = classical.site_symbols("s0_0")
    assert coeffs[(0, 0)] == 1
    assert sympy.expand(coeffs[(1, 0)] + k) == 0
    assert sympy.expand(coeffs[(0, 1)] + kp) == 0
    assert sympy.expand(coeffs[(1, 1)] - (k * kp - ap * am)) == 0


def test_korepanov_support_box():
    coeffs = classical.korepanov_det(2, 1)
    for (n, m), c in coeffs.items():
        assert 0 <= n <= 2 and 0 <= m <= 1
        assert sympy.expand(c) != 0


def test_involution_torus():
    rep = classical.check_involution(2, 2, mirror=False)
    assert rep.passed and rep.residual == 0.0


def test_involution_mirror_and_control():
    rep = classical.check_involution(2, 2, mirror=True)
    assert rep.passed and rep.residual == 0.0
    ctrl = classical.check_involution(2, 2, mirror=True, control=True)
    assert ctrl.passed and ctrl.residual > 0


@pytest.mark.parametrize("N,M,interior", [(1, 3, 0), (2, 2, 1), (2, 3, 2)])
def test_genus_counts(N, M, interior):
    rep = classical.genus_check(N, M)
    assert rep.passed
    assert f"interior={interior}" in rep.detail


def test_refactorization_residual():
    rep = classical.check_refactorization(n_points=5, seed=3)
    assert rep.passed and rep.residual < 1e-12


def test_refactorize_preserves_site_casimirs():
    rng = np.random.default_rng(5)
    point = {lbl: classical.random_phase_point(rng)
             for lbl in classical._CORNER_LABELS}
    primed, res = classical.refactorize(point)
    assert res < 1e-12
    for lbl in classical._CORNER_LABELS:
        k, kp, ap, am = point[lbl]
        k2, kp2, ap2, am2 = primed[lbl]
        assert ap2 * am2 - k2 * kp2 == pytest.approx(ap * am - k * kp)
        assert kp2 / k2 == pytest.approx(kp / k)


def test_statement31_identification():
    rep = classical.check_statement_3_1(n_points=3, seed=2)
    assert rep.passed and rep.residual < 1e-9
    ctrl = classical.check_statement_3_1(n_points=3, seed=2, control=True)
    assert ctrl.passed and ctrl.residual > 1e-3


def test_statement32_symplecticity():
    rep = classical.check_statement_3_2(n_points=2, seed=2)
    assert rep.passed and rep.residual < 1e-5
    ctrl = classical.check_statement_3_2(n_points=2, seed=2, control=True)
    assert ctrl.passed and ctrl.residual >= 1e-5


def test_variable_change_demo():
    rep = classical.check_variable_change_demo()
    assert rep.passed
