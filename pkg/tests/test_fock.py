import itertools

import numpy as np
import pytest

from qoslab.laurent import P_Q, P_MINUS_Q, P_Q2, P_MINUS_Q2
from qoslab.algebra import Algebra
from qoslab import focknum

FLAVOURS = [P_Q, P_MINUS_Q, P_Q2, P_MINUS_Q2]
Q = 0.6
DIM = 6


@pytest.mark.parametrize("param", FLAVOURS)
def test_fock_relations(param):
    """Defining relations hold exactly; the last one only below the top state."""
    p = param.value(Q)
    ops = focknum.fock_ops(p, DIM)
    k, kp, ap, am = ops["k"], ops["kp"], ops["ap"], ops["am"]
    eye = np.eye(DIM)
    assert np.allclose(k @ kp - kp @ k, 0.0, atol=1e-15)
    assert np.allclose(k @ ap - p * ap @ k, 0.0, atol=1e-15)
    assert np.allclose(kp @ am - am @ kp / p, 0.0, atol=1e-15)
    assert np.allclose(ap @ am - (eye + k @ kp / p), 0.0, atol=1e-14)
    # a- a+ = 1 + p k k' needs headroom for the raising operator: exact on
    # columns 0..DIM-2, broken at the top column by truncation
    diff = am @ ap - (eye + p * k @ kp)
    assert np.allclose(diff[:, :DIM - 1], 0.0, atol=1e-14)
    assert np.abs(diff[:, DIM - 1]).max() > 0.1


@pytest.mark.parametrize("param", FLAVOURS)
def test_central_ratio(param):
    p = param.value(Q)
    ops = focknum.fock_ops(p, DIM)
    assert np.allclose(ops["kp"], -p * ops["k"], atol=1e-15)
    assert np.allclose(ops["k"] @ ops["k^-1"], np.eye(DIM), atol=1e-12)


def test_eval_elem_multiplicative_on_safe_columns():
    alg = Algebra({"x": P_Q, "y": P_Q2})
    a = alg.gen("x", "ap") * alg.gen("y", "k") + alg.gen("x", "am")
    b = alg.gen("y", "ap") * alg.gen("x", "kp")
    prod = a * b
    ma = focknum.eval_elem_dense(a, DIM, Q)
    mb = focknum.eval_elem_dense(b, DIM, Q)
    mp = focknum.eval_elem_dense(prod, DIM, Q)
    caps = {lbl: DIM - 1 - w for lbl, w in focknum.max_raise(prod).items()}
    cols = focknum.safe_columns(["x", "y"], DIM, caps)
    assert np.allclose((ma @ mb)[:, cols], mp[:, cols], atol=1e-12)


def test_eval_elem_rejects_boundary_symbol():
    alg = Algebra({"x": P_MINUS_Q, "y": P_MINUS_Q})
    with pytest.raises(ValueError):
        focknum.eval_elem(alg.k_symbol(("x", "y")), 3, Q)


def _sector_charges(dim, n_sites, charge):
    states = list(itertools.product(range(dim), repeat=n_sites))
    flat = lambda s: sum(n * dim ** (n_sites - 1 - i) for i, n in enumerate(s))
    return states, flat


def test_solve_r_small():
    out = focknum.solve_r(dim=2, q_value=Q)
    assert out["nullspace_dim"] == 1
    assert out["residual_direct_sum"] < 1e-12
    assert out["residual_tensor"] < 1e-12
    R = out["vertex"]
    # vacuum normalization and charge conservation
    assert R[0, 0] == pytest.approx(1.0)
    states, flat = _sector_charges(2, 3, None)
    for r in states:
        for c in states:
            if (r[0] + r[1], r[1] + r[2]) != (c[0] + c[1], c[1] + c[2]):
                assert R[flat(r), flat(c)] == 0.0


def test_solve_r_dim3_invertible():
    out = focknum.solve_r(dim=3, q_value=Q)
    assert out["nullspace_dim"] == 1
    assert out["residual_direct_sum"] < 1e-12
    assert out["residual_tensor"] < 1e-9
    assert np.isfinite(out["condition_number"])
    assert out["condition_number"] < 1e3


def test_solve_k_small():
    out = focknum.solve_k(dim=2, q_value=Q)
    assert out["nullspace_dim"] == 1
    assert out["residual"] < 1e-10
    K = out["operator"]
    assert K[0, 0] == pytest.approx(1.0)
    states, flat = _sector_charges(2, 4, None)
    for r in states:
        for c in states:
            cr = (r[0] + r[1] + r[3], r[0] - r[1] + r[2])
            cc = (c[0] + c[1] + c[3], c[0] - c[1] + c[2])
            if cr != cc:
                assert K[flat(r), flat(c)] == 0.0


def test_solve_k_flavour_control():
    out = focknum.solve_k(dim=2, q_value=Q, boundary_param=P_Q2)
    assert out["nullspace_dim"] != 1
