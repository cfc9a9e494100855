import pytest

from qoslab import transfer


def test_torus_support_and_trivial_coeffs():
    T = transfer.build_torus_transfer(1, 1)
    assert T.support() == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert T.coeff(0, 0) == T.algebra.one()
    assert T.coeff(1, 1) == T.algebra.one()


def test_torus_serialize_round_trip():
    T = transfer.build_torus_transfer(1, 2)
    records = T.serialize()
    back = transfer.TransferPoly.deserialize(T.algebra, records, 1, 2)
    for nm in set(T.coeffs) | set(back.coeffs):
        assert (T.coeff(*nm) - back.coeff(*nm)).is_zero()


def test_statement22_n1_exact():
    rep = transfer.check_statement_2_2(N=1)
    assert rep.passed and rep.residual == 0.0


def test_statement22_control():
    rep = transfer.check_statement_2_2(N=1, control=True)
    assert rep.passed


def test_statement23_n1_exact():
    rep = transfer.check_statement_2_3(N=1)
    assert rep.passed and rep.residual == 0.0


def test_statement23_control():
    rep = transfer.check_statement_2_3(N=1, control=True)
    assert rep.passed


def test_fold_matches_direct_n1():
    a = transfer.build_halfplane_transfer_direct_N1("VUB")
    b = transfer.build_halfplane_transfer_folded(1, "VUB")
    for nm in set(a.coeffs) | set(b.coeffs):
        assert (a.coeff(*nm) - b.coeff(*nm)).is_zero()


def test_count_independent_n1():
    T = transfer.build_halfplane_transfer_folded(1, "VUB")
    assert transfer.count_independent(T, fock_dim=4) == 3


def test_similarity_n1():
    rep = transfer.check_similarity_2_24(N=1, q_value=0.5, fock_dim=12, x=1)
    assert rep.passed and rep.residual < 1e-8


def test_similarity_control_fails():
    rep = transfer.check_similarity_2_24(N=1, q_value=0.5, fock_dim=12, x=1,
                                         control=True)
    assert rep.passed  # control run passes when the broken ordering fails


def test_m_trace_tail_guard():
    with pytest.raises(ValueError):
        transfer.build_M_trace(1, 0.5, 1, 12)


def test_sign_relation_small():
    for nm in ((1, 1), (2, 2)):
        rep = transfer.check_sign_relation_3_11(*nm)
        assert rep.passed
