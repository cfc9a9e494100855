"""Exact operator-matrix identity checks.

Each check builds both sides of an identity as sparse matrices over small
auxiliary spaces, with entries in the exact q-oscillator algebra, and
reports whether the difference is the literal zero matrix.  A "residual"
of 0.0 means exact symbolic zero; any surviving entry makes the check
fail and its first nonzero entry is kept as a witness.
"""

from __future__ import annotations

import time

from .laurent import P_Q, P_MINUS_Q, P_Q2, P_MINUS_Q2
from .algebra import Algebra
from .opmatrix import OpMatrix, chain, reshape_sum_to_tensor, kron
from .matrices import (
    L_matrix,
    M_matrix,
    X_block_matrix,
    P_block_matrix,
    Y_matrix,
    Y4_a,
    Y4_b,
    ALPHA,
    BETA,
    GAMMA,
    DELTA,
)


class CheckReport:
    """Outcome of a single identity check."""

    __slots__ = ("name", "params", "mode", "residual", "passed", "wall_time_ms", "detail")

    def __init__(self, name, params, mode, residual, passed, wall_time_ms, detail=""):
        self.name = name
        self.params = dict(params)
        self.mode = mode
        self.residual = residual
        self.passed = bool(passed)
        self.wall_time_ms = wall_time_ms
        self.detail = detail

    def to_dict(self):
        return {
            "name": self.name,
            "params": self.params,
            "mode": self.mode,
            "residual": self.residual,
            "passed": self.passed,
            "wall_time_ms": self.wall_time_ms,
            "detail": self.detail,
        }

    def __repr__(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"<CheckReport {self.name} {tag} residual={self.residual}>"


def _report_from_diff(name, params, diff, t0, detail="", control=False):
    wall = (time.perf_counter() - t0) * 1000.0
    if diff.is_zero():
        if control:
            return CheckReport(name, params, "symbolic", 0.0, False, wall,
                               "control unexpectedly holds")
        return CheckReport(name, params, "symbolic", 0.0, True, wall, detail)
    row, col, entry = diff.first_nonzero()
    witness = f"first nonzero at {row} -> {col}: {entry}"
    if detail:
        witness = detail + "; " + witness
    if control:
        # a control run passes when the deliberately broken identity fails
        return CheckReport(name, params, "symbolic", 1.0, True, wall,
                           "broken as expected; " + witness)
    return CheckReport(name, params, "symbolic", 1.0, False, wall, witness)


AUX4 = (("i1", 2), ("i2", 2), ("j1", 2), ("j2", 2))


def check_tetra_ML(control=False):
    """Mixed tetrahedron equation with two L- and two M-vertices.

    M(i1,j2) M(i2,j1) L(i1,j1) L(i2,j2) = L(i2,j2) L(i1,j1) M(i2,j1) M(i1,j2)
    with the L-site carrying the p = q oscillator flavour and the M-site
    p = -q.  The control flips the M flavour to p = q, which breaks it.
    """
    t0 = time.perf_counter()
    m_param = P_Q if control else P_MINUS_Q
    alg = Algebra({"V": P_Q, "W": m_param})

    def L(a, b):
        return _embed_pair(L_matrix(alg, "V", (a, b)), (a, b))

    def M(a, b):
        return _embed_pair(M_matrix(alg, "W", (a, b)), (a, b))

    lhs = chain([M("i1", "j2"), M("i2", "j1"), L("i1", "j1"), L("i2", "j2")])
    rhs = chain([L("i2", "j2"), L("i1", "j1"), M("i2", "j1"), M("i1", "j2")])
    name = "tetra_ML_control" if control else "tetra_ML"
    return _report_from_diff(name, {"control": control}, lhs - rhs, t0,
                             control=control)


def check_tetra_NN(control=False):
    """Tetrahedron equation with an L-vertex and its N = L(-q) companion.

    N(i1,i2) N(j1,j2) L(i1,j1) L(i2,j2) = L(i2,j2) L(i1,j1) N(j1,j2) N(i1,i2).
    The control swaps a+ and a- in the N entries.
    """
    t0 = time.perf_counter()
    alg = Algebra({"V": P_Q, "W": P_MINUS_Q})

    def L(a, b):
        return _embed_pair(L_matrix(alg, "V", (a, b)), (a, b))

    def N(a, b):
        mat = L_matrix(alg, "W", (a, b))
        if control:
            mat = _swap_ladder(alg, "W", (a, b))
        return _embed_pair(mat, (a, b))

    lhs = chain([N("i1", "i2"), N("j1", "j2"), L("i1", "j1"), L("i2", "j2")])
    rhs = chain([L("i2", "j2"), L("i1", "j1"), N("j1", "j2"), N("i1", "i2")])
    name = "tetra_NN_control" if control else "tetra_NN"
    return _report_from_diff(name, {"control": control}, lhs - rhs, t0,
                             control=control)


def check_tetra_torus(control=False):
    """Tetrahedron equation for the q^2-flavoured vertex pair.

    Lm(i1,i2) Lm(j1,j2) Lp(i1,j1) Lp(i2,j2) = Lp(i2,j2) Lp(i1,j1) Lm(j1,j2) Lm(i1,i2)
    where Lp lives in the p = q^2 oscillator and Lm in p = -q^2.  The
    control puts both sites in the p = q^2 flavour.
    """
    t0 = time.perf_counter()
    m_param = P_Q2 if control else P_MINUS_Q2
    alg = Algebra({"V": P_Q2, "W": m_param})

    def Lp(a, b):
        return _embed_pair(L_matrix(alg, "V", (a, b)), (a, b))

    def Lm(a, b):
        return _embed_pair(L_matrix(alg, "W", (a, b)), (a, b))

    lhs = chain([Lm("i1", "i2"), Lm("j1", "j2"), Lp("i1", "j1"), Lp("i2", "j2")])
    rhs = chain([Lp("i2", "j2"), Lp("i1", "j1"), Lm("j1", "j2"), Lm("i1", "i2")])
    name = "tetra_torus_control" if control else "tetra_torus"
    return _report_from_diff(name, {"control": control}, lhs - rhs, t0,
                             control=control)


def check_ML_exchange(control=False):
    """Exchange of an M-vertex (p = -q) with a q^2-flavoured L on one pair.

    M(a,b) L(a,b) = L(a,b) M(a,b) on a single pair of two-dim spaces.
    The control replaces L by the two-dim companion vertex stacked into
    the same shape, which does not commute with M.
    """
    t0 = time.perf_counter()
    alg = Algebra({"V": P_Q2, "W": P_MINUS_Q})
    labels = ("a", "b")
    M = M_matrix(alg, "W", labels)
    if control:
        L = kron(Y_matrix(alg, "V", "a"), OpMatrix.identity(alg, (("b", 2),)))
    else:
        L = L_matrix(alg, "V", labels)
    diff = M @ L - L @ M
    name = "ml_exchange_control" if control else "ml_exchange"
    return _report_from_diff(name, {"control": control}, diff, t0,
                             control=control)


def check_boundary_reflection(control=False):
    """Boundary reflection identity with the k-twist boundary symbol.

    M2(i1,j2) L1(i1,i2) K L1(j1,j2) M2(i2,j1) L0(i1,j1) L0(i2,j2)
      = L0(i2,j2) L0(i1,j1) M2(i2,j1) L1(j1,j2) K L1(i1,i2) M2(i1,j2)
    where sites 1, 2 carry p = -q, site 0 carries p = q^2, and K is the
    formal symbol exchanging q-powers between sites 1 and 2.  The control
    replaces K by the identity, which breaks the equality.
    """
    t0 = time.perf_counter()
    alg = Algebra({"1": P_MINUS_Q, "2": P_MINUS_Q, "0": P_Q2})

    def L1(a, b):
        return _embed_pair(L_matrix(alg, "1", (a, b)), (a, b))

    def L0(a, b):
        return _embed_pair(L_matrix(alg, "0", (a, b)), (a, b))

    def M2(a, b):
        return _embed_pair(M_matrix(alg, "2", (a, b)), (a, b))

    if control:
        K = OpMatrix.identity(alg, AUX4)
    else:
        ksym = alg.k_symbol(("1", "2"))
        K = OpMatrix.identity(alg, AUX4).map_entries(lambda e: e * ksym)

    lhs = chain([M2("i1", "j2"), L1("i1", "i2"), K, L1("j1", "j2"),
                 M2("i2", "j1"), L0("i1", "j1"), L0("i2", "j2")])
    rhs = chain([L0("i2", "j2"), L0("i1", "j1"), M2("i2", "j1"),
                 L1("j1", "j2"), K, L1("i1", "i2"), M2("i1", "j2")])
    name = "boundary_reflection_control" if control else "boundary_reflection"
    return _report_from_diff(name, {"control": control}, lhs - rhs, t0,
                             control=control)


def build_config_sL_sR(identified=True):
    """The two boundary-configuration vertex products on a 4-component sum.

    Components (alpha, beta, gamma, delta) = (0..3).  With identified=False
    the six vertices carry six distinct q^2-flavoured oscillator sites
    a, a2, b, b2, 1, 2 (a2, b2 are the primed copies).  With identified=True
    the primed copies reuse their partners and the shared sites a, b carry
    the p = q flavour while 1, 2 stay at p = q^2.

    Returns (algebra, s_left, s_right).
    """
    if identified:
        sa, sb = "a", "b"
        sites = {"a": P_Q, "b": P_Q, "1": P_Q2, "2": P_Q2}
    else:
        sa, sb = "a2", "b2"
        sites = {s: P_Q2 for s in ("a", "a2", "b", "b2", "1", "2")}
    alg = Algebra(sites)

    def X(site, c1, c2):
        return X_block_matrix(alg, site, 4, c1, c2)

    s_left = chain([
        X("2", BETA, GAMMA), X("b", BETA, DELTA), X(sb, ALPHA, GAMMA),
        X("1", ALPHA, DELTA), X("a", ALPHA, BETA), X(sa, GAMMA, DELTA),
    ])
    s_right = chain([
        X("a", ALPHA, BETA), X(sa, GAMMA, DELTA), X("1", ALPHA, DELTA),
        X("b", BETA, DELTA), X(sb, ALPHA, GAMMA), X("2", BETA, GAMMA),
    ])
    return alg, s_left, s_right


def check_cform_equivalence(control=False):
    """Equivalence of the six-vertex boundary products with their C-form.

    Conjugating s_L and s_R by the component permutation
    P(a,d) . P(a,d) P(a,b) P(g,d) P(a,g) P(b,d) turns them into short
    products of 4x4 companion vertices:
      s_L -> X(2)_{bg} Y(b) X(1)_{gb} Y(a),
      s_R -> Y(a) X(1)_{bg} Y(b) X(2)_{gb}.
    The control drops the leading P(a,d) conjugation factor.
    """
    t0 = time.perf_counter()
    alg, s_left, s_right = build_config_sL_sR()

    def X(site, c1, c2):
        return X_block_matrix(alg, site, 4, c1, c2)

    def P(c1, c2):
        return P_block_matrix(alg, 4, c1, c2)

    def transform(s):
        pre = [] if control else [P(ALPHA, DELTA)]
        return chain(pre + [s, P(ALPHA, DELTA), P(ALPHA, BETA),
                            P(GAMMA, DELTA), P(ALPHA, GAMMA), P(BETA, DELTA)])

    ya = Y4_a(alg, "a")
    yb = Y4_b(alg, "b")
    exp_left = chain([X("2", BETA, GAMMA), yb, X("1", GAMMA, BETA), ya])
    exp_right = chain([ya, X("1", BETA, GAMMA), yb, X("2", GAMMA, BETA)])
    diff = (transform(s_left) - exp_left) + (transform(s_right) - exp_right)
    name = "cform_equivalence_control" if control else "cform_equivalence"
    return _report_from_diff(name, {"control": control}, diff, t0,
                             control=control)


def check_cform_tensor_blocks():
    """Tensor-factor readings of the 4x4 companion matrices.

    Reinterpreting the direct sum (alpha, beta, gamma, delta) as a tensor
    square of two-dim spaces must turn X_{beta,gamma} into the L-vertex on
    the pair and the two companion vertices into one-factor operators.
    """
    t0 = time.perf_counter()
    alg = Algebra({"a": P_Q, "b": P_Q, "1": P_Q2})
    x_bg = X_block_matrix(alg, "1", 4, BETA, GAMMA)
    diff = reshape_sum_to_tensor(x_bg, ("x", "y")) - L_matrix(alg, "1", ("x", "y"))
    ya = reshape_sum_to_tensor(Y4_a(alg, "a"), ("x", "y"))
    diff = diff + (ya - kron(OpMatrix.identity(alg, (("x", 2),)), Y_matrix(alg, "a", "y")))
    yb = reshape_sum_to_tensor(Y4_b(alg, "b"), ("x", "y"))
    diff = diff + (yb - kron(Y_matrix(alg, "b", "x"), OpMatrix.identity(alg, (("y", 2),))))
    return _report_from_diff("cform_tensor_blocks", {}, diff, t0)


ALL_CHECKS = {
    "tetra": check_tetra_ML,
    "tetra_nn": check_tetra_NN,
    "tetra_torus": check_tetra_torus,
    "ml-exchange": check_ML_exchange,
    "reflection": check_boundary_reflection,
    "cform": check_cform_equivalence,
}


# -- helpers ---------------------------------------------------------------


def _embed_pair(mat, labels):
    from .opmatrix import embed

    return embed(mat, labels, AUX4)


def _swap_ladder(alg, site, labels):
    """L-shaped vertex with a+ and a- interchanged (a wrongness control)."""
    g = lambda name: alg.gen(site, name)
    grid = [
        [1, 0, 0, 0],
        [0, g("kp"), g("ap"), 0],
        [0, g("am"), g("k"), 0],
        [0, 0, 0, 1],
    ]
    return OpMatrix.from_entry_grid(alg, (("r", 2), ("c", 2)), (("r", 2), ("c", 2)), grid)
