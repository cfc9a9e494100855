"""Constructors for the named operator-valued matrices of the model.

All 2x2-block matrices use row = incoming index pair, column = outgoing,
with the flat order (0,0), (0,1), (1,0), (1,1) on an index pair.
"""

from __future__ import annotations

from .laurent import LaurentPoly
from .opmatrix import OpMatrix


def _pair_shape(labels):
    a, b = labels
    return ((a, 2), (b, 2))


def L_matrix(algebra, site, labels):
    """Free-fermion type L-operator: diag blocks (1, [[k,a+],[a-,k']], 1)."""
    g = lambda name: algebra.gen(site, name)
    grid = [
        [1, 0, 0, 0],
        [0, g("kp"), g("am"), 0],
        [0, g("ap"), g("k"), 0],
        [0, 0, 0, 1],
    ]
    shape = _pair_shape(labels)
    return OpMatrix.from_entry_grid(algebra, shape, shape, grid)


def M_matrix(algebra, site, labels):
    """Anti-diagonal-block companion of L: corners k, a-, a+, k' and unit middle."""
    g = lambda name: algebra.gen(site, name)
    grid = [
        [g("k"), 0, 0, g("am")],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [g("ap"), 0, 0, g("kp")],
    ]
    shape = _pair_shape(labels)
    return OpMatrix.from_entry_grid(algebra, shape, shape, grid)


def E_matrix(algebra, lam, label):
    """Spectral weight diag(1, lam) on a single two-dimensional space."""
    shape = ((label, 2),)
    return OpMatrix.from_entry_grid(algebra, shape, shape, [[1, 0], [0, lam]])


def X_block_matrix(algebra, site, dim, c1, c2, label="s"):
    """Korepanov vertex in a direct sum of one-dimensional spaces.

    Identity except for the 2x2 block [[k, a+], [a-, k']] on components
    (c1, c2); X_{gamma,beta} of the alternative 4x4 form is the same
    constructor with the components swapped.
    """
    g = lambda name: algebra.gen(site, name)
    entries = {}
    one = algebra.one()
    for i in range(dim):
        if i not in (c1, c2):
            entries[(i, i)] = one
    entries[(c1, c1)] = g("k")
    entries[(c1, c2)] = g("ap")
    entries[(c2, c1)] = g("am")
    entries[(c2, c2)] = g("kp")
    shape = ((label, dim),)
    return OpMatrix(algebra, shape, shape, entries)


def P_block_matrix(algebra, dim, c1, c2, label="s"):
    """Permutation of two components in a direct sum of one-dim spaces."""
    one = algebra.one()
    entries = {}
    for i in range(dim):
        if i == c1:
            entries[(i, c2)] = one
        elif i == c2:
            entries[(i, c1)] = one
        else:
            entries[(i, i)] = one
    shape = ((label, dim),)
    return OpMatrix(algebra, shape, shape, entries)


def Y_matrix(algebra, site, label):
    """Two-dimensional companion vertex [[a-, k'], [k, a+]]."""
    g = lambda name: algebra.gen(site, name)
    shape = ((label, 2),)
    grid = [[g("am"), g("kp")], [g("k"), g("ap")]]
    return OpMatrix.from_entry_grid(algebra, shape, shape, grid)


# Component order (alpha, beta, gamma, delta) = (0, 1, 2, 3) for the 4x4
# direct-sum matrices of the boundary-configuration rewriting.
ALPHA, BETA, GAMMA, DELTA = 0, 1, 2, 3


def Y4_a(algebra, site, label="s"):
    """Y^(a) = X_{delta,beta} X_{gamma,alpha} P_{alpha,gamma} P_{beta,delta}."""
    return (
        X_block_matrix(algebra, site, 4, DELTA, BETA, label)
        @ X_block_matrix(algebra, site, 4, GAMMA, ALPHA, label)
        @ P_block_matrix(algebra, 4, ALPHA, GAMMA, label)
        @ P_block_matrix(algebra, 4, BETA, DELTA, label)
    )


def Y4_b(algebra, site, label="s"):
    """Y^(b) = X_{delta,gamma} X_{beta,alpha} P_{alpha,beta} P_{gamma,delta}."""
    return (
        X_block_matrix(algebra, site, 4, DELTA, GAMMA, label)
        @ X_block_matrix(algebra, site, 4, BETA, ALPHA, label)
        @ P_block_matrix(algebra, 4, ALPHA, BETA, label)
        @ P_block_matrix(algebra, 4, GAMMA, DELTA, label)
    )
