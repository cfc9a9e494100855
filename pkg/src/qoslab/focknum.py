"""Truncated number-basis (Fock) representations and numeric checks.

A deformation parameter p acts on basis vectors |0>, ..., |dim-1> by

    a+ |n> = |n+1>,  a- |n> = (1 - p^{2n}) |n-1>,
    k  |n> = p^n |n>,  k' |n> = -p^{n+1} |n>,

which realizes all four defining relations with central ratio k'/k = -p.
Truncation at a finite dim breaks the relations on the top states only,
so matrix elements are exact whenever the incoming occupation leaves
enough headroom for every raising operator involved.  All residual
computations below restrict to such safe columns.
"""

from __future__ import annotations

import itertools

import numpy as np
import scipy.sparse as sp

from .laurent import P_Q, P_Q2, P_MINUS_Q
from .matrices import ALPHA, BETA, GAMMA, DELTA


def fock_ops(p, dim):
    """Generator matrices of one oscillator at numeric deformation p."""
    n = np.arange(dim, dtype=float)
    ap = np.diag(np.ones(dim - 1), -1)
    am = np.diag(1.0 - p ** (2.0 * n[1:]), 1)
    k = np.diag(p ** n)
    kp = np.diag(-(p ** (n + 1.0)))
    return {
        "ap": ap,
        "am": am,
        "k": k,
        "kp": kp,
        "k^-1": np.diag(p ** (-n)),
        "kp^-1": np.diag(-(p ** (-(n + 1.0)))),
    }


def mono_matrix(ops, mono):
    """Matrix of the normal-ordered monomial (a+)^m k^r k'^s (a-)^n."""
    m, r, s, n = mono
    dim = ops["k"].shape[0]
    out = np.eye(dim)
    if m:
        out = out @ np.linalg.matrix_power(ops["ap"], m)
    if r:
        out = out @ np.linalg.matrix_power(ops["k" if r > 0 else "k^-1"], abs(r))
    if s:
        out = out @ np.linalg.matrix_power(ops["kp" if s > 0 else "kp^-1"], abs(s))
    if n:
        out = out @ np.linalg.matrix_power(ops["am"], n)
    return out


def site_reps(algebra, dims, q_value):
    """Per-site generator matrices; dims is an int or a per-label dict."""
    return {
        label: fock_ops(param.value(q_value), dims if isinstance(dims, int) else dims[label])
        for label, param in sorted(algebra.sites.items())
    }


def eval_elem(elem, dims, q_value, labels=None, reps=None):
    """Sparse numeric matrix of an algebra element on the site tensor product.

    Sites are ordered by sorted label; the first label varies slowest in
    the tensor basis.  Boundary-symbol terms are not representable here.
    """
    alg = elem.algebra
    if labels is None:
        labels = sorted(alg.sites)
    if reps is None:
        reps = site_reps(alg, dims, q_value)
    total = 1
    for label in labels:
        total *= reps[label]["k"].shape[0]
    out = sp.csr_matrix((total, total))
    for (sites, kflag), coeff in elem.terms.items():
        if kflag is not None:
            raise ValueError("boundary symbol has no finite representation here")
        monos = dict(sites)
        mat = sp.csr_matrix(np.array([[coeff.eval(q_value)]]))
        for label in labels:
            if label in monos:
                local = sp.csr_matrix(mono_matrix(reps[label], monos[label]))
            else:
                local = sp.identity(reps[label]["k"].shape[0], format="csr")
            mat = sp.kron(mat, local, format="csr")
        out = out + mat
    return out


def eval_elem_dense(elem, dims, q_value, labels=None, reps=None):
    """Dense variant of eval_elem for small tensor spaces."""
    return eval_elem(elem, dims, q_value, labels, reps).toarray()


def max_raise(elem):
    """Largest raising power per site over the monomials of an element."""
    out = {}
    for (sites, _), _coeff in elem.terms.items():
        for label, (m, _r, _s, _n) in sites:
            if m > out.get(label, 0):
                out[label] = m
    return out


def safe_columns(labels, dims, caps):
    """Flat tensor-basis indices whose occupations satisfy the per-site caps."""
    idx = [0]
    for label in labels:
        d = dims if isinstance(dims, int) else dims[label]
        cap = min(caps.get(label, d - 1), d - 1)
        idx = [base * d + n for base in idx for n in range(cap + 1)]
    return np.array(idx, dtype=int)


def _padded_setup(T, dim, q_value, pad_factor):
    """Evaluation dims with headroom for pad_factor successive applications."""
    labels = sorted(T.algebra.sites)
    raises = {}
    for _, e in T.items():
        for label, w in max_raise(e).items():
            raises[label] = max(raises.get(label, 0), w)
    dims = {lbl: dim + pad_factor * raises.get(lbl, 0) for lbl in labels}
    reps = site_reps(T.algebra, dims, q_value)
    cols = safe_columns(labels, dims, {lbl: dim - 1 for lbl in labels})
    return labels, dims, reps, cols


# -- transfer-coefficient numerics ---------------------------------------------


def transfer_commutator_residual(T, dim, q_value):
    """Largest relative commutator entry over all coefficient pairs.

    Coefficients are evaluated with enough headroom that the retained
    columns (occupations < dim at every site) carry exact matrix
    elements of the untruncated representation.
    """
    labels, dims, reps, cols = _padded_setup(T, dim, q_value, pad_factor=2)
    mats = [eval_elem(e, dims, q_value, labels, reps) for _, e in T.items()]
    worst = 0.0
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            ab = (mats[a] @ mats[b][:, cols]).toarray()
            ba = (mats[b] @ mats[a][:, cols]).toarray()
            scale = max(1.0, np.abs(ab).max(), np.abs(ba).max())
            worst = max(worst, np.abs(ab - ba).max() / scale)
    return float(worst)


def coeff_gram(T, dim, q_value):
    """Gram matrix of the exact-column coefficient vectorizations.

    Returns (gram, overlaps, id_norm_sq) where overlaps[a] is the inner
    product of coefficient a with the identity vectorization.
    """
    labels, dims, reps, cols = _padded_setup(T, dim, q_value, pad_factor=1)
    mats = [eval_elem(e, dims, q_value, labels, reps)[:, cols] for _, e in T.items()]
    ident = eval_elem(T.algebra.one(), dims, q_value, labels, reps)[:, cols]
    n = len(mats)
    gram = np.zeros((n, n))
    overlaps = np.zeros(n)
    for a in range(n):
        overlaps[a] = (mats[a].multiply(ident)).sum()
        for b in range(a, n):
            gram[a, b] = gram[b, a] = (mats[a].multiply(mats[b])).sum()
    return gram, overlaps, float((ident.multiply(ident)).sum())


def independent_count(T, dim, q_value, tol=1e-8):
    """Rank of the coefficient span modulo the identity component."""
    gram, overlaps, id_nsq = coeff_gram(T, dim, q_value)
    reduced = gram - np.outer(overlaps, overlaps) / id_nsq
    norms = np.sqrt(np.clip(np.diag(reduced), 0.0, None))
    keep = norms > tol * max(1.0, norms.max() if len(norms) else 1.0)
    reduced = reduced[np.ix_(keep, keep)]
    scale = norms[keep]
    reduced = reduced / scale[:, None] / scale[None, :]
    eig = np.linalg.eigvalsh(reduced)
    return int(np.sum(eig > tol * max(1.0, eig.max() if len(eig) else 1.0)))


# -- similarity of the two layer orderings --------------------------------------


_L_GRID = [
    [("", 1), None, None, None],
    [None, ("kp", 1), ("am", 1), None],
    [None, ("ap", 1), ("k", 1), None],
    [None, None, None, ("", 1)],
]

_M_GRID = [
    [("k", 1), None, None, ("am", 1)],
    [None, ("", 1), None, None],
    [None, None, ("", 1), None],
    [("ap", 1), None, None, ("kp", 1)],
]


def _embed_pair_numeric(grid, ops, pos_a, pos_b, n_aux, fock_dim_total):
    """Big matrix of a 4x4 pair vertex on aux spaces (pos_a, pos_b)."""
    n_states = 2 ** n_aux
    big = np.zeros((n_states * fock_dim_total, n_states * fock_dim_total))
    eye = np.eye(fock_dim_total)
    for s in range(n_states):
        bits = [(s >> (n_aux - 1 - t)) & 1 for t in range(n_aux)]
        for ia in (0, 1):
            for ib in (0, 1):
                cell = grid[2 * bits[pos_a] + bits[pos_b]][2 * ia + ib]
                if cell is None:
                    continue
                name, _ = cell
                op = eye if name == "" else ops[name]
                b2 = list(bits)
                b2[pos_a], b2[pos_b] = ia, ib
                s2 = 0
                for v in b2:
                    s2 = 2 * s2 + v
                big[
                    s * fock_dim_total : (s + 1) * fock_dim_total,
                    s2 * fock_dim_total : (s2 + 1) * fock_dim_total,
                ] += op
    return big


def m_trace_matrix(N, q_value, x, dim, ascending=False, tail_tol=None):
    """Scalar aux matrix from tracing corner vertices over one oscillator.

    One (-q)-flavoured oscillator is shared by corner vertices M placed
    on the straight aux pairs (b_a, g_a); the trace of k^x times their
    product (a = N leftmost down to a = 0, or the mirror order when
    ascending) gives a matrix of size 2^{2(N+1)} mixing the auxiliary
    spaces only.  The trace keeps occupations up to dim - 2 so that
    every internal matrix element is exact; with tail_tol set, the
    dropped geometric tail must stay below it.
    """
    n1 = N + 1
    n_aux = 2 * n1
    ops = fock_ops(-q_value, dim)
    order = range(N + 1) if ascending else range(N, -1, -1)
    factors = [
        _embed_pair_numeric(_M_GRID, ops, a, n1 + a, n_aux, dim) for a in order
    ]
    prod = factors[0]
    for f in factors[1:]:
        prod = prod @ f
    kx = np.linalg.matrix_power(ops["k"], x)
    n_states = 2 ** n_aux
    out = np.zeros((n_states, n_states))
    last_level = 0.0
    for s in range(n_states):
        for s2 in range(n_states):
            block = kx @ prod[s * dim : (s + 1) * dim, s2 * dim : (s2 + 1) * dim]
            diag = np.diag(block)
            out[s, s2] = diag[: dim - 1].sum()
            last_level = max(last_level, abs(diag[dim - 2]))
    if tail_tol is not None:
        ratio = abs(q_value) ** x
        tail = last_level * ratio / (1.0 - ratio)
        if tail >= tail_tol:
            raise ValueError(
                f"trace tail estimate {tail:.3e} exceeds {tail_tol:.1e}; "
                "increase the trace dimension"
            )
    return out


def _halfplane_monodromies_N1(q_value, phys_dim):
    """Numeric V.B0.B1.U and U.B0.B1.V monodromies of the one-row half-plane."""
    labels = ["p0", "p1", "w0_1"]
    reps = {
        "p0": fock_ops(P_Q2.value(q_value), phys_dim),
        "p1": fock_ops(P_Q2.value(q_value), phys_dim),
        "w0_1": fock_ops(P_Q.value(q_value), phys_dim),
    }
    fock_total = phys_dim ** 3
    eye = np.eye(phys_dim)

    def lift(label, name):
        mat = np.array([[1.0]])
        for lbl in labels:
            mat = np.kron(mat, reps[lbl][name] if lbl == label else eye)
        return mat

    def vertex(label, pos_a, pos_b):
        ops = {name: lift(label, name) for name in ("k", "kp", "ap", "am")}
        return _embed_pair_numeric(_L_GRID, ops, pos_a, pos_b, 4, fock_total)

    # aux order (b0, b1, g0, g1); boundary factors commute with the traced
    # corner vertices, so they sit outside the layer pair here
    V = vertex("w0_1", 1, 2)
    U = vertex("w0_1", 0, 3)
    B0 = vertex("p0", 0, 2)
    B1 = vertex("p1", 1, 3)
    t_vub = V @ U @ B0 @ B1
    t_uvb = U @ V @ B0 @ B1
    caps = {"p0": phys_dim - 2, "p1": phys_dim - 2, "w0_1": phys_dim - 3}
    cols_f = safe_columns(labels, phys_dim, caps)
    cols = (np.arange(16)[:, None] * fock_total + cols_f[None, :]).ravel()
    return t_vub, t_uvb, cols, fock_total


def similarity_residual(N, q_value, trace_dim, x, reverse=False, phys_dim=5):
    """Relative defect of MT . T_VUB = T_UVB . MT' on exact columns.

    MT is the corner-vertex trace in descending pair order and MT' the
    ascending-order mirror, matching the reversal of the layer product.
    The reverse flag swaps the two (the inconsistent pairing), which
    breaks the similarity and serves as the negative control.
    """
    if N != 1:
        raise ValueError("the explicit similarity check is implemented for N = 1")
    mt_left = m_trace_matrix(N, q_value, x, trace_dim, ascending=reverse)
    mt_right = m_trace_matrix(N, q_value, x, trace_dim, ascending=not reverse)
    t_vub, t_uvb, cols, fock_total = _halfplane_monodromies_N1(q_value, phys_dim)
    eye = np.eye(fock_total)
    lhs = (np.kron(mt_left, eye) @ t_vub)[:, cols]
    rhs = (t_uvb @ np.kron(mt_right, eye))[:, cols]
    scale = max(1.0, np.abs(lhs).max(), np.abs(rhs).max())
    return float(np.abs(lhs - rhs).max() / scale)


def e_weight_commutation_residual(N, q_value, x, trace_dim, lam=1.7, mu=0.3):
    """Relative defect of MT against the diagonal spectral weights."""
    n1 = N + 1
    mt = m_trace_matrix(N, q_value, x, trace_dim)
    n_states = 2 ** (2 * n1)
    w = np.empty(n_states)
    for s in range(n_states):
        bits = [(s >> (2 * n1 - 1 - t)) & 1 for t in range(2 * n1)]
        w[s] = lam ** sum(bits[:n1]) * mu ** sum(bits[n1:])
    diff = mt * w[None, :] - w[:, None] * mt
    return float(np.abs(diff).max() / max(1.0, np.abs(mt).max()))


# -- intertwiner solvers ---------------------------------------------------------


def _x_block_numeric(ops_by_name, c1, c2, n_comp, fock_total):
    """Numeric direct-sum Korepanov vertex: 2x2 block on components (c1, c2)."""
    big = np.zeros((n_comp * fock_total, n_comp * fock_total))
    eye = np.eye(fock_total)
    for i in range(n_comp):
        if i not in (c1, c2):
            big[i * fock_total : (i + 1) * fock_total,
                i * fock_total : (i + 1) * fock_total] = eye

    def put(i, j, mat):
        big[i * fock_total : (i + 1) * fock_total,
            j * fock_total : (j + 1) * fock_total] = mat

    put(c1, c1, ops_by_name["k"])
    put(c1, c2, ops_by_name["ap"])
    put(c2, c1, ops_by_name["am"])
    put(c2, c2, ops_by_name["kp"])
    return big


def _lift_site(reps, labels, label, dim):
    eye = np.eye(dim)
    out = {}
    for name in ("k", "kp", "ap", "am"):
        mat = np.array([[1.0]])
        for lbl in labels:
            mat = np.kron(mat, reps[lbl][name] if lbl == label else eye)
        out[name] = mat
    return out


def _nullspace(system, rtol=1e-10):
    _u, svals, vt = np.linalg.svd(system, full_matrices=True)
    cutoff = rtol * (svals[0] if len(svals) else 1.0)
    rank = int(np.sum(svals > cutoff))
    null_dim = vt.shape[0] - rank
    gap = float(svals[rank - 1]) if rank else 0.0
    small = float(svals[rank]) if rank < len(svals) else 0.0
    return vt[rank:].conj(), null_dim, small, gap


def _normalize_vec(v):
    i = int(np.argmax(np.abs(v)))
    return v / v[i]


def _pair_residual(op, lhs_blocks, rhs_blocks, cols):
    worst = 0.0
    for a, b in zip(lhs_blocks, rhs_blocks):
        left = (op @ a)[:, cols]
        right = (b @ op)[:, cols]
        scale = max(1.0, np.abs(left).max(), np.abs(right).max())
        worst = max(worst, np.abs(left - right).max() / scale)
    return worst


def _blocks(big, n_comp, fock_total):
    out = []
    for i in range(n_comp):
        for j in range(n_comp):
            blk = big[i * fock_total : (i + 1) * fock_total,
                      j * fock_total : (j + 1) * fock_total]
            out.append(blk)
    return out



def _box_states(n_sites, dim, dim_eval):
    """Occupation tuples at the evaluation dim, with the solve box marked.

    Returns (states, flat_of, box) where states follow the flat tensor
    order (first site slowest) at dim_eval and box lists the states whose
    occupations all fit below the solve truncation.
    """
    states = list(itertools.product(range(dim_eval), repeat=n_sites))
    flat_of = {s: i for i, s in enumerate(states)}
    box = [s for s in states if max(s) <= dim - 1]
    return states, flat_of, box


def _closed_sectors(box, charge_fn, dim, n_sites):
    """Charge sectors of the box whose full state set lies inside the box.

    An intertwiner restricted to such a sector is an exact finite block of
    the untruncated operator.  Membership is probed over a generous
    occupation range; the charge functions in use bound every sector member
    well below 4*dim per site.
    """
    box_set = set(box)
    charges = {charge_fn(s) for s in box}
    closed = set(charges)
    for s in itertools.product(range(4 * dim), repeat=n_sites):
        c = charge_fn(s)
        if c in closed and s not in box_set:
            closed.discard(c)
    return closed


def _sector_unknowns(box, charge_fn, closed):
    """Unknown matrix elements of a charge-preserving operator on the box."""
    sectors = {}
    for s in box:
        c = charge_fn(s)
        if c in closed:
            sectors.setdefault(c, []).append(s)
    unknowns = []
    unk_index = {}
    for _, members in sorted(sectors.items()):
        for r in members:
            for c in members:
                unk_index[(r, c)] = len(unknowns)
                unknowns.append((r, c))
    return sectors, unknowns, unk_index


def _sector_system(lhs_blocks, rhs_blocks, dim, dim_eval, n_sites, charge_fn):
    """Linear system for a charge-preserving intertwiner K.lhs = rhs.K.

    The operator is parametrized on equal-charge pairs of box states,
    restricted to sectors entirely contained in the box; on those sectors the
    truncated problem agrees with the untruncated one.  Every matrix element
    of the configuration products between enumerated states is exact (each
    entry multiplies at most one generator per site), so all equations with
    both row and column in closed sectors are relations of the untruncated
    model and the true intertwiner block lies in the nullspace.
    """
    states, flat_of, box = _box_states(n_sites, dim, dim_eval)
    closed = _closed_sectors(box, charge_fn, dim, n_sites)
    sectors, unknowns, unk_index = _sector_unknowns(box, charge_fn, closed)
    kept = [s for s in box if charge_fn(s) in closed]
    rows = []
    for a, b in zip(lhs_blocks, rhs_blocks):
        for v in kept:
            vf = flat_of[v]
            sec_v = charge_fn(v)
            for r in kept:
                rf = flat_of[r]
                sec_r = charge_fn(r)
                row = np.zeros(len(unknowns))
                hit = False
                for s in sectors[sec_r]:
                    c = a[flat_of[s], vf]
                    if c != 0.0:
                        row[unk_index[(r, s)]] += c
                        hit = True
                for s in sectors[sec_v]:
                    c = b[rf, flat_of[s]]
                    if c != 0.0:
                        row[unk_index[(s, v)]] -= c
                        hit = True
                if hit:
                    rows.append(row)
    system = np.array(rows) if rows else np.zeros((0, len(unknowns)))
    return system, unknowns, box


def _system_residual(system, vec):
    """Largest equation violation relative to the equation magnitudes."""
    if system.shape[0] == 0:
        return float("inf")
    resid = np.abs(system @ vec).max()
    scale = max(1.0, (np.abs(system) @ np.abs(vec)).max())
    return float(resid / scale)


def _assemble_operator(unknowns, vec, dim, n_sites):
    """Dense operator on the dim**n_sites box from the unknown vector."""
    fock_total = dim ** n_sites
    weights = [dim ** (n_sites - 1 - i) for i in range(n_sites)]
    flat = lambda s: sum(w * n for w, n in zip(weights, s))
    op = np.zeros((fock_total, fock_total))
    for (r, c), val in zip(unknowns, vec):
        op[flat(r), flat(c)] = val
    return op


def _normalize_vacuum(unknowns, vec, n_sites):
    vac = (0,) * n_sites
    pivot = None
    for i, (r, c) in enumerate(unknowns):
        if r == vac and c == vac:
            pivot = i
            break
    if pivot is not None and abs(vec[pivot]) > 1e-12 * np.abs(vec).max():
        return vec / vec[pivot]
    return _normalize_vec(vec)


def solve_r(dim=3, q_value=0.6):
    """Three-oscillator vertex map from its direct-sum intertwining relation.

    Solves R . X^(1)_ab X^(2)_ac X^(3)_bc = (reversed) . R.  The product
    conserves the pair charges n1+n2 and n2+n3, so R is parametrized as
    block diagonal over the joint charge sectors of the truncation box and
    the linear system keeps only equations free of truncation artifacts
    (checked against an enlarged evaluation box).  The solution is verified
    against the tensor (L-form) version of the same relation.
    """
    labels = ["o1", "o2", "o3"]
    dim_eval = dim + 1
    reps = {lbl: fock_ops(P_Q2.value(q_value), dim_eval) for lbl in labels}
    fock_eval = dim_eval ** 3
    site_ops = {lbl: _lift_site(reps, labels, lbl, dim_eval) for lbl in labels}

    x1 = _x_block_numeric(site_ops["o1"], 0, 1, 3, fock_eval)
    x2 = _x_block_numeric(site_ops["o2"], 0, 2, 3, fock_eval)
    x3 = _x_block_numeric(site_ops["o3"], 1, 2, 3, fock_eval)
    s_left = x1 @ x2 @ x3
    s_right = x3 @ x2 @ x1

    charge = lambda s: (s[0] + s[1], s[1] + s[2])
    system, unknowns, _box = _sector_system(
        _blocks(s_left, 3, fock_eval), _blocks(s_right, 3, fock_eval),
        dim, dim_eval, 3, charge,
    )
    null, null_dim, small_sv, gap = _nullspace(system)
    out = {
        "nullspace_dim": null_dim,
        "smallest_kept_sv": gap,
        "largest_dropped_sv": small_sv,
        "n_unknowns": len(unknowns),
        "n_equations": system.shape[0],
    }
    if null_dim < 1:
        out["residual_direct_sum"] = float("inf")
        out["residual_tensor"] = float("inf")
        return out
    vec = _normalize_vacuum(unknowns, null[0], 3)
    out["vertex"] = _assemble_operator(unknowns, vec, dim, 3)
    out["residual_direct_sum"] = _system_residual(system, vec)
    idx = sorted({sum(w * n for w, n in zip((dim * dim, dim, 1), r))
                  for r, _ in unknowns})
    out["condition_number"] = float(
        np.linalg.cond(out["vertex"][np.ix_(idx, idx)]))

    l1 = _embed_pair_numeric(_L_GRID, site_ops["o1"], 0, 1, 3, fock_eval)
    l2 = _embed_pair_numeric(_L_GRID, site_ops["o2"], 0, 2, 3, fock_eval)
    l3 = _embed_pair_numeric(_L_GRID, site_ops["o3"], 1, 2, 3, fock_eval)
    t_left = l1 @ l2 @ l3
    t_right = l3 @ l2 @ l1
    system_t, unknowns_t, _ = _sector_system(
        _blocks(t_left, 8, fock_eval), _blocks(t_right, 8, fock_eval),
        dim, dim_eval, 3, charge,
    )
    assert unknowns_t == unknowns
    out["residual_tensor"] = _system_residual(system_t, vec)
    return out


def solve_k(dim=2, q_value=0.6, boundary_param=None):
    """Boundary exchange operator from the identified six-vertex relation.

    The two boundary oscillators a, b carry the q flavour and the two bulk
    ones 1, 2 the q^2 flavour; the operator K on their joint number basis
    intertwines the left and right identified configurations.  The product
    conserves the charges n1+n2+nb and n1-n2+na, so K is parametrized over
    the joint charge sectors of the truncation box, with equations filtered
    for truncation artifacts as in solve_r.  Passing a different
    boundary_param (flavour of a, b) serves as a negative control.
    """
    labels = ["o1", "o2", "oa", "ob"]
    if boundary_param is None:
        boundary_param = P_Q
    flavours = {"o1": P_Q2, "o2": P_Q2, "oa": boundary_param,
                "ob": boundary_param}
    dim_eval = dim + 1
    reps = {lbl: fock_ops(flavours[lbl].value(q_value), dim_eval)
            for lbl in labels}
    fock_eval = dim_eval ** 4
    site_ops = {lbl: _lift_site(reps, labels, lbl, dim_eval) for lbl in labels}

    def x(lbl, c1, c2):
        return _x_block_numeric(site_ops[lbl], c1, c2, 4, fock_eval)

    factors = [
        x("o2", BETA, GAMMA),
        x("ob", BETA, DELTA),
        x("ob", ALPHA, GAMMA),
        x("o1", ALPHA, DELTA),
        x("oa", ALPHA, BETA),
        x("oa", GAMMA, DELTA),
    ]
    s_left = factors[0]
    for f in factors[1:]:
        s_left = s_left @ f
    s_right = factors[-1]
    for f in factors[-2::-1]:
        s_right = s_right @ f

    charge = lambda s: (s[0] + s[1] + s[3], s[0] - s[1] + s[2])
    system, unknowns, _box = _sector_system(
        _blocks(s_left, 4, fock_eval), _blocks(s_right, 4, fock_eval),
        dim, dim_eval, 4, charge,
    )
    null, null_dim, small_sv, gap = _nullspace(system)
    out = {
        "nullspace_dim": null_dim,
        "smallest_kept_sv": gap,
        "largest_dropped_sv": small_sv,
        "n_unknowns": len(unknowns),
        "n_equations": system.shape[0],
    }
    if null_dim < 1:
        out["residual"] = float("inf")
        return out
    vec = _normalize_vacuum(unknowns, null[0], 4)
    out["operator"] = _assemble_operator(unknowns, vec, dim, 4)
    out["residual"] = _system_residual(system, vec)
    return out
