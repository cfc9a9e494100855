"""Classical (Poisson) limit of the oscillator lattice.

Commutative per-site generators k, k', a+, a- carry the bracket

    {k#, a+-} = +- n k# a+-,   {a+, a-} = -2n k k',

where the weight n is the power of the site's deformation parameter.  The
coefficients are derived from the first eps-order of the quantum
commutators at q = e^eps and validated by the Casimir property of the
constraint a+ a- - k k' - 1.  The module provides the path-counting
spectral determinant on the torus and on the mirror-identified torus,
involution and Newton-polygon checks, and the numeric refactorization map
of the six-site corner configuration together with its identification and
symplecticity statements.
"""

from __future__ import annotations

import time

import numpy as np
import sympy

from .algebra import quantum_bracket_expansion
from .identities import CheckReport
from .laurent import P_Q, P_Q2

LAM, MU = sympy.symbols("lam mu")

_SYMBOLS = {}


def site_symbols(label):
    """Commutative sympy generators (k, k', a+, a-) of one site."""
    if label not in _SYMBOLS:
        _SYMBOLS[label] = sympy.symbols(
            f"k_{label} kp_{label} ap_{label} am_{label}")
    return _SYMBOLS[label]


# -- bracket specification -------------------------------------------------------


def derive_bracket(param):
    """Bracket coefficients of one site from the quantum commutators.

    Expands [k, a+] and [a+, a-] to first order in eps at q = e^eps and
    reads off {k, a+} = alpha k a+ and {a+, a-} = beta k k'.  The result is
    validated by checking that the constraint a+ a- - k k' - 1 is a Casimir
    of the induced bracket.
    """
    ka = quantum_bracket_expansion(param, "k", "ap")
    alpha = ka.get((1, 1, 0, 0), 0)
    pm = quantum_bracket_expansion(param, "ap", "am")
    beta = pm.get((0, 1, 1, 0), 0)
    spec = {"n": param.power, "alpha": alpha, "beta": beta}
    label = "_casimir_probe"
    k, kp, ap, am = site_symbols(label)
    casimir = ap * am - k * kp - 1
    for g in (k, kp, ap, am):
        if sympy.expand(poisson_bracket(casimir, g, {label: spec})) != 0:
            raise ValueError("derived bracket does not keep the constraint "
                             "as a Casimir")
    return spec


def _generator_pairs(label, spec):
    k, kp, ap, am = site_symbols(label)
    a = spec["alpha"]
    b = spec["beta"]
    return [
        (k, ap, a * k * ap),
        (k, am, -a * k * am),
        (kp, ap, a * kp * ap),
        (kp, am, -a * kp * am),
        (ap, am, b * k * kp),
    ]


def poisson_bracket(f, g, specs):
    """Leibniz extension of the generator brackets to polynomials.

    specs maps a site label to its bracket coefficients as returned by
    derive_bracket; sites absent from f and g contribute nothing.
    """
    total = sympy.Integer(0)
    for label, spec in specs.items():
        for u, v, w in _generator_pairs(label, spec):
            total += w * (sympy.diff(f, u) * sympy.diff(g, v)
                          - sympy.diff(f, v) * sympy.diff(g, u))
    return sympy.expand(total)


def reduce_onshell(expr, labels):
    """Numerator of expr after eliminating a- by a+ a- = 1 + k k' per site."""
    subs = {}
    for label in labels:
        k, kp, ap, am = site_symbols(label)
        subs[am] = (1 + k * kp) / ap
    num, _den = sympy.fraction(sympy.cancel(sympy.together(expr.subs(subs))))
    return sympy.expand(num)


# -- spectral determinant --------------------------------------------------------


def torus_site_label(i, j, mirror=False):
    """Label of the lattice site (i, j); the mirror identifies (i,j)=(j,i)."""
    if mirror and i > j:
        i, j = j, i
    return f"s{i}_{j}"


def korepanov_det(N, M, mirror=False):
    """Coefficients J_{n, m} of det(I - E XX) on the N x M lattice.

    XX is the (N+M) x (N+M) product of local direct-sum vertices, one per
    lattice site, and E = diag(lam I_N, mu I_M).  Returns a map from the
    exponent pair (n, m) to the coefficient polynomial; J_{0,0} = 1.
    """
    if mirror and N != M:
        raise ValueError("mirror identification requires N = M")
    dim = N + M
    big = sympy.eye(dim)
    for i in range(N):
        for j in range(M):
            k, kp, ap, am = site_symbols(torus_site_label(i, j, mirror))
            x = sympy.eye(dim)
            x[i, i] = k
            x[i, N + j] = ap
            x[N + j, i] = am
            x[N + j, N + j] = kp
            big = big * x
    e = sympy.diag(*([LAM] * N + [MU] * M))
    det = sympy.expand((sympy.eye(dim) - e * big).det(method="berkowitz"))
    poly = sympy.Poly(det, LAM, MU)
    return {(n, m): sympy.expand(c) for (n, m), c in poly.terms()}


def lattice_bracket_specs(N, M, mirror=False, control=False):
    """Per-site bracket weights of the torus or mirror-identified lattice.

    The plain torus carries the long (n = 2) bracket everywhere.  The
    mirror lattice carries the short (n = 1) bracket on the identified bulk
    sites and the long one on the diagonal; the control flag assigns the
    long bracket everywhere on the mirror lattice, which must break the
    involution.
    """
    long_spec = derive_bracket(P_Q2)
    short_spec = derive_bracket(P_Q)
    specs = {}
    for i in range(N):
        for j in range(M):
            label = torus_site_label(i, j, mirror)
            if mirror and i != j and not control:
                specs[label] = short_spec
            else:
                specs[label] = long_spec
    return specs


def check_involution(N=2, M=2, mirror=False, control=False):
    """All pairwise brackets of the J_{n, m} vanish on the constraint surface.

    Exact polynomial computation; the bracket of each coefficient pair is
    reduced by a+ a- = 1 + k k' per site and must cancel identically.  The
    control assigns the long bracket to the identified bulk sites, which is
    expected to leave some bracket nonzero.
    """
    t0 = time.perf_counter()
    coeffs = korepanov_det(N, M, mirror)
    specs = lattice_bracket_specs(N, M, mirror, control)
    labels = list(specs)
    items = [v for key, v in sorted(coeffs.items()) if key != (0, 0)]
    worst = sympy.Integer(0)
    n_bad = 0
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            br = poisson_bracket(items[a], items[b], specs)
            if br == 0:
                continue
            br = reduce_onshell(br, labels)
            if br != 0:
                n_bad += 1
                worst = br
    wall = (time.perf_counter() - t0) * 1000.0
    name = "involution_control" if control else (
        "involution_mirror" if mirror else "involution_torus")
    passed = (n_bad > 0) if control else (n_bad == 0)
    detail = f"{n_bad} nonzero brackets" if n_bad else ""
    return CheckReport(name, {"N": N, "M": M, "mirror": mirror,
                              "control": control},
                       "symbolic", float(n_bad), passed, wall, detail)


# -- Newton polygon --------------------------------------------------------------


def _convex_hull(points):
    """Monotone-chain convex hull of integer points, counterclockwise."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    cross = lambda o, a, b: ((a[0] - o[0]) * (b[1] - o[1])
                             - (a[1] - o[1]) * (b[0] - o[0]))
    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _interior_lattice_points(points):
    hull = _convex_hull(points)
    if len(hull) < 3:
        return 0
    cross = lambda o, a, b: ((a[0] - o[0]) * (b[1] - o[1])
                             - (a[1] - o[1]) * (b[0] - o[0]))
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    count = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            inside = all(cross(hull[i], hull[(i + 1) % len(hull)], (x, y)) > 0
                         for i in range(len(hull)))
            if inside:
                count += 1
    return count


def random_rational_point(rng):
    """Exact rational phase-space values (k, k', a+, a-) on the constraint."""
    t = sympy.Rational(int(rng.integers(2, 9)), int(rng.integers(9, 17)))
    s = sympy.Rational(int(rng.integers(2, 9)), int(rng.integers(2, 9)))
    k = t
    kp = -t
    ap = s
    am = (1 + k * kp) / ap
    return (k, kp, ap, am)


def genus_check(N, M, seed=1):
    """Interior lattice points of the Newton polygon equal (N-1)(M-1).

    The spectral polynomial is evaluated at a random rational phase point,
    so the count reflects the generic curve.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    dim = N + M
    big = sympy.eye(dim)
    for i in range(N):
        for j in range(M):
            k, kp, ap, am = random_rational_point(rng)
            x = sympy.eye(dim)
            x[i, i] = k
            x[i, N + j] = ap
            x[N + j, i] = am
            x[N + j, N + j] = kp
            big = big * x
    e = sympy.diag(*([LAM] * N + [MU] * M))
    det = sympy.expand((sympy.eye(dim) - e * big).det(method="berkowitz"))
    poly = sympy.Poly(det, LAM, MU)
    support = [key for key, c in poly.terms() if c != 0]
    interior = _interior_lattice_points(support)
    expected = (N - 1) * (M - 1)
    wall = (time.perf_counter() - t0) * 1000.0
    return CheckReport("genus", {"N": N, "M": M}, "symbolic",
                       float(abs(interior - expected)), interior == expected,
                       wall, f"interior={interior} expected={expected}")


# -- refactorization map ---------------------------------------------------------

_CORNER_LABELS = ["o1", "o2", "oa", "oa2", "ob", "ob2"]
_IDENT_LABELS = ["o1", "o2", "oa", "ob"]
_AUX = {"alpha": 0, "beta": 1, "gamma": 2, "delta": 3}

# factor order of the left and right corner configurations; each entry is
# (site label, upper aux component, lower aux component)
_ORDER_L = [("o2", 1, 2), ("ob", 1, 3), ("ob2", 0, 2),
            ("o1", 0, 3), ("oa", 0, 1), ("oa2", 2, 3)]
_ORDER_R = [("oa", 0, 1), ("oa2", 2, 3), ("o1", 0, 3),
            ("ob", 1, 3), ("ob2", 0, 2), ("o2", 1, 2)]


def _x_classical(values, c1, c2):
    k, kp, ap, am = values
    m = sympy.eye(4)
    m[c1, c1] = k
    m[c1, c2] = ap
    m[c2, c1] = am
    m[c2, c2] = kp
    return m


def _corner_matrix(order):
    m = sympy.eye(4)
    for label, c1, c2 in order:
        m = m * _x_classical(site_symbols(label), c1, c2)
    return m


_FUNC_CACHE = {}


def _refac_funcs():
    """Lambdified residual and Jacobian of the six-site refactorization.

    Unknowns: 24 primed site values.  Equations: the 16 entries of
    s_R(primed) minus a target matrix, plus per site the two Casimir
    conditions a+ a- - k k' = d and k' = c k with the values d, c taken
    from the input point (the map preserves each site's Casimirs; fixing
    them pins the otherwise underdetermined matrix equality).
    """
    if "refac" in _FUNC_CACHE:
        return _FUNC_CACHE["refac"]
    variables = [s for lbl in _CORNER_LABELS for s in site_symbols(lbl)]
    targets = sympy.symbols("t0:16")
    casimirs = sympy.symbols("d0:6")
    ratios = sympy.symbols("c0:6")
    s_right = _corner_matrix(_ORDER_R)
    eqs = [s_right[i, j] - targets[4 * i + j]
           for i in range(4) for j in range(4)]
    for idx, lbl in enumerate(_CORNER_LABELS):
        k, kp, ap, am = site_symbols(lbl)
        eqs.append(ap * am - k * kp - casimirs[idx])
        eqs.append(kp - ratios[idx] * k)
    f_mat = sympy.Matrix(eqs)
    j_mat = f_mat.jacobian(variables)
    args = (variables, targets, casimirs, ratios)
    funcs = (sympy.lambdify(args, f_mat, "numpy"),
             sympy.lambdify(args, j_mat, "numpy"),
             sympy.lambdify((variables,), _corner_matrix(_ORDER_L), "numpy"))
    _FUNC_CACHE["refac"] = funcs
    return funcs


def _damped_newton(f_fun, j_fun, x0, tol=1e-13, max_iter=200):
    x = np.asarray(x0, dtype=float).copy()
    f = f_fun(x).ravel()
    for _ in range(max_iter):
        if np.abs(f).max() < tol:
            break
        step = np.linalg.lstsq(np.asarray(j_fun(x), dtype=float), f,
                               rcond=None)[0]
        lam = 1.0
        for _ in range(50):
            x_new = x - lam * step
            f_new = f_fun(x_new).ravel()
            if np.abs(f_new).max() < np.abs(f).max():
                break
            lam *= 0.5
        x, f = x_new, f_new
    return x, float(np.abs(f).max())


def random_phase_point(rng):
    """Numeric on-shell site values (k, k', a+, a-) with k'/k = -1."""
    t = rng.uniform(0.2, 0.8)
    s = rng.uniform(0.5, 1.5)
    return np.array([t, -t, s, (1.0 - t * t) / s])


def refactorize(point):
    """Primed six-site point with s_R(primed) = s_L(point).

    point maps the six corner labels to (k, k', a+, a-) quadruples; the
    damped Newton iteration is seeded at the unprimed values and keeps each
    site on its constraint and central-ratio Casimirs.  Returns the primed
    point and the final residual.
    """
    f_fun, j_fun, sl_fun = _refac_funcs()
    x0 = np.concatenate([np.asarray(point[lbl], float)
                         for lbl in _CORNER_LABELS])
    x, res = _solve_corner(f_fun, j_fun, sl_fun, x0)
    primed = {lbl: x[4 * i: 4 * i + 4]
              for i, lbl in enumerate(_CORNER_LABELS)}
    return primed, res


def _solve_corner(f_fun, j_fun, sl_fun, x0):
    target = np.asarray(sl_fun(x0), dtype=float).ravel()
    casimirs = np.array([x0[4 * i + 2] * x0[4 * i + 3]
                         - x0[4 * i] * x0[4 * i + 1] for i in range(6)])
    ratios = np.array([x0[4 * i + 1] / x0[4 * i] for i in range(6)])
    return _damped_newton(
        lambda v: f_fun(v, target, casimirs, ratios).ravel(),
        lambda v: j_fun(v, target, casimirs, ratios), x0)


def check_refactorization(n_points=20, seed=1):
    """s_R at the mapped point reproduces s_L at the input, 20 random points."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_points):
        point = {lbl: random_phase_point(rng) for lbl in _CORNER_LABELS}
        _primed, res = refactorize(point)
        worst = max(worst, res)
    wall = (time.perf_counter() - t0) * 1000.0
    return CheckReport("refactorization", {"points": n_points, "seed": seed},
                       "numeric", worst, worst < 1e-12, wall)


def check_statement_3_1(n_points=20, seed=1, control=False):
    """Identified inputs refactorize to identified outputs.

    With the primed-site seed equal to an input whose two corner copies
    agree (a' = a, b' = b), the images of the copies coincide.  The control
    feeds a non-identified input, for which the images must differ.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst = 0.0 if not control else float("inf")
    for _ in range(n_points):
        point = {lbl: random_phase_point(rng) for lbl in _IDENT_LABELS}
        point["oa2"] = point["oa"].copy()
        point["ob2"] = point["ob"].copy()
        if control:
            point["oa2"] = random_phase_point(rng)
            point["ob2"] = random_phase_point(rng)
        primed, res = refactorize(point)
        gap = max(np.abs(primed["oa"] - primed["oa2"]).max(),
                  np.abs(primed["ob"] - primed["ob2"]).max())
        worst = min(worst, gap) if control else max(worst, gap)
        if res > 1e-10:
            worst = float("inf")
    wall = (time.perf_counter() - t0) * 1000.0
    name = "statement31_control" if control else "statement31"
    passed = (worst > 1e-3) if control else (worst < 1e-9)
    return CheckReport(name, {"points": n_points, "seed": seed,
                              "control": control},
                       "numeric", worst, passed, wall)


def identified_map(values):
    """The identified refactorization as a map of 16 site coordinates.

    Embeds the four identified sites into the six-site configuration with
    the corner copies equal, solves the Casimir-pinned refactorization, and
    projects back onto one copy.  The matrix equality alone leaves a
    three-parameter ambiguity on the identified coordinates, so the
    Casimir conditions of the six-site solve are what make this a map.
    """
    f_fun, j_fun, sl_fun = _refac_funcs()
    v = np.asarray(values, dtype=float)
    order = {lbl: i for i, lbl in enumerate(_IDENT_LABELS)}
    source = ["o1", "o2", "oa", "oa", "ob", "ob"]
    x0 = np.concatenate([v[4 * order[lbl]: 4 * order[lbl] + 4]
                         for lbl in source])
    x, res = _solve_corner(f_fun, j_fun, sl_fun, x0)
    keep = [0, 1, 2, 4]
    out = np.concatenate([x[4 * i: 4 * i + 4] for i in keep])
    return out, res


def bracket_matrix(values, weights):
    """Poisson matrix of the 16 identified coordinates at a numeric point."""
    p = np.zeros((16, 16))
    for i, n in enumerate(weights):
        k, kp, ap, am = values[4 * i: 4 * i + 4]
        o = 4 * i
        p[o + 0, o + 2] = n * k * ap
        p[o + 0, o + 3] = -n * k * am
        p[o + 1, o + 2] = n * kp * ap
        p[o + 1, o + 3] = -n * kp * am
        p[o + 2, o + 3] = -2 * n * k * kp
    return p - p.T


def check_statement_3_2(n_points=10, seed=1, control=False, fd_step=1e-6):
    """Finite-difference symplecticity of the identified map.

    With P the bracket matrix at the input (long bracket on the two bulk
    sites, short bracket on the two identified corner sites) and P' at the
    image, the central-difference Jacobian Jc satisfies Jc P Jc^T = P'.
    The control assigns the long bracket to the corner sites as well,
    which must fail.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    weights = (2, 2, 2, 2) if control else (2, 2, 1, 1)
    worst = 0.0
    for _ in range(n_points):
        x0 = np.concatenate([random_phase_point(rng)
                             for _ in _IDENT_LABELS])
        y0, res = identified_map(x0)
        if res > 1e-10:
            worst = float("inf")
            break
        jac = np.zeros((16, 16))
        for i in range(16):
            xp = x0.copy()
            xp[i] += fd_step
            xm = x0.copy()
            xm[i] -= fd_step
            jac[:, i] = (identified_map(xp)[0]
                         - identified_map(xm)[0]) / (2 * fd_step)
        err = np.abs(jac @ bracket_matrix(x0, weights) @ jac.T
                     - bracket_matrix(y0, weights)).max()
        worst = max(worst, err)
    wall = (time.perf_counter() - t0) * 1000.0
    name = "statement32_control" if control else "statement32"
    passed = (worst >= 1e-5) if control else (worst < 1e-5)
    return CheckReport(name, {"points": n_points, "seed": seed,
                              "control": control},
                       "numeric", worst, passed, wall)


# -- change of variables demo ----------------------------------------------------


def check_variable_change_demo():
    """Averaging two long-bracket oscillators produces the short bracket.

    Two sites with {a+, a-} = 2(1 - a+ a-) are mixed into symmetric and
    antisymmetric halves; the symmetric pair acquires the bracket
    1 - a+a- - b+b-, and setting the antisymmetric half to zero leaves the
    short bracket 1 - a+a-.
    """
    t0 = time.perf_counter()
    a1p, a1m, a2p, a2m = sympy.symbols("a1p a1m a2p a2m")
    aap, aam, bap, bam = sympy.symbols("aap aam bap bam")

    def bracket(f, g):
        total = sympy.Integer(0)
        for up, um in ((a1p, a1m), (a2p, a2m)):
            w = 2 * (1 - up * um)
            total += w * (sympy.diff(f, up) * sympy.diff(g, um)
                          - sympy.diff(f, um) * sympy.diff(g, up))
        return sympy.expand(total)

    sub_new = {a1p: aap + bap, a1m: aam + bam,
               a2p: aap - bap, a2m: aam - bam}
    mix = {
        "aa": (sympy.Rational(1, 2) * (a1p + a2p),
               sympy.Rational(1, 2) * (a1m + a2m)),
        "bb": (sympy.Rational(1, 2) * (a1p - a2p),
               sympy.Rational(1, 2) * (a1m - a2m)),
    }
    got_aa = sympy.expand(bracket(*[v for v in
                                    (mix["aa"][0], mix["aa"][1])]).subs(sub_new))
    got_bb = sympy.expand(bracket(mix["bb"][0], mix["bb"][1]).subs(sub_new))
    want = sympy.expand(1 - aap * aam - bap * bam)
    reduced = got_aa.subs({bap: 0, bam: 0})
    ok = (sympy.expand(got_aa - want) == 0
          and sympy.expand(got_bb - want) == 0
          and sympy.expand(reduced - (1 - aap * aam)) == 0)
    wall = (time.perf_counter() - t0) * 1000.0
    return CheckReport("variable_change", {}, "symbolic",
                       0.0 if ok else 1.0, ok, wall)
