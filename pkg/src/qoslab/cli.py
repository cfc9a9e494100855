"""Command-line front end running the check suites.

Subcommands mirror the library layout: `check` for the operator-matrix
identities and transfer statements, `transfer build` for inspecting a
torus transfer polynomial, `classical` for the Poisson-limit suite,
`solve` for the intertwiner solvers, and `report` for the deterministic
default suite.  Every run emits one record per check and exits with
status 0 iff all selected checks pass.  With --json the same records are
written as a versioned JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys


def _records_to_json(records):
    doc = {"schema": 1,
           "checks": [r.to_dict() for r in
                      sorted(records, key=lambda r: r.name)]}
    return json.dumps(doc, indent=2, sort_keys=True)


def _emit(records, json_path):
    for rec in sorted(records, key=lambda r: r.name):
        tag = "PASS" if rec.passed else "FAIL"
        extra = f" {rec.detail}" if rec.detail else ""
        print(f"{tag} {rec.name} residual={rec.residual:.3e} "
              f"({rec.wall_time_ms:.0f} ms){extra}")
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(_records_to_json(records) + "\n")
    return 0 if all(r.passed for r in records) else 1


def _run_check(args):
    from . import identities, transfer

    records = []
    if args.target == "tetra":
        records.append(identities.check_tetra_ML(control=args.control))
        if args.all:
            records.append(identities.check_tetra_NN(control=args.control))
            records.append(identities.check_tetra_torus(control=args.control))
    elif args.target == "ml-exchange":
        records.append(identities.check_ML_exchange(control=args.control))
    elif args.target == "reflection":
        records.append(identities.check_boundary_reflection(
            control=args.control))
    elif args.target == "cform":
        records.append(identities.check_cform_equivalence(
            control=args.control))
        records.append(identities.check_cform_tensor_blocks())
    elif args.target == "statement22":
        records.append(transfer.check_statement_2_2(
            N=args.n, mode=args.mode, fock_dim=args.dim,
            control=args.control))
    elif args.target == "statement23":
        records.append(transfer.check_statement_2_3(
            N=args.n, mode=args.mode, fock_dim=args.dim, q_value=args.q,
            control=args.control))
    elif args.target == "sign311":
        records.append(transfer.check_sign_relation_3_11(args.n, args.m))
    elif args.target == "similarity224":
        records.append(transfer.check_similarity_2_24(
            N=args.n, q_value=args.q, fock_dim=args.dim or 12, x=args.x,
            control=args.control))
    return _emit(records, args.json)


def _run_transfer_build(args):
    import time

    from .identities import CheckReport
    from .transfer import build_torus_transfer

    t0 = time.perf_counter()
    poly = build_torus_transfer(args.n, args.m)
    support = sorted(poly.coeffs)
    wall = (time.perf_counter() - t0) * 1000.0
    rec = CheckReport("transfer_build", {"N": args.n, "M": args.m},
                      "symbolic", 0.0, True, wall,
                      f"coefficients={len(support)} support={support}")
    return _emit([rec], args.json)


def _run_classical(args):
    from . import classical

    records = []
    if args.target == "involution":
        records.append(classical.check_involution(
            args.n, args.m, mirror=args.mirror, control=args.control))
    elif args.target == "genus":
        records.append(classical.genus_check(args.n, args.m, seed=args.seed))
    elif args.target == "refactor":
        records.append(classical.check_refactorization(seed=args.seed))
    elif args.target == "statements":
        records.append(classical.check_statement_3_1(seed=args.seed))
        records.append(classical.check_statement_3_1(
            n_points=3, seed=args.seed, control=True))
        records.append(classical.check_statement_3_2(seed=args.seed))
        records.append(classical.check_statement_3_2(
            n_points=3, seed=args.seed, control=True))
    elif args.target == "demo":
        records.append(classical.check_variable_change_demo())
    return _emit(records, args.json)


def _run_solve(args):
    import time

    from .focknum import solve_k, solve_r
    from .identities import CheckReport

    t0 = time.perf_counter()
    if args.target == "r":
        out = solve_r(dim=args.dim, q_value=args.q)
        residual = max(out["residual_direct_sum"], out["residual_tensor"])
        tol = 1e-9
    else:
        out = solve_k(dim=args.dim, q_value=args.q)
        residual = out["residual"]
        tol = 1e-10
    wall = (time.perf_counter() - t0) * 1000.0
    passed = out["nullspace_dim"] == 1 and residual < tol
    rec = CheckReport(f"solve_{args.target}",
                      {"dim": args.dim, "q": args.q}, "fock", residual,
                      passed, wall,
                      f"nullspace_dim={out['nullspace_dim']}")
    return _emit([rec], args.json)


def default_suite(seed=1, q_value=0.6):
    """The deterministic default report: every desk-scale primary check."""
    from . import classical, identities, transfer
    from .focknum import solve_k, solve_r
    from .identities import CheckReport
    import time

    records = []
    for fn in (identities.check_tetra_ML, identities.check_tetra_NN,
               identities.check_tetra_torus, identities.check_ML_exchange,
               identities.check_boundary_reflection,
               identities.check_cform_equivalence):
        records.append(fn())
        records.append(fn(control=True))
    records.append(identities.check_cform_tensor_blocks())
    records.append(transfer.check_statement_2_2(N=1))
    records.append(transfer.check_statement_2_3(N=1))
    records.append(transfer.check_similarity_2_24(x=1))
    records.append(transfer.check_similarity_2_24(x=2))
    records.append(transfer.check_sign_relation_3_11(2, 2))
    records.append(classical.check_involution(2, 2))
    records.append(classical.check_involution(2, 2, mirror=True))
    records.append(classical.check_involution(2, 2, mirror=True,
                                              control=True))
    for nm in ((2, 2), (2, 3), (3, 3)):
        records.append(classical.genus_check(*nm, seed=seed))
    records.append(classical.check_refactorization(seed=seed))
    records.append(classical.check_statement_3_1(seed=seed))
    records.append(classical.check_statement_3_2(seed=seed))
    records.append(classical.check_variable_change_demo())

    t0 = time.perf_counter()
    out = solve_r(dim=3, q_value=q_value)
    wall = (time.perf_counter() - t0) * 1000.0
    res = max(out["residual_direct_sum"], out["residual_tensor"])
    records.append(CheckReport("solve_r", {"dim": 3, "q": q_value}, "fock",
                               res, out["nullspace_dim"] == 1 and res < 1e-9,
                               wall, f"nullspace_dim={out['nullspace_dim']}"))
    t0 = time.perf_counter()
    out = solve_k(dim=2, q_value=q_value)
    wall = (time.perf_counter() - t0) * 1000.0
    records.append(CheckReport("solve_k", {"dim": 2, "q": q_value}, "fock",
                               out["residual"],
                               out["nullspace_dim"] == 1
                               and out["residual"] < 1e-10,
                               wall, f"nullspace_dim={out['nullspace_dim']}"))
    return records


def _run_report(args):
    return _emit(default_suite(seed=args.seed, q_value=args.q), args.json)


def _add_common(p):
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--mode", choices=("symbolic", "fock"), default="symbolic")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--q", type=float, default=0.6)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--x", type=int, default=1)
    p.add_argument("--json", metavar="PATH", default=None)
    p.add_argument("--control", action="store_true")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="qoslab",
        description="verification suites for the boundary oscillator "
                    "lattice")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="identity and transfer checks")
    p_check.add_argument("target", choices=(
        "tetra", "ml-exchange", "reflection", "cform", "statement22",
        "statement23", "sign311", "similarity224"))
    p_check.add_argument("--all", action="store_true",
                         help="for tetra: run all three variants")
    _add_common(p_check)
    p_check.set_defaults(func=_run_check)

    p_transfer = sub.add_parser("transfer", help="transfer polynomials")
    sub_t = p_transfer.add_subparsers(dest="target", required=True)
    p_build = sub_t.add_parser("build")
    _add_common(p_build)
    p_build.set_defaults(func=_run_transfer_build)

    p_classical = sub.add_parser("classical", help="Poisson-limit suite")
    sub_c = p_classical.add_subparsers(dest="target", required=True)
    for name in ("involution", "genus", "refactor", "statements", "demo"):
        p = sub_c.add_parser(name)
        _add_common(p)
        p.add_argument("--mirror", action="store_true")
        p.set_defaults(func=_run_classical, target=name)
    p_solve = sub.add_parser("solve", help="intertwiner solvers")
    sub_s = p_solve.add_subparsers(dest="target", required=True)
    for name in ("r", "k"):
        p = sub_s.add_parser(name)
        _add_common(p)
        p.set_defaults(func=_run_solve, target=name)
        p.set_defaults(dim=None)
    p_report = sub.add_parser("report", help="full default suite")
    _add_common(p_report)
    p_report.set_defaults(func=_run_report)

    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "solve" and args.dim is None:
        args.dim = 2
    if getattr(args, "command", None) == "classical":
        if args.target in ("involution", "genus") and args.n == 1:
            args.n, args.m = 2, 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
