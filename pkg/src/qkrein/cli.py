"""Command-line front end: load matrix files, run one computation, print a JSON report.

Exit codes: 0 on success, 1 on input or usage errors (diagnostic on stderr),
2 on numeric failure (non-convergence, singularity) with the partial report
on stdout.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

from . import __version__
from .errors import ContractViolation, NumericFailure, ScaffoldRefused, SingularMatrixError
from .inner import InnerProductSpace, fundamental_decomposition, isotropic_part
from .io import dumps, load_matrix, matrix_to_json
from .krein import (
    STEIN_MAX_TERMS,
    STEIN_TOL,
    SteinProblem,
    build_scaffold,
    spectral_radius,
    stein_solve_direct,
    stein_solve_series,
    verify_krein,
    verify_sofsof,
)
from .linalg import JACOBI_MAX_SWEEPS, JACOBI_RTOL, RANK_RTOL, hermitian_eig
from .norms import SELF_POLAR_MAX_ITER, SELF_POLAR_TOL, self_polar
from .subspaces import (
    Subspace,
    classify_subspace,
    is_ortho_complemented,
    kansas_check,
    orthogonal_companion,
    restricted_gram,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 is reserved for numeric failure here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _report(command, inputs, results, tolerances, passed=True):
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "tolerances": tolerances,
        "passed": passed,
    }


def _space(args):
    M = load_matrix(args.gram)
    return M, InnerProductSpace(M)


def cmd_eig(args):
    A = load_matrix(args.matrix)
    e = hermitian_eig(A, rtol=args.tol, max_sweeps=args.max_iter)
    results = {"lambdas": e.lambdas, "V": e.V}
    tol = {"jacobi_rtol": args.tol, "max_sweeps": args.max_iter}
    return _report("eig", {"matrix": matrix_to_json(A)}, results, tol)


def cmd_decompose(args):
    M, S = _space(args)
    D = fundamental_decomposition(S)
    k = verify_krein(S)
    results = {
        "signature": list(D.signature),
        "lambdas": D.lambdas,
        "Vplus": D.Vplus,
        "Vminus": D.Vminus,
        "N": D.N,
        "J": D.J,
        "isotropic_part": isotropic_part(S),
        "is_krein": k.is_krein,
        "pontryagin_index": k.pontryagin_index,
        "gram_min_eigen_magnitude": k.gram_min_eigen_magnitude,
    }
    tol = {"neutral_rtol": 1e-9, "krein_rtol": 1e-9}
    return _report("decompose", {"gram": matrix_to_json(M)}, results, tol)


def _subspace(args, S):
    Bm = load_matrix(args.subspace)
    if Bm.rows != S.n:
        raise ContractViolation(
            f"{args.subspace}: subspace basis has {Bm.rows} rows, Gram matrix is {S.n} x {S.n}"
        )
    return Bm, Subspace(S, Bm)


def cmd_classify(args):
    M, S = _space(args)
    Bm, L = _subspace(args, S)
    r = classify_subspace(L)
    results = {
        "tag": r.tag.value,
        "degenerate": r.degenerate,
        "uniform_constant": r.uniform_constant,
        "gram_eigenvalues": r.gram_eigenvalues,
        "dim": L.dim,
        "restricted_gram": restricted_gram(L) if L.dim else None,
    }
    inputs = {"gram": matrix_to_json(M), "subspace": matrix_to_json(Bm)}
    return _report("classify", inputs, results, {"rank_rtol": RANK_RTOL})


def cmd_companion(args):
    M, S = _space(args)
    Bm, L = _subspace(args, S)
    K = orthogonal_companion(L)
    results = {
        "dim": K.dim,
        "basis": K.B if K.dim else None,
        "subspace_dim": L.dim,
    }
    inputs = {"gram": matrix_to_json(M), "subspace": matrix_to_json(Bm)}
    return _report("companion", inputs, results, {"rank_rtol": RANK_RTOL})


def cmd_orthocheck(args):
    M, S = _space(args)
    Bm, L = _subspace(args, S)
    cert = is_ortho_complemented(L)
    kc = kansas_check(L)
    results = {
        "ortho_complemented": cert.ortho_complemented,
        "span_rank": cert.span_rank,
        "n": cert.n,
        "companion_dim": cert.companion_dim,
        "gram_nonsingular": cert.gram_nonsingular,
        "condition_a": kc.condition_a,
        "condition_b": kc.condition_b,
    }
    inputs = {"gram": matrix_to_json(M), "subspace": matrix_to_json(Bm)}
    passed = cert.ortho_complemented == kc.holds
    return _report("orthocheck", inputs, results, {"rank_rtol": RANK_RTOL}, passed)


def cmd_selfpolar(args):
    M, S = _space(args)
    tol = {"tol": args.tol, "max_iter": args.max_iter}
    inputs = {"gram": matrix_to_json(M)}
    try:
        r = self_polar(S, tol=args.tol, max_iter=args.max_iter)
    except NumericFailure as exc:
        partial = {"error": str(exc), "history": exc.history, "last_iterate": exc.partial}
        raise _PartialFailure(_report("selfpolar", inputs, partial, tol, False), exc) from exc
    results = {"Hinf": r.Hinf.H, "iterations": r.iterations, "history": r.history}
    return _report("selfpolar", inputs, results, tol)


def cmd_stein(args):
    A, C, N = load_matrix(args.a), load_matrix(args.c), load_matrix(args.n)
    problem = SteinProblem(A, C, N)
    inputs = {"A": matrix_to_json(A), "C": matrix_to_json(C), "N": matrix_to_json(N)}
    tol = {"series_tol": args.tol, "max_terms": args.max_iter, "sofsof_tol": 1e-8}
    results = {"spectral_radius": spectral_radius(A)}
    try:
        P = stein_solve_series(problem, tol=args.tol, max_terms=args.max_iter)
        results["P"] = P
        results["residual"] = problem.residual(P)
        P_direct = stein_solve_direct(problem)
        results["series_direct_difference"] = (P - P_direct).norm()
    except (NumericFailure, SingularMatrixError) as exc:
        results["error"] = str(exc)
        raise _PartialFailure(_report("stein", inputs, results, tol, False), exc) from exc
    try:
        scaffold = build_scaffold(problem, P)
    except ScaffoldRefused as exc:
        results["scaffold"] = {"refused": True, "P_eigenvalues": exc.eigenvalues}
        return _report("stein", inputs, results, tol, False)
    rep = verify_sofsof(scaffold)
    results["scaffold"] = {
        "refused": False,
        "K_dim": scaffold.K_dim,
        "Jtilde": scaffold.Jtilde,
        "K0_basis": scaffold.K0.B,
    }
    results["sofsof"] = {
        "stein_identity_residual": rep.stein_identity_residual,
        "stein_identity_ok": rep.stein_identity_ok,
        "K0_tag": rep.classification.tag.value,
        "uniform_constant": rep.classification.uniform_constant,
        "uniformly_positive": rep.uniformly_positive,
        "ortho_complemented": rep.ortho.ortho_complemented,
        "companion_dim": rep.companion_dim,
        "companion_gram": rep.companion_gram if rep.companion_dim else None,
        "companion_is_krein": rep.companion_krein.is_krein,
        "companion_signature": list(rep.companion_krein.signature),
    }
    return _report("stein", inputs, results, tol, rep.passed)


class _PartialFailure(Exception):
    def __init__(self, report, cause):
        super().__init__(str(cause))
        self.report = report


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qkrein", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("eig", cmd_eig, "Hermitian eigen-decomposition of a quaternionic matrix.")
    sp.add_argument("--matrix", required=True, help="Hermitian matrix file")
    sp.add_argument("--tol", type=float, default=JACOBI_RTOL,
                    help=f"Jacobi off-diagonal relative threshold (default {JACOBI_RTOL})")
    sp.add_argument("--max-iter", type=int, default=JACOBI_MAX_SWEEPS,
                    help=f"maximum Jacobi sweeps (default {JACOBI_MAX_SWEEPS})")

    sp = add("decompose", cmd_decompose, "Fundamental decomposition of a Gram matrix.")
    sp.add_argument("--gram", required=True, help="Gram matrix file")

    for name, func, help_ in (
        ("classify", cmd_classify, "Definiteness class of a subspace."),
        ("companion", cmd_companion, "Orthogonal companion of a subspace."),
        ("orthocheck", cmd_orthocheck, "Ortho-complementation test of a subspace."),
    ):
        sp = add(name, func, help_)
        sp.add_argument("--gram", required=True, help="Gram matrix file")
        sp.add_argument("--subspace", required=True, help="matrix file whose columns span the subspace")

    sp = add("selfpolar", cmd_selfpolar, "Self-polar norm iteration for a nondegenerate Gram matrix.")
    sp.add_argument("--gram", required=True, help="Gram matrix file")
    sp.add_argument("--tol", type=float, default=SELF_POLAR_TOL,
                    help=f"relative decrement tolerance (default {SELF_POLAR_TOL})")
    sp.add_argument("--max-iter", type=int, default=SELF_POLAR_MAX_ITER,
                    help=f"maximum iterations (default {SELF_POLAR_MAX_ITER})")

    sp = add("stein", cmd_stein, "Solve the Stein equation and verify the Krein scaffold.")
    sp.add_argument("--a", required=True, help="matrix file for A (x by x)")
    sp.add_argument("--c", required=True, help="matrix file for C (y by x)")
    sp.add_argument("--n", required=True, help="matrix file for N (u by x)")
    sp.add_argument("--tol", type=float, default=STEIN_TOL,
                    help=f"series truncation tolerance (default {STEIN_TOL})")
    sp.add_argument("--max-iter", type=int, default=STEIN_MAX_TERMS,
                    help=f"maximum series terms (default {STEIN_MAX_TERMS})")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        # argparse writes help, version and usage text to the process streams
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except _PartialFailure as exc:
        stdout.write(dumps(exc.report))
        print(f"qkrein {args.command}: numeric failure: {exc}", file=stderr)
        return 2
    except (NumericFailure, SingularMatrixError) as exc:
        print(f"qkrein {args.command}: numeric failure: {exc}", file=stderr)
        return 2
    except ContractViolation as exc:
        print(f"qkrein {args.command}: input error: {exc}", file=stderr)
        return 1
    stdout.write(dumps(report))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
