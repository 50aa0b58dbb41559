"""``tensordrazin`` command-line front end.

Exit codes: 0 success, 1 verification failed, 2 usage or input error,
3 shape or consistency error, 4 convergence failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import gen_inverse as gi
from . import identities
from .errors import (
    CandidateInvalid,
    ConvergenceFailure,
    Diverged,
    Inconsistent,
    IndexNotOne,
    NotConvergent,
    ShapeMismatch,
    Unsupported,
    ZeroDiagonal,
    ZeroTensor,
)
from .poisson import PoissonSpec, consistent_rhs, generate
from .solvers import drazin_solve, gauss_seidel, jacobi, spectral_radius
from .tensor_core import DenseTensor, norm
from .tensor_io import read_tensor, write_residual_csv, write_tensor
from .weighted import WeightedPair, verify_w_drazin, w_drazin

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_SHAPE, EXIT_CONVERGENCE = 0, 1, 2, 3, 4
VERIFY_TOL = 1e-8

_SHAPE_ERRORS = (ShapeMismatch, Inconsistent, IndexNotOne, ZeroTensor, CandidateInvalid, ZeroDiagonal, Unsupported)
_CONVERGENCE_ERRORS = (ConvergenceFailure, Diverged, NotConvergent)


def _emit(key: str, value) -> None:
    print(f"{key}: {value}")


def _load(path: str) -> DenseTensor:
    return read_tensor(path)


def cmd_generate(args) -> int:
    if args.what == "poisson":
        t = generate(PoissonSpec(args.dim, args.n, args.bc))
    else:
        t = consistent_rhs(_load(args.input), seed=args.seed)
    write_tensor(t, args.out)
    _emit("shape", t.shape)
    return EXIT_OK


def cmd_invert(args) -> int:
    a = _load(args.input)
    kind = args.kind
    if kind == "wdrazin":
        w = _load(args.weight) if args.weight else None
        if w is None:
            raise ShapeMismatch("--kind wdrazin needs --weight")
        p = WeightedPair(a, w)
        x = w_drazin(p)
        chk = verify_w_drazin(p, x)
        _emit("index", chk.k)
        residuals = chk.residuals
    elif kind == "mp":
        x = gi.moore_penrose(a)
        residuals = gi.penrose_residuals(a, x)
        if a.is_square:
            _emit("index", gi.index(a).k)
    else:
        info = gi.index(a)
        _emit("index", info.k)
        x = gi.drazin(a, info.k) if kind == "drazin" else gi.group_inverse(a)
        residuals = gi.drazin_residuals(a, x, info.k)
    for n, r in enumerate(residuals, 1):
        _emit(f"residual_{n}", f"{r:.3e}")
    _emit("norm", f"{norm(x):.17g}")
    write_tensor(x, args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    a = _load(args.a)
    b = _load(args.b)
    if args.method == "drazin":
        sol = drazin_solve(a, b)
        if not sol.consistent:
            raise Inconsistent("right-hand side is not in the range of A^k")
        x = sol.particular
        residuals = [norm(a @ x - b)]
        _emit("index", sol.index_used)
    else:
        x0 = _load(args.x0) if args.x0 else None
        solver = gauss_seidel if args.method == "gs" else jacobi
        try:
            x, rep = solver(a, b, x0=x0, tol=args.tol, max_iter=args.max_iter)
        except Diverged as exc:
            if args.residuals and exc.report is not None:
                write_residual_csv(exc.report.residual_history, args.residuals)
            raise
        residuals = rep.residual_history
        _emit("iterations", rep.iterations)
        _emit("stop_reason", rep.stop_reason)
        if not rep.converged:
            print(f"not converged after {rep.iterations} iterations", file=sys.stderr)
            if args.residuals:
                write_residual_csv(residuals, args.residuals)
            return EXIT_CONVERGENCE
    _emit("residual", f"{residuals[-1]:.3e}")
    write_tensor(x, args.out)
    if args.residuals:
        write_residual_csv(residuals, args.residuals)
    return EXIT_OK


def cmd_verify(args) -> int:
    a = _load(args.input)
    if args.suite == "solver":
        b = _load(args.b) if args.b else consistent_rhs(a, seed=args.seed)
        report = identities.solver_identities(a, b)
    elif args.suite == "wdrazin":
        w = _load(args.weight) if args.weight else None
        report = identities.wdrazin_identities(a, w)
    else:
        report = identities.SUITES[args.suite](a)
    ok = True
    for name, r in report:
        good = r <= args.tol
        ok &= good
        print(f"{'PASS' if good else 'FAIL'} {r:.3e} {name}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_spectrum(args) -> int:
    a = _load(args.input)
    _emit("spectral_radius", f"{spectral_radius(a):.17g}")
    _emit("frobenius_norm", f"{norm(a):.17g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tensordrazin", description="Einstein-product tensor inverses and solvers.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def seeded(p):
        p.add_argument("--seed", type=int, default=0, help="seed for any pseudorandom input (default 0)")
        return p

    def add(name, help_text):
        return seeded(sub.add_parser(name, help=help_text, description=help_text))

    g = sub.add_parser("generate", help="write a Poisson tensor or a consistent right-hand side")
    gsub = g.add_subparsers(dest="what", required=True)
    gp = gsub.add_parser("poisson", help="Kronecker-sum Poisson tensor")
    gp.add_argument("--dim", type=int, choices=(2, 3, 4), required=True)
    gp.add_argument("--n", type=int, required=True, help="grid points per axis")
    gp.add_argument("--bc", choices=("dirichlet", "neumann"), default="dirichlet")
    gp.add_argument("--out", required=True)
    gr = gsub.add_parser("rhs", help="right-hand side A^k * Y in the range of A^k")
    gr.add_argument("--in", dest="input", required=True)
    gr.add_argument("--out", required=True)
    seeded(gp)
    seeded(gr)

    p = add("invert", "compute a generalized inverse and print its residuals")
    p.add_argument("--kind", choices=("mp", "drazin", "group", "wdrazin"), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--weight", help="weight tensor W for --kind wdrazin")
    p.add_argument("--out", required=True)

    p = add("solve", "solve A * X = B")
    p.add_argument("--method", choices=("drazin", "gs", "jacobi"), required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--x0", help="initial guess for iterative methods (default zero)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--out", required=True)
    p.add_argument("--residuals", help="write residual history CSV here")

    p = add("verify", "check an identity suite; exit 0 iff every residual is within tolerance")
    p.add_argument("--suite", choices=tuple(identities.SUITES), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--b", help="right-hand side for the solver suite (default: seeded consistent rhs)")
    p.add_argument("--weight", help="weight for the wdrazin suite (default: conjugate transpose of the input)")
    p.add_argument("--tol", type=float, default=VERIFY_TOL)

    p = add("spectrum", "print spectral radius and Frobenius norm")
    p.add_argument("--in", dest="input", required=True)
    return parser


COMMANDS = {
    "generate": cmd_generate,
    "invert": cmd_invert,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.verb](args)
    except _SHAPE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except _CONVERGENCE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
