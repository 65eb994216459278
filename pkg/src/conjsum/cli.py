"""Command-line front end.

Every command resolves a RunConfig from flags, computes its table through the
library and writes CSV or JSON.  Floats are serialized with 17 significant
digits so every numeric field parses back to the identical double.  Rows are
produced in sorted key order, never by completion order, so identical configs
yield byte-identical files.

Exit codes: 0 ok, 1 numerical failure (non-convergence / singular integrand),
2 configuration error (unknown names, bad JSON, out-of-range parameters).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Iterable, Sequence

from . import conjugate as conj
from . import functions, kernels, moduli, summability, verify
from .functions import DomainError, GridSpec, SingularIntegrandError

BUILTIN_MATRICES = ("cesaro", "identity", "delta0")


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _write_rows(columns: Sequence[str], rows: Iterable[dict], out: str | None, fmt: str) -> None:
    rows = list(rows)
    if fmt == "csv":
        text_rows = [",".join(columns)]
        for row in rows:
            text_rows.append(",".join(_fmt(row[c]) for c in columns))
        payload = "\n".join(text_rows) + "\n"
    else:
        payload = json.dumps(
            [{c: row[c] for c in columns} for row in rows], indent=2, sort_keys=True
        ) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _grid_from(args) -> GridSpec:
    m = args.grid_m
    if m is None:
        env = os.environ.get("CONJSUM_GRID_M")
        m = int(env) if env else functions.DEFAULT_GRID.m
    return GridSpec(m=m, refinement=args.grid_refinement)


def _function_from(args) -> functions.PeriodicFunction:
    return functions.by_name(args.function)


def _matrix_from(spec: str, n_max: int) -> summability.TriangularMatrix:
    if spec == "cesaro":
        return summability.cesaro(n_max)
    if spec == "identity":
        return summability.identity_matrix(n_max)
    if spec == "delta0":
        return summability.delta_at_zero(n_max)
    matrix = summability.load_matrix_json(spec)
    if matrix.n_max < n_max:
        raise summability.MatrixValidationError(
            f"{spec}: matrix has n_max={matrix.n_max}, need at least {n_max}"
        )
    return matrix


def _n_values(args) -> list[int]:
    if getattr(args, "n_list", None):
        return sorted(set(args.n_list))
    if getattr(args, "n", None) is not None:
        return [args.n]
    raise DomainError("one of --n or --n-list is required")


def _x_values(args) -> list[float]:
    if getattr(args, "x", None) is not None:
        return [args.x]
    return conj.default_x_grid()


def _cmd_coeffs(args) -> int:
    f = _function_from(args)
    grid = _grid_from(args)
    N = args.n if args.n is not None else kernels.DEFAULT_COEFF_CUTOFF
    c = kernels.fourier_coeffs(f, N, grid)
    rows = [{"function": f.name, "nu": 0, "a": c.a0, "b": 0.0}]
    for nu in range(1, N + 1):
        rows.append({"function": f.name, "nu": nu, "a": float(c.a[nu - 1]), "b": float(c.b[nu - 1])})
    _write_rows(["function", "nu", "a", "b"], rows, args.out, args.format)
    return 0


def _cmd_conjugate(args) -> int:
    f = _function_from(args)
    grid = _grid_from(args)
    eps_list = args.eps if args.eps else list(conj.DEFAULT_SETTINGS.eps_sequence)
    rows = []
    for x in _x_values(args):
        limit = conj.conjugate_at(f, x, grid=grid)
        for eps in eps_list:
            rows.append(
                {
                    "function": f.name,
                    "x": x,
                    "eps": eps,
                    "conjugate_truncated": conj.conjugate_truncated(f, x, eps, grid),
                    "conjugate": limit,
                }
            )
    _write_rows(
        ["function", "x", "eps", "conjugate_truncated", "conjugate"], rows, args.out, args.format
    )
    return 0


def _cmd_transform(args) -> int:
    f = _function_from(args)
    grid = _grid_from(args)
    ns = _n_values(args)
    A = _matrix_from(args.matrix_a, max(ns))
    B = _matrix_from(args.matrix_b, max(ns))
    conj_flag = not args.plain
    rows = []
    for n in ns:
        for x in _x_values(args):
            value = verify.transform_value(f, A, B, n, x, grid, conjugate=conj_flag)
            rows.append(
                {
                    "function": f.name,
                    "matrix_a": A.name,
                    "matrix_b": B.name,
                    "conjugate": int(conj_flag),
                    "n": n,
                    "x": x,
                    "value": value,
                }
            )
    _write_rows(
        ["function", "matrix_a", "matrix_b", "conjugate", "n", "x", "value"],
        rows,
        args.out,
        args.format,
    )
    return 0


def _cmd_check_matrix(args) -> int:
    n_max = args.n if args.n is not None else summability.DEFAULT_CHECKER_N_MAX
    A = _matrix_from(args.matrix_a, n_max)
    B = _matrix_from(args.matrix_b, n_max)
    reports = [
        summability.check_condition_2_1(A),
        summability.check_condition_2_2(A),
        summability.check_condition_2_21(A, B),
        summability.check_condition_3_2(B),
    ]
    rows = []
    for rep in reports:
        rows.append(
            {
                "condition": rep.condition_id,
                "matrix_a": A.name,
                "matrix_b": B.name,
                "min_constant": rep.min_constant,
                "witness": "/".join(str(i) for i in rep.witness),
            }
        )
    remark1 = max(summability.check_remark1_condition(A, n) for n in range(n_max + 1))
    rows.append(
        {
            "condition": "remark1",
            "matrix_a": A.name,
            "matrix_b": B.name,
            "min_constant": remark1,
            "witness": f"n_max={n_max}",
        }
    )
    rows.append(
        {
            "condition": "remark2",
            "matrix_a": A.name,
            "matrix_b": B.name,
            "min_constant": summability.check_remark2_condition(B),
            "witness": f"n_max={B.n_max}",
        }
    )
    _write_rows(
        ["condition", "matrix_a", "matrix_b", "min_constant", "witness"],
        rows,
        args.out,
        args.format,
    )
    return 0


_MODULUS_OPS = {
    "w": moduli.w_plain,
    "w_bar": moduli.w_bar,
    "w_tilde": moduli.w_tilde,
    "w_tilde_bar": moduli.w_tilde_bar,
}


def _cmd_moduli(args) -> int:
    f = _function_from(args)
    grid = _grid_from(args)
    rows = []
    if args.delta is not None:
        op = _MODULUS_OPS[args.kind]
        for x in _x_values(args):
            rows.append(
                {
                    "function": f.name,
                    "kind": args.kind,
                    "x": x,
                    "k": -1,
                    "delta": args.delta,
                    "value": op(f, x, args.delta, grid),
                }
            )
    else:
        n = args.n if args.n is not None else 32
        for x in _x_values(args):
            profile = moduli.modulus_profile(f, x, n, args.kind, grid)
            for k, (delta, value) in enumerate(zip(profile.deltas, profile.values)):
                rows.append(
                    {
                        "function": f.name,
                        "kind": args.kind,
                        "x": x,
                        "k": k,
                        "delta": float(delta),
                        "value": float(value),
                    }
                )
    _write_rows(["function", "kind", "x", "k", "delta", "value"], rows, args.out, args.format)
    return 0


def _report_row(rep: verify.BoundReport) -> dict:
    return {
        "theorem": rep.theorem_id,
        "function": rep.metadata.get("function", ""),
        "matrix_a": rep.metadata.get("matrix_a", ""),
        "matrix_b": rep.metadata.get("matrix_b", ""),
        "n": rep.n,
        "x": rep.x if rep.x is not None else math.nan,
        "p": rep.metadata.get("p", math.nan),
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "ratio": rep.ratio,
    }


def _cmd_verify(args) -> int:
    f = _function_from(args)
    grid = _grid_from(args)
    ns = _n_values(args)
    A = _matrix_from(args.matrix_a, max(ns))
    B = _matrix_from(args.matrix_b, max(ns))
    theorem = args.theorem
    reports: list[verify.BoundReport] = []
    if theorem in ("T1.51", "T1.5", "R1.6", "T2", "T2.trunc"):
        for n in ns:
            for x in _x_values(args):
                reports.append(verify.pointwise_report(theorem, f, A, B, x, n, grid))
    elif theorem in ("T3", "T4"):
        if theorem == "T4":
            A = summability.cesaro(max(ns))
        for n in ns:
            reports.append(
                verify.norm_report(
                    f, A, B, n, args.p, truncated=args.truncated, grid=grid, theorem_id=theorem
                )
            )
    elif theorem == "COR":
        for x in _x_values(args):
            reports.extend(verify.corollary_decay(f, A, B, ns, x, grid))
    else:
        raise DomainError(f"unknown theorem id {theorem!r}; choose from {verify.THEOREM_IDS}")
    columns = ["theorem", "function", "matrix_a", "matrix_b", "n", "x", "p", "lhs", "rhs", "ratio"]
    _write_rows(columns, (_report_row(r) for r in reports), args.out, args.format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conjsum",
        description="Conjugate Fourier summability: kernels, transforms, moduli, bound reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, function_required=True):
        if function_required:
            p.add_argument("--function", required=True, help="registry name (see 'conjsum list')")
        p.add_argument("--grid-m", type=int, default=None, help="quadrature nodes per period (env CONJSUM_GRID_M)")
        p.add_argument("--grid-refinement", type=int, default=functions.DEFAULT_GRID.refinement)
        p.add_argument("--out", default=None, help="output path (stdout if omitted)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("coeffs", help="Fourier coefficient table (columns: function,nu,a,b)")
    common(p)
    p.add_argument("--n", type=int, default=None, help="coefficient cutoff N")
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser(
        "conjugate",
        help="conjugate values (columns: function,x,eps,conjugate_truncated,conjugate)",
    )
    common(p)
    p.add_argument("--x", type=float, default=None, help="single point (default grid otherwise)")
    p.add_argument("--eps", type=float, action="append", default=None)
    p.set_defaults(func=_cmd_conjugate)

    p = sub.add_parser(
        "transform",
        help="AB-transform values (columns: function,matrix_a,matrix_b,conjugate,n,x,value)",
    )
    common(p)
    p.add_argument("--matrix-a", default="cesaro", help=f"builtin {BUILTIN_MATRICES} or JSON path")
    p.add_argument("--matrix-b", default="identity")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-list", type=int, nargs="+", default=None)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--plain", action="store_true", help="use plain partial sums instead of conjugate")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser(
        "check-matrix",
        help="condition reports (columns: condition,matrix_a,matrix_b,min_constant,witness)",
    )
    common(p, function_required=False)
    p.add_argument("--matrix-a", default="cesaro")
    p.add_argument("--matrix-b", default="identity")
    p.add_argument("--n", type=int, default=None, help="checker n_max (default 128)")
    p.set_defaults(func=_cmd_check_matrix)

    p = sub.add_parser(
        "moduli", help="modulus profile (columns: function,kind,x,k,delta,value)"
    )
    common(p)
    p.add_argument("--kind", choices=moduli.MODULUS_KINDS, default="w_tilde")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--n", type=int, default=None, help="profile length (k = 0..n)")
    p.add_argument("--delta", type=float, default=None, help="single delta instead of a profile (k = -1 rows)")
    p.set_defaults(func=_cmd_moduli)

    p = sub.add_parser(
        "verify",
        help="bound reports (columns: theorem,function,matrix_a,matrix_b,n,x,p,lhs,rhs,ratio)",
    )
    common(p)
    p.add_argument("--theorem", required=True, choices=verify.THEOREM_IDS)
    p.add_argument("--matrix-a", default="cesaro")
    p.add_argument("--matrix-b", default="cesaro")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-list", type=int, nargs="+", default=None)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--truncated", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("list", help="print the function registry")
    p.set_defaults(func=_cmd_list)
    return parser


def _cmd_list(args) -> int:
    for name in sorted(functions.registry()):
        print(name)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (conj.ConvergenceError, SingularIntegrandError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    except (
        DomainError,
        summability.MatrixValidationError,
        kernels.CutoffError,
        json.JSONDecodeError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
