"""Command-line front end.

Four subcommands: ``check`` runs a seeded randomized verification suite and
prints a one-object summary; ``demo`` runs one of the worked constructions;
``study`` emits truncation-study rows; ``riesz`` computes a single contour
projection.  All output is deterministic for a fixed seed and flag set.

Exit codes: 0 on success, 1 when a numerical check fails, 2 on bad
parameters.
"""

import argparse
import json
import sys

import numpy as np
import scipy.linalg as la

from . import compat, matio, rand, schatten, spectra, studies, subspaces
from .errors import (
    BadExponent,
    ContourTooClose,
    DimMismatch,
    IoFailure,
    NonIdentityWeightForTrace,
    NormCapViolated,
    NotComplementary,
    NotIsolated,
    NotPositiveDefinite,
    SingularSystem,
    TwoNormError,
)
from .space import make_space, opnorm, _spec_norm

__all__ = ["main", "build_parser"]

_PARAM_ERRORS = (
    BadExponent,
    ContourTooClose,
    DimMismatch,
    IoFailure,
    NonIdentityWeightForTrace,
    NormCapViolated,
    NotComplementary,
    NotIsolated,
    NotPositiveDefinite,
    SingularSystem,
    ValueError,
)


def parse_matrix_literal(text, k=None):
    """Parse ``diag:a,b,..``, ``scalar:c`` or ``file:PATH`` into a matrix."""
    kind, sep, rest = text.partition(":")
    if not sep:
        raise ValueError(f"bad matrix literal {text!r}")
    if kind == "diag":
        entries = [complex(cell.strip()) for cell in rest.split(",")]
        return np.diag(np.asarray(entries, dtype=complex))
    if kind == "scalar":
        if k is None:
            raise ValueError("scalar literal needs an explicit --k size")
        return complex(rest.strip()) * np.eye(int(k), dtype=complex)
    if kind == "file":
        return matio.load_matrix(rest)
    raise ValueError(f"unknown matrix literal kind {kind!r}")


def _int_list(text):
    try:
        return [int(cell) for cell in text.split(",") if cell.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _emit_text(text, out):
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _flat_csv_text(obj):
    keys = list(obj.keys())
    cells = []
    for key in keys:
        val = obj[key]
        if isinstance(val, bool):
            cells.append("true" if val else "false")
        elif val is None:
            cells.append("")
        elif isinstance(val, (int, float)):
            cells.append(repr(val))
        else:
            cells.append(str(val))
    return ",".join(keys) + "\n" + ",".join(cells) + "\n"


def _emit_payload(obj, fmt, out, drop_for_csv=()):
    if fmt == "csv":
        slim = {k: v for k, v in obj.items() if k not in drop_for_csv}
        _emit_text(_flat_csv_text(slim), out)
    else:
        _emit_text(_json_text(obj), out)


# ---------------------------------------------------------------------------
# check suites

def _suite_adjoint(rng, dim):
    ws = rand.random_space(rng, dim)
    t = rand.random_operator(rng, ws)
    tp = ws.plus_matrix(t)
    scale = _spec_norm(t) * _spec_norm(np.asarray(ws.weight))
    identity_res = np.abs(ws.weight @ t - tp.conj().T @ ws.weight).max() / scale
    invol_res = _spec_norm(ws.plus_matrix(tp) - t) / _spec_norm(t)
    return max(float(identity_res), float(invol_res))


def _suite_gz(rng, dim):
    from .space import gz_bound_check

    ws = rand.random_space(rng, dim)
    t = rand.random_operator(rng, ws)
    rep = gz_bound_check(ws, t)
    return max(0.0, rep.lhs - rep.rhs)


def _suite_buckholtz(rng, dim):
    ws = rand.random_space(rng, dim)
    r = int(rng.integers(1, dim))
    s, t = rand.random_companion_pair(rng, ws, r)
    rep = compat.buckholtz_verify(ws, s, t)
    worst = max(rep.res_inverse, rep.res_projection, rep.res_symmetric)
    return worst / rep.kappa


def _suite_compat(rng, dim):
    ws = rand.random_space(rng, dim)
    r = int(rng.integers(1, dim))
    s, t1 = rand.random_companion_pair(rng, ws, r)
    _, t2 = rand.random_companion_pair(rng, ws, r)
    kappas, residuals, projections = [], [], []
    for t in (t1, t2):
        c = compat.c_operator(ws, s, t).matrix
        kappas.append(float(np.linalg.cond(c)))
        rep = compat.compat_margin(ws, s, t)
        residuals.append((rep.residual_cross or 0.0) / kappas[-1])
        projections.append(compat.compat_projection(ws, s, t).p.matrix)
    unique_res = _spec_norm(projections[0] - projections[1]) / max(kappas)
    return max(residuals + [unique_res])


def _suite_krein(rng, dim):
    ws = rand.random_space(rng, dim)
    r = int(rng.integers(1, dim))
    s, t = rand.random_companion_pair(rng, ws, r)
    canonical = compat.compat_projection(ws, s).p
    tilted = subspaces.oblique_projection(ws, s, t).p
    good = compat.krein_check(ws, s, canonical)
    # the tilted projection passes only if t happens to be the weighted
    # complement, which a random draw never is
    bad = compat.krein_check(ws, s, tilted)
    return 0.0 if (good and not bad) else 1.0


def _suite_lemma(rng, dim):
    ws = rand.random_space(rng, dim)
    r = max(1, dim // 3)
    x1 = rand._complex_gauss(rng, dim, r)
    y1 = rand._complex_gauss(rng, dim, r)
    x2 = rand._complex_gauss(rng, dim, r)
    y2 = rand._complex_gauss(rng, dim, r)
    generic = compat.algebraic_lemma_check(ws, x1 @ y1.conj().T,
                                           x2 @ y2.conj().T)
    shared = compat.algebraic_lemma_check(ws, x1 @ y1.conj().T,
                                          x2 @ y1.conj().T)
    ok = generic.agree and shared.agree and generic.nullspace_sum_full \
        and not shared.nullspace_sum_full
    return 0.0 if ok else 1.0


def _suite_spectra(rng, dim):
    ws = rand.random_space(rng, dim)
    t = rand.random_operator(rng, ws)
    ev_e = spectra.spectrum(ws, t, "E").values
    ev_p = spectra.spectrum(ws, t, "P").values
    spectra.spectrum(ws, t, "L")
    if len(ev_e) != len(ev_p):
        return 1.0
    scale = 1.0 + _spec_norm(t)
    return float(np.abs(np.sort_complex(ev_e) - np.sort_complex(ev_p)).max()
                 / scale)


_SUITES = {
    "adjoint": _suite_adjoint,
    "gz": _suite_gz,
    "buckholtz": _suite_buckholtz,
    "compat": _suite_compat,
    "krein": _suite_krein,
    "lemma": _suite_lemma,
    "spectra": _suite_spectra,
}


def cmd_check(args):
    suite = _SUITES[args.suite]
    worst = 0.0
    for trial in range(args.trials):
        rng = rand.trial_rng(args.seed, trial)
        worst = max(worst, float(suite(rng, args.dim)))
    summary = {
        "suite": args.suite,
        "trials": args.trials,
        "max_residual": worst,
        "pass": bool(worst <= args.tol),
    }
    _emit_payload(summary, args.format, args.out)
    return 0 if summary["pass"] else 1


# ---------------------------------------------------------------------------
# demos

def cmd_demo_finite_rank(args):
    rng = rand.trial_rng(args.seed, 0)
    ws = rand.random_space(rng, args.dim)
    f, h = rand.random_biorthogonal_system(rng, ws, args.rank)
    pair = subspaces.finite_rank_proper_projection(ws, f, h)
    q = pair.p.matrix
    report = {
        "dim": args.dim,
        "rank": args.rank,
        "idempotency_res": _spec_norm(q @ q - q),
        "plus_res": _spec_norm(ws.plus_matrix(q) - pair.p_plus.matrix),
        "range_dim": pair.range_sub.rank,
    }
    scale = max(1.0, _spec_norm(q)) ** 2 * max(1.0, ws.weight_cond)
    ok = report["idempotency_res"] <= args.tol * scale
    _emit_payload(report, args.format, args.out)
    return 0 if ok else 1


def _riesz_run(args):
    t = parse_matrix_literal(args.t, args.k)
    n = t.shape[0]
    weight = np.eye(n) if args.weight is None \
        else parse_matrix_literal(args.weight, n)
    ws = make_space(n, weight, "euclid")
    pair, diag = spectra.riesz_projection(
        ws, t, complex(args.lam), args.eps, args.m
    )
    report = {
        "lambda_re": complex(args.lam).real,
        "lambda_im": complex(args.lam).imag,
        "eps": args.eps,
        "m": args.m,
        "idempotency_res": diag.idempotency_res,
        "plus_res": diag.plus_res,
        "range_dim": diag.range_dim,
        "q": [[[v.real, v.imag] for v in row] for row in pair.p.matrix],
    }
    ok = diag.idempotency_res <= 1e-8 and diag.plus_res <= 1e-8
    _emit_payload(report, args.format, args.out, drop_for_csv=("q",))
    return 0 if ok else 1


def cmd_demo_cq(args):
    z = parse_matrix_literal(args.z, args.k)
    model = schatten.matrix_space(2 * z.shape[0])
    report = schatten.cq_compat_demo(model, z)
    _emit_payload(report.to_json_dict(), args.format, args.out)
    return 0


def cmd_demo_two_companions(args):
    z = parse_matrix_literal(args.z, args.k)
    t = parse_matrix_literal(args.t, args.k)
    model = schatten.matrix_space(2 * z.shape[0])
    report = schatten.two_companions_demo(model, z, t)
    _emit_payload(report.to_json_dict(), args.format, args.out)
    return 0 if (report.fixed_kernel and report.transported_to_block_range) \
        else 1


def cmd_demo_sylvester(args):
    c = parse_matrix_literal(args.c, args.k)
    d = parse_matrix_literal(args.d, args.k)
    w = parse_matrix_literal(args.w, args.k)
    result = schatten.sylvester(c, d, w, force=args.force)
    report = {
        "solvable": result.solvable,
        "margin": result.margin,
        "residual": result.residual,
    }
    ok = (not result.solvable) or result.residual <= args.tol * (
        1.0 + _spec_norm(w)
    )
    _emit_payload(report, args.format, args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# studies

def cmd_study(args):
    if args.family == "diverge":
        rows = studies.diverging_vector_study(args.dims, args.beta,
                                              control=args.control)
    else:
        rows = studies.symmetry_truncation_study(args.ks)
    if args.out:
        studies.emit_rows(rows, args.format, args.out)
    else:
        sys.stdout.write(
            studies.rows_to_csv(rows) if args.format == "csv"
            else _json_text(studies.rows_to_json_obj(rows))
        )
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser():
    parser = argparse.ArgumentParser(
        prog="twonorm",
        description="weighted adjoints, oblique projections and "
                    "compatibility margins at finite dimension",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_dim=True):
        p.add_argument("--seed", type=int, default=0)
        if with_dim:
            p.add_argument("--dim", type=int, default=10)
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None)

    p_check = sub.add_parser("check", help="run a randomized check suite")
    p_check.add_argument("suite", choices=sorted(_SUITES))
    add_common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_demo = sub.add_parser("demo", help="run a worked construction")
    demo_sub = p_demo.add_subparsers(dest="demo", required=True)

    p_fr = demo_sub.add_parser("finite_rank")
    add_common(p_fr)
    p_fr.add_argument("--rank", type=int, default=3)
    p_fr.set_defaults(func=cmd_demo_finite_rank)

    def add_riesz_args(p):
        p.add_argument("--t", required=True, help="matrix literal")
        p.add_argument("--lambda", dest="lam", type=complex, required=True)
        p.add_argument("--eps", type=float, required=True)
        p.add_argument("--m", type=int, default=64)
        p.add_argument("--weight", default=None, help="matrix literal")
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None)
        p.set_defaults(func=_riesz_run)

    add_riesz_args(demo_sub.add_parser("riesz"))

    p_cq = demo_sub.add_parser("cq")
    p_cq.add_argument("--z", required=True, help="matrix literal")
    p_cq.add_argument("--k", type=int, default=None)
    p_cq.add_argument("--seed", type=int, default=0)
    p_cq.add_argument("--format", choices=("json", "csv"), default="json")
    p_cq.add_argument("--out", default=None)
    p_cq.set_defaults(func=cmd_demo_cq)

    p_tc = demo_sub.add_parser("two_companions")
    p_tc.add_argument("--z", required=True, help="matrix literal")
    p_tc.add_argument("--t", required=True, help="matrix literal")
    p_tc.add_argument("--k", type=int, default=None)
    p_tc.add_argument("--seed", type=int, default=0)
    p_tc.add_argument("--format", choices=("json", "csv"), default="json")
    p_tc.add_argument("--out", default=None)
    p_tc.set_defaults(func=cmd_demo_two_companions)

    p_sy = demo_sub.add_parser("sylvester")
    p_sy.add_argument("--c", required=True, help="matrix literal")
    p_sy.add_argument("--d", required=True, help="matrix literal")
    p_sy.add_argument("--w", required=True, help="matrix literal")
    p_sy.add_argument("--k", type=int, default=None)
    p_sy.add_argument("--force", action="store_true")
    p_sy.add_argument("--tol", type=float, default=1e-9)
    p_sy.add_argument("--seed", type=int, default=0)
    p_sy.add_argument("--format", choices=("json", "csv"), default="json")
    p_sy.add_argument("--out", default=None)
    p_sy.set_defaults(func=cmd_demo_sylvester)

    p_study = sub.add_parser("study", help="emit truncation-study rows")
    study_sub = p_study.add_subparsers(dest="family", required=True)

    p_div = study_sub.add_parser("diverge")
    p_div.add_argument("--beta", type=float, required=True)
    p_div.add_argument("--dims", type=_int_list, default=[8, 16, 32, 64])
    p_div.add_argument("--control", action="store_true")
    p_div.add_argument("--format", choices=("json", "csv"), default="csv")
    p_div.add_argument("--out", default=None)
    p_div.set_defaults(func=cmd_study)

    p_sym = study_sub.add_parser("symmetry")
    p_sym.add_argument("--ks", type=_int_list, default=[2, 4, 8])
    p_sym.add_argument("--format", choices=("json", "csv"), default="csv")
    p_sym.add_argument("--out", default=None)
    p_sym.set_defaults(func=cmd_study)

    add_riesz_args(sub.add_parser(
        "riesz", help="one contour projection with diagnostics"
    ))

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _PARAM_ERRORS as exc:
        print(f"twonorm: {exc}", file=sys.stderr)
        return 2
    except (TwoNormError, ArithmeticError) as exc:
        print(f"twonorm: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
