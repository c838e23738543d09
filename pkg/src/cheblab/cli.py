"""Command-line front end.

One subcommand per statistic:

  psi        weighted prime-power count for one class / progression
  cdt        short-interval ratio against the density main term
  bv         averaged window-error run over moduli
  scan       dyadic sequence of bv runs (optionally with an SVG trend plot)
  admissible tuple generation / validation
  sseries    truncated singular series value
  clusters   prime clusters in a window for an admissible tuple
  hypothesis window equidistribution quantities (i)-(iii)
  coeffs     exact q-expansion coefficients (eta products, theta series)
  gaps       vanishing-streak statistics of a q-expansion
  discs      proxy-positive fundamental-discriminant clusters
  ectrace    elliptic-curve Frobenius traces
  ecclusters prime clusters filtered by a trace congruence

Exit codes: 0 success, 2 usage/validation, 3 domain error, 4 range overflow.
A config file (``key = value`` lines, ``#`` comments) supplies defaults for
any long flag of the chosen subcommand; command-line flags win.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .bvlab import BVParams, bv_error_sum, dyadic_scan
from .chebpsi import PsiQuery, cdt_ratio, psi_C
from .ellcurves import (
    BAD_REDUCTION,
    ap,
    ap_mod_clusters,
    ap_table,
    parse_curve_spec,
    rank_zero_twist_labels,
)
from .errors import (
    ArgumentError,
    CheblabError,
    ConfigError,
    DomainError,
    RangeOverflowError,
    SpecStringError,
)
from .galois import make_context
from .modforms import (
    CONGRUENT_NUMBER_RULE,
    build_form,
    discriminant_clusters,
    gap_stats,
    nonvanishing_clusters,
)
from .parallel import default_workers
from .reporting import (
    atomic_write_text,
    bv_csv,
    bv_json,
    cluster_csv,
    cluster_json,
    coeffs_csv,
    coeffs_json,
    counts_csv,
    fmt_real,
    gaps_csv,
    gaps_json,
    histogram_csv,
    hypothesis_csv,
    hypothesis_json,
    scan_csv,
    scan_json,
    scan_svg,
)
from .tuples import (
    AdmissibleTuple,
    HypothesisConfig,
    gen_admissible,
    scan_clusters,
    singular_series,
    verify_hypothesis,
)

RULES = {"congruent-number": CONGRUENT_NUMBER_RULE}


def _parse_offsets(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise SpecStringError(f"malformed offsets {text!r}; expected e.g. 0,2,6") from exc


def _resolve_tuple(args) -> AdmissibleTuple:
    if getattr(args, "offsets", None):
        return AdmissibleTuple.from_offsets(_parse_offsets(args.offsets))
    if getattr(args, "k", None):
        return gen_admissible(args.k, args.method)
    raise ArgumentError("provide --offsets or --k")


def _resolve_class(ctx, class_id: str | None) -> str:
    if class_id is not None:
        return class_id
    ids = ctx.class_ids()
    if len(ids) == 1:
        return ids[0]
    raise ArgumentError(
        f"context {ctx.label} has classes {list(ids)}; pick one with --class"
    )


def _deliver(args, text: str) -> None:
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)


def _add_common(sub, fmt: bool = True) -> None:
    sub.add_argument("--out", help="output path (default: stdout)")
    if fmt:
        sub.add_argument(
            "--format", choices=("csv", "json"), default="csv", help="output format"
        )
    sub.add_argument(
        "--workers",
        type=int,
        default=None,
        help="worker threads (default: CHEBLAB_THREADS or 1)",
    )
    sub.add_argument("--config", help="key = value defaults file")


def _workers(args) -> int:
    return args.workers if args.workers is not None else default_workers()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cheblab",
        description="desk-scale statistics for primes in Chebotarev classes",
    )
    parser.add_argument("--version", action="version", version=f"cheblab {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("psi", help="weighted prime-power count of one class")
    p.add_argument("--ctx", required=True, help="context spec, e.g. quadratic:5")
    p.add_argument("--class", dest="class_id", help="class id (default if unique)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--a", type=int, default=1)
    _add_common(p, fmt=False)

    p = subs.add_parser("cdt", help="short-interval density ratio")
    p.add_argument("--ctx", required=True)
    p.add_argument("--class", dest="class_id")
    p.add_argument("--x", type=int, required=True, help="interval start N")
    p.add_argument("--h", type=int, required=True, help="interval length y")
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--a", type=int, default=1)
    _add_common(p, fmt=False)

    for name in ("bv", "scan"):
        p = subs.add_parser(
            name,
            help="averaged window-error run" if name == "bv" else "dyadic bv scan",
        )
        p.add_argument("--ctx", required=True)
        p.add_argument("--class", dest="class_id")
        if name == "bv":
            p.add_argument("--x", type=int, required=True)
        else:
            p.add_argument("--x-min", type=int, required=True)
            p.add_argument("--x-max", type=int, required=True)
            p.add_argument("--plot", help="also write an SVG ratio plot here")
        p.add_argument("--delta", type=float, default=0.0, help="window exponent gap")
        p.add_argument("--theta", type=float, default=0.0, help="modulus exponent")
        p.add_argument("--D", type=float, default=1.0, help="log power in the ratio")
        p.add_argument("--h", type=int, help="window length override")
        p.add_argument("--Q", type=int, help="modulus cutoff override")
        p.add_argument("--n-grid", type=int, default=8)
        p.add_argument("--y-grid", type=int, default=8)
        p.add_argument(
            "--strict",
            action=argparse.BooleanOptionalAction,
            default=True,
            help="enforce the estimate's admissible (delta, theta) window",
        )
        _add_common(p)

    p = subs.add_parser("admissible", help="generate or validate a tuple")
    p.add_argument("--k", type=int)
    p.add_argument(
        "--method", choices=("shifted-primes", "greedy"), default="shifted-primes"
    )
    p.add_argument("--offsets", help="comma-separated offsets to validate instead")
    _add_common(p)

    p = subs.add_parser("sseries", help="truncated singular series")
    p.add_argument("--offsets", required=True)
    p.add_argument("--cutoff", type=int, required=True)
    _add_common(p, fmt=False)

    p = subs.add_parser("clusters", help="prime clusters in a window")
    p.add_argument("--ctx", required=True)
    p.add_argument("--class", dest="class_id")
    p.add_argument("--offsets")
    p.add_argument("--k", type=int)
    p.add_argument(
        "--method", choices=("shifted-primes", "greedy"), default="shifted-primes"
    )
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--T", type=int, help="cluster threshold (default max(2, ceil(log k)))")
    p.add_argument(
        "--histogram", action="store_true", help="emit the count histogram CSV instead"
    )
    _add_common(p)

    p = subs.add_parser("hypothesis", help="window equidistribution quantities")
    p.add_argument("--ctx", required=True)
    p.add_argument("--class", dest="class_id")
    p.add_argument("--offsets", required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--B", type=int, default=1, help="level: skip moduli sharing a factor")
    _add_common(p)

    p = subs.add_parser("coeffs", help="exact q-expansion coefficients")
    p.add_argument("--form", required=True, help="eta:(d^r)... or theta:a,b,c")
    p.add_argument("--N", type=int, required=True, help="truncation")
    _add_common(p)

    p = subs.add_parser("gaps", help="vanishing-streak statistics")
    p.add_argument("--form", required=True)
    p.add_argument("--N", type=int, required=True, help="expansion truncation")
    p.add_argument("--n-max", type=int, help="scan bound (default: N)")
    _add_common(p)

    p = subs.add_parser("discs", help="proxy-positive discriminant clusters")
    p.add_argument("--rule", choices=sorted(RULES), default="congruent-number")
    p.add_argument("--offsets")
    p.add_argument("--k", type=int)
    p.add_argument(
        "--method", choices=("shifted-primes", "greedy"), default="shifted-primes"
    )
    p.add_argument("--a", type=int, default=0, help="progression residue")
    p.add_argument("--q", type=int, default=1, help="progression modulus")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--T", type=int)
    p.add_argument("--coprime-to", type=int, default=1)
    p.add_argument(
        "--rank-labels",
        action="store_true",
        help="relabel as conditional rank-zero twists (with --conductor filter)",
    )
    p.add_argument("--conductor", type=int, default=32)
    p.add_argument(
        "--twist-filter", action=argparse.BooleanOptionalAction, default=True
    )
    p.add_argument("--histogram", action="store_true")
    _add_common(p)

    p = subs.add_parser("ectrace", help="Frobenius traces of a curve")
    p.add_argument("--curve", required=True, help="ec:A,B")
    p.add_argument("--p", type=int, help="single prime")
    p.add_argument("--upto", type=int, help="table for all primes <= bound")
    p.add_argument("--cap", type=int, default=10**7, help="per-prime cost cap")
    _add_common(p)

    p = subs.add_parser("ecclusters", help="trace-congruence prime clusters")
    p.add_argument("--curve", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--offsets")
    p.add_argument("--k", type=int)
    p.add_argument(
        "--method", choices=("shifted-primes", "greedy"), default="shifted-primes"
    )
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--T", type=int)
    p.add_argument("--cap", type=int, default=10**7)
    p.add_argument("--histogram", action="store_true")
    p.add_argument(
        "--check-residue",
        type=int,
        metavar="BOUND",
        help="warn when no good prime <= BOUND realizes the congruence",
    )
    _add_common(p)

    return parser


def _config_args(path: str) -> list[str]:
    """Translate a config file into a flag list (flags given later override)."""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    out: list[str] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value, got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if not key or not value:
                raise ConfigError(f"{path}:{lineno}: empty key or value")
            flag = "--" + key.replace("_", "-")
            if value.lower() in ("true", "false"):
                out.append(flag if value.lower() == "true" else f"--no-{key}")
            else:
                out.extend([flag, value])
    return out


def _extract_config(argv: list[str]) -> str | None:
    for i, tok in enumerate(argv):
        if tok == "--config":
            if i + 1 >= len(argv):
                raise ConfigError("--config needs a path")
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _bv_params(args, x: int) -> BVParams:
    ctx = make_context(args.ctx)
    return BVParams(
        ctx=ctx,
        class_id=_resolve_class(ctx, args.class_id),
        x=x,
        delta=args.delta,
        theta=args.theta,
        D=args.D,
        h=args.h,
        Q=args.Q,
        n_grid=args.n_grid,
        y_grid=args.y_grid,
        strict=args.strict,
    )


def _run(args) -> int:
    cmd = args.command

    if cmd == "psi":
        ctx = make_context(args.ctx)
        cid = _resolve_class(ctx, args.class_id)
        value = psi_C(PsiQuery(ctx, cid, args.x, args.q, args.a))
        _deliver(args, f"{value!r}\n")
        return 0

    if cmd == "cdt":
        ctx = make_context(args.ctx)
        cid = _resolve_class(ctx, args.class_id)
        value = cdt_ratio(ctx, cid, args.x, args.h, args.q, args.a)
        _deliver(args, f"{value!r}\n")
        return 0

    if cmd == "bv":
        params = _bv_params(args, args.x)
        report = bv_error_sum(params, workers=_workers(args))
        _deliver(args, bv_csv(report) if args.format == "csv" else bv_json(report))
        return 0

    if cmd == "scan":
        params = _bv_params(args, args.x_min)
        reports = dyadic_scan(params, args.x_min, args.x_max, workers=_workers(args))
        _deliver(args, scan_csv(reports) if args.format == "csv" else scan_json(reports))
        if args.plot:
            atomic_write_text(args.plot, scan_svg(reports))
        return 0

    if cmd == "admissible":
        tup = _resolve_tuple(args)
        if args.format == "json":
            import json

            _deliver(
                args,
                json.dumps(
                    {"offsets": list(tup.offsets), "witness": dict(tup.witness)}
                )
                + "\n",
            )
        else:
            _deliver(args, ",".join(str(h) for h in tup.offsets) + "\n")
        return 0

    if cmd == "sseries":
        value = singular_series(_parse_offsets(args.offsets), args.cutoff)
        _deliver(args, fmt_real(value) + "\n")
        return 0

    if cmd == "clusters":
        ctx = make_context(args.ctx)
        cid = _resolve_class(ctx, args.class_id)
        tup = _resolve_tuple(args)
        report = scan_clusters(
            ctx, cid, tup, args.x, args.h, threshold=args.T, workers=_workers(args)
        )
        if args.format == "json":
            _deliver(args, cluster_json(report))
        else:
            _deliver(args, histogram_csv(report) if args.histogram else cluster_csv(report))
        return 0

    if cmd == "hypothesis":
        ctx = make_context(args.ctx)
        cid = _resolve_class(ctx, args.class_id)
        cfg = HypothesisConfig(
            ctx,
            cid,
            AdmissibleTuple.from_offsets(_parse_offsets(args.offsets)),
            args.x,
            args.h,
            args.theta,
            args.B,
        )
        report = verify_hypothesis(cfg, workers=_workers(args))
        _deliver(
            args,
            hypothesis_csv(report) if args.format == "csv" else hypothesis_json(report),
        )
        return 0

    if cmd == "coeffs":
        form = build_form(args.form, args.N)
        _deliver(args, coeffs_csv(form) if args.format == "csv" else coeffs_json(form))
        return 0

    if cmd == "gaps":
        form = build_form(args.form, args.N)
        n_max = args.n_max if args.n_max is not None else args.N
        max_gap, records = gap_stats(form, n_max)
        _deliver(
            args,
            gaps_csv(max_gap, records)
            if args.format == "csv"
            else gaps_json(max_gap, records),
        )
        return 0

    if cmd == "discs":
        rule = RULES[args.rule]
        tup = _resolve_tuple(args)
        if args.rank_labels:
            report = rank_zero_twist_labels(
                rule,
                tup,
                args.a,
                args.q,
                args.x,
                args.h,
                threshold=args.T,
                conductor=args.conductor,
                twist_filter=args.twist_filter,
            )
        else:
            report = discriminant_clusters(
                rule,
                tup,
                args.a,
                args.q,
                args.x,
                args.h,
                threshold=args.T,
                coprime_to=args.coprime_to,
            )
        if args.format == "json":
            _deliver(args, cluster_json(report))
        else:
            _deliver(args, histogram_csv(report) if args.histogram else cluster_csv(report))
        return 0

    if cmd == "ectrace":
        curve = parse_curve_spec(args.curve)
        if (args.p is None) == (args.upto is None):
            raise ArgumentError("give exactly one of --p or --upto")
        if args.p is not None:
            value = ap(curve, args.p, cap=args.cap)
            _deliver(args, f"{value!r}\n")
            return 0
        table = ap_table(curve, args.upto, cap=args.cap)
        if args.format == "json":
            import json

            payload = {
                str(p): (None if v is BAD_REDUCTION else v) for p, v in table.items()
            }
            _deliver(args, json.dumps(payload, indent=2) + "\n")
        else:
            lines = ["p,ap"]
            lines.extend(
                f"{p},{'bad' if v is BAD_REDUCTION else v}" for p, v in table.items()
            )
            _deliver(args, "\n".join(lines) + "\n")
        return 0

    if cmd == "ecclusters":
        curve = parse_curve_spec(args.curve)
        tup = _resolve_tuple(args)
        if args.check_residue is not None:
            from .ellcurves import good_residue_exists

            if good_residue_exists(curve, args.m, args.i, args.check_residue) is None:
                print(
                    f"warning: no good prime <= {args.check_residue} has trace "
                    f"{args.i} mod {args.m}; scanning anyway",
                    file=sys.stderr,
                )
        report = ap_mod_clusters(
            curve,
            args.m,
            args.i,
            tup,
            args.x,
            args.h,
            threshold=args.T,
            workers=_workers(args),
            cap=args.cap,
        )
        if args.format == "json":
            _deliver(args, cluster_json(report))
        else:
            _deliver(args, histogram_csv(report) if args.histogram else cluster_csv(report))
        return 0

    raise ArgumentError(f"unhandled subcommand {cmd!r}")  # pragma: no cover


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        config_path = _extract_config(argv)
        if config_path and argv:
            flags = _config_args(config_path)
            argv = argv[:1] + flags + argv[1:]
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # argparse handles usage/help printing
            return int(exc.code or 0)
        return _run(args)
    except (ArgumentError, SpecStringError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except (RangeOverflowError, OverflowError) as exc:
        print(f"range error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
