"""Command-line front end.

Subcommands:

* ``constant``: classify one (n, alpha, domain) and print the report.
* ``scan``: sweep alpha, emit rows as CSV/JSON/table (optionally with a
  numeric estimate per row).
* ``spectrum``: print the lowest eigenvalues of a domain.
* ``verify``: run a verification suite; exit 0 iff everything passes.
* ``transform-check``: x-space vs cylinder quotient discrepancies on the
  corpus.

Domains are given as ``sphere``, ``cap:THETA0``, ``arc:LENGTH``, or
``file:PATH`` (explicit eigenvalues, one per line).  Exit codes: 0 success,
1 verification failure, 2 invalid arguments, 3 degenerate-case routing
failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import ENV_CONFIG, resolve_config
from .corpus import load_corpus
from .cylinder import xspace_equivalence_check
from .errors import DegenerateModeError, RellichConeError
from .params import classify, derive
from .report import (
    SCAN_FIELDS,
    compute_scan_rows,
    fmt_float,
    report_to_csv,
    report_to_dict,
    report_to_table,
    scan_alphas,
    scan_rows_to_csv,
    scan_rows_to_json,
    scan_rows_to_table,
)
from .spectra import DomainSpec, load_spectrum_file, spectrum_for
from .verify import SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


def _parse_domain(text: str):
    """Parse sphere | cap:THETA | arc:LEN | file:PATH.

    Returns (domain, None) for parametric domains and (None, spectrum) for
    explicit eigenvalue files.
    """
    if text == "sphere":
        return DomainSpec.sphere(), None
    kind, _, arg = text.partition(":")
    if kind == "cap" and arg:
        return DomainSpec.cap(float(arg)), None
    if kind == "arc" and arg:
        return DomainSpec.arc(float(arg)), None
    if kind == "file" and arg:
        return None, load_spectrum_file(arg)
    raise ValueError(
        f"bad domain {text!r}: expected sphere, cap:THETA0, arc:LENGTH, or file:PATH"
    )


def _spectrum_from_args(args, cfg, count=None):
    domain, spectrum = _parse_domain(args.domain)
    if spectrum is None:
        spectrum = spectrum_for(
            domain, args.n, count=count or cfg.spectrum_count,
            cap_grid=cfg.cap_grid, m_max=cfg.m_max,
        )
    return spectrum


def cmd_constant(args) -> int:
    cfg = resolve_config(args.config)
    spectrum = _spectrum_from_args(args, cfg)
    p = derive(args.n, args.alpha)
    report = classify(p, spectrum)
    if args.format == "json":
        print(json.dumps(report_to_dict(report, args.domain), indent=2))
    elif args.format == "csv":
        sys.stdout.write(report_to_csv(report, args.domain))
    else:
        sys.stdout.write(report_to_table(report, args.domain))
    return EXIT_OK


def cmd_scan(args) -> int:
    overrides = {"scan_L": args.mode_l, "scan_N": args.mode_n, "k_max": args.k_max}
    cfg = resolve_config(args.config, overrides)
    spectrum = _spectrum_from_args(args, cfg)
    alphas = scan_alphas(args.alpha_from, args.alpha_to, args.step)
    rows_iter = compute_scan_rows(
        args.n, alphas, spectrum, with_numeric=args.with_numeric, cfg=cfg
    )
    if args.format == "csv":
        # stream rows so partial results are flushed before any failure
        print(",".join(SCAN_FIELDS))
        for row in rows_iter:
            line = scan_rows_to_csv([row]).splitlines()[1]
            print(line)
            sys.stdout.flush()
    elif args.format == "json":
        sys.stdout.write(scan_rows_to_json(list(rows_iter)))
    else:
        sys.stdout.write(scan_rows_to_table(list(rows_iter)))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    cfg = resolve_config(args.config)
    spectrum = _spectrum_from_args(args, cfg, count=args.count)
    values = spectrum.eigenvalues[: args.count]
    if args.format == "json":
        print(json.dumps({
            "domain": args.domain,
            "n": args.n,
            "eigenvalues": [float(v) for v in values],
            "resolution": spectrum.resolution_meta,
        }, indent=2, default=str))
    else:
        for i, v in enumerate(values):
            print(f"{i:4d}  {fmt_float(v)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = resolve_config(args.config)
    failures = run_suite(args.suite, cfg)
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_transform_check(args) -> int:
    cfg = resolve_config(args.config)
    entries = load_corpus(args.corpus)
    worst = 0.0
    failures = 0
    for entry in entries:
        p = derive(entry.function.n, entry.alpha)
        disc = xspace_equivalence_check(entry.function, p)
        worst = max(worst, disc)
        ok = disc <= cfg.equivalence_tol
        if not ok:
            failures += 1
        print(f"{'PASS' if ok else 'FAIL'} {entry.name}: discrepancy {disc:.3e}")
    print(f"done: {len(entries)} functions, worst {worst:.3e}, "
          f"tolerance {cfg.equivalence_tol:g}")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rellich-cone",
        description="Best constants in second-order dilation invariant "
                    "inequalities on cones.",
    )
    parser.add_argument(
        "--config", default=None,
        help=f"key-value config file (default: ${ENV_CONFIG} when set)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_alpha=False):
        p.add_argument("--n", type=int, required=True, help="ambient dimension (>= 2)")
        if need_alpha:
            p.add_argument("--alpha", type=float, required=True, help="weight exponent")
        p.add_argument("--domain", default="sphere",
                       help="sphere | cap:THETA0 | arc:LENGTH | file:PATH")
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")

    p_const = sub.add_parser("constant", help="classify one (n, alpha, domain)")
    add_common(p_const, need_alpha=True)
    p_const.set_defaults(fn=cmd_constant)

    p_scan = sub.add_parser("scan", help="sweep alpha and classify each point")
    add_common(p_scan)
    p_scan.add_argument("--alpha-from", type=float, required=True)
    p_scan.add_argument("--alpha-to", type=float, required=True)
    p_scan.add_argument("--step", type=float, required=True)
    p_scan.add_argument("--with-numeric", action="store_true",
                        help="attach a discrete mode-minimum estimate per row")
    p_scan.add_argument("--mode-l", type=float, default=None,
                        help="truncation half-length of the numeric sweep")
    p_scan.add_argument("--mode-n", type=int, default=None,
                        help="grid points of the numeric sweep")
    p_scan.add_argument("--k-max", type=int, default=None,
                        help="highest mode degree probed by the numeric sweep")
    p_scan.set_defaults(fn=cmd_scan)

    p_spec = sub.add_parser("spectrum", help="lowest eigenvalues of a domain")
    add_common(p_spec)
    p_spec.add_argument("--count", type=int, default=8)
    p_spec.set_defaults(fn=cmd_spectrum)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITE_NAMES)
    p_verify.set_defaults(fn=cmd_verify)

    p_tc = sub.add_parser("transform-check",
                          help="x-space vs cylinder quotient on the corpus")
    p_tc.add_argument("--corpus", default=None, help="corpus file (default: shipped)")
    p_tc.set_defaults(fn=cmd_transform_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DegenerateModeError as exc:
        print(f"error: degenerate case routing failure: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (RellichConeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
