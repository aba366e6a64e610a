"""Command line front end.

Exit codes: 0 success / certified, 1 property violated, 2 invalid input,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import __version__, bh_design, bounds, sidon
from .config import DEFAULTS, Limits
from .errors import (
    DimensionTooLarge,
    DTooLarge,
    EvenCharacteristic,
    FieldTooLarge,
    GroupTooLarge,
    KTooLarge,
    NotAPrimePower,
    QTooSmall,
)

OK, VIOLATED, INVALID, CAP = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _limits(args) -> Limits:
    return replace(
        DEFAULTS,
        field_cap=args.field_cap,
        group_cap=args.group_cap,
        dense_dim_cap=args.dense_cap,
    )


def _out(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_sidon(path: str) -> sidon.SidonSet:
    try:
        return sidon.read(path)
    except (OSError, ValueError) as exc:
        raise CliError(INVALID, f"cannot read Sidon set {path}: {exc}") from exc


def _read_design(path: str) -> bh_design.WeightedDesign:
    try:
        return bh_design.read(path)
    except (OSError, ValueError) as exc:
        raise CliError(INVALID, f"cannot read design {path}: {exc}") from exc


# -- sidon -------------------------------------------------------------------------


def cmd_sidon_gen(args) -> int:
    lim = _limits(args)
    family = sidon.FAMILY_BY_NAME.get(args.family)
    if family is None:
        raise CliError(INVALID, f"unknown family {args.family!r}")
    try:
        if args.literal_paper:
            if family.tag != "Bose":
                raise CliError(INVALID, "--literal-paper only applies to the bose family")
            S = sidon.bose(args.q, cap=lim.field_cap, literal=True)
        else:
            S = family.build(args.q, cap=lim.field_cap)
        S = sidon.remove_points(S, args.remove)
    except (NotAPrimePower, EvenCharacteristic, QTooSmall, KTooLarge) as exc:
        raise CliError(INVALID, str(exc)) from exc
    except FieldTooLarge as exc:
        raise CliError(CAP, str(exc)) from exc
    text = sidon.dumps(S)
    params = f"({S.group.order}, {len(S)})"
    if args.output:
        _out(args, text)
        print(params)
    else:
        sys.stdout.write(text)
        print(params, file=sys.stderr)
    return OK


def cmd_sidon_verify(args) -> int:
    S = _read_sidon(args.input)
    bad = sidon.find_violation(S)
    if bad is None:
        print("SIDON")
        return OK
    a, b, c, d = (f"({e})" for e in bad)
    print(f"NOT SIDON: {a} + {b} = {c} + {d}")
    return VIOLATED


# -- design ------------------------------------------------------------------------


def cmd_design_build(args) -> int:
    lim = _limits(args)
    S = _read_sidon(args.input)
    try:
        D = bh_design.bodmann_haas(S, cap=lim.group_cap)
    except GroupTooLarge as exc:
        raise CliError(CAP, str(exc)) from exc
    except ValueError as exc:
        raise CliError(INVALID, str(exc)) from exc
    _out(args, bh_design.dumps(D))
    if args.output:
        print(f"dim {D.dim}, {len(D)} vectors, weight sum {D.exact_weight_sum()}")
    return OK


def cmd_design_verify(args) -> int:
    lim = _limits(args)
    D = _read_design(args.input)
    method = args.method or ("both" if D.dim <= lim.dense_dim_cap else "potential")
    certified = True
    if method in ("direct", "both"):
        try:
            residual = bh_design.verify_direct(D, cap=lim.dense_dim_cap)
        except DimensionTooLarge as exc:
            raise CliError(CAP, str(exc)) from exc
        tol = bh_design.direct_tolerance(D.dim) if args.tol is None else args.tol
        print(f"residual: {residual:.6e} (tol {tol:.1e})")
        certified &= residual <= tol
    if method in ("potential", "both"):
        rep = bh_design.verify_frame_potential(D, tol=args.tol, threads=args.threads)
        print(f"trace: {rep.trace:.12g} potential: {rep.potential:.12g} target: {D.target_trace}")
        certified &= rep.certified
    print("CERTIFIED" if certified else "NOT CERTIFIED")
    return OK if certified else VIOLATED


# -- bounds ------------------------------------------------------------------------


def cmd_bounds_table(args) -> int:
    if args.dmax > 2000:
        raise CliError(INVALID, "--dmax is capped at 2000")
    try:
        data = bounds.load_sic_data(args.sic_data)
    except (OSError, ValueError) as exc:
        raise CliError(INVALID, f"bad SIC data: {exc}") from exc
    records = bounds.table(args.dmax, data, kmax=args.kmax)
    render = bounds.to_csv if args.format == "csv" else bounds.to_markdown
    _out(args, render(records, data))
    return OK


def cmd_bounds_mdim(args) -> int:
    if args.d < 1:
        raise CliError(INVALID, "--d must be >= 1")
    if args.exact:
        try:
            print(f"{sidon.m_exact(args.d, cap=args.exact_cap)} (exact)")
        except DTooLarge as exc:
            raise CliError(CAP, str(exc)) from exc
        return OK
    choice = sidon.m_known_choice(args.d)
    print(f"{choice.order} via {choice.label}")
    return OK


def cmd_bounds_asymptotic(args) -> int:
    rep = bounds.asymptotic_check(args.dmax)
    print(f"max (m(d)+d-d^2)/d^1.525 over 2 <= d <= {rep.d_max}: {rep.max_ratio:.6f} at d = {rep.argmax}")
    print(f"m(d) <= p(d)^2 for all d: {'yes' if rep.below_prime_square else 'NO'}")
    print(f"m(d) >= d^2-d+1 for all d: {'yes' if rep.above_pigeonhole else 'NO'}")
    return OK if rep.below_prime_square and rep.above_pigeonhole else VIOLATED


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sidon-designs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="store_true", help="print version (with --verbose: defaults too)")
    parser.add_argument("--verbose", action="store_true")
    parser.add_argument("--threads", type=int, default=1, help="worker cap for Gram sums")
    parser.add_argument("--field-cap", type=int, default=DEFAULTS.field_cap)
    parser.add_argument("--group-cap", type=int, default=DEFAULTS.group_cap)
    parser.add_argument("--dense-cap", type=int, default=DEFAULTS.dense_dim_cap)
    top = parser.add_subparsers(dest="area")

    sp = top.add_parser("sidon").add_subparsers(dest="cmd", required=True)
    gen = sp.add_parser("gen", help="build a Sidon set from one of the five families")
    gen.add_argument("--family", required=True, help="erdos-turan | singer | bose | spence | hughes")
    gen.add_argument("--q", type=int, required=True)
    gen.add_argument("--remove", type=int, default=0)
    gen.add_argument("--literal-paper", action="store_true", help="bose only: trace-zero level set")
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_sidon_gen)
    ver = sp.add_parser("verify")
    ver.add_argument("-i", "--input", required=True)
    ver.set_defaults(func=cmd_sidon_verify)

    dp = top.add_parser("design").add_subparsers(dest="cmd", required=True)
    build = dp.add_parser("build")
    build.add_argument("-i", "--input", required=True)
    build.add_argument("-o", "--output")
    build.set_defaults(func=cmd_design_build)
    dver = dp.add_parser("verify")
    dver.add_argument("-i", "--input", required=True)
    dver.add_argument("--method", choices=("direct", "potential", "both"))
    dver.add_argument("--tol", type=float)
    dver.set_defaults(func=cmd_design_verify)

    bp = top.add_parser("bounds").add_subparsers(dest="cmd", required=True)
    tab = bp.add_parser("table")
    tab.add_argument("--dmax", type=int, default=150)
    tab.add_argument("--format", choices=("csv", "md"), default="csv")
    tab.add_argument("--sic-data", help=f"dimension list (default: ${bounds.SIC_DATA_ENV} or bundled)")
    tab.add_argument("--kmax", type=int, default=DEFAULTS.bound_b_kmax)
    tab.add_argument("-o", "--output")
    tab.set_defaults(func=cmd_bounds_table)
    md = bp.add_parser("mdim")
    md.add_argument("--d", type=int, required=True)
    md.add_argument("--exact", action="store_true")
    md.add_argument("--exact-cap", type=int, default=DEFAULTS.m_exact_cap)
    md.set_defaults(func=cmd_bounds_mdim)
    asy = bp.add_parser("asymptotic")
    asy.add_argument("--dmax", type=int, default=2000)
    asy.set_defaults(func=cmd_bounds_asymptotic)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.version:
        print(f"sidon-designs {__version__}")
        if args.verbose:
            print(json.dumps(_limits(args).as_dict(), indent=2, sort_keys=True))
        return OK
    if not getattr(args, "func", None):
        parser.print_help()
        return INVALID
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
