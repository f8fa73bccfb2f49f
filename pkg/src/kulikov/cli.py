"""Command-line entry point: ``kulikov <command> [options]``.

Exit status is 0 when every fixture comparison passes, 1 when one fails
and 2 for input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import commands
from .errors import KulikovError, RelatorVerificationError


def _common(p: argparse.ArgumentParser) -> None:
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="emit a JSON report (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="emit a plain text report")
    p.add_argument("--fixtures", metavar="PATH", help="fixture file to compare against")
    p.add_argument("--fail-fast", action="store_true", help="stop comparing at the first failed fixture")
    p.set_defaults(fmt="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kulikov", description="Reproduce invariants, tables and group computations for Kulikov surfaces."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="smoothness report and K^2, chi, p_g, q of a cover")
    p.add_argument("--config", default=commands.DEFAULT_CONFIG, metavar="PATH")
    _common(p)

    p = sub.add_parser("tables", help="eigensheaf decomposition of the tangent or bicanonical sheaf")
    p.add_argument("which", choices=sorted(commands.TABLE_FIXTURES))
    p.add_argument("--config", default=commands.DEFAULT_CONFIG, metavar="PATH")
    _common(p)

    p = sub.add_parser("homology", help="abelianization of the fundamental group or an index-3 subgroup")
    p.add_argument("target", nargs="?", default="gamma", choices=["gamma", "sigma1", "sigma2", "sigma3"])
    _common(p)

    p = sub.add_parser("bloch", help="ideal membership test for z(G2)")
    p.add_argument("mode", nargs="?", default="full", choices=["full", "without-extra", "custom"])
    p.add_argument(
        "--triples",
        default="",
        metavar="LIST",
        help='custom generator triples, e.g. "w1,w2,w3; xi3*w1,xi2*w2,xi2*w3"',
    )
    _common(p)

    p = sub.add_parser("free-action", help="fixed points of G2 on E^3 and the relation suite")
    _common(p)

    p = sub.add_parser("relation", help="check a single identity between words in the affine model")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--mod-lattice", action="store_true", help="compare as maps of E^3 instead of C^3")
    _common(p)
    return parser


def run(args: argparse.Namespace):
    fx, ff = args.fixtures, args.fail_fast
    if args.command == "invariants":
        return commands.cmd_invariants(args.config, fx, ff)
    if args.command == "tables":
        return commands.cmd_tables(args.which, args.config, fx, ff)
    if args.command == "homology":
        return commands.cmd_homology(args.target, fx or "homology.json", ff)
    if args.command == "bloch":
        return commands.cmd_bloch(args.mode, args.triples, fx or "bloch.json", ff)
    if args.command == "free-action":
        return commands.cmd_free_action(fx or "free_action.json", ff)
    return commands.cmd_relation(args.lhs, args.rhs, args.mod_lattice)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except RelatorVerificationError as exc:
        print(f"error: relator fails in the affine model: {exc.relator}", file=sys.stderr)
        return 2
    except (KulikovError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.dumps() if args.fmt == "json" else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
