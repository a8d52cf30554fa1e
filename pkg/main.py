import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from cli.commands import GEN_KINDS, cmd_gen, cmd_lowerbound
from cli.config import build_config, load_config_file, parse_list
from cli.sweep import cmd_sweep
from cli.verify import cmd_verify
from core.errors import SmartError

# verify returns 1 itself when an invariant fails
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smart",
        description="Instance-optimal online learning: sweeps, invariant suites and lower-bound numerics",
    )
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="regret of each policy over a sequence family")
    sweep.add_argument("--config", help="flat key = value file; flags override it")
    sweep.add_argument("--kind", dest="sequence_kind", choices=["bernoulli", "lead_change", "alternating"])
    sweep.add_argument("--n", type=int)
    sweep.add_argument("--grid", help="comma list or inclusive start:stop:step")
    sweep.add_argument("--policies", help="comma list, e.g. ftl,cover,smart")
    sweep.add_argument("--threshold-mode", choices=["deterministic", "randomized"])
    sweep.add_argument("--worst-case", help="policy SMART switches to")
    sweep.add_argument("--exact-bound", dest="asymptotic_bound", action="store_const", const=False,
                       help="use the exact f_n instead of sqrt(n / 2 pi) as g(n)")
    sweep.add_argument("--seeds", help="comma list or inclusive start:stop:step")
    sweep.add_argument("--output")

    verify = sub.add_parser("verify", help="run invariant suites")
    verify.add_argument("suite", help="identity, cover, crossings, lowerbound, smallloss or all")
    verify.add_argument("--quick", action="store_true", help="desk-scale instance counts")

    lower = sub.add_parser("lowerbound", help="print the limiting constant and finite-n ratios")
    lower.add_argument("--horizons", help="comma list of even n")

    gen = sub.add_parser("gen", help="write a generated sequence or loss file")
    gen.add_argument("kind", choices=GEN_KINDS)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--param", type=float)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--m", type=int, default=2)
    gen.add_argument("--as-losses", action="store_true")
    gen.add_argument("--output", required=True)
    return parser


def run(args: argparse.Namespace) -> int:
    if args.command == "sweep":
        flags = {
            "sequence_kind": args.sequence_kind,
            "n": args.n,
            "grid": parse_list(args.grid) if args.grid else None,
            "policies": parse_list(args.policies) if args.policies else None,
            "threshold_mode": args.threshold_mode,
            "worst_case": args.worst_case,
            "asymptotic_bound": args.asymptotic_bound,
            "seeds": parse_list(args.seeds) if args.seeds else None,
            "output": args.output,
        }
        file_values = load_config_file(args.config) if args.config else None
        return cmd_sweep(build_config(file_values, flags))
    if args.command == "verify":
        return cmd_verify(args.suite, quick=args.quick)
    if args.command == "lowerbound":
        horizons = [int(h) for h in parse_list(args.horizons)] if args.horizons else None
        return cmd_lowerbound(horizons)
    return cmd_gen(args.kind, args.n, args.output, args.param, args.seed, args.m, args.as_losses)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(asctime)s %(name)s %(levelname)s %(message)s")
    try:
        return run(args)
    except (SmartError, ValidationError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
