"""Command line entry point: ``qdmjj {iv,cv,dyn,resdyn} [options]``.

Exit status is 0 on success, 2 for configuration errors and 3 when any sweep
point (or a dynamics run) failed.
"""

import argparse
import logging
import sys
from pathlib import Path

from .config import ConfigError, RunConfig, apply_setting, load_config, load_preset, preset_names
from .liouvillian import ToleranceFailure
from .sweep import run

SUBCOMMANDS = {
    "iv": "iv_sweep",
    "cv": "cv_sweep",
    "dyn": "dynamics",
    "resdyn": "resonance_dynamics",
}

EXIT_OK, EXIT_CONFIG, EXIT_FAILED = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="qdmjj", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "iv": "steady-state current vs bias",
        "cv": "steady-state concurrence vs bias",
        "dyn": "time evolution at fixed bias",
        "resdyn": "time evolution on both sides of the gap resonances",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", metavar="PATH", help="key = value run configuration")
        p.add_argument("--preset", metavar="NAME",
                       help=f"figure preset ({', '.join(preset_names())})")
        p.add_argument("--out", metavar="PATH", help="output CSV path")
        p.add_argument("--kappa", type=float, help="coupling asymmetry factor in [0, 1]")
        p.add_argument("--delta-l", type=float, help="left lead gap")
        p.add_argument("--delta-r", type=float, help="right lead gap")
        p.add_argument("--points", type=int, help="base voltage grid points")
        p.add_argument("--no-coherent", action="store_true",
                       help="drop the -i[H, rho] term")
        p.add_argument("--cross-terms", action="store_true",
                       help="keep dissipator cross terms between equal-frequency jumps")
    return parser


def resolve_config(args) -> RunConfig:
    """Preset, then config file, then command-line flags; later wins."""
    cfg = load_preset(args.preset) if args.preset else RunConfig()
    if args.config:
        name = cfg.name if args.preset else None
        cfg = load_config(args.config, base=cfg)
        if name is None:
            cfg.name = Path(args.config).stem
    if not args.preset and not args.config:
        cfg.name = args.command
    cfg.mode = SUBCOMMANDS[args.command]
    if args.kappa is not None:
        apply_setting(cfg, "couplings.kappa", args.kappa)
    if args.delta_l is not None or args.delta_r is not None:
        # an explicit gap replaces any series from the preset or file
        cfg.series = None
        if args.delta_l is not None:
            apply_setting(cfg, "lead_left.delta", args.delta_l)
        if args.delta_r is not None:
            apply_setting(cfg, "lead_right.delta", args.delta_r)
    if args.points is not None:
        apply_setting(cfg, "v_grid.n_points", args.points)
    if args.no_coherent:
        apply_setting(cfg, "solver.include_coherent", False)
    if args.cross_terms:
        apply_setting(cfg, "solver.cross_terms", True)
    return cfg.validate()


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        result = run(cfg, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ToleranceFailure as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    for path in result.files:
        print(path)
    if result.n_failed:
        print(f"{result.n_failed} sweep point(s) failed", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
