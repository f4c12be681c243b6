import argparse
import pathlib
import sys

from zeropi._cli._config import ConfigError, MODES, parse_config
from zeropi._cli._run import run

MODE_HELP = {
    "spectrum": "Lowest levels and degeneracy of one device.",
    "flux-sweep": "Spectrum and degeneracy versus external flux.",
    "dmax-grid": "Optimal E_J and D_max over a grid of E_L and E_CSigma.",
    "ej-optimize": "Optimal E_J and D_max of one (E_L, E_CSigma) pair.",
    "disorder-sweep": "Spectrum and degeneracy versus junction disorder.",
    "dispersive": "Couplings to the chi mode and the resulting level shifts.",
    "wavefunction-export": "Eigenfunctions on the (phi, theta) grid.",
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zeropi",
        description="Finite-difference spectra of the 0-pi circuit.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        p = sub.add_parser(mode, help=MODE_HELP[mode], description=MODE_HELP[mode])
        p.add_argument(
            "--config",
            type=str,
            required=True,
            help="Path to the INI run configuration. "
                 "See doc/developers.md for the grammar.",
        )
        p.add_argument(
            "--out",
            type=str,
            default=None,
            help="Output directory. Overrides [run] out.",
        )
        p.add_argument(
            "--workers",
            type=int,
            default=None,
            help="Number of worker processes for sweeps. Overrides [run] workers.",
        )
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help="Seed of the eigensolver starting vectors. Overrides [run] seed.",
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        text = pathlib.Path(args.config).read_text()
    except OSError as ex:
        print(f"{args.config}: {ex}", file=sys.stderr)
        return 2
    try:
        config = parse_config(text, mode=args.mode).with_overrides(
            out=args.out,
            workers=args.workers,
            seed=args.seed,
        )
    except ConfigError as ex:
        print(f"{args.config}: {ex}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == '__main__':
    sys.exit(main())
