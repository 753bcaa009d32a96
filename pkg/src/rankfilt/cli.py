"""Command-line front end.

Four verbs: noise (corrupt an image), denoise (run one filter), metrics
(compare original/noisy/denoised), sweep (full benchmark grid to CSV).

Exit status: 0 success, 1 usage or parameter error, 2 I/O or file-format
error.
"""

import argparse
import math
import sys

import numpy as np

from .filters import FilterKind, FilterSpec, apply_filter
from .image import BorderPolicy, GrayImage
from .metrics import evaluate
from .noise import NoiseKind, NoiseMask, NoiseSpec, inject
from .pgm import PgmError, load_pgm, save_pgm
from .sweep import (
    DEFAULT_DENSITIES,
    SweepConfig,
    SweepError,
    default_filters,
    report_to_csv,
    run_sweep,
    synthetic_textured,
)

_NOISE_KINDS = {
    "sp": NoiseKind.SALT_PEPPER,
    "fixed": NoiseKind.FIXED_IMPULSE,
    "random": NoiseKind.RANDOM_IMPULSE,
    "gauss": NoiseKind.GAUSSIAN,
}

_BORDERS = {
    "replicate": BorderPolicy.REPLICATE,
    "reflect": BorderPolicy.REFLECT,
}


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    p = _Parser(prog="rankfilt", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    n = sub.add_parser("noise", help="corrupt a PGM image")
    n.add_argument("--kind", choices=sorted(_NOISE_KINDS), default="sp")
    n.add_argument("--density", type=float, default=0.0)
    n.add_argument("--low", type=int, default=0)
    n.add_argument("--high", type=int, default=255)
    n.add_argument("--sigma", type=float, default=0.0)
    n.add_argument("--seed", type=int, default=0)
    n.add_argument("--mask", metavar="MASKOUT",
                   help="also write the touched-pixel mask as a 0/255 PGM")
    n.add_argument("input")
    n.add_argument("output")

    d = sub.add_parser("denoise", help="run one filter over a PGM image")
    d.add_argument(
        "--filter",
        dest="filter_name",
        choices=["median", "wm", "cwm", "amf"],
        required=True,
    )
    d.add_argument("--side", type=int, default=3,
                   help="window side; the starting window for amf")
    d.add_argument("--center-weight", type=int, default=3)
    d.add_argument("--weights",
                   help="comma-separated row-major weights (wm only)")
    d.add_argument("--wmax", type=int, default=7)
    d.add_argument("--fallback", choices=["median", "center"],
                   default="median")
    d.add_argument("--border", choices=sorted(_BORDERS), default="replicate")
    d.add_argument("input")
    d.add_argument("output")

    m = sub.add_parser("metrics",
                       help="print mse,psnr_db,pona_pct as one CSV line")
    m.add_argument("--original", required=True)
    m.add_argument("--noisy", required=True)
    m.add_argument("--denoised", required=True)
    m.add_argument("--mask", help="0/255 PGM from `noise --mask`")

    s = sub.add_parser("sweep", help="benchmark grid; writes a CSV report")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--image", help="clean source PGM")
    src.add_argument("--synthetic", metavar="WxH",
                     help="generate the textured test scene, e.g. 256x256")
    s.add_argument("--densities",
                   default=",".join(str(x) for x in DEFAULT_DENSITIES))
    s.add_argument("--filters", default="cwm:3,amf:7",
                   help="e.g. median:3,wm:3,cwm:3,amf:7")
    s.add_argument("--trials", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True, help="CSV path")
    s.add_argument("--dump-images", metavar="DIR")
    return p


def _parse_filter_token(token: str) -> FilterSpec:
    name, _, arg = token.partition(":")
    name = name.strip()
    arg = arg.strip()

    def as_int(what):
        if not arg:
            raise ValueError(f"filter {name!r} needs :{what}")
        try:
            return int(arg)
        except ValueError:
            raise ValueError(
                f"bad {what} {arg!r} in filter token {token!r}"
            ) from None

    if name == "median":
        side = as_int("side") if arg else 3
        return FilterSpec(FilterKind.MEDIAN, side=side)
    if name == "wm":
        # Shorthand: wm:SIDE is the all-ones weighted median of that side.
        side = as_int("side") if arg else 3
        return FilterSpec(
            FilterKind.WEIGHTED_MEDIAN, side=side,
            weights=(1,) * (side * side),
        )
    if name == "cwm":
        cw = as_int("center weight") if arg else 3
        return FilterSpec(FilterKind.CENTER_WEIGHTED_MEDIAN, center_weight=cw)
    if name == "amf":
        w_max = as_int("w_max") if arg else 7
        return FilterSpec(FilterKind.ADAPTIVE_MEDIAN, w_max=w_max)
    raise ValueError(f"unknown filter {name!r}")


def _parse_filters(text: str) -> tuple:
    tokens = [t for t in text.split(",") if t.strip()]
    if not tokens:
        raise ValueError("no filters given")
    return tuple(_parse_filter_token(t) for t in tokens)


def _parse_densities(text: str) -> tuple:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ValueError(f"bad density list {text!r}") from None


def _parse_size(text: str) -> tuple:
    w, sep, h = text.lower().partition("x")
    if not sep or not w.isdigit() or not h.isdigit():
        raise ValueError(f"bad size {text!r}, expected WxH")
    return int(w), int(h)


def _fmt(v) -> str:
    if v is None:
        return ""
    if math.isinf(v):
        return "inf"
    return format(v, ".6g")


def _cmd_noise(args) -> int:
    spec = NoiseSpec(
        kind=_NOISE_KINDS[args.kind],
        density=args.density,
        low=args.low,
        high=args.high,
        sigma=args.sigma,
        seed=args.seed,
    )
    image = load_pgm(args.input)
    noisy, mask = inject(image, spec)
    save_pgm(args.output, noisy)
    if args.mask:
        flags = np.where(mask.flags, 255, 0).astype(np.uint8)
        save_pgm(args.mask, GrayImage(flags))
    return 0


def _cmd_denoise(args) -> int:
    kind = FilterKind(args.filter_name)
    weights = None
    if args.weights is not None:
        try:
            weights = tuple(int(t) for t in args.weights.split(","))
        except ValueError:
            raise ValueError(f"bad weight list {args.weights!r}") from None
    spec = FilterSpec(
        kind=kind,
        side=args.side,
        center_weight=args.center_weight,
        weights=weights,
        w_init=args.side,
        w_max=args.wmax,
        fallback=args.fallback,
    )
    border = _BORDERS[args.border]
    image = load_pgm(args.input)
    save_pgm(args.output, apply_filter(image, spec, border))
    return 0


def _cmd_metrics(args) -> int:
    original = load_pgm(args.original)
    noisy = load_pgm(args.noisy)
    denoised = load_pgm(args.denoised)
    mask = None
    if args.mask:
        mask = NoiseMask(load_pgm(args.mask).pixels != 0)
    report = evaluate(original, noisy, denoised, mask)
    print(f"{_fmt(report.mse)},{_fmt(report.psnr_db)},"
          f"{_fmt(report.pona_pct)}")
    return 0


def _cmd_sweep(args) -> int:
    if args.image is not None:
        source = load_pgm(args.image)
    else:
        w, h = _parse_size(args.synthetic)
        source = synthetic_textured(w, h)
    config = SweepConfig(
        source=source,
        densities=_parse_densities(args.densities),
        filters=_parse_filters(args.filters),
        seed=args.seed,
        trials=args.trials,
    )
    report = run_sweep(config, dump_dir=args.dump_images)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write(report_to_csv(report))
    return 0


_COMMANDS = {
    "noise": _cmd_noise,
    "denoise": _cmd_denoise,
    "metrics": _cmd_metrics,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return _COMMANDS[args.verb](args)
    except (PgmError, OSError) as exc:
        print(f"rankfilt: {exc}", file=sys.stderr)
        return 2
    except SweepError as exc:
        print(f"rankfilt: {exc}", file=sys.stderr)
        cause = exc.__cause__
        return 2 if isinstance(cause, (PgmError, OSError)) else 1
    except ValueError as exc:
        print(f"rankfilt: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
