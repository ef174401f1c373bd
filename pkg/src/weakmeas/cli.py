"""Command-line front end: ``weakmeas {weak,pointer,classical,sweep}``.

Exit codes: 0 success, 2 input error, 3 singular post-selection,
4 grid larger than the resource cap.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from .classical import (
    ClassicalModelParams,
    binomial_sigma,
    fc_monte_carlo,
    fc_rescaled_average,
    fc_route_probabilities,
    normality_audit,
)
from .errors import GridTooCoarse, InvalidParams, InvalidState, NullDensity, SingularPostselection
from .pointer import (
    MixtureForm,
    MixtureSpec,
    PointerConfig,
    mixed_reading_density,
    strong_outcome_probabilities,
)
from .qubit import (
    AmplitudePair,
    QubitState,
    classify_weak,
    strong_average,
    transition_amplitudes,
    weak_value,
)

log = logging.getLogger("weakmeas")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SINGULAR = 3
EXIT_RESOURCE = 4

SEED_ENV = "WEAKMEAS_SEED"
RENORM_WARN_TOL = 1e-6


class InputError(Exception):
    """Bad command-line input; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


# ---------------------------------------------------------------- parsing


def parse_complex(text: str) -> complex:
    """Parse ``"re,im"`` or a Python/engineering literal such as ``0+101i``."""
    text = text.strip()
    try:
        if "," in text:
            re_s, im_s = text.split(",")
            return complex(float(re_s), float(im_s))
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None


def parse_state(text: str) -> QubitState:
    """Parse ``"reUp,imUp,reDown,imDown"`` and normalize it.

    Normalization is silent when the squared norm is within 1e-6 of one and
    logged as a warning otherwise.
    """
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"cannot parse state {text!r}") from None
    if len(parts) != 4:
        raise InputError(f"state needs 4 comma-separated numbers, got {text!r}")
    up, down = complex(parts[0], parts[1]), complex(parts[2], parts[3])
    norm2 = abs(up) ** 2 + abs(down) ** 2
    if abs(norm2 - 1.0) > RENORM_WARN_TOL:
        log.warning("state %r has squared norm %.6g; normalizing", text, norm2)
    try:
        return QubitState.normalized(up, down)
    except InvalidState as exc:
        raise InputError(str(exc)) from None


def _amplitudes(args) -> AmplitudePair:
    direct = args.a1 is not None or args.a2 is not None
    states = args.pre is not None or args.post is not None
    if direct and states:
        raise InputError("give either --pre/--post or --a1/--a2, not both")
    if direct:
        if args.a1 is None or args.a2 is None:
            raise InputError("both --a1 and --a2 are required")
        return AmplitudePair(parse_complex(args.a1), parse_complex(args.a2))
    if states:
        if args.pre is None or args.post is None:
            raise InputError("both --pre and --post are required")
        return transition_amplitudes(parse_state(args.pre), parse_state(args.post))
    raise InputError("amplitudes required: --pre/--post or --a1/--a2")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _classical_params(lam: float, delta: float) -> ClassicalModelParams:
    try:
        return ClassicalModelParams(lam, delta)
    except InvalidParams as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------- output


def fmt(x: float) -> str:
    """17 significant digits; round-trips every double."""
    return f"{x:.17g}"


def _complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _emit_json(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2, allow_nan=False))
    out.write("\n")


def _open_out(path: str | None, default: TextIO):
    if path is None or path == "-":
        return _NoClose(default)
    return open(path, "w", newline="", encoding="utf-8")


class _NoClose:
    def __init__(self, fh):
        self.fh = fh

    def __enter__(self):
        return self.fh

    def __exit__(self, *exc):
        return False


# ---------------------------------------------------------------- commands


def weak_report(amps: AmplitudePair) -> dict:
    wv = weak_value(amps)
    cls = classify_weak(amps)
    return {
        "amplitudes": {"a1": _complex_pair(amps.a1), "a2": _complex_pair(amps.a2)},
        "strong_average": strong_average(amps),
        "weak_value": wv.weak_value,
        "weak_value_imag": wv.imag,
        "quasi_p1": wv.quasi_p1,
        "quasi_p2": wv.quasi_p2,
        "classification": cls.to_dict(),
    }


def cmd_weak(args, out: TextIO) -> int:
    _emit_json(weak_report(_amplitudes(args)), out)
    return EXIT_OK


def _mixture(args) -> MixtureSpec | None:
    if args.mix_width is None or args.mix_width == 0:
        return None
    try:
        return MixtureSpec(args.mix_width, MixtureForm(args.mix_form))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def pointer_summary(amps: AmplitudePair, cfg: PointerConfig, mix: MixtureSpec | None):
    density = mixed_reading_density(amps, cfg, mix or MixtureSpec(0.0))
    mean = density.mean()
    summary = {
        "delta_f": cfg.delta_f,
        "f_prime": cfg.f_prime,
        "mix_width": 0.0 if mix is None else mix.width,
        "mix_form": None if mix is None else mix.form.value,
        "n_points": int(density.f.size),
        "f_min": float(density.f[0]),
        "f_max": float(density.f[-1]),
        "mean": mean,
        "variance": density.variance(),
        "strong_average": strong_average(amps),
        "strong_probabilities": list(strong_outcome_probabilities(amps)),
        "mean_minus_strong": mean - cfg.f_prime - strong_average(amps),
    }
    try:
        wv = weak_value(amps).weak_value
        summary["weak_value"] = wv
        summary["mean_minus_weak"] = mean - cfg.f_prime - wv
    except SingularPostselection:
        summary["weak_value"] = None
        summary["mean_minus_weak"] = None
    return density, summary


def cmd_pointer(args, out: TextIO) -> int:
    amps = _amplitudes(args)
    if not (math.isfinite(args.delta_f) and args.delta_f > 0):
        raise InputError("--delta-f must be positive")
    cfg = PointerConfig.auto(args.delta_f, args.f_prime)
    density, summary = pointer_summary(amps, cfg, _mixture(args))
    if args.output is not None:
        density.to_csv(args.output)
    if args.summary is not None and args.summary != "-":
        with open(args.summary, "w", encoding="utf-8") as fh:
            _emit_json(summary, fh)
    else:
        _emit_json(summary, out)
    return EXIT_OK


def cmd_classical(args, out: TextIO) -> int:
    params = _classical_params(args.lam, args.delta)
    if args.n < 1:
        raise InputError("--n must be >= 1")
    if args.shards < 1:
        raise InputError("--shards must be >= 1")
    seed = _default_seed() if args.seed is None else args.seed
    report = fc_monte_carlo(params, args.n, seed, raw=args.raw, shards=args.shards)
    _emit_json(report.to_dict(), out)
    return EXIT_OK


# ---------------------------------------------------------------- sweep


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    n_steps: int
    scale: str = "linear"

    PARAMETERS = ("delta_f", "delta", "lambda", "mix_width")

    def __post_init__(self) -> None:
        if self.parameter not in self.PARAMETERS:
            raise InputError(f"unknown sweep parameter {self.parameter!r}")
        if self.scale not in ("linear", "log"):
            raise InputError(f"unknown scale {self.scale!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise InputError("sweep bounds must be finite")
        if not self.start < self.stop:
            raise InputError("sweep needs start < stop")
        if self.n_steps < 2:
            raise InputError("sweep needs at least 2 steps")
        if self.scale == "log" and self.start <= 0:
            raise InputError("log sweep needs start > 0")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.n_steps)
        return np.linspace(self.start, self.stop, self.n_steps)


POINTER_COLUMNS = [
    "delta_f", "f_prime", "mix_width", "mean", "variance",
    "strong_average", "weak_value", "mean_minus_strong", "mean_minus_weak",
]
CLASSICAL_COLUMNS = [
    "lambda", "delta", "p1", "p2", "rescaled_average", "bound",
    "kind", "sample_mean_rescaled", "sigma",
]


def _pointer_row(amps, delta_f, f_prime, mix_width, mix_form) -> list:
    mix = MixtureSpec(mix_width, MixtureForm(mix_form)) if mix_width > 0 else None
    _, s = pointer_summary(amps, PointerConfig.auto(delta_f, f_prime), mix)
    return [
        delta_f, f_prime, mix_width, s["mean"], s["variance"],
        s["strong_average"], s["weak_value"], s["mean_minus_strong"], s["mean_minus_weak"],
    ]


def _classical_row(lam, delta, n, seed) -> list:
    params = _classical_params(lam, delta)
    p1, p2 = fc_route_probabilities(params)
    if n > 0:
        sample = fc_monte_carlo(params, n, seed).sample_mean_rescaled
        sigma = binomial_sigma(params, n)
    else:
        sample = sigma = None
    return [
        lam, delta, p1, p2, fc_rescaled_average(params), params.bound,
        normality_audit(params).kind.value, sample, sigma,
    ]


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return fmt(x)
    return str(x)


def sweep_rows(spec: SweepSpec, args) -> tuple[list[str], list[list]]:
    values = [float(v) for v in spec.values()]
    if spec.parameter in ("delta_f", "mix_width"):
        amps = _amplitudes(args)
        base = {"delta_f": args.delta_f, "mix_width": args.mix_width or 0.0}
        if spec.parameter == "mix_width" and spec.start < 0:
            raise InputError("mix_width sweep needs start >= 0")

        def row(v: float) -> list:
            kw = dict(base, **{spec.parameter: v})
            return _pointer_row(amps, kw["delta_f"], args.f_prime, kw["mix_width"], args.mix_form)

        return POINTER_COLUMNS, [row(v) for v in values]

    seed = _default_seed() if args.seed is None else args.seed

    def row(v: float) -> list:
        lam = v if spec.parameter == "lambda" else args.lam
        delta = v if spec.parameter == "delta" else args.delta
        if lam is None or delta is None:
            raise InputError("classical sweeps need --lambda and --delta fixed")
        return _classical_row(lam, delta, args.n, seed)

    return CLASSICAL_COLUMNS, [row(v) for v in values]


def write_csv(header: Sequence[str], rows: Sequence[Sequence], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for r in rows:
        writer.writerow([_cell(x) for x in r])


def cmd_sweep(args, out: TextIO) -> int:
    spec = SweepSpec(args.parameter, args.start, args.stop, args.n_steps, args.scale)
    if spec.parameter == "delta_f" and spec.start <= 0:
        raise InputError("delta_f sweep needs start > 0")
    header, rows = sweep_rows(spec, args)
    with _open_out(args.output, out) as fh:
        write_csv(header, rows, fh)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_amplitude_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("amplitudes (either states or route amplitudes)")
    g.add_argument("--pre", help='pre-selected state "reUp,imUp,reDown,imDown"')
    g.add_argument("--post", help='post-selected state "reUp,imUp,reDown,imDown"')
    g.add_argument("--a1", help='route amplitude through |up>, "re,im" or e.g. 0+101i')
    g.add_argument("--a2", help='route amplitude through |down>, "re,im" or e.g. 0-99i')


def _add_mix_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mix-width", type=float, default=None,
                   help="std of the classical spread of the initial pointer setting")
    p.add_argument("--mix-form", choices=[m.value for m in MixtureForm], default="gaussian")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weakmeas", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("weak", help="strong average, weak value and classification")
    _add_amplitude_flags(p)
    p.set_defaults(func=cmd_weak)

    p = sub.add_parser("pointer", help="reading density (CSV) and summary (JSON)")
    _add_amplitude_flags(p)
    p.add_argument("--delta-f", type=float, required=True, help="pointer width")
    p.add_argument("--f-prime", type=float, default=0.0, help="initial pointer setting")
    _add_mix_flags(p)
    p.add_argument("-o", "--output", help="CSV path for the density (f,p)")
    p.add_argument("--summary", help="JSON summary path (default: stdout)")
    p.set_defaults(func=cmd_pointer)

    p = sub.add_parser("classical", help="Monte Carlo run of the classical coin protocol")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--n", type=int, default=10**6, help="number of trials")
    p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--raw", action="store_true", help="record +-1 instead of +-1/lambda")
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("sweep", help="one CSV row per parameter value")
    p.add_argument("--parameter", required=True, choices=SweepSpec.PARAMETERS)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--n-steps", type=int, required=True)
    p.add_argument("--scale", choices=["linear", "log"], default="linear")
    _add_amplitude_flags(p)
    p.add_argument("--delta-f", type=float, default=1.0)
    p.add_argument("--f-prime", type=float, default=0.0)
    _add_mix_flags(p)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--n", type=int, default=0,
                   help="Monte Carlo trials per row for classical sweeps (0: exact only)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_sweep)
    return parser


# Flags whose values may start with "-" (negative real parts).
_SIGNED_VALUE_FLAGS = ("--pre", "--post", "--a1", "--a2")


def _bind_signed_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--a2 -0.5,1`` as ``--a2=-0.5,1`` so argparse accepts it."""
    argv = list(argv)
    merged: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _SIGNED_VALUE_FLAGS and i + 1 < len(argv):
            merged.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            merged.append(tok)
            i += 1
    return merged


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    argv = _bind_signed_values(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            log.setLevel(logging.DEBUG)
        return args.func(args, out)
    except InputError as exc:
        print(f"weakmeas: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SingularPostselection as exc:
        print(f"weakmeas: singular post-selection: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except GridTooCoarse as exc:
        print(f"weakmeas: grid cap exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (NullDensity, InvalidParams, ValueError) as exc:
        print(f"weakmeas: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
