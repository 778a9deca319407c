"""Command-line front end over the expansion, cross-check, and verdict layers."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from habiro.asym import profile_for_family, ratio_diagnostics
from habiro.exact import PRECISION_CAP, PrecisionCapError
from habiro.families import (
    FAMILY_KINDS,
    FamilySpec,
    cached_expansion,
    identity_for,
)
from habiro.qseries import TruncatedSeries, binomial_transform, transform_g, transform_h
from habiro.signcheck import verify_positivity
from habiro.thetaside import b_sequence, c_sequence, xi_from_theta

TRANSFORMS = ("one-minus-q", "inv-one-plus-q", "ratio")
FORMATS = ("csv", "json", "plain")


class _Parser(argparse.ArgumentParser):
    """Parser whose usage failures exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _span(text: str) -> tuple[int, int]:
    """Parse '3' or '1:10' into an inclusive integer range."""
    lo, sep, hi = text.partition(":")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer range: {text!r}")
    if hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"empty range: {text!r}")
    return lo_i, hi_i


def _samples(text: str) -> list[int]:
    try:
        out = [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("need at least one sample index")
    return out


def _build_parser() -> _Parser:
    parser = _Parser(prog="habiro", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, spans: bool = False):
        p.add_argument("--family", required=True, choices=FAMILY_KINDS)
        if spans:
            for name in ("t", "m", "k"):
                p.add_argument(f"--{name}", type=_span, default=None,
                               help="single value or inclusive lo:hi range")
            p.add_argument("--ell", type=int, default=None)
        else:
            for name in ("t", "m", "ell", "k"):
                p.add_argument(f"--{name}", type=int, default=None)
        p.add_argument("--format", choices=FORMATS, default=None)
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--precision-cap", type=int, default=PRECISION_CAP)

    p = sub.add_parser("expand", help="coefficient sequence of a family")
    common(p)
    p.add_argument("--transform", choices=TRANSFORMS, default="one-minus-q")
    p.add_argument("-N", type=int, required=True, help="last coefficient index")
    p.set_defaults(handler=cmd_expand, default_format="plain")

    p = sub.add_parser("crosscheck", help="compare the two coefficient routes")
    common(p)
    p.add_argument("-N", type=int, required=True)
    p.set_defaults(handler=cmd_crosscheck, default_format="plain")

    p = sub.add_parser("verify", help="positivity verdicts over a parameter range")
    common(p, spans=True)
    p.set_defaults(handler=cmd_verify, default_format="plain")

    p = sub.add_parser("asym", help="exact-to-main-term ratio diagnostics")
    common(p)
    p.add_argument("--transform", choices=TRANSFORMS, default="one-minus-q")
    p.add_argument("-N", type=int, default=None,
                   help="direct-expansion order; defaults to the theta-side route")
    p.add_argument("--samples", type=_samples, required=True)
    p.set_defaults(handler=cmd_asym, default_format="csv")

    return parser


def _spec_from_args(args) -> FamilySpec:
    params = {name: getattr(args, name) for name in ("t", "m", "ell", "k")
              if getattr(args, name) is not None}
    return FamilySpec(args.family, **params)


def _cache_dir(args) -> Path:
    if args.cache_dir is not None:
        return Path(args.cache_dir)
    env = os.environ.get("HABIRO_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "habiro"


def _fmt(args) -> str:
    return args.format if args.format is not None else args.default_format


def _emit_csv(rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload) + "\n")


def _apply_transform(spec: FamilySpec, xi: TruncatedSeries, transform: str) -> TruncatedSeries:
    if transform == "one-minus-q":
        return xi
    if transform == "inv-one-plus-q":
        # published one-over-one-plus-q rows for the odd-weight family follow
        # the unsigned binomial convention
        if spec.kind == "habiro-g":
            return binomial_transform(xi)
        return transform_g(xi)
    return transform_h(xi)


def _theta_series(spec: FamilySpec, order: int) -> TruncatedSeries:
    ident = identity_for(spec)
    return xi_from_theta(b_sequence(ident, c_sequence(ident, order)), order)


def cmd_expand(args) -> int:
    spec = _spec_from_args(args)
    xi = cached_expansion(spec, args.N, _cache_dir(args))
    coeffs = _apply_transform(spec, xi, args.transform).integer_coeffs()
    fmt = _fmt(args)
    if fmt == "plain":
        sys.stdout.write(", ".join(str(c) for c in coeffs) + "\n")
    elif fmt == "csv":
        _emit_csv([("n", "coefficient")] + [(str(n), str(c)) for n, c in enumerate(coeffs)])
    else:
        _emit_json({
            "family": spec.kind,
            "params": spec.params(),
            "transform": args.transform,
            "N": args.N,
            "coefficients": [str(c) for c in coeffs],
        })
    return 0


def _direct_route(spec: FamilySpec, N: int, cache_dir) -> list[int]:
    return cached_expansion(spec, N, cache_dir).integer_coeffs()


def _theta_route(spec: FamilySpec, N: int) -> list[int]:
    return _theta_series(spec, N).integer_coeffs()


def cmd_crosscheck(args) -> int:
    spec = _spec_from_args(args)
    direct = _direct_route(spec, args.N, _cache_dir(args))
    theta = _theta_route(spec, args.N)
    bad = next((n for n, (x, y) in enumerate(zip(direct, theta)) if x != y), None)
    fmt = _fmt(args)
    if bad is None:
        if fmt == "plain":
            sys.stdout.write(f"pass: {args.N + 1} coefficients agree\n")
        elif fmt == "csv":
            _emit_csv([("status", "index", "direct", "theta"),
                       ("pass", "", "", "")])
        else:
            _emit_json({"family": spec.kind, "params": spec.params(), "N": args.N,
                        "status": "pass", "checked": args.N + 1})
        return 0
    x, y = direct[bad], theta[bad]
    if fmt == "plain":
        sys.stdout.write(f"mismatch at n={bad}: direct {x}, theta-side {y}\n")
    elif fmt == "csv":
        _emit_csv([("status", "index", "direct", "theta"),
                   ("mismatch", str(bad), str(x), str(y))])
    else:
        _emit_json({"family": spec.kind, "params": spec.params(), "N": args.N,
                    "status": "mismatch", "index": bad, "direct": str(x), "theta": str(y)})
    return 2


def _verify_specs(args) -> tuple[str, list[FamilySpec]]:
    """Expand the range flags into concrete specs plus the varied-parameter name."""
    kind = args.family
    if kind == "fishburn":
        if any(getattr(args, name) is not None for name in ("t", "m", "ell", "k")):
            raise ValueError("family fishburn does not take parameters")
        return "", [FamilySpec.fishburn()]
    if kind == "torus32t":
        if args.t is None:
            raise ValueError("family torus32t needs parameter t")
        lo, hi = args.t
        return "t", [FamilySpec.torus32t(t) for t in range(lo, hi + 1)]
    if kind == "torus2":
        if args.m is None:
            raise ValueError("family torus2 needs parameter m")
        lo, hi = args.m
        specs = []
        for m in range(lo, hi + 1):
            ells = range(m) if args.ell is None else [args.ell]
            specs.extend(FamilySpec.torus2(m, ell) for ell in ells)
        return "m", specs
    if args.k is None:
        raise ValueError("family habiro-g needs parameter k")
    lo, hi = args.k
    return "k", [FamilySpec.habiro_g(k) for k in range(lo, hi + 1)]


def cmd_verify(args) -> int:
    varied, specs = _verify_specs(args)
    verdicts = [verify_positivity(spec, cap=args.precision_cap) for spec in specs]
    fmt = _fmt(args)

    def shown(v) -> str:
        return "-" if v.verdict == "undecided-at-precision-cap" else str(v.n_used)

    if fmt == "plain":
        lines = []
        if varied == "m" and args.ell is None:
            # one row per m, check counts across ell, mirroring the table layout
            by_m: dict[int, list[str]] = {}
            for spec, v in zip(specs, verdicts):
                by_m.setdefault(spec.m, []).append(shown(v))
            for m, counts in by_m.items():
                lines.append(f"m={m}: " + " ".join(counts))
        elif varied:
            keys = [spec.params()[varied] for spec in specs]
            lines.append(f"{varied}: " + " ".join(str(k) for k in keys))
            lines.append("N: " + " ".join(shown(v) for v in verdicts))
        else:
            lines.append(f"N: {shown(verdicts[0])}")
        bad = [(spec, v) for spec, v in zip(specs, verdicts) if v.verdict != "proved-positive"]
        if bad:
            lines.extend(f"{spec.label()}: {v.verdict}" for spec, v in bad)
        else:
            lines.append("verdict: all proved-positive")
        sys.stdout.write("\n".join(lines) + "\n")
    elif fmt == "csv":
        rows = [("family", "N", "verdict")]
        rows.extend((spec.label(), shown(v), v.verdict)
                    for spec, v in zip(specs, verdicts))
        _emit_csv(rows)
    else:
        _emit_json([json.loads(v.to_json()) for v in verdicts])
    if any(v.verdict == "condition-failed" for v in verdicts):
        return 2
    if any(v.verdict == "undecided-at-precision-cap" for v in verdicts):
        return 3
    return 0


def cmd_asym(args) -> int:
    spec = _spec_from_args(args)
    samples = args.samples
    profile = profile_for_family(spec, cap=args.precision_cap)
    top = max(samples)
    if args.N is not None:
        if args.N < top:
            raise ValueError("-N must cover the largest sample index")
        series = cached_expansion(spec, args.N, _cache_dir(args))
    else:
        series = _theta_series(spec, top)
    # the shifted main terms describe the alternating transforms
    which = {"one-minus-q": "xi", "inv-one-plus-q": "g", "ratio": "h"}[args.transform]
    if which == "g":
        series = transform_g(series)
    elif which == "h":
        series = transform_h(series)
    rows = ratio_diagnostics(series, profile, samples, which=which)
    table = []
    for sample in rows:
        digits = len(str(abs(series.coefficient(sample.n))))
        if sample.zero_coefficient:
            table.append((sample.n, digits, None))
        else:
            table.append((sample.n, digits, abs(sample.ratio).log().mid_float()))
    fmt = _fmt(args)
    if fmt == "csv":
        out = [("n", "digits", "log_ratio")]
        out.extend((str(n), str(d), "" if r is None else repr(r)) for n, d, r in table)
        _emit_csv(out)
    elif fmt == "plain":
        sys.stdout.write("\n".join(
            f"n={n} digits={d} log_ratio={'' if r is None else repr(r)}"
            for n, d, r in table) + "\n")
    else:
        _emit_json({
            "family": spec.kind,
            "params": spec.params(),
            "transform": args.transform,
            "samples": [{"n": n, "digits": d, "log_ratio": r} for n, d, r in table],
        })
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except PrecisionCapError as err:
        print(f"habiro: undecided at precision cap: {err}", file=sys.stderr)
        return 3
    except (ValueError, RuntimeError, OSError) as err:
        print(f"habiro: error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
