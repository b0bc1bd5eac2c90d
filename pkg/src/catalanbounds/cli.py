"""Command-line interface.

Exit codes: 0 success, 2 unparsable input or flags, 3 inputs that parse but
violate a precondition of the requested computation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import bounds as B
from . import funcfield as FF
from . import numfield as NF
from . import search as S
from ._poly import PolyParseError
from .extscalar import ExtScalar, ctx as mp

EXIT_USAGE = 2
EXIT_PRECONDITION = 3

ENV_CONSTANTS = "CATALAN_CONSTANTS"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    constants: B.AbsoluteConstants
    output_format: str = "json"
    precision_bits: int = 128

    def __post_init__(self):
        if self.precision_bits < 64:
            raise UsageError("--precision-bits must be >= 64")
        if self.output_format not in ("json", "text"):
            raise UsageError("--format must be json or text")


# ------------------------------------------------------------ parsing


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def _i(text) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise UsageError(f"expected an integer, got {text!r}") from None


def _frac_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from None


def _big(text: str):
    """Positive integer or ExtScalar JSON (for discriminants beyond machine range)."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return ExtScalar.from_json(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad ExtScalar JSON: {exc}") from None
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"expected an integer, got {text!r}") from None


def _real(text: str):
    try:
        v = mp.mpf(text)
    except (ValueError, TypeError):
        raise UsageError(f"expected a real number, got {text!r}") from None
    if not mp.isfinite(v):
        raise UsageError(f"expected a finite number, got {text!r}")
    return v


def _site_kv(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError("expected KEY=VALUE")
    k, v = text.split("=", 1)
    try:
        return k.strip(), float(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad value in {text!r}") from None


def _resolve_constants(args) -> B.AbsoluteConstants:
    obj: dict = {}
    path = args.constants or os.environ.get(ENV_CONSTANTS)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read constants file {path!r}: {exc}") from None
        if not isinstance(obj, dict):
            raise UsageError("constants file must hold a JSON object")
    sites = dict(obj.get("sites", {}))
    c_O = obj.get("c_O", 1.0)
    envelope = obj.get("monotone_envelope", True)
    if args.const_c is not None:
        c_O = args.const_c
    for k, v in args.const_site or []:
        sites[k] = v
    if args.no_envelope:
        envelope = False
    try:
        return B.AbsoluteConstants(c_O, sites, envelope)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


# ------------------------------------------------------------ output


def _emit(cfg: RunConfig, obj, text: str | None = None):
    if cfg.output_format == "json":
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    else:
        print(text if text is not None else _text(obj))


def _text(obj) -> str:
    if isinstance(obj, dict):
        return " ".join(f"{k}={_text(v)}" for k, v in sorted(obj.items()))
    if isinstance(obj, list):
        return "[" + ", ".join(_text(v) for v in obj) + "]"
    return str(obj)


def _emit_report(cfg: RunConfig, rep: B.BoundReport):
    if cfg.output_format == "json":
        print(rep.dumps())
    else:
        print(f"{rep.formula_id}: {rep.bound}")


def _fmt_height(h: float) -> str:
    return "0" if h == 0 else format(h, "#.12g")


# ------------------------------------------------------------ commands


def _need(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise UsageError("missing required flag(s): " + ", ".join("--" + n for n in missing))


def cmd_bound(args, cfg: RunConfig) -> int:
    c = cfg.constants
    t = args.target
    if t == "s-integers":
        _need(args, "degree", "disc", "prime-norms")
        params_in = (_i(args.degree), _big(args.disc), _int_list(args.prime_norms), _i(args.infinite))
        params = NF.NumberFieldParams(*params_in)
        c11 = B.catalana_prime_bound(params, c)
        _emit_report(cfg, c11)
        if args.which == "height":
            _emit_report(cfg, B.catalana_height_bound(c11, params.s, params.abs_disc, params.Q, c))
        elif args.which == "general":
            _emit_report(cfg, B.catalana_general_bound(c11, params.s, params.abs_disc, params.Q, c))
        return 0
    if t == "fg-domain":
        _need(args, "r", "d", "h")
        r, d, h = _i(args.r), _i(args.d), _real(args.h)
        res = B.fg_bounds(r, d, h, c)
        inputs = {"r": r, "d": d, "h": h}
        _emit_report(cfg, B._report("fg-transcendental", inputs, c, res["transcendental"]))
        _emit_report(cfg, B._report("fg-algebraic", inputs, c, res["algebraic"]))
        if args.k is not None:
            k = _i(args.k)
            ch = B.fg_parameter_chain(r, k, None, d, h, c)
            _emit_report(
                cfg,
                B._report("fg-chain", dict(inputs, k=k, t=r - k), c, ch["disc_bound"], extra=ch),
            )
        return 0
    if t in ("superelliptic", "hyperelliptic", "schinzel-tijdeman"):
        _need(args, "n")
        hh = args.hhat
        if args.coeffs is not None:
            hh = B.hhat(_frac_list(args.coeffs), _frac_list(args.b or "1")[0])
        hh = _real(str(hh)) if hh is not None else mp.mpf(0)
        disc = _big(args.disc or "1")
        common = {"n": _i(args.n), "s": _i(args.s or 1), "d": _i(args.d or 1), "abs_disc": disc, "hhat": hh}
        if t == "superelliptic":
            _need(args, "m")
            inst = B.SuperellipticInstance(
                common["n"], _i(args.m), common["s"], common["d"], disc, _big(args.Q or "1"), _big(args.P or "2"), hh
            )
            val = B.superelliptic_height_bound(inst)
            inputs = dict(common, m=_i(args.m), Q=inst.Q, P=inst.P)
        elif t == "hyperelliptic":
            Q = _big(args.Q or "1")
            val = B.hyperelliptic_height_bound(common["n"], common["s"], disc, Q, common["d"], hh)
            inputs = dict(common, Q=Q)
        else:
            P = _big(args.P or "2")
            val = B.schinzel_tijdeman_bound(common["n"], common["s"], disc, P, common["d"], hh)
            inputs = dict(common, P=P)
        fid = {"superelliptic": "superelliptic-height", "hyperelliptic": "hyperelliptic-height"}.get(t, t)
        notes = ["valid for y neither 0 nor a root of unity"] if t == "schinzel-tijdeman" else []
        _emit_report(cfg, B._report(fid, inputs, c, val, notes))
        return 0
    if t == "t8":
        _need(args, "s", "P", "rs")
        inputs = {"s": _i(args.s), "P": _big(args.P), "R_S": _real(args.rs)}
        val = B.t8_exponent_bound(inputs["s"], inputs["P"], inputs["R_S"], c)
        _emit_report(cfg, B._report("key-exponent", inputs, c, val))
        return 0
    if t == "pfinal2":
        _need(args, "s", "disc", "d", "P", "t")
        inputs = {"s": _i(args.s), "abs_disc": _big(args.disc), "d": _i(args.d), "P": _big(args.P), "t": _i(args.t)}
        notes: list = []
        val = B.pfinal2_bound(*inputs.values(), consts=c, notes=notes)
        notes.append(B._FINAL_NOTE)
        _emit_report(cfg, B._report("catalan-final-exponent", inputs, c, val, notes))
        return 0
    if t == "suniteq":
        _need(args, "s", "P", "H", "rs")
        inputs = {"s": _i(args.s), "P": _real(args.P), "H": _real(args.H), "R_S": _real(args.rs)}
        notes = []
        val = B.suniteq_height_bound(*inputs.values(), consts=c, notes=notes)
        _emit_report(cfg, B._report("sunit-equation", inputs, c, val, notes))
        return 0
    raise UsageError(f"unknown bound target {t!r}")


def cmd_height(args, cfg: RunConfig) -> int:
    try:
        alpha = NF.AlgebraicNumber.parse(args.min_poly, args.root_index)
    except PolyParseError as exc:
        raise UsageError(str(exc)) from None
    h = NF.height(alpha, start_prec=cfg.precision_bits)
    _emit(
        cfg,
        {"min_poly": args.min_poly, "root_index": args.root_index, "height": _fmt_height(h)},
        _fmt_height(h),
    )
    return 0


def _rf(num: str, den: str) -> FF.RationalFunction:
    try:
        return FF.RationalFunction.parse(num, den)
    except PolyParseError as exc:
        raise UsageError(str(exc)) from None


def _place(text: str) -> FF.FFPlace:
    if text.strip() in ("inf", "infinity", "oo"):
        return FF.FFPlace.infinite()
    try:
        return FF.FFPlace(FF._poly.parse(text))
    except PolyParseError as exc:
        raise UsageError(str(exc)) from None


def cmd_ff(args, cfg: RunConfig) -> int:
    x = _rf(args.num, args.den)
    if args.ff_cmd == "height":
        h = FF.ff_height(x)
        _emit(cfg, {"function": str(x), "height": h}, str(h))
    else:
        v = FF.ff_valuation(x, _place(args.place))
        _emit(cfg, {"function": str(x), "place": args.place, "valuation": v}, str(v))
    return 0


def cmd_mason(args, cfg: RunConfig) -> int:
    x = _rf(args.x_num, args.x_den)
    if args.places is None:
        inst = FF.MasonInstance.full_support(x, args.genus)
    else:
        S_ = frozenset(_place(p) for p in args.places.split(";") if p.strip())
        inst = FF.MasonInstance(x, FF.RationalFunction.const(1) - x, S_, args.genus)
    res = FF.mason_check(inst)
    obj = dict(res.to_json(), x=str(inst.x), y=str(inst.y), S=sorted(str(v) for v in inst.S), S_size=inst.weighted_size)
    _emit(cfg, obj, f"holds={res.holds} lhs={res.lhs} rhs={res.rhs}")
    return 0


def cmd_search(args, cfg: RunConfig) -> int:
    w = S.SearchWindow(args.xy_max, args.exp_max, args.sign, not args.include_units)
    primes = None
    if args.primes is not None:
        primes = _int_list(args.primes)
    if primes:
        sols = S.catalan_search_s_rationals(w, primes)
    else:
        sols = S.catalan_search_integers(w, workers=args.workers)
    for s in sols:
        _emit(cfg, s.to_json())
    _emit(cfg, S.summary(w, sols, primes))
    return 0


def cmd_estimates2(args, cfg: RunConfig) -> int:
    a, b, c = _real(args.a), _real(args.b), _real(args.c)
    x = B.estimates2_threshold(a, b, c)
    _emit(cfg, {"a": mp.nstr(a, 20), "b": mp.nstr(b, 20), "c": mp.nstr(c, 20), "x": mp.nstr(x, 20)}, mp.nstr(x, 20))
    return 0


def cmd_constants_dump(args, cfg: RunConfig) -> int:
    obj = cfg.constants.to_json()
    obj["known_sites"] = list(B.SITES)
    _emit(cfg, obj)
    return 0


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("constants and output")
    g.add_argument("--const-c", type=float, default=None, help="default O-constant c_O")
    g.add_argument("--const-site", type=_site_kv, action="append", metavar="KEY=VAL", help="per-site O-constant")
    g.add_argument("--constants", metavar="FILE", help=f"JSON constants file (else ${ENV_CONSTANTS})")
    g.add_argument("--no-envelope", action="store_true", help="evaluate raw formulas without monotone envelopes")
    g.add_argument("--format", choices=("json", "text"), default="json")
    g.add_argument("--precision-bits", type=int, default=64, help="starting precision for root isolation")

    p = argparse.ArgumentParser(prog="catalanbounds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    bp = sub.add_parser("bound", parents=[common], help="evaluate a bound formula")
    bp.add_argument(
        "target",
        choices=("s-integers", "fg-domain", "superelliptic", "hyperelliptic", "schinzel-tijdeman", "t8", "pfinal2", "suniteq"),
    )
    bp.add_argument("--degree")
    bp.add_argument("--disc")
    bp.add_argument("--prime-norms")
    bp.add_argument("--infinite", default="1")
    bp.add_argument("--which", choices=("prime", "height", "general"), default="prime")
    bp.add_argument("--r")
    bp.add_argument("--k")
    bp.add_argument("--d", default=None)
    bp.add_argument("--h")
    bp.add_argument("--n")
    bp.add_argument("--m")
    bp.add_argument("--s", default=None)
    bp.add_argument("--t")
    bp.add_argument("--P")
    bp.add_argument("--Q")
    bp.add_argument("--H")
    bp.add_argument("--rs", help="S-regulator value")
    bp.add_argument("--hhat")
    bp.add_argument("--coeffs", help="comma-separated coefficients of f, highest degree first (sets hhat)")
    bp.add_argument("--b", help="coefficient b of f(x) = b y^m (with --coeffs)")
    bp.set_defaults(func=cmd_bound)

    hp = sub.add_parser("height", parents=[common], help="absolute logarithmic height of an algebraic number")
    hp.add_argument("--min-poly", required=True)
    hp.add_argument("--root-index", type=int, default=0)
    hp.set_defaults(func=cmd_height)

    fp = sub.add_parser("ff", parents=[common], help="function-field height or valuation")
    fsub = fp.add_subparsers(dest="ff_cmd", required=True)
    for name in ("height", "valuation"):
        q = fsub.add_parser(name, parents=[common])
        q.add_argument("--num", required=True)
        q.add_argument("--den", default="1")
        if name == "valuation":
            q.add_argument("--place", required=True, help="monic irreducible polynomial or 'inf'")
        q.set_defaults(func=cmd_ff)

    mp_ = sub.add_parser("mason", parents=[common], help="check the Mason inequality for x + (1 - x) = 1")
    mp_.add_argument("--x-num", required=True)
    mp_.add_argument("--x-den", default="1")
    mp_.add_argument("--places", help="';'-separated places (default: full support)")
    mp_.add_argument("--genus", type=int, default=0)
    mp_.set_defaults(func=cmd_mason)

    sp = sub.add_parser("search", parents=[common], help="exhaustive Catalan search")
    sp.add_argument("--xy-max", type=int, required=True)
    sp.add_argument("--exp-max", type=int, required=True)
    sp.add_argument("--sign", choices=("plus", "minus", "both"), default="minus")
    sp.add_argument("--primes", help="comma-separated primes for S-integers")
    sp.add_argument("--include-units", action="store_true", help="also report solutions with |x| = 1 or |y| = 1")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_search)

    ep = sub.add_parser("estimates2", parents=[common], help="threshold x with x^a / b^x < 1/c")
    ep.add_argument("--a", required=True)
    ep.add_argument("--b", required=True)
    ep.add_argument("--c", required=True)
    ep.set_defaults(func=cmd_estimates2)

    cp = sub.add_parser("constants-dump", parents=[common], help="print the resolved absolute constants")
    cp.set_defaults(func=cmd_constants_dump)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(_resolve_constants(args), args.format, args.precision_bits)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
