"""Command line entry point: ``podles <command> ...``.

Commands: hh, hc, verify, eval, beta-search, export-matrix.  Reports are JSON
(sorted keys) on stdout or in ``--out``.  Exit codes: 0 pass, 1 check failure
or unstable window, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import __version__
from .algebra import Automorphism, PodlesAlgebra
from .chains import (
    Chain,
    h_A,
    invariant_functional,
    make_eta,
    tau0_standard,
    tau_cocycle,
    tensor,
)
from .homology import ENGINES, beta_search, default_window, hc_dims, hh
from .linalg import export_triplets
from .quantumgroup import fixtures_version
from .scalar import Params, parse_scalar

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


# -- config ---------------------------------------------------------------------

def _case(args):
    try:
        params = Params(parse_scalar(args.c), parse_scalar(args.d))
        lam = parse_scalar(args.lam)
        sig = Automorphism(lam, args.sign)
        sig.check_legal(params)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(str(exc)) from exc
    return PodlesAlgebra(params), sig


def _config(args) -> dict:
    out = {"command": args.command}
    for key in ("c", "d", "lam", "sign", "n", "N", "M", "excess", "weights", "engine", "n_max",
                "suite", "only", "functional", "expr"):
        v = getattr(args, key, None)
        if v is not None:
            out["lambda" if key == "lam" else key] = v
    return out


def _window(args, engine: str):
    base = default_window(engine, args.n)
    kw = {}
    if args.N is not None:
        kw["N"] = args.N
    if args.M is not None:
        kw["M"] = args.M
    if args.weights is not None:
        kw["weights"] = tuple(args.weights)
    if engine == "bar" and args.excess is not None:
        kw["excess"] = args.excess
    try:
        return replace(base, **kw)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _emit(payload: dict, out_path: str | None):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _envelope(args, **body) -> dict:
    return {"config": _config(args), "fixtures_version": fixtures_version(), "version": __version__, **body}


# -- commands -------------------------------------------------------------------

def cmd_hh(args) -> int:
    alg, sig = _case(args)
    if args.n not in (0, 1, 2, 3):
        raise ConfigError("--n must be 0, 1, 2 or 3")
    engines = ("bar", "resolution") if args.engine == "both" else (args.engine,)
    reports = {}
    for e in engines:
        reports[e] = hh(alg, sig, args.n, _window(args, e), engine=e, with_generators=args.generators,
                        shadow=args.shadow)
    dims = {e: r.dim for e, r in reports.items()}
    stable = {e: r.stable for e, r in reports.items()}
    agree = len({json.dumps(r.dims_by_block(), sort_keys=True) for r in reports.values()}) == 1
    _emit(_envelope(args, dims=dims, stable=stable, agree=agree,
                    reports={e: r.to_dict() for e, r in reports.items()}), args.out)
    return EXIT_OK if agree and all(stable.values()) else EXIT_FAIL


def cmd_hc(args) -> int:
    alg, sig = _case(args)
    windows = None
    if sig.lam.is_one():
        # infinitely many weights carry classes; keep to the ones near zero
        windows = {n: replace(default_window("bar", n), weights=(-1, 0, 1)) for n in range(3)}
    rep = hc_dims(alg, sig, args.n_max, windows)
    _emit(_envelope(args, **rep.to_dict()), args.out)
    return EXIT_OK if rep.stable else EXIT_FAIL


def cmd_verify(args) -> int:
    from .suite import run_suite, select

    only = None
    if args.only:
        only = [o for part in args.only for o in part.split(",") if o]
        if not select(only):
            raise ConfigError(f"no check matches {only}")

    def progress(r):
        if args.progress:
            print(r.line(), file=sys.stderr, flush=True)

    results = run_suite(args.suite, only, on_result=progress)
    checks = [r.to_dict(timing=not args.no_timing) for r in results]
    failed = [r.key for r in results if not r.ok]
    _emit(_envelope(args, checks=checks, passed=len(results) - len(failed), failed=failed), args.out)
    return EXIT_OK if not failed else EXIT_FAIL


FUNCTIONALS = {
    "h": invariant_functional,
    "h_A": h_A,
    "tau0": tau0_standard,
}


def _parse_chain(alg, text: str) -> Chain:
    if text.strip() == "eta":
        return make_eta(alg)
    parts = [p for p in text.split("|")]
    if len(parts) != 3:
        raise ConfigError("a 2-chain is written 'eta' or 'a0 | a1 | a2'")
    return tensor(*(alg.parse(p) for p in parts))


def cmd_eval(args) -> int:
    alg, _ = _case(args)
    try:
        if args.functional == "tau":
            value = tau_cocycle(_parse_chain(alg, args.expr))
        else:
            value = FUNCTIONALS[args.functional](alg)(alg.parse(args.expr))
    except ConfigError:
        raise
    except (ValueError, SyntaxError) as exc:
        raise ConfigError(str(exc)) from exc
    if args.json:
        _emit(_envelope(args, value=str(value)), args.out)
    else:
        print(value)
    return EXIT_OK


def cmd_beta(args) -> int:
    if args.N < 1:
        raise ConfigError("--N must be positive")
    r = beta_search(args.N)
    body = r.to_dict()
    body["witness"] = None if r.witness is None else str(r.witness)
    _emit(_envelope(args, **body), args.out)
    return EXIT_OK


def cmd_export(args) -> int:
    alg, sig = _case(args)
    if args.n not in (1, 2, 3):
        raise ConfigError("--n must be 1, 2 or 3 (the differential out of level n)")
    engine = args.engine
    w = _window(args, engine)
    parity = args.parity
    if sig.sign == -1 and parity is None:
        parity = 0
    block = (args.weight, parity)
    eng = ENGINES[engine](alg, sig)
    src = eng.basis(args.n, w.N, block, w.excess)
    tgt = eng.basis(args.n - 1, w.N, block, w.excess)
    M = eng.matrix(args.n, src, tgt)
    header = (f"# d_{args.n} {engine} c={alg.params.c} d={alg.params.d} lambda={sig.lam} sign={sig.sign} "
              f"weight={args.weight} N={w.N}\n")
    text = header + export_triplets(M)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _add_case(p, lam_default="1"):
    p.add_argument("--c", default="1", help="parameter c (rational or expression in q)")
    p.add_argument("--d", default="0", help="parameter d")
    p.add_argument("--lambda", dest="lam", default=lam_default, help='lambda, e.g. "q^-2" or "3/2"')
    p.add_argument("--sign", type=int, default=1, choices=(1, -1), help="-1 selects A -> -A (needs c = d)")


def _add_window(p):
    p.add_argument("--N", type=int, default=None, help="maximal degree")
    p.add_argument("--M", type=int, default=None, help="boundary margin")
    p.add_argument("--excess", type=int, default=None, help="bar engine: extra B letters allowed")
    p.add_argument("--weights", type=_int_list, default=None, help="comma-separated weights")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="podles", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hh", help="twisted Hochschild homology on a truncation window")
    _add_case(p)
    p.add_argument("--n", type=int, required=True)
    _add_window(p)
    p.add_argument("--engine", choices=("bar", "resolution", "both"), default="both")
    p.add_argument("--generators", action="store_true", help="include representatives")
    p.add_argument("--shadow", action="store_true", help="confirm ranks at two rational points")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hh)

    p = sub.add_parser("hc", help="twisted cyclic homology from the E^2 page")
    _add_case(p)
    p.add_argument("--n-max", dest="n_max", type=int, default=4)
    p.add_argument("--out")
    p.set_defaults(func=cmd_hc)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--suite", choices=("paper", "smoke"), default="paper")
    p.add_argument("--only", action="append", help="check key or number (repeatable, comma-separated)")
    p.add_argument("--no-timing", action="store_true", help="omit timings (byte-stable output)")
    p.add_argument("--progress", action="store_true", help="print one line per check on stderr")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate h, h_A, tau0 or tau")
    p.add_argument("functional", choices=("h", "h_A", "tau0", "tau"))
    p.add_argument("expr", help='element such as "A^3", or for tau "eta" / "a0 | a1 | a2"')
    _add_case(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("beta-search", help="look for a cyclic 2-cycle pairing with S h_A")
    p.add_argument("--N", type=int, default=4)
    p.add_argument("--out")
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("export-matrix", help="sparse triplets of a differential block")
    _add_case(p)
    p.add_argument("--n", type=int, required=True, help="source level")
    _add_window(p)
    p.add_argument("--weight", type=int, default=0)
    p.add_argument("--parity", type=int, choices=(0, 1), default=None)
    p.add_argument("--engine", choices=("bar", "resolution"), default="resolution")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"podles: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
