"""Command-line front end: canonicalize, closure, verify.

Exit codes: 0 success, 1 suite failures, 2 usage or parse error, 3 zero
element, 4 conditional height-(p-1) query without a resolver report.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dorbit import (
    ConditionalClosureError,
    HeightP1Report,
    OrbitClassDual,
    canonicalize_dual,
    compute_closure_dual,
    dual_kind,
    in_closure_dual,
)
from .ffield import FieldError, make_field, parse_elem
from .sympoly import PolyError, poly_str, substitute
from .trunc import TruncError
from .witt import Character, WittElem, parse_vector
from .worbit import (
    OrbitClassW,
    ZeroOrbitError,
    canonicalize_w,
    certificate_w,
    compute_closure_w,
    hypersurface_range,
    in_closure_w,
)
from .suites import DEFAULT_SEED, SUITE_NAMES, run_suite

SUPPORTED_PRIMES = (5, 7, 11, 13)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_ZERO = 3
EXIT_CONDITIONAL = 4


class UsageError(Exception):
    pass


def _field(args):
    if args.p not in SUPPORTED_PRIMES:
        raise UsageError(f"p must be one of {SUPPORTED_PRIMES}, got {args.p}")
    ext = getattr(args, "ext", 1) or 1
    if ext < 1:
        raise UsageError(f"--ext must be >= 1, got {ext}")
    return make_field(args.p, ext)


def cmd_canonicalize(args) -> int:
    ctx = _field(args)
    cls_elem = WittElem if args.space == "w" else Character
    vec = parse_vector(args.element, ctx, cls_elem)
    if vec.is_zero():
        print("error: the zero element has no orbit class", file=sys.stderr)
        return EXIT_ZERO
    if args.space == "w":
        cls, wit = canonicalize_w(vec, root_bound=args.root_bound)
        cert = certificate_w(vec, cls, wit, ["witness-roundtrip", "parameter-in-base-field"])
    else:
        cls, wit = canonicalize_dual(vec, root_bound=args.root_bound)
        cert = {
            "p": ctx.p,
            "ext": ctx.m,
            "space": "dual",
            "input": args.element,
            "class": cls.to_json(),
            "witness": wit.to_json(),
            "checks": ["witness-roundtrip", "class-invariant-in-base-field"],
        }
    _emit(cert, args.out)
    return EXIT_OK


def cmd_closure(args) -> int:
    ctx = _field(args)
    if (args.i is None) == (args.height is None):
        raise UsageError("give exactly one of --i (algebra) or --height (dual)")
    if args.space == "w":
        if args.i is None:
            raise UsageError("--space w needs --i")
        return _closure_w(args, ctx)
    if args.height is None:
        raise UsageError("--space dual needs --height")
    return _closure_dual(args, ctx)


def _parse_param(args, ctx):
    if args.a == "symbolic":
        return None
    return parse_elem(args.a, ctx)


def _closure_w(args, ctx):
    p = ctx.p
    i = args.i
    a = _parse_param(args, ctx)
    if i in hypersurface_range(p):
        data = compute_closure_w(p, i)
        if args.test_point is not None:
            if a is None:
                raise UsageError("--test-point needs a concrete --a")
            w = parse_vector(args.test_point, ctx, WittElem)
            verdict = in_closure_w(w, OrbitClassW(ctx, i, a))
            _emit({"member": verdict, "i": i, "a": args.a}, args.out)
            return EXIT_OK
        payload = data.to_json()
        if a is not None:
            if ctx.m != 1:
                raise UsageError("polynomial specialization needs a prime-field --a")
            payload["g"] = poly_str(substitute(data.g, {"A": a.coeffs[0]}))
        _emit(payload, args.out)
        return EXIT_OK
    # degrees with set-theoretic closures: only membership queries make sense
    if args.test_point is None:
        raise UsageError(f"degree {i} has no hypersurface polynomial; give --test-point")
    if i in (-1, 0) and a is None:
        raise UsageError(f"degree {i} classes need a concrete --a")
    param = a if (i == -1 or i == 0 or i in hypersurface_range(p)) else None
    w = parse_vector(args.test_point, ctx, WittElem)
    verdict = in_closure_w(w, OrbitClassW(ctx, i, param))
    _emit({"member": verdict, "i": i, "a": args.a}, args.out)
    return EXIT_OK


def _closure_dual(args, ctx):
    p = ctx.p
    r = args.height
    kind = dual_kind(p, r)
    a = _parse_param(args, ctx)
    report = None
    if args.resolver_report:
        with open(args.resolver_report, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if "payload" in data and data.get("suite") == "height-p1":
            data = data["payload"]
        report = HeightP1Report.from_json(data)
    if kind == "kp2" and report is None:
        print(
            "error: height p-1 closures are conditional; run "
            f"`wittorbits verify --suite height-p1 --p {p} --out report.json` "
            "and pass --resolver-report report.json",
            file=sys.stderr,
        )
        return EXIT_CONDITIONAL
    if kind == "k2" and args.test_point is None and a is None:
        data = compute_closure_dual(p, r)
        _emit(data.to_json(), args.out)
        return EXIT_OK
    if kind == "k2" and args.test_point is None:
        data = compute_closure_dual(p, r)
        payload = data.to_json()
        if ctx.m != 1:
            raise UsageError("polynomial specialization needs a prime-field --a")
        payload["g"] = poly_str(substitute(data.squared, {"A": a.coeffs[0]}))
        _emit(payload, args.out)
        return EXIT_OK
    if args.test_point is None:
        raise UsageError(f"height {r} has no polynomial form; give --test-point")
    if kind in ("kstar", "k2", "kp2") and a is None:
        raise UsageError(f"height {r} membership needs a concrete --a")
    chi = parse_vector(args.test_point, ctx, Character)
    param = None
    if kind == "kstar":
        param = a
    elif kind == "k2":
        param = a * a
    elif kind == "kp2":
        param = a ** (p - 2)
    try:
        verdict = in_closure_dual(chi, OrbitClassDual(ctx, r, param), report=report)
    except ConditionalClosureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONDITIONAL
    _emit({"member": verdict, "height": r, "a": args.a}, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITE_NAMES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITE_NAMES)}")
    if args.p not in SUPPORTED_PRIMES:
        raise UsageError(f"p must be one of {SUPPORTED_PRIMES}, got {args.p}")
    rep = run_suite(
        args.suite,
        args.p,
        ext=args.ext or 1,
        seed=args.seed,
        samples=args.samples,
        jobs=args.jobs,
    )
    _emit(rep.to_json(), args.out)
    return EXIT_OK if rep.ok else EXIT_FAILURES


def _emit(payload: dict, out: str | None):
    text = json.dumps(payload, sort_keys=True, indent=2)
    print(text)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="wittorbits",
        description="Exact orbit and orbit-closure computations for the rank-one "
        "Witt algebra over small prime fields.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("canonicalize", help="orbit class and witness of an element")
    pc.add_argument("--p", type=int, required=True)
    pc.add_argument("--ext", type=int, default=1, help="extension degree of the base field")
    pc.add_argument("--space", choices=("w", "dual"), required=True)
    pc.add_argument("--element", required=True, help='sparse text form, e.g. "-1:1;3:2"')
    pc.add_argument(
        "--root-bound",
        type=int,
        default=4,
        help="max extension degree searched for torus roots (raise for p >= 11)",
    )
    pc.add_argument("--out", default=None)
    pc.set_defaults(fn=cmd_canonicalize)

    pl = sub.add_parser("closure", help="closure polynomials and membership tests")
    pl.add_argument("--p", type=int, required=True)
    pl.add_argument("--ext", type=int, default=1)
    pl.add_argument("--space", choices=("w", "dual"), required=True)
    pl.add_argument("--i", type=int, default=None, help="orbit degree (algebra side)")
    pl.add_argument("--height", type=int, default=None, help="orbit height (dual side)")
    pl.add_argument("--a", default="symbolic", help='parameter element text or "symbolic"')
    pl.add_argument("--test-point", default=None)
    pl.add_argument("--resolver-report", default=None, help="JSON report unlocking height p-1")
    pl.add_argument("--out", default=None)
    pl.set_defaults(fn=cmd_closure)

    pv = sub.add_parser("verify", help="run a named verification suite")
    pv.add_argument("--suite", required=True, help=", ".join(SUITE_NAMES))
    pv.add_argument("--p", type=int, required=True)
    pv.add_argument("--ext", type=int, default=1)
    pv.add_argument("--seed", type=int, default=DEFAULT_SEED)
    pv.add_argument("--samples", type=int, default=None)
    pv.add_argument("--jobs", type=int, default=1)
    pv.add_argument("--out", default=None)
    pv.set_defaults(fn=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ZeroOrbitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO
    except (UsageError, FieldError, TruncError, PolyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
