"""Command line entry point.

Exit codes: 0 success, 1 internal invariant failure, 2 bad input.
Reports go to stdout as JSON with sorted keys; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import engine as E
from .complexes import MFCError, read_mfc
from .downsets import BoxError, NonStabilizationError
from .linalg import IllDefinedMapError
from .planner import PlanError, plan_word
from .render import RenderError, ascii_b, svg_b
from .words import WordError, parse_word


class UsageError(ValueError):
    pass


def _ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",")) if text.strip() else ()
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _dims(d: dict) -> dict:
    return {E._deg_key(k): v for k, v in d.items()}


def _matrices(d: dict) -> dict:
    return {E._deg_key(k): np.asarray(m).tolist() for k, m in d.items()}


def _load(args):
    c = read_mfc(args.input)
    w = parse_word(args.word, c.n)
    P = None
    if getattr(args, "position", None) is not None:
        P = _ints(args.position, "--position")
        if len(P) != c.n:
            raise UsageError(f"--position needs {c.n} entries, got {len(P)}")
    return c, w, P


def _index(j: int, n: int) -> int:
    if not 1 <= j <= n:
        raise UsageError(f"--j must be in 1..{n}")
    return j


def cmd_page(args) -> str:
    c, w, P = _load(args)
    return _dump(E.page(c, w, P).report())


def cmd_diff(args) -> str:
    c, w, P = _load(args)
    j = _index(args.j, c.n)
    dp = E.page_differential(c, w, P, j)
    doc = {
        "word": str(w),
        "position": list(P),
        "j": j,
        "direction": list(dp.direction),
        "source": dp.source.report(),
        "center": dp.center.report(),
        "target": dp.target.report(),
        "incoming": _matrices(dp.incoming),
        "outgoing": _matrices(dp.outgoing),
        "homology": _dims(dp.homology_dims()),
    }
    return _dump(doc)


def cmd_saturate(args) -> str:
    c, w, P = _load(args)
    j = _index(args.j, c.n)
    return _dump(E.saturate(c, w, P, j).report())


def cmd_extend(args) -> str:
    c, w, P = _load(args)
    j = _index(args.j, c.n)
    rep = E.extension_filtration(c, w, P, j)
    if not rep.is_consistent():
        raise AssertionError("extension filtration is inconsistent with its graded pieces")
    return _dump(rep.to_document())


def cmd_limit(args) -> str:
    c = read_mfc(args.input)
    return _dump({"dims": _dims(E.limit(c))})


def cmd_plan(args) -> str:
    N = _ints(args.normal, "--normal")
    if len(N) != 2:
        raise UsageError("--normal needs two entries")
    return _dump(plan_word(N, args.j1, args.k).to_document())


def cmd_draw_b(args) -> str:
    if args.n < 1:
        raise UsageError("--n must be positive")
    w = parse_word(args.word, args.n)
    if args.truncation < 0:
        raise UsageError("--truncation must be nonnegative")
    if args.format == "ascii":
        return ascii_b(w, args.truncation)
    return svg_b(w, args.truncation)


def cmd_verify(args) -> tuple[str, int]:
    from . import verify as V

    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    reports = V.deterministic_suites() + V.random_suites(args.seed, args.trials, args.prime)
    reports.sort(key=lambda r: (r.check, r.instance))
    lines = [r.line() for r in reports]
    failed = [r for r in reports if not r.passed]
    summary = {
        "seed": args.seed,
        "trials": args.trials,
        "prime": args.prime,
        "checks": len(reports),
        "failed": len(failed),
    }
    if failed:
        f = failed[0]
        summary["first_failure"] = {
            "check": f.check,
            "instance": f.instance,
            "expected": repr(f.expected),
            "actual": repr(f.actual),
            "replay": f"higherss verify --seed {args.seed} --trials {args.trials}"
            + (f" --prime {args.prime}" if args.prime else ""),
        }
    out = "\n".join(lines) + "\n" + json.dumps(summary, sort_keys=True) + "\n"
    return out, (1 if failed else 0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="higherss", description="Pages of higher spectral sequences of multifiltered complexes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def mfc(p, position=True, j=False):
        p.add_argument("--input", required=True, help="MFC JSON file")
        p.add_argument("--word", required=True, help="word such as 12121^e2^e; empty for the first page")
        if position:
            p.add_argument("--position", required=True, help="comma-separated integers")
        if j:
            p.add_argument("--j", type=int, required=True, help="index of the next letter")

    mfc(sub.add_parser("page", help="S(P; w)"))
    mfc(sub.add_parser("diff", help="differentials into and out of S(P; w) along j"), j=True)
    mfc(sub.add_parser("saturate", help="S(P; w j^inf)"), j=True)
    mfc(sub.add_parser("extend", help="filtration of S(P; w j^inf e)"), j=True)
    p = sub.add_parser("limit", help="dims of H(C)")
    p.add_argument("--input", required=True)

    p = sub.add_parser("plan", help="final word from a normal vector (n = 2)")
    p.add_argument("--normal", required=True, help="x,y")
    p.add_argument("--j1", type=int, required=True)
    p.add_argument("--k", type=int, default=0)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=2)
    p.add_argument("--prime", type=int, default=None)

    p = sub.add_parser("draw-b", help="picture of B_w")
    p.add_argument("--word", required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--truncation", type=int, default=3)
    return ap


HANDLERS = {
    "page": cmd_page,
    "diff": cmd_diff,
    "saturate": cmd_saturate,
    "extend": cmd_extend,
    "limit": cmd_limit,
    "plan": cmd_plan,
    "draw-b": cmd_draw_b,
}

USER_ERRORS = (UsageError, WordError, MFCError, PlanError, RenderError, BoxError, OSError)
INTERNAL_ERRORS = (IllDefinedMapError, NonStabilizationError, ArithmeticError, AssertionError)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            if args.prime is not None:
                from .linalg import is_prime

                if not is_prime(args.prime):
                    raise UsageError(f"--prime {args.prime} is not prime")
            out, code = cmd_verify(args)
            sys.stdout.write(out)
            return code
        sys.stdout.write(HANDLERS[args.command](args))
        return 0
    except INTERNAL_ERRORS as exc:
        print(f"higherss: internal error: {exc}", file=sys.stderr)
        return 1
    except USER_ERRORS as exc:
        print(f"higherss: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"higherss: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
