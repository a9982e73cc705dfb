"""Command-line front end: generate, verify, Grassmannian chains, statistics.

Exit codes: 0 success (verification passed where applicable), 1 a
verification failed, 2 invalid parameters or unreadable/malformed input.
Output is byte-identical across runs for identical flags.
"""

from __future__ import annotations

import argparse
import json
import sys

from .gf import field_make
from .geometry import enumerate_directions
from .cycles import (
    Cycle,
    cycle_from_json_obj,
    cycle_from_text,
    cycle_to_json_obj,
    cycle_to_text,
)
from .constructions import plan_fibers, universal_cycle
from .grassmann import embed_cycle, grass_to_json_obj, nested_cycles
from .verify import affine_line_count, verify_affine, verify_grassmann, verify_nesting


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(payload: str, out: str | None, summary: str) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        print(summary)
    else:
        sys.stdout.write(payload)
        print(summary, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ucycle",
        description="Universal cycles for affine lines of AG(n,q) and nested "
        "cycles on Grassmannians of planes, with brute-force verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a universal cycle for AG(n,q)")
    gen.add_argument("--n", type=int, required=True, help="affine dimension (>= 2)")
    gen.add_argument("--p", type=int, required=True, help="prime characteristic")
    gen.add_argument("--k", type=int, default=1, help="extension degree (q = p^k)")
    gen.add_argument("--format", choices=("json", "text"), default="json")
    gen.add_argument("--out", help="output path (default: stdout)")

    ver = sub.add_parser("verify", help="verify a cycle file against the oracle")
    ver.add_argument("--in", dest="infile", required=True, help="cycle file")
    ver.add_argument("--n", type=int, help="expected dimension (required for text files)")
    ver.add_argument("--p", type=int, help="prime (required for text files)")
    ver.add_argument("--k", type=int, default=1)

    gr = sub.add_parser("grassmann", help="build and verify plane-Grassmannian cycles")
    gr.add_argument("--m", type=int, required=True, help="ambient dimension (>= 3)")
    gr.add_argument("--p", type=int, required=True)
    gr.add_argument("--k", type=int, default=1)
    gr.add_argument("--nested", action="store_true", help="emit the whole chain U_3..U_m")
    gr.add_argument("--out", help="output path (default: stdout)")

    st = sub.add_parser("stats", help="print counts and the planned fiber partition")
    st.add_argument("--n", type=int, required=True)
    st.add_argument("--p", type=int, required=True)
    st.add_argument("--k", type=int, default=1)

    return parser


def cmd_gen(args) -> int:
    if args.n < 2:
        print(f"error: need n >= 2, got {args.n}", file=sys.stderr)
        return 2
    F = field_make(args.p, args.k)
    c = universal_cycle(args.n, F)
    ndirs = (F.q**args.n - 1) // (F.q - 1)
    summary = (
        f"n={args.n} q={F.q} vertices={len(c)} windows={len(c)} directions={ndirs}"
    )
    if args.format == "json":
        payload = _dumps(cycle_to_json_obj(c))
    else:
        payload = cycle_to_text(c)
    _emit(payload, args.out, summary)
    return 0


def _load_cycle(args) -> Cycle:
    with open(args.infile, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        c = cycle_from_json_obj(json.loads(text))
    else:
        if args.p is None:
            raise ValueError("text cycle files need --p (and --k for extensions)")
        c = cycle_from_text(text, field_make(args.p, args.k))
    if args.n is not None and c.n != args.n:
        raise ValueError(f"file has n={c.n}, expected n={args.n}")
    if args.p is not None and c.field.q != args.p**args.k:
        raise ValueError(f"file has q={c.field.q}, expected q={args.p ** args.k}")
    return c


def cmd_verify(args) -> int:
    try:
        c = _load_cycle(args)
    except (OSError, ValueError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    rep = verify_affine(c, c.n, c.field)
    sys.stdout.write(_dumps(rep.to_json_obj()))
    print(rep.summary(), file=sys.stderr)
    return 0 if rep.passed else 1


def cmd_grassmann(args) -> int:
    if args.m < 3:
        print(f"error: need m >= 3, got {args.m}", file=sys.stderr)
        return 2
    F = field_make(args.p, args.k)
    levels = nested_cycles(args.m, F)
    all_ok = True
    level_objs = []
    for idx, u in enumerate(levels):
        mi = idx + 3
        rep = verify_grassmann(u, mi, F)
        all_ok &= rep.passed
        nested_ok = None
        if idx > 0:
            nested_ok = verify_nesting(embed_cycle(levels[idx - 1], mi), u)
            all_ok &= nested_ok
        wanted = args.nested or mi == args.m
        if wanted:
            obj = {
                "m": mi,
                "windows": len(u),
                "verification": rep.to_json_obj(),
                "nested_previous": nested_ok,
                "cycle": grass_to_json_obj(u),
            }
            level_objs.append(obj)
            line = f"U_{mi}: windows={len(u)} {rep.summary()}"
            if nested_ok is not None:
                line += f" nesting(U_{mi - 1} in U_{mi})={nested_ok}"
            print(line, file=sys.stderr)
    payload = _dumps({"q": F.q, "levels": level_objs})
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0 if all_ok else 1


def cmd_stats(args) -> int:
    if args.n < 2:
        print(f"error: need n >= 2, got {args.n}", file=sys.stderr)
        return 2
    F = field_make(args.p, args.k)
    plan = plan_fibers(args.n, F)
    ndirs = len(enumerate_directions(args.n, F))
    print(f"directions = {ndirs}")
    print(f"lines = {affine_line_count(args.n, F.q)}")
    if plan.triplet is None:
        print(f"branch = even: {len(plan.pairs)} pairs")
    else:
        print(f"branch = odd: triplet + {len(plan.pairs)} pairs")
        t = " ".join(str(list(d.vector)) for d in plan.triplet)
        print(f"triplet: {t}")
    for i, (a, b) in enumerate(plan.pairs, 1):
        print(f"pair {i}: {list(a.vector)} + {list(b.vector)}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    handlers = {
        "gen": cmd_gen,
        "verify": cmd_verify,
        "grassmann": cmd_grassmann,
        "stats": cmd_stats,
    }
    try:
        return handlers[args.command](args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
