"""``covgen`` command line: dims, run, errata, transvect."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .covariants import basic_form, semitransvectant
from .enumerative import PipelineInconsistency
from .poly import UsageError
from .report import DegreeOrderTable, build_errata, compare_published_table, format_rows
from .search import (CheckpointError, SearchConfig, SearchError, SearchState, load_state,
                     new_state, run_search)

log = logging.getLogger("covgen")


def _common(p: argparse.ArgumentParser, degree_default: int | None = None):
    p.add_argument("--d", type=int, default=8, help="degree of the binary form (default 8)")
    p.add_argument("--max-degree", type=int, default=degree_default,
                   required=degree_default is None, help="last covariant degree to compute")
    p.add_argument("--mode", choices=("paper", "generic"), default="generic")
    p.add_argument("--resume", metavar="PATH", help="continue from a checkpoint")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--exact-max-degree", type=int, default=7,
                   help="compute syzygies exactly up to this degree (default 7)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="covgen", description="Minimal generating systems of "
                                 "covariants of binary forms.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="dimension table dim C, sigma, dim S, delta")
    _common(p)

    p = sub.add_parser("run", help="run the generator search")
    _common(p)
    p.add_argument("--out", metavar="PATH", help="checkpoint / result JSON (written after each degree)")
    p.add_argument("--verify-completeness", action="store_true",
                   help="continue two degrees further and require no new generators")
    p.add_argument("--no-zforms", action="store_true",
                   help="skip exact Cayley forms of the generators")

    p = sub.add_parser("errata", help="compare printed d = 8 values with recomputation")
    _common(p, degree_default=12)
    p.set_defaults(mode="paper")

    p = sub.add_parser("transvect", help="semitransvectant [f, g]^r")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("r", type=int)
    p.add_argument("--d", type=int, default=8)
    p.add_argument("--resume", metavar="PATH", help="checkpoint holding named generators")
    p.add_argument("--json", action="store_true")
    return ap


def _config(args, zforms=True) -> SearchConfig:
    return SearchConfig(exact_max_degree=args.exact_max_degree, threads=max(1, args.threads),
                        zforms=zforms)


def _progress(state: SearchState, row):
    print(f"[degree {row.i}] dim C={row.dim_C} sigma={row.sigma} dim S={row.dim_S} "
          f"delta={row.delta} total={len(state.generators)}", file=sys.stderr, flush=True)


def _state_for(args, zforms=True, checkpoint=None) -> SearchState:
    cfg = _config(args, zforms)
    state = None
    if args.resume:
        state = load_state(args.resume, cfg, max_degree=args.max_degree)
        if state.d != args.d:
            raise UsageError(f"checkpoint is for d={state.d}, not d={args.d}")
        if state.mode != args.mode:
            raise UsageError(f"checkpoint was made in {state.mode} mode")
    return run_search(args.d, args.max_degree, args.mode, cfg, state=state,
                      checkpoint=checkpoint, progress=_progress if args.verbose or checkpoint else None)


def cmd_dims(args) -> int:
    state = _state_for(args, zforms=False)
    rows = [r for r in state.rows if r.i <= args.max_degree]
    if args.json:
        print(json.dumps([r.to_json() for r in rows], indent=1))
    else:
        print(format_rows(rows))
    return 0


def cmd_run(args) -> int:
    state = _state_for(args, zforms=not args.no_zforms, checkpoint=args.out)
    extra = None
    if args.verify_completeness:
        top = args.max_degree + 2
        cfg = _config(args, zforms=False)
        # continue on a copy so the saved result stops at --max-degree
        probe = run_search(args.d, top, args.mode, cfg, progress=_progress if args.verbose else None)
        extra = [r for r in probe.rows if r.i > args.max_degree]
    table = DegreeOrderTable.from_state(state)
    if args.json:
        out = state.to_json()
        if extra is not None:
            out["completeness"] = [r.to_json() for r in extra]
        print(json.dumps(out, indent=1))
    else:
        print(format_rows(state.rows))
        print()
        print(table.render())
        for g in state.generators:
            recipe = g.recipe
            if recipe.get("op") == "form":
                text = "basic form"
            else:
                w = " ".join(n if e == 1 else f"{n}^{e}" for n, e in recipe["g"])
                text = f"[t, {w}]^{recipe['r']}"
            flags = f"  ({', '.join(g.flags)})" if g.flags else ""
            print(f"{g.name:6s} degree {g.degree:2d} order {g.order:2d}  {text}{flags}")
        if state.d == 8 and state.degree >= 12:
            eq, missing, extra_cells = compare_published_table(state)
            print("published degree-order multiset:", "equal" if eq else
                  f"differs (missing {dict(missing)}, extra {dict(extra_cells)})")
        if extra is not None:
            ok = all(r.delta == 0 for r in extra)
            print("completeness check:", ", ".join(f"delta_{r.i}={r.delta}" for r in extra),
                  "(ok)" if ok else "(FAILED)")
    if extra is not None and any(r.delta for r in extra):
        return 3
    return 0


def cmd_errata(args) -> int:
    if args.d != 8:
        raise UsageError("errata compares against the printed d = 8 values")
    state = _state_for(args)
    rep = build_errata(state)
    if args.json:
        print(json.dumps(rep.to_json(), indent=1))
    else:
        print(rep.render())
    return 0


def _resolve(name: str, d: int, state: SearchState | None):
    if name == "t":
        return basic_form(d)
    if state is not None:
        return state.semi_invariant(name)
    # named generators of the published d = 8 system
    if d == 8:
        probe = new_state(8, "paper", SearchConfig(), 12)
        while probe.degree < 12:
            run_search(8, probe.degree + 1, "paper", state=probe)
            if name in probe.names:
                return probe.semi_invariant(name)
    raise KeyError(name)


def cmd_transvect(args) -> int:
    state = load_state(args.resume) if args.resume else None
    try:
        f = _resolve(args.f, args.d, state)
        g = _resolve(args.g, args.d, state)
    except KeyError as exc:
        raise UsageError(f"unknown generator {exc}") from None
    res = semitransvectant(f, g, args.r)
    if args.json:
        print(json.dumps({"f": args.f, "g": args.g, "r": args.r, "zero": not res,
                          "degree": res.degree, "order": res.order,
                          "zform": res.zform.to_json(),
                          "xform": res.xform.to_text() if res else "0"}, indent=1))
        return 0
    if not res:
        print(f"[{args.f}, {args.g}]^{args.r} = 0 (identically zero)")
        return 0
    print(f"[{args.f}, {args.g}]^{args.r}: degree {res.degree}, order {res.order}")
    print(f"Z-form: {res.zform.to_text()}")
    print(f"X-form: {res.xform.to_text()}")
    return 0


COMMANDS = {"dims": cmd_dims, "run": cmd_run, "errata": cmd_errata, "transvect": cmd_transvect}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    for key in ("d", "max_degree", "threads"):
        v = getattr(args, key, None)
        if v is not None and v < 1:
            ap.error(f"--{key.replace('_', '-')} must be positive")
    start = time.perf_counter()
    try:
        code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"covgen: error: {exc}", file=sys.stderr)
        return 2
    except CheckpointError as exc:
        print(f"covgen: corrupt checkpoint: {exc}", file=sys.stderr)
        return 4
    except (SearchError, PipelineInconsistency) as exc:
        print(f"covgen: search failed: {exc}", file=sys.stderr)
        return 1
    print(f"elapsed {time.perf_counter() - start:.1f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
