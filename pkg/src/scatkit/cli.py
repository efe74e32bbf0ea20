"""Command-line interface.

Exit codes: 0 success / decided, 10 undecided (budget or timeout, interval
result), 2 unreadable input, 3 precondition violated, 1 failed verification.
"""
from __future__ import annotations

import argparse
import json
import os
import signal
import sys
from typing import Any, Callable

from . import io
from .category import DEFAULT_BUDGET, gscat, is_categorical, scat, wscat_le
from .complex import Complex, ComplexError, core, dominated_pairs, is_strongly_collapsible, isomorphic
from .constructions import cone, fat_wedge, join, product, sd_iter, suspension
from .graphs import Graph, arboricity, bisect_off_tree, forests_to_trees, nash_williams_bound
from .maps import in_same_contiguity_class, is_contiguous, is_simplicial

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_UNDECIDED = 10


class _Timeout(Exception):
    pass


def _budget_default() -> int:
    raw = os.environ.get("SCATKIT_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise io.ParseError(f"SCATKIT_BUDGET must be an integer, got {raw!r}") from None


def _emit(args: argparse.Namespace, obj: Any, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _complex_out(args: argparse.Namespace, K: Complex, extra: dict | None = None) -> int:
    obj = {**io.complex_to_json(K), "n_vertices": K.n_vertices, "n_facets": K.n_facets}
    if extra:
        obj.update(extra)
    _emit(args, obj, io.complex_to_text(K))
    return EXIT_OK


def _decision_out(args: argparse.Namespace, d) -> int:
    obj = io.decision_to_json(d)
    _emit(args, obj, f"{d.status} (visited {d.visited})")
    return EXIT_UNDECIDED if d.unknown else EXIT_OK


def _catresult_out(args: argparse.Namespace, r) -> int:
    obj = io.catresult_to_json(r)
    text = f"{r.lower}" if r.exact else f"[{r.lower}, {r.upper}]"
    if r.witness is not None:
        text += "\n" + "\n".join(" | ".join(" ".join(f) for f in b) for b in r.witness.block_facets())
    _emit(args, obj, text)
    return EXIT_OK if r.exact else EXIT_UNDECIDED


# -- subcommands ------------------------------------------------------------------------

def cmd_info(args) -> int:
    K = io.read_complex(args.file)
    obj = {
        "n_vertices": K.n_vertices,
        "n_facets": K.n_facets,
        "dim": K.dim,
        "connected": K.is_connected(),
        "dominated": [list(p) for p in dominated_pairs(K)],
        "strongly_collapsible": is_strongly_collapsible(K),
    }
    _emit(args, obj, "\n".join(f"{k}: {v}" for k, v in obj.items()))
    return EXIT_OK


def cmd_core(args) -> int:
    K0, steps = core(io.read_complex(args.file))
    return _complex_out(args, K0, {"steps": io.steps_to_json(steps)})


def cmd_iso(args) -> int:
    iso = isomorphic(io.read_complex(args.a), io.read_complex(args.b))
    _emit(args, {"isomorphic": iso is not None, "bijection": iso},
          "isomorphic" if iso is not None else "not isomorphic")
    return EXIT_OK


def cmd_sd(args) -> int:
    return _complex_out(args, sd_iter(io.read_complex(args.file), args.iterations))


def cmd_product(args) -> int:
    return _complex_out(args, product(io.read_complex(args.a), io.read_complex(args.b)))


def cmd_join(args) -> int:
    return _complex_out(args, join(io.read_complex(args.a), io.read_complex(args.b)))


def cmd_cone(args) -> int:
    return _complex_out(args, cone(io.read_complex(args.file), args.apex))


def cmd_suspension(args) -> int:
    return _complex_out(args, suspension(io.read_complex(args.file)))


def cmd_fatwedge(args) -> int:
    T, incl = fat_wedge(io.read_complex(args.file), args.basepoint, args.n)
    return _complex_out(args, T, {"inclusion": incl.assignment})


def cmd_scat(args) -> int:
    K = io.read_complex(args.file)
    return _catresult_out(args, scat(K, args.budget, use_core=not args.no_core, fast_path=not args.generic))


def cmd_gscat(args) -> int:
    return _catresult_out(args, gscat(io.read_complex(args.file)))


def cmd_wscat(args) -> int:
    K = io.read_complex(args.file)
    base = args.basepoint if args.basepoint is not None else K.vertices[0]
    return _decision_out(args, wscat_le(K, base, args.n, args.budget))


def _parse_facets(spec: str) -> list[list[str]]:
    facets = [part.split() for part in spec.split(";") if part.strip()]
    if not facets:
        raise io.ParseError("--facets needs at least one facet")
    return facets


def cmd_categorical(args) -> int:
    K = io.read_complex(args.file)
    return _decision_out(args, is_categorical(K, _parse_facets(args.facets), args.budget))


def cmd_contiguous(args) -> int:
    f, g = io.read_map(args.a), io.read_map(args.b)
    res = is_contiguous(f, g)
    _emit(args, {"contiguous": res}, "contiguous" if res else "not contiguous")
    return EXIT_OK


def cmd_class(args) -> int:
    f, g = io.read_map(args.a), io.read_map(args.b)
    for m in (f, g):
        if not is_simplicial(m):
            raise ComplexError("maps must be simplicial")
    return _decision_out(args, in_same_contiguity_class(f, g, args.budget))


def cmd_arboricity(args) -> int:
    G = Graph.from_complex(io.read_complex(args.file))
    k, forests = arboricity(G)
    obj: dict = {"arboricity": k, "forests": io.forests_to_json(forests)}
    if len(G.vertices) >= 2 and G.edges:
        obj["nash_williams_bound"] = nash_williams_bound(G)
    if G.is_connected() and forests:
        obj["trees"] = io.forests_to_json(forests_to_trees(G, forests))
    _emit(args, obj, f"{k}\n" + "\n".join(" ".join(f"{a}-{b}" for a, b in f) for f in forests))
    return EXIT_OK


def cmd_bisect(args) -> int:
    H = bisect_off_tree(Graph.from_complex(io.read_complex(args.file))).to_complex()
    r = scat(H, args.budget)
    return _complex_out(args, H, {"scat": io.catresult_to_json(r, with_chains=False)})


def cmd_verify(args) -> int:
    from .verify import run_checks

    rows = run_checks(args.only)
    if args.format == "json":
        _emit(args, rows)
    else:
        for r in rows:
            mark = "PASS" if r["passed"] else "FAIL"
            print(f"{mark} {r['number']:2d} {r['name']} ({r['seconds']:.2f}s / {r['limit']:g}s) {r['detail']}")
    return EXIT_OK if all(r["passed"] for r in rows) else EXIT_FAILED


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scatkit", description="Simplicial LS-category toolkit")
    p.add_argument("--format", choices=["json", "text"], default=None,
                   help="output format (default json; text for verify)")
    p.add_argument("--timeout", type=float, default=None, help="seconds before giving up (exit 10)")
    p.add_argument("--threads", type=int, default=None,
                   help="accepted for compatibility; searches run sequentially")
    sub = p.add_subparsers(dest="command", required=True)
    # --format is also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)

    def add(name: str, func: Callable, help: str, *files: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, parents=[common])
        for f in files:
            sp.add_argument(f, help="complex file (text or JSON), '-' for stdin")
        sp.set_defaults(func=func)
        return sp

    def budget(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--budget", type=int, default=None, help="max distinct maps per search")

    add("info", cmd_info, "summary of a complex", "file")
    add("core", cmd_core, "core under strong collapses, with the collapse log", "file")
    add("iso", cmd_iso, "isomorphism test", "a", "b")
    add("sd", cmd_sd, "barycentric subdivision", "file").add_argument("--iterations", type=int, default=1)
    add("product", cmd_product, "categorical product", "a", "b")
    add("join", cmd_join, "join", "a", "b")
    add("cone", cmd_cone, "cone", "file").add_argument("--apex", default="*")
    add("suspension", cmd_suspension, "suspension", "file")
    sp = add("fatwedge", cmd_fatwedge, "fat wedge inside the n-th power", "file")
    sp.add_argument("--basepoint", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = add("scat", cmd_scat, "simplicial LS-category", "file")
    budget(sp)
    sp.add_argument("--no-core", action="store_true", help="search on the complex itself")
    sp.add_argument("--generic", action="store_true", help="skip the graph shortcut")
    add("gscat", cmd_gscat, "geometric simplicial category", "file")
    sp = add("wscat", cmd_wscat, "decide wscat <= n", "file")
    sp.add_argument("--basepoint", default=None)
    sp.add_argument("--n", type=int, required=True)
    budget(sp)
    sp = add("categorical", cmd_categorical, "is the subcomplex generated by some facets categorical", "file")
    sp.add_argument("--facets", required=True, help="facets separated by ';', labels by spaces")
    budget(sp)
    sp = sub.add_parser("contiguous", help="direct contiguity of two maps (map JSON files)",
                        parents=[common])
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(func=cmd_contiguous)
    sp = sub.add_parser("class", help="same contiguity class (map JSON files)", parents=[common])
    sp.add_argument("a")
    sp.add_argument("b")
    budget(sp)
    sp.set_defaults(func=cmd_class)
    add("arboricity", cmd_arboricity, "exact arboricity of a graph", "file")
    sp = add("bisect", cmd_bisect, "bisect edges off a spanning tree", "file")
    budget(sp)
    sp = sub.add_parser("verify", help="run the reproduction checks", parents=[common])
    sp.add_argument("--only", type=int, nargs="*", default=None, help="check numbers to run")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "text" if args.command == "verify" else "json"
    try:
        if getattr(args, "budget", "absent") is None:
            args.budget = _budget_default()
        if getattr(args, "budget", 1) < 1:
            raise ComplexError("budget must be at least 1")
        if args.timeout is not None:
            def on_alarm(signum, frame):
                raise _Timeout()
            signal.signal(signal.SIGALRM, on_alarm)
            signal.setitimer(signal.ITIMER_REAL, args.timeout)
        try:
            return args.func(args)
        finally:
            if args.timeout is not None:
                signal.setitimer(signal.ITIMER_REAL, 0)
    except _Timeout:
        _emit(args, {"status": "unknown", "reason": "timeout"}, "unknown (timeout)")
        return EXIT_UNDECIDED
    except io.ParseError as exc:
        print(f"scatkit: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ComplexError, ValueError) as exc:
        print(f"scatkit: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
