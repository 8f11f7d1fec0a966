"""Command-line front end.

Subcommands::

    generate   build the minimum-degree-4 catalogs up to --n
    census     colouring census of catalog graphs (JSONL rows + summary)
    bwcheck    Black-White decision for one graph and one even cycle
    bwcensus   Black-White decisions for every even cycle of a catalog
    export     DOT drawing or canonical graph6 of one graph

Single-graph commands read graph6 from the positional argument or stdin.
The catalog root defaults to ``$TRIANGULATA_CATALOG`` and then ``./catalog``.
Exit status: 0 success, 1 a checked property failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, Sequence, TextIO

from triangulata.bwcolor import (
    bw_to_dot,
    improved_bw_operation,
    is_2colorable_cycle,
    iter_cycles,
    oracle_2colorable,
    split_on_cycle,
)
from triangulata.coloring import census_record, enumerate_partitions, to_dot
from triangulata.embedding import (
    DomainError,
    StructureError,
    canonical_code,
    canonical_form,
    from_graph6,
    to_graph6,
)
from triangulata.generator import Catalog, generate_delta4, load_catalog, save_catalogs

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

ENV_CATALOG = "TRIANGULATA_CATALOG"


class UsageError(Exception):
    pass


def _catalog_root(arg: str | None) -> Path:
    return Path(arg or os.environ.get(ENV_CATALOG) or "catalog")


def _read_graph(arg: str | None, stdin: TextIO):
    text = arg if arg is not None else stdin.readline()
    if not text or not text.strip():
        raise UsageError("no graph6 input")
    try:
        return from_graph6(text)
    except (StructureError, DomainError) as exc:
        raise UsageError(str(exc)) from exc


def _parse_cycle(text: str) -> tuple[int, ...]:
    parts = [p for p in text.replace(",", " ").split() if p]
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"malformed cycle {text!r}") from exc


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    # results come back in input order whatever the worker count
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [fn(x) for x in items]


def _orders(root: Path, n: int | None) -> list[int]:
    if n is not None:
        return [n]
    found = []
    for p in root.glob("n=*.g6"):
        try:
            found.append(int(p.stem[2:]))
        except ValueError:
            continue
    return sorted(found)


def _load(root: Path, n: int) -> Catalog:
    try:
        return load_catalog(root, n)
    except FileNotFoundError as exc:
        raise UsageError(f"no catalog for order {n} under {root}") from exc


def _open_out(path: str | None) -> TextIO:
    if path is None or path == "-":
        return sys.stdout
    return open(path, "w", encoding="ascii", newline="\n")


def _write_jsonl(out: TextIO, rows: Iterable[dict]) -> None:
    for r in rows:
        out.write(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n")


def _plural(k: int, word: str) -> str:
    return f"{k} {word}" if k == 1 else f"{k} {word}s"


# ----------------------------------------------------------------------
# generate
# ----------------------------------------------------------------------


def cmd_generate(args: argparse.Namespace) -> int:
    root = _catalog_root(args.catalog)
    t0 = time.perf_counter()
    cats: dict[int, Catalog] = {}
    for m in range(6, args.n):
        if (root / f"n={m}.g6").exists():
            cats[m] = load_catalog(root, m)
    for m in range(6, args.n + 1):
        generate_delta4(m, cats, jobs=args.jobs)
    keep = {m: c for m, c in cats.items() if m <= args.n}
    cat = keep.get(args.n, Catalog(args.n, []))
    # parameters only; worker count and timing stay out so reruns are byte-identical
    save_catalogs(keep, root, {"generator": "delta4", "pre_steps": "unbounded"})
    print(_plural(len(cat), "graph"))
    print(f"wrote {root} in {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return EXIT_OK


# ----------------------------------------------------------------------
# census
# ----------------------------------------------------------------------


def _census_row(g6: str) -> dict:
    return census_record(from_graph6(g6))


def _census_summary(rows: list[dict], out: TextIO) -> None:
    by_n: dict[int, list[dict]] = {}
    for r in rows:
        by_n.setdefault(r["n"], []).append(r)
    print(f"{'graph':<8} {'degrees':<16} {'CN':>5} {'TN':>5}  class", file=out)
    for n in sorted(by_n):
        for i, r in enumerate(by_n[n], 1):
            label = f"{n}_{i}" + ("*" if r["class"] in ("divisible", "3-chromatic") else "")
            print(
                f"{label:<8} {r['degree_sequence']:<16} "
                f"{r['cycle_count']:>5} {r['tree_count']:>5}  {r['class']}",
                file=out,
            )
        kinds = Counter(r["class"] for r in by_n[n])
        tn = sum(r["tree_count"] for r in by_n[n] if r["class"] not in ("divisible", "3-chromatic"))
        print(f"# n={n}: {len(by_n[n])} graphs, TN (non-starred) {tn}, {dict(sorted(kinds.items()))}", file=out)


def cmd_census(args: argparse.Namespace) -> int:
    root = _catalog_root(args.catalog)
    rows: list[dict] = []
    for n in _orders(root, args.n):
        cat = _load(root, n)
        rows.extend(_pmap(_census_row, [to_graph6(e.graph) for e in cat], args.jobs))
    out = _open_out(args.out)
    try:
        _write_jsonl(out, rows)
    finally:
        if out is not sys.stdout:
            out.close()
    if rows and not args.quiet:
        _census_summary(rows, sys.stderr if out is sys.stdout else sys.stdout)
    return EXIT_OK


# ----------------------------------------------------------------------
# Black-White
# ----------------------------------------------------------------------


def _bw_row(g, cycle: tuple[int, ...], parts, traces: bool) -> dict:
    res = is_2colorable_cycle(g, cycle)
    orc = oracle_2colorable(g, cycle, parts)
    row = {
        "code": canonical_code(g).hex(),
        "cycle": list(res.cycle),
        "decision": res.decision,
        "oracle": orc,
        "agreement": "agree" if orc == res.decision else "disagree",
    }
    if traces:
        row["sides"] = [st.to_json() for st in res.sides]
    return row


def _even_cycles(g, max_len: int | None) -> list[tuple[int, ...]]:
    return sorted(
        (c for c in iter_cycles(g, 4, max_len) if len(c) % 2 == 0),
        key=lambda c: (len(c), c),
    )


def _bw_graph(task: tuple[str, int | None, bool]) -> list[dict]:
    g6, max_len, traces = task
    g = from_graph6(g6)
    parts = enumerate_partitions(g)
    return [_bw_row(g, c, parts, traces) for c in _even_cycles(g, max_len)]


def _decision_text(row: dict) -> str:
    word = "2-colorable" if row["decision"] else "not 2-colorable"
    cyc = "-".join(map(str, row["cycle"]))
    return f"{cyc}: {word} (oracle {row['agreement']})"


def cmd_bwcheck(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph6, sys.stdin)
    parts = enumerate_partitions(g)
    if args.cycle is not None:
        cyc = _parse_cycle(args.cycle)
        if len(cyc) % 2:
            raise UsageError("cycle must have even length")
        try:
            rows = [_bw_row(g, cyc, parts, args.traces)]
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
    else:
        rows = [_bw_row(g, c, parts, args.traces) for c in _even_cycles(g, args.max_cycle_len)]
    if args.jsonl:
        _write_jsonl(sys.stdout, rows)
    else:
        for r in rows:
            print(_decision_text(r))
    return EXIT_VIOLATION if any(r["agreement"] != "agree" for r in rows) else EXIT_OK


def cmd_bwcensus(args: argparse.Namespace) -> int:
    root = _catalog_root(args.catalog)
    rows: list[dict] = []
    for n in _orders(root, args.n):
        cat = _load(root, n)
        tasks = [(to_graph6(e.graph), args.max_cycle_len, args.traces) for e in cat]
        for chunk in _pmap(_bw_graph, tasks, args.jobs):
            rows.extend(chunk)
    out = _open_out(args.out)
    try:
        _write_jsonl(out, rows)
    finally:
        if out is not sys.stdout:
            out.close()
    bad = sum(r["agreement"] != "agree" for r in rows)
    yes = sum(r["decision"] for r in rows)
    print(f"{len(rows)} cycles, {yes} 2-colorable, {bad} disagreements", file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


# ----------------------------------------------------------------------
# export
# ----------------------------------------------------------------------


def cmd_export(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph6, sys.stdin)
    if args.format == "g6":
        print(to_graph6(canonical_form(g)))
        return EXIT_OK
    if args.cycle is not None:
        cyc = _parse_cycle(args.cycle)
        try:
            sides = split_on_cycle(g, cyc)
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
        s = sides[args.side]
        sys.stdout.write(bw_to_dot(s, improved_bw_operation(s)))
        return EXIT_OK
    part = None
    if args.partition is not None:
        ps = enumerate_partitions(g)
        if not 0 <= args.partition < len(ps):
            raise UsageError(f"partition index out of range (graph has {len(ps)})")
        part = ps.partitions[args.partition]
    sys.stdout.write(to_dot(g, part))
    return EXIT_OK


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------


def _positive(text: str) -> int:
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return k


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="triangulata",
        description="Generation, colouring census and Black-White decisions for plane triangulations.",
        epilog=f"Catalog root: --catalog, else ${ENV_CATALOG}, else ./catalog. "
        "Exit status 0 ok, 1 property violation, 2 usage error.",
    )
    p.add_argument(
        "--seedless",
        action="store_true",
        help="accepted for scripting; every command is already free of randomness",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(sp: argparse.ArgumentParser, *, catalog: bool = True, jobs: bool = True) -> None:
        if catalog:
            sp.add_argument("--catalog", metavar="DIR", help="catalog root directory")
        if jobs:
            sp.add_argument("--jobs", type=_positive, default=1, metavar="K", help="worker processes (default 1)")

    g = sub.add_parser("generate", help="build catalogs of minimum-degree-4 triangulations up to order N")
    g.add_argument("--n", type=int, required=True, help="target order")
    common(g)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("census", help="colouring census of catalog graphs")
    c.add_argument("--n", type=int, help="only this order (default: every catalog present)")
    c.add_argument("--out", metavar="FILE", help="JSONL output (default stdout)")
    c.add_argument("--quiet", action="store_true", help="skip the summary table")
    common(c)
    c.set_defaults(func=cmd_census)

    b = sub.add_parser("bwcheck", help="Black-White decision for one graph")
    b.add_argument("graph6", nargs="?", help="graph6 record (default: first line of stdin)")
    b.add_argument("--cycle", help="even cycle as comma separated vertex ids (default: all even cycles)")
    b.add_argument("--max-cycle-len", type=int, metavar="L", help="longest cycle checked when --cycle is absent")
    b.add_argument("--jsonl", action="store_true", help="emit JSON lines instead of text")
    b.add_argument("--traces", action="store_true", help="include per-side traces in JSON output")
    common(b, catalog=False, jobs=False)
    b.set_defaults(func=cmd_bwcheck)

    bc = sub.add_parser("bwcensus", help="Black-White decisions for every even cycle of a catalog")
    bc.add_argument("--n", type=int, help="only this order (default: every catalog present)")
    bc.add_argument("--max-cycle-len", type=int, metavar="L", help="longest cycle checked")
    bc.add_argument("--out", metavar="FILE", help="JSONL output (default stdout)")
    bc.add_argument("--traces", action="store_true", help="include per-side traces")
    common(bc)
    bc.set_defaults(func=cmd_bwcensus)

    e = sub.add_parser("export", help="DOT drawing or canonical graph6 of one graph")
    e.add_argument("graph6", nargs="?", help="graph6 record (default: first line of stdin)")
    e.add_argument("--format", choices=("dot", "g6"), default="dot")
    e.add_argument("--partition", type=int, metavar="I", help="colour by the I-th partition (DOT only)")
    e.add_argument("--cycle", help="draw the Black-White colouring of one side of this cycle")
    e.add_argument("--side", type=int, choices=(0, 1), default=0, help="which side of --cycle (default 0)")
    common(e, catalog=False, jobs=False)
    e.set_defaults(func=cmd_export)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"triangulata {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, OSError) as exc:
        print(f"triangulata {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
