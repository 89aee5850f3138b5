"""``disjdom`` command-line entry point.

Exit codes: 0 when everything holds, 1 when a checked claim or set fails,
2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import campaign
from .enumeration import MAX_ORDER, all_trees, random_tree
from .errors import DisjDomError
from .families import enumerate_family, membership
from .solver import check_2dd_set, gamma_d2
from .tree import Tree, format_edge_list, parse_tree_input


def _read_tree(path: str) -> Tree:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_tree_input(text)


def _parse_set(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise DisjDomError(f"bad vertex set {text!r}; expected e.g. 0,2,4") from None


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _family(flag: str) -> str:
    return flag.upper()


def cmd_gamma(args) -> int:
    method = {"bnb": "bnb", "brute": "brute"}.get(args.method, "auto")
    _emit(gamma_d2(_read_tree(args.input), method).as_dict())
    return 0


def cmd_check_set(args) -> int:
    t = _read_tree(args.input)
    cert = check_2dd_set(t, _parse_set(args.set))
    _emit({"n": t.n, **cert.as_dict()})
    return 0 if cert.valid else 1


def cmd_bounds(args) -> int:
    t = _read_tree(args.input)
    if t.n < 2:
        raise DisjDomError("bounds need a tree with at least 2 vertices")
    _emit(campaign.bounds_report(t))
    return 0


def cmd_gen_family(args) -> int:
    catalog = enumerate_family(_family(args.family), args.max_n)
    text = catalog.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    counts = {n: len(catalog.projection(n)) for n in sorted(catalog.members)}
    print(
        f"{catalog.family}: {len(catalog)} labeled, {len(catalog.projection())} unlabeled; per order {counts}",
        file=sys.stderr,
    )
    return 0


def cmd_member(args) -> int:
    t = _read_tree(args.input)
    family = _family(args.family)
    cap = args.max_n or max(t.n, 4)
    catalog = enumerate_family(family, cap)
    verdict = membership(t, family, catalog)
    _emit(verdict.as_dict())
    return 1 if verdict.theorem_violation else 0


def cmd_enum_trees(args) -> int:
    orders = [args.n] if args.n else list(range(1, args.max_n + 1))
    out = Path(args.out) if args.out else None
    counts = {}
    for n in orders:
        trees = all_trees(n)
        counts[str(n)] = len(trees)
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
            for i, t in enumerate(trees):
                (out / f"n{n:02d}_{i:05d}.txt").write_text(format_edge_list(t), encoding="utf-8")
    manifest = {"counts": counts, "total": sum(counts.values())}
    if out is not None:
        (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    _emit(manifest)
    return 0


def cmd_random_tree(args) -> int:
    text = format_edge_list(random_tree(args.n, args.seed))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    if not 3 <= args.max_n <= 12:
        raise DisjDomError(f"--max-n must be in 3..12, got {args.max_n}")
    records, summary = campaign.run_campaign(args.max_n, jobs=args.jobs)
    if args.out:
        campaign.write_report(args.out, records, summary)
    result = summary.as_dict()
    print(
        f"verified {summary.tree_count} trees of order {summary.n_min}..{summary.n_max}: "
        f"{len(summary.violations)} violations in {result['wall_time']}s",
        file=sys.stderr,
    )
    _emit(result)
    return summary.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="disjdom", description="Disjunctive domination in trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma", help="compute the disjunctive domination number")
    p.add_argument("--input", required=True, help="edge-list or p:-prefixed Prüfer file, '-' for stdin")
    p.add_argument("--method", choices=["brute", "bnb", "auto"], default="auto")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("check-set", help="check whether a vertex set is a 2DD-set")
    p.add_argument("--input", required=True)
    p.add_argument("--set", required=True, help="comma-separated vertex indices")
    p.set_defaults(func=cmd_check_set)

    p = sub.add_parser("bounds", help="report the lower, upper and improved bounds")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("gen-family", help="generate a family catalog")
    p.add_argument("--family", choices=["t1", "t2"], required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_family)

    p = sub.add_parser("member", help="decide family membership two ways")
    p.add_argument("--input", required=True)
    p.add_argument("--family", choices=["t1", "t2"], required=True)
    p.add_argument("--max-n", type=int, default=None, help="catalog order (default: the tree's order)")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("enum-trees", help="write all non-isomorphic trees")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help=f"a single order (<= {MAX_ORDER})")
    group.add_argument("--max-n", type=int, help="all orders 1..max-n")
    p.add_argument("--out", help="directory for edge-list files and manifest.json")
    p.set_defaults(func=cmd_enum_trees)

    p = sub.add_parser("random-tree", help="sample a uniform labeled tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_random_tree)

    p = sub.add_parser("verify", help="run the exhaustive verification campaign")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--out", help="line-delimited JSON report path")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DisjDomError, OSError) as exc:
        print(f"disjdom {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
