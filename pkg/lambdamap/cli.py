import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence

from .bijection import map_to_term, term_to_map
from .coloring import KleinElement, edge_three_colorings, fourct_desk_check, instantiate, three_typings
from .config import configure_logging, load_settings
from .enumeration import FILTERS, count_terms, enumerate_terms
from .errors import BudgetExceededError, MalformedMapError
from .graphs import bridges, is_bridgeless, map_to_dot, underlying_graph
from .inference import infer_principal_type, render_type
from .maps import (
    AnyMap,
    RootedTrivalentMap,
    canonical_form,
    cycle_counts,
    genus,
    map_from_json,
    map_to_json,
    rooted_isomorphic,
    smooth_root,
)
from .series import FAMILY_ALIASES, series
from .terms import LinearTerm, alpha_canonical, parse_term


class UsageError(Exception):
    """Missing or conflicting flags that argparse alone cannot detect."""


def _emit(args: argparse.Namespace, text_lines: Sequence[str], payload: object) -> None:
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_map(path: str) -> AnyMap:
    try:
        return map_from_json(_read(path))
    except (TypeError, KeyError, AttributeError) as exc:
        raise MalformedMapError(f"invalid map document in {path}: {exc}") from None


def _term(args: argparse.Namespace, flag: str = "term") -> LinearTerm:
    text = getattr(args, flag)
    if text is None:
        raise UsageError(f"--{flag.replace('_', '-')} is required")
    return parse_term(text, args.context)


def _map(args: argparse.Namespace) -> AnyMap:
    if (args.term is None) == (args.input is None):
        raise UsageError("give exactly one of --term and --input")
    if args.term is not None:
        return term_to_map(_term(args))
    return _load_map(args.input)


def _rooted(m: AnyMap, what: str) -> RootedTrivalentMap:
    if not isinstance(m, RootedTrivalentMap):
        raise MalformedMapError(f"{what} needs a rooted trivalent map (with root and boundary keys)")
    return m


# ---------------------------
# Commands
# ---------------------------

def cmd_enumerate(args: argparse.Namespace) -> int:
    terms = [str(c) for c in enumerate_terms(args.size, args.free, args.filter, args.workers)]
    payload = {"size": args.size, "free": args.free, "filter": args.filter, "terms": terms}
    _emit(args, terms, payload)
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    count = count_terms(args.size, args.free, args.filter, args.workers)
    payload = {"size": args.size, "free": args.free, "filter": args.filter, "count": count}
    _emit(args, [str(count)], payload)
    return 0


def cmd_series(args: argparse.Namespace) -> int:
    table = series(args.family, args.size)
    width = table.width
    rows = [[table.entry(n, k) for k in range(width)] for n in range(len(table.rows))]
    payload = {"family": table.family, "exponential": table.exponential, "rows": rows}
    _emit(args, ["\t".join(map(str, row)) for row in rows], payload)
    return 0


def cmd_to_map(args: argparse.Namespace) -> int:
    m = canonical_form(term_to_map(_term(args)))
    print(map_to_json(m))
    return 0


def cmd_to_term(args: argparse.Namespace) -> int:
    if args.input is None:
        raise UsageError("--input is required")
    m = _rooted(_load_map(args.input), "to-term")
    readable = alpha_canonical(map_to_term(m)).to_linear()
    lines = [str(readable)]
    if readable.context:
        lines.append("context: " + ",".join(readable.context))
    _emit(args, lines, {"term": str(readable), "context": list(readable.context)})
    return 0


def cmd_genus(args: argparse.Namespace) -> int:
    m = _map(args)
    g = genus(m)
    cv, ce, cf = cycle_counts(m)
    _emit(args, [str(g)], {"genus": g, "vertices": cv, "edges": ce, "faces": cf})
    return 0


def cmd_bridges(args: argparse.Namespace) -> int:
    m = _map(args)
    found = sorted(key for _, _, key in bridges(underlying_graph(m)))
    lines = [f"{a}-{b}" for a, b in found]
    bridgeless: Optional[bool] = None
    if isinstance(m, RootedTrivalentMap) and m.is_closed:
        bridgeless = is_bridgeless(m)
        lines.append(f"bridgeless: {'yes' if bridgeless else 'no'}")
    _emit(args, lines, {"bridges": [list(edge) for edge in found], "bridgeless": bridgeless})
    return 0


def cmd_iso(args: argparse.Namespace) -> int:
    if args.input is not None and args.other is not None:
        first = _rooted(_load_map(args.input), "iso")
        second = _rooted(_load_map(args.other), "iso")
    elif args.term is not None and args.other_term is not None:
        first = term_to_map(_term(args))
        second = term_to_map(_term(args, "other_term"))
    else:
        raise UsageError("give --input with --other, or --term with --other-term")
    same = rooted_isomorphic(first, second)
    _emit(args, ["true" if same else "false"], {"isomorphic": same})
    return 0


def _parse_assignment(text: str) -> Dict[str, KleinElement]:
    assignment = {}
    for part in text.split(","):
        if not part.strip():
            continue
        name, sep, value = part.partition("=")
        if not sep:
            raise UsageError(f"expected name=element in --assign, got {part!r}")
        assignment[name.strip()] = KleinElement.parse(value)
    return assignment


def cmd_type(args: argparse.Namespace) -> int:
    t = _term(args)
    if args.klein:
        if args.assign:
            typings = [instantiate(infer_principal_type(t), _parse_assignment(args.assign))]
        else:
            typings = three_typings(t, proper_only=args.proper)
        lines: List[str] = []
        for i, typing in enumerate(typings):
            if i:
                lines.append("")
            lines.extend(typing.lines())
        payload = [{path: str(value) for path, value in typing.wires} for typing in typings]
        _emit(args, lines, payload)
        return 0
    principal = infer_principal_type(t)
    payload = {
        "context": {name: render_type(ty) for name, ty in principal.context},
        "type": render_type(principal.result),
    }
    _emit(args, [str(principal)], payload)
    return 0


def cmd_color(args: argparse.Namespace) -> int:
    m = _map(args)
    if isinstance(m, RootedTrivalentMap):
        m = smooth_root(m)
    colorings = edge_three_colorings(m)
    lines: List[str] = []
    for i, coloring in enumerate(colorings):
        if i:
            lines.append("")
        lines.extend(coloring.lines())
    payload = [{f"{a}-{b}": str(color) for (a, b), color in coloring.colors} for coloring in colorings]
    _emit(args, lines, payload)
    return 0


def cmd_fourct(args: argparse.Namespace) -> int:
    settings = load_settings()
    report = fourct_desk_check(args.size, args.workers, settings.fourct_budget)
    payload = {
        "n_max": report.n_max,
        "checked": {str(n): count for n, count in sorted(report.checked.items())},
        "counterexamples": report.counterexamples,
        "passed": report.passed,
    }
    _emit(args, report.lines(), payload)
    return 0 if report.passed else 1


def cmd_export_dot(args: argparse.Namespace) -> int:
    sys.stdout.write(map_to_dot(_map(args)))
    return 0


# ---------------------------
# Parser
# ---------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true")
    common.add_argument("--format", choices=("text", "json"), default="text")

    term_source = argparse.ArgumentParser(add_help=False)
    term_source.add_argument("--term", help="Linear term, e.g. '\\x.\\y.y x'")
    term_source.add_argument("--context", default="", help="Comma-separated free variables in order")

    map_source = argparse.ArgumentParser(add_help=False)
    map_source.add_argument("--input", help="Map JSON file, or - for stdin")

    sized = argparse.ArgumentParser(add_help=False)
    sized.add_argument("--size", "-n", type=int, required=True)
    sized.add_argument("--workers", type=int, default=None, help="Worker processes (default: LAMBDAMAP_WORKERS)")

    parser = argparse.ArgumentParser(
        prog="lambdamap",
        description="Linear lambda terms, rooted trivalent maps and their colorings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], int], parents: List[argparse.ArgumentParser], help_text: str):
        command = sub.add_parser(name, parents=[common, *parents], help=help_text)
        command.set_defaults(handler=handler)
        return command

    for name, handler, help_text in (
        ("enumerate", cmd_enumerate, "List alpha-classes of linear terms"),
        ("count", cmd_count, "Count alpha-classes of linear terms"),
    ):
        command = add(name, handler, [sized], help_text)
        command.add_argument("--free", "-k", type=int, default=0)
        command.add_argument("--filter", choices=FILTERS, default="all")

    command = add("series", cmd_series, [], "Coefficient table of a generating function")
    command.add_argument("--family", choices=sorted(FAMILY_ALIASES), default="linear")
    command.add_argument("--size", "-n", type=int, required=True, help="Largest size")

    add("to-map", cmd_to_map, [term_source], "Convert a term to its rooted trivalent map")
    add("to-term", cmd_to_term, [map_source], "Convert a rooted trivalent map to its term")
    add("genus", cmd_genus, [term_source, map_source], "Genus of a map or of a term's map")
    add("bridges", cmd_bridges, [term_source, map_source], "Bridges of the underlying graph")
    add("export-dot", cmd_export_dot, [term_source, map_source], "Graphviz rendering of a map")
    add("color", cmd_color, [term_source, map_source], "Proper edge 3-colorings (rooted maps are smoothed)")

    command = add("iso", cmd_iso, [term_source, map_source], "Rooted isomorphism of two maps")
    command.add_argument("--other", help="Second map JSON file")
    command.add_argument("--other-term", help="Second term (shares --context)")

    command = add("type", cmd_type, [term_source], "Principal type or Klein-four typings")
    mode = command.add_mutually_exclusive_group()
    mode.add_argument("--principal", action="store_true", help="Most general linear type (default)")
    mode.add_argument("--klein", action="store_true", help="Klein-four 3-typings of a closed term")
    command.add_argument("--proper", action="store_true", help="With --klein, only proper 3-typings")
    command.add_argument("--assign", help="With --klein, instantiate the principal type, e.g. 'α=R,β=B'")

    command = add("fourct", cmd_fourct, [], "Check planar indecomposable terms for proper 3-typings")
    command.add_argument("--size", "-n", type=int, required=True, help="Largest term size")
    command.add_argument("--workers", type=int, default=None)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 2

    configure_logging(args.verbose)
    try:
        if getattr(args, "workers", 0) is None:
            args.workers = load_settings().workers
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be a positive integer")
        return args.handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        logging.error("%s", exc)
        return 2
    except BudgetExceededError as exc:
        logging.error("%s (raise LAMBDAMAP_FOURCT_BUDGET to allow it)", exc)
        return 1
    except (ValueError, OSError) as exc:
        logging.error("%s", exc)
        return 1
    except RecursionError:
        logging.error("input is nested too deeply to process")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
