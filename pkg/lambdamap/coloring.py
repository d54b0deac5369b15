"""Klein-four 3-typings of closed terms and Tait edge 3-colorings of trivalent maps."""
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .bijection import term_to_map, wire_consumers
from .config import DEFAULT_FOURCT_BUDGET
from .enumeration import enumerate_terms
from .errors import BudgetExceededError, LambdaMapError, MalformedMapError, OpenTermError
from .inference import Imp, LinType, PrincipalType, TypeVar
from .maps import ClassicalMap, RootedTrivalentMap, smooth_root
from .terms import App, LinearTerm, Term, Var


class KleinElement(Enum):
    """Elements of {1, R, G, B} as two bits; the group law is XOR."""

    ONE = 0
    R = 1
    G = 2
    B = 3

    def __mul__(self, other: "KleinElement") -> "KleinElement":
        return KleinElement(self.value ^ other.value)

    def __str__(self) -> str:
        return "1" if self is KleinElement.ONE else self.name

    @classmethod
    def parse(cls, text: str) -> "KleinElement":
        text = text.strip().upper()
        if text == "1":
            return cls.ONE
        try:
            return cls[text]
        except KeyError:
            raise LambdaMapError(f"not a Klein group element: {text!r}") from None


ONE, R, G, B = KleinElement.ONE, KleinElement.R, KleinElement.G, KleinElement.B
COLORS = (R, G, B)


def klein_mul(a: KleinElement, b: KleinElement) -> KleinElement:
    return a * b


def klein_imp(x: KleinElement, y: KleinElement) -> KleinElement:
    # x -o y = y x^-1 = x y, since every element is its own inverse
    return x * y


def klein_value(t: LinType, assignment: Mapping[str, KleinElement]) -> KleinElement:
    if isinstance(t, TypeVar):
        try:
            return assignment[t.name]
        except KeyError:
            raise LambdaMapError(f"no Klein value given for type variable {t.name}") from None
    return klein_imp(klein_value(t.domain, assignment), klein_value(t.codomain, assignment))


# ---------------------------
# Wire typings
# ---------------------------

class _Wire(NamedTuple):
    path: str
    kind: str  # "var", "app" or "lam"
    children: Tuple[int, ...]
    binder: int  # parameter number for "var" and "lam", -1 for "app"


def _wires(t: LinearTerm) -> Tuple[List[_Wire], int]:
    """Pre-order wire list and the number of abstractions."""
    wires: List[Optional[_Wire]] = []
    binders = [0]

    def walk(node: Term, path: str, env: Dict[str, int]) -> int:
        index = len(wires)
        wires.append(None)
        if isinstance(node, Var):
            wires[index] = _Wire(path, "var", (), env[node.name])
        elif isinstance(node, App):
            fn = walk(node.fn, path + "/fn", env)
            arg = walk(node.arg, path + "/arg", env)
            wires[index] = _Wire(path, "app", (fn, arg), -1)
        else:
            binder = binders[0]
            binders[0] += 1
            body = walk(node.body, path + "/body", {**env, node.name: binder})
            wires[index] = _Wire(path, "lam", (body,), binder)
        return index

    walk(t.term, "root", {})
    return wires, binders[0]


def _propagate(wires: Sequence[_Wire], parameters: Sequence[KleinElement]) -> List[KleinElement]:
    values: List[KleinElement] = [ONE] * len(wires)
    # children always follow their parent in pre-order
    for i in range(len(wires) - 1, -1, -1):
        wire = wires[i]
        if wire.kind == "var":
            values[i] = parameters[wire.binder]
        elif wire.kind == "app":
            values[i] = values[wire.children[0]] * values[wire.children[1]]
        else:
            values[i] = parameters[wire.binder] * values[wire.children[0]]
    return values


@dataclass(frozen=True)
class WireColoring:
    """Klein element of every wire, keyed by wire path in pre-order."""

    parameters: Tuple[KleinElement, ...]
    wires: Tuple[Tuple[str, KleinElement], ...]

    def value(self, path: str) -> KleinElement:
        return dict(self.wires)[path]

    @property
    def root(self) -> KleinElement:
        return self.wires[0][1]

    @property
    def is_proper(self) -> bool:
        return all(value is not ONE for _, value in self.wires[1:])

    def lines(self) -> List[str]:
        return [f"{path}: {value}" for path, value in self.wires]


def _require_closed(t: LinearTerm) -> None:
    if not t.is_closed:
        raise OpenTermError(f"3-typings are defined for closed terms; {t} has context {', '.join(t.context)}")


def _typings(t: LinearTerm, proper_only: bool) -> Iterator[WireColoring]:
    _require_closed(t)
    wires, count = _wires(t)
    choices = COLORS if proper_only else tuple(KleinElement)
    for parameters in product(choices, repeat=count):
        values = _propagate(wires, parameters)
        if proper_only and any(value is ONE for value in values[1:]):
            continue
        yield WireColoring(parameters, tuple((w.path, v) for w, v in zip(wires, values)))


def three_typings(t: LinearTerm, proper_only: bool = False) -> List[WireColoring]:
    """Every Klein-four typing of a closed term.

    The abstraction parameters are chosen freely (from {R, G, B} when
    ``proper_only``) and all other wires follow from the vertex relations.
    """
    return list(_typings(t, proper_only))


def has_proper_three_typing(t: LinearTerm) -> bool:
    return next(_typings(t, True), None) is not None


def is_three_typing(t: LinearTerm, coloring: WireColoring) -> bool:
    """Check the relation at every vertex of ``t`` for an arbitrary wire assignment."""
    _require_closed(t)
    wires, _ = _wires(t)
    values = dict(coloring.wires)
    if set(values) != {w.path for w in wires}:
        return False
    parameter: Dict[int, KleinElement] = {
        w.binder: values[w.path] for w in wires if w.kind == "var"
    }
    for w in wires:
        if w.kind == "app":
            fn, arg = (values[wires[c].path] for c in w.children)
            if fn != klein_imp(arg, values[w.path]):
                return False
        elif w.kind == "lam":
            body = values[wires[w.children[0]].path]
            if values[w.path] != klein_imp(parameter[w.binder], body):
                return False
    return True


def instantiate(principal: PrincipalType, assignment: Mapping[str, KleinElement]) -> WireColoring:
    """The wire assignment obtained by reading each principal wire type in the Klein group."""
    wires = tuple((path, klein_value(ty, assignment)) for path, ty in principal.wires)
    types = principal.wire_types()
    parameters = tuple(
        klein_value(ty.domain, assignment)
        for path, ty in principal.wires
        if isinstance(ty, Imp) and path + "/body" in types
    )
    return WireColoring(parameters, wires)


# ---------------------------
# Edge colorings
# ---------------------------

Edge = Tuple[int, int]


@dataclass(frozen=True)
class EdgeColoring:
    colors: Tuple[Tuple[Edge, KleinElement], ...]

    def color_of(self, dart: int) -> KleinElement:
        for (a, b), color in self.colors:
            if dart in (a, b):
                return color
        raise KeyError(dart)

    def lines(self) -> List[str]:
        return [f"{a}-{b}: {color}" for (a, b), color in self.colors]


def _edge_order(m: ClassicalMap) -> List[Edge]:
    start = m.root if m.root is not None else m.darts[0]
    seen = {start}
    queue = [start]
    order: List[Edge] = []
    placed = set()
    for d in queue:
        edge = tuple(sorted((d, m.e(d))))
        if edge not in placed:
            placed.add(edge)
            order.append(edge)
        for nxt in (m.v(d), m.e(d)):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return order


def edge_three_colorings(m: ClassicalMap) -> List[EdgeColoring]:
    """All proper colorings of the edges of a trivalent map by {R, G, B}."""
    if not m.is_trivalent:
        raise MalformedMapError("edge 3-colorings need a trivalent map")
    order = _edge_order(m)
    if any(m.v(a) == b or m.v(b) == a for a, b in order):
        # a loop puts one color twice at its vertex
        return []
    color: Dict[int, KleinElement] = {}
    found: List[EdgeColoring] = []

    def clashes(dart: int, c: KleinElement) -> bool:
        return color.get(m.v(dart)) is c or color.get(m.v(m.v(dart))) is c

    def extend(i: int) -> None:
        if i == len(order):
            found.append(EdgeColoring(tuple(sorted((edge, color[edge[0]]) for edge in order))))
            return
        a, b = order[i]
        for c in COLORS:
            if clashes(a, c) or clashes(b, c):
                continue
            color[a] = color[b] = c
            extend(i + 1)
            del color[a], color[b]

    extend(0)
    logging.debug("%d proper edge 3-colorings over %d edges", len(found), len(order))
    return found


def _edge_coloring(
    m: RootedTrivalentMap,
    smoothed: ClassicalMap,
    consumers: Mapping[str, int],
    typing: WireColoring,
) -> EdgeColoring:
    shade: Dict[int, KleinElement] = {}
    for path, value in typing.wires:
        dart = consumers[path]
        shade[dart] = shade[m.e(dart)] = value
    a = smoothed.root
    if shade[a] is not shade[smoothed.e(a)]:
        raise LambdaMapError("the wires next to the root carry different values")
    edges = sorted({tuple(sorted((d, smoothed.e(d)))) for d in smoothed.darts})
    return EdgeColoring(tuple((edge, shade[edge[0]]) for edge in edges))


def typing_to_edge_coloring(t: LinearTerm, typing: WireColoring) -> EdgeColoring:
    """Edge coloring of the smoothed map of ``t`` read off a proper 3-typing.

    Every remaining edge keeps the value of its wire; the spliced edge takes
    the common value of the two wires next to the root.
    """
    _require_closed(t)
    m = term_to_map(t)
    return _edge_coloring(m, smooth_root(m), wire_consumers(t), typing)


def typing_coloring_correspondence(t: LinearTerm) -> bool:
    """Proper 3-typings of ``t`` map one-to-one onto the proper edge 3-colorings of its smoothed map."""
    _require_closed(t)
    m = term_to_map(t)
    smoothed = smooth_root(m)
    consumers = wire_consumers(t)
    images = [_edge_coloring(m, smoothed, consumers, typing) for typing in three_typings(t, proper_only=True)]
    colorings = set(edge_three_colorings(smoothed))
    if len(set(images)) != len(images) or set(images) != colorings:
        logging.info("term %s: %d proper typings but %d edge colorings", t, len(images), len(colorings))
        return False
    return True


# ---------------------------
# Desk check
# ---------------------------

@dataclass
class DeskCheckReport:
    n_max: int
    checked: Dict[int, int] = field(default_factory=dict)
    counterexamples: List[str] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.checked.values())

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def lines(self) -> List[str]:
        out = [f"size {n}: {count} planar indecomposable terms checked" for n, count in sorted(self.checked.items())]
        out.append(f"total: {self.total}")
        out.extend(f"counterexample: {term}" for term in self.counterexamples)
        out.append("all terms have a proper 3-typing" if self.passed else "FAILED")
        return out


def _untypable(terms: List[LinearTerm]) -> List[str]:
    return [str(t) for t in terms if not has_proper_three_typing(t)]


def fourct_desk_check(n_max: int, workers: int = 1, budget: int = DEFAULT_FOURCT_BUDGET) -> DeskCheckReport:
    """Check every closed planar indecomposable term of size <= n_max for a proper 3-typing."""
    if n_max < 0:
        raise LambdaMapError("n_max must be non-negative")
    if n_max > budget:
        raise BudgetExceededError(f"n_max={n_max} exceeds the configured budget of {budget}")
    report = DeskCheckReport(n_max)
    for n in range(1, n_max + 1, 2):
        classes = list(enumerate_terms(n, 0, "planar-indecomposable", workers))
        terms = [c.to_linear() for c in classes]
        report.checked[n] = len(terms)
        if workers <= 1 or len(terms) < 2 * workers:
            failures = _untypable(terms)
        else:
            size = -(-len(terms) // workers)
            failures = []
            with ProcessPoolExecutor(max_workers=workers) as executor:
                future_map = {
                    executor.submit(_untypable, terms[i:i + size]): i
                    for i in range(0, len(terms), size)
                }
                for future in as_completed(future_map):
                    failures.extend(future.result())
            failures.sort()
        report.counterexamples.extend(failures)
        logging.info("size %d: %d terms checked, %d without a proper 3-typing", n, len(terms), len(failures))
    return report
