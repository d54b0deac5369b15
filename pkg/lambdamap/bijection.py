"""Linear lambda terms <-> rooted trivalent maps with boundary.

``term_to_map`` forgets which trivalent vertices were applications and which
were abstractions. ``map_to_term`` recovers them one root vertex at a time:
the vertex next to the root is an application exactly when deleting it
disconnects the map.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterator, Set, Tuple

from .maps import RootedTrivalentMap, rooted_isomorphic
from .terms import Abs, App, LinearTerm, Term, Var, alpha_equivalent


@dataclass(frozen=True)
class PortConvention:
    """Counterclockwise order of the ports around each kind of trivalent vertex."""

    abstraction: Tuple[str, str, str] = ("root", "parameter", "body")
    application: Tuple[str, str, str] = ("function", "continuation", "argument")


PORTS = PortConvention()


class _MapBuilder:
    def __init__(self) -> None:
        self.v: Dict[int, int] = {}
        self.e: Dict[int, int] = {}
        self.bound: Dict[str, int] = {}
        self.free: Dict[str, int] = {}
        self.consumers: Dict[str, int] = {}

    def dart(self) -> int:
        d = len(self.v)
        self.v[d] = d
        self.e[d] = d
        return d

    def vertex(self, ports: Tuple[str, str, str]) -> Dict[str, int]:
        darts = {port: self.dart() for port in ports}
        for i, port in enumerate(ports):
            self.v[darts[port]] = darts[ports[(i + 1) % 3]]
        return darts

    def glue(self, a: int, b: int) -> None:
        self.e[a] = b
        self.e[b] = a

    def attach(self, node: Term, consumer: int, path: str = "root") -> None:
        """Connect the outgoing wire of ``node`` to the dart ``consumer``."""
        self.consumers[path] = consumer
        if isinstance(node, Var):
            if node.name in self.bound:
                self.glue(self.bound.pop(node.name), consumer)
            else:
                self.free[node.name] = consumer
        elif isinstance(node, Abs):
            ports = self.vertex(PORTS.abstraction)
            self.glue(ports["root"], consumer)
            shadowed = self.bound.get(node.name)
            self.bound[node.name] = ports["parameter"]
            self.attach(node.body, ports["body"], path + "/body")
            if shadowed is not None:
                self.bound[node.name] = shadowed
        else:
            ports = self.vertex(PORTS.application)
            self.glue(ports["continuation"], consumer)
            self.attach(node.fn, ports["function"], path + "/fn")
            self.attach(node.arg, ports["argument"], path + "/arg")


def term_to_map(t: LinearTerm) -> RootedTrivalentMap:
    builder = _MapBuilder()
    root = builder.dart()
    builder.attach(t.term, root)
    boundary = [builder.free[name] for name in t.context]
    return RootedTrivalentMap.from_dicts(builder.v, builder.e, root, boundary)


def wire_consumers(t: LinearTerm) -> Dict[str, int]:
    """Dart of ``term_to_map(t)`` that consumes each wire, keyed by wire path."""
    builder = _MapBuilder()
    builder.attach(t.term, builder.dart())
    return builder.consumers


def _component(start: int, v: Dict[int, int], e: Dict[int, int]) -> Set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        d = queue.popleft()
        for nxt in (v[d], e[d]):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _decompose(
    v: Dict[int, int],
    e: Dict[int, int],
    root: int,
    names: Dict[int, str],
    fresh: Iterator[int],
) -> Term:
    x = e[root]
    if x == root:
        return Var(names[root])
    # x is the root port of a lambda or the continuation of an application
    p = v[x]  # parameter / argument
    q = v[p]  # body / function
    v = {d: image for d, image in v.items() if d not in (root, x)}
    e = {d: image for d, image in e.items() if d not in (root, x)}
    v[p] = p
    v[q] = q

    p_side = _component(p, v, e)
    if q not in p_side:
        fn_v = {d: image for d, image in v.items() if d not in p_side}
        fn_e = {d: image for d, image in e.items() if d not in p_side}
        fn = _decompose(fn_v, fn_e, q, names, fresh)
        arg_v = {d: v[d] for d in p_side}
        arg_e = {d: e[d] for d in p_side}
        return App(fn, _decompose(arg_v, arg_e, p, names, fresh))

    use_site = e.pop(p)
    del v[p]
    e[use_site] = use_site
    name = f"x{next(fresh)}"
    names[use_site] = name
    return Abs(name, _decompose(v, e, q, names, fresh))


def map_to_term(m: RootedTrivalentMap) -> LinearTerm:
    """The unique linear term (up to alpha) whose underlying map is ``m``.

    Boundary darts are named x1..xk in order; binders continue the numbering
    in decomposition order.
    """
    names = {dart: f"x{i}" for i, dart in enumerate(m.boundary, start=1)}
    fresh = itertools.count(len(m.boundary) + 1)
    term = _decompose(m.v.as_dict(), m.e.as_dict(), m.root, names, fresh)
    return LinearTerm(tuple(names[d] for d in m.boundary), term)


def roundtrip_check(t: LinearTerm) -> bool:
    m = term_to_map(t)
    back = map_to_term(m)
    if not alpha_equivalent(back, t):
        logging.debug("term %s came back as %s", t, back)
        return False
    return rooted_isomorphic(term_to_map(back), m)
