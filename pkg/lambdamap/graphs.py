"""Underlying graphs of maps, bridge detection and Graphviz export."""
import logging
from typing import Dict, Hashable, List, Set, Tuple

import networkx as nx

from .errors import DisconnectedGraphError, MalformedMapError
from .maps import AnyMap, RootedTrivalentMap

Edge = Tuple[Hashable, Hashable, Hashable]


def _vertex_of(m: AnyMap) -> Dict[int, int]:
    owner = {}
    for cycle in m.v.cycles():
        for dart in cycle:
            owner[dart] = cycle[0]
    return owner


def underlying_graph(m: AnyMap) -> nx.MultiGraph:
    """One node per v-orbit (named by its least dart), one edge per 2-element e-orbit.

    Edge keys are the sorted dart pairs, so parallel edges and loops stay distinct.
    """
    owner = _vertex_of(m)
    g = nx.MultiGraph()
    root = getattr(m, "root", None)
    for cycle in m.v.cycles():
        g.add_node(cycle[0], darts=cycle, root=root in cycle)
    for cycle in m.e.cycles():
        if len(cycle) == 2:
            a, b = cycle
            g.add_edge(owner[a], owner[b], key=(a, b))
    return g


def bridges(g: nx.MultiGraph) -> Set[Edge]:
    """Cut edges of a connected multigraph, as ``(u, w, key)`` with the keys of ``g``.

    Lowpoint DFS; only the tree edge used to reach a vertex is skipped, so a
    parallel edge correctly closes a cycle.
    """
    if g.number_of_nodes() == 0:
        return set()
    if not g.is_multigraph():
        g = nx.MultiGraph(g)
    if not nx.is_connected(g):
        raise DisconnectedGraphError("bridge detection needs a connected graph")

    start = next(iter(g.nodes))
    preorder = {start: 0}
    low = {start: 0}
    found: Set[Edge] = set()
    # (vertex, parent, key of the edge from the parent, iterator over incident edges)
    stack = [(start, None, None, iter(g.edges(start, keys=True)))]
    while stack:
        node, parent, via, incident = stack[-1]
        advanced = False
        for _, nbr, key in incident:
            if nbr == node or (nbr == parent and key == via):
                continue
            if nbr not in preorder:
                preorder[nbr] = low[nbr] = len(preorder)
                stack.append((nbr, node, key, iter(g.edges(nbr, keys=True))))
                advanced = True
                break
            low[node] = min(low[node], preorder[nbr])
        if advanced:
            continue
        stack.pop()
        if stack:
            parent = stack[-1][0]
            low[parent] = min(low[parent], low[node])
            if low[node] > preorder[parent]:
                found.add((parent, node, via))
    logging.debug("found %d bridges among %d edges", len(found), g.number_of_edges())
    return found


def _root_edge_key(m: RootedTrivalentMap) -> Tuple[int, int]:
    return tuple(sorted((m.root, m.e(m.root))))


def is_bridgeless(m: RootedTrivalentMap) -> bool:
    """True iff the only bridge of a closed map is its outgoing root edge."""
    if not m.is_closed:
        raise MalformedMapError("bridgelessness is only defined for closed maps")
    root_key = _root_edge_key(m)
    return all(key == root_key for _, _, key in bridges(underlying_graph(m)))


def map_to_dot(m: AnyMap, name: str = "map") -> str:
    owner = _vertex_of(m)
    root = getattr(m, "root", None)
    boundary = list(getattr(m, "boundary", ()))
    lines: List[str] = [f"graph {name} {{"]
    for cycle in m.v.cycles():
        label = " ".join(map(str, cycle))
        shape = "doublecircle" if root in cycle else "circle"
        if len(cycle) == 1 and cycle[0] == root:
            shape = "box"
        lines.append(f'  v{cycle[0]} [shape={shape}, label="{label}"];')
    for index, dart in enumerate(boundary, start=1):
        lines.append(f'  b{dart} [shape=plaintext, label="x{index}"];')
        lines.append(f"  v{owner[dart]} -- b{dart};")
    for cycle in m.e.cycles():
        if len(cycle) == 2:
            a, b = cycle
            lines.append(f'  v{owner[a]} -- v{owner[b]} [label="{a}-{b}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
