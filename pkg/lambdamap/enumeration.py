"""Exhaustive generation of alpha-classes of linear terms by size and free variables.

Terms are built directly in canonical form from the variable, application
and abstraction rules, with the context kept as an ordered list; the
exchange rule is accounted for by choosing which context positions go to
the function side of each application.
"""
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from .bijection import term_to_map
from .errors import LambdaMapError
from .graphs import is_bridgeless
from .maps import genus
from .terms import CApp, CLam, CNode, CVar, CanonicalTerm, LinearTerm, lambda_lift

FILTERS = ("all", "indecomposable", "planar", "planar-indecomposable", "bridgeless-map")


def is_planar(t: LinearTerm) -> bool:
    return genus(term_to_map(lambda_lift(t))) == 0


def has_bridgeless_map(t: LinearTerm) -> bool:
    return is_bridgeless(term_to_map(lambda_lift(t)))


_PREDICATES: Dict[str, Callable[[LinearTerm], bool]] = {
    "planar": is_planar,
    "planar-indecomposable": is_planar,
    "bridgeless-map": has_bridgeless_map,
}


def _shift(node: CNode) -> CNode:
    if isinstance(node, CVar):
        return CVar(node.index + 1)
    if isinstance(node, CApp):
        return CApp(_shift(node.fn), _shift(node.arg))
    return CLam(_shift(node.body))


def _relabel(node: CNode, mapping: Sequence[int]) -> CNode:
    """Send the child's context index j (< 0) to ``mapping[j + len(mapping)]``."""
    if isinstance(node, CVar):
        return CVar(mapping[node.index + len(mapping)]) if node.index < 0 else node
    if isinstance(node, CApp):
        return CApp(_relabel(node.fn, mapping), _relabel(node.arg, mapping))
    return CLam(_relabel(node.body, mapping))


def _splits(k: int, k1: int) -> Iterator[Tuple[List[int], List[int]]]:
    for chosen in combinations(range(k), k1):
        rest = [i - k for i in range(k) if i not in chosen]
        yield [i - k for i in chosen], rest


@lru_cache(maxsize=None)
def _generate(n: int, k: int, indecomposable: bool) -> Tuple[CNode, ...]:
    if n == 0:
        return (CVar(-1),) if k == 1 else ()
    out: List[CNode] = [CLam(_shift(body)) for body in _generate(n - 1, k + 1, indecomposable)]
    for n1 in range(n):
        n2 = n - 1 - n1
        for k1 in range(k + 1):
            k2 = k - k1
            if indecomposable and (k1 == 0 or k2 == 0):
                continue
            left = _generate(n1, k1, indecomposable)
            right = _generate(n2, k2, indecomposable)
            if not left or not right:
                continue
            for fn_map, arg_map in _splits(k, k1):
                fns = [_relabel(t, fn_map) for t in left]
                args = [_relabel(t, arg_map) for t in right]
                out.extend(CApp(f, a) for f in fns for a in args)
    return tuple(out)


@lru_cache(maxsize=None)
def _count(n: int, k: int, indecomposable: bool) -> int:
    if n == 0:
        return 1 if k == 1 else 0
    total = _count(n - 1, k + 1, indecomposable)
    for n1 in range(n):
        n2 = n - 1 - n1
        for k1 in range(k + 1):
            k2 = k - k1
            if indecomposable and (k1 == 0 or k2 == 0):
                continue
            total += comb(k, k1) * _count(n1, k1, indecomposable) * _count(n2, k2, indecomposable)
    return total


def _filter_chunk(filter_name: str, chunk: List[CanonicalTerm]) -> List[CanonicalTerm]:
    keep = _PREDICATES[filter_name]
    return [c for c in chunk if keep(c.to_linear())]


def _filter(filter_name: str, candidates: List[CanonicalTerm], workers: int) -> List[CanonicalTerm]:
    if workers <= 1 or len(candidates) < 2 * workers:
        return _filter_chunk(filter_name, candidates)
    size = -(-len(candidates) // workers)
    chunks = [candidates[i:i + size] for i in range(0, len(candidates), size)]
    kept: List[List[CanonicalTerm]] = [[] for _ in chunks]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        future_map = {
            executor.submit(_filter_chunk, filter_name, chunk): index
            for index, chunk in enumerate(chunks)
        }
        for future in as_completed(future_map):
            index = future_map[future]
            kept[index] = future.result()
            logging.debug("chunk %d kept %d of %d", index, len(kept[index]), len(chunks[index]))
    return [c for part in kept for c in part]


def _check_filter(filter_name: str) -> None:
    if filter_name not in FILTERS:
        raise LambdaMapError(f"unknown filter {filter_name!r}; expected one of {', '.join(FILTERS)}")


def enumerate_terms(n: int, k: int, filter_name: str = "all", workers: int = 1) -> Iterator[CanonicalTerm]:
    """Each alpha-class of size ``n`` with ``k`` free variables once, ordered by encoding."""
    _check_filter(filter_name)
    if n < 0 or k < 0:
        return iter(())
    indecomposable = filter_name in ("indecomposable", "planar-indecomposable")
    candidates = sorted(
        (CanonicalTerm(k, body) for body in _generate(n, k, indecomposable)),
        key=CanonicalTerm.encoding,
    )
    if filter_name in _PREDICATES:
        before = len(candidates)
        candidates = _filter(filter_name, candidates, workers)
        logging.info("filter %s kept %d of %d terms (n=%d, k=%d)", filter_name, len(candidates), before, n, k)
    return iter(candidates)


def count_terms(n: int, k: int, filter_name: str = "all", workers: int = 1) -> int:
    _check_filter(filter_name)
    if n < 0 or k < 0:
        return 0
    if filter_name in ("all", "indecomposable"):
        return _count(n, k, filter_name == "indecomposable")
    return sum(1 for _ in enumerate_terms(n, k, filter_name, workers))
