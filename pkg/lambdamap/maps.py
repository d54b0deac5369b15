"""Combinatorial maps as pairs of permutations on a set of darts.

A map is a transitive action of <v, e> on darts: ``v`` cycles the darts
counterclockwise around each vertex and ``e`` glues darts into edges. Rooted
trivalent maps with boundary additionally allow one v-fixed dart (the root)
and any number of e-fixed darts (the ordered boundary of free edges).
"""
import json
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import MalformedMapError, SmoothingError


class Permutation:
    """Immutable bijection of a finite set of darts onto itself."""

    __slots__ = ("_images",)

    def __init__(self, images: Mapping[int, int]) -> None:
        images = dict(images)
        if set(images.values()) != set(images):
            raise MalformedMapError("permutation is not a bijection of its dart set")
        self._images = images

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images: Dict[int, int] = {}
        for cycle in cycles:
            if not cycle:
                raise MalformedMapError("empty cycle")
            for i, dart in enumerate(cycle):
                if dart in images:
                    raise MalformedMapError(f"dart {dart} appears in two cycles")
                images[dart] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @classmethod
    def identity(cls, darts: Iterable[int]) -> "Permutation":
        return cls({d: d for d in darts})

    def __call__(self, dart: int) -> int:
        return self._images[dart]

    @property
    def domain(self) -> frozenset:
        return frozenset(self._images)

    def as_dict(self) -> Dict[int, int]:
        return dict(self._images)

    def inverse(self) -> "Permutation":
        return Permutation({b: a for a, b in self._images.items()})

    def compose(self, other: "Permutation") -> "Permutation":
        """Return ``self`` after ``other``: x -> self(other(x))."""
        if other.domain != self.domain:
            raise MalformedMapError("cannot compose permutations on different dart sets")
        return Permutation({d: self._images[other._images[d]] for d in other._images})

    def cycles(self) -> List[Tuple[int, ...]]:
        """Cycles (fixed points included), each starting at its least dart, sorted."""
        seen = set()
        result = []
        for start in sorted(self._images):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            d = self._images[start]
            while d != start:
                cycle.append(d)
                seen.add(d)
                d = self._images[d]
            result.append(tuple(cycle))
        return result

    def cycle_count(self) -> int:
        return len(self.cycles())

    def fixed_points(self) -> List[int]:
        return sorted(d for d, image in self._images.items() if d == image)

    def is_identity_power(self, k: int) -> bool:
        """True iff applying the permutation k times is the identity."""
        for d in self._images:
            x = d
            for _ in range(k):
                x = self._images[x]
            if x != d:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __hash__(self) -> int:
        return hash(frozenset(self._images.items()))

    def __repr__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"


def _orbit(start: int, generators: Sequence[Permutation]) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        d = queue.popleft()
        for g in generators:
            nxt = g(d)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _sorted_darts(darts: Iterable[int]) -> Tuple[int, ...]:
    darts = tuple(darts)
    if any(not isinstance(d, int) or d < 0 for d in darts):
        raise MalformedMapError("dart ids must be natural numbers")
    return tuple(sorted(darts))


def _check_common(darts: Tuple[int, ...], v: Permutation, e: Permutation) -> None:
    if not darts:
        raise MalformedMapError("a map needs at least one dart")
    if len(set(darts)) != len(darts):
        raise MalformedMapError("dart ids must be distinct")
    if v.domain != frozenset(darts) or e.domain != frozenset(darts):
        raise MalformedMapError("v and e must both act on exactly the map's darts")
    if not e.is_identity_power(2):
        raise MalformedMapError("e must be an involution")
    if len(_orbit(darts[0], (v, e))) != len(darts):
        raise MalformedMapError("<v, e> does not act transitively on the darts")


@dataclass(frozen=True)
class ClassicalMap:
    """A map in the classical sense: e is a fixed-point-free involution.

    ``root`` is optional; smoothing a rooted trivalent map records the
    position of the deleted vertex there.
    """

    darts: Tuple[int, ...]
    v: Permutation
    e: Permutation
    root: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "darts", _sorted_darts(self.darts))
        _check_common(self.darts, self.v, self.e)
        if self.e.fixed_points():
            raise MalformedMapError("e must not have fixed points in a classical map")
        if self.root is not None and self.root not in self.v.domain:
            raise MalformedMapError(f"root {self.root} is not a dart of the map")

    @property
    def is_trivalent(self) -> bool:
        return not self.v.fixed_points() and self.v.is_identity_power(3)

    @property
    def vertices(self) -> List[Tuple[int, ...]]:
        return self.v.cycles()

    @property
    def edges(self) -> List[Tuple[int, ...]]:
        return self.e.cycles()


@dataclass(frozen=True)
class RootedTrivalentMap:
    darts: Tuple[int, ...]
    v: Permutation
    e: Permutation
    root: int
    boundary: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "darts", _sorted_darts(self.darts))
        object.__setattr__(self, "boundary", tuple(self.boundary))
        _check_common(self.darts, self.v, self.e)
        if not self.v.is_identity_power(3):
            raise MalformedMapError("v must have order dividing 3")
        if self.v.fixed_points() != [self.root]:
            raise MalformedMapError(
                f"fixed points of v must be exactly the root {self.root}, got {self.v.fixed_points()}"
            )
        if len(set(self.boundary)) != len(self.boundary):
            raise MalformedMapError("boundary darts must be pairwise distinct")
        if self.e.fixed_points() != sorted(self.boundary):
            raise MalformedMapError("fixed points of e must be exactly the boundary darts")

    @classmethod
    def from_dicts(
        cls,
        v: Mapping[int, int],
        e: Mapping[int, int],
        root: int,
        boundary: Sequence[int] = (),
    ) -> "RootedTrivalentMap":
        return cls(tuple(v), Permutation(v), Permutation(e), root, tuple(boundary))

    @property
    def trivalent_vertex_count(self) -> int:
        return (len(self.darts) - 1) // 3

    @property
    def degree(self) -> int:
        return len(self.boundary)

    @property
    def is_closed(self) -> bool:
        return not self.boundary

    @property
    def is_trivial(self) -> bool:
        return len(self.darts) == 1


AnyMap = Union[ClassicalMap, RootedTrivalentMap]


def face_permutation(m: AnyMap) -> Permutation:
    """f = v^-1 e, whose cycles are the faces of the embedding."""
    return m.v.inverse().compose(m.e)


def _completed(m: AnyMap) -> Tuple[Permutation, Permutation]:
    if isinstance(m, ClassicalMap) or not m.boundary:
        return m.v, m.e
    # each free edge gets a fresh univalent partner
    v = m.v.as_dict()
    e = m.e.as_dict()
    fresh = max(m.darts) + 1
    for offset, dart in enumerate(m.boundary):
        partner = fresh + offset
        v[partner] = partner
        e[dart] = partner
        e[partner] = dart
    return Permutation(v), Permutation(e)


def cycle_counts(m: AnyMap) -> Tuple[int, int, int]:
    """(c(v), c(e), c(f)) with fixed points counted as 1-cycles, after boundary completion."""
    v, e = _completed(m)
    f = v.inverse().compose(e)
    return v.cycle_count(), e.cycle_count(), f.cycle_count()


def genus(m: AnyMap) -> int:
    cv, ce, cf = cycle_counts(m)
    twice = 2 - cv + ce - cf
    if twice < 0 or twice % 2:
        raise MalformedMapError(f"Euler characteristic {cv - ce + cf} does not give a genus")
    return twice // 2


def _canonical_labels(root: int, v: Permutation, e: Permutation) -> Dict[int, int]:
    labels = {root: 0}
    queue = deque([root])
    while queue:
        d = queue.popleft()
        for nxt in (v(d), e(d)):
            if nxt not in labels:
                labels[nxt] = len(labels)
                queue.append(nxt)
    return labels


def canonical_form(m: RootedTrivalentMap) -> RootedTrivalentMap:
    """Relabel darts 0..n-1 in breadth-first order from the root (v before e)."""
    labels = _canonical_labels(m.root, m.v, m.e)
    v = {labels[d]: labels[m.v(d)] for d in m.darts}
    e = {labels[d]: labels[m.e(d)] for d in m.darts}
    return RootedTrivalentMap.from_dicts(v, e, 0, [labels[d] for d in m.boundary])


def canonical_key(m: RootedTrivalentMap) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    labels = _canonical_labels(m.root, m.v, m.e)
    order = sorted(m.darts, key=labels.__getitem__)
    return (
        tuple(labels[m.v(d)] for d in order),
        tuple(labels[m.e(d)] for d in order),
        tuple(labels[d] for d in m.boundary),
    )


def rooted_isomorphic(m1: RootedTrivalentMap, m2: RootedTrivalentMap) -> bool:
    # rooted maps are rigid, so one traversal from the root decides isomorphism
    if len(m1.darts) != len(m2.darts) or m1.degree != m2.degree:
        return False
    return canonical_key(m1) == canonical_key(m2)


def smooth_root(m: RootedTrivalentMap) -> ClassicalMap:
    """Delete the root dart and its trivalent vertex, splicing the two freed edges."""
    if not m.is_closed:
        raise SmoothingError("only closed maps can be smoothed")
    if m.trivalent_vertex_count < 2:
        raise SmoothingError("smoothing a map with fewer than two trivalent vertices leaves no rooted map")
    x = m.e(m.root)
    p = m.v(x)
    q = m.v(p)
    a, b = m.e(p), m.e(q)
    if a == q:
        raise SmoothingError("the root vertex carries a loop; smoothing leaves an empty circle")
    removed = {m.root, x, p, q}
    darts = [d for d in m.darts if d not in removed]
    v = {d: m.v(d) for d in darts}
    e = {d: m.e(d) for d in darts}
    e[a], e[b] = b, a
    logging.debug("smoothed root %d: spliced darts %d and %d", m.root, a, b)
    return ClassicalMap(tuple(darts), Permutation(v), Permutation(e), root=a)


def map_to_json(m: AnyMap) -> str:
    doc: Dict[str, object] = {
        "darts": list(m.darts),
        "v": [list(c) for c in m.v.cycles()],
        "e": [list(c) for c in m.e.cycles()],
    }
    if isinstance(m, RootedTrivalentMap):
        doc["root"] = m.root
        doc["boundary"] = list(m.boundary)
    elif m.root is not None:
        doc["root"] = m.root
    return json.dumps(doc)


def map_from_json(text: str) -> AnyMap:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise MalformedMapError("map JSON must be an object")
    missing = [key for key in ("darts", "v", "e") if key not in doc]
    if missing:
        raise MalformedMapError(f"map JSON is missing keys: {', '.join(missing)}")
    darts = tuple(doc["darts"])
    v = Permutation.from_cycles(doc["v"])
    e = Permutation.from_cycles(doc["e"])
    if "boundary" in doc:
        if "root" not in doc:
            raise MalformedMapError("a map with a boundary needs a root")
        return RootedTrivalentMap(darts, v, e, doc["root"], tuple(doc["boundary"]))
    return ClassicalMap(darts, v, e, root=doc.get("root"))
