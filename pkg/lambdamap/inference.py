"""Principal types of linear terms in the purely implicative fragment.

Inference walks the term once, creating a type variable per binder and per
application result, and unifies destructively (``prune`` collapses chains
of instantiated variables). The resolved types are then renamed alpha,
beta, gamma, ... in order of first appearance.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .errors import UnificationError
from .terms import App, LinearTerm, Term, Var, wire_paths


@dataclass(frozen=True)
class TypeVar:
    name: str

    def __str__(self) -> str:
        return render_type(self)


@dataclass(frozen=True)
class Imp:
    domain: "LinType"
    codomain: "LinType"

    def __str__(self) -> str:
        return render_type(self)


LinType = Union[TypeVar, Imp]


def render_type(t: LinType) -> str:
    """``-o`` is right associative, so only an implication on the left is parenthesised."""
    if isinstance(t, TypeVar):
        return t.name
    domain = render_type(t.domain)
    if isinstance(t.domain, Imp):
        domain = f"({domain})"
    return f"{domain} -o {render_type(t.codomain)}"


def type_variables(t: LinType) -> Iterator[str]:
    """Variable names in left-to-right reading order, with repeats."""
    if isinstance(t, TypeVar):
        yield t.name
    else:
        yield from type_variables(t.domain)
        yield from type_variables(t.codomain)


# ---------------------------
# Unification
# ---------------------------

class _Cell:
    """A type variable that may be instantiated during unification."""

    __slots__ = ("id", "instance")

    def __init__(self, ident: int) -> None:
        self.id = ident
        self.instance: Optional["_Type"] = None


class _Arrow:
    __slots__ = ("domain", "codomain")

    def __init__(self, domain: "_Type", codomain: "_Type") -> None:
        self.domain = domain
        self.codomain = codomain


_Type = Union[_Cell, _Arrow]


def _prune(t: _Type) -> _Type:
    if isinstance(t, _Cell) and t.instance is not None:
        t.instance = _prune(t.instance)
        return t.instance
    return t


def _occurs(cell: _Cell, t: _Type) -> bool:
    t = _prune(t)
    if t is cell:
        return True
    if isinstance(t, _Arrow):
        return _occurs(cell, t.domain) or _occurs(cell, t.codomain)
    return False


def _unify(t1: _Type, t2: _Type) -> None:
    a = _prune(t1)
    b = _prune(t2)
    if isinstance(a, _Cell):
        if a is not b:
            if _occurs(a, b):
                raise UnificationError("recursive unification")
            a.instance = b
    elif isinstance(b, _Cell):
        _unify(b, a)
    else:
        _unify(a.domain, b.domain)
        _unify(a.codomain, b.codomain)


# ---------------------------
# Inference
# ---------------------------

_GREEK = "αβγδεζηθικλμνξοπρστυφχψω"


def type_variable_name(i: int) -> str:
    base = _GREEK[i % len(_GREEK)]
    return base if i < len(_GREEK) else f"{base}{i // len(_GREEK)}"


@dataclass(frozen=True)
class PrincipalType:
    """Most general typing ``context |- term : result``.

    ``wires`` holds the type of every subterm occurrence keyed by wire path.
    """

    context: Tuple[Tuple[str, LinType], ...]
    result: LinType
    wires: Tuple[Tuple[str, LinType], ...]

    def wire_types(self) -> Dict[str, LinType]:
        return dict(self.wires)

    def variables(self) -> List[str]:
        seen: Dict[str, None] = {}
        for _, t in self.context:
            seen.update(dict.fromkeys(type_variables(t)))
        seen.update(dict.fromkeys(type_variables(self.result)))
        return list(seen)

    def __str__(self) -> str:
        if not self.context:
            return render_type(self.result)
        judgement = ", ".join(f"{name} : {render_type(t)}" for name, t in self.context)
        return f"{judgement} |- {render_type(self.result)}"


def infer_principal_type(t: LinearTerm) -> PrincipalType:
    ids = itertools.count()
    wires: List[Tuple[str, _Type]] = []

    def fresh() -> _Cell:
        return _Cell(next(ids))

    def analyse(node: Term, env: Dict[str, _Type], path: str) -> _Type:
        if isinstance(node, Var):
            result = env[node.name]
        elif isinstance(node, App):
            fn_type = analyse(node.fn, env, path + "/fn")
            arg_type = analyse(node.arg, env, path + "/arg")
            result = fresh()
            _unify(_Arrow(arg_type, result), fn_type)
        else:
            param = fresh()
            body = analyse(node.body, {**env, node.name: param}, path + "/body")
            result = _Arrow(param, body)
        wires.append((path, result))
        return result

    context_cells = {name: fresh() for name in t.context}
    result = analyse(t.term, dict(context_cells), "root")

    names: Dict[int, str] = {}

    def resolve(ty: _Type) -> LinType:
        ty = _prune(ty)
        if isinstance(ty, _Cell):
            if ty.id not in names:
                names[ty.id] = type_variable_name(len(names))
            return TypeVar(names[ty.id])
        return Imp(resolve(ty.domain), resolve(ty.codomain))

    context = tuple((name, resolve(context_cells[name])) for name in t.context)
    resolved_result = resolve(result)
    order = {path: i for i, (path, _) in enumerate(wire_paths(t.term))}
    resolved_wires = sorted(((path, resolve(ty)) for path, ty in wires), key=lambda w: order[w[0]])
    logging.debug("principal type of %s: %s", t, render_type(resolved_result))
    return PrincipalType(context, resolved_result, tuple(resolved_wires))
