"""Linear lambda terms with ordered contexts.

Concrete syntax: ``\\x. body`` for abstraction (the body extends as far right
as possible), juxtaposition for left-associative application, parentheses
for grouping. Contexts are ordered lists of distinct names.
"""
import itertools
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import (
    DuplicateVariableError,
    TermSyntaxError,
    UnboundVariableError,
    UnusedVariableError,
    VariableUsedTwiceError,
)

Context = Tuple[str, ...]


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Abs:
    name: str
    body: "Term"

    def __str__(self) -> str:
        return print_term(self)


Term = Union[Var, App, Abs]


def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Abs):
        return f"\\{t.name}. {print_term(t.body)}"
    fn = print_term(t.fn)
    if isinstance(t.fn, Abs):
        fn = f"({fn})"
    arg = print_term(t.arg)
    if not isinstance(t.arg, Var):
        arg = f"({arg})"
    return f"{fn} {arg}"


# ---------------------------
# Parsing
# ---------------------------

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_SYMBOLS = {"\\", "λ", ".", "(", ")"}


class _Token(NamedTuple):
    kind: str  # "name", a symbol, or "end"
    text: str
    position: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        match = _NAME.match(text, i)
        if match:
            tokens.append(_Token("name", match.group(), i))
            i = match.end()
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token("\\" if ch == "λ" else ch, ch, i))
            i += 1
            continue
        raise TermSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def expect(self, kind: str) -> _Token:
        token = self.peek()
        if token.kind != kind:
            found = "end of input" if token.kind == "end" else repr(token.text)
            wanted = "a variable name" if kind == "name" else repr(kind)
            raise TermSyntaxError(f"expected {wanted}, found {found}", token.position)
        self.pos += 1
        return token

    def term(self) -> Term:
        atoms: List[Term] = []
        while self.peek().kind in ("name", "\\", "("):
            atoms.append(self.atom())
        if not atoms:
            token = self.peek()
            found = "end of input" if token.kind == "end" else repr(token.text)
            raise TermSyntaxError(f"expected a term, found {found}", token.position)
        result = atoms[0]
        for atom in atoms[1:]:
            result = App(result, atom)
        return result

    def atom(self) -> Term:
        token = self.peek()
        if token.kind == "name":
            self.pos += 1
            return Var(token.text)
        if token.kind == "\\":
            self.pos += 1
            name = self.expect("name").text
            self.expect(".")
            return Abs(name, self.term())
        self.expect("(")
        inner = self.term()
        self.expect(")")
        return inner

    def parse(self) -> Term:
        result = self.term()
        self.expect("end")
        return result


def parse_context(context: Union[str, Sequence[str], None]) -> Context:
    if context is None:
        return ()
    if isinstance(context, str):
        names = [part.strip() for part in context.split(",")]
        names = [n for n in names if n]
    else:
        names = list(context)
    for name in names:
        if not _NAME.fullmatch(name):
            raise TermSyntaxError(f"invalid context variable {name!r}", 0)
    return tuple(names)


def parse_raw(text: str) -> Term:
    """Parse without any linearity check."""
    return _Parser(text).parse()


def parse_term(text: str, context: Union[str, Sequence[str], None] = ()) -> "LinearTerm":
    return LinearTerm(parse_context(context), parse_raw(text))


# ---------------------------
# Linearity
# ---------------------------

@dataclass(frozen=True)
class Derivation:
    """A node of the derivation of ``context |- term``.

    ``exchanged`` marks an application whose context is not the plain
    concatenation of its premises' contexts.
    """

    rule: str
    context: Context
    term: Term
    premises: Tuple["Derivation", ...] = ()
    exchanged: bool = False

    def walk(self) -> Iterator["Derivation"]:
        yield self
        for premise in self.premises:
            yield from premise.walk()


class _Resolved(NamedTuple):
    term: Term
    free: FrozenSet[int]
    children: Tuple["_Resolved", ...]
    binder: Optional[int]


def check_linear(context: Sequence[str], term: Term) -> Derivation:
    context = tuple(context)
    seen = set()
    for name in context:
        if name in seen:
            raise DuplicateVariableError(f"context variable {name!r} is listed twice")
        seen.add(name)

    names: Dict[int, str] = dict(enumerate(context))
    fresh = itertools.count(len(context))

    def resolve(node: Term, scope: Dict[str, int]) -> _Resolved:
        if isinstance(node, Var):
            uid = scope.get(node.name)
            if uid is None:
                raise UnboundVariableError(f"unbound variable {node.name!r}")
            return _Resolved(node, frozenset((uid,)), (), None)
        if isinstance(node, App):
            left = resolve(node.fn, scope)
            right = resolve(node.arg, scope)
            shared = left.free & right.free
            if shared:
                raise VariableUsedTwiceError(f"variable used twice: {names[min(shared)]!r}")
            return _Resolved(node, left.free | right.free, (left, right), None)
        uid = next(fresh)
        names[uid] = node.name
        body = resolve(node.body, {**scope, node.name: uid})
        if uid not in body.free:
            raise UnusedVariableError(f"bound variable {node.name!r} is unused")
        return _Resolved(node, body.free - {uid}, (body,), uid)

    root = resolve(term, {name: i for i, name in enumerate(context)})
    unused = [name for i, name in enumerate(context) if i not in root.free]
    if unused:
        raise UnusedVariableError(f"context variable unused: {', '.join(map(repr, unused))}")

    def derive(node: _Resolved, order: List[int]) -> Derivation:
        ctx = tuple(names[u] for u in order)
        if isinstance(node.term, Var):
            return Derivation("var", ctx, node.term)
        if isinstance(node.term, App):
            left, right = node.children
            left_order = [u for u in order if u in left.free]
            right_order = [u for u in order if u in right.free]
            premises = (derive(left, left_order), derive(right, right_order))
            return Derivation("app", ctx, node.term, premises, order != left_order + right_order)
        premise = derive(node.children[0], order + [node.binder])
        return Derivation("lam", ctx, node.term, (premise,))

    return derive(root, list(range(len(context))))


@dataclass(frozen=True)
class LinearTerm:
    """A pair (context, term) such that ``context |- term`` is derivable."""

    context: Context
    term: Term

    def __post_init__(self) -> None:
        object.__setattr__(self, "context", tuple(self.context))
        check_linear(self.context, self.term)

    def derivation(self) -> Derivation:
        return check_linear(self.context, self.term)

    @property
    def is_closed(self) -> bool:
        return not self.context

    def __str__(self) -> str:
        return print_term(self.term)


# ---------------------------
# Alpha-canonical forms
# ---------------------------

@dataclass(frozen=True)
class CVar:
    index: int


@dataclass(frozen=True)
class CApp:
    fn: "CNode"
    arg: "CNode"


@dataclass(frozen=True)
class CLam:
    body: "CNode"


CNode = Union[CVar, CApp, CLam]

_DISPLAY_NAMES = "xyzwuvstpqrmnoabcdefghijkl"


def display_name(i: int) -> str:
    return _DISPLAY_NAMES[i] if i < len(_DISPLAY_NAMES) else f"x{i}"


def _encode(node: CNode) -> str:
    if isinstance(node, CVar):
        return str(node.index)
    if isinstance(node, CLam):
        return "\\" + _encode(node.body)
    return f"({_encode(node.fn)} {_encode(node.arg)})"


@dataclass(frozen=True)
class CanonicalTerm:
    """Context variable at position i of k is index i - k; a binder at depth d is d."""

    arity: int
    body: CNode

    def encoding(self) -> str:
        return _encode(self.body)

    def to_linear(self) -> LinearTerm:
        k = self.arity

        def build(node: CNode, depth: int) -> Term:
            if isinstance(node, CVar):
                return Var(display_name(node.index + k))
            if isinstance(node, CApp):
                return App(build(node.fn, depth), build(node.arg, depth))
            return Abs(display_name(k + depth), build(node.body, depth + 1))

        context = tuple(display_name(i) for i in range(k))
        return LinearTerm(context, build(self.body, 0))

    def __str__(self) -> str:
        return str(self.to_linear())


def alpha_canonical(t: LinearTerm) -> CanonicalTerm:
    k = len(t.context)

    def convert(node: Term, env: Dict[str, int], depth: int) -> CNode:
        if isinstance(node, Var):
            return CVar(env[node.name])
        if isinstance(node, App):
            return CApp(convert(node.fn, env, depth), convert(node.arg, env, depth))
        return CLam(convert(node.body, {**env, node.name: depth}, depth + 1))

    env = {name: i - k for i, name in enumerate(t.context)}
    return CanonicalTerm(k, convert(t.term, env, 0))


def alpha_equivalent(t1: LinearTerm, t2: LinearTerm) -> bool:
    return alpha_canonical(t1) == alpha_canonical(t2)


# ---------------------------
# Structure
# ---------------------------

class TermSize(NamedTuple):
    applications: int
    abstractions: int

    @property
    def total(self) -> int:
        return self.applications + self.abstractions


def term_size(t: Union[LinearTerm, Term]) -> TermSize:
    node = t.term if isinstance(t, LinearTerm) else t
    apps = abss = 0
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, App):
            apps += 1
            stack.extend((n.fn, n.arg))
        elif isinstance(n, Abs):
            abss += 1
            stack.append(n.body)
    return TermSize(apps, abss)


def subterms(t: LinearTerm) -> List[LinearTerm]:
    """Every node of the derivation, the term itself first."""
    return [LinearTerm(d.context, d.term) for d in t.derivation().walk()]


def is_decomposable(t: LinearTerm) -> bool:
    return any(not d.context for d in itertools.islice(t.derivation().walk(), 1, None))


def is_exchange_free(t: LinearTerm) -> bool:
    return not any(d.exchanged for d in t.derivation().walk())


def lambda_lift(t: LinearTerm) -> LinearTerm:
    body = t.term
    for name in reversed(t.context):
        body = Abs(name, body)
    return LinearTerm((), body)


def wire_paths(t: Union[LinearTerm, Term]) -> Iterator[Tuple[str, Term]]:
    """Pre-order (path, subterm) pairs; paths are ``root`` then ``/fn``, ``/arg``, ``/body``."""
    node = t.term if isinstance(t, LinearTerm) else t
    stack = [("root", node)]
    while stack:
        path, n = stack.pop()
        yield path, n
        if isinstance(n, App):
            stack.append((path + "/arg", n.arg))
            stack.append((path + "/fn", n.fn))
        elif isinstance(n, Abs):
            stack.append((path + "/body", n.body))
