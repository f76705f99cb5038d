"""
Free pregroups over a finite poset of basic types.

A simple type is a basic type name decorated with an integer adjoint
order ``z``: ``z = -1`` is the left adjoint ``p^l``, ``z = 1`` the right
adjoint ``p^r``, ``z = -2`` is ``p^ll`` and so on.  A :class:`Term` is a
finite sequence of simple types; the empty term is the monoid unit.

>>> p, q = SimpleType("p"), SimpleType("q")
>>> adjoint(Term([p, q]), "left")
Term('q^l p^l')
>>> adjoint(Term([SimpleType("p", 1)]), "left")
Term('p')
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

NAME_RE = re.compile(r"^[a-z0-9_]+$")

LEFT, RIGHT = "left", "right"


class PregroupError(Exception):
    """Base class for errors raised by this package."""


class UndeclaredTypeError(PregroupError, KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return "undeclared basic type {!r}".format(self.name)


class PosetError(PregroupError, ValueError):
    """Raised when an order relation is not a partial order."""


def adjoint_suffix(z: int) -> str:
    """``-2 -> '^ll'``, ``1 -> '^r'``, ``0 -> ''``."""
    if z == 0:
        return ""
    return "^" + ("l" if z < 0 else "r") * abs(z)


@dataclass(frozen=True, order=True)
class SimpleType:
    """A basic type ``base`` with iterated adjoint order ``z``."""

    base: str
    z: int = 0

    def __post_init__(self):
        if not isinstance(self.base, str) or not NAME_RE.match(self.base):
            raise ValueError("invalid basic type name {!r}".format(self.base))

    @property
    def l(self) -> "SimpleType":
        return SimpleType(self.base, self.z - 1)

    @property
    def r(self) -> "SimpleType":
        return SimpleType(self.base, self.z + 1)

    def __str__(self):
        return self.base + adjoint_suffix(self.z)

    def __repr__(self):
        return "SimpleType({!r}, {})".format(self.base, self.z)


class Term:
    """
    An element of the free pregroup: an ordered sequence of simple types.

    Terms are immutable, hashable and concatenate with ``+``.
    """

    __slots__ = ("_factors",)

    def __init__(self, factors: Iterable[SimpleType] = ()):
        factors = tuple(factors)
        for f in factors:
            if not isinstance(f, SimpleType):
                raise TypeError("Term factors must be SimpleType, got {!r}".format(f))
        object.__setattr__(self, "_factors", factors)

    def __setattr__(self, key, value):
        raise AttributeError("Term is immutable")

    @property
    def factors(self) -> tuple:
        return self._factors

    def __iter__(self) -> Iterator[SimpleType]:
        return iter(self._factors)

    def __len__(self):
        return len(self._factors)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Term(self._factors[key])
        return self._factors[key]

    def __add__(self, other: "Term") -> "Term":
        if not isinstance(other, Term):
            return NotImplemented
        return Term(self._factors + other._factors)

    def __eq__(self, other):
        return isinstance(other, Term) and self._factors == other._factors

    def __lt__(self, other):
        return self._factors < other._factors

    def __hash__(self):
        return hash(("Term", self._factors))

    def __str__(self):
        return " ".join(map(str, self._factors)) if self._factors else "1"

    def __repr__(self):
        return "Term({!r})".format(str(self))

    @property
    def l(self) -> "Term":
        return adjoint(self, LEFT)

    @property
    def r(self) -> "Term":
        return adjoint(self, RIGHT)


def adjoint(t: Term, direction: str) -> Term:
    """
    Left or right adjoint of a term: factors reversed, each ``z`` moved
    by one, so that ``(p.q)^l = q^l.p^l`` and ``p^rl = p``.
    """
    if direction == LEFT:
        step = -1
    elif direction == RIGHT:
        step = 1
    else:
        raise ValueError("direction must be 'left' or 'right', got {!r}".format(direction))
    return Term(SimpleType(f.base, f.z + step) for f in reversed(t.factors))


class TypePoset:
    """
    A finite set of basic type names with a partial order.

    ``relation`` holds the declared pairs ``(a, b)`` meaning ``a <= b``;
    the reflexive-transitive closure is computed eagerly and must be
    antisymmetric.
    """

    def __init__(self, alphabet: Iterable[str], relation: Iterable[tuple] = ()):
        alphabet = tuple(dict.fromkeys(alphabet))
        for name in alphabet:
            if not isinstance(name, str) or not NAME_RE.match(name) or name == "1":
                raise ValueError("invalid basic type name {!r}".format(name))
        relation = tuple(dict.fromkeys((a, b) for a, b in relation))
        known = set(alphabet)
        for a, b in relation:
            for name in (a, b):
                if name not in known:
                    raise UndeclaredTypeError(name)
        self._alphabet = alphabet
        self._names = frozenset(alphabet)
        self._relation = relation
        self._up = _closure(alphabet, relation)
        for a in alphabet:
            for b in self._up[a]:
                if b != a and a in self._up[b]:
                    raise PosetError(
                        "order cycle between {!r} and {!r}".format(a, b))

    @property
    def alphabet(self) -> tuple:
        return self._alphabet

    @property
    def relation(self) -> tuple:
        return self._relation

    def __contains__(self, name):
        return name in self._names

    def check(self, name: str) -> str:
        if name not in self._names:
            raise UndeclaredTypeError(name)
        return name

    def upset(self, name: str) -> frozenset:
        """All ``b`` with ``name <= b``."""
        return self._up[self.check(name)]

    def leq(self, a: str, b: str) -> bool:
        self.check(b)
        return b in self.upset(a)

    def __eq__(self, other):
        return (isinstance(other, TypePoset)
                and self._names == other._names
                and self._up == other._up)

    def __hash__(self):
        return hash(self._names)

    def __repr__(self):
        return "TypePoset({} types, {} pairs)".format(
            len(self._alphabet), len(self._relation))


def _closure(alphabet, relation):
    succ = {a: set() for a in alphabet}
    for a, b in relation:
        succ[a].add(b)
    up = {}
    for a in alphabet:
        seen = {a}
        todo = [a]
        while todo:
            x = todo.pop()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        up[a] = frozenset(seen)
    return up


def leq_basic(a: str, b: str, poset: TypePoset) -> bool:
    return poset.leq(a, b)


def leq_simple(u: SimpleType, v: SimpleType, poset: TypePoset) -> bool:
    """
    Order on simple types.  Each adjoint reverses the order, so the
    comparison of bases flips with the parity of ``z``.
    """
    poset.check(u.base)
    poset.check(v.base)
    if u.z != v.z:
        return False
    if u.z % 2 == 0:
        return poset.leq(u.base, v.base)
    return poset.leq(v.base, u.base)


def contractible(u: SimpleType, v: SimpleType, poset: TypePoset) -> bool:
    """
    Generalized contraction ``u . v <= 1``: ``v`` is one adjoint step to
    the right of ``u`` and the bases are ordered according to the parity
    of ``u.z`` (``a <= b`` gives ``a . b^r <= 1`` and ``a^l . b <= 1`` with
    roles swapped).
    """
    poset.check(u.base)
    poset.check(v.base)
    if v.z != u.z + 1:
        return False
    if u.z % 2 == 0:
        return poset.leq(u.base, v.base)
    return poset.leq(v.base, u.base)


def axiom_chain_contracts(u: SimpleType, v: SimpleType, poset: TypePoset,
                          depth: int = 4) -> bool:
    """
    Decide ``u . v <= 1`` by searching rewrite chains built only from
    single-step order moves on one factor (``p <= q`` for a declared pair,
    applied as ``p^(z) <= q^(z)`` for even ``z`` and ``q^(z) <= p^(z)`` for
    odd ``z``) and the plain adjunction ``p^(z) . p^(z+1) <= 1``.

    Used as an independent oracle for :func:`contractible`.
    """
    return _axiom_chain_search((u, v), poset, depth)


def _axiom_chain_search(start: Sequence[SimpleType], poset: TypePoset,
                        depth: int) -> bool:
    covers = {}
    for a, b in poset.relation:
        covers.setdefault(a, set()).add(b)
    below = {}
    for a, b in poset.relation:
        below.setdefault(b, set()).add(a)

    def moves(state):
        for k, f in enumerate(state):
            targets = covers.get(f.base, ()) if f.z % 2 == 0 else below.get(f.base, ())
            for b in targets:
                yield state[:k] + (SimpleType(b, f.z),) + state[k + 1:]
        for k in range(len(state) - 1):
            a, b = state[k], state[k + 1]
            if a.base == b.base and b.z == a.z + 1:
                yield state[:k] + state[k + 2:]

    start = tuple(start)
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        state, d = frontier.popleft()
        if not state:
            return True
        if d == depth:
            continue
        for nxt in moves(state):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append((nxt, d + 1))
    return False
