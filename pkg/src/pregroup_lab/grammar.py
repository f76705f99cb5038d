"""
Grammar files, type expressions and the bundled English fragment.

Type expressions are whitespace separated factors with adjoint suffixes
(``^l``, ``^r``, ``^ll``, ...) and parenthesized groups, e.g.
``(pi3^r s2)^l``; ``1`` is the empty term.  Adjoints of groups are
expanded on parsing, so stored terms are always flat.

Grammar files are line oriented, ``#`` starts a comment::

    basic pi3 pi s1
    order pi3 <= pi
    target declarative : s1
    word she : pi3
    word sleeps : pi3^r s1 | pi^r s1
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import (LEFT, NAME_RE, RIGHT, PregroupError, SimpleType, Term,
                   TypePoset, UndeclaredTypeError, adjoint)


class TypeSyntaxError(PregroupError, ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(message)
        self.message = message
        self.text = text
        self.pos = pos

    def __str__(self):
        return "{} at position {} in {!r}".format(self.message, self.pos, self.text)


class GrammarError(PregroupError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.line = line

    def __str__(self):
        if self.line is None:
            return self.message
        return "line {}: {}".format(self.line, self.message)


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[a-z0-9_]+)|(?P<adj>\^[lr]+)|(?P<punct>[()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise TypeSyntaxError("unexpected character {!r}".format(text[pos]), text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_type_expr(text: str, alphabet=None) -> Term:
    """
    Parse a type expression into a flat :class:`Term`.

    ``alphabet`` (any container of names, e.g. a :class:`TypePoset`) turns
    on checking that every basic type is declared.

    >>> parse_type_expr("(pi3^r s2)^l")
    Term('s2^l pi3')
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def suffix_steps():
        steps = []
        while peek()[0] == "adj":
            steps.extend(LEFT if c == "l" else RIGHT for c in take()[1][1:])
        return steps

    def sequence(closing: bool) -> Term:
        items = Term()
        count = 0
        while True:
            kind, value, at = peek()
            if kind == "end" or (kind == "punct" and value == ")"):
                break
            items = items + item()
            count += 1
        if count == 0:
            kind, value, at = peek()
            raise TypeSyntaxError("empty type expression", text, at)
        return items

    def item() -> Term:
        kind, value, at = take()
        if kind == "name":
            steps = suffix_steps()
            if value == "1":
                return Term()
            if alphabet is not None and value not in alphabet:
                err = UndeclaredTypeError(value)
                err.pos = at
                raise err
            z = sum(-1 if s == LEFT else 1 for s in steps)
            return Term([SimpleType(value, z)])
        if kind == "punct" and value == "(":
            inner = sequence(closing=True)
            kind2, value2, at2 = take()
            if kind2 != "punct" or value2 != ")":
                raise TypeSyntaxError("expected ')'", text, at2)
            for step in suffix_steps():
                inner = adjoint(inner, step)
            return inner
        if kind == "adj":
            raise TypeSyntaxError("adjoint suffix without a type", text, at)
        if kind == "end":
            raise TypeSyntaxError("unexpected end of expression", text, at)
        raise TypeSyntaxError("unexpected {!r}".format(value), text, at)

    result = sequence(closing=False)
    kind, value, at = peek()
    if kind != "end":
        raise TypeSyntaxError("unbalanced ')'", text, at)
    return result


class Lexicon(Mapping):
    """Immutable mapping from word to an ordered tuple of distinct terms."""

    def __init__(self, entries: Iterable[Tuple[str, Sequence[Term]]] = ()):
        data: Dict[str, Tuple[Term, ...]] = {}
        for word, terms in entries:
            merged = list(data.get(word, ()))
            for t in terms:
                if t not in merged:
                    merged.append(t)
            data[word] = tuple(merged)
        for word, terms in data.items():
            if not terms:
                raise ValueError("word {!r} has no types".format(word))
        self._data = data

    def __getitem__(self, word):
        return self._data[word]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __eq__(self, other):
        return isinstance(other, Lexicon) and self._data == other._data

    def __hash__(self):
        return hash(tuple(self._data.items()))

    def lookup(self, token: str) -> Tuple[Term, ...]:
        """Exact match first, then the lowercased token."""
        if token in self._data:
            return self._data[token]
        return self._data[token.lower()]

    def __repr__(self):
        return "Lexicon({} words)".format(len(self._data))


@dataclass(frozen=True)
class GrammarSpec:
    poset: TypePoset
    lexicon: Lexicon
    targets: Dict[str, Tuple[SimpleType, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for word, terms in self.lexicon.items():
            for t in terms:
                for f in t:
                    self.poset.check(f.base)
        for group, members in self.targets.items():
            for t in members:
                self.poset.check(t.base)
                if t.z != 0:
                    raise GrammarError("target {} in group {!r} is not a basic type"
                                       .format(t, group))

    def __hash__(self):
        return hash((self.poset, self.lexicon, tuple(self.targets)))

    def target_group(self, name: str) -> Tuple[SimpleType, ...]:
        try:
            return self.targets[name]
        except KeyError:
            raise GrammarError("unknown target group {!r}".format(name)) from None


def load_grammar(text: str) -> GrammarSpec:
    alphabet: List[str] = []
    relation: List[Tuple[str, str]] = []
    up: Dict[str, set] = {}
    targets: Dict[str, Tuple[SimpleType, ...]] = {}
    entries: List[Tuple[str, List[Term]]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "basic":
            names = rest.split()
            if not names:
                raise GrammarError("'basic' needs a type name", lineno)
            for name in names:
                if not NAME_RE.match(name) or name == "1":
                    raise GrammarError("invalid basic type name {!r}".format(name), lineno)
                if name in up:
                    raise GrammarError("duplicate basic type {!r}".format(name), lineno)
                alphabet.append(name)
                up[name] = {name}
        elif keyword == "order":
            parts = rest.split()
            if len(parts) != 3 or parts[1] != "<=":
                raise GrammarError("expected 'order <name> <= <name>'", lineno)
            a, b = parts[0], parts[2]
            for name in (a, b):
                if name not in up:
                    raise GrammarError("undeclared basic type {!r}".format(name), lineno)
            if a != b and a in up[b]:
                raise GrammarError("order cycle between {!r} and {!r}".format(a, b), lineno)
            relation.append((a, b))
            gained = up[b]
            for x in alphabet:
                if a in up[x]:
                    up[x] = up[x] | gained
        elif keyword == "target":
            group, sep, names = rest.partition(":")
            group = group.strip()
            if not sep or not group or not names.split():
                raise GrammarError("expected 'target <group> : <name> ...'", lineno)
            if group in targets:
                raise GrammarError("duplicate target group {!r}".format(group), lineno)
            members = []
            for name in names.split():
                if name not in up:
                    raise GrammarError("undeclared basic type {!r}".format(name), lineno)
                members.append(SimpleType(name))
            targets[group] = tuple(members)
        elif keyword == "word":
            word, sep, exprs = rest.partition(":")
            word = word.strip()
            if not sep or not word or len(word.split()) != 1:
                raise GrammarError("expected 'word <token> : <type-expr> [| ...]'", lineno)
            terms = []
            for expr in exprs.split("|"):
                try:
                    terms.append(parse_type_expr(expr.strip(), alphabet=up))
                except UndeclaredTypeError as e:
                    raise GrammarError("undeclared basic type {!r}".format(e.name), lineno) from None
                except TypeSyntaxError as e:
                    raise GrammarError(str(e), lineno) from None
            entries.append((word, terms))
        else:
            raise GrammarError("unknown directive {!r}".format(keyword), lineno)

    return GrammarSpec(TypePoset(alphabet, relation), Lexicon(entries), targets)


def load_grammar_file(path) -> GrammarSpec:
    with open(path, encoding="utf-8") as fh:
        return load_grammar(fh.read())


def dump_grammar(spec: GrammarSpec) -> str:
    lines = ["basic " + name for name in spec.poset.alphabet]
    lines += ["order {} <= {}".format(a, b) for a, b in spec.poset.relation]
    for group, members in spec.targets.items():
        lines.append("target {} : {}".format(group, " ".join(t.base for t in members)))
    for word, terms in spec.lexicon.items():
        lines.append("word {} : {}".format(word, " | ".join(map(str, terms))))
    return "\n".join(lines) + "\n"


def bundled_path(name: str):
    return resources.files("pregroup_lab").joinpath("data", name)


@lru_cache(maxsize=None)
def load_bundled(name: str) -> GrammarSpec:
    return load_grammar(bundled_path(name).read_text(encoding="utf-8"))


def builtin_english() -> GrammarSpec:
    """The English fragment used by the syntax examples."""
    return load_bundled("english_fragment.grammar")


def builtin_lumberjack() -> GrammarSpec:
    """The small n/s grammar used for the lumberjack semantics examples."""
    return load_bundled("lumberjack.grammar")


QUESTION, DECLARATIVE = "question", "declarative"


def tokenize(text: str) -> Tuple[List[str], Optional[str]]:
    """
    Split a sentence on whitespace and strip a terminal ``.`` or ``?``.

    Returns the tokens and the target group selected by the punctuation
    (``question`` for ``?``, ``declarative`` for ``.`` or none).

    >>> tokenize("May she sleep?")
    (['May', 'she', 'sleep'], 'question')
    """
    tokens = text.split()
    group = DECLARATIVE
    if tokens:
        last = tokens[-1]
        if last in (".", "?"):
            tokens.pop()
        elif last[-1] in ".?":
            tokens[-1] = last[:-1]
        if last[-1] == "?":
            group = QUESTION
    return tokens, group
