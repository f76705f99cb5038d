"""
Reduction search in the free pregroup.

A derivation of ``t1 . ... . tn <= a`` is a set of non-crossing contraction
links covering every position except one survivor, which must be a
basic (``z = 0``) type below the target.  Only contractions are searched:
for a simple target no expansion is ever needed.

Positions in :class:`Derivation` are 1-based, as in the rendered output.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .core import PregroupError, SimpleType, Term, TypePoset, contractible, leq_simple
from .grammar import GrammarSpec

Link = Tuple[int, int]


class LimitExceeded(PregroupError, RuntimeError):
    """The search bounds were hit; distinct from 'no derivation'."""


class UnknownWordError(PregroupError, KeyError):
    def __init__(self, word: str):
        super().__init__(word)
        self.word = word

    def __str__(self):
        return "unknown word {!r}".format(self.word)


@dataclass(frozen=True)
class Limits:
    max_choices: int = 64
    max_derivations: int = 1000
    max_states: int = 200_000


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class Derivation:
    term: Term
    links: Tuple[Link, ...]
    survivor: int
    target: SimpleType

    @property
    def key(self):
        return (self.links, self.survivor)

    def check(self, poset: TypePoset) -> None:
        """Raise ``AssertionError`` unless every derivation invariant holds."""
        n = len(self.term)
        assert 1 <= self.survivor <= n, "survivor out of range"
        assert list(self.links) == sorted(self.links), "links not sorted"
        used = [self.survivor]
        for i, j in self.links:
            assert 1 <= i < j <= n, "bad link {}".format((i, j))
            used += [i, j]
        assert sorted(used) == list(range(1, n + 1)), "positions not covered exactly once"
        for i, j in self.links:
            assert contractible(self.term[i - 1], self.term[j - 1], poset), \
                "link {} does not contract".format((i, j))
            for k, l in self.links:
                assert not (i < k < j < l), "links {} and {} cross".format((i, j), (k, l))
            assert not (i < self.survivor < j), "survivor enclosed by {}".format((i, j))
        u = self.term[self.survivor - 1]
        assert u.z == 0 and leq_simple(u, self.target, poset), "survivor not below target"

    def replay(self, poset: TypePoset) -> SimpleType:
        """
        Apply the links innermost-first as adjacent contractions and return
        the single remaining factor.
        """
        alive = list(range(1, len(self.term) + 1))
        for i, j in sorted(self.links, key=lambda l: l[1] - l[0]):
            a, b = alive.index(i), alive.index(j)
            if b != a + 1:
                raise AssertionError("link {} not adjacent when replayed".format((i, j)))
            if not contractible(self.term[i - 1], self.term[j - 1], poset):
                raise AssertionError("link {} does not contract".format((i, j)))
            del alive[a:b + 1]
        if len(alive) != 1:
            raise AssertionError("replay left {} factors".format(len(alive)))
        return self.term[alive[0] - 1]


def reduce(term: Term, target: SimpleType, poset: TypePoset,
           limits: Limits = DEFAULT_LIMITS) -> List[Derivation]:
    """All derivations of ``term <= target`` ordered by (links, survivor)."""
    if target.z != 0:
        raise ValueError("target must be a basic type, got {}".format(target))
    poset.check(target.base)
    n = len(term)
    if n == 0:
        raise ValueError("cannot reduce the empty term")
    t = term.factors
    link_ok = [[j > i and contractible(t[i], t[j], poset) for j in range(n)]
               for i in range(n)]

    # number of complete matchings of t[i:j] (half-open), for the limit check
    @lru_cache(maxsize=None)
    def count(i, j):
        if i >= j:
            return 1
        if (j - i) % 2:
            return 0
        total = 0
        for k in range(i + 1, j, 2):
            if link_ok[i][k]:
                total += count(i + 1, k) * count(k + 1, j)
        return total

    survivors = [p for p in range(n)
                 if t[p].z == 0 and leq_simple(t[p], target, poset)
                 and p % 2 == 0 and (n - p - 1) % 2 == 0]
    total = sum(count(0, p) * count(p + 1, n) for p in survivors)
    if total > limits.max_derivations:
        raise LimitExceeded("{} derivations exceed the limit of {}".format(
            total, limits.max_derivations))

    @lru_cache(maxsize=None)
    def matchings(i, j):
        if i >= j:
            return ((),)
        out = []
        for k in range(i + 1, j, 2):
            if not link_ok[i][k]:
                continue
            for inner in matchings(i + 1, k):
                for rest in matchings(k + 1, j):
                    out.append(((i + 1, k + 1),) + inner + rest)
        return tuple(out)

    found = []
    for p in survivors:
        for left in matchings(0, p):
            for right in matchings(p + 1, n):
                links = tuple(sorted(left + right))
                found.append(Derivation(term, links, p + 1, target))
    found.sort(key=lambda d: d.key)
    return found


def oracle_reduce(term: Term, target: SimpleType, poset: TypePoset,
                  limits: Limits = DEFAULT_LIMITS) -> List[Derivation]:
    """
    Breadth-first search over sequences of adjacent contractions on the
    shrinking term, remembering original positions.  Slow but obviously
    right; used to cross-check :func:`reduce`.
    """
    if target.z != 0:
        raise ValueError("target must be a basic type, got {}".format(target))
    poset.check(target.base)
    if len(term) == 0:
        raise ValueError("cannot reduce the empty term")
    t = term.factors
    start = (tuple(range(1, len(t) + 1)), frozenset())
    seen = {start}
    queue = deque([start])
    results = set()
    while queue:
        alive, links = queue.popleft()
        if len(alive) == 1:
            u = t[alive[0] - 1]
            if u.z == 0 and leq_simple(u, target, poset):
                results.add((tuple(sorted(links)), alive[0]))
            continue
        for k in range(len(alive) - 1):
            a, b = alive[k], alive[k + 1]
            if contractible(t[a - 1], t[b - 1], poset):
                state = (alive[:k] + alive[k + 2:], links | {(a, b)})
                if state not in seen:
                    if len(seen) >= limits.max_states:
                        raise LimitExceeded("oracle state limit reached")
                    seen.add(state)
                    queue.append(state)
    if len(results) > limits.max_derivations:
        raise LimitExceeded("{} derivations exceed the limit of {}".format(
            len(results), limits.max_derivations))
    return [Derivation(term, links, s, target) for links, s in sorted(results)]


@dataclass(frozen=True)
class Parse:
    tokens: Tuple[str, ...]
    choice: Tuple[Term, ...]
    derivation: Derivation

    @property
    def target(self) -> SimpleType:
        return self.derivation.target

    @property
    def term(self) -> Term:
        return self.derivation.term


def _most_specific(candidates: Sequence[SimpleType], poset: TypePoset) -> SimpleType:
    """First candidate that lies below every other candidate."""
    for c in candidates:
        if all(leq_simple(c, d, poset) for d in candidates):
            return c
    return candidates[0]


def parse(tokens: Sequence[str], grammar: GrammarSpec, target_group: str,
          limits: Limits = DEFAULT_LIMITS) -> List[Parse]:
    """
    Every parse of ``tokens`` to some target of ``target_group``.

    A structure (lexical choice, links, survivor) reaching several targets
    of the group is reported once, under the most specific of them.
    """
    targets = grammar.target_group(target_group)
    tokens = tuple(tokens)
    if not tokens:
        return []
    options = []
    for tok in tokens:
        try:
            options.append(grammar.lexicon.lookup(tok))
        except KeyError:
            raise UnknownWordError(tok) from None
    combos = 1
    for o in options:
        combos *= len(o)
    if combos > limits.max_choices:
        raise LimitExceeded("{} lexical choices exceed the limit of {}".format(
            combos, limits.max_choices))

    parses = []
    for choice in itertools.product(*options):
        term = sum(choice, Term())
        if len(term) == 0:
            continue
        by_key: Dict[tuple, List[Derivation]] = {}
        for target in targets:
            for d in reduce(term, target, grammar.poset, limits):
                by_key.setdefault(d.key, []).append(d)
        for key in sorted(by_key):
            best = _most_specific([d.target for d in by_key[key]], grammar.poset)
            d = next(d for d in by_key[key] if d.target == best)
            parses.append(Parse(tokens, tuple(choice), d))
            if len(parses) > limits.max_derivations:
                raise LimitExceeded("more than {} parses".format(limits.max_derivations))
    return parses
