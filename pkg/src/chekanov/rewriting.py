"""Two-sided subword rewriting over Z/2 with degree-capped overlap completion.

Polynomials are handled internally as ``set`` objects of words (tuples of
generator indices); addition is symmetric difference.  The monomial order is
degree-lexicographic with generator indices ascending, compared leftmost
first, which is a monoid order so reductions always terminate.

Provenance: every rule can carry the set of triples ``(u, i, v)`` such that
``lhs + rhs == sum(u * relation[i] * v)`` over Z/2.  Reductions extend that
bookkeeping so ideal membership can be certified by explicit cofactors.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .freealg import Z2, NCPoly, word_key

Triple = tuple  # (left word, relation index, right word)


def _heap_key(w):
    return (-len(w), tuple(-g for g in w))


def to_words(p) -> set:
    if isinstance(p, NCPoly):
        if p.ring is not Z2:
            p = p.at_t_equals_one_mod2()
        return set(p.terms)
    return set(p)


def from_words(words: Iterable) -> NCPoly:
    return NCPoly.from_words(Z2, words)


def leading(p: set):
    return max(p, key=word_key)


def mul_words(p: set, left=(), right=()) -> set:
    return {left + w + right for w in p}


def poly_mul(p: set, q: set) -> set:
    out: set = set()
    for a in p:
        for b in q:
            out ^= {a + b}
    return out


def shift_prov(prov: set, left=(), right=()) -> set:
    return {(left + u, i, v + right) for u, i, v in prov}


def expand_prov(prov: set, relations: list) -> set:
    """Sum of u * relations[i] * v over the triples, as a word set."""
    out: set = set()
    for u, i, v in prov:
        for w in relations[i]:
            out ^= {u + w + v}
    return out


@dataclass
class RewriteRule:
    lhs: tuple
    rhs: frozenset
    prov: frozenset = frozenset()

    def poly(self) -> set:
        return set(self.rhs) | {self.lhs}

    def __str__(self):
        return f"{from_words([self.lhs])} -> {from_words(self.rhs)}"


@dataclass
class RewriteSystem:
    """Interreduced rules under the fixed degree-lex order.

    ``complete`` is False when some overlap was skipped because its word
    exceeded ``cap``; normal forms are then only a one-sided test (zero
    proves membership, nonzero proves nothing).
    """

    rules: list = field(default_factory=list)
    cap: int = 12
    complete: bool = True
    skipped: int = 0
    relations: list = field(default_factory=list)

    def __post_init__(self):
        self._index()

    def _index(self):
        self._by_first: dict = {}
        self._unit = None
        for r in self.rules:
            if not r.lhs:
                self._unit = r
            else:
                self._by_first.setdefault(r.lhs[0], []).append(r)

    @property
    def trivial(self) -> bool:
        """True when 1 lies in the ideal."""
        return self._unit is not None

    def find(self, w):
        """First (position, rule) such that rule.lhs occurs in w at position."""
        if self._unit is not None:
            return 0, self._unit
        by_first = self._by_first
        n = len(w)
        for i in range(n):
            cands = by_first.get(w[i])
            if not cands:
                continue
            for r in cands:
                k = len(r.lhs)
                if k <= n - i and w[i:i + k] == r.lhs:
                    return i, r
        return None

    def reduce(self, p, track: bool = False):
        """Normal form of ``p`` (word set).  With ``track`` also returns the
        provenance of ``p - nf``."""
        pending = set()
        heap: list = []
        for w in to_words(p):
            pending.add(w)
            heapq.heappush(heap, (_heap_key(w), w))
        nf: set = set()
        prov: set = set()
        while heap:
            _, w = heapq.heappop(heap)
            if w not in pending:
                continue
            pending.discard(w)
            hit = self.find(w)
            if hit is None:
                nf.add(w)
                continue
            i, r = hit
            left, right = w[:i], w[i + len(r.lhs):]
            if track:
                prov ^= shift_prov(r.prov, left, right)
            for t in r.rhs:
                u = left + t + right
                if u in pending:
                    pending.discard(u)
                else:
                    pending.add(u)
                    heapq.heappush(heap, (_heap_key(u), u))
        if track:
            return nf, prov
        return nf

    def reduces_to_zero(self, p) -> bool:
        return not self.reduce(p)

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)


def reduce_normal_form(p, sys: RewriteSystem) -> NCPoly:
    return from_words(sys.reduce(p))


def reduce_random_order(p, sys: RewriteSystem, rng) -> set:
    """Normal form reached by rewriting a randomly chosen reducible word at
    a randomly chosen occurrence each step.  Agrees with
    :meth:`RewriteSystem.reduce` whenever the system is confluent."""
    cur = set(to_words(p))
    while True:
        hits = []
        for w in cur:
            for i in range(len(w) + 1):
                for r in sys.rules:
                    k = len(r.lhs)
                    if i + k <= len(w) and w[i:i + k] == r.lhs:
                        hits.append((w, i, r))
        if not hits:
            return cur
        hits.sort(key=lambda h: (word_key(h[0]), h[1], word_key(h[2].lhs)))
        w, i, r = rng.choice(hits)
        left, right = w[:i], w[i + len(r.lhs):]
        cur ^= {w}
        cur ^= {left + t + right for t in r.rhs}


def _overlaps(l1, l2):
    """Lengths k such that the last k letters of l1 equal the first k of l2."""
    top = min(len(l1), len(l2))
    for k in range(1, top):
        if l1[-k:] == l2[:k]:
            yield k


class _Completion:
    def __init__(self, relations, cap, track, max_rules):
        self.relations = [set(r) for r in relations]
        self.cap = cap
        self.track = track
        self.max_rules = max_rules
        self.sys = RewriteSystem(cap=cap, relations=self.relations)
        self.pairs: deque = deque()

    def add_poly(self, p: set, prov: set):
        todo = deque([(p, prov)])
        while todo:
            p, prov = todo.popleft()
            if self.track:
                nf, extra = self.sys.reduce(p, track=True)
                prov = prov ^ extra
            else:
                nf = self.sys.reduce(p)
            if not nf:
                continue
            lhs = leading(nf)
            rule = RewriteRule(lhs, frozenset(nf - {lhs}), frozenset(prov))
            if not lhs:
                # 1 is in the ideal: the system collapses to {1 -> 0}
                self.sys.rules = [rule]
                self.sys._index()
                self.pairs.clear()
                return
            keep = []
            for r in self.sys.rules:
                if _contains(r.lhs, lhs):
                    todo.append((r.poly(), set(r.prov)))
                else:
                    keep.append(r)
            keep.append(rule)
            self.sys.rules = keep
            self.sys._index()
            self._interreduce_rhs()
            if len(self.sys.rules) > self.max_rules:
                raise CompletionOverflow(f"more than {self.max_rules} rules")
            for r in self.sys.rules:
                self.pairs.append((rule, r))
                if r is not rule:
                    self.pairs.append((r, rule))

    def _interreduce_rhs(self):
        sys = self.sys
        changed = True
        while changed:
            changed = False
            for r in sys.rules:
                if not r.rhs or all(sys.find(t) is None for t in r.rhs):
                    continue
                if self.track:
                    nf, extra = sys.reduce(r.rhs, track=True)
                    prov = frozenset(set(r.prov) ^ extra)
                else:
                    nf, prov = sys.reduce(r.rhs), r.prov
                r.rhs = frozenset(nf)
                r.prov = prov
                changed = True

    def run(self):
        while self.pairs and not self.sys.trivial:
            r1, r2 = self.pairs.popleft()
            live = {id(r) for r in self.sys.rules}
            if id(r1) not in live or id(r2) not in live:
                continue
            l1, l2 = r1.lhs, r2.lhs
            for k in _overlaps(l1, l2):
                w = l1 + l2[k:]
                if len(w) > self.cap:
                    self.sys.complete = False
                    self.sys.skipped += 1
                    continue
                a, b = l1[:-k], l2[k:]
                spoly = mul_words(r1.rhs, right=b) ^ mul_words(r2.rhs, left=a)
                prov: set = set()
                if self.track:
                    prov = shift_prov(r1.prov, right=b) ^ shift_prov(r2.prov, left=a)
                self.add_poly(spoly, prov)
                if self.sys.trivial:
                    break
                live = {id(r) for r in self.sys.rules}
                if id(r1) not in live or id(r2) not in live:
                    break
        self.sys.rules.sort(key=lambda r: word_key(r.lhs))
        self.sys._index()
        return self.sys


class CompletionOverflow(RuntimeError):
    pass


def _contains(w, sub) -> bool:
    k = len(sub)
    if k == 0:
        return True
    return any(w[i:i + k] == sub for i in range(len(w) - k + 1))


def complete_bounded(relations, cap: int = 12, track: bool = False,
                     max_rules: int = 20000) -> RewriteSystem:
    """Overlap completion of the two-sided ideal generated by ``relations``.

    Overlaps are processed FIFO; every new rule triggers interreduction.
    Overlap words longer than ``cap`` are skipped and flag the result as
    incomplete.  With ``track`` every rule records its cofactor expansion
    in terms of the input relations.
    """
    rels = [to_words(r) for r in relations]
    c = _Completion(rels, cap, track, max_rules)
    for i, r in enumerate(c.relations):
        c.add_poly(set(r), {((), i, ())} if track else set())
        if c.sys.trivial:
            break
    return c.run()


def rules_from_relations(relations) -> RewriteSystem:
    """Interreduced system without overlap completion."""
    rels = [to_words(r) for r in relations]
    c = _Completion(rels, cap=0, track=False, max_rules=10 ** 9)
    for r in c.relations:
        c.add_poly(set(r), set())
    c.sys.rules.sort(key=lambda r: word_key(r.lhs))
    c.sys._index()
    c.sys.complete = False
    return c.sys
