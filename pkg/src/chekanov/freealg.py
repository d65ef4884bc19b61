"""Free unital noncommutative algebras over Z/2 and Z[t, t^-1].

Words are tuples of positive generator indices; the empty tuple is the
unit word.  An :class:`NCPoly` is a finitely supported map from words to
nonzero coefficients of its ring, and is treated as an immutable value.

Two coefficient rings are supported:

* ``Z2``: coefficients are the integer 1 (zero terms are dropped).
* ``LAURENT``: coefficients are :class:`Laurent` polynomials in ``t``
  with arbitrary-precision integer coefficients.
"""

from __future__ import annotations

import re
from typing import Callable, Iterable, Iterator, Mapping

Word = tuple


class RingMismatch(ValueError):
    pass


def word_key(w: Word):
    """Sort key of the degree-lexicographic order (generator index ascending)."""
    return (len(w), w)


# ----------------------------------------------------------------------
# Laurent coefficients
# ----------------------------------------------------------------------


class Laurent:
    """An element of Z[t, t^-1], stored as a sorted tuple of (exponent, coeff)."""

    __slots__ = ("_items",)

    def __init__(self, items: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(items, Mapping):
            items = items.items()
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        self._items = tuple(sorted((e, c) for e, c in acc.items() if c))

    @classmethod
    def const(cls, c: int) -> Laurent:
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, c: int = 1) -> Laurent:
        return cls({exponent: c})

    def items(self):
        return self._items

    def __bool__(self):
        return bool(self._items)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent.const(other)
        return isinstance(other, Laurent) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __add__(self, other: Laurent) -> Laurent:
        return Laurent(self._items + other._items)

    def __neg__(self) -> Laurent:
        return Laurent((e, -c) for e, c in self._items)

    def __sub__(self, other: Laurent) -> Laurent:
        return self + (-other)

    def __mul__(self, other: Laurent) -> Laurent:
        return Laurent(
            (e1 + e2, c1 * c2) for e1, c1 in self._items for e2, c2 in other._items
        )

    def at_one(self) -> int:
        return sum(c for _, c in self._items)

    def is_monomial(self) -> bool:
        return len(self._items) == 1

    def __repr__(self):
        return f"Laurent({dict(self._items)!r})"

    def __str__(self):
        if not self._items:
            return "0"
        parts = []
        for e, c in sorted(self._items, key=lambda ec: -ec[0]):
            parts.append(_render_scaled(c, "" if e == 0 else _render_t(e)))
        return _join_signed(parts)


def _render_t(e: int) -> str:
    return "t" if e == 1 else f"t^{e}"


def _render_scaled(c: int, body: str) -> str:
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c} {body}"


def _join_signed(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# ----------------------------------------------------------------------
# Coefficient rings
# ----------------------------------------------------------------------


class CoefficientRing:
    """Arithmetic of one coefficient ring.  Use the module singletons."""

    def __init__(self, tag: str):
        self.tag = tag

    def __repr__(self):
        return self.tag

    @property
    def signed(self) -> bool:
        return self.tag == "LaurentZ"

    def coerce(self, c):
        if self.tag == "Z2":
            if isinstance(c, Laurent):
                c = c.at_one()
            return int(c) % 2
        if isinstance(c, Laurent):
            return c
        return Laurent.const(int(c))

    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        return (a + b) % 2 if self.tag == "Z2" else a + b

    def mul(self, a, b):
        return (a * b) % 2 if self.tag == "Z2" else a * b

    def neg(self, a):
        return a if self.tag == "Z2" else -a

    def is_zero(self, a) -> bool:
        return not a


Z2 = CoefficientRing("Z2")
LAURENT = CoefficientRing("LaurentZ")


def ring_from_name(name: str) -> CoefficientRing:
    key = name.lower()
    if key in ("z2", "z/2", "gf2"):
        return Z2
    if key in ("laurent", "laurentz", "z[t,t^-1]"):
        return LAURENT
    raise ValueError(f"unknown ring {name!r}; expected z2 or laurent")


# ----------------------------------------------------------------------
# Noncommutative polynomials
# ----------------------------------------------------------------------


class NCPoly:
    """Element of the free unital algebra on generators indexed 1, 2, ..."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: CoefficientRing, terms: Mapping | Iterable = ()):
        self.ring = ring
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[Word, object] = {}
        zero = ring.coerce(0)
        for w, c in terms:
            w = tuple(w)
            c = ring.coerce(c)
            acc[w] = ring.add(acc.get(w, zero), c)
        self._terms = {w: c for w, c in acc.items() if not ring.is_zero(c)}
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, ring: CoefficientRing) -> NCPoly:
        return cls(ring)

    @classmethod
    def one(cls, ring: CoefficientRing) -> NCPoly:
        return cls(ring, {(): 1})

    @classmethod
    def gen(cls, ring: CoefficientRing, i: int) -> NCPoly:
        return cls(ring, {(i,): 1})

    @classmethod
    def from_words(cls, ring: CoefficientRing, words: Iterable[Word]) -> NCPoly:
        return cls(ring, ((w, 1) for w in words))

    # views
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def words(self) -> list[Word]:
        """Support in descending monomial order."""
        return sorted(self._terms, key=word_key, reverse=True)

    def items(self) -> Iterator[tuple[Word, object]]:
        for w in self.words():
            yield w, self._terms[w]

    def coeff(self, w: Word):
        return self._terms.get(tuple(w), self.ring.coerce(0))

    def generators(self) -> set[int]:
        return {g for w in self._terms for g in w}

    def leading_word(self) -> Word:
        return max(self._terms, key=word_key)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.ring is other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.tag, frozenset(self._terms.items())))
        return self._hash

    # arithmetic
    def _check(self, other: NCPoly):
        if self.ring is not other.ring:
            raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: NCPoly) -> NCPoly:
        self._check(other)
        return NCPoly(self.ring, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> NCPoly:
        return NCPoly(self.ring, ((w, self.ring.neg(c)) for w, c in self._terms.items()))

    def __sub__(self, other: NCPoly) -> NCPoly:
        return self + (-other)

    def __mul__(self, other) -> NCPoly:
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check(other)
        mul = self.ring.mul
        return NCPoly(
            self.ring,
            (
                (w1 + w2, mul(c1, c2))
                for w1, c1 in self._terms.items()
                for w2, c2 in other._terms.items()
            ),
        )

    def __rmul__(self, c) -> NCPoly:
        return self.scale(c)

    def scale(self, c) -> NCPoly:
        c = self.ring.coerce(c)
        return NCPoly(self.ring, ((w, self.ring.mul(c, v)) for w, v in self._terms.items()))

    def map_coefficients(self, ring: CoefficientRing, fn: Callable = None) -> NCPoly:
        fn = fn or (lambda c: c)
        return NCPoly(ring, ((w, fn(c)) for w, c in self._terms.items()))

    def at_t_equals_one_mod2(self) -> NCPoly:
        """Set t = 1 and reduce coefficients mod 2."""
        return NCPoly(Z2, self._terms.items())

    def normalized(self) -> NCPoly:
        return NCPoly(self.ring, self._terms.items())

    def render(self, names: Mapping[int, str] | None = None) -> str:
        return render(self, names)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"NCPoly({self.ring}, {render(self)!r})"


def nc_add(p: NCPoly, q: NCPoly) -> NCPoly:
    return p + q


def nc_mul(p: NCPoly, q: NCPoly) -> NCPoly:
    return p * q


def nc_substitute(p: NCPoly, assignment: Mapping[int, NCPoly]) -> NCPoly:
    """Image of ``p`` under the unital homomorphism g -> assignment[g]."""
    missing = p.generators() - set(assignment)
    if missing:
        raise KeyError(f"no assignment for generators {sorted(missing)}")
    ring = p.ring
    total = NCPoly.zero(ring)
    cache: dict[Word, NCPoly] = {}
    for w, c in p._terms.items():
        img = cache.get(w)
        if img is None:
            img = NCPoly.one(ring)
            for g in w:
                img = img * assignment[g]
            cache[w] = img
        total = total + img.scale(c)
    return total


class Derivation:
    """Linear map on the free algebra extending generator values by the
    graded Leibniz rule d(xy) = d(x) y + (-1)^{|x|} x d(y)."""

    def __init__(self, ring: CoefficientRing, values: Mapping[int, NCPoly],
                 gradings: Mapping[int, int] | None = None):
        if ring.signed:
            if gradings is None:
                raise ValueError("gradings are required for a signed derivation")
            missing = set(values) - set(gradings)
            if missing:
                raise ValueError(f"missing gradings for generators {sorted(missing)}")
        self.ring = ring
        self.values = dict(values)
        self.gradings = dict(gradings) if gradings is not None else {}

    def on_word(self, w: Word) -> dict:
        ring = self.ring
        out: dict[Word, object] = {}
        parity = 0
        for i, g in enumerate(w):
            try:
                dg = self.values[g]
            except KeyError:
                raise KeyError(f"derivation undefined on generator {g}") from None
            if dg._terms:
                left, right = w[:i], w[i + 1:]
                neg = ring.signed and parity
                for s, c in dg._terms.items():
                    key = left + s + right
                    c = ring.neg(c) if neg else c
                    prev = out.get(key)
                    out[key] = c if prev is None else ring.add(prev, c)
            if ring.signed:
                parity ^= self.gradings[g] & 1
        return out

    def __call__(self, p: NCPoly) -> NCPoly:
        ring = self.ring
        acc = []
        for w, c in p._terms.items():
            for key, v in self.on_word(w).items():
                acc.append((key, ring.mul(c, v)))
        return NCPoly(ring, acc)


def leibniz_extend(values: Mapping[int, NCPoly], gradings: Mapping[int, int] | None = None,
                   ring: CoefficientRing | None = None) -> Derivation:
    if ring is None:
        rings = {v.ring for v in values.values()}
        ring = rings.pop() if len(rings) == 1 else Z2
    return Derivation(ring, values, gradings)


def word_degree(w: Word, gradings: Mapping[int, int]) -> int:
    return sum(gradings[g] for g in w)


# ----------------------------------------------------------------------
# Rendering and parsing
# ----------------------------------------------------------------------


def render_word(w: Word, names: Mapping[int, str] | None = None) -> str:
    if not w:
        return "1"
    if names:
        return " ".join(names.get(g, f"x_{g}") for g in w)
    return " ".join(f"x_{g}" for g in w)


def render(p: NCPoly, names: Mapping[int, str] | None = None) -> str:
    """Canonical text: terms in descending monomial order."""
    if not p._terms:
        return "0"
    parts = []
    for w, c in p.items():
        body = "" if not w else render_word(w, names)
        if p.ring is Z2:
            parts.append(body or "1")
        elif c.is_monomial():
            (e, k), = c.items()
            tpart = "" if e == 0 else _render_t(e)
            full = " ".join(s for s in (tpart, body) if s)
            parts.append(_render_scaled(k, full))
        else:
            parts.append(f"({c}) {body}" if body else f"({c})")
    return _join_signed(parts)


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<gen>x_?\{?\d+\}?)"
    r"|(?P<num>\d+)"
    r"|(?P<name>[A-Za-z](?:_?\{?\d+\}?)?)"
    r"|(?P<op>[-+*^(){}])"
    r")"
)


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
    return out


class _Parser:
    def __init__(self, text, ring, names):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.names = names or {}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, v = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, got {v!r}")

    def parse(self) -> NCPoly:
        if not self.toks:
            raise ParseError("empty expression")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return p

    def expr(self) -> NCPoly:
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        p = self.term().scale(sign)
        while self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            p = p + self.term().scale(sign)
        return p

    def term(self) -> NCPoly:
        p = self.factor()
        while True:
            kind, v = self.peek()
            if v == "*":
                self.take()
                p = p * self.factor()
            elif kind in ("gen", "num", "name") or v == "(":
                p = p * self.factor()
            else:
                return p

    def _int(self) -> int:
        sign = 1
        braced = self.peek()[1] == "{"
        if braced:
            self.take()
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, v = self.take()
        if kind != "num":
            raise ParseError(f"expected integer exponent, got {v!r}")
        if braced:
            self.expect("}")
        return sign * int(v)

    def factor(self) -> NCPoly:
        kind, v = self.take()
        ring = self.ring
        if kind == "num":
            base = NCPoly(ring, {(): int(v)})
        elif kind == "gen":
            base = NCPoly.gen(ring, int(re.sub(r"\D", "", v)))
        elif kind == "name":
            if v == "t":
                exp = 1
                if self.peek()[1] == "^":
                    self.take()
                    exp = self._int()
                return NCPoly(ring, {(): Laurent.monomial(exp)})
            if v not in self.names:
                raise ParseError(f"unknown symbol {v!r}")
            base = NCPoly.gen(ring, self.names[v])
        elif v == "(":
            base = self.expr()
            self.expect(")")
        else:
            raise ParseError(f"unexpected token {v!r}")
        if self.peek()[1] == "^":
            self.take()
            k = self._int()
            if k < 0:
                raise ParseError("negative powers only allowed for t")
            out = NCPoly.one(ring)
            for _ in range(k):
                out = out * base
            return out
        return base


def parse_poly(text: str, ring: CoefficientRing = Z2,
               names: Mapping[str, int] | None = None) -> NCPoly:
    """Parse the canonical grammar: words, ``+``/``-``, parentheses, ``t^k``.

    Generators are written ``x_12``, ``x_{12}`` or ``x12``; ``names`` maps
    extra symbols (e.g. ``{"a": 1}``) to generator indices.
    """
    return _Parser(text, ring, names).parse()
