"""Words over named generators and the word problem in graph products of Z.

A :class:`Word` is a tuple of syllables ``(generator, exponent)``.  The
constructor merges adjacent syllables on the same generator, so every
``Word`` is freely reduced.  Group-specific normal forms live in
:func:`normal_form`, which takes a :class:`GroupSpec` describing which
generators commute.  The free group is the spec with no commuting pairs.

Word literals::

    x1 x2^-1 [a,b] (x1 x2)^-2 1

``[u,v]`` expands to ``u v u^-1 v^-1``, ``(u)^k`` repeats ``u`` (inverted
for negative ``k``) and ``1`` is the identity.

>>> str(parse_word("(t s)^-2 [t,s]"))
's^-1 t^-2 s^-1'

"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import ParseError, UnknownGenerator

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[+-]?[0-9]+")


class Letter(NamedTuple):
    gen: str
    exp: int

    def __str__(self) -> str:
        return self.gen if self.exp == 1 else f"{self.gen}^{self.exp}"


def _merge(syllables: Iterable[tuple[str, int]]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1].gen == gen:
            total = out[-1].exp + exp
            if total:
                out[-1] = Letter(gen, total)
            else:
                out.pop()
        else:
            out.append(Letter(gen, exp))
    return tuple(out)


class Word:
    """Freely reduced word, stored as syllables.

    >>> Word.parse("a b b^-1 a^2")
    Word('a^3')
    >>> str(Word.parse("[x,y]"))
    'x y x^-1 y^-1'
    """

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[tuple[str, int]] = ()):
        self.letters: tuple[Letter, ...] = _merge(letters)
        self._hash = hash(self.letters)

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> Word:
        return cls([(name, exp)])

    @classmethod
    def parse(cls, text: str) -> Word:
        return parse_word(text)

    @classmethod
    def from_signed(cls, letters: Iterable[tuple[str, int]]) -> Word:
        """Build from single letters ``(name, +1/-1)``; same as the constructor."""
        return cls(letters)

    # sequence protocol ---------------------------------------------------
    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __len__(self) -> int:
        """Letter length, i.e. the sum of absolute exponents."""
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    @property
    def syllables(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> Word:
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def inverse(self) -> Word:
        return Word((g, -e) for g, e in reversed(self.letters))

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def expand(self) -> list[tuple[str, int]]:
        """Single-letter expansion ``[(gen, +-1), ...]``."""
        out = []
        for g, e in self.letters:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def substitute(self, images: dict[str, Word]) -> Word:
        """Replace each generator by its image; unmapped generators stay."""
        parts: list[tuple[str, int]] = []
        for g, e in self.letters:
            img = images.get(g)
            if img is None:
                parts.append((g, e))
                continue
            piece = img.letters if e > 0 else img.inverse().letters
            parts.extend(piece * abs(e))
        return Word(parts)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(str(l) for l in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


EMPTY = Word()


def invert(w: Word) -> Word:
    return w.inverse()


# ---------------------------------------------------------------------------
# parsing


class _WordParser:
    def __init__(self, text: str, line: int = 1, col0: int = 0):
        self.text = text
        self.pos = 0
        self.line = line
        self.col0 = col0

    def error(self, msg: str, expected=()) -> ParseError:
        return ParseError(msg, self.line, self.col0 + self.pos + 1, expected)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self, stop: str = "") -> list[tuple[str, int]]:
        out: list[tuple[str, int]] = []
        while True:
            ch = self.peek()
            if ch == "" or ch in stop:
                return out
            out.extend(self.token())

    def exponent(self, allow_zero: bool = True) -> int:
        if self.pos < len(self.text) and self.text[self.pos] == "^":
            self.pos += 1
            mi = _INT_RE.match(self.text, self.pos)
            if not mi:
                raise self.error("bad exponent", ("integer",))
            exp = int(mi.group())
            if exp == 0 and not allow_zero:
                raise self.error("exponent must be nonzero", ("nonzero integer",))
            self.pos = mi.end()
            return exp
        return 1

    def power(self, u: list[tuple[str, int]]) -> list[tuple[str, int]]:
        k = self.exponent()
        if k < 0:
            u = [(g, -e) for g, e in reversed(u)]
        return u * abs(k)

    def token(self) -> list[tuple[str, int]]:
        ch = self.peek()
        if ch == "[":
            self.pos += 1
            u = self.word(",]")
            if self.peek() != ",":
                raise self.error("unterminated commutator", ("','",))
            self.pos += 1
            v = self.word(",]")
            if self.peek() != "]":
                raise self.error("unterminated commutator", ("']'",))
            self.pos += 1
            ui = [(g, -e) for g, e in reversed(u)]
            vi = [(g, -e) for g, e in reversed(v)]
            return self.power(u + v + ui + vi)
        if ch == "(":
            self.pos += 1
            u = self.word(")")
            if self.peek() != ")":
                raise self.error("unterminated group", ("')'",))
            self.pos += 1
            return self.power(u)
        m = IDENT_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return [(m.group(), self.exponent(allow_zero=False))]
        if ch == "1":
            self.pos += 1
            nxt = self.text[self.pos] if self.pos < len(self.text) else ""
            if nxt and not (nxt.isspace() or nxt in "[](),"):
                raise self.error("unexpected character after identity", ("whitespace",))
            return []
        raise self.error(f"unexpected character {ch!r}", ("identifier", "'['", "'('", "'1'"))


def parse_word(text: str, *, line: int = 1, column_offset: int = 0) -> Word:
    p = _WordParser(text, line, column_offset)
    letters = p.word()
    if p.peek():
        raise p.error(f"unexpected character {p.peek()!r}", ("identifier", "'['", "'('", "'1'"))
    return Word(letters)


# ---------------------------------------------------------------------------
# group specs


@dataclass(frozen=True)
class GroupSpec:
    """Graph product of infinite cyclic groups.

    ``generators`` fixes the total order used by shortlex comparisons.
    ``commuting_pairs`` lists the edges of the commutation graph.
    """

    generators: tuple[str, ...]
    commuting_pairs: frozenset[frozenset[str]] = frozenset()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _blocks: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator names")
        for g in gens:
            if not IDENT_RE.fullmatch(g):
                raise ValueError(f"bad generator name {g!r}")
        pairs = frozenset(frozenset(p) for p in self.commuting_pairs)
        for p in pairs:
            if len(p) != 2:
                raise ValueError("a generator cannot be paired with itself")
            for g in p:
                if g not in gens:
                    raise UnknownGenerator(g, "commuting pair")
        object.__setattr__(self, "commuting_pairs", pairs)
        index = {g: i for i, g in enumerate(gens)}
        object.__setattr__(self, "_index", index)
        # _blocks[i]: indices of generators that do NOT commute with i (i included)
        blocks = []
        for g in gens:
            blocks.append(tuple(index[h] for h in gens if h == g or frozenset((g, h)) not in pairs))
        object.__setattr__(self, "_blocks", tuple(blocks))

    @classmethod
    def free(cls, generators: Sequence[str]) -> GroupSpec:
        return cls(tuple(generators))

    @classmethod
    def free_rank(cls, n: int, prefix: str = "x") -> GroupSpec:
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    @classmethod
    def free_abelian(cls, generators: Sequence[str]) -> GroupSpec:
        gens = tuple(generators)
        pairs = {frozenset((g, h)) for i, g in enumerate(gens) for h in gens[i + 1:]}
        return cls(gens, frozenset(pairs))

    def __len__(self) -> int:
        return len(self.generators)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def commute(self, g: str, h: str) -> bool:
        return g != h and frozenset((g, h)) in self.commuting_pairs

    def check(self, w: Word) -> None:
        for g, _ in w.letters:
            if g not in self._index:
                raise UnknownGenerator(g)

    def word(self, text: str) -> Word:
        w = parse_word(text)
        self.check(w)
        return w

    def commutator_relators(self) -> list[Word]:
        """One relator ``[g,h]`` per commuting pair, in declaration order."""
        out = []
        for i, g in enumerate(self.generators):
            for h in self.generators[i + 1:]:
                if self.commute(g, h):
                    out.append(Word([(g, 1), (h, 1), (g, -1), (h, -1)]))
        return out


# ---------------------------------------------------------------------------
# normal forms


def _piles(spec: GroupSpec, w: Word) -> list[list[int]]:
    """Heap ("pile") encoding of the reduced form of ``w``.

    ``piles[i]`` holds the exponents of generator ``i`` interleaved with 0
    markers for each later syllable that blocks ``i``.  A syllable merges
    with the back of its own pile exactly when everything after it commutes.
    """
    index = spec._index
    blocks = spec._blocks
    piles: list[list[int]] = [[] for _ in spec.generators]
    for g, e in w.letters:
        try:
            i = index[g]
        except KeyError:
            raise UnknownGenerator(g) from None
        pile = piles[i]
        if pile and pile[-1] != 0:
            total = pile[-1] + e
            if total:
                pile[-1] = total
            else:
                for j in blocks[i]:
                    piles[j].pop()
            continue
        for j in blocks[i]:
            piles[j].append(e if j == i else 0)
    return piles


def _depile(spec: GroupSpec, piles: list[list[int]]) -> Word:
    blocks = spec._blocks
    gens = spec.generators
    heads = [0] * len(piles)
    remaining = sum(1 for p in piles for x in p if x)
    out: list[tuple[str, int]] = []
    while remaining:
        for i, pile in enumerate(piles):
            h = heads[i]
            if h < len(pile) and pile[h] != 0:
                break
        else:  # pragma: no cover - heap invariant guarantees an available syllable
            raise AssertionError("corrupt pile structure")
        out.append((gens[i], piles[i][heads[i]]))
        for j in blocks[i]:
            heads[j] += 1
        remaining -= 1
    return Word(out)


def normal_form(spec: GroupSpec, w: Word) -> Word:
    """Shortest, then shortlex-least, representative of ``w``.

    Letters compare by generator declaration order, positive before negative.

    >>> A = GroupSpec(("a", "b", "c"), frozenset({frozenset("ab")}))
    >>> normal_form(A, Word.parse("b c a c^-1 b^-1 a^-1 c"))
    Word('b c a c^-1 a^-1 b^-1 c')
    >>> normal_form(A, Word.parse("b a b^-1"))
    Word('a')
    """
    return _depile(spec, _piles(spec, w))


def multiply(spec: GroupSpec, u: Word, v: Word) -> Word:
    return normal_form(spec, u * v)


def equal(spec: GroupSpec, u: Word, v: Word) -> bool:
    return normal_form(spec, u * v.inverse()) == EMPTY


def is_identity(spec: GroupSpec, w: Word) -> bool:
    return not normal_form(spec, w)


def conjugate(spec: GroupSpec, w: Word, by: Word) -> Word:
    """``by · w · by^-1`` in normal form."""
    return normal_form(spec, by * w * by.inverse())


def shortlex_key(spec: GroupSpec, w: Word) -> tuple:
    keys = []
    for g, e in w.letters:
        k = (spec.index(g), 0 if e > 0 else 1)
        keys.extend([k] * abs(e))
    return (len(keys), tuple(keys))


def _end_available(spec: GroupSpec, letters: Sequence[Letter]) -> dict[str, int]:
    """Map generator -> position of its first syllable that can be shuffled to the front."""
    found: dict[str, int] = {}
    seen: list[str] = []
    for pos, (g, _) in enumerate(letters):
        if g not in found and all(spec.commute(g, h) for h in seen):
            found[g] = pos
        seen.append(g)
    return found


def cyclically_reduce(spec: GroupSpec, w: Word) -> tuple[Word, Word]:
    """Peel cancelling end syllables: ``w = conjugator^-1 · core · conjugator``.

    >>> F2 = GroupSpec.free_rank(2)
    >>> cyclically_reduce(F2, Word.parse("x2^-1 x1 x2"))
    (Word('x1'), Word('x2'))
    """
    core = normal_form(spec, w)
    conj = EMPTY
    while True:
        front = _end_available(spec, core.letters)
        back_rev = _end_available(spec, core.letters[::-1])
        n = len(core.letters)
        back = {g: n - 1 - p for g, p in back_rev.items()}
        peel = None
        for g in spec.generators:
            if g in front and g in back and front[g] != back[g]:
                ef = core.letters[front[g]].exp
                eb = core.letters[back[g]].exp
                if ef * eb < 0:
                    s = min(abs(ef), abs(eb))
                    peel = Word.gen(g, s if ef > 0 else -s)
                    break
        if peel is None:
            return core, conj
        # core = peel · core' · peel^-1
        core = normal_form(spec, peel.inverse() * core * peel)
        conj = normal_form(spec, peel.inverse() * conj)


def abelianize_word(spec: GroupSpec, w: Word) -> tuple[int, ...]:
    vec = [0] * len(spec)
    for g, e in w.letters:
        vec[spec.index(g)] += e
    return tuple(vec)


def enumerate_normal_forms(spec: GroupSpec, max_len: int) -> Iterator[Word]:
    """All normal forms of letter length <= max_len, by length then shortlex."""
    letters = [Word.gen(g, s) for g in spec.generators for s in (1, -1)]
    layer = [EMPTY]
    yield EMPTY
    for length in range(1, max_len + 1):
        nxt = set()
        for w in layer:
            for x in letters:
                v = normal_form(spec, w * x)
                if len(v) == length:
                    nxt.add(v)
        layer = sorted(nxt, key=lambda v: shortlex_key(spec, v))
        yield from layer
