"""Finite presentations: the ``.grp`` file format and Tietze simplification.

File format, one directive per line, ``#`` starts a comment::

    group Q8
    gens t s
    rel t^2 = s^2
    rel t s t s = t^2

``rel u = v`` is stored as the relator ``u v^-1``; a chain ``u = v = w``
gives ``u v^-1`` and ``v w^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import NotEliminable, ParseError, UnknownGenerator
from .words import EMPTY, IDENT_RE, GroupSpec, Word, parse_word


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generator in {gens}")
        object.__setattr__(self, "generators", gens)
        rels = tuple(self.relators)
        known = set(gens)
        for r in rels:
            for g in r.generators():
                if g not in known:
                    raise UnknownGenerator(g, f"presentation {self.name}")
        object.__setattr__(self, "relators", rels)

    @classmethod
    def from_strings(cls, name: str, generators: str | Sequence[str], relators: Iterable[str] = ()) -> Presentation:
        """Shorthand: ``Presentation.from_strings("Z4", "t", ["t^4"])``.

        A relator string may be an equation ``u = v`` or a chain ``u = v = w``.
        """
        if isinstance(generators, str):
            generators = generators.split()
        rels = []
        for text in relators:
            sides = [parse_word(part) for part in text.split("=")]
            if len(sides) == 1:
                rels.append(sides[0])
            rels.extend(u * v.inverse() for u, v in zip(sides, sides[1:]))
        return cls(name, tuple(generators), tuple(rels))

    def __str__(self) -> str:
        rels = ", ".join(str(r) for r in self.relators)
        return f"<{' '.join(self.generators)} | {rels}>"

    def rename(self, name: str) -> Presentation:
        return Presentation(name, self.generators, self.relators)

    def free_spec(self) -> GroupSpec:
        return GroupSpec.free(self.generators)

    def to_group_spec(self) -> GroupSpec:
        """Interpret as a graph product of Z; every relator must be a commutator ``[g,h]``."""
        pairs = set()
        for r in self.relators:
            pair = _commutator_pair(r)
            if pair is None:
                raise ValueError(f"relator {r} of {self.name} is not a generator commutator")
            pairs.add(frozenset(pair))
        return GroupSpec(self.generators, frozenset(pairs))

    def serialize(self) -> str:
        return serialize_presentation(self)


def from_group_spec(spec: GroupSpec, name: str = "G") -> Presentation:
    return Presentation(name, spec.generators, tuple(spec.commutator_relators()))


def _commutator_pair(r: Word) -> tuple[str, str] | None:
    ls = r.letters
    if len(ls) != 4 or any(abs(e) != 1 for _, e in ls):
        return None
    (g, e1), (h, e2), (g2, e3), (h2, e4) = ls
    if g == h or g != g2 or h != h2 or e1 != -e3 or e2 != -e4:
        return None
    return g, h


# ---------------------------------------------------------------------------
# file format


def parse_presentation(text: str) -> Presentation:
    """Parse the ``.grp`` format.

    >>> p = parse_presentation("group Z2\\ngens t\\nrel t^2")
    >>> p.generators, p.relators
    (('t',), (Word('t^2'),))
    """
    name = None
    gens: list[str] | None = None
    rels: list[tuple[Word, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        keyword, _, rest = stripped.partition(" ")
        rest_col = col + len(keyword) + 1
        if keyword == "group":
            if name is not None:
                raise ParseError("duplicate 'group' line", lineno, col)
            ident = rest.strip()
            if not IDENT_RE.fullmatch(ident):
                raise ParseError("bad group name", lineno, rest_col, ("identifier",))
            name = ident
        elif keyword == "gens":
            if name is None:
                raise ParseError("'gens' before 'group'", lineno, col, ("'group'",))
            if gens is not None:
                raise ParseError("duplicate 'gens' line", lineno, col, ("'rel'",))
            gens = rest.split()
            if not gens:
                raise ParseError("empty generator list", lineno, rest_col, ("identifier",))
            for g in gens:
                if not IDENT_RE.fullmatch(g):
                    raise ParseError(f"bad generator name {g!r}", lineno, col + line.strip().find(g) + 0, ("identifier",))
            if len(set(gens)) != len(gens):
                raise ParseError("duplicate generator", lineno, rest_col)
        elif keyword == "rel":
            if gens is None:
                raise ParseError("'rel' before 'gens'", lineno, col, ("'gens'",))
            offset = rest_col - 1
            sides = []
            for part in rest.split("="):
                if not part.strip():
                    raise ParseError("empty side of '='", lineno, offset + 1, ("word",))
                sides.append(parse_word(part, line=lineno, column_offset=offset))
                offset += len(part) + 1
            if len(sides) == 1:
                rels.append((sides[0], lineno, rest_col))
            for u, v in zip(sides, sides[1:]):
                rels.append((u * v.inverse(), lineno, rest_col))
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno, col, ("'group'", "'gens'", "'rel'"))
    if name is None:
        raise ParseError("missing 'group' line", 1, 1, ("'group'",))
    if gens is None:
        raise ParseError("missing 'gens' line", 1, 1, ("'gens'",))
    known = set(gens)
    for r, lineno, _ in rels:
        for g, _e in r.letters:
            if g not in known:
                raise UnknownGenerator(g, f"{name} line {lineno}")
    return Presentation(name, tuple(gens), tuple(r for r, _, _ in rels))


def serialize_presentation(p: Presentation) -> str:
    lines = [f"group {p.name}", "gens " + " ".join(p.generators)]
    lines += [f"rel {r}" for r in p.relators]
    return "\n".join(lines) + "\n"


def load_presentation(path: str | Path) -> Presentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# Tietze moves


def cyclic_reduce_free(w: Word) -> Word:
    """Free cyclic reduction (conjugate by end syllables, merging them)."""
    ls = list(w.letters)
    while len(ls) >= 2 and ls[0].gen == ls[-1].gen:
        merged = ls[0].exp + ls[-1].exp
        inner = ls[1:-1]
        ls = ([(ls[0].gen, merged)] + inner) if merged else inner
        ls = list(Word(ls).letters)
    return Word(ls)


def _cyclic_class_key(w: Word, order: dict[str, int]) -> tuple:
    """Canonical key for ``w`` up to cyclic permutation and inversion."""
    w = cyclic_reduce_free(w)
    best = None
    for cand in (w, w.inverse()):
        letters = cand.expand()
        n = len(letters)
        for i in range(max(n, 1)):
            rot = letters[i:] + letters[:i]
            key = tuple((order[g], s) for g, s in rot)
            if best is None or key < best:
                best = key
    return best


def _eliminable(r: Word, gen: str) -> bool:
    occurrences = [e for g, e in cyclic_reduce_free(r).letters if g == gen]
    return len(occurrences) == 1 and abs(occurrences[0]) == 1


def _solve_for(r: Word, gen: str) -> Word:
    """Given a relator with a single occurrence of ``gen``, return the word ``gen`` equals."""
    ls = list(cyclic_reduce_free(r).letters)
    pos = next(i for i, (g, _) in enumerate(ls) if g == gen)
    sign = ls[pos].exp
    rest = Word(ls[pos + 1:] + ls[:pos])  # gen^sign · rest = 1
    return rest.inverse() if sign == 1 else rest


def tietze_eliminate(p: Presentation, gen: str, relator_index: int | None = None) -> Presentation:
    """Remove ``gen`` using a relator in which it occurs exactly once.

    Without ``relator_index`` the shortest such relator is used (ties broken
    by position).

    >>> p = Presentation.from_strings("E", "l tau_H", ["l^2", "tau_H^2 = l", "tau_H l tau_H^-1 = l^-1"])
    >>> str(tietze_eliminate(p, "l"))
    '<tau_H | tau_H^4, tau_H^4>'
    """
    if gen not in p.generators:
        raise UnknownGenerator(gen, p.name)
    if relator_index is None:
        candidates = [(len(r), i) for i, r in enumerate(p.relators) if _eliminable(r, gen)]
        if not candidates:
            raise NotEliminable(f"no relator of {p.name} contains {gen} exactly once")
        relator_index = min(candidates)[1]
    elif not _eliminable(p.relators[relator_index], gen):
        raise NotEliminable(f"relator {relator_index} does not contain {gen} exactly once")
    value = _solve_for(p.relators[relator_index], gen)
    rels = tuple(
        r.substitute({gen: value}) for i, r in enumerate(p.relators) if i != relator_index
    )
    gens = tuple(g for g in p.generators if g != gen)
    return Presentation(p.name, gens, rels)


def simplify(p: Presentation) -> Presentation:
    """Deterministic Tietze simplification.

    Repeats until nothing changes: cyclically reduce relators, drop trivial
    and duplicate (up to rotation and inversion) relators, then eliminate a
    generator through the shortest relator containing it exactly once.
    Ties go to the lexicographically smaller relator, then to the earlier
    generator.
    """
    while True:
        order = {g: i for i, g in enumerate(p.generators)}
        seen = set()
        rels = []
        for r in p.relators:
            r = cyclic_reduce_free(r)
            if r == EMPTY:
                continue
            key = _cyclic_class_key(r, order)
            if key in seen:
                continue
            seen.add(key)
            rels.append(r)
        p = Presentation(p.name, p.generators, tuple(rels))
        best = None
        for i, r in enumerate(p.relators):
            for g in p.generators:
                if _eliminable(r, g):
                    key = (len(r), _cyclic_class_key(r, order), order[g])
                    if best is None or key < best[0]:
                        best = (key, i, g)
        if best is None:
            return p
        _, i, g = best
        p = tietze_eliminate(p, g, relator_index=i)
