"""Coset enumeration and the permutation model it yields.

>>> from ringgroups.presentation import Presentation
>>> enumerate_cosets(Presentation.from_strings("Z4", "t", ["t^4"])).index
4
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .errors import IncompleteTable, OutOfSpace, UnknownGenerator
from .presentation import Presentation, simplify
from .words import GroupSpec, Word

DEFAULT_MAX_COSETS = 10_000


@dataclass(frozen=True)
class CosetTable:
    """Complete coset table; coset 0 is the subgroup itself.

    ``rows[k][2*g]`` is ``k·g`` and ``rows[k][2*g+1]`` is ``k·g^-1`` where
    ``g`` indexes ``generators``.  Cosets are numbered in breadth-first
    order from coset 0, which makes tables canonical for a given input.
    """

    generators: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]
    complete: bool = True

    @property
    def index(self) -> int:
        return len(self.rows)

    num_cosets = index

    def column(self, gen: str, sign: int = 1) -> int:
        try:
            g = self.generators.index(gen)
        except ValueError:
            raise UnknownGenerator(gen) from None
        return 2 * g + (0 if sign > 0 else 1)

    def act(self, coset: int, w: Word) -> int:
        """Right action of a word on a coset."""
        for g, e in w.letters:
            col = self.column(g, e)
            for _ in range(abs(e)):
                coset = self.rows[coset][col]
        return coset

    def permutation(self, w: Word) -> tuple[int, ...]:
        if not self.complete:
            raise IncompleteTable("table is not complete")
        perm = list(range(self.index))
        for g, e in w.letters:
            col = self.column(g, e)
            for _ in range(abs(e)):
                perm = [self.rows[k][col] for k in perm]
        return tuple(perm)

    def generator_permutations(self) -> dict[str, tuple[int, ...]]:
        return {g: tuple(r[2 * i] for r in self.rows) for i, g in enumerate(self.generators)}

    def relator_closes(self, w: Word) -> bool:
        return all(self.act(k, w) == k for k in range(self.index))


def _encode(gens: Sequence[str], w: Word) -> list[int]:
    idx = {g: i for i, g in enumerate(gens)}
    out = []
    for g, e in w.letters:
        try:
            col = 2 * idx[g] + (0 if e > 0 else 1)
        except KeyError:
            raise UnknownGenerator(g) from None
        out.extend([col] * abs(e))
    return out


def _standardize(rows: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    order = [0]
    new = {0: 0}
    for k in order:
        for v in rows[k]:
            if v not in new:
                new[v] = len(order)
                order.append(v)
    return tuple(tuple(new[v] for v in rows[k]) for k in order)


def enumerate_cosets(p: Presentation | GroupSpec, subgroup: Sequence[Word] = (),
                     max_cosets: int = DEFAULT_MAX_COSETS, backend: str | None = None) -> CosetTable:
    """HLT enumeration with lookahead of the cosets of ``<subgroup>`` in ``p``.

    A :class:`GroupSpec` is first expanded to its commutator presentation.
    Raises :class:`OutOfSpace` when ``max_cosets`` cosets do not suffice.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    if isinstance(p, GroupSpec):
        from .presentation import from_group_spec

        p = from_group_spec(p)
    gens = p.generators
    rels = [_encode(gens, r) for r in p.relators if r]
    sub = [_encode(gens, h) for h in subgroup if h]
    status, rows = kernels.run_hlt(len(gens), rels, sub, max_cosets, backend=backend)
    if status != kernels.COMPLETE:
        raise OutOfSpace(max_cosets)
    return CosetTable(tuple(gens), _standardize(rows))


def group_order(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS, backend: str | None = None) -> int:
    return enumerate_cosets(p, (), max_cosets, backend).index


def _cycle_lcm(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def element_order(t: CosetTable, w: Word) -> int:
    """Order of the permutation ``w`` induces on the cosets.

    On the regular table (trivial subgroup) this is the element order.
    """
    return _cycle_lcm(t.permutation(w))


def quotient_by(p: Presentation, killed: Sequence[str], name: str | None = None) -> Presentation:
    """Add each killed generator as a relator and simplify."""
    for g in killed:
        if g not in p.generators:
            raise UnknownGenerator(g, p.name)
    q = Presentation(name or f"{p.name}_mod", p.generators, p.relators + tuple(Word.gen(g) for g in killed))
    return simplify(q)


def closure_order(perms: Sequence[Sequence[int]], limit: int = 100_000) -> int:
    """Size of the permutation group generated by ``perms`` (breadth-first closure)."""
    if not perms:
        return 1
    n = len(perms[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(p) for p in perms]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple(g[a[k]] for k in range(n))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > limit:
                        raise OutOfSpace(limit)
        frontier = nxt
    return len(seen)
