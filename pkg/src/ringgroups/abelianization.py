"""Smith normal form over the integers and abelianization invariants.

>>> from ringgroups.presentation import Presentation
>>> str(abelianization(Presentation.from_strings("B", "t s", ["t^4", "s^2 = t^2", "s t s^-1 = t"])))
'Z/2 + Z/4'
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .presentation import Presentation


@dataclass(frozen=True)
class IntMatrix:
    """Dense matrix of Python ints (exact)."""

    entries: tuple[tuple[int, ...], ...]
    cols: int

    def __init__(self, entries: Sequence[Sequence[int]], cols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in entries)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("matrix is not rectangular")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "cols", cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, r: int, c: int) -> IntMatrix:
        return cls([[0] * c for _ in range(r)], c)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols_t = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols_t] for r in self.entries], other.cols)

    def transpose(self) -> IntMatrix:
        return IntMatrix([list(c) for c in zip(*self.entries)] if self.rows else [], self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def is_diagonal(self) -> bool:
        return all(v == 0 for i, r in enumerate(self.entries) for j, v in enumerate(r) if i != j)

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(d, u, v)`` with ``u @ m @ v == d`` and ``u``, ``v`` unimodular.

    The diagonal of ``d`` is nonnegative and each entry divides the next.

    >>> d, u, v = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
    >>> d.diagonal(), (u @ IntMatrix([[2, 4], [6, 8]]) @ v) == d
    ([2, 4], True)
    """
    a = m.tolist()
    nr, nc = m.rows, m.cols
    u = IntMatrix.identity(nr).tolist()
    v = IntMatrix.identity(nc).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for r in a:
            r[dst] -= q * r[src]
        for r in v:
            r[dst] -= q * r[src]

    for t in range(min(nr, nc)):
        while True:
            pivot = None
            for i in range(t, nr):
                for j in range(t, nc):
                    x = abs(a[i][j])
                    if x and (pivot is None or x < pivot[0]):
                        pivot = (x, i, j)
            if pivot is None:
                break
            _, i, j = pivot
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    add_row(i, t, q)
                dirty |= a[i][t] != 0
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    add_col(j, t, q)
                dirty |= a[t][j] != 0
            if dirty:
                continue
            # divisibility: fold a row whose entries p does not divide into row t
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if nr > t and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return IntMatrix(a, nc), IntMatrix(u, nr), IntMatrix(v, nc)


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z^free_rank + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk`` and each ``di > 1``."""

    torsion: tuple[int, ...]
    free_rank: int

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def order(self) -> int | None:
        """Group order, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out


def relation_matrix(p: Presentation) -> IntMatrix:
    """Exponent-sum rows, one per relator, columns in generator order."""
    idx = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for g, e in r.letters:
            row[idx[g]] += e
        rows.append(row)
    return IntMatrix(rows, len(p.generators))


def invariants_from_matrix(m: IntMatrix) -> AbelianInvariants:
    d, _, _ = smith_normal_form(m)
    diag = d.diagonal()
    rank = sum(1 for x in diag if x)
    return AbelianInvariants(tuple(x for x in diag if x > 1), m.cols - rank)


def abelianization(p: Presentation) -> AbelianInvariants:
    return invariants_from_matrix(relation_matrix(p))
