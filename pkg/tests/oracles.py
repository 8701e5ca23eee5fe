"""Slow, simple reference computations used to cross-check the library."""

from fractions import Fraction
from itertools import combinations
from math import gcd


def det(rows):
    """Exact determinant by fraction-valued Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return int(out)


def det_int(rows):
    """Fraction-free (Bareiss) determinant."""
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for r in range(c + 1, n):
            for k in range(c + 1, n):
                m[r][k] = (m[r][k] * m[c][c] - m[r][c] * m[c][k]) // prev
        prev = m[c][c]
    return sign * m[-1][-1] if n else 1


def determinant_divisors(rows, ncols):
    """Invariant factors via gcds of k x k minors; returns (nonzero factors, rank)."""
    # duplicate and zero rows add no new nonzero minors
    rows = [list(r) for r in dict.fromkeys(tuple(r) for r in rows) if any(r)]
    divisors = [1]
    for k in range(1, min(len(rows), ncols) + 1):
        g = 0
        for rs in combinations(range(len(rows)), k):
            for cs in combinations(range(ncols), k):
                g = gcd(g, det_int([[rows[r][c] for c in cs] for r in rs]))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        divisors.append(g)
    factors = [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]
    return factors, len(factors)


def compose(p, q):
    """Permutation ``x -> q[p[x]]`` (apply p first)."""
    return tuple(q[i] for i in p)


def inverse(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def closure(gens, identity):
    seen = {identity}
    todo = [identity]
    while todo:
        a = todo.pop()
        for g in gens:
            b = compose(a, g)
            if b not in seen:
                seen.add(b)
                todo.append(b)
    return seen


def abelian_counts(perms):
    """For the permutation group generated by ``perms``, the number of cosets
    of the derived subgroup killed by k, for each k up to |G/G'|."""
    ident = tuple(range(len(perms[0])))
    group = closure(perms, ident)
    comms = {compose(compose(compose(x, y), inverse(x)), inverse(y)) for x in group for y in group}
    derived = closure(list(comms), ident)
    cosets = {}
    for g in group:
        key = min(compose(g, d) for d in derived)
        cosets[key] = g
    q = len(cosets)
    counts = []
    for k in range(1, q + 1):
        n = 0
        for g in cosets.values():
            p = ident
            for _ in range(k):
                p = compose(p, g)
            n += p in derived
        counts.append(n)
    return q, counts
