"""HLT coset enumeration over flat integer buffers.

This module is imported twice by :mod:`ringgroups.kernels`: once as plain
Python and once with ``_JIT`` injected as ``numba.njit``.  Buffers are
Python lists on the first path and int64 arrays on the second.

Columns: generator ``g`` is column ``2*g``, its inverse ``2*g+1``.
"""


def _identity(fn):
    return fn


_jit = globals().get("_JIT") or _identity


@_jit
def rep(parent, k):
    r = k
    while parent[r] != r:
        r = parent[r]
    while parent[k] != r:
        nxt = parent[k]
        parent[k] = r
        k = nxt
    return r


@_jit
def merge(parent, queue, qstate, a, b):
    ra = rep(parent, a)
    rb = rep(parent, b)
    if ra == rb:
        return
    if ra > rb:
        ra, rb = rb, ra
    parent[rb] = ra
    queue[qstate[1]] = rb
    qstate[1] += 1


@_jit
def coincidence(table, parent, queue, qstate, ncols, inv, a, b):
    qstate[0] = 0
    qstate[1] = 0
    merge(parent, queue, qstate, a, b)
    while qstate[0] < qstate[1]:
        g = queue[qstate[0]]
        qstate[0] += 1
        for x in range(ncols):
            d = table[g * ncols + x]
            if d >= 0:
                xi = inv[x]
                table[d * ncols + xi] = -1
                mu = rep(parent, g)
                nu = rep(parent, d)
                mx = table[mu * ncols + x]
                if mx >= 0:
                    merge(parent, queue, qstate, nu, mx)
                else:
                    nxi = table[nu * ncols + xi]
                    if nxi >= 0:
                        merge(parent, queue, qstate, mu, nxi)
                    else:
                        table[mu * ncols + x] = nu
                        table[nu * ncols + xi] = mu


@_jit
def scan(table, parent, queue, qstate, ncols, inv, word, start, length, a, fill, counters, max_cosets):
    # returns 0 when the scan finished, 1 when a definition ran out of space
    f = a
    b = a
    i = start
    j = start + length - 1
    while True:
        while i <= j:
            nf = table[f * ncols + word[i]]
            if nf < 0:
                break
            f = nf
            i += 1
        if i > j:
            if f != b:
                coincidence(table, parent, queue, qstate, ncols, inv, f, b)
            return 0
        while j >= i:
            nb = table[b * ncols + inv[word[j]]]
            if nb < 0:
                break
            b = nb
            j -= 1
        if j < i:
            coincidence(table, parent, queue, qstate, ncols, inv, f, b)
            return 0
        if i == j:
            table[f * ncols + word[i]] = b
            table[b * ncols + inv[word[i]]] = f
            return 0
        if not fill:
            return 0
        n = counters[0]
        if n >= max_cosets:
            return 1
        parent[n] = n
        table[f * ncols + word[i]] = n
        table[n * ncols + inv[word[i]]] = f
        counters[0] = n + 1


@_jit
def compact(table, parent, scratch, ncols, counters):
    n = counters[0]
    cnt = 0
    for k in range(n):
        if parent[k] == k:
            scratch[k] = cnt
            cnt += 1
        else:
            scratch[k] = -1
    for k in range(n):
        if parent[k] == k:
            nk = scratch[k]
            for x in range(ncols):
                v = table[k * ncols + x]
                if v >= 0:
                    table[nk * ncols + x] = scratch[rep(parent, v)]
                else:
                    table[nk * ncols + x] = -1
    for k in range(cnt, n):
        for x in range(ncols):
            table[k * ncols + x] = -1
    for k in range(cnt):
        parent[k] = k
    counters[0] = cnt
    return cnt


@_jit
def lookahead(table, parent, queue, qstate, ncols, inv, rel_flat, rel_start, rel_len, counters, max_cosets):
    nrel = len(rel_start)
    for beta in range(counters[0]):
        for r in range(nrel):
            if parent[beta] != beta:
                break
            scan(table, parent, queue, qstate, ncols, inv, rel_flat, rel_start[r], rel_len[r],
                 beta, False, counters, max_cosets)


@_jit
def hlt(table, parent, queue, scratch, ncols, inv, rel_flat, rel_start, rel_len,
        sub_flat, sub_start, sub_len, max_cosets, counters, qstate):
    """HLT enumeration with lookahead.  ``counters[0]`` is the number of
    allocated cosets on return; the return value is COMPLETE or NO_SPACE."""
    parent[0] = 0
    counters[0] = 1
    nrel = len(rel_start)
    nsub = len(sub_start)
    # subgroup generators at the base coset
    s = 0
    while s < nsub:
        status = scan(table, parent, queue, qstate, ncols, inv, sub_flat, sub_start[s], sub_len[s],
                      0, True, counters, max_cosets)
        if status == 1:
            before = counters[0]
            lookahead(table, parent, queue, qstate, ncols, inv, rel_flat, rel_start, rel_len, counters, max_cosets)
            if compact(table, parent, scratch, ncols, counters) == before:
                return 1
            continue
        s += 1
    a = 0
    while a < counters[0]:
        if parent[a] != a:
            a += 1
            continue
        failed = False
        for r in range(nrel):
            status = scan(table, parent, queue, qstate, ncols, inv, rel_flat, rel_start[r], rel_len[r],
                          a, True, counters, max_cosets)
            if status == 1:
                failed = True
                break
            if parent[a] != a:
                break
        if not failed and parent[a] == a:
            for x in range(ncols):
                if table[a * ncols + x] < 0:
                    n = counters[0]
                    if n >= max_cosets:
                        failed = True
                        break
                    parent[n] = n
                    table[a * ncols + x] = n
                    table[n * ncols + inv[x]] = a
                    counters[0] = n + 1
        if failed:
            before = counters[0]
            lookahead(table, parent, queue, qstate, ncols, inv, rel_flat, rel_start, rel_len, counters, max_cosets)
            live_below = 0
            for k in range(a):
                if parent[k] == k:
                    live_below += 1
            if compact(table, parent, scratch, ncols, counters) == before:
                return 1
            a = live_below
            continue
        a += 1
    compact(table, parent, scratch, ncols, counters)
    return 0
