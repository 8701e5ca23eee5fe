"""Loop form of the circle distance kernel, compiled by numba.

The numpy fallback in :mod:`ringgroups.kernels` computes the same thing
vectorised.  Loaded with ``_JIT`` injected, like :mod:`ringgroups._hlt`.
"""

import math

import numpy as np

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _identity(fn):
    return fn


_jit = globals().get("_JIT") or _identity


@_jit
def point_circle(px, py, pz, cx, cy, cz, r, nx, ny, nz):
    dx = px - cx
    dy = py - cy
    dz = pz - cz
    h = dx * nx + dy * ny + dz * nz
    qx = dx - h * nx
    qy = dy - h * ny
    qz = dz - h * nz
    q = math.sqrt(qx * qx + qy * qy + qz * qz)
    return math.sqrt(h * h + (q - r) * (q - r))


@_jit
def basis(nx, ny, nz):
    if abs(nx) < 0.9:
        ax, ay, az = 1.0, 0.0, 0.0
    else:
        ax, ay, az = 0.0, 1.0, 0.0
    d = ax * nx + ay * ny + az * nz
    ux = ax - d * nx
    uy = ay - d * ny
    uz = az - d * nz
    un = math.sqrt(ux * ux + uy * uy + uz * uz)
    ux /= un
    uy /= un
    uz /= un
    vx = ny * uz - nz * uy
    vy = nz * ux - nx * uz
    vz = nx * uy - ny * ux
    return ux, uy, uz, vx, vy, vz


@_jit
def one_sided(c1, r1, n1, c2, r2, n2, samples, iters, refine):
    ux, uy, uz, vx, vy, vz = basis(n1[0], n1[1], n1[2])
    step = 2.0 * math.pi / samples
    vals = np.empty(samples)
    for k in range(samples):
        t = k * step
        ct = math.cos(t)
        st = math.sin(t)
        vals[k] = point_circle(c1[0] + r1 * (ct * ux + st * vx), c1[1] + r1 * (ct * uy + st * vy),
                               c1[2] + r1 * (ct * uz + st * vz), c2[0], c2[1], c2[2], r2, n2[0], n2[1], n2[2])
    best = vals.min()
    # candidates: sampled local minima (strict on the left so plateaus
    # contribute few), the ``refine`` lowest of which get golden-section search
    cand = np.empty(samples, dtype=np.int64)
    nc = 0
    for k in range(samples):
        prev = vals[(k - 1) % samples]
        nxt = vals[(k + 1) % samples]
        if vals[k] < prev and vals[k] <= nxt:
            cand[nc] = k
            nc += 1
    if nc == 0:
        return best
    order = np.argsort(vals[cand[:nc]], kind="mergesort")
    for c in range(min(nc, refine)):
        k = cand[order[c]]
        lo = (k - 1) * step
        hi = (k + 1) * step
        for _ in range(iters):
            m1 = hi - GOLDEN * (hi - lo)
            m2 = lo + GOLDEN * (hi - lo)
            f1 = point_circle(c1[0] + r1 * (math.cos(m1) * ux + math.sin(m1) * vx),
                              c1[1] + r1 * (math.cos(m1) * uy + math.sin(m1) * vy),
                              c1[2] + r1 * (math.cos(m1) * uz + math.sin(m1) * vz),
                              c2[0], c2[1], c2[2], r2, n2[0], n2[1], n2[2])
            f2 = point_circle(c1[0] + r1 * (math.cos(m2) * ux + math.sin(m2) * vx),
                              c1[1] + r1 * (math.cos(m2) * uy + math.sin(m2) * vy),
                              c1[2] + r1 * (math.cos(m2) * uz + math.sin(m2) * vz),
                              c2[0], c2[1], c2[2], r2, n2[0], n2[1], n2[2])
            if f1 < f2:
                hi = m2
                if f1 < best:
                    best = f1
            else:
                lo = m1
                if f2 < best:
                    best = f2
    return best


@_jit
def batch(c1, r1, n1, c2, r2, n2, samples, iters, refine, out):
    for b in range(out.shape[0]):
        d1 = one_sided(c1[b], r1[b], n1[b], c2[b], r2[b], n2[b], samples, iters, refine)
        d2 = one_sided(c2[b], r2[b], n2[b], c1[b], r1[b], n1[b], samples, iters, refine)
        out[b] = d1 if d1 < d2 else d2
