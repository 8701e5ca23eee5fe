"""Hot loops: HLT coset enumeration and circle-to-circle distances.

Both kernels exist as a numba-compiled path and a pure Python/numpy path.
``backend`` arguments take ``"numba"``, ``"python"`` or ``None`` for the
default picked by :mod:`ringgroups._accel` (env ``RINGGROUPS_NUMBA``).
"""

from __future__ import annotations

import importlib.util
import sys
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import _accel
from . import _hlt as _hlt_py
from ._circles import GOLDEN

COMPLETE = 0
NO_SPACE = 1


@lru_cache(maxsize=None)
def _compiled(module: str):
    """Load a kernel source module a second time with numba.njit injected."""
    path = Path(__file__).with_name(f"{module}.py")
    spec = importlib.util.spec_from_file_location(f"ringgroups.{module}_jit", path)
    mod = importlib.util.module_from_spec(spec)
    mod.__dict__["_JIT"] = _accel.jit
    sys.modules[spec.name] = mod  # numba's cache re-imports the module by name
    spec.loader.exec_module(mod)
    return mod


def _flatten(words: list[list[int]]):
    flat, start, length = [], [], []
    for w in words:
        start.append(len(flat))
        length.append(len(w))
        flat.extend(w)
    return flat, start, length


def run_hlt(ngens: int, relators: list[list[int]], subgroup: list[list[int]], max_cosets: int,
            backend: str | None = None) -> tuple[int, list[list[int]]]:
    """Enumerate cosets.  Words are lists of columns ``2*g`` (g) / ``2*g+1`` (g^-1).

    Returns ``(status, rows)`` where ``rows`` lists the live coset rows,
    coset 0 being the subgroup.
    """
    backend = _accel.resolve_backend(backend)
    ncols = 2 * ngens
    inv = [c ^ 1 for c in range(ncols)]
    rel_flat, rel_start, rel_len = _flatten(relators)
    sub_flat, sub_start, sub_len = _flatten(subgroup)
    size = max_cosets * ncols
    if backend == "numba":
        i64 = np.int64

        def arr(xs):
            return np.asarray(xs, dtype=i64).reshape(-1)

        table = np.full(max(size, 1), -1, dtype=i64)
        parent = np.arange(max_cosets, dtype=i64)
        queue = np.zeros(max_cosets, dtype=i64)
        scratch = np.zeros(max_cosets, dtype=i64)
        counters = np.zeros(1, dtype=i64)
        qstate = np.zeros(2, dtype=i64)
        status = _compiled("_hlt").hlt(table, parent, queue, scratch, ncols, arr(inv), arr(rel_flat),
                                       arr(rel_start), arr(rel_len), arr(sub_flat), arr(sub_start),
                                       arr(sub_len), max_cosets, counters, qstate)
        n = int(counters[0])
        rows = table[: n * ncols].reshape(n, ncols).tolist() if ncols else [[] for _ in range(n)]
    else:
        table = [-1] * size
        parent = list(range(max_cosets))
        queue = [0] * max_cosets
        scratch = [0] * max_cosets
        counters = [0]
        status = _hlt_py.hlt(table, parent, queue, scratch, ncols, inv, rel_flat, rel_start, rel_len,
                             sub_flat, sub_start, sub_len, max_cosets, counters, [0, 0])
        n = counters[0]
        rows = [table[k * ncols:(k + 1) * ncols] for k in range(n)]
    return int(status), rows


# ---------------------------------------------------------------------------
# circle distances (numpy path; the loop path lives in _circles.py)


def _basis_np(n):
    a = np.where(np.abs(n[:, :1]) < 0.9, np.array([[1.0, 0.0, 0.0]]), np.array([[0.0, 1.0, 0.0]]))
    u = a - np.sum(a * n, axis=1, keepdims=True) * n
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    v = np.cross(n, u)
    return u, v


def _point_circle_np(p, c, r, n):
    d = p - c
    h = np.sum(d * n, axis=-1)
    q = np.linalg.norm(d - h[..., None] * n, axis=-1)
    return np.sqrt(h * h + (q - r) ** 2)


def _one_sided_np(c1, r1, n1, c2, r2, n2, samples, iters, refine):
    u, v = _basis_np(n1)
    step = 2.0 * np.pi / samples
    theta = np.arange(samples) * step

    def points(rows, t):
        return c1[rows] + r1[rows, None] * (np.cos(t)[..., None] * u[rows] + np.sin(t)[..., None] * v[rows])

    rows = np.arange(len(r1))
    pts = points(rows[:, None], theta[None, :])
    vals = _point_circle_np(pts, c2[:, None, :], r2[:, None], n2[:, None, :])
    best = vals.min(axis=1)
    local = (vals < np.roll(vals, 1, axis=1)) & (vals <= np.roll(vals, -1, axis=1))
    masked = np.where(local, vals, np.inf)
    # the ``refine`` lowest local minima per row, ties to the lower index
    ranked = np.argsort(masked, axis=1, kind="stable")[:, :refine]
    keep = np.isfinite(np.take_along_axis(masked, ranked, axis=1))
    bi = np.broadcast_to(rows[:, None], ranked.shape)[keep]
    ki = ranked[keep]
    lo = (ki - 1) * step
    hi = (ki + 1) * step
    cand = np.full(len(bi), np.inf)
    for _ in range(iters):
        m1 = hi - GOLDEN * (hi - lo)
        m2 = lo + GOLDEN * (hi - lo)
        f1 = _point_circle_np(points(bi, m1), c2[bi], r2[bi], n2[bi])
        f2 = _point_circle_np(points(bi, m2), c2[bi], r2[bi], n2[bi])
        left = f1 < f2
        hi = np.where(left, m2, hi)
        lo = np.where(left, lo, m1)
        cand = np.minimum(cand, np.where(left, f1, f2))
    np.minimum.at(best, bi, cand)
    return best


def circle_distances(c1, r1, n1, c2, r2, n2, samples: int = 256, iters: int = 60, refine: int = 8,
                     backend: str | None = None) -> np.ndarray:
    """Minimum distance between circle pairs, batched over the leading axis.

    Centers and unit normals have shape (B, 3), radii shape (B,).  Each
    circle is sampled at ``samples`` points against the exact
    point-to-circle distance of the other; the ``refine`` lowest sampled
    local minima are refined by golden-section search over a bracket of two
    sample spacings (60 steps take it below 1e-10).  The distance profile of
    two circles has only a handful of true local minima, so the cap only
    bites on (near-)flat profiles, where the sampled value is already exact.
    """
    backend = _accel.resolve_backend(backend)
    c1, n1, c2, n2 = (np.ascontiguousarray(np.atleast_2d(x), dtype=np.float64) for x in (c1, n1, c2, n2))
    r1, r2 = (np.ascontiguousarray(np.atleast_1d(x), dtype=np.float64) for x in (r1, r2))
    if backend == "numba":
        out = np.empty(len(r1))
        _compiled("_circles").batch(c1, r1, n1, c2, r2, n2, samples, iters, refine, out)
        return out
    d1 = _one_sided_np(c1, r1, n1, c2, r2, n2, samples, iters, refine)
    d2 = _one_sided_np(c2, r2, n2, c1, r1, n1, samples, iters, refine)
    return np.minimum(d1, d2)
