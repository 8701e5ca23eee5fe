"""Rotation paths and their lifts to unit quaternions; rings, sampled ring
motions and rotation numbers.

Rotations act on column vectors; ``R_x``, ``R_y``, ``R_z`` are counterclockwise.
A path segment about a fixed (space-frame) axis from angle ``a`` to ``b``
lifts to left multiplication by ``cos((b-a)/2) + sin((b-a)/2)·axis``.

>>> f_ell = RotationPath.chain([((0, 0, 1), 2 * math.pi)])
>>> pi1_class(f_ell)
-1
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DiscontinuousPath, NonIntegralWinding, NotALoop, ParseError

UNIT_TOL = 1e-9
LOOP_TOL = 1e-6


# ---------------------------------------------------------------------------
# quaternions


@dataclass(frozen=True)
class UnitQuaternion:
    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2)
        if abs(n - 1.0) > UNIT_TOL:
            raise ValueError(f"quaternion norm {n} is not 1")

    @classmethod
    def one(cls) -> UnitQuaternion:
        return cls(1.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_axis_angle(cls, axis: Sequence[float], angle: float) -> UnitQuaternion:
        ax = _unit(axis)
        s = math.sin(angle / 2)
        return cls(math.cos(angle / 2), s * ax[0], s * ax[1], s * ax[2])

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> UnitQuaternion:
        """One of the two quaternions of a rotation matrix (Shepperd's method)."""
        m = np.asarray(m, dtype=float)
        tr = m[0, 0] + m[1, 1] + m[2, 2]
        cands = [tr, m[0, 0], m[1, 1], m[2, 2]]
        k = int(np.argmax(cands))
        if k == 0:
            s = math.sqrt(1.0 + tr) * 2
            q = (0.25 * s, (m[2, 1] - m[1, 2]) / s, (m[0, 2] - m[2, 0]) / s, (m[1, 0] - m[0, 1]) / s)
        elif k == 1:
            s = math.sqrt(1.0 + m[0, 0] - m[1, 1] - m[2, 2]) * 2
            q = ((m[2, 1] - m[1, 2]) / s, 0.25 * s, (m[0, 1] + m[1, 0]) / s, (m[0, 2] + m[2, 0]) / s)
        elif k == 2:
            s = math.sqrt(1.0 + m[1, 1] - m[0, 0] - m[2, 2]) * 2
            q = ((m[0, 2] - m[2, 0]) / s, (m[0, 1] + m[1, 0]) / s, 0.25 * s, (m[1, 2] + m[2, 1]) / s)
        else:
            s = math.sqrt(1.0 + m[2, 2] - m[0, 0] - m[1, 1]) * 2
            q = ((m[1, 0] - m[0, 1]) / s, (m[0, 2] + m[2, 0]) / s, (m[1, 2] + m[2, 1]) / s, 0.25 * s)
        n = math.sqrt(sum(c * c for c in q))
        return cls(*(c / n for c in q))

    def __mul__(self, o: UnitQuaternion) -> UnitQuaternion:
        w1, x1, y1, z1 = self.components
        w2, x2, y2, z2 = o.components
        q = (
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )
        n = math.sqrt(sum(c * c for c in q))  # renormalize against drift
        return UnitQuaternion(*(c / n for c in q))

    def __neg__(self) -> UnitQuaternion:
        return UnitQuaternion(-self.w, -self.x, -self.y, -self.z)

    def conjugate(self) -> UnitQuaternion:
        return UnitQuaternion(self.w, -self.x, -self.y, -self.z)

    @property
    def components(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    def dot(self, o: UnitQuaternion) -> float:
        return sum(a * b for a, b in zip(self.components, o.components))

    def isclose(self, o: UnitQuaternion, tol: float = LOOP_TOL) -> bool:
        return all(abs(a - b) <= tol for a, b in zip(self.components, o.components))

    def same_rotation(self, o: UnitQuaternion, tol: float = LOOP_TOL) -> bool:
        return self.isclose(o, tol) or self.isclose(-o, tol)

    def to_matrix(self) -> np.ndarray:
        w, x, y, z = self.components
        return np.array([
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ])

    def __str__(self) -> str:
        return f"({self.w:.9g}, {self.x:.9g}, {self.y:.9g}, {self.z:.9g})"


def _unit(v: Sequence[float]) -> tuple[float, float, float]:
    a = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(a))
    if n == 0:
        raise ValueError("zero axis")
    return tuple(float(c) for c in a / n)


def rotation_matrix(axis: Sequence[float], angle: float) -> np.ndarray:
    return UnitQuaternion.from_axis_angle(axis, angle).to_matrix()


def R_x(phi: float) -> np.ndarray:
    return rotation_matrix((1, 0, 0), phi)


def R_y(phi: float) -> np.ndarray:
    return rotation_matrix((0, 1, 0), phi)


def R_z(phi: float) -> np.ndarray:
    return rotation_matrix((0, 0, 1), phi)


# ---------------------------------------------------------------------------
# rotation paths


@dataclass(frozen=True)
class Segment:
    """Rotations ``R_axis(theta) · pre`` for theta from ``start`` to ``end``."""

    axis: tuple[float, float, float]
    start: float
    end: float
    pre: UnitQuaternion = field(default_factory=UnitQuaternion.one)

    def __post_init__(self):
        if abs(math.sqrt(sum(c * c for c in self.axis)) - 1.0) > UNIT_TOL:
            raise ValueError(f"axis {self.axis} is not a unit vector")

    def at(self, theta: float) -> UnitQuaternion:
        return UnitQuaternion.from_axis_angle(self.axis, theta) * self.pre

    @property
    def first(self) -> UnitQuaternion:
        return self.at(self.start)

    @property
    def last(self) -> UnitQuaternion:
        return self.at(self.end)


@dataclass(frozen=True)
class RotationPath:
    """A path in SO(3) traversing its segments in order, one per equal share of [0, 1]."""

    segments: tuple[Segment, ...]

    @classmethod
    def chain(cls, steps: Iterable[tuple[Sequence[float], float]],
              start: UnitQuaternion | None = None) -> RotationPath:
        """Rotate by each ``angle`` about each space-frame ``axis`` in turn."""
        cur = start or UnitQuaternion.one()
        segs = []
        for axis, angle in steps:
            seg = Segment(_unit(axis), 0.0, float(angle), cur)
            segs.append(seg)
            cur = seg.last
        return cls(tuple(segs))

    @classmethod
    def constant(cls, at: UnitQuaternion | None = None) -> RotationPath:
        return cls((Segment((0.0, 0.0, 1.0), 0.0, 0.0, at or UnitQuaternion.one()),))

    def start_rotation(self) -> UnitQuaternion:
        return self.segments[0].first

    def end_rotation(self) -> UnitQuaternion:
        return self.segments[-1].last

    def then(self, other: RotationPath) -> RotationPath:
        """Concatenation; ``other`` is continued from this path's endpoint
        (right-translated so that it starts where this path ends)."""
        shift = other.start_rotation().conjugate() * self.end_rotation()
        moved = tuple(Segment(s.axis, s.start, s.end, s.pre * shift) for s in other.segments)
        return RotationPath(self.segments + moved)

    def __mul__(self, other: RotationPath) -> RotationPath:
        return self.then(other)

    def reverse(self) -> RotationPath:
        return RotationPath(tuple(Segment(s.axis, s.end, s.start, s.pre) for s in reversed(self.segments)))

    def check_continuous(self, tol: float = UNIT_TOL) -> None:
        for k in range(1, len(self.segments)):
            if not self.segments[k].first.same_rotation(self.segments[k - 1].last, tol):
                raise DiscontinuousPath(f"segment {k} does not start where segment {k - 1} ends")

    def sample(self, n: int) -> list[np.ndarray]:
        """Rotation matrices at ``n + 1`` equally spaced parameters."""
        out = []
        m = len(self.segments)
        for k in range(n + 1):
            t = k / n * m
            i = min(int(t), m - 1)
            u = t - i
            s = self.segments[i]
            out.append(s.at(s.start + u * (s.end - s.start)).to_matrix())
        return out


def lift_endpoint(p: RotationPath) -> UnitQuaternion:
    """Endpoint of the continuous lift of ``t -> p(t) p(0)^-1`` starting at ``+1``.

    >>> str(lift_endpoint(RotationPath.chain([((0, 1, 0), math.pi / 4), ((1, 0, 0), math.pi), ((0, 1, 0), -math.pi / 4)])))
    '(0, 0.707106781, 0, 0.707106781)'
    """
    p.check_continuous()
    q = UnitQuaternion.one()
    for s in p.segments:
        q = UnitQuaternion.from_axis_angle(s.axis, s.end - s.start) * q
    return _clean(q)


def _clean(q: UnitQuaternion) -> UnitQuaternion:
    return UnitQuaternion(*(0.0 if abs(c) < 1e-15 else c for c in q.components))


def pi1_class(p: RotationPath) -> int:
    """Class of a loop in pi_1(SO(3)) = {+1, -1}."""
    if not p.end_rotation().same_rotation(p.start_rotation()):
        raise NotALoop("path does not end at its starting rotation")
    q = lift_endpoint(p)
    if q.isclose(UnitQuaternion.one()):
        return 1
    if q.isclose(-UnitQuaternion.one()):
        return -1
    raise NotALoop(f"lift endpoint {q} is not +-1")


def lift_sampled(rotations: Sequence[np.ndarray]) -> UnitQuaternion:
    """Lift a sampled rotation path by choosing, at each sample, the
    quaternion sign closest to the previous one; returns ``q_end q_start^-1``."""
    q0 = UnitQuaternion.from_matrix(rotations[0])
    prev = q0
    for m in rotations[1:]:
        q = UnitQuaternion.from_matrix(m)
        prev = q if q.dot(prev) >= 0 else -q
    return prev * q0.conjugate()


def sampled_pi1_class(p: RotationPath, samples: int) -> int:
    q = lift_sampled(p.sample(samples))
    return 1 if q.w > 0 else -1


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class Ring:
    center: tuple[float, float, float]
    radius: float
    normal: tuple[float, float, float]

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("ring radius must be positive")
        if abs(math.sqrt(sum(c * c for c in self.normal)) - 1.0) > UNIT_TOL:
            raise ValueError(f"normal {self.normal} is not a unit vector")

    @classmethod
    def make(cls, center, radius, normal) -> Ring:
        return cls(tuple(float(c) for c in center), float(radius), _unit(normal))

    def transformed(self, rot: np.ndarray, shift: Sequence[float] = (0, 0, 0)) -> Ring:
        c = rot @ np.asarray(self.center) + np.asarray(shift, dtype=float)
        n = rot @ np.asarray(self.normal)
        return Ring.make(c, self.radius, n)

    def isclose(self, o: Ring, tol: float = LOOP_TOL, oriented: bool = False) -> bool:
        if any(abs(a - b) > tol for a, b in zip(self.center, o.center)):
            return False
        if abs(self.radius - o.radius) > tol:
            return False
        same = all(abs(a - b) <= tol for a, b in zip(self.normal, o.normal))
        flipped = all(abs(a + b) <= tol for a, b in zip(self.normal, o.normal))
        return same or (flipped and not oriented)

    def points(self, n: int) -> np.ndarray:
        nrm = np.asarray(self.normal)
        a = np.array([1.0, 0, 0]) if abs(nrm[0]) < 0.9 else np.array([0, 1.0, 0])
        u = a - a.dot(nrm) * nrm
        u /= np.linalg.norm(u)
        v = np.cross(nrm, u)
        t = np.linspace(0, 2 * np.pi, n, endpoint=False)[:, None]
        return np.asarray(self.center) + self.radius * (np.cos(t) * u + np.sin(t) * v)


def ring_distance(r1: Ring, r2: Ring, backend: str | None = None) -> float:
    """Minimum distance between two circles (dense sampling plus refinement).

    >>> round(ring_distance(Ring.make((0, 0, 0), 1, (0, 0, 1)), Ring.make((0, 0, 0), 3, (0, 0, 1))), 9)
    2.0
    """
    d = kernels.circle_distances([r1.center], [r1.radius], [r1.normal],
                                 [r2.center], [r2.radius], [r2.normal], backend=backend)
    return float(d[0])


# ---------------------------------------------------------------------------
# ring motions


@dataclass(frozen=True)
class RingMotion:
    """Samples ``frames[k][i]`` = ring of component ``i`` at time ``k/N``.

    ``closure[i] = j`` means component ``i`` ends where component ``j`` started.
    """

    name: str
    frames: tuple[tuple[Ring, ...], ...]
    closure: tuple[int, ...]
    labels: tuple[str, ...] = ()

    @property
    def num_components(self) -> int:
        return len(self.frames[0])

    @property
    def num_samples(self) -> int:
        return len(self.frames)

    def arrays(self):
        c = np.array([[r.center for r in f] for f in self.frames])
        rad = np.array([[r.radius for r in f] for f in self.frames])
        n = np.array([[r.normal for r in f] for f in self.frames])
        return c, rad, n


@dataclass
class MotionReport:
    name: str
    samples: int
    min_distance: float
    min_distance_at: int
    first_collision: int | None
    continuity_failures: list[str]
    closure_ok: bool
    enough_samples: bool
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.first_collision is None and not self.continuity_failures and self.closure_ok \
            and self.enough_samples


def validate_motion(m: RingMotion, *, delta: float = 0.25, clearance: float = 1e-6,
                    backend: str | None = None) -> MotionReport:
    """Disjointness at every sample, continuity bounds between consecutive
    samples and closure up to the closure permutation (normals up to sign)."""
    c, rad, n = m.arrays()
    nsamp, k = rad.shape
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    min_d, min_at, collision = math.inf, -1, None
    if pairs:
        ii = np.array([p[0] for p in pairs])
        jj = np.array([p[1] for p in pairs])
        d = kernels.circle_distances(
            c[:, ii].reshape(-1, 3), rad[:, ii].reshape(-1), n[:, ii].reshape(-1, 3),
            c[:, jj].reshape(-1, 3), rad[:, jj].reshape(-1), n[:, jj].reshape(-1, 3), backend=backend,
        ).reshape(nsamp, len(pairs))
        per_sample = d.min(axis=1)
        min_at = int(np.argmin(per_sample))
        min_d = float(per_sample[min_at])
        bad = np.nonzero(per_sample <= clearance)[0]
        collision = int(bad[0]) if len(bad) else None
    failures = []
    step = np.linalg.norm(np.diff(c, axis=0), axis=2)
    ratio = rad[1:] / rad[:-1]
    cosang = np.clip(np.abs(np.sum(n[1:] * n[:-1], axis=2)), 0.0, 1.0)
    ang = np.arccos(cosang)
    for name, mask in (("center step", step > delta), ("radius ratio", (ratio < 0.5) | (ratio > 2.0)),
                       ("normal angle", ang > math.pi / 4 + 1e-12)):
        idx = np.argwhere(mask)
        if len(idx):
            s, comp = idx[0]
            failures.append(f"{name} bound exceeded between samples {s} and {s + 1} (component {comp})")
    closure_ok = sorted(m.closure) == list(range(k)) and all(
        m.frames[-1][i].isclose(m.frames[0][j]) for i, j in enumerate(m.closure)
    )
    return MotionReport(m.name, nsamp, min_d, min_at, collision, failures, closure_ok, nsamp - 1 >= 8)


# ---------------------------------------------------------------------------
# normal motions and rotation numbers


@dataclass(frozen=True)
class NormalRingMotion:
    """``L_t = R_z(2 pi phi(t))(H2)`` sampled at uniform times."""

    phi: tuple[float, ...]

    @classmethod
    def from_function(cls, f: Callable[[float], float], samples: int = 64) -> NormalRingMotion:
        return cls(tuple(float(f(k / samples)) for k in range(samples + 1)))

    def then(self, other: NormalRingMotion) -> NormalRingMotion:
        off = self.phi[-1] - other.phi[0]
        return NormalRingMotion(self.phi + tuple(p + off for p in other.phi[1:]))

    def winding(self) -> float:
        return self.phi[-1] - self.phi[0]

    def to_ring_motion(self) -> RingMotion:
        h1 = HOPF_H1
        frames = tuple((h1, HOPF_H2.transformed(R_z(2 * math.pi * p))) for p in self.phi)
        return RingMotion("normal", frames, (0, 1), ("H1", "H2"))


def rotation_number(m: NormalRingMotion) -> int:
    """``phi(1) - phi(0)``, which must be an integer within 1e-6.

    >>> rotation_number(NormalRingMotion.from_function(lambda t: -2 * t))
    -2
    """
    w = m.winding()
    k = round(w)
    if abs(w - k) > LOOP_TOL:
        raise NonIntegralWinding(f"winding {w} is not an integer")
    return int(k)


# ---------------------------------------------------------------------------
# builtin motions of the Hopf link plus a ring

HOPF_H1 = Ring.make((0, 0, 0), 1, (0, 0, 1))
HOPF_H2 = Ring.make((0, 1, 0), 1, (1, 0, 0))
RING_C = Ring.make((0, 5, 0), 1, (0, 0, 1))
BASE = (HOPF_H1, HOPF_H2, RING_C)
LABELS = ("H1", "H2", "C")
BUILTIN_MOTIONS = ("tau_C", "tau_H", "ell", "s", "g_a", "g_b", "eps_C")
DEFAULT_SAMPLES = 256

State = tuple[Ring, ...]
Leg = Callable[[State, float], State]


def _rotate(axis, angle, comps, about=(0, 0, 0)) -> Leg:
    about = np.asarray(about, dtype=float)

    def leg(state: State, u: float) -> State:
        rot = rotation_matrix(axis, u * angle)
        return tuple(
            r.transformed(rot, about - rot @ about) if i in comps else r for i, r in enumerate(state)
        )

    return leg


def _translate(vec, comps) -> Leg:
    vec = np.asarray(vec, dtype=float)

    def leg(state: State, u: float) -> State:
        return tuple(r.transformed(np.eye(3), u * vec) if i in comps else r for i, r in enumerate(state))

    return leg


def _morph(comp: int, center=None, radius=None, normal=None) -> Leg:
    """Move one component linearly to a new center / radius, turning its normal along a great circle."""

    def leg(state: State, u: float) -> State:
        r = state[comp]
        c0 = np.asarray(r.center)
        c1 = np.asarray(center, dtype=float) if center is not None else c0
        r1 = radius if radius is not None else r.radius
        n0 = np.asarray(r.normal)
        n1 = np.asarray(_unit(normal)) if normal is not None else n0
        ang = math.acos(max(-1.0, min(1.0, float(n0 @ n1))))
        if ang > 1e-12:
            axis = np.cross(n0, n1)
            n = rotation_matrix(axis, u * ang) @ n0
        else:
            n = n0
        new = Ring.make(c0 + u * (c1 - c0), r.radius * (r1 / r.radius) ** u, n)
        return tuple(new if i == comp else x for i, x in enumerate(state))

    return leg


def _run(name: str, legs: Sequence[Leg], closure: tuple[int, ...], samples: int) -> RingMotion:
    starts = [BASE]
    for leg in legs:
        starts.append(leg(starts[-1], 1.0))
    frames = []
    m = len(legs)
    for k in range(samples + 1):
        t = k / samples * m
        i = min(int(t), m - 1)
        frames.append(legs[i](starts[i], t - i))
    return RingMotion(name, tuple(frames), closure, LABELS)


def builtin_motion(name: str, samples: int = DEFAULT_SAMPLES) -> RingMotion:
    """Sampled motion of ``(H1, H2, C)`` for one of :data:`BUILTIN_MOTIONS`."""
    H, C = (0, 1), (2,)
    q = math.pi / 4
    if name == "tau_C":
        legs = [_rotate((0, 1, 0), math.pi, C)]
    elif name == "tau_H":
        legs = [_rotate((0, 1, 0), math.pi, H)]
    elif name == "ell":
        legs = [_rotate((0, 0, 1), 2 * math.pi, (1,))]
    elif name == "s":
        legs = [_translate((0, -0.5, 0), H), _rotate((0, 1, 0), q, H), _rotate((1, 0, 0), math.pi, H),
                _rotate((0, 1, 0), -q, H), _translate((0, 0.5, 0), H)]
        return _run(name, legs, (1, 0, 2), samples)
    elif name == "g_a":
        legs = [_morph(2, radius=0.25), _morph(2, center=(-0.55, 5, 2)), _morph(2, center=(-0.55, 0, 2)),
                _morph(2, center=(-0.55, 0, -2)), _morph(2, center=(-0.55, 5, -2)),
                _morph(2, center=(0, 5, 0)), _morph(2, radius=1)]
    elif name == "g_b":
        legs = [_morph(2, radius=0.25), _morph(2, normal=(1, 0, 0)), _morph(2, center=(2, 5, 0.55)),
                _morph(2, center=(2, 1, 0.55)), _morph(2, center=(-2, 1, 0.55)), _morph(2, center=(-2, 5, 0.55)),
                _morph(2, center=(0, 5, 0)), _morph(2, normal=(0, 0, 1)), _morph(2, radius=1)]
    elif name == "eps_C":
        legs = [_morph(2, center=(0, 5, 3)), _morph(2, radius=4), _morph(2, center=(0, 0.5, 3)),
                _morph(2, center=(0, 0.5, -3)), _morph(2, center=(0, 5, -3)), _morph(2, radius=1),
                _morph(2, center=(0, 5, 0))]
    else:
        raise ValueError(f"unknown motion {name!r}; expected one of {BUILTIN_MOTIONS}")
    return _run(name, legs, (0, 1, 2), samples)


def s_rotation_path() -> RotationPath:
    return RotationPath.chain([((0, 1, 0), math.pi / 4), ((1, 0, 0), math.pi), ((0, 1, 0), -math.pi / 4)])


def s_alternative_rotation_path() -> RotationPath:
    return RotationPath.chain([((1, 0, 0), math.pi), ((0, 1, 0), -math.pi / 2)])


# ---------------------------------------------------------------------------
# .mot files


def serialize_motion(m: RingMotion) -> str:
    lines = [f"motion {m.name} components {m.num_components} samples {m.num_samples}"]
    for frame in m.frames:
        for r in frame:
            vals = (*r.center, r.radius, *r.normal)
            lines.append("ring " + " ".join(f"{v:.12g}" for v in vals))
    lines.append("closes " + " ".join(str(j + 1) for j in m.closure))
    return "\n".join(lines) + "\n"


def parse_motion(text: str) -> RingMotion:
    """Parse a ``.mot`` file; ``samples`` counts sample times, ``closes`` is 1-based."""
    header = None
    rings: list[Ring] = []
    closure = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "motion":
            if len(parts) != 6 or parts[2] != "components" or parts[4] != "samples" \
                    or not parts[3].isdigit() or not parts[5].isdigit():
                raise ParseError("expected 'motion <name> components <k> samples <N>'", lineno, 1)
            header = (parts[1], int(parts[3]), int(parts[5]))
        elif parts[0] == "ring":
            if header is None:
                raise ParseError("'ring' before 'motion'", lineno, 1, ("'motion'",))
            try:
                vals = [float(v) for v in parts[1:]]
            except ValueError:
                raise ParseError("ring fields must be numbers", lineno, 6, ("number",)) from None
            if len(vals) != 7:
                raise ParseError("expected 7 numbers: cx cy cz r nx ny nz", lineno, 6, ("number",))
            try:
                rings.append(Ring.make(vals[:3], vals[3], vals[4:]))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 6) from None
        elif parts[0] == "closes":
            try:
                closure = tuple(int(v) - 1 for v in parts[1:])
            except ValueError:
                raise ParseError("closure must list integers", lineno, 8, ("integer",)) from None
        else:
            raise ParseError(f"unknown directive {parts[0]!r}", lineno, 1, ("'motion'", "'ring'", "'closes'"))
    if header is None:
        raise ParseError("missing 'motion' line", 1, 1, ("'motion'",))
    name, k, n = header
    if len(rings) != k * n:
        raise ParseError(f"expected {k * n} ring lines, found {len(rings)}", 1, 1)
    if closure is None or len(closure) != k:
        raise ParseError(f"expected 'closes' with {k} entries", 1, 1, ("'closes'",))
    frames = tuple(tuple(rings[s * k:(s + 1) * k]) for s in range(n))
    return RingMotion(name, frames, closure)


def load_motion(path: str | Path) -> RingMotion:
    return parse_motion(Path(path).read_text(encoding="utf-8"))
