"""The self-check suite behind ``ringgroups verify-paper``.

Every check has a stable id ``<group>.<name>``, an anchor naming the result
it exercises, and returns pass/fail with a one-line detail.  Checks read
their presentations from a corpus directory so that a corrupted corpus
shows up as failures.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Iterable

from . import homomorphism as hm
from .abelianization import IntMatrix, abelianization, smith_normal_form
from .corpus_files import CORPUS_DIR
from .errors import RingGroupsError
from .extension import assemble, load_extension
from .presentation import Presentation, _cyclic_class_key, load_presentation, simplify
from .rotations import (
    BUILTIN_MOTIONS,
    NormalRingMotion,
    RotationPath,
    builtin_motion,
    lift_endpoint,
    pi1_class,
    rotation_number,
    s_rotation_path,
    validate_motion,
)
from .todd_coxeter import element_order, enumerate_cosets, group_order, quotient_by
from .words import GroupSpec, Word, normal_form

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class CheckReport:
    id: str
    status: str
    details: str
    anchor: str


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    run: Callable[["Context"], tuple[bool, str]]


class Context:
    def __init__(self, corpus: str | Path | None = None, max_cosets: int = 10_000, seed: int = 20240):
        self.corpus = Path(corpus or CORPUS_DIR)
        self.max_cosets = max_cosets
        self.seed = seed
        self._fixtures = None

    def group(self, name: str) -> Presentation:
        return load_presentation(self.corpus / f"{name}.grp")

    def fixtures(self) -> dict:
        if self._fixtures is None:
            self._fixtures = json.loads((self.corpus / "fixtures.json").read_text(encoding="utf-8"))
        return self._fixtures

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


# ---------------------------------------------------------------------------
# exact quaternion units: an oracle independent of coset enumeration

Quat = tuple[int, int, int, int]
Q_ONE: Quat = (1, 0, 0, 0)
Q_I: Quat = (0, 1, 0, 0)
Q_J: Quat = (0, 0, 1, 0)


def qmul(a: Quat, b: Quat) -> Quat:
    w1, x1, y1, z1 = a
    w2, x2, y2, z2 = b
    return (w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2, w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2, w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2)


def qinv(a: Quat) -> Quat:
    return (a[0], -a[1], -a[2], -a[3])


def q_eval(w: Word, images: dict[str, Quat]) -> Quat:
    out = Q_ONE
    for g, e in w.letters:
        base = images[g] if e > 0 else qinv(images[g])
        for _ in range(abs(e)):
            out = qmul(out, base)
    return out


def q_closure(gens: Iterable[Quat]) -> set[Quat]:
    gens = list(gens)
    seen = {Q_ONE}
    frontier = [Q_ONE]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = qmul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# checks


def _loop_braid(n: int):
    def run(ctx: Context):
        conv = ctx.fixtures()["loop_braid_convention"]
        results = hm.verify_loop_braid(n, conv)
        bad = [r.label for r in results if not r.ok]
        return not bad, f"{len(results) - len(bad)}/{len(results)} relators compose to id ({conv})" + (
            f"; failing: {', '.join(bad[:5])}" if bad else "")
    return run


def _convention(ctx: Context):
    conv, tried = hm.pin_convention(range(2, 7))
    recorded = ctx.fixtures()["loop_braid_convention"]
    summary = ", ".join(f"{c}: {sum(r.ok for r in rs)}/{len(rs)}" for c, rs in tried.items())
    return conv == recorded, f"pinned {conv}, recorded {recorded} ({summary})"


def _recognizer(ctx: Context):
    rng = ctx.rng("recognizer")
    F4 = GroupSpec.free_rank(4)
    gens = hm.loop_braid_generators(4)
    assign = hm.loop_braid_assignment(4)
    conv = ctx.fixtures()["loop_braid_convention"]
    for k in range(500):
        w = hm.random_word(rng, gens, rng.randint(0, 30))
        m = hm.evaluate(w, assign, F4, conv)
        try:
            form = hm.recognize_perm_conj(m)
        except RingGroupsError as exc:
            return False, f"sample {k} ({w}): {exc}"
        if not hm.reassemble(form, F4).same_as(m):
            return False, f"sample {k} ({w}): reassembly differs"
    return True, "500/500 random products decomposed and reassembled"


def _order(name: str, expected: int):
    def run(ctx: Context):
        p = ctx.group(name)
        t = enumerate_cosets(p, max_cosets=ctx.max_cosets)
        closes = all(t.relator_closes(r) for r in p.relators)
        return t.index == expected and closes, f"order {t.index} (expected {expected}), relators close: {closes}"
    return run


def _element_orders(ctx: Context):
    t = enumerate_cosets(ctx.group("HopfB"), max_cosets=ctx.max_cosets)
    o1 = element_order(t, Word.parse("tau_H"))
    o2 = element_order(t, Word.parse("tau_H^2"))
    o3 = element_order(t, Word())
    return (o1, o2, o3) == (4, 2, 1), f"ord(tau_H) = {o1}, ord(tau_H^2) = {o2}, ord(1) = {o3}"


def _quaternion_model(ctx: Context):
    p = ctx.group("HopfBQuat")
    images = {"tau_H": Q_I, "s": Q_J}
    bad = [str(r) for r in p.relators if q_eval(r, images) != Q_ONE]
    size = len(q_closure(images.values()))
    return not bad and size == 8, f"tau_H -> i, s -> j: relators hold: {not bad}, generated {size} units"


def _same_presentation(got: Presentation, want: Presentation) -> tuple[bool, str]:
    ok = got.generators == want.generators and got.relators == want.relators
    if ok:
        return True, f"{len(got.relators)} relators match token for token"
    return False, f"got {got}, expected {want}"


def _ext(name: str):
    def run(ctx: Context):
        return _same_presentation(assemble(load_extension(ctx.corpus / f"{name}.ext")), ctx.group(name))
    return run


def _ext_simplify(ctx: Context):
    s = simplify(assemble(load_extension(ctx.corpus / "OrderHopfE.ext")))
    want = ctx.group("OrderHopf")
    ok = s.generators == want.generators and s.relators == want.relators
    return ok, f"simplified to {s}"


def _multiset(p: Presentation) -> list:
    order = {g: i for i, g in enumerate(p.generators)}
    return sorted(_cyclic_class_key(r, order) for r in p.relators)


def _ext_main(ctx: Context):
    got = assemble(load_extension(ctx.corpus / "R11.ext"))
    want = ctx.group("R11")
    if got.generators != want.generators:
        return False, f"generators {got.generators} != {want.generators}"
    ok = _multiset(got) == _multiset(want)
    return ok, f"{len(got.relators)} relators; multiset equal up to rotation/inversion: {ok}"


def _lift_ell(ctx: Context):
    q = lift_endpoint(RotationPath.chain([((0, 0, 1), 2 * math.pi)]))
    return q.w < -1 + 1e-6 and abs(q.x) + abs(q.y) + abs(q.z) < 1e-6, f"lift of R_z(2 pi t) ends at {q}"


def _lift_tau_sq(ctx: Context):
    f = RotationPath.chain([((0, 1, 0), math.pi)])
    q = lift_endpoint(f * f)
    return pi1_class(f * f) == -1, f"lift of R_y(pi t) * R_y(pi t) ends at {q}"


def _lift_conj(ctx: Context):
    f_tau = RotationPath.chain([((0, 1, 0), math.pi)])
    f_ell = RotationPath.chain([((0, 0, 1), 2 * math.pi)])
    conj = pi1_class(f_tau.reverse() * f_ell * f_tau)
    inv = pi1_class(f_ell.reverse())
    return conj == inv == -1, f"conjugated class {conj}, inverse class {inv}"


def _lift_s(ctx: Context):
    sp = s_rotation_path()
    q = lift_endpoint(sp)
    return pi1_class(sp * sp) == -1, f"s endpoint {q}, class of s*s = {pi1_class(sp * sp)}"


def _dahm_W(ctx: Context):
    r = hm.respects_relations(hm.W_map())
    return r.ok, "W respects [g_a,g_b]" if r.ok else f"fails on {r.relator}"


def _dahm_relations(ctx: Context):
    conv = ctx.fixtures()["loop_braid_convention"]
    res = hm.verify_hc(conv)
    base = all(res[k] for k in ("comm_ga_gb", "tauC_sq", "comm_ga_tauC", "comm_gb_tauC"))
    variants = [k for k in ("tauC_epsC_tauC_inv", "tauC_epsC_tauC_fixed") if res[k]]
    ok = base and variants == [ctx.fixtures()["hc_eps_relation_holding"]]
    return ok, "; ".join(f"{k}={'ok' if v else 'fails'}" for k, v in res.items())


def _dahm_abel(ctx: Context):
    m = hm.abelianized_action(hm.builtin_dahm_HC("tau_C"))
    ok = m.tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
    return ok, f"abelianized D(tau_C) = {m.tolist()} (identity for inner maps)"


def _dahm_inner(ctx: Context):
    rng = ctx.rng("inner")
    conv = ctx.fixtures()["loop_braid_convention"]
    W = hm.W_map()
    for k in range(1000):
        g = hm.random_word(rng, ["g_a", "g_b", "eps_C"], rng.randint(0, 10))
        m = hm.evaluate(g, hm.hc_assignment, hm.A_SPEC, conv)
        w = hm.apply(W, g)
        if not hm.is_inner_by(m, w) or m.is_identity() != (not w):
            return False, f"sample {k}: D'({g}) is not inner by W(g) = {w}"
    return True, "1000/1000 random words: D'(g) is conjugation by W(g)"


def _quotient(killed: tuple[str, ...], key: str):
    def run(ctx: Context):
        order = group_order(quotient_by(ctx.group("R11"), killed), ctx.max_cosets)
        want = ctx.fixtures()[key]
        return order == want, f"order {order} (expected {want})"
    return run


def _abel_main(ctx: Context):
    got = abelianization(ctx.group("R11"))
    fx = ctx.fixtures()["R11_abelianization"]
    ok = list(got.torsion) == fx["torsion"] and got.free_rank == fx["free_rank"]
    return ok, f"{got}"


def _rot_numbers(ctx: Context):
    got = [rotation_number(NormalRingMotion.from_function(lambda t, k=k: k * t)) for k in range(-3, 4)]
    return got == list(range(-3, 4)), f"rot(phi = k t) for k = -3..3: {got}"


def _rot_additive(ctx: Context):
    rng = ctx.rng("rot")
    for k in range(100):
        a, b = rng.randint(-5, 5), rng.randint(-5, 5)
        wa = [rng.uniform(-1, 1) for _ in range(3)]
        wb = [rng.uniform(-1, 1) for _ in range(3)]

        def bump(w, t):
            return sum(c * math.sin(math.pi * (i + 1) * t) for i, c in enumerate(w))

        m1 = NormalRingMotion.from_function(lambda t: a * t + bump(wa, t) + 0.3)
        m2 = NormalRingMotion.from_function(lambda t: b * t + bump(wb, t) - 1.7)
        if rotation_number(m1.then(m2)) != rotation_number(m1) + rotation_number(m2):
            return False, f"sample {k}: not additive"
    return True, "100/100 concatenations additive"


def _motion(name: str):
    def run(ctx: Context):
        m = builtin_motion(name)
        r = validate_motion(m)
        ok = r.ok and r.min_distance >= 0.05
        if name == "s":
            ok = ok and m.closure == (1, 0, 2)
        if name == "tau_H":
            ok = ok and m.closure == (0, 1, 2)
        detail = f"min distance {r.min_distance:.4f}, closure {tuple(j + 1 for j in m.closure)}"
        if r.continuity_failures:
            detail += "; " + r.continuity_failures[0]
        if r.first_collision is not None:
            detail += f"; collision at sample {r.first_collision}"
        return ok, detail
    return run


def _prop_words(ctx: Context):
    rng = ctx.rng("words")
    specs = [GroupSpec.free_rank(3), hm.A_SPEC, GroupSpec.free_abelian(["p", "q"]),
             GroupSpec(("a", "b", "c", "d"), frozenset({frozenset("ab"), frozenset("bc"), frozenset("cd")}))]
    for k in range(10_000):
        spec = specs[k % len(specs)]
        w = hm.random_word(rng, spec.generators, rng.randint(0, 20))
        nf = normal_form(spec, w)
        if normal_form(spec, nf) != nf:
            return False, f"normal form not idempotent on {w}"
        if normal_form(spec, w * w.inverse()) or normal_form(spec, nf * w.inverse()):
            return False, f"inverse does not cancel on {w}"
    return True, "10000 random words: idempotent, inverses cancel"


def _prop_snf(ctx: Context):
    rng = ctx.rng("snf")
    for k in range(300):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = IntMatrix([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)], c)
        d, u, v = smith_normal_form(m)
        if not (u @ m @ v == d and d.is_diagonal() and abs(u.det()) == 1 and abs(v.det()) == 1):
            return False, f"sample {k}: {m.tolist()}"
        diag = d.diagonal()
        for a, b in zip(diag, diag[1:]):
            if (a == 0 and b != 0) or (a != 0 and b % a):
                return False, f"sample {k}: divisibility fails on {diag}"
    return True, "300 random matrices: u m v = d, det u, det v = +-1, divisibility chain"


def _prop_tables(ctx: Context):
    names = ["RingC", "OrderHopf", "OrderHopfE", "HopfB", "HopfBQuat"]
    count = 0
    for name in names:
        p = ctx.group(name)
        for sub in ([], [Word.gen(p.generators[0])]):
            t = enumerate_cosets(p, sub, max_cosets=ctx.max_cosets)
            perms = t.generator_permutations()
            if not all(sorted(pm) == list(range(t.index)) for pm in perms.values()):
                return False, f"{name}: generator action is not a permutation"
            if not all(t.relator_closes(r) for r in p.relators):
                return False, f"{name}: relator scan does not close"
            count += 1
    return True, f"{count} complete tables: every relator closes at every coset"


CHECKS: list[Check] = (
    [Check("loop_braid.convention", "loop braid group relations: composition convention", _convention)]
    + [Check(f"loop_braid.n{n}", f"loop braid group relations on F_{n}", _loop_braid(n)) for n in range(2, 7)]
    + [
        Check("perm_conj.random_products", "permutation-conjugacy image", _recognizer),
        Check("orders.ring", "single ring group has order 2", _order("RingC", 2)),
        Check("orders.ordered_hopf", "ordered Hopf link group has order 4", _order("OrderHopf", 4)),
        Check("orders.hopf", "Hopf link group has order 8", _order("HopfB", 8)),
        Check("orders.hopf_quat", "quaternion presentation has order 8", _order("HopfBQuat", 8)),
        Check("orders.elements", "tau_H has order 4, ell = tau_H^2 has order 2", _element_orders),
        Check("orders.quaternion_model", "quaternion group model", _quaternion_model),
        Check("extensions.ordered_hopf", "extension presentation of the ordered Hopf group", _ext("OrderHopfE")),
        Check("extensions.ordered_hopf_simplify", "reduction to <tau_H | tau_H^4>", _ext_simplify),
        Check("extensions.hopf", "extension presentation of the Hopf group", _ext("HopfB")),
        Check("extensions.hopf_ring", "split extension presentation of the Hopf-plus-ring group", _ext_main),
        Check("lifts.ell", "pi1(SO(3)) class of f_ell", _lift_ell),
        Check("lifts.tau_squared", "pi1(SO(3)) class of f_tau * f_tau", _lift_tau_sq),
        Check("lifts.conjugate", "conjugated loop class equals inverse class", _lift_conj),
        Check("lifts.s_squared", "s^2 = tau_H^2 at the level of pi1(SO(3))", _lift_s),
        Check("dahm.W", "W respects the relations of the orientation-preserving group", _dahm_W),
        Check("dahm.relations", "Dahm images satisfy the ring-in-Hopf-complement relations", _dahm_relations),
        Check("dahm.tau_C_not_inner", "D(tau_C) is never inner", _dahm_abel),
        Check("dahm.inner_by_W", "D'(g) is the inner automorphism by W(g)", _dahm_inner),
        Check("quotients.mod_kernel", "Hopf-plus-ring group mod the kernel", _quotient(("g_a", "g_b", "eps_C", "tau_C"),
                                                                                     "R11_mod_kernel_order")),
        Check("quotients.mod_orientation_preserving", "Hopf-plus-ring group mod g_a, g_b, eps_C",
              _quotient(("g_a", "g_b", "eps_C"), "R11_mod_ga_gb_epsC_order")),
        Check("quotients.abelianization", "abelianization of the Hopf-plus-ring group", _abel_main),
        Check("rotation_number.linear", "rot(ell) = 1 and rot(phi = k t) = k", _rot_numbers),
        Check("rotation_number.additive", "rotation number is a homomorphism", _rot_additive),
    ]
    + [Check(f"motions.{name}", f"ring motion {name}", _motion(name)) for name in BUILTIN_MOTIONS]
    + [
        Check("properties.words", "normal forms", _prop_words),
        Check("properties.snf", "Smith normal form", _prop_snf),
        Check("properties.coset_tables", "coset tables", _prop_tables),
    ]
)

GROUPS = tuple(dict.fromkeys(c.id.split(".")[0] for c in CHECKS))


def select(only: Iterable[str] | None) -> list[Check]:
    if not only:
        return list(CHECKS)
    wanted = set(only)
    unknown = wanted - set(GROUPS) - {c.id for c in CHECKS}
    if unknown:
        raise ValueError(f"unknown check id(s) {sorted(unknown)}; groups are {', '.join(GROUPS)}")
    return [c for c in CHECKS if c.id in wanted or c.id.split(".")[0] in wanted]


def run_checks(checks: Iterable[Check], ctx: Context) -> list[CheckReport]:
    out = []
    for c in checks:
        try:
            ok, details = c.run(ctx)
            status = PASS if ok else FAIL
        except (OSError, RingGroupsError, ValueError, KeyError) as exc:
            status, details = FAIL, f"{type(exc).__name__}: {exc}"
        out.append(CheckReport(c.id, status, details, c.anchor))
    return sorted(out, key=lambda r: r.id)


def report_dicts(reports: Iterable[CheckReport]) -> list[dict]:
    return [asdict(r) for r in reports]
