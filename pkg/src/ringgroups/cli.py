"""``ringgroups`` command line.

Exit codes: 0 success, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import homomorphism as hm
from . import verify
from .abelianization import abelianization
from .corpus_files import CORPUS_DIR, group_registry
from .errors import OutOfSpace, ParseError, RingGroupsError, UnknownGenerator
from .extension import assemble, load_extension, validate
from .presentation import load_presentation, serialize_presentation, simplify, tietze_eliminate
from .rotations import BUILTIN_MOTIONS, builtin_motion, load_motion, validate_motion
from .todd_coxeter import DEFAULT_MAX_COSETS, enumerate_cosets
from .words import normal_form, parse_word

OK, FAILED, BAD_INPUT = 0, 1, 2


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_normalize(args) -> int:
    spec = load_presentation(args.group).to_group_spec()
    w = normal_form(spec, parse_word(args.word))
    _emit(args, {"normal_form": str(w), "length": len(w)}, str(w))
    return OK


def _registry(path: Path, corpus: str | None) -> dict:
    groups = group_registry(corpus or CORPUS_DIR)
    if path.parent.resolve() != Path(corpus or CORPUS_DIR).resolve():
        groups.update(group_registry(path.parent))
    return groups


def cmd_check_hom(args) -> int:
    path = Path(args.hom)
    m = hm.load_hom(path, _registry(path, args.corpus))
    check = hm.respects_relations(m)
    payload = {"name": m.name, "respects_relations": check.ok}
    lines = [f"{m.name}: " + ("respects all relations" if check.ok
                              else f"relator {check.relator} maps to {check.image}, not 1")]
    if not check.ok:
        payload.update(failing_relator=str(check.relator), image=str(check.image))
    if check.ok and hm.domain_generators(m.domain) == tuple(m.codomain.generators):
        mat = hm.abelianized_action(m)
        payload["abelianized_action"] = mat.tolist()
        lines.append(f"abelianized action: {mat.tolist()}")
        if args.witness is not None:
            w = hm.search_inner_witness(m, args.witness)
            payload["inner_witness"] = None if w is None else str(w)
            lines.append("inner by " + str(w) if w is not None
                         else f"no inner witness of length <= {args.witness}")
    _emit(args, payload, "\n".join(lines))
    return OK if check.ok else FAILED


def cmd_enumerate(args) -> int:
    p = load_presentation(args.group)
    sub = [parse_word(s) for s in args.subgroup.split(",")] if args.subgroup else []
    try:
        t = enumerate_cosets(p, sub, max_cosets=args.max_cosets)
    except OutOfSpace as exc:
        _emit(args, {"closed": False, "max_cosets": exc.max_cosets}, f"out of space at {exc.max_cosets}")
        return BAD_INPUT
    _emit(args, {"closed": True, "index": t.index}, f"index = {t.index}")
    return OK


def cmd_abelianize(args) -> int:
    inv = abelianization(load_presentation(args.group))
    _emit(args, {"free_rank": inv.free_rank, "torsion": list(inv.torsion), "text": str(inv)}, str(inv))
    return OK


def cmd_extend(args) -> int:
    d = load_extension(args.ext)
    result = assemble(d, args.name)
    text = serialize_presentation(result)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    elif not args.json:
        sys.stdout.write(text)
    report = validate(d, result, args.max_cosets) if args.validate else None
    if report is not None:
        lines = [f"abelianization: {report.abelianization}"]
        if report.result_order is not None:
            lines.append(f"order {report.result_order} = {report.kernel_order} * {report.quotient_order}: "
                         f"{report.orders_multiply}")
        if report.killed_order is not None:
            lines.append(f"killing the kernel leaves order {report.killed_order}")
        lines += report.notes
        if not args.json:
            print("\n".join(lines), file=sys.stderr if not args.output else sys.stdout)
    if args.json:
        payload = {"presentation": text}
        if report is not None:
            payload.update(abelianization=str(report.abelianization), ok=report.ok,
                           result_order=report.result_order, killed_order=report.killed_order, notes=report.notes)
        print(json.dumps(payload, sort_keys=True))
    return FAILED if report is not None and not report.ok else OK


def cmd_tietze(args) -> int:
    p = load_presentation(args.group)
    for g in args.eliminate or []:
        p = tietze_eliminate(p, g)
    if not args.eliminate:
        p = simplify(p)
    text = serialize_presentation(p)
    _emit(args, {"presentation": text, "generators": list(p.generators),
                 "relators": [str(r) for r in p.relators]}, text.rstrip("\n"))
    return OK


def cmd_motion_check(args) -> int:
    m = builtin_motion(args.motion) if args.motion in BUILTIN_MOTIONS and not Path(args.motion).exists() \
        else load_motion(args.motion)
    r = validate_motion(m, delta=args.delta)
    payload = {"name": r.name, "valid": r.ok, "samples": r.samples, "min_distance": r.min_distance,
               "min_distance_at": r.min_distance_at, "first_collision": r.first_collision,
               "continuity_failures": r.continuity_failures, "closure_ok": r.closure_ok,
               "closure": [j + 1 for j in m.closure]}
    lines = [f"{r.name}: {'valid' if r.ok else 'INVALID'}",
             f"min distance {r.min_distance:.6f} at sample {r.min_distance_at}",
             f"closes {' '.join(str(j + 1) for j in m.closure)}: {'ok' if r.closure_ok else 'mismatch'}"]
    if r.first_collision is not None:
        lines.append(f"first collision at sample {r.first_collision}")
    lines += r.continuity_failures[:5] + r.notes
    _emit(args, payload, "\n".join(lines))
    return OK if r.ok else FAILED


def cmd_verify(args) -> int:
    try:
        checks = verify.select(args.only)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    ctx = verify.Context(args.corpus, args.max_cosets)
    start = time.perf_counter()
    reports = verify.run_checks(checks, ctx)
    elapsed = time.perf_counter() - start
    failed = [r for r in reports if r.status == verify.FAIL]
    if args.json:
        print(json.dumps({"checks": verify.report_dicts(reports), "failed": len(failed)}, sort_keys=True))
    else:
        w_id = max(len(r.id) for r in reports)
        for r in reports:
            print(f"{r.id:<{w_id}}  {r.status}  {r.details}")
        print()
        for r in reports:
            print(f"CHECK {r.id} {r.status} {r.anchor}")
        print(f"\n{len(reports) - len(failed)}/{len(reports)} passed")
    print(f"elapsed {elapsed:.2f}s", file=sys.stderr)
    return FAILED if failed else OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--max-cosets", type=int, default=argparse.SUPPRESS, metavar="N",
                        help=f"coset enumeration bound (default {DEFAULT_MAX_COSETS})")

    parser = argparse.ArgumentParser(prog="ringgroups", parents=[common],
                                     description="Ring groups of H-trivial links.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="normal form of a word")
    p.add_argument("group", help=".grp file whose relators are generator commutators")
    p.add_argument("word")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("check-hom", parents=[common], help="check a .hom file respects relations")
    p.add_argument("hom")
    p.add_argument("--corpus", help="directory of .grp files naming the groups")
    p.add_argument("--witness", type=int, metavar="LEN", help="search for an inner witness up to LEN")
    p.set_defaults(func=cmd_check_hom)

    p = sub.add_parser("enumerate", parents=[common], help="Todd-Coxeter coset enumeration")
    p.add_argument("group")
    p.add_argument("--subgroup", help="comma-separated subgroup generators")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("abelianize", parents=[common], help="abelian invariants")
    p.add_argument("group")
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("extend", parents=[common], help="assemble an extension presentation")
    p.add_argument("ext")
    p.add_argument("-o", "--output")
    p.add_argument("--name", help="name of the resulting group")
    p.add_argument("--validate", action="store_true", help="run order and abelianization checks")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("tietze", parents=[common], help="simplify or eliminate generators")
    p.add_argument("group")
    p.add_argument("--eliminate", action="append", metavar="GEN")
    p.set_defaults(func=cmd_tietze)

    p = sub.add_parser("motion", parents=[common], help="ring motions")
    msub = p.add_subparsers(dest="motion_command", required=True)
    mc = msub.add_parser("check", parents=[common], help="validate a .mot file or builtin motion")
    mc.add_argument("motion", help=f".mot file or one of {', '.join(BUILTIN_MOTIONS)}")
    mc.add_argument("--delta", type=float, default=0.25, help="continuity bound per sample")
    mc.set_defaults(func=cmd_motion_check)

    p = sub.add_parser("verify-paper", parents=[common], help="run the full self-check suite")
    p.add_argument("--only", action="append", metavar="ID",
                   help=f"check id or group ({', '.join(verify.GROUPS)}); repeatable")
    p.add_argument("--corpus", help="corpus directory (default: the shipped corpus)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.json = getattr(args, "json", False)
    args.max_cosets = getattr(args, "max_cosets", DEFAULT_MAX_COSETS)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (UnknownGenerator, RingGroupsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
    return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
