"""Presentations of group extensions from kernel, quotient, action and factor data.

Given ``1 -> N -> E -> Q -> 1`` with ``N = <X | R>``, ``Q = <Y | S>``, lifts
``~y`` of the quotient generators, the conjugation action ``~y x ~y^-1`` and,
for each quotient relator ``s``, the kernel element its lift evaluates to,
``E`` is presented on ``X`` and the lifts by ``R``, ``~s · factor(s)^-1`` and
``~y x ~y^-1 · action(y, x)^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .abelianization import AbelianInvariants, abelianization
from .errors import MalformedAction, NameClash, OutOfSpace, ParseError
from .presentation import Presentation, _cyclic_class_key, cyclic_reduce_free, load_presentation
from .todd_coxeter import DEFAULT_MAX_COSETS, group_order, quotient_by
from .words import EMPTY, IDENT_RE, Word, parse_word


@dataclass(frozen=True)
class ExtensionData:
    """Extension data.

    ``action[(y, x)]`` is the word over X equal to ``~y x ~y^-1``; missing
    pairs act trivially.  ``factors[k]`` is the kernel word the lift of
    quotient relator ``k`` (0-based) equals; missing entries are ``1``.
    ``lifts`` renames quotient generators; unnamed lifts keep their name.
    """

    kernel: Presentation
    quotient: Presentation
    action: Mapping[tuple[str, str], Word] = field(default_factory=dict)
    factors: Mapping[int, Word] = field(default_factory=dict)
    split: bool = False
    lifts: Mapping[str, str] = field(default_factory=dict)

    def lift_name(self, y: str) -> str:
        return self.lifts.get(y, y)


def _check(d: ExtensionData) -> None:
    xs, ys = set(d.kernel.generators), set(d.quotient.generators)
    for y in d.lifts:
        if y not in ys:
            raise MalformedAction(f"lift given for unknown quotient generator {y!r}")
    lifted = [d.lift_name(y) for y in d.quotient.generators]
    clash = sorted(xs & set(lifted))
    if clash:
        raise NameClash(f"kernel and lifted quotient generators share {clash}; rename one side")
    if len(set(lifted)) != len(lifted):
        raise NameClash(f"lift names collide: {lifted}")
    for (y, x), w in d.action.items():
        if y not in ys or x not in xs:
            raise MalformedAction(f"action entry ({y}, {x}) is not a (quotient, kernel) generator pair")
        extra = sorted(w.generators() - xs)
        if extra:
            raise MalformedAction(f"action word for ({y}, {x}) uses non-kernel generators {extra}")
    for k, w in d.factors.items():
        if not 0 <= k < len(d.quotient.relators):
            raise MalformedAction(f"factor index {k + 1} out of range")
        extra = sorted(w.generators() - xs)
        if extra:
            raise MalformedAction(f"factor word for relator {k + 1} uses non-kernel generators {extra}")
        if d.split and w:
            raise MalformedAction(f"split extension with nontrivial factor for relator {k + 1}")


def assemble(d: ExtensionData, name: str | None = None) -> Presentation:
    """Presentation of the extension; generators X then the lifts.

    >>> from ringgroups.presentation import Presentation
    >>> N = Presentation.from_strings("N", "ell", ["ell^2"])
    >>> Q = Presentation.from_strings("Q", "tau", ["tau^2"])
    >>> d = ExtensionData(N, Q, {("tau", "ell"): Word.parse("ell^-1")}, {0: Word.parse("ell")},
    ...                   lifts={"tau": "tau_H"})
    >>> str(assemble(d))
    '<ell tau_H | ell^2, tau_H^2 ell^-1, tau_H ell tau_H^-1 ell>'
    """
    _check(d)
    rename = {y: Word.gen(d.lift_name(y)) for y in d.quotient.generators}
    rels = list(d.kernel.relators)
    for k, s in enumerate(d.quotient.relators):
        factor = EMPTY if d.split else d.factors.get(k, EMPTY)
        rels.append(s.substitute(rename) * factor.inverse())
    for y in d.quotient.generators:
        yt = rename[y]
        for x in d.kernel.generators:
            xw = Word.gen(x)
            image = d.action.get((y, x), xw)
            rels.append(yt * xw * yt.inverse() * image.inverse())
    gens = d.kernel.generators + tuple(d.lift_name(y) for y in d.quotient.generators)
    return Presentation(name or f"{d.kernel.name}_by_{d.quotient.name}", gens, tuple(rels))


def retraction_holds(d: ExtensionData, result: Presentation) -> bool:
    """Killing X and renaming lifts back sends every relator to 1 or to a quotient relator."""
    back = {x: EMPTY for x in d.kernel.generators}
    back.update({d.lift_name(y): Word.gen(y) for y in d.quotient.generators})
    order = {g: i for i, g in enumerate(d.quotient.generators)}
    targets = {_cyclic_class_key(s, order) for s in d.quotient.relators}
    for r in result.relators:
        img = cyclic_reduce_free(r.substitute(back))
        if img and _cyclic_class_key(img, order) not in targets:
            return False
    return True


@dataclass
class ExtensionReport:
    abelianization: AbelianInvariants
    kernel_order: int | None
    quotient_order: int | None
    result_order: int | None
    killed_order: int | None
    generator_count_ok: bool
    relator_count_ok: bool
    retraction_ok: bool | None
    notes: list[str] = field(default_factory=list)

    @property
    def orders_multiply(self) -> bool | None:
        if self.kernel_order is None or self.quotient_order is None:
            return None
        return self.result_order == self.kernel_order * self.quotient_order

    @property
    def killing_recovers_quotient(self) -> bool | None:
        if self.quotient_order is None:
            return None
        return self.killed_order == self.quotient_order

    @property
    def ok(self) -> bool:
        checks = [self.generator_count_ok, self.relator_count_ok, self.retraction_ok,
                  self.orders_multiply, self.killing_recovers_quotient]
        return all(c is not False for c in checks)


def _order_or_none(p: Presentation, max_cosets: int, notes: list[str], what: str) -> int | None:
    try:
        return group_order(p, max_cosets)
    except OutOfSpace:
        notes.append(f"{what}: enumeration out of space at {max_cosets}")
        return None


def validate(d: ExtensionData, result: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> ExtensionReport:
    """Necessary-condition checks on an assembled extension."""
    notes: list[str] = []
    k = _order_or_none(d.kernel, max_cosets, notes, "kernel")
    q = _order_or_none(d.quotient, max_cosets, notes, "quotient")
    e = _order_or_none(result, max_cosets, notes, "extension") if k is not None and q is not None else None
    killed = _order_or_none(quotient_by(result, d.kernel.generators), max_cosets, notes, "extension mod kernel")
    nx, ny = len(d.kernel.generators), len(d.quotient.generators)
    return ExtensionReport(
        abelianization=abelianization(result),
        kernel_order=k,
        quotient_order=q,
        result_order=e,
        killed_order=killed,
        generator_count_ok=len(result.generators) == nx + ny,
        relator_count_ok=len(result.relators) == len(d.kernel.relators) + len(d.quotient.relators) + nx * ny,
        retraction_ok=retraction_holds(d, result) if d.split else None,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# .ext files


def parse_extension(text: str, base: str | Path = ".") -> ExtensionData:
    """Parse the ``.ext`` format; ``kernel``/``quotient`` paths are relative to ``base``.

    Directives: ``kernel <file.grp>``, ``quotient <file.grp>``,
    ``split true|false``, ``lift <y> -> <name>``, ``action <y> <x> -> <word>``,
    ``factor <relator-number> -> <word>`` (relators numbered from 1).
    """
    base = Path(base)
    kernel = quotient = None
    split = False
    lifts: dict[str, str] = {}
    pending_action: list[tuple[str, str, str, int, int]] = []
    pending_factor: list[tuple[int, str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        keyword, _, rest = stripped.partition(" ")
        rest = rest.strip()
        if keyword in ("kernel", "quotient"):
            try:
                p = load_presentation(base / rest)
            except OSError as exc:
                raise ParseError(f"cannot read {rest}: {exc.strerror}", lineno, col + len(keyword) + 1) from None
            if keyword == "kernel":
                kernel = p
            else:
                quotient = p
        elif keyword == "split":
            if rest not in ("true", "false"):
                raise ParseError("expected true or false", lineno, col + len(keyword) + 1, ("'true'", "'false'"))
            split = rest == "true"
        elif keyword in ("lift", "action", "factor"):
            lhs, arrow, rhs = rest.partition("->")
            if not arrow:
                raise ParseError(f"expected '{keyword} ... -> ...'", lineno, col, ("'->'",))
            offset = col + len(keyword) + len(lhs) + 3
            parts = lhs.split()
            if keyword == "lift":
                if len(parts) != 1 or not IDENT_RE.fullmatch(rhs.strip()):
                    raise ParseError("expected 'lift <y> -> <name>'", lineno, col, ("identifier",))
                lifts[parts[0]] = rhs.strip()
            elif keyword == "action":
                if len(parts) != 2:
                    raise ParseError("expected 'action <y> <x> -> <word>'", lineno, col, ("identifier",))
                pending_action.append((parts[0], parts[1], rhs, lineno, offset))
            else:
                if len(parts) != 1 or not parts[0].isdigit() or int(parts[0]) < 1:
                    raise ParseError("expected 'factor <relator-number> -> <word>'", lineno, col, ("integer",))
                pending_factor.append((int(parts[0]) - 1, rhs, lineno, offset))
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno, col,
                             ("'kernel'", "'quotient'", "'split'", "'lift'", "'action'", "'factor'"))
    if kernel is None or quotient is None:
        raise ParseError("missing 'kernel' or 'quotient' line", 1, 1, ("'kernel'", "'quotient'"))
    action = {(y, x): parse_word(w, line=ln, column_offset=off - 1) for y, x, w, ln, off in pending_action}
    factors = {k: parse_word(w, line=ln, column_offset=off - 1) for k, w, ln, off in pending_factor}
    d = ExtensionData(kernel, quotient, action, factors, split, lifts)
    _check(d)
    return d


def load_extension(path: str | Path) -> ExtensionData:
    path = Path(path)
    return parse_extension(path.read_text(encoding="utf-8"), path.parent)
