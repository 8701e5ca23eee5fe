"""Homomorphisms given by generator images, and the automorphism families of
the extended loop braid group and of the Hopf-link-plus-ring complement.

Maps are compared on generators only, in codomain normal form.

>>> F2 = GroupSpec.free_rank(2)
>>> s = builtin_family("sigma", 1, 2)
>>> str(apply(s, Word.parse("x2")))
'x2^-1 x1 x2'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .abelianization import IntMatrix
from .errors import AlphabetMismatch, NotPermConj, ParseError, UnknownGenerator
from .presentation import Presentation
from .words import (
    EMPTY,
    IDENT_RE,
    GroupSpec,
    Word,
    abelianize_word,
    cyclically_reduce,
    enumerate_normal_forms,
    normal_form,
    parse_word,
)

LEFT_FIRST = "left-first"
RIGHT_FIRST = "right-first"
CONVENTIONS = (LEFT_FIRST, RIGHT_FIRST)


def domain_generators(domain: Presentation | GroupSpec) -> tuple[str, ...]:
    return tuple(domain.generators)


def domain_relators(domain: Presentation | GroupSpec) -> tuple[Word, ...]:
    if isinstance(domain, GroupSpec):
        return tuple(domain.commutator_relators())
    return domain.relators


@dataclass(frozen=True, eq=False)
class GenMap:
    """A homomorphism candidate ``domain -> codomain`` fixed by generator images."""

    domain: Presentation | GroupSpec
    codomain: GroupSpec
    images: Mapping[str, Word] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        gens = domain_generators(self.domain)
        images = dict(self.images)
        for g in images:
            if g not in gens:
                raise UnknownGenerator(g, f"domain of {self.name or 'map'}")
        for g in gens:
            if g not in images:
                raise ValueError(f"generator {g} has no image")
            self.codomain.check(images[g])
        object.__setattr__(self, "images", {g: images[g] for g in gens})

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def image(self, gen: str) -> Word:
        try:
            return self.images[gen]
        except KeyError:
            raise UnknownGenerator(gen, f"domain of {self.name or 'map'}") from None

    def same_as(self, other: GenMap) -> bool:
        """Equal images on every generator, compared in normal form."""
        if domain_generators(self.domain) != domain_generators(other.domain):
            return False
        if set(self.codomain.generators) != set(other.codomain.generators):
            return False
        return all(
            normal_form(self.codomain, self.images[g]) == normal_form(self.codomain, other.images[g])
            for g in self.images
        )

    def is_identity(self) -> bool:
        return all(normal_form(self.codomain, w) == Word.gen(g) for g, w in self.images.items())

    def describe(self) -> str:
        return "; ".join(f"{g} -> {normal_form(self.codomain, w)}" for g, w in self.images.items())


def identity_map(spec: GroupSpec, name: str = "id") -> GenMap:
    return GenMap(spec, spec, {g: Word.gen(g) for g in spec.generators}, name)


def apply(m: GenMap, w: Word) -> Word:
    """Image of ``w`` in codomain normal form."""
    for g in w.generators():
        if g not in m.images:
            raise UnknownGenerator(g, f"domain of {m.name or 'map'}")
    return normal_form(m.codomain, w.substitute(m.images))


@dataclass(frozen=True)
class RelationCheck:
    ok: bool
    relator: Word | None = None
    index: int | None = None
    image: Word | None = None

    def __bool__(self) -> bool:
        return self.ok


def respects_relations(m: GenMap) -> RelationCheck:
    """Check that every domain relator maps to the identity.

    On failure the first offending relator, its index and its image are
    reported.
    """
    for i, r in enumerate(domain_relators(m.domain)):
        img = apply(m, r)
        if img:
            return RelationCheck(False, r, i, img)
    return RelationCheck(True)


def compose(outer: GenMap, inner: GenMap) -> GenMap:
    """``outer ∘ inner``: ``apply(compose(f, g), w) == apply(f, apply(g, w))``."""
    if set(inner.codomain.generators) != set(domain_generators(outer.domain)):
        raise AlphabetMismatch(
            f"codomain of {inner.name or 'inner'} {inner.codomain.generators} "
            f"!= domain of {outer.name or 'outer'} {domain_generators(outer.domain)}"
        )
    images = {g: apply(outer, w) for g, w in inner.images.items()}
    name = f"{outer.name}∘{inner.name}" if outer.name and inner.name else ""
    return GenMap(inner.domain, outer.codomain, images, name)


# ---------------------------------------------------------------------------
# automorphisms of F_n: sigma, rho, tau


def _x(i: int) -> str:
    return f"x{i}"


def _family_images(name: str, i: int, n: int, inverse: bool) -> dict[str, Word]:
    xi, xj = Word.gen(_x(i)), Word.gen(_x(i + 1)) if i < n else None
    images: dict[str, Word] = {}
    if name == "sigma":
        if not inverse:
            images[_x(i)] = xj
            images[_x(i + 1)] = xj.inverse() * xi * xj
        else:
            images[_x(i)] = xi * xj * xi.inverse()
            images[_x(i + 1)] = xi
    elif name == "rho":
        images[_x(i)] = xj
        images[_x(i + 1)] = xi
    elif name == "tau":
        images[_x(i)] = xi.inverse()
    return images


def builtin_family(name: str, i: int, n: int, inverse: bool = False) -> GenMap:
    """Automorphism ``sigma_i``, ``rho_i`` or ``tau_i`` of F_n on ``x1..xn``.

    >>> builtin_family("tau", 2, 3).describe()
    'x1 -> x1; x2 -> x2^-1; x3 -> x3'
    """
    if name not in ("sigma", "rho", "tau"):
        raise ValueError(f"unknown family {name!r}")
    top = n if name == "tau" else n - 1
    if not 1 <= i <= top:
        raise IndexError(f"{name}_{i} needs 1 <= i <= {top} on F_{n}")
    spec = GroupSpec.free_rank(n)
    images = {g: Word.gen(g) for g in spec.generators}
    images.update(_family_images(name, i, n, inverse))
    label = f"{name}_{i}" + ("^-1" if inverse else "")
    return GenMap(spec, spec, images, label)


def loop_braid_generators(n: int) -> tuple[str, ...]:
    return (
        tuple(f"sigma_{i}" for i in range(1, n))
        + tuple(f"rho_{i}" for i in range(1, n))
        + tuple(f"tau_{i}" for i in range(1, n + 1))
    )


@dataclass(frozen=True)
class FamilyRelator:
    family: int
    label: str
    indices: tuple[int, ...]
    relator: Word


def _rel(lhs: str, rhs: str) -> Word:
    return parse_word(lhs) * parse_word(rhs).inverse()


def loop_braid_relations(n: int) -> list[FamilyRelator]:
    """All relators of the 15 relation families of the extended loop braid group.

    Commutation families over a single generator type use ``i < j``.
    """
    out: list[FamilyRelator] = []
    idx = range(1, n)
    taus = range(1, n + 1)

    def add(family, label, indices, lhs, rhs):
        out.append(FamilyRelator(family, label, indices, _rel(lhs, rhs)))

    for i in idx:
        for j in idx:
            if j - i > 1:
                add(1, "sigma_i sigma_j = sigma_j sigma_i", (i, j), f"sigma_{i} sigma_{j}", f"sigma_{j} sigma_{i}")
    for i in range(1, n - 1):
        add(2, "sigma_i sigma_i+1 sigma_i = sigma_i+1 sigma_i sigma_i+1", (i,),
            f"sigma_{i} sigma_{i+1} sigma_{i}", f"sigma_{i+1} sigma_{i} sigma_{i+1}")
    for i in idx:
        for j in idx:
            if j - i > 1:
                add(3, "rho_i rho_j = rho_j rho_i", (i, j), f"rho_{i} rho_{j}", f"rho_{j} rho_{i}")
    for i in range(1, n - 1):
        add(4, "rho_i rho_i+1 rho_i = rho_i+1 rho_i rho_i+1", (i,),
            f"rho_{i} rho_{i+1} rho_{i}", f"rho_{i+1} rho_{i} rho_{i+1}")
    for i in idx:
        add(5, "rho_i^2 = 1", (i,), f"rho_{i}^2", "1")
    for i in idx:
        for j in idx:
            if abs(i - j) > 1:
                add(6, "rho_i sigma_j = sigma_j rho_i", (i, j), f"rho_{i} sigma_{j}", f"sigma_{j} rho_{i}")
    for i in range(1, n - 1):
        add(7, "rho_i+1 rho_i sigma_i+1 = sigma_i rho_i+1 rho_i", (i,),
            f"rho_{i+1} rho_{i} sigma_{i+1}", f"sigma_{i} rho_{i+1} rho_{i}")
    for i in range(1, n - 1):
        add(8, "sigma_i+1 sigma_i rho_i+1 = rho_i sigma_i+1 sigma_i", (i,),
            f"sigma_{i+1} sigma_{i} rho_{i+1}", f"rho_{i} sigma_{i+1} sigma_{i}")
    for i in taus:
        for j in taus:
            if i < j:
                add(9, "tau_i tau_j = tau_j tau_i", (i, j), f"tau_{i} tau_{j}", f"tau_{j} tau_{i}")
    for i in taus:
        add(10, "tau_i^2 = 1", (i,), f"tau_{i}^2", "1")
    for i in idx:
        for j in taus:
            if abs(i - j) > 1:
                add(11, "sigma_i tau_j = tau_j sigma_i", (i, j), f"sigma_{i} tau_{j}", f"tau_{j} sigma_{i}")
    for i in idx:
        for j in taus:
            if abs(i - j) > 1:
                add(12, "rho_i tau_j = tau_j rho_i", (i, j), f"rho_{i} tau_{j}", f"tau_{j} rho_{i}")
    for i in idx:
        add(13, "tau_i rho_i = rho_i tau_i+1", (i,), f"tau_{i} rho_{i}", f"rho_{i} tau_{i+1}")
    for i in idx:
        add(14, "tau_i sigma_i = sigma_i tau_i+1", (i,), f"tau_{i} sigma_{i}", f"sigma_{i} tau_{i+1}")
    for i in idx:
        add(15, "tau_i+1 sigma_i = rho_i sigma_i^-1 rho_i tau_i", (i,),
            f"tau_{i+1} sigma_{i}", f"rho_{i} sigma_{i}^-1 rho_{i} tau_{i}")
    return out


def loop_braid_presentation(n: int) -> Presentation:
    return Presentation(f"R{n}", loop_braid_generators(n), tuple(r.relator for r in loop_braid_relations(n)))


def loop_braid_assignment(n: int) -> Callable[[str, int], GenMap]:
    """Generator name and sign -> automorphism of F_n."""
    cache: dict[tuple[str, int], GenMap] = {}

    def lookup(gen: str, sign: int) -> GenMap:
        key = (gen, sign)
        if key not in cache:
            family, _, i = gen.partition("_")
            cache[key] = builtin_family(family, int(i), n, inverse=sign < 0)
        return cache[key]

    return lookup


# ---------------------------------------------------------------------------
# Hopf link plus ring: automorphisms of A = <a, b, c | [a, b]>

A_SPEC = GroupSpec(("a", "b", "c"), frozenset({frozenset(("a", "b"))}))
HC_GENERATORS = ("g_a", "g_b", "eps_C", "tau_C")


def _hc_images(name: str, inverse: bool) -> dict[str, str]:
    if name == "g_a":
        return {"c": "a^-1 c a" if inverse else "a c a^-1"}
    if name == "g_b":
        return {"c": "b^-1 c b" if inverse else "b c b^-1"}
    if name == "eps_C":
        if inverse:
            return {"a": "c^-1 a c", "b": "c^-1 b c"}
        return {"a": "c a c^-1", "b": "c b c^-1"}
    if name == "tau_C":
        return {"c": "c^-1"}
    raise ValueError(f"unknown generator {name!r}; expected one of {HC_GENERATORS}")


def builtin_dahm_HC(name: str, inverse: bool = False) -> GenMap:
    """Automorphism of ``A = <a, b, c | [a, b]>`` induced by a ring motion.

    >>> str(apply(builtin_dahm_HC("eps_C"), Word.parse("a b")))
    'c a b c^-1'
    """
    images = {g: Word.gen(g) for g in A_SPEC.generators}
    images.update({g: parse_word(w) for g, w in _hc_images(name, inverse).items()})
    return GenMap(A_SPEC, A_SPEC, images, f"D({name})" + ("^-1" if inverse else ""))


def hc_assignment(gen: str, sign: int) -> GenMap:
    return builtin_dahm_HC(gen, inverse=sign < 0)


def hplus_presentation() -> Presentation:
    return Presentation.from_strings("Presentation_Hplus", "g_a g_b eps_C", ["[g_a,g_b]"])


def W_map() -> GenMap:
    """The isomorphism ``g_a -> a``, ``g_b -> b``, ``eps_C -> c``."""
    images = {"g_a": Word.gen("a"), "g_b": Word.gen("b"), "eps_C": Word.gen("c")}
    return GenMap(hplus_presentation(), A_SPEC, images, "W")


def hc_relations() -> list[tuple[str, Word]]:
    """Relators of the presentation of R(R^3 - H, C), with both signs of the
    eps_C relation; ids are stable."""
    return [
        ("comm_ga_gb", parse_word("[g_a,g_b]")),
        ("tauC_sq", parse_word("tau_C^2")),
        ("comm_ga_tauC", parse_word("[g_a,tau_C]")),
        ("comm_gb_tauC", parse_word("[g_b,tau_C]")),
        ("tauC_epsC_tauC_inv", _rel("tau_C eps_C tau_C", "eps_C^-1")),
        ("tauC_epsC_tauC_fixed", _rel("tau_C eps_C tau_C", "eps_C")),
    ]


# ---------------------------------------------------------------------------
# evaluating words of automorphisms


def evaluate(word: Word, assignment: Callable[[str, int], GenMap], spec: GroupSpec,
             convention: str = RIGHT_FIRST) -> GenMap:
    """Automorphism of ``spec`` represented by ``word``.

    ``left-first`` applies the first letter's automorphism first, so a word
    ``g1 g2`` becomes ``x -> D(g2)(D(g1)(x))``.  ``right-first`` is ordinary
    function composition ``D(g1) ∘ D(g2)``.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    acc = identity_map(spec)
    for g, e in word.letters:
        step = assignment(g, 1 if e > 0 else -1)
        for _ in range(abs(e)):
            acc = compose(step, acc) if convention == LEFT_FIRST else compose(acc, step)
    return acc


@dataclass(frozen=True)
class RelatorOutcome:
    label: str
    relator: Word
    ok: bool
    witness: str = ""


def verify_loop_braid(n: int, convention: str) -> list[RelatorOutcome]:
    spec = GroupSpec.free_rank(n)
    assign = loop_braid_assignment(n)
    out = []
    for fr in loop_braid_relations(n):
        m = evaluate(fr.relator, assign, spec, convention)
        ok = m.is_identity()
        label = f"family {fr.family} {fr.indices}"
        out.append(RelatorOutcome(label, fr.relator, ok, "" if ok else m.describe()))
    return out


def pin_convention(ranks: Iterable[int] = range(2, 7)) -> tuple[str | None, dict[str, list[RelatorOutcome]]]:
    """Try left-first, then right-first; return the first convention under
    which every relator for every rank composes to the identity."""
    ranks = list(ranks)
    tried: dict[str, list[RelatorOutcome]] = {}
    for conv in CONVENTIONS:
        results = [r for n in ranks for r in verify_loop_braid(n, conv)]
        tried[conv] = results
        if all(r.ok for r in results):
            return conv, tried
    return None, tried


def verify_hc(convention: str) -> dict[str, bool]:
    return {rid: evaluate(r, hc_assignment, A_SPEC, convention).is_identity() for rid, r in hc_relations()}


# ---------------------------------------------------------------------------
# permutation-conjugacy form


@dataclass(frozen=True)
class PermConjForm:
    """``x_i -> w_i^-1 x_{pi(i)}^{sign_i} w_i``; ``pi`` is 1-based, ``pi[i-1] = pi(i)``."""

    pi: tuple[int, ...]
    signs: tuple[int, ...]
    conjugators: tuple[Word, ...]


def recognize_perm_conj(m: GenMap) -> PermConjForm:
    """Decompose an endomorphism of a free group into permutation-conjugacy form.

    >>> f = recognize_perm_conj(builtin_family("sigma", 1, 2))
    >>> f.pi, f.signs, [str(w) for w in f.conjugators]
    ((2, 1), (1, 1), ['1', 'x2'])
    """
    spec = m.codomain
    gens = domain_generators(m.domain)
    pi, signs, conj = [], [], []
    for i, g in enumerate(gens, start=1):
        core, w = cyclically_reduce(spec, m.images[g])
        if len(core.letters) != 1 or abs(core.letters[0].exp) != 1:
            raise NotPermConj(i, f"cyclic core {core} is not a single generator")
        target, sign = core.letters[0]
        pi.append(spec.index(target) + 1)
        signs.append(sign)
        conj.append(w)
    seen: set[int] = set()
    for i, p in enumerate(pi, start=1):
        if p in seen:
            raise NotPermConj(i, f"index {p} hit twice; not a permutation")
        seen.add(p)
    if len(seen) != len(spec.generators):
        raise NotPermConj(len(pi), "image indices do not cover the generators")
    return PermConjForm(tuple(pi), tuple(signs), tuple(conj))


def reassemble(form: PermConjForm, spec: GroupSpec) -> GenMap:
    images = {}
    for g, p, s, w in zip(spec.generators, form.pi, form.signs, form.conjugators):
        images[g] = normal_form(spec, w.inverse() * Word.gen(spec.generators[p - 1], s) * w)
    return GenMap(spec, spec, images)


# ---------------------------------------------------------------------------
# inner automorphisms


def is_inner_by(m: GenMap, w: Word) -> bool:
    """True iff ``m(x) = w x w^-1`` for every generator ``x``."""
    spec = m.codomain
    winv = w.inverse()
    return all(
        normal_form(spec, img) == normal_form(spec, w * Word.gen(g) * winv) for g, img in m.images.items()
    )


def abelianized_action(m: GenMap) -> IntMatrix:
    """Integer matrix whose column ``j`` is the exponent-sum vector of the
    image of generator ``j``.  Inner automorphisms give the identity."""
    spec = m.codomain
    cols = [abelianize_word(spec, m.images[g]) for g in domain_generators(m.domain)]
    return IntMatrix([[c[i] for c in cols] for i in range(len(spec))], len(cols))


def search_inner_witness(m: GenMap, max_len: int) -> Word | None:
    """First normal form of length <= max_len (length, then shortlex) that
    conjugates like ``m``.  ``None`` proves nothing about innerness."""
    for w in enumerate_normal_forms(m.codomain, max_len):
        if is_inner_by(m, w):
            return w
    return None


# ---------------------------------------------------------------------------
# .hom files


def parse_hom(text: str, groups: Mapping[str, Presentation | GroupSpec]) -> GenMap:
    """Parse ``hom <name> : <domain> -> <codomain>`` plus ``map <gen> -> <word>`` lines.

    ``groups`` resolves group names.  The codomain must be a graph product
    of Z (only commutator relators).  Unmapped domain generators map to
    themselves when the codomain has a generator of the same name.
    """
    header = None
    images: dict[str, Word] = {}
    domain = codomain = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        keyword, _, rest = stripped.partition(" ")
        if keyword == "hom":
            if header is not None:
                raise ParseError("duplicate 'hom' line", lineno, col)
            name, colon, arrow_part = rest.partition(":")
            dom_name, arrow, cod_name = arrow_part.partition("->")
            name, dom_name, cod_name = name.strip(), dom_name.strip(), cod_name.strip()
            if not colon or not arrow or not all(IDENT_RE.fullmatch(x) for x in (name, dom_name, cod_name)):
                raise ParseError("expected 'hom <name> : <domain> -> <codomain>'", lineno, col,
                                 ("identifier", "':'", "'->'"))
            for gname in (dom_name, cod_name):
                if gname not in groups:
                    raise ParseError(f"unknown group {gname!r}", lineno, col + len(keyword) + 1 + rest.find(gname))
            domain = groups[dom_name]
            cod = groups[cod_name]
            codomain = cod if isinstance(cod, GroupSpec) else cod.to_group_spec()
            header = name
        elif keyword == "map":
            if header is None:
                raise ParseError("'map' before 'hom'", lineno, col, ("'hom'",))
            lhs, arrow, rhs = rest.partition("->")
            gen = lhs.strip()
            if not arrow or not IDENT_RE.fullmatch(gen):
                raise ParseError("expected 'map <gen> -> <word>'", lineno, col, ("identifier", "'->'"))
            if gen not in domain_generators(domain):
                raise UnknownGenerator(gen, f"domain of {header} (line {lineno})")
            if gen in images:
                raise ParseError(f"generator {gen} mapped twice", lineno, col)
            offset = col + len(keyword) + len(lhs) + 2
            w = parse_word(rhs, line=lineno, column_offset=offset)
            for g in w.generators():
                if g not in codomain:
                    raise UnknownGenerator(g, f"codomain of {header} (line {lineno})")
            images[gen] = w
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno, col, ("'hom'", "'map'"))
    if header is None:
        raise ParseError("missing 'hom' line", 1, 1, ("'hom'",))
    for g in domain_generators(domain):
        if g not in images:
            if g not in codomain:
                raise ParseError(f"generator {g} is unmapped and absent from the codomain", 1, 1, ("'map'",))
            images[g] = Word.gen(g)
    return GenMap(domain, codomain, images, header)


def serialize_hom(m: GenMap, domain_name: str, codomain_name: str) -> str:
    lines = [f"hom {m.name or 'f'} : {domain_name} -> {codomain_name}"]
    lines += [f"map {g} -> {w}" for g, w in m.images.items()]
    return "\n".join(lines) + "\n"


def load_hom(path: str | Path, groups: Mapping[str, Presentation | GroupSpec]) -> GenMap:
    return parse_hom(Path(path).read_text(encoding="utf-8"), groups)


def random_word(rng, gens: Sequence[str], length: int) -> Word:
    return Word((rng.choice(gens), rng.choice((1, -1))) for _ in range(length))
