"""The order on the pure surface braid kernel ``K_n``.

``K_n`` is an iterated semidirect product of free groups.  Its element is
written as a tuple ``(k_1, ..., k_{n-1})`` where ``k_i`` is a word in the
generators ``f[i,j,gamma]`` (``i < j <= n``, ``gamma`` in the surface
group).  Generators of one family are ordered by ``j`` and then by the
surface-group order on ``gamma``; each factor carries the Magnus order for
that generator order; tuples are compared at the greatest differing
position.

Full multiplication in ``K_n`` is not modelled: only products inside one
factor, the generator permutation ``Psi`` induced by the loop braids
``a_{i,r}``, and user-supplied twists that are trivial on ``H_1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from .braid import BraidWord
from .magnus import DEFAULT_CAP, DEFAULT_D0, magnus_compare
from .series import Order, VariableOrder
from .surface import NAME as SURFACE_NAME
from .surface import SurfaceElem, pi1_compare
from .words import GeneratorMap, Word, format_word, is_h1_trivial, parse_word


class FGen:
    """Generator ``f[i,j,gamma]`` of the factor with first index ``i``.

    Two generators are equal iff they share ``(i, j)`` and their ``gamma``
    are equal in the surface group.
    """

    __slots__ = ("i", "j", "gamma")

    def __init__(self, i: int, j: int, gamma: SurfaceElem):
        if not 1 <= i < j:
            raise ValueError(f"need 1 <= i < j, got i={i}, j={j}")
        self.i = i
        self.j = j
        self.gamma = gamma

    @property
    def genus(self) -> int:
        return self.gamma.genus

    def with_gamma(self, gamma: SurfaceElem) -> FGen:
        return FGen(self.i, self.j, gamma)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FGen):
            return NotImplemented
        return self.i == other.i and self.j == other.j and self.gamma == other.gamma

    def __hash__(self) -> int:
        return hash((self.i, self.j, self.gamma))

    def __str__(self) -> str:
        return f"f[{self.i},{self.j},{format_word(self.gamma.word)}]"

    __repr__ = __str__


def fgen_compare(a: FGen, b: FGen, d0: int = DEFAULT_D0, cap: int = DEFAULT_CAP) -> Order:
    if a.i != b.i:
        raise ValueError(f"generators from different families: {a} vs {b}")
    if a.j != b.j:
        return Order.LESS if a.j < b.j else Order.GREATER
    return pi1_compare(a.gamma, b.gamma, d0, cap)


def fgen_order(d0: int = DEFAULT_D0, cap: int = DEFAULT_CAP) -> VariableOrder:
    return VariableOrder(cmp=lambda a, b: fgen_compare(a, b, d0, cap))


FGEN_ORDER = fgen_order()


def factor_compare(u: Word, v: Word, d0: int = DEFAULT_D0, cap: int = DEFAULT_CAP) -> Order:
    """Magnus order on one free factor, variables ordered by :func:`fgen_compare`."""
    vo = FGEN_ORDER if (d0, cap) == (DEFAULT_D0, DEFAULT_CAP) else fgen_order(d0, cap)
    return magnus_compare(u, v, vo, d0, cap)


@dataclass(frozen=True)
class KnElement:
    """``(k_1, ..., k_{n-1})``; ``k_i`` uses only generators with first index ``i``."""

    n: int
    components: tuple[Word, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        comps = tuple(self.components)
        if len(comps) != max(self.n - 1, 0):
            raise ValueError(f"K_{self.n} needs {self.n - 1} components, got {len(comps)}")
        for pos, w in enumerate(comps, start=1):
            for f, _ in w.letters:
                if not isinstance(f, FGen) or f.i != pos or f.j > self.n:
                    raise ValueError(f"letter {f} does not belong to component {pos} of K_{self.n}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def identity(cls, n: int) -> KnElement:
        return cls(n, (Word.identity(),) * max(n - 1, 0))

    @classmethod
    def single(cls, n: int, w: Word) -> KnElement:
        """Element whose only nontrivial component is ``w``."""
        comps = [Word.identity()] * max(n - 1, 0)
        if w:
            comps[w.letters[0][0].i - 1] = w
        return cls(n, tuple(comps))

    def replace(self, pos: int, w: Word) -> KnElement:
        comps = list(self.components)
        comps[pos - 1] = w
        return KnElement(self.n, tuple(comps))

    def __str__(self) -> str:
        return format_kn(self)


def kn_compare(k: KnElement, kp: KnElement, d0: int = DEFAULT_D0,
               cap: int = DEFAULT_CAP) -> Order:
    if k.n != kp.n:
        raise ValueError("strand counts differ")
    for pos in range(len(k.components) - 1, -1, -1):
        u, v = k.components[pos], kp.components[pos]
        if u != v:
            return factor_compare(u, v, d0, cap)
    return Order.EQUAL


# ---------------------------------------------------------------------------
# the Psi action

@dataclass(frozen=True)
class ActionLabel:
    """Loop braid ``a_{i,r}`` (``exponent=-1`` for its inverse)."""

    i: int
    r: int
    exponent: int = 1

    def __post_init__(self):
        if self.exponent not in (1, -1):
            raise ValueError("exponent must be +1 or -1")

    def inverse(self) -> ActionLabel:
        return ActionLabel(self.i, self.r, -self.exponent)

    def check(self, n: int, genus: int) -> None:
        if not (1 <= self.i <= n and 1 <= self.r <= 2 * genus):
            raise ValueError(f"label {self} out of range for n={n}, genus={genus}")


def psi_action(label: ActionLabel, f: FGen) -> FGen:
    """``a f a^-1`` up to an ``H_1``-trivial correction.

    ``f[j,k,g] -> f[j,k, w_r g]`` when ``i = j``; ``f[j,k, g w_r^-1]`` when
    ``i = k``; unchanged otherwise.
    """
    w = SurfaceElem.gen(label.r, f.genus, label.exponent)
    if label.i == f.i:
        return f.with_gamma(w * f.gamma)
    if label.i == f.j:
        return f.with_gamma(f.gamma * w.inverse())
    return f


def psi_word(label: ActionLabel, w: Word) -> Word:
    return Word((psi_action(label, f), e) for f, e in w.letters)


def psi_extend(label: ActionLabel, k: KnElement) -> KnElement:
    return KnElement(k.n, tuple(psi_word(label, w) for w in k.components))


# ---------------------------------------------------------------------------
# generic iterated semidirect product order

@dataclass
class SemidirectOrderDatum:
    """Comparators for each tuple position plus optional twists.

    ``twists`` maps an action label to ``(position, GeneratorMap)``; every
    map must be trivial on ``H_1`` of the factor it acts on.
    """

    comparators: Sequence[Callable[[Any, Any], Order]]
    twists: Mapping[Any, tuple[int, GeneratorMap]] = field(default_factory=dict)
    generators: Mapping[int, Sequence[Any]] = field(default_factory=dict)

    def __post_init__(self):
        for label, (pos, phi) in self.twists.items():
            gens = self.generators.get(pos, phi.domain())
            if not is_h1_trivial(phi, gens):
                raise ValueError(f"twist {label} acts nontrivially on H1 of factor {pos}")

    def twist(self, label, element: Sequence) -> tuple:
        pos, phi = self.twists[label]
        out = list(element)
        out[pos - 1] = phi(out[pos - 1])
        return tuple(out)


def semidirect_compare(datum: SemidirectOrderDatum, a: Sequence, b: Sequence) -> Order:
    """Compare at the greatest position where the components differ."""
    if len(a) != len(b) or len(a) != len(datum.comparators):
        raise ValueError("tuple lengths do not match the datum")
    for pos in range(len(a) - 1, -1, -1):
        verdict = datum.comparators[pos](a[pos], b[pos])
        if verdict is not Order.EQUAL:
            return verdict
    return Order.EQUAL


def kn_datum(n: int, d0: int = DEFAULT_D0, cap: int = DEFAULT_CAP) -> SemidirectOrderDatum:
    return SemidirectOrderDatum([lambda u, v: factor_compare(u, v, d0, cap)] * max(n - 1, 0))


# ---------------------------------------------------------------------------
# braid words for the twists

def t_word(i: int, j: int, n: int) -> BraidWord:
    """``s_i ... s_{j-2} s_{j-1}^2 s_{j-2}^-1 ... s_i^-1``."""
    if i > j:
        i, j = j, i
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got ({i}, {j}, {n})")
    up = [(s, 1) for s in range(i, j - 1)]
    down = [(s, -1) for s in range(j - 2, i - 1, -1)]
    return BraidWord(n, up + [(j - 1, 1), (j - 1, 1)] + down)


# ---------------------------------------------------------------------------
# text form: f[i,j,<word>] letters, ';' between components

_FGEN = re.compile(r"f\[\s*(\d+)\s*,\s*(\d+)\s*,([^\]]*)\]\s*(?:\^\s*(-?\d+))?")


def parse_fgen_word(text: str, genus: int) -> Word:
    letters = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text.startswith("1", pos) and (pos + 1 == len(text) or text[pos + 1].isspace()):
            pos += 1
            continue
        m = _FGEN.match(text, pos)
        if not m:
            raise ValueError(f"bad generator at position {pos}: {text[pos:pos + 20]!r}")
        i, j = int(m.group(1)), int(m.group(2))
        gamma = SurfaceElem(parse_word(m.group(3), SURFACE_NAME), genus)
        k = int(m.group(4) or 1)
        f = FGen(i, j, gamma)
        letters.extend([(f, 1 if k > 0 else -1)] * abs(k))
        pos = m.end()
    return Word(letters)


def parse_kn(text: str, n: int | None, genus: int) -> KnElement:
    """Parse ``;``-separated components, or a single product ``k_1 k_2 ...``.

    Without ``;`` the letters must appear grouped by nondecreasing first
    index.  ``n`` defaults to the largest second index present (at least 2).
    """
    if ";" in text:
        parts = [parse_fgen_word(p, genus) for p in text.split(";")]
        if n is None:
            n = len(parts) + 1
        if len(parts) != n - 1:
            raise ValueError(f"K_{n} needs {n - 1} components, got {len(parts)}")
        return KnElement(n, tuple(parts))
    w = parse_fgen_word(text, genus)
    idx = [f.i for f, _ in w.letters]
    if idx != sorted(idx):
        raise ValueError("letters must be grouped by nondecreasing first index")
    if n is None:
        n = max([2] + [f.j for f, _ in w.letters])
    comps: list[list] = [[] for _ in range(n - 1)]
    for f, e in w.letters:
        if f.j > n:
            raise ValueError(f"{f} needs n >= {f.j}")
        comps[f.i - 1].append((f, e))
    return KnElement(n, tuple(Word(c) for c in comps))


def format_kn(k: KnElement) -> str:
    return " ; ".join(format_word(w) for w in k.components)
