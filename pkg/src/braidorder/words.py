"""Free-group words over indexed alphabets.

A :class:`Word` is an immutable, freely reduced sequence of letters
``(generator, exponent)`` with exponent ``+1`` or ``-1``.  Generators can be
any hashable object with a sensible ``==``; the common case is
:class:`Generator`, a named family ``x_1, x_2, ...``.

Text form: ``x_1 x_2^-1 x_3^2``, with ``1`` for the identity.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

Letter = tuple[Any, int]


@dataclass(frozen=True, order=True)
class Generator:
    """Generator ``name_index`` of a (possibly infinite) alphabet family."""

    name: str
    index: Any

    def __str__(self) -> str:
        return f"{self.name}_{self.index}"

    def __repr__(self) -> str:
        return f"Generator({self.name!r}, {self.index!r})"


def gens(name: str, count: int, start: int = 1) -> list[Generator]:
    """``[name_start, ..., name_{start+count-1}]``."""
    return [Generator(name, k) for k in range(start, start + count)]


def reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Freely reduce a sequence of ``(generator, +-1)`` letters."""
    stack: list[Letter] = []
    for g, e in letters:
        if e not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {e}")
        if stack and stack[-1][1] == -e and stack[-1][0] == g:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


class Word:
    """Freely reduced word in a free group.

    Equality is equality of reduced forms, which in a free group is group
    equality.
    """

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = (), *, reduced: bool = False):
        self.letters: tuple[Letter, ...] = tuple(letters) if reduced else reduce(letters)
        self._hash: int | None = None

    @classmethod
    def identity(cls) -> Word:
        return _IDENTITY

    @classmethod
    def gen(cls, g: Hashable, exponent: int = 1) -> Word:
        sign = 1 if exponent > 0 else -1
        return cls([(g, sign)] * abs(exponent), reduced=True)

    @classmethod
    def from_runs(cls, runs: Iterable[tuple[Any, int]]) -> Word:
        """Build from ``(generator, signed exponent)`` runs."""
        out: list[Letter] = []
        for g, k in runs:
            sign = 1 if k > 0 else -1
            out.extend([(g, sign)] * abs(k))
        return cls(out)

    @classmethod
    def parse(cls, text: str, name: str | None = None) -> Word:
        """Parse ``x_1 x_2^-1`` syntax.  ``name`` restricts the alphabet."""
        return parse_word(text, name)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else invert(self)
        out = _IDENTITY
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> Word:
        return invert(self)

    def generators(self) -> list[Any]:
        """Distinct generators in order of first occurrence."""
        seen: dict[Any, None] = {}
        for g, _ in self.letters:
            seen.setdefault(g, None)
        return list(seen)

    def runs(self) -> list[tuple[Any, int]]:
        """Run-length form: ``[(generator, signed exponent), ...]``."""
        out: list[list] = []
        for g, e in self.letters:
            if out and out[-1][0] == g:
                out[-1][1] += e
            else:
                out.append([g, e])
        return [(g, k) for g, k in out]

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


_IDENTITY = Word((), reduced=True)


def multiply(a: Word, b: Word) -> Word:
    # only the junction can cancel
    la, lb = a.letters, b.letters
    i = 0
    n = min(len(la), len(lb))
    while i < n:
        g, e = la[-1 - i]
        h, f = lb[i]
        if e == -f and g == h:
            i += 1
        else:
            break
    return Word(la[: len(la) - i] + lb[i:], reduced=True)


def invert(a: Word) -> Word:
    return Word(tuple((g, -e) for g, e in reversed(a.letters)), reduced=True)


def abelianize(a: Word) -> dict[Any, int]:
    """Exponent-sum vector, zero entries dropped."""
    counts: Counter = Counter()
    for g, e in a.letters:
        counts[g] += e
    return {g: k for g, k in counts.items() if k}


class GeneratorMap:
    """Substitution ``generator -> Word``; unlisted generators are fixed."""

    def __init__(self, images: Mapping[Any, Word] | None = None):
        self.images: dict[Any, Word] = dict(images or {})

    def __call__(self, a: Word) -> Word:
        return apply_map(self, a)

    def image(self, g: Any) -> Word:
        w = self.images.get(g)
        return Word.gen(g) if w is None else w

    def compose(self, inner: GeneratorMap) -> GeneratorMap:
        """``self o inner``: apply ``inner`` first."""
        keys = list(inner.images) + [g for g in self.images if g not in inner.images]
        return GeneratorMap({g: self(inner.image(g)) for g in keys})

    def domain(self) -> list[Any]:
        return list(self.images)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneratorMap):
            return NotImplemented
        keys = set(self.images) | set(other.images)
        return all(self.image(g) == other.image(g) for g in keys)

    def __repr__(self) -> str:
        body = ", ".join(f"{g} -> {w}" for g, w in self.images.items())
        return f"GeneratorMap({{{body}}})"


def apply_map(phi: GeneratorMap, a: Word) -> Word:
    out: list[Letter] = []
    cache: dict[Letter, tuple[Letter, ...]] = {}
    for g, e in a.letters:
        key = (g, e)
        piece = cache.get(key)
        if piece is None:
            img = phi.image(g)
            piece = img.letters if e == 1 else invert(img).letters
            cache[key] = piece
        out.extend(piece)
    return Word(out)


def is_h1_trivial(phi: GeneratorMap, generators: Iterable[Any] | None = None) -> bool:
    """True iff ``phi`` induces the identity on abelianization for the listed generators."""
    for g in phi.domain() if generators is None else generators:
        if abelianize(phi.image(g)) != {g: 1}:
            return False
    return True


# ---------------------------------------------------------------------------
# text form

_TOKEN = re.compile(r"([A-Za-z]+)_(\d+)(?:\^(-?\d+))?$")


class WordParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def parse_word(text: str, name: str | None = None) -> Word:
    letters: list[Letter] = []
    pos = 0
    for tok in re.finditer(r"\S+", text):
        pos = tok.start()
        s = tok.group()
        if s == "1":
            continue
        m = _TOKEN.match(s)
        if not m:
            raise WordParseError(f"bad token {s!r}", pos)
        gname, idx, exp = m.group(1), int(m.group(2)), m.group(3)
        if name is not None and gname != name:
            raise WordParseError(f"expected generator {name}_k, got {s!r}", pos)
        k = 1 if exp is None else int(exp)
        g = Generator(gname, idx)
        letters.extend([(g, 1 if k > 0 else -1)] * abs(k))
    return Word(letters)


def format_letter(g: Any, k: int) -> str:
    return str(g) if k == 1 else f"{g}^{k}"


def format_word(a: Word, fmt: Callable[[Any, int], str] = format_letter) -> str:
    if not a.letters:
        return "1"
    return " ".join(fmt(g, k) for g, k in a.runs())


def letters_of(word: Word | Sequence[Letter]) -> tuple[Letter, ...]:
    return word.letters if isinstance(word, Word) else tuple(word)
