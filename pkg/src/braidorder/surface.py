"""Fundamental groups of closed orientable surfaces.

``pi_1`` of the genus-``g`` surface is presented on ``w_1, ..., w_2g`` with the
single relator ``w_1 ... w_2g w_1^-1 ... w_2g^-1``.

* Word problem: abelianization for ``g = 1`` (the group is ``Z^2``), Dehn's
  algorithm for ``g >= 2`` (pieces have length 1, the relator has length
  ``4g >= 8``).
* Bi-order: the Magnus expansion composed with the quotient of ``Q<<X>>`` by
  the two-sided ideal generated by ``M(r) - 1``.  Normal forms come from a
  degree-truncated rewriting system whose rules are oriented by the
  greatest monomial of lowest degree, so reduction never lowers degree and
  the lowest term of a difference survives multiplication by ``1 + eta``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .magnus import DEFAULT_CAP, DEFAULT_D0, OrderedGroup, UndecidedAtCap, expand_runs
from .series import Order, Series, add_into, mul_terms
from .words import Generator, Word, format_word, parse_word

NAME = "w"

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


@dataclass(frozen=True)
class SurfacePresentation:
    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def generators(self) -> list[Generator]:
        return [Generator(NAME, r) for r in range(1, self.rank + 1)]

    @property
    def relator(self) -> Word:
        gs = self.generators
        return Word([(g, 1) for g in gs] + [(g, -1) for g in gs])

    def relator_ints(self) -> tuple[int, ...]:
        n = self.rank
        return tuple(range(1, n + 1)) + tuple(-r for r in range(1, n + 1))


def presentation(genus: int) -> SurfacePresentation:
    return SurfacePresentation(genus)


def to_ints(w: Word, genus: int | None = None) -> tuple[int, ...]:
    out = []
    for g, e in w.letters:
        if not isinstance(g, Generator) or g.name != NAME or not isinstance(g.index, int):
            raise ValueError(f"letter {g} is not a surface generator {NAME}_r")
        if genus is not None and not 1 <= g.index <= 2 * genus:
            raise ValueError(f"{g} out of range for genus {genus}")
        out.append(g.index * e)
    return tuple(out)


def from_ints(xs: Iterable[int]) -> Word:
    return Word((Generator(NAME, abs(x)), 1 if x > 0 else -1) for x in xs)


def _free_reduce(xs: Iterable[int]) -> list[int]:
    out: list[int] = []
    for x in xs:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _runs(xs: Iterable[int]) -> list[tuple[int, int]]:
    """``[(variable, signed exponent), ...]`` for a signed-int word."""
    out: list[list[int]] = []
    for x in xs:
        e = 1 if x > 0 else -1
        if out and out[-1][0] == abs(x) and (out[-1][1] > 0) == (e > 0):
            out[-1][1] += e
        else:
            out.append([abs(x), e])
    return [(g, k) for g, k in out]


def _inv(xs: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(xs))


# ---------------------------------------------------------------------------
# word problem

@lru_cache(maxsize=None)
def _dehn_table(genus: int) -> dict[int, dict[tuple, tuple]]:
    """Subwords longer than half a relator, keyed by length, with their shorter equivalents."""
    r = SurfacePresentation(genus).relator_ints()
    n = len(r)
    table: dict[int, dict[tuple, tuple]] = {}
    for cyc in (r, _inv(r)):
        for i in range(n):
            rot = cyc[i:] + cyc[:i]
            for k in range(n // 2 + 1, n + 1):
                # rot = s t = 1, so s = t^-1
                table.setdefault(k, {}).setdefault(rot[:k], _inv(rot[k:]))
    return table


def dehn_reduce(xs: Iterable[int], genus: int) -> tuple[int, ...]:
    """Dehn's algorithm; returns the final word (empty iff trivial)."""
    w = _free_reduce(xs)
    table = _dehn_table(genus)
    lengths = sorted(table, reverse=True)
    changed = True
    while changed and w:
        changed = False
        for k in lengths:
            sub = table[k]
            for i in range(len(w) - k + 1):
                rep = sub.get(tuple(w[i:i + k]))
                if rep is not None:
                    w = _free_reduce(w[:i] + list(rep) + w[i + k:])
                    changed = True
                    break
            if changed:
                break
    return tuple(w)


def is_trivial(w: Word, p: SurfacePresentation | int) -> bool:
    genus = p.genus if isinstance(p, SurfacePresentation) else p
    return _is_trivial_ints(to_ints(w, genus), genus)


def _is_trivial_ints(xs: tuple[int, ...], genus: int) -> bool:
    if genus == 1:
        tot = [0, 0, 0]
        for x in xs:
            tot[abs(x)] += 1 if x > 0 else -1
        return tot[1] == 0 and tot[2] == 0
    return not dehn_reduce(xs, genus)


# ---------------------------------------------------------------------------
# truncated rewriting for Q<<X>> / (M(r) - 1)

def _leading(f: Mapping[tuple, object]) -> tuple:
    low = min(len(m) for m in f)
    return max(m for m in f if len(m) == low)


def _occurs(big: tuple, small: tuple) -> int:
    k = len(small)
    for i in range(len(big) - k + 1):
        if big[i:i + k] == small:
            return i
    return -1


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    add_into(out, b, -1)
    return out


class _Rewriter:
    """Memoized normal forms for a fixed rule set.

    ``times(b, x)`` is the normal form of ``b * X_x`` for an irreducible
    monomial ``b``; any reducible occurrence in ``b x`` is a suffix.
    """

    def __init__(self, rules: Mapping[tuple, dict], degree: int):
        self.rules = rules
        self.degree = degree
        self._times: dict = {}
        self._mono: dict = {(): {(): 1}}
        self._by_last: dict[int, list[tuple]] = {}
        for lead in rules:
            self._by_last.setdefault(lead[-1], []).append(lead)

    def times(self, b: tuple, x: int) -> dict:
        key = (b, x)
        hit = self._times.get(key)
        if hit is not None:
            return hit
        m = b + (x,)
        if len(m) > self.degree:
            out: dict = {}
        else:
            out = {m: 1}
            for lead in self._by_last.get(x, ()):
                k = len(lead)
                if m[-k:] == lead:
                    u = m[:-k]
                    out = {}
                    for t, c in self.rules[lead].items():
                        add_into(out, self.fold(u, t), c)
                    break
        self._times[key] = out
        return out

    def fold(self, b: tuple, t: tuple) -> dict:
        """Normal form of ``b * t`` for irreducible ``b``."""
        if len(b) + len(t) > self.degree:
            return {}
        cur: dict = {b: 1}
        for x in t:
            cur = self.mul_var(cur, x)
            if not cur:
                break
        return cur

    def mul_var(self, v: Mapping, x: int) -> dict:
        out: dict = {}
        for b, c in v.items():
            add_into(out, self.times(b, x), c)
        return out

    def mono(self, m: tuple) -> dict:
        hit = self._mono.get(m)
        if hit is None:
            hit = self.mul_var(self.mono(m[:-1]), m[-1]) if len(m) <= self.degree else {}
            self._mono[m] = hit
        return hit

    def reduce(self, f: Mapping) -> dict:
        out: dict = {}
        for m, c in f.items():
            add_into(out, self.mono(m), c)
        return out


def reduce_naive(f: Mapping, rules: Mapping[tuple, dict], degree: int,
                 strategy: str = "leftmost") -> dict:
    """Plain rewriting, one occurrence at a time.

    ``strategy`` is ``"leftmost"`` (rules in insertion order, lowest monomial
    first, leftmost occurrence) or ``"rightmost"`` (reverse rule order,
    highest monomial first, rightmost occurrence).
    """
    f = {m: c for m, c in f.items() if len(m) <= degree and c}
    leads = list(rules)
    if strategy == "rightmost":
        leads.reverse()
    elif strategy != "leftmost":
        raise ValueError(f"unknown strategy {strategy!r}")
    while True:
        mons = sorted(f, key=lambda m: (len(m), m), reverse=(strategy == "rightmost"))
        hit = None
        for m in mons:
            for lead in leads:
                if strategy == "leftmost":
                    i = _occurs(m, lead)
                else:
                    i = _occurs(m[::-1], lead[::-1])
                    i = -1 if i < 0 else len(m) - i - len(lead)
                if i >= 0:
                    hit = (m, lead, i)
                    break
            if hit:
                break
        if hit is None:
            return f
        m, lead, i = hit
        c = f.pop(m)
        u, v = m[:i], m[i + len(lead):]
        room = degree - len(u) - len(v)
        for t, ct in rules[lead].items():
            if len(t) <= room:
                mm = u + t + v
                val = f.get(mm, 0) + c * ct
                if val:
                    f[mm] = val
                else:
                    f.pop(mm, None)


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def complete(generators: Iterable[Mapping], degree: int) -> dict[tuple, dict]:
    """Degree-truncated two-sided completion of the ideal spanned by ``generators``.

    Returns ``{lead: tail}`` with ``lead - tail`` in the ideal, leads pairwise
    non-overlapping-inclusive, and tails fully reduced.
    """
    rules: dict[tuple, dict] = {}
    queue = [dict(g) for g in generators]
    while queue:
        f = reduce_naive(queue.pop(0), rules, degree)
        if not f:
            continue
        lead = _leading(f)
        c = f[lead]
        if not c:  # pragma: no cover - guarded, cannot happen for nonzero terms
            raise ArithmeticError("zero leading coefficient")
        tail = {m: _normalize(Fraction(-v) / c) for m, v in f.items() if m != lead}
        for old in [w for w in rules if _occurs(w, lead) >= 0]:
            queue.append(_sub({old: 1}, rules.pop(old)))
        rules[lead] = tail
        for other in list(rules):
            queue.extend(_overlaps(lead, rules[lead], other, rules[other], degree))
            if other != lead:
                queue.extend(_overlaps(other, rules[other], lead, rules[lead], degree))
    for lead in list(rules):
        rules[lead] = reduce_naive(rules[lead], rules, degree)
    return rules


def _overlaps(w1: tuple, t1: dict, w2: tuple, t2: dict, degree: int) -> list[dict]:
    """S-elements for ``w1 = A B``, ``w2 = B C``: ``A t2 - t1 C``."""
    out = []
    for k in range(1, min(len(w1), len(w2))):
        if w1[-k:] != w2[:k]:
            continue
        a, cc = w1[:-k], w2[k:]
        if len(a) + len(w2) > degree:
            continue
        s = mul_terms({a: 1}, t2, degree)
        add_into(s, mul_terms(t1, {cc: 1}, degree), -1)
        if s:
            out.append(s)
    return out


@dataclass
class ReductionSystem:
    """Confluent truncated rewriting system for ``Q<<X_1..X_2g>> / (M(r) - 1)``.

    Variables are the integers ``1..2g`` with their natural order.
    """

    genus: int
    degree: int
    rules: dict[tuple, dict]
    _rw: _Rewriter = field(init=False, repr=False)

    def __post_init__(self):
        self._rw = _Rewriter(self.rules, self.degree)

    def reduce(self, f: Series | Mapping) -> dict:
        terms = f.terms if isinstance(f, Series) else f
        return self._rw.reduce({m: c for m, c in terms.items() if len(m) <= self.degree})

    def reduce_naive(self, f: Series | Mapping, strategy: str = "leftmost") -> dict:
        terms = f.terms if isinstance(f, Series) else f
        return reduce_naive(terms, self.rules, self.degree, strategy)

    def mul_var(self, v: Mapping, x: int) -> dict:
        return self._rw.mul_var(v, x)

    def is_reduced(self, f: Mapping) -> bool:
        return all(_occurs(m, lead) < 0 for m in f for lead in self.rules)

    def to_json(self) -> dict:
        return {
            "schema": "braidorder.reduction-system/1",
            "genus": self.genus,
            "degree": self.degree,
            "rules": [
                {"lead": list(lead),
                 "tail": Series(self.degree, tail, clean=True).to_json(var_id=int)["terms"]}
                for lead, tail in sorted(self.rules.items())
            ],
        }


@lru_cache(maxsize=None)
def build_reduction_system(p: SurfacePresentation | int, d: int) -> ReductionSystem:
    genus = p.genus if isinstance(p, SurfacePresentation) else p
    if d < 2:
        raise ValueError("degree must be >= 2")
    pres = SurfacePresentation(genus)
    r = expand_runs(_runs(pres.relator_ints()), d)
    r.pop(())
    return ReductionSystem(genus, d, complete([r], d))


# ---------------------------------------------------------------------------
# elements, expansion, order

class SurfaceElem:
    """Element of ``pi_1`` of the genus-``g`` surface.

    Stores whichever reduced word it was built from; equality is group
    equality.
    """

    __slots__ = ("word", "genus", "_ints")

    def __init__(self, word: Word | str, genus: int):
        if isinstance(word, str):
            word = parse_word(word, NAME)
        self.word = word
        self.genus = genus
        self._ints = to_ints(word, genus)

    @classmethod
    def identity(cls, genus: int) -> SurfaceElem:
        return cls(Word.identity(), genus)

    @classmethod
    def gen(cls, r: int, genus: int, exponent: int = 1) -> SurfaceElem:
        return cls(Word.gen(Generator(NAME, r), exponent), genus)

    @classmethod
    def from_ints(cls, xs: Iterable[int], genus: int) -> SurfaceElem:
        return cls(from_ints(xs), genus)

    @property
    def ints(self) -> tuple[int, ...]:
        return self._ints

    def __mul__(self, other: SurfaceElem) -> SurfaceElem:
        self._check(other)
        return SurfaceElem(self.word * other.word, self.genus)

    def inverse(self) -> SurfaceElem:
        return SurfaceElem(self.word.inverse(), self.genus)

    def is_identity(self) -> bool:
        return _is_trivial_ints(self._ints, self.genus)

    def _check(self, other: SurfaceElem) -> None:
        if self.genus != other.genus:
            raise ValueError("genus mismatch")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SurfaceElem):
            return NotImplemented
        if self.genus != other.genus:
            return False
        if self._ints == other._ints:
            return True
        return _is_trivial_ints(_inv(self._ints) + other._ints, self.genus)

    def __hash__(self) -> int:
        ab = [0] * (2 * self.genus + 1)
        for x in self._ints:
            ab[abs(x)] += 1 if x > 0 else -1
        return hash((self.genus, tuple(ab)))

    def __str__(self) -> str:
        return format_word(self.word)

    def __repr__(self) -> str:
        return f"SurfaceElem({format_word(self.word)!r}, genus={self.genus})"


@lru_cache(maxsize=200_000)
def _expand_ints(xs: tuple[int, ...], genus: int, d: int) -> dict:
    rs = build_reduction_system(genus, d)
    v: dict = {(): 1}
    for x, k in _runs(xs):
        if k > 0:
            for _ in range(k):
                nxt = dict(v)
                add_into(nxt, rs.mul_var(v, x))
                v = nxt
        else:
            for _ in range(-k):
                acc = dict(v)
                p = v
                for j in range(1, d + 1):
                    p = rs.mul_var(p, x)
                    if not p:
                        break
                    add_into(acc, p, -1 if j % 2 else 1)
                v = acc
    return v


def surface_expand(e: SurfaceElem, d: int) -> Series:
    """Reduced quotient Magnus expansion; variables are ``w`` generators."""
    if d < 2:
        raise ValueError("degree must be >= 2")
    terms = _expand_ints(e.ints, e.genus, d)
    gens = [None] + SurfacePresentation(e.genus).generators
    return Series(d, {tuple(gens[x] for x in m): c for m, c in terms.items()}, clean=True)


def _lowest(f: Mapping) -> tuple:
    low = min(len(m) for m in f)
    return min(m for m in f if len(m) == low)


def pi1_compare(a: SurfaceElem, b: SurfaceElem, d0: int = DEFAULT_D0,
                cap: int = DEFAULT_CAP) -> Order:
    """Bi-order on the surface group: ``LESS`` iff ``a < b``."""
    a._check(b)
    if a == b:
        return Order.EQUAL
    d = max(d0, 2)
    while d <= cap:
        diff = _sub(_expand_ints(b.ints, b.genus, d), _expand_ints(a.ints, a.genus, d))
        if diff:
            return Order.LESS if diff[_lowest(diff)] > 0 else Order.GREATER
        d *= 2
    raise UndecidedAtCap(cap, f"{a} vs {b} (genus {a.genus})")


def surface_group(genus: int, d0: int = DEFAULT_D0, cap: int = DEFAULT_CAP) -> OrderedGroup:
    return OrderedGroup(
        identity=SurfaceElem.identity(genus),
        multiply=lambda a, b: a * b,
        invert=lambda a: a.inverse(),
        compare=lambda a, b: pi1_compare(a, b, d0, cap),
        name=f"surface/genus-{genus}",
    )
