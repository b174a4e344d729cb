"""Truncated non-commutative power series with exact rational coefficients.

A monomial is a tuple of variables (the empty tuple is the constant
monomial).  Monomials are ordered by degree first, then lexicographically
with respect to a :class:`VariableOrder`.  Series are ordered by the sign of
the lowest nonzero term of their difference.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import cmp_to_key
from numbers import Rational
from typing import Any, Callable, Iterable, Iterator, Mapping

Monomial = tuple


class Order(enum.IntEnum):
    """Three-way comparison result.

    For :func:`series_compare`, ``EQUAL`` means "equal up to the common
    truncation degree" and is inconclusive about the untruncated series.
    """

    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, x: int) -> Order:
        return cls.LESS if x < 0 else cls.GREATER if x > 0 else cls.EQUAL

    def flip(self) -> Order:
        return Order(-self.value)

    @property
    def symbol(self) -> str:
        return {-1: "LT", 0: "EQ", 1: "GT"}[self.value]


class VariableOrder:
    """Strict total order on series variables.

    Built either from a sort key (``VariableOrder(key=...)``) or from a
    three-way comparator (``VariableOrder(cmp=...)``).  The default is the
    variables' natural ``<``.
    """

    def __init__(self, key: Callable[[Any], Any] | None = None,
                 cmp: Callable[[Any, Any], int] | None = None):
        if key is not None and cmp is not None:
            raise ValueError("give key or cmp, not both")
        self._cmp = cmp
        if cmp is not None:
            self.key = cmp_to_key(lambda a, b: int(cmp(a, b)))
        else:
            self.key = key if key is not None else _identity

    def compare(self, a: Any, b: Any) -> Order:
        if self._cmp is not None:
            return Order.of(int(self._cmp(a, b)))
        ka, kb = self.key(a), self.key(b)
        return Order.LESS if ka < kb else Order.GREATER if kb < ka else Order.EQUAL

    def mono_key(self, m: Monomial) -> tuple:
        return (len(m), tuple(self.key(v) for v in m))


def _identity(x):
    return x


NATURAL = VariableOrder()


def mono_compare(m1: Monomial, m2: Monomial, vo: VariableOrder = NATURAL) -> Order:
    if len(m1) != len(m2):
        return Order.LESS if len(m1) < len(m2) else Order.GREATER
    for a, b in zip(m1, m2):
        c = vo.compare(a, b)
        if c:
            return c
    return Order.EQUAL


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Series:
    """Element of ``Q<<X>>`` truncated at total degree ``degree``.

    ``terms`` maps monomials to nonzero coefficients (ints or Fractions).
    Instances are treated as immutable.
    """

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Mapping[Monomial, Rational] | None = None,
                 *, clean: bool = False):
        if degree < 0:
            raise ValueError("truncation degree must be >= 0")
        self.degree = degree
        if clean:
            self._terms = dict(terms or {})
        else:
            self._terms = {}
            for m, c in (terms or {}).items():
                m = tuple(m)
                if c and len(m) <= degree:
                    self._terms[m] = _norm(c)

    @classmethod
    def one(cls, degree: int) -> Series:
        return cls(degree, {(): 1}, clean=True)

    @classmethod
    def zero(cls, degree: int) -> Series:
        return cls(degree, {}, clean=True)

    @classmethod
    def monomial(cls, m: Iterable, degree: int, coeff: Rational = 1) -> Series:
        return cls(degree, {tuple(m): coeff})

    @property
    def terms(self) -> Mapping[Monomial, Rational]:
        return self._terms

    def __getitem__(self, m: Monomial):
        return self._terms.get(tuple(m), 0)

    def __iter__(self) -> Iterator[tuple[Monomial, Rational]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def constant(self):
        return self._terms.get((), 0)

    def variables(self) -> set:
        return {v for m in self._terms for v in m}

    def truncate(self, degree: int) -> Series:
        degree = min(degree, self.degree)
        return Series(degree, {m: c for m, c in self._terms.items() if len(m) <= degree},
                      clean=True)

    def homogeneous(self, k: int) -> dict:
        return {m: c for m, c in self._terms.items() if len(m) == k}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.degree == other.degree and self._terms == other._terms

    def agrees_with(self, other: Series) -> bool:
        """Equality at the smaller of the two truncation degrees."""
        d = min(self.degree, other.degree)
        return self.truncate(d)._terms == other.truncate(d)._terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: Series) -> Series:
        return add(self, other)

    def __sub__(self, other: Series) -> Series:
        return add(self, scale(-1, other))

    def __neg__(self) -> Series:
        return scale(-1, self)

    def __mul__(self, other: Series) -> Series:
        return mul(self, other)

    def __rmul__(self, q: Rational) -> Series:
        return scale(q, self)

    def to_json(self, vo: VariableOrder = NATURAL, var_id: Callable[[Any], Any] = str) -> dict:
        ordered = sorted(self._terms.items(), key=lambda t: vo.mono_key(t[0]))
        return {
            "degree": self.degree,
            "terms": [{"mono": [var_id(v) for v in m], "coeff": _coeff_json(c)}
                      for m, c in ordered],
        }

    def format(self, vo: VariableOrder = NATURAL, var_name: Callable[[Any], str] | None = None) -> str:
        name = var_name or default_var_name
        ordered = sorted(self._terms.items(), key=lambda t: vo.mono_key(t[0]))
        if not ordered:
            return "0"
        parts: list[str] = []
        for m, c in ordered:
            neg = c < 0
            mag = -c if neg else c
            body = " ".join(name(v) for v in m)
            if not m:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag} {body}"
            if not parts:
                parts.append(f"-{text}" if neg else text)
            else:
                parts.append(("- " if neg else "+ ") + text)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Series(degree={self.degree}, {self.format()!r})"


def _coeff_json(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return c


def default_var_name(v: Any) -> str:
    name = getattr(v, "name", None)
    index = getattr(v, "index", None)
    if isinstance(name, str) and index is not None:
        return f"{name.upper()}_{index}"
    if isinstance(v, int):
        return f"X_{v}"
    return str(v)


# ---------------------------------------------------------------------------
# ring operations on plain dicts (shared with the surface reduction code)

def add_into(acc: dict, terms: Mapping, coeff=1) -> None:
    for m, c in terms.items():
        v = acc.get(m, 0) + coeff * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def mul_terms(a: Mapping, b: Mapping, degree: int) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        room = degree - len(m1)
        if room < 0:
            continue
        for m2, c2 in b.items():
            if len(m2) <= room:
                m = m1 + m2
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    del out[m]
    return out


def add(f: Series, g: Series) -> Series:
    d = min(f.degree, g.degree)
    acc = {m: c for m, c in f.terms.items() if len(m) <= d}
    add_into(acc, {m: c for m, c in g.terms.items() if len(m) <= d})
    return Series(d, acc, clean=True)


def scale(q: Rational, f: Series) -> Series:
    if not q:
        return Series.zero(f.degree)
    return Series(f.degree, {m: _norm(q * c) for m, c in f.terms.items()}, clean=True)


def mul(f: Series, g: Series) -> Series:
    d = min(f.degree, g.degree)
    return Series(d, {m: _norm(c) for m, c in mul_terms(f.terms, g.terms, d).items()},
                  clean=True)


def unit_inverse(f: Series) -> Series:
    """Inverse of ``1 + eta`` as the truncated geometric series in ``-eta``."""
    if f.constant() != 1:
        raise ValueError(f"constant term must be 1, got {f.constant()}")
    d = f.degree
    neg_eta = {m: -c for m, c in f.terms.items() if m}
    acc: dict = {(): 1}
    power: dict = {(): 1}
    for _ in range(d):
        power = mul_terms(power, neg_eta, d)
        if not power:
            break
        add_into(acc, power)
    return Series(d, acc, clean=True)


def lowest_term(f: Series, vo: VariableOrder = NATURAL):
    """``(monomial, coefficient)`` of the least monomial, or ``None`` for zero."""
    if not f.terms:
        return None
    low = min(len(m) for m in f.terms)
    m = min((m for m in f.terms if len(m) == low), key=lambda m: tuple(vo.key(v) for v in m))
    return m, f.terms[m]


def series_compare(f: Series, g: Series, vo: VariableOrder = NATURAL) -> Order:
    """``LESS`` iff the lowest term of ``g - f`` is positive.

    ``EQUAL`` means the two agree up to the common truncation degree.
    """
    lt = lowest_term(g - f, vo)
    if lt is None:
        return Order.EQUAL
    return Order.LESS if lt[1] > 0 else Order.GREATER
