"""Magnus expansion, the Magnus bi-order on free groups, and order checks.

The expansion sends ``x -> 1 + X`` and ``x^-1 -> 1 - X + X^2 - ...``.  Two
distinct words are compared by the sign of the lowest term of the
difference of their expansions; the truncation degree is doubled until the
expansions differ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Generic, Iterable, Sequence, TypeVar

from .series import NATURAL, Order, Series, VariableOrder, series_compare
from .words import Word

OrderResult = Order

DEFAULT_D0 = 4
DEFAULT_CAP = 32

T = TypeVar("T")


class UndecidedAtCap(RuntimeError):
    """Two distinct elements still agree at the maximal truncation degree."""

    def __init__(self, cap: int, detail: str = ""):
        msg = f"series agree up to degree cap {cap}"
        super().__init__(f"{msg}: {detail}" if detail else msg)
        self.cap = cap


def _power_coeffs(k: int, d: int) -> list[int]:
    """Coefficients of ``(1 + X)^k`` up to ``X^d`` (any integer ``k``)."""
    if k >= 0:
        return [comb(k, j) for j in range(min(k, d) + 1)]
    k = -k
    return [(-1) ** j * comb(k + j - 1, j) for j in range(d + 1)]


def expand_runs(runs: Iterable[tuple[Any, int]], d: int) -> dict:
    """Magnus expansion of a run-length word as a plain ``{monomial: coeff}`` dict."""
    acc: dict = {(): 1}
    for g, k in runs:
        coeffs = _power_coeffs(k, d)
        nxt: dict = {}
        for m, c in acc.items():
            room = d - len(m)
            for j in range(min(room, len(coeffs) - 1) + 1):
                mm = m + (g,) * j if j else m
                v = nxt.get(mm, 0) + c * coeffs[j]
                if v:
                    nxt[mm] = v
                else:
                    del nxt[mm]
        acc = nxt
    return acc


def magnus_expand(w: Word, d: int) -> Series:
    if d < 0:
        raise ValueError("degree must be >= 0")
    return Series(d, expand_runs(w.runs(), d), clean=True)


def rank_variables(variables: Iterable[Any], vo: VariableOrder) -> dict:
    """Map each distinct variable to its rank under ``vo``."""
    distinct = list(dict.fromkeys(variables))
    distinct.sort(key=vo.key)
    return {v: r for r, v in enumerate(distinct)}


def magnus_compare(a: Word, b: Word, vo: VariableOrder = NATURAL,
                   d0: int = DEFAULT_D0, cap: int = DEFAULT_CAP) -> Order:
    """Magnus order on the free group: ``LESS`` iff ``a < b``."""
    if d0 < 1:
        raise ValueError("d0 must be >= 1")
    if a == b:
        return Order.EQUAL
    # only the finitely many variables in play need ranks
    rank = rank_variables([g for g, _ in a.letters + b.letters], vo)
    ra = [(rank[g], k) for g, k in a.runs()]
    rb = [(rank[g], k) for g, k in b.runs()]
    d = d0
    while d <= cap:
        fa = Series(d, expand_runs(ra, d), clean=True)
        fb = Series(d, expand_runs(rb, d), clean=True)
        verdict = series_compare(fa, fb)
        if verdict is not Order.EQUAL:
            return verdict
        d *= 2
    raise UndecidedAtCap(cap, f"{a} vs {b}")


# ---------------------------------------------------------------------------
# ordered groups and combinators

@dataclass
class OrderedGroup(Generic[T]):
    identity: T
    multiply: Callable[[T, T], T]
    invert: Callable[[T], T]
    compare: Callable[[T, T], Order]
    name: str = ""

    def is_positive(self, g: T) -> bool:
        return self.compare(self.identity, g) is Order.LESS

    def sign(self, g: T) -> Order:
        """``GREATER`` for positive elements, ``LESS`` for negative ones."""
        return self.compare(self.identity, g).flip()

    def conjugate(self, h: T, g: T) -> T:
        return self.multiply(self.multiply(h, g), self.invert(h))


def free_group(vo: VariableOrder = NATURAL, d0: int = DEFAULT_D0,
               cap: int = DEFAULT_CAP) -> OrderedGroup[Word]:
    return OrderedGroup(
        identity=Word.identity(),
        multiply=lambda a, b: a * b,
        invert=lambda a: a.inverse(),
        compare=lambda a, b: magnus_compare(a, b, vo, d0, cap),
        name="free/magnus",
    )


@dataclass
class ExtensionDatum(Generic[T]):
    """Data of ``1 -> A -> B -> C -> 1`` for the extension order.

    ``kernel_compare`` orders elements of ``B`` lying in the kernel of
    ``project``; ``quotient_compare`` orders ``C``.
    """

    identity: T
    multiply: Callable[[T, T], T]
    invert: Callable[[T], T]
    project: Callable[[T], Any]
    quotient_identity: Any
    kernel_compare: Callable[[T, T], Order]
    quotient_compare: Callable[[Any, Any], Order]


def extension_compare(ext: ExtensionDatum, a, b) -> Order:
    """Order on ``B`` with positive cone ``alpha(P_A) u beta^-1(P_C)``."""
    diff = ext.multiply(b, ext.invert(a))
    q = ext.project(diff)
    verdict = ext.quotient_compare(ext.quotient_identity, q)
    if verdict is not Order.EQUAL:
        return verdict
    return ext.kernel_compare(ext.identity, diff)


def extension_group(ext: ExtensionDatum, name: str = "extension") -> OrderedGroup:
    return OrderedGroup(ext.identity, ext.multiply, ext.invert,
                        lambda a, b: extension_compare(ext, a, b), name)


# ---------------------------------------------------------------------------
# property harness

@dataclass
class Report:
    """Outcome of a property run: number of checks and the failures."""

    name: str
    checked: int = 0
    violations: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, inputs, expected, got) -> None:
        self.violations.append({"inputs": inputs, "expected": expected, "got": got})

    def merge(self, other: Report) -> Report:
        self.checked += other.checked
        self.violations.extend(other.violations)
        return self

    def to_json(self, max_violations: int | None = 50) -> dict:
        vs = self.violations if max_violations is None else self.violations[:max_violations]
        out = {"name": self.name, "checked": self.checked,
               "violation_count": len(self.violations),
               "violations": [_jsonable(v) for v in vs]}
        out.update(_jsonable(self.extra))
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Order):
        return x.symbol
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


def check_cone_axioms(group: OrderedGroup, sample: Sequence, bi: bool = True) -> Report:
    """Check the positive-cone axioms on all pairs drawn from ``sample``.

    * each element is exactly one of positive, identity, inverse-positive;
    * products of positives are positive;
    * (``bi``) conjugates of positives are positive.
    """
    rep = Report("cone-axioms")
    pos = []
    for g in sample:
        p = group.is_positive(g)
        n = group.is_positive(group.invert(g))
        e = group.compare(g, group.identity) is Order.EQUAL
        rep.checked += 1
        if p + n + e != 1:
            rep.record([g], "exactly one of positive/identity/negative",
                       {"positive": p, "inverse_positive": n, "identity": e})
        pos.append(p)
    for g, pg in zip(sample, pos):
        if not pg:
            continue
        for h, ph in zip(sample, pos):
            if ph:
                rep.checked += 1
                if not group.is_positive(group.multiply(g, h)):
                    rep.record([g, h], "g*h positive", "not positive")
            if bi:
                rep.checked += 1
                if not group.is_positive(group.conjugate(h, g)):
                    rep.record([g, h], "h*g*h^-1 positive", "not positive")
    return rep


def check_gt_absence(group: OrderedGroup, g, conjugators: Sequence) -> bool:
    """Sign argument against generalized torsion for ``g``.

    True when every conjugate ``h g h^-1`` has the sign of ``g`` and the
    product of these conjugates is nontrivial with that same sign.
    """
    sign = group.sign(g)
    if sign is Order.EQUAL:
        raise ValueError("g must not be the identity")
    if not conjugators:
        raise ValueError("need at least one conjugator")
    prod = group.identity
    for h in conjugators:
        c = group.conjugate(h, g)
        if group.sign(c) is not sign:
            return False
        prod = group.multiply(prod, c)
    return group.sign(prod) is sign


def check_order_preserved_by(phi: Callable, compare: Callable, pairs: Iterable[tuple],
                             target_compare: Callable | None = None) -> Report:
    """Check ``a < b  =>  phi(a) < phi(b)`` on the given pairs.

    ``phi`` may be a :class:`GeneratorMap` or any callable.  ``target_compare``
    orders the image side when it differs from ``compare``.
    """
    tgt = target_compare or compare
    rep = Report("order-preserved")
    for a, b in pairs:
        c = compare(a, b)
        if c is Order.EQUAL:
            continue
        if c is Order.GREATER:
            a, b = b, a
        rep.checked += 1
        got = tgt(phi(a), phi(b))
        if got is not Order.LESS:
            rep.record([a, b], "LT", got)
    return rep
