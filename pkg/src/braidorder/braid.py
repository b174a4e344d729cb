"""Artin braid groups and generalized-torsion certificates.

Braid equality is decided through the faithful Artin action on the free
group ``F_n``.  Conjugation by the Moebius-strip braid ``Gamma`` acts on
braid words as the mirror map ``s_j^e -> s_{n-j}^-e``; only that action is
represented, never ``Gamma`` itself.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterable, Sequence

from .magnus import Report
from .words import Generator, GeneratorMap, Word

SCHEMA_CERT = "braidorder.gt-certificate/1"


class BraidWord:
    """Word in ``s_1, ..., s_{n-1}``; not reduced, equality via :func:`braid_equal`."""

    __slots__ = ("n", "letters")

    def __init__(self, n: int, letters: Iterable[tuple[int, int]] = ()):
        if n < 2:
            raise ValueError("braid words need n >= 2 strands")
        self.n = n
        self.letters = tuple((int(i), int(e)) for i, e in letters)
        for i, e in self.letters:
            if not 1 <= i <= n - 1 or e not in (1, -1):
                raise ValueError(f"bad letter s_{i}^{e} for n={n}")

    @classmethod
    def gen(cls, n: int, i: int, exponent: int = 1) -> BraidWord:
        sign = 1 if exponent > 0 else -1
        return cls(n, [(i, sign)] * abs(exponent))

    @classmethod
    def parse(cls, text: str, n: int) -> BraidWord:
        letters = []
        for tok in text.split():
            if tok == "1":
                continue
            m = re.fullmatch(r"s_?(\d+)(?:\^(-?\d+))?", tok)
            if not m:
                raise ValueError(f"bad braid token {tok!r}")
            k = int(m.group(2) or 1)
            letters += [(int(m.group(1)), 1 if k > 0 else -1)] * abs(k)
        return cls(n, letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.n != other.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, [(i, -e) for i, e in reversed(self.letters)])

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        """Literal (letter-by-letter) equality; use :func:`braid_equal` for the group."""
        if not isinstance(other, BraidWord):
            return NotImplemented
        return self.n == other.n and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.n, self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.letters)

    def __repr__(self) -> str:
        return f"BraidWord({self.n}, {str(self)!r})"


def free_gens(n: int) -> list[Generator]:
    return [Generator("x", k) for k in range(1, n + 1)]


@lru_cache(maxsize=None)
def _sigma_images(n: int, i: int, e: int) -> dict:
    x = free_gens(n)
    a, b = Word.gen(x[i - 1]), Word.gen(x[i])
    if e == 1:
        return {x[i - 1]: a * b * a.inverse(), x[i]: a}
    return {x[i - 1]: b, x[i]: b.inverse() * a * b}


def artin_action(b: BraidWord) -> GeneratorMap:
    """Automorphism of ``F_n`` for ``b``; ``s_i: x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i``.

    A word acts as the composite ``phi_{s_1} o phi_{s_2} o ...``.
    """
    x = free_gens(b.n)
    current = GeneratorMap({g: Word.gen(g) for g in x})
    for i, e in b.letters:
        step = _sigma_images(b.n, i, e)
        images = dict(current.images)
        for g, w in step.items():
            images[g] = current(w)
        current = GeneratorMap(images)
    return current


def braid_equal(u: BraidWord, v: BraidWord) -> bool:
    if u.n != v.n:
        raise ValueError("strand counts differ")
    pu, pv = artin_action(u), artin_action(v)
    return all(pu.image(g) == pv.image(g) for g in free_gens(u.n))


def is_identity(b: BraidWord) -> bool:
    return braid_equal(b, BraidWord(b.n))


def delta_word(n: int) -> BraidWord:
    """Half twist ``(s_1...s_{n-1})(s_1...s_{n-2})...(s_1 s_2) s_1``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return BraidWord(n, [(i, 1) for top in range(n - 1, 0, -1) for i in range(1, top + 1)])


def mirror(b: BraidWord) -> BraidWord:
    return BraidWord(b.n, [(b.n - i, -e) for i, e in b.letters])


def gamma_conjugate(b: BraidWord) -> BraidWord:
    """``Gamma b Gamma^-1`` for the Moebius-strip braid ``Gamma``; equals the mirror image."""
    return mirror(b)


def permutation(b: BraidWord) -> tuple[int, ...]:
    """Image of each strand position (1-based) under the induced permutation."""
    perm = list(range(b.n + 1))
    for i, _ in b.letters:
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    # perm[p] = strand now at position p; invert to strand -> position
    out = [0] * (b.n + 1)
    for pos, strand in enumerate(perm):
        out[strand] = pos
    return tuple(out[1:])


def compose_permutations(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``q`` after ``p`` (apply ``p`` first)."""
    return tuple(q[p[k] - 1] for k in range(len(p)))


def is_pure(b: BraidWord) -> bool:
    return permutation(b) == tuple(range(1, b.n + 1))


def reversal(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


def check_delta_relation(n: int) -> Report:
    rep = Report(f"delta-relation n={n}")
    d = delta_word(n)
    for i in range(1, n):
        lhs = d * BraidWord.gen(n, i) * d.inverse()
        rep.checked += 1
        if not braid_equal(lhs, BraidWord.gen(n, n - i)):
            rep.record({"n": n, "i": i}, f"s{n - i}", str(lhs))
    return rep


def braid_relations(n: int) -> list[tuple[BraidWord, BraidWord, str]]:
    out = []
    for i in range(1, n - 1):
        a = BraidWord(n, [(i, 1), (i + 1, 1), (i, 1)])
        b = BraidWord(n, [(i + 1, 1), (i, 1), (i + 1, 1)])
        out.append((a, b, f"braid({i},{i + 1})"))
    for i in range(1, n):
        for j in range(i + 2, n):
            out.append((BraidWord(n, [(i, 1), (j, 1)]), BraidWord(n, [(j, 1), (i, 1)]),
                        f"commute({i},{j})"))
    return out


def mirror_respects_relations(n: int) -> Report:
    rep = Report(f"mirror-relations n={n}")
    for lhs, rhs, name in braid_relations(n):
        rep.checked += 1
        if not braid_equal(mirror(lhs), mirror(rhs)):
            rep.record({"relation": name}, "equal", "differ")
    return rep


# ---------------------------------------------------------------------------
# generalized torsion

def verify_generalized_torsion(g, conjugators: Sequence, *,
                               is_identity: Callable[[Any], bool],
                               multiply: Callable[[Any, Any], Any],
                               conjugate: Callable[[Any, Any], Any],
                               identity) -> bool:
    """True iff ``g != 1`` and ``prod_k conjugate(h_k, g) == 1`` under the oracle."""
    if not conjugators:
        raise ValueError("need at least one conjugator")
    if is_identity(g):
        return False
    prod = identity
    for h in conjugators:
        prod = multiply(prod, conjugate(h, g))
    return is_identity(prod)


@dataclass
class Step:
    claim: str
    status: str  # "checked" or "assumed"
    detail: str = ""
    lhs: BraidWord | None = None
    rhs: BraidWord | None = None
    holds: bool | None = None

    def to_json(self) -> dict:
        out = {"claim": self.claim, "status": self.status, "detail": self.detail}
        if self.lhs is not None:
            out["lhs"] = str(self.lhs)
            out["rhs"] = str(self.rhs)
        if self.holds is not None:
            out["holds"] = self.holds
        return out


@dataclass
class GtCertificate:
    """Witness that ``s_i^2`` is a generalized torsion element of ``PB_n(M)``.

    ``conjugators`` names ``1`` and ``Gamma Delta``; the conjugate by
    ``Gamma Delta`` is computed as ``mirror(Delta g Delta^-1)``.
    """

    n: int
    i: int
    g: BraidWord
    conjugators: list[str]
    steps: list[Step] = field(default_factory=list)

    def conjugate(self, h: str, g: BraidWord) -> BraidWord:
        if h == "1":
            return g
        if h == "Gamma Delta":
            d = delta_word(g.n)
            return gamma_conjugate(d * g * d.inverse())
        raise ValueError(f"unknown conjugator {h!r}")

    def conjugates(self) -> list[BraidWord]:
        return [self.conjugate(h, self.g) for h in self.conjugators]

    def equalities(self) -> list[Step]:
        """Checked steps that assert a braid-word equality."""
        return [s for s in self.steps if s.status == "checked" and s.lhs is not None]

    def verify(self, equal: Callable[[BraidWord, BraidWord], bool] = braid_equal) -> bool:
        """Re-run every checked step with the given equality oracle."""
        for s in self.steps:
            if s.status != "checked":
                continue
            if s.lhs is not None:
                if equal(s.lhs, s.rhs) is not s.holds:
                    return False
            elif not s.holds:
                return False
        return verify_generalized_torsion(
            self.g, self.conjugators,
            is_identity=lambda b: equal(b, BraidWord(b.n)),
            multiply=lambda a, b: a * b,
            conjugate=self.conjugate,
            identity=BraidWord(self.n),
        )

    @property
    def valid(self) -> bool:
        return self.verify()

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_CERT,
            "n": self.n,
            "i": self.i,
            "surface": "nonorientable",
            "g_word": str(self.g),
            "conjugators": list(self.conjugators),
            "steps": [s.to_json() for s in self.steps],
            "valid": self.valid,
        }


class CertificateError(AssertionError):
    pass


def make_gt_certificate(n: int, i: int) -> GtCertificate:
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 1 <= i <= n - 1:
        raise ValueError(f"need 1 <= i <= n-1, got i={i}")
    one = BraidWord(n)
    g = BraidWord.gen(n, i, 2)
    d = delta_word(n)
    conj_delta = d * g * d.inverse()
    target = BraidWord.gen(n, n - i, 2)
    mirrored = gamma_conjugate(conj_delta)
    steps: list[Step] = []

    def check(claim, lhs, rhs, expect=True, detail=""):
        steps.append(Step(claim, "checked", detail, lhs, rhs, braid_equal(lhs, rhs)))
        if steps[-1].holds is not expect:
            raise CertificateError(f"step failed: {claim}")

    check(f"Delta s{i}^2 Delta^-1 = s{n - i}^2 in B_{n}(D)", conj_delta, target,
          detail="Artin action")
    steps.append(Step("disk relations hold in B_n(N) and B_n(M)", "assumed",
                      "every isotopy extends by the identity outside D"))
    mrep = mirror_respects_relations(n)
    steps.append(Step("mirror map respects the braid relations", "checked",
                      f"{mrep.checked} relations", holds=mrep.ok))
    if not mrep.ok:
        raise CertificateError("mirror map is not a homomorphism")
    steps.append(Step("Gamma b Gamma^-1 = mirror(b) in B_n(N)", "assumed",
                      "conjugation by Gamma modelled by the mirror map"))
    check(f"(Gamma Delta) s{i}^2 (Gamma Delta)^-1 = s{i}^-2", mirrored,
          BraidWord.gen(n, i, -2), detail="mirror of the Delta conjugate")
    check(f"s{i}^2 [(Gamma Delta) s{i}^2 (Gamma Delta)^-1] = 1", g * mirrored, one,
          detail="product of conjugates")
    check(f"s{i}^2 != 1 in B_{n}(D)", g, one, expect=False, detail="Artin action")
    steps.append(Step(f"s{i}^2 != 1 in PB_{n}(M)", "assumed",
                      "embedding B_n(D) in B_n(M) for M not the sphere or projective plane"))
    pure_g = is_pure(g)
    steps.append(Step(f"s{i}^2 is pure", "checked", str(permutation(g)), holds=pure_g))
    gd_perm = compose_permutations(reversal(n), permutation(d))
    pure_gd = gd_perm == tuple(range(1, n + 1))
    steps.append(Step("Gamma Delta is pure", "checked",
                      f"Gamma reverses the points, Delta permutes by {permutation(d)}",
                      holds=pure_gd))
    if not (pure_g and pure_gd):
        raise CertificateError("purity check failed")
    cert = GtCertificate(n, i, g, ["1", "Gamma Delta"], steps)
    if not cert.verify():
        raise CertificateError("certificate does not verify")
    return cert


# ---------------------------------------------------------------------------
# independent oracle: search over presentation rewrites

@lru_cache(maxsize=None)
def _relator_moves(n: int) -> dict[tuple, list[tuple]]:
    """For each subword of a cyclic conjugate of a relator^{+-1}, its equivalents."""
    rels = []
    for lhs, rhs, _ in braid_relations(n):
        rels.append(_signed(lhs) + tuple(-x for x in reversed(_signed(rhs))))
    moves: dict[tuple, set] = {}
    for r in rels:
        for cyc in (r, tuple(-x for x in reversed(r))):
            L = len(cyc)
            for s in range(L):
                rot = cyc[s:] + cyc[:s]
                for k in range(1, L):
                    sub, rest = rot[:k], rot[k:]
                    moves.setdefault(sub, set()).add(tuple(-x for x in reversed(rest)))
    return {k: sorted(v) for k, v in moves.items()}


def _signed(b: BraidWord) -> tuple[int, ...]:
    return tuple(i * e for i, e in b.letters)


def _neighbours(w: tuple, n: int, cap: int):
    moves = _relator_moves(n)
    L = len(w)
    for i in range(L - 1):
        if w[i] == -w[i + 1]:
            yield w[:i] + w[i + 2:]
    if L + 2 <= cap:
        for i in range(L + 1):
            for x in range(1, n):
                for s in (x, -x):
                    yield w[:i] + (s, -s) + w[i:]
    for i in range(L):
        for j in range(i + 1, L + 1):
            for rep in moves.get(w[i:j], ()):
                nw = w[:i] + rep + w[j:]
                if len(nw) <= cap:
                    yield nw


def presentation_equal(u: BraidWord, v: BraidWord, cap: int = 10,
                       max_states: int = 2_000_000) -> bool:
    """Bidirectional breadth-first search over relation rewrites.

    True only if a chain of rewrites through words of length ``<= cap``
    connects ``u`` and ``v``; ``False`` means "not found within the cap".
    """
    if u.n != v.n:
        raise ValueError("strand counts differ")
    a, b = _signed(u), _signed(v)
    if a == b:
        return True
    seen = [{a}, {b}]
    frontier = [deque([a]), deque([b])]
    states = 2
    side = 0
    while frontier[0] and frontier[1] and states < max_states:
        if len(frontier[1]) < len(frontier[0]):
            side = 1
        else:
            side = 0
        nxt = deque()
        for w in frontier[side]:
            for nw in _neighbours(w, u.n, cap):
                if nw in seen[1 - side]:
                    return True
                if nw not in seen[side]:
                    seen[side].add(nw)
                    nxt.append(nw)
                    states += 1
        frontier[side] = nxt
    return False


def identity_component(n: int, cap: int = 10) -> set[tuple[int, ...]]:
    """All words of length ``<= cap`` reachable from the empty word by rewrites.

    Letters are signed generator indices.
    """
    seen = {()}
    frontier = deque([()])
    while frontier:
        w = frontier.popleft()
        for nw in _neighbours(w, n, cap):
            if nw not in seen:
                seen.add(nw)
                frontier.append(nw)
    return seen
