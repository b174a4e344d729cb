"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for just the summary lines.
"""

import time

import pytest

from braidorder import proptests as pt
from braidorder.braid import make_gt_certificate
from braidorder.knorder import FGen, KnElement, kn_compare
from braidorder.series import Order
from braidorder.surface import SurfaceElem
from braidorder.words import Word


def cfg(samples, **kw):
    return pt.RunConfig(samples=samples, seed=kw.pop("seed", 2024), **kw)


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def magnus_homomorphism():
    rep, secs = timed(pt.suite_homomorphism, cfg(1000))
    ok = rep.ok and rep.checked == 1000 and secs < 10
    return ok, f"{rep.checked} pairs, {len(rep.violations)} mismatches, {secs:.1f}s (limit 10s)"


def magnus_cone_axioms():
    rep, secs = timed(pt.suite_cone_axioms, cfg(10_000))
    pairs = rep.extra["pairs_per_rank"]
    ok = rep.ok and pairs >= 10_000 and secs < 60
    return ok, f"{pairs} (g, h) pairs in each of F2 and F3, {rep.checked} checks, {len(rep.violations)} violations, {secs:.1f}s (limit 60s)"


def h1_trivial_automorphisms():
    rep = pt.suite_h1_trivial(cfg(1000))
    control = pt.control_h1_changing(cfg(1000))
    ok = rep.ok and rep.checked == 1000 and not control.ok
    return ok, (f"{rep.checked} comparisons under 1000 automorphisms, {len(rep.violations)} violations; "
                f"control violations {len(control.violations)}")


def variable_permutations():
    rep = pt.suite_permutations(cfg(1000))
    control = pt.control_non_monotone(cfg(1000))
    ok = rep.ok and not control.ok
    return ok, (f"{rep.checked} comparisons over all permutations of <= 4 variables, "
                f"{len(rep.violations)} violations; control violations {len(control.violations)}")


def surface_word_problem():
    t = time.perf_counter()
    rep = pt.suite_surface_word_problem(cfg(1000, genus=2))
    cons = pt.suite_surface_consistency(cfg(0, genus=2), max_len=4)
    secs = time.perf_counter() - t
    ok = rep.ok and cons.ok and cons.checked == 3201 and secs < 120
    return ok, (f"{rep.checked} word-problem checks, {len(rep.violations)} wrong; "
                f"{cons.checked} words of length <= 4 consistent: {cons.ok}; {secs:.1f}s (limit 120s)")


def surface_order():
    rep = pt.suite_surface_order(cfg(1000), genera=(1, 2), max_len=6)
    rate = rep.extra["undecided_rate"]
    sides = rep.extra["per_side"]
    ok = rep.ok and rate < 0.01 and min(sides.values()) >= 1000
    return ok, (f"left {sides['left']} / right {sides['right']} checks, {len(rep.violations)} violations, "
                f"undecided rate {rate:.4f} (limit 0.01)")


def psi_order_preservation():
    rep = pt.suite_psi_order(cfg(0, strands=4, genus=2), pairs_per_cell=50)
    cases = rep.extra["cases"]
    ok = rep.ok and all(c["checked"] > 0 and c["violations"] == 0 for c in cases.values())
    detail = ", ".join(f"{k}: {v['checked']}/{v['violations']}" for k, v in cases.items())
    return ok, f"checked/violations by case: {detail}"


def kn_tuple_order():
    rep = pt.suite_kn_semidirect(cfg(1000, strands=4))
    one = SurfaceElem.identity(2)
    f12, f34 = FGen(1, 2, one), FGen(3, 4, one)
    low = KnElement(4, (Word.gen(f12, 7), Word.identity(), Word.identity()))
    high = KnElement(4, (Word.identity(), Word.identity(), Word.gen(f34)))
    dominance = (kn_compare(low, high) is Order.LESS
                 and kn_compare(high.replace(1, Word.gen(f12, -7)), high) is Order.LESS
                 and kn_compare(low.replace(3, Word.gen(f34, -1)), low) is Order.LESS)
    ok = rep.ok and rep.checked == 1000 and dominance
    return ok, f"{rep.checked} pairs, {len(rep.violations)} disagreements; dominance {dominance}"


def delta_relation():
    rep, secs = timed(pt.suite_delta, cfg(0))
    ok = rep.ok and rep.checked == sum(range(1, 7)) and secs < 5
    return ok, f"{rep.checked} (n, i) cases, {len(rep.violations)} failures, {secs:.2f}s (limit 5s)"


EMBEDDING_CLAIMS = ("disk relations hold", "!= 1 in PB_")


def gt_certificates():
    rep = pt.suite_certificates(cfg(0), bfs_cap=10)
    flagged = True
    for n in range(2, 8):
        for i in range(1, n):
            cert = make_gt_certificate(n, i)
            for key in EMBEDDING_CLAIMS:
                steps = [s for s in cert.steps if key in s.claim]
                flagged &= len(steps) == 1 and steps[0].status == "assumed"
    ok = rep.ok and flagged
    return ok, (f"{rep.checked} certificate and BFS checks, {len(rep.violations)} failures; "
                f"embedding steps flagged assumed: {flagged}")


def gt_dichotomy():
    rep = pt.suite_gt_dichotomy(cfg(1000))
    return rep.ok and rep.checked >= 3000, f"{rep.checked} checks, {len(rep.violations)} failures"


CRITERIA = [
    ("Magnus homomorphism", magnus_homomorphism),
    ("Magnus order cone axioms", magnus_cone_axioms),
    ("H1-trivial automorphisms preserve the order", h1_trivial_automorphisms),
    ("order-preserving variable permutations", variable_permutations),
    ("surface word problem", surface_word_problem),
    ("surface order bi-invariance", surface_order),
    ("Psi order preservation", psi_order_preservation),
    ("K_n tuple order", kn_tuple_order),
    ("Delta relation", delta_relation),
    ("generalized torsion certificates", gt_certificates),
    ("generalized torsion dichotomy", gt_dichotomy),
]


def line(name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"


@pytest.mark.parametrize("name,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + line(name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    for name, check in CRITERIA:
        print(line(name, *check()), flush=True)
