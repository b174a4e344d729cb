
import pytest

from braidorder.braid import (SCHEMA_CERT, BraidWord, artin_action, braid_equal, braid_relations,
                              check_delta_relation, delta_word, gamma_conjugate, identity_component,
                              is_identity, is_pure, make_gt_certificate, mirror,
                              mirror_respects_relations, permutation, presentation_equal,
                              verify_generalized_torsion)
from braidorder.words import Word, parse_word


def b(text, n):
    return BraidWord.parse(text, n)


def test_parse_and_print():
    assert str(b("s1 s_2^-1 s1^2", 3)) == "s1 s2^-1 s1 s1"
    assert str(b("1", 3)) == "1"
    with pytest.raises(ValueError):
        b("s3", 3)
    with pytest.raises(ValueError):
        b("t1", 3)
    with pytest.raises(ValueError):
        BraidWord(1)


def test_artin_action_of_generator():
    phi = artin_action(b("s1", 3))
    assert phi(parse_word("x_1")) == parse_word("x_1 x_2 x_1^-1")
    assert phi(parse_word("x_2")) == parse_word("x_1")
    assert phi(parse_word("x_3")) == parse_word("x_3")


def test_artin_action_fixes_full_product():
    for w in ["s1 s2^-1 s3", "s3^-1 s1 s1 s2"]:
        phi = artin_action(b(w, 4))
        assert phi(parse_word("x_1 x_2 x_3 x_4")) == parse_word("x_1 x_2 x_3 x_4")


def test_braid_relations_hold_and_distinct_generators_differ():
    for n in range(2, 7):
        for lhs, rhs, _ in braid_relations(n):
            assert braid_equal(lhs, rhs)
    assert not braid_equal(b("s1", 3), b("s2", 3))
    assert not is_identity(b("s1 s1", 2))
    assert is_identity(b("s1 s2 s1^-1 s2^-1 s2^-1 s1 s2 s1^-1", 3)) is False
    assert is_identity(b("s1 s2 s1 s2^-1 s1^-1 s2^-1", 3))


@pytest.mark.parametrize("n", range(2, 8))
def test_delta_relation(n):
    assert check_delta_relation(n).ok


def test_delta_word_shape():
    assert str(delta_word(3)) == "s1 s2 s1"
    assert len(delta_word(5)) == 10


def test_delta_squared_is_central_and_pure():
    for n in range(2, 6):
        d2 = delta_word(n) * delta_word(n)
        assert is_pure(d2)
        for i in range(1, n):
            s = BraidWord.gen(n, i)
            assert braid_equal(d2 * s, s * d2)


def test_mirror_is_involutive_and_respects_relations():
    w = b("s1 s3^-1 s2", 4)
    assert mirror(w) == b("s3^-1 s1 s2^-1", 4)
    assert mirror(mirror(w)) == w
    for n in range(2, 8):
        assert mirror_respects_relations(n).ok
    assert gamma_conjugate(w) == mirror(w)


def test_permutations():
    assert permutation(b("s1", 3)) == (2, 1, 3)
    assert permutation(delta_word(4)) == (4, 3, 2, 1)
    assert is_pure(b("s2 s2 s1^-1 s1^-1", 3))
    assert not is_pure(b("s2", 3))


@pytest.mark.parametrize("n", range(2, 8))
def test_certificates_valid_for_all_i(n):
    for i in range(1, n):
        cert = make_gt_certificate(n, i)
        assert cert.valid
        assumed = [s for s in cert.steps if s.status == "assumed"]
        assert len(assumed) == 3
        assert any("PB_" in s.claim for s in assumed)
        out = cert.to_json()
        assert out["schema"] == SCHEMA_CERT and out["valid"]
        assert out["g_word"] == f"s{i} s{i}"


def test_certificate_rejects_bad_input():
    with pytest.raises(ValueError):
        make_gt_certificate(1, 1)
    with pytest.raises(ValueError):
        make_gt_certificate(4, 4)


def test_certificate_conjugate_is_inverse_of_g():
    cert = make_gt_certificate(5, 2)
    c = cert.conjugate("Gamma Delta", cert.g)
    assert braid_equal(c, cert.g.inverse())
    with pytest.raises(ValueError):
        cert.conjugate("Delta", cert.g)


def test_certificate_fails_with_wrong_oracle():
    cert = make_gt_certificate(3, 1)
    assert not cert.verify(equal=lambda u, v: u == v)


def test_verify_generalized_torsion_generic():
    one = Word.identity()
    x = parse_word("x_1")
    kw = dict(is_identity=lambda w: not w, multiply=lambda a, c: a * c,
              conjugate=lambda h, g: h * g * h.inverse(), identity=one)
    assert not verify_generalized_torsion(x, [one, parse_word("x_2")], **kw)
    assert not verify_generalized_torsion(one, [one], **kw)
    with pytest.raises(ValueError):
        verify_generalized_torsion(x, [], **kw)
    # in Z/2, the generator is its own inverse
    kz = dict(is_identity=lambda a: a % 2 == 0, multiply=lambda a, c: a + c,
              conjugate=lambda h, g: g, identity=0)
    assert verify_generalized_torsion(1, [0, 0], **kz)


def test_bfs_oracle_agrees_with_artin_on_short_b3_words():
    component = identity_component(3, 10)
    letters = [1, -1, 2, -2]
    frontier, words = [()], [()]
    for _ in range(6):
        frontier = [w + (x,) for w in frontier for x in letters if not (w and w[-1] == -x)]
        words += frontier
    trivial = 0
    for w in words:
        bw = BraidWord(3, [(abs(x), 1 if x > 0 else -1) for x in w])
        artin = is_identity(bw)
        trivial += artin
        assert artin == (w in component), w
    assert trivial == 13


def test_bfs_oracle_direct():
    assert presentation_equal(b("s1 s2 s1", 3), b("s2 s1 s2", 3))
    assert presentation_equal(b("s1 s3", 4), b("s3 s1", 4))
    assert not presentation_equal(b("s1", 3), b("s2", 3), cap=6)
