"""Relation families: counts, satisfaction, Tietze moves, forms words."""

import doctest
import random

import pytest

import dimon.presentations as presentations
from dimon.iperm import (
    compose,
    identity,
    is_restriction_of,
    named_generator,
)
from dimon.monoids import MonoidFamily, build_named, cyclic_permutations, dihedral_permutations
from dimon.presentations import (
    Assignment,
    Letter,
    Presentation,
    Relation,
    RelationFamily,
    add_relation,
    build_alphabet,
    build_assignment,
    build_extension_presentation,
    build_forms,
    build_relations,
    check_relations_hold,
    delete_relation,
    eliminate_generator,
    evaluate,
    expected_relation_count,
    odi_elimination_chain,
    opdi_elimination_chain,
    w1_w2_words,
    wprime1_words,
)

ALL_RELATION_FAMILIES = tuple(RelationFamily)

# the printed expansion of the VbarPrime list, counted by hand;
# it falls short of the closed form (35 at n=4) at every degree
VBARPRIME_LIST_COUNTS = {
    4: 32, 5: 67, 6: 77, 7: 126, 8: 141, 9: 204, 10: 224, 11: 301, 12: 326,
}


def test_doctests():
    failed, _ = doctest.testmod(presentations)
    assert failed == 0


def test_relation_family_parse():
    assert RelationFamily.parse("r") is RelationFamily.R
    assert RelationFamily.parse("VBARPRIME") is RelationFamily.VBAR_PRIME
    assert RelationFamily.parse("vbar_prime") is RelationFamily.VBAR_PRIME
    assert RelationFamily.parse("q-prime") is RelationFamily.Q_PRIME
    with pytest.raises(ValueError):
        RelationFamily.parse("W")


@pytest.mark.parametrize("n", [4, 5, 6, 9])
def test_alphabets(n):
    m = (n - 1) // 2
    q = (n + 1) // 2
    sizes = {
        RelationFamily.R: 2 + n + 2 * m,
        RelationFamily.U: 2 + n,
        RelationFamily.V: n + 2 * m,
        RelationFamily.VBAR: 1 + n + 2 * m,
        RelationFamily.VBAR_PRIME: 1 + q + 2 * m,
        RelationFamily.Q: 1 + n + m,
        RelationFamily.Q0: 1 + n,
        RelationFamily.Q_PRIME: 2 + m,
    }
    for family, want in sizes.items():
        letters = build_alphabet(family, n)
        assert len(letters) == want
        assert [letter.id for letter in letters] == list(range(want))
        assert len({letter.name for letter in letters}) == want
    assert build_alphabet(RelationFamily.VBAR, n)[0].name == "h"
    assert build_alphabet(RelationFamily.Q_PRIME, n)[0].name == "g"


def test_alphabet_degree_bound():
    with pytest.raises(ValueError):
        build_alphabet(RelationFamily.R, 3)
    with pytest.raises(ValueError):
        build_relations(RelationFamily.Q, 3)


@pytest.mark.parametrize("n", range(4, 13))
def test_relation_counts_match_closed_forms(n):
    for family in ALL_RELATION_FAMILIES:
        if family is RelationFamily.VBAR_PRIME:
            continue
        assert len(build_relations(family, n).relations) == expected_relation_count(
            family, n
        ), family
    # the list as printed, which is what build_relations constructs
    assert (
        len(build_relations(RelationFamily.VBAR_PRIME, n).relations)
        == VBARPRIME_LIST_COUNTS[n]
    )
    # the closed form counts something else; see the acceptance ledger
    assert (
        expected_relation_count(RelationFamily.VBAR_PRIME, n)
        != VBARPRIME_LIST_COUNTS[n]
    )


def test_relation_count_row_n4():
    row = {
        RelationFamily.R: 36,
        RelationFamily.V: 32,
        RelationFamily.VBAR: 38,
        RelationFamily.VBAR_PRIME: 35,
        RelationFamily.Q: 25,
        RelationFamily.Q_PRIME: 18,
        RelationFamily.U: 18,
        RelationFamily.Q0: 16,
    }
    for family, want in row.items():
        assert expected_relation_count(family, n=4) == want


@pytest.mark.parametrize("family", ALL_RELATION_FAMILIES)
@pytest.mark.parametrize("n", range(4, 9))
def test_relations_hold_under_generator_maps(family, n):
    p = build_relations(family, n)
    a = build_assignment(family, n)
    report = check_relations_hold(p, a)
    assert report.all_hold, [rel.tag for rel in report.failing]


def test_relation_tags():
    p = build_relations(RelationFamily.R, 5)
    assert all(rel.tag for rel in p.relations)
    assert p.tagged("R_1")
    assert p.tagged("R_11")
    assert all(rel.tag == "R_11" for rel in p.tagged("R_11"))
    # prefix matching is exact on the family_index part
    assert not set(p.tagged("R_1")) & set(p.tagged("R_11"))
    q = build_relations(RelationFamily.Q_PRIME, 6)
    assert q.tagged("Qp_6")
    assert q.tagged("Qp_10")


def test_presentation_validation():
    a, b = Letter(0, "a"), Letter(1, "b")
    with pytest.raises(ValueError):
        Presentation("p", (a, Letter(0, "b")), ())
    with pytest.raises(ValueError):
        Presentation("p", (a, Letter(2, "b")), ())
    with pytest.raises(ValueError):
        Presentation("p", (a, Letter(1, "a")), ())
    with pytest.raises(ValueError):
        Presentation("p", (a, b), (Relation(("a", "c"), ("b",), "t"),))
    p = Presentation("p", (a, b), (Relation(("a", "b"), (), "t"),))
    assert p.letter_names == ("a", "b")
    assert p.id_of("b") == 1
    assert p.word_ids(("b", "a", "b")) == (1, 0, 1)


def test_presentation_json_round_trip():
    p = build_relations(RelationFamily.VBAR, 5)
    d = p.to_json_dict()
    assert Presentation.from_json_dict(d) == p
    assert d["letters"] == list(p.letter_names)


def test_assignment_access():
    a = build_assignment(RelationFamily.R, 4)
    assert a.image("x") == named_generator("x", 4)
    assert a.image("e_3") == named_generator("e_i", 4, 3)
    assert a.image("x_1") == named_generator("x_i", 4, 1)
    with pytest.raises(KeyError):
        a.image("g")
    assert set(a.names()) == {"x", "y", "e_1", "e_2", "e_3", "e_4", "x_1", "y_1"}


def test_assignment_degree_mismatch_rejected():
    with pytest.raises(ValueError):
        Assignment(4, (("x", named_generator("x", 5)),))


def test_evaluate_is_a_homomorphism():
    a = build_assignment(RelationFamily.Q, 5)
    names = a.names()
    rng = random.Random(3)
    assert evaluate((), a) == identity(5)
    for _ in range(300):
        w1 = tuple(rng.choice(names) for _ in range(rng.randrange(6)))
        w2 = tuple(rng.choice(names) for _ in range(rng.randrange(6)))
        assert evaluate(w1 + w2, a) == compose(evaluate(w1, a), evaluate(w2, a))


def test_check_relations_hold_reports_failures():
    p = build_relations(RelationFamily.R, 4)
    bad = add_relation(p, Relation(("x",), ("y",), "bogus"), checked=False)
    report = check_relations_hold(bad, build_assignment(RelationFamily.R, 4))
    assert not report.all_hold
    assert [rel.tag for rel in report.failing] == ["bogus"]
    with pytest.raises(ValueError):
        check_relations_hold(p, build_assignment(RelationFamily.Q, 4))


@pytest.mark.parametrize("n", range(4, 9))
def test_extension_reproduces_vbar(n):
    vbar = build_relations(RelationFamily.VBAR, n)
    base = build_relations(RelationFamily.V, n)
    built = build_extension_presentation(
        base,
        "h",
        vbar.tagged("Vbar_1"),
        vbar.tagged("Vbar_2")[0],
        label=vbar.label,
        sq_tag="Vbar_0",
    )
    assert built == vbar


def test_extension_shape_validation():
    base = build_relations(RelationFamily.V, 4)
    conj = build_relations(RelationFamily.VBAR, 4).tagged("Vbar_1")
    u0 = build_relations(RelationFamily.VBAR, 4).tagged("Vbar_2")[0]
    with pytest.raises(ValueError):
        build_extension_presentation(base, "x", conj, u0)  # name collision
    with pytest.raises(ValueError):
        # conjugation relations must look like (new a, v new)
        build_extension_presentation(base, "h", (Relation(("x",), ("y",), "t"),), u0)
    with pytest.raises(ValueError):
        # u0 must end in the new letter
        build_extension_presentation(base, "h", conj, Relation(("x", "y"), ("y", "x"), "t"))


def test_eliminate_generator():
    p = build_relations(RelationFamily.R, 4)
    q = eliminate_generator(p, "e_4", ("x", "y"))
    assert q.label == "R(n=4)-e_4"
    assert "e_4" not in q.letter_names
    assert len(q.letters) == len(p.letters) - 1
    for rel in q.relations:
        assert "e_4" not in rel.lhs and "e_4" not in rel.rhs
    # relations that became trivial syntactic equalities are dropped
    assert len(q.relations) < len(p.relations)
    with pytest.raises(KeyError):
        eliminate_generator(p, "g", ("x",))
    with pytest.raises(ValueError):
        eliminate_generator(p, "e_4", ("x", "e_4"))


def test_elimination_chains_shape():
    chain = odi_elimination_chain(4)
    assert len(chain) == 3
    assert chain[0] == build_relations(RelationFamily.R, 4)
    assert "e_4" not in chain[1].letter_names
    assert "e_1" not in chain[2].letter_names
    chain = opdi_elimination_chain(5)
    assert len(chain) == 5
    assert chain[0] == build_relations(RelationFamily.Q, 5)
    assert chain[-1].letter_names == ("g", "e_1", "x_1", "x_2")


def test_add_delete_relation_checked():
    p = build_relations(RelationFamily.U, 4)
    bigger = add_relation(p, Relation(("x", "y"), ("e_4",), "known"), checked=True)
    assert len(bigger.relations) == len(p.relations) + 1
    with pytest.raises(ValueError):
        add_relation(p, Relation(("x",), ("y",), "wrong"), checked=True)
    # deleting the added redundant relation is allowed under checking
    back = delete_relation(bigger, bigger.tagged("known")[0], checked=True)
    assert len(back.relations) == len(p.relations)
    with pytest.raises(KeyError):
        delete_relation(p, Relation(("x",), ("y",), "absent"), checked=False)


def test_wprime1_words_count_and_alphabet():
    for n in (4, 5, 6, 7):
        words = wprime1_words(n)
        assert len(words) == 1 + n * n
        assert len(set(words)) == 1 + n * n
        allowed = {letter.name for letter in build_alphabet(RelationFamily.V, n)}
        for w in words:
            assert set(w) <= allowed


@pytest.mark.parametrize("n", range(4, 11))
def test_w1_w2_count_formula(n):
    want = (n + 1) * n * (n - 1) // 6 - ((1 + (-1) ** n) * n * n) // 8
    assert len(w1_w2_words(n)) == want


@pytest.mark.parametrize("n", [4, 5, 6])
def test_w1_w2_images_characterized(n):
    """The extra form words land exactly on the order-preserving maps
    that extend to a reflection but to no rotation, each of rank 2."""
    a = build_assignment(RelationFamily.R, n)
    images = {evaluate(w, a) for w in w1_w2_words(n)}
    assert len(images) == len(w1_w2_words(n))
    odi = set(build_named(MonoidFamily.ODI, n).elements)
    oci = set(build_named(MonoidFamily.OCI, n).elements)
    assert images == odi - oci
    rotations = cyclic_permutations(n)
    reflections = [p for p in dihedral_permutations(n) if p not in rotations]
    for f in images:
        assert f.rank() == 2
        assert any(is_restriction_of(f, p) for p in reflections)
        assert not any(is_restriction_of(f, p) for p in rotations)


def test_build_forms_requires_enumeration():
    with pytest.raises(ValueError):
        build_forms(RelationFamily.R, 4)
    with pytest.raises(ValueError):
        build_forms(RelationFamily.U, 4)


def test_q_forms_words():
    fs = build_forms(RelationFamily.Q, 4)
    assert fs.size == 77
    assert len(set(fs.words)) == 77
    # one word per element: the full-identity word, the rotation powers,
    # truncated rotations, and the rank-two sporadics
    a = build_assignment(RelationFamily.Q, 4)
    images = {evaluate(w, a) for w in fs.words}
    assert len(images) == 77
