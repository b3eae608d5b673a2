"""Partial permutation arithmetic against brute-force references."""

import doctest
import itertools
import random

import pytest
from hypothesis import given, strategies as st

import dimon.iperm as iperm
from dimon.iperm import (
    PartialPerm,
    all_partial_perms,
    classify_image_sequence,
    compose,
    empty_map,
    identity,
    inverse,
    is_monotone,
    is_order_preserving,
    is_order_reversing,
    is_orientation_preserving,
    is_orientation_reversing,
    is_oriented,
    is_restriction_of,
    named_generator,
    partial_identity,
    restrict,
)
from oracles import o_compose


def graph(f):
    return frozenset(f.pairs())


def test_doctests():
    failed, _ = doctest.testmod(iperm)
    assert failed == 0


def test_canonical_form_equality():
    a = PartialPerm.from_pairs(4, [(2, 4), (1, 1)])
    b = PartialPerm.from_pairs(4, [(1, 1), (2, 4)])
    assert a == b
    assert a.pairs() == ((1, 1), (2, 4))
    assert hash(a) == hash(b)


def test_construction_rejects_bad_maps():
    with pytest.raises(ValueError):
        PartialPerm.from_pairs(4, [(1, 5)])
    with pytest.raises(ValueError):
        PartialPerm.from_pairs(4, [(5, 1)])
    with pytest.raises(ValueError):
        PartialPerm.from_pairs(4, [(1, 2), (3, 2)])
    with pytest.raises(ValueError):
        PartialPerm.from_pairs(4, [(1, 2), (1, 3)])
    with pytest.raises(ValueError):
        PartialPerm.from_pairs(0, [])


def test_compose_examples():
    x = named_generator("x", 4)
    y = named_generator("y", 4)
    assert compose(x, y) == partial_identity(4, {1, 2, 3})  # e_4
    assert compose(y, x) == partial_identity(4, {2, 3, 4})  # e_1
    e1 = named_generator("e_i", 4, 1)
    e2 = named_generator("e_i", 4, 2)
    assert compose(e1, e2) == partial_identity(4, {3, 4})
    f = named_generator("g", 4)
    assert compose(identity(4), f) == f
    assert compose(f, identity(4)) == f
    with pytest.raises(ValueError):
        compose(identity(4), identity(5))


def test_compose_is_left_to_right():
    # apply the left factor first: 1 -(g)-> 2 -(e_2)-> undefined
    g = named_generator("g", 4)
    e2 = named_generator("e_i", 4, 2)
    assert compose(g, e2).apply(1) is None
    assert compose(e2, g).apply(1) == 2


def test_compose_matches_oracle_exhaustive_n3():
    perms = list(all_partial_perms(3))
    assert len(perms) == 34
    for f, g in itertools.product(perms, perms):
        assert graph(compose(f, g)) == o_compose(graph(f), graph(g))


def test_inverse_examples():
    assert inverse(named_generator("x", 4)) == named_generator("y", 4)
    assert inverse(empty_map(4)) == empty_map(4)
    assert inverse(named_generator("x_i", 4, 1)) == PartialPerm.from_pairs(
        4, [(1, 1), (4, 2)]
    )


def test_inverse_laws_sampled():
    rng = random.Random(7)
    perms = list(all_partial_perms(4))
    for _ in range(2000):
        f, g = rng.choice(perms), rng.choice(perms)
        assert compose(compose(f, inverse(f)), f) == f
        assert inverse(compose(f, g)) == compose(inverse(g), inverse(f))


def test_associativity_exhaustive_generator_products():
    gens = [named_generator(k, 4) for k in ("g", "h", "x", "y")]
    gens += [named_generator("e_i", 4, i) for i in range(1, 5)]
    gens += [named_generator("x_i", 4, 1), named_generator("y_i", 4, 1)]
    pool = {graph(f): f for f in gens}
    for f, g in itertools.product(gens, gens):
        fg = compose(f, g)
        pool.setdefault(graph(fg), fg)
    pool = list(pool.values())
    for f, g, h in itertools.product(pool, pool, pool):
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_associativity_random_triples_n6():
    rng = random.Random(20260814)
    perms = list(all_partial_perms(6))
    for _ in range(100_000):
        f, g, h = (rng.choice(perms) for _ in range(3))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_partial_identity_and_restrict():
    assert partial_identity(4, range(1, 5)) == identity(4)
    assert partial_identity(4, ()) == empty_map(4)
    assert partial_identity(4, {1, 2, 3}) == named_generator("e_i", 4, 4)
    with pytest.raises(ValueError):
        partial_identity(4, {0})
    g = named_generator("g", 4)
    h = named_generator("h", 4)
    assert restrict(g, range(1, 5)) == g
    assert restrict(h, {1, 4}) == PartialPerm.from_pairs(4, [(1, 4), (4, 1)])
    assert restrict(g, ()) == empty_map(4)
    # restriction to points outside the domain just drops them
    x = named_generator("x", 4)
    assert restrict(x, {3, 4}) == PartialPerm.from_pairs(4, [(3, 4)])


def test_is_restriction_of():
    assert is_restriction_of(named_generator("e_i", 4, 4), identity(4))
    h, g = named_generator("h", 4), named_generator("g", 4)
    hg = compose(h, g)
    assert hg.images == (1, 4, 3, 2)
    assert is_restriction_of(PartialPerm.from_pairs(4, [(1, 1), (2, 4)]), hg)
    assert not is_restriction_of(g, h)
    assert is_restriction_of(empty_map(4), g)
    with pytest.raises(ValueError):
        is_restriction_of(g, named_generator("e_i", 4, 1))
    with pytest.raises(ValueError):
        is_restriction_of(identity(4), identity(5))


def test_classify_image_sequence():
    g = named_generator("g", 4)
    kind = classify_image_sequence(g)
    assert kind.cyclic and not kind.anti_cyclic
    h = named_generator("h", 4)
    kind = classify_image_sequence(h)
    assert not kind.cyclic and kind.anti_cyclic
    kind = classify_image_sequence(empty_map(4))
    assert kind.cyclic and kind.anti_cyclic
    rank1 = PartialPerm.from_pairs(4, [(2, 3)])
    kind = classify_image_sequence(rank1)
    assert kind.cyclic and kind.anti_cyclic


def test_predicates_on_named_maps():
    g = named_generator("g", 4)
    h = named_generator("h", 4)
    assert is_orientation_preserving(g)
    assert not is_order_preserving(g)
    assert is_order_reversing(h)
    assert is_orientation_reversing(h)
    assert is_oriented(g) and is_oriented(h)
    for f in (empty_map(4), PartialPerm.from_pairs(4, [(3, 1)])):
        assert is_order_preserving(f)
        assert is_order_reversing(f)
        assert is_monotone(f)
        assert is_orientation_preserving(f)
        assert is_orientation_reversing(f)
    x = named_generator("x", 4)
    assert is_order_preserving(x) and not is_order_reversing(x)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_predicates_closed_under_composition(n):
    perms = list(all_partial_perms(n))
    op = [f for f in perms if is_order_preserving(f)]
    for f, g in itertools.product(op, op):
        assert is_order_preserving(compose(f, g))
    orp = [f for f in perms if is_orientation_preserving(f)]
    for f, g in itertools.product(orp, orp):
        assert is_orientation_preserving(compose(f, g))


def test_named_generator_examples_and_errors():
    assert named_generator("x", 4) == PartialPerm.from_pairs(
        4, [(1, 2), (2, 3), (3, 4)]
    )
    assert named_generator("x_i", 4, 1) == PartialPerm.from_pairs(4, [(1, 1), (2, 4)])
    assert named_generator("e_i", 4, 1) == partial_identity(4, {2, 3, 4})
    with pytest.raises(ValueError):
        named_generator("e_i", 4, 5)
    with pytest.raises(ValueError):
        named_generator("x_i", 4, 2)  # only i=1 exists at n=4
    with pytest.raises(ValueError):
        named_generator("h", 1)
    with pytest.raises(ValueError):
        named_generator("nope", 4)
    with pytest.raises(ValueError):
        named_generator("x", 4, 1)  # unindexed kind with an index


@pytest.mark.parametrize("n", range(2, 13))
def test_g_and_h_orders(n):
    g = named_generator("g", n)
    h = named_generator("h", n)
    acc = identity(n)
    for _ in range(n):
        acc = compose(acc, g)
    assert acc == identity(n)
    assert compose(h, h) == identity(n)


@pytest.mark.parametrize("n", range(2, 9))
def test_e_i_conjugation_identity(n):
    g = named_generator("g", n)
    e_n = named_generator("e_i", n, n)
    for i in range(1, n + 1):
        lhs = named_generator("e_i", n, i)
        rhs = identity(n)
        for _ in range(n - i):
            rhs = compose(rhs, g)
        rhs = compose(rhs, e_n)
        for _ in range(i):
            rhs = compose(rhs, g)
        assert lhs == rhs


def _power(f, k):
    acc = identity(f.degree)
    for _ in range(k):
        acc = compose(acc, f)
    return acc


@pytest.mark.parametrize("n", range(4, 9))
def test_reflection_conjugates_of_x_i_y_i(n):
    h = named_generator("h", n)
    x = named_generator("x", n)
    y = named_generator("y", n)
    m = (n - 1) // 2
    for i in range(1, m + 1):
        x_i = named_generator("x_i", n, i)
        y_i = named_generator("y_i", n, i)
        lhs = compose(compose(h, x_i), h)
        rhs = compose(compose(_power(y, n - i - 1), x_i), _power(x, i - 1))
        assert lhs == rhs
        lhs = compose(compose(h, y_i), h)
        rhs = compose(compose(_power(y, i - 1), y_i), _power(x, n - i - 1))
        assert lhs == rhs


@pytest.mark.parametrize("n", range(4, 9))
def test_rotation_conjugates_of_x_i_are_new(n):
    """g^r x_i g^s equals some x_j only in the trivial case r=s=0, i=j."""
    g = named_generator("g", n)
    m = (n - 1) // 2
    xs = {j: named_generator("x_i", n, j) for j in range(1, m + 1)}
    for i in range(1, m + 1):
        for r in range(2 * n):
            for s in range(2 * n):
                f = compose(compose(_power(g, r), xs[i]), _power(g, s))
                for j, x_j in xs.items():
                    if f == x_j:
                        assert r % n == 0 and s % n == 0 and i == j


def test_serialization_round_trip():
    for f in all_partial_perms(4):
        d = f.to_dict()
        assert set(d) == {"n", "map"}
        assert PartialPerm.from_dict(d) == f
    assert named_generator("x_i", 4, 1).to_dict() == {"n": 4, "map": [[1, 1], [2, 4]]}


@st.composite
def partial_perm_pairs(draw, max_degree=7):
    n = draw(st.integers(1, max_degree))

    def one():
        points = sorted(draw(st.sets(st.integers(1, n))))
        images = draw(st.permutations(points))
        return PartialPerm.from_pairs(n, list(zip(points, images)))

    return one(), one()


@given(partial_perm_pairs())
def test_algebraic_laws_property(pair):
    f, g = pair
    assert inverse(inverse(f)) == f
    assert compose(compose(f, inverse(f)), f) == f
    assert inverse(compose(f, g)) == compose(inverse(g), inverse(f))
    assert o_compose(graph(f), graph(g)) == graph(compose(f, g))
    assert PartialPerm.from_dict(f.to_dict()) == f


def test_all_partial_perms_counts():
    # sum over rank k of C(n,k)^2 k!
    assert sum(1 for _ in all_partial_perms(1)) == 2
    assert sum(1 for _ in all_partial_perms(2)) == 7
    assert sum(1 for _ in all_partial_perms(3)) == 34
    assert sum(1 for _ in all_partial_perms(4)) == 209
    seen = set(all_partial_perms(3))
    assert len(seen) == 34
