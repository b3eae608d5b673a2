"""Brute-force reference constructions, independent of the package.

Everything here recomputes family elements from first principles,
representing a partial injection as a frozenset of (point, image)
pairs.  Tests compare the package's breadth-first closures, cardinality
formulas and Green's classes against these direct constructions, so a
bug would have to appear in two unrelated code paths to go unnoticed.
"""

from __future__ import annotations

import itertools

Graph = frozenset  # of (point, image) pairs


def o_compose(f: Graph, g: Graph) -> Graph:
    gd = dict(g)
    return frozenset((p, gd[q]) for p, q in f if q in gd)


def o_rotations(n: int) -> list[Graph]:
    """The n rotations of the n-gon as total maps."""
    return [
        frozenset((p, (p + k - 1) % n + 1) for p in range(1, n + 1))
        for k in range(n)
    ]


def o_symmetries(n: int) -> list[Graph]:
    """All 2n symmetries of the n-gon: rotations and reflections."""
    flip = frozenset((p, n + 1 - p) for p in range(1, n + 1))
    rots = o_rotations(n)
    return rots + [o_compose(flip, r) for r in rots]


def o_restrictions(perms: list[Graph], n: int) -> set[Graph]:
    """Every restriction of every map in perms to a subset of {1..n}."""
    out: set[Graph] = set()
    for perm in perms:
        graph = sorted(perm)
        for k in range(n + 1):
            for rows in itertools.combinations(graph, k):
                out.add(frozenset(rows))
    return out


def _image_seq(f: Graph) -> list[int]:
    return [q for _, q in sorted(f)]


def o_order_preserving(f: Graph) -> bool:
    seq = _image_seq(f)
    return all(a < b for a, b in zip(seq, seq[1:]))


def o_order_reversing(f: Graph) -> bool:
    seq = _image_seq(f)
    return all(a > b for a, b in zip(seq, seq[1:]))


def o_monotone(f: Graph) -> bool:
    return o_order_preserving(f) or o_order_reversing(f)


def o_orientation_preserving(f: Graph) -> bool:
    seq = _image_seq(f)
    t = len(seq)
    return sum(seq[k] > seq[(k + 1) % t] for k in range(t)) <= 1


def o_family_elements(family: str, n: int) -> set[Graph]:
    """Direct construction of each monoid family, no generator closure."""
    if family == "di":
        return o_restrictions(o_symmetries(n), n)
    if family == "ci":
        return o_restrictions(o_rotations(n), n)
    if family == "odi":
        return {f for f in o_family_elements("di", n) if o_order_preserving(f)}
    if family == "mdi":
        return {f for f in o_family_elements("di", n) if o_monotone(f)}
    if family == "opdi":
        return {
            f for f in o_family_elements("di", n) if o_orientation_preserving(f)
        }
    if family == "oci":
        return {f for f in o_family_elements("ci", n) if o_order_preserving(f)}
    raise ValueError(f"unknown family {family!r}")


def o_family_size(family: str, n: int) -> int:
    return len(o_family_elements(family, n))
