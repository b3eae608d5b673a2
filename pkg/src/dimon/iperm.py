"""Partial permutations on the finite chain {1 < 2 < ... < n}.

A partial permutation is an injective map between two subsets of
{1, ..., n}.  Under composition they form the symmetric inverse monoid
on n points; every monoid this package builds lives inside it.

Composition is read left to right: ``compose(f, g)`` applies ``f``
first and then ``g``, so the product is defined on the points p for
which both p.f and (p.f).g are defined.  All the generator identities
used elsewhere (for instance ``compose(x, y) == e_n``) assume this
order.

Maps are stored densely: ``images[p - 1]`` holds the image of the
point p, or 0 when p is outside the domain.  Two maps are equal iff
they have the same degree and the same graph.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Iterable, Iterator, NamedTuple

Point = int


@dataclasses.dataclass(frozen=True)
class PartialPerm:
    """An injective partial map on {1, ..., degree}.

    >>> f = PartialPerm.from_pairs(4, [(1, 2), (3, 4)])
    >>> f.domain()
    (1, 3)
    >>> f.image()
    (2, 4)
    >>> f.rank()
    2
    """

    degree: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.degree
        if n < 1:
            raise ValueError(f"degree must be at least 1, got {n}")
        if len(self.images) != n:
            raise ValueError(
                f"images has length {len(self.images)}, expected degree {n}"
            )
        seen = 0
        for img in self.images:
            if img == 0:
                continue
            if not 1 <= img <= n:
                raise ValueError(f"image point {img} outside 1..{n}")
            bit = 1 << img
            if seen & bit:
                raise ValueError(f"image point {img} repeated: map not injective")
            seen |= bit

    @classmethod
    def from_pairs(
        cls, degree: int, pairs: Iterable[tuple[Point, Point]]
    ) -> "PartialPerm":
        """Build a map from (point, image) pairs."""
        images = [0] * degree
        for p, q in pairs:
            if not 1 <= p <= degree:
                raise ValueError(f"domain point {p} outside 1..{degree}")
            if images[p - 1]:
                raise ValueError(f"domain point {p} listed twice")
            images[p - 1] = q
        return cls(degree, tuple(images))

    def apply(self, p: Point) -> Point | None:
        """Image of p, or None when p is outside the domain."""
        if not 1 <= p <= self.degree:
            raise ValueError(f"point {p} outside 1..{self.degree}")
        img = self.images[p - 1]
        return img if img else None

    def pairs(self) -> tuple[tuple[Point, Point], ...]:
        """The graph of the map, sorted by domain point."""
        return tuple(
            (p, img) for p, img in enumerate(self.images, start=1) if img
        )

    def domain(self) -> tuple[Point, ...]:
        return tuple(p for p, img in enumerate(self.images, start=1) if img)

    def image(self) -> tuple[Point, ...]:
        return tuple(sorted(img for img in self.images if img))

    def rank(self) -> int:
        """Number of points in the domain (= size of the image)."""
        return sum(1 for img in self.images if img)

    def is_total(self) -> bool:
        return all(self.images)

    def __mul__(self, other: "PartialPerm") -> "PartialPerm":
        return compose(self, other)

    def __repr__(self) -> str:
        body = ", ".join(f"{p}->{q}" for p, q in self.pairs())
        return f"PartialPerm({self.degree}; {body})"

    def to_dict(self) -> dict:
        """JSON-ready form: {"n": degree, "map": [[p, q], ...]}."""
        return {"n": self.degree, "map": [list(pq) for pq in self.pairs()]}

    @classmethod
    def from_dict(cls, data: dict) -> "PartialPerm":
        return cls.from_pairs(data["n"], [tuple(pq) for pq in data["map"]])


def compose(f: PartialPerm, g: PartialPerm) -> PartialPerm:
    """Apply f first, then g.

    >>> x = named_generator("x", 4)
    >>> y = named_generator("y", 4)
    >>> compose(x, y) == named_generator("e_i", 4, 4)
    True
    >>> compose(y, x) == named_generator("e_i", 4, 1)
    True
    """
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} != {g.degree}")
    gi = g.images
    return PartialPerm(
        f.degree,
        tuple(gi[img - 1] if img else 0 for img in f.images),
    )


def inverse(f: PartialPerm) -> PartialPerm:
    """The inverse partial permutation (graph transposed).

    >>> x = named_generator("x", 5)
    >>> inverse(x) == named_generator("y", 5)
    True
    """
    images = [0] * f.degree
    for p, img in enumerate(f.images, start=1):
        if img:
            images[img - 1] = p
    return PartialPerm(f.degree, tuple(images))


def partial_identity(n: int, points: Iterable[Point]) -> PartialPerm:
    """Identity map restricted to the given set of points."""
    images = [0] * n
    for p in points:
        if not 1 <= p <= n:
            raise ValueError(f"point {p} outside 1..{n}")
        images[p - 1] = p
    return PartialPerm(n, tuple(images))


def identity(n: int) -> PartialPerm:
    """The total identity map on {1, ..., n}."""
    return PartialPerm(n, tuple(range(1, n + 1)))


def empty_map(n: int) -> PartialPerm:
    """The nowhere-defined map of degree n (the zero of the monoid)."""
    return PartialPerm(n, (0,) * n)


def restrict(f: PartialPerm, points: Iterable[Point]) -> PartialPerm:
    """Restrict f to the points of its domain that lie in `points`."""
    keep = set(points)
    for p in keep:
        if not 1 <= p <= f.degree:
            raise ValueError(f"point {p} outside 1..{f.degree}")
    return PartialPerm(
        f.degree,
        tuple(
            img if img and p in keep else 0
            for p, img in enumerate(f.images, start=1)
        ),
    )


def is_restriction_of(f: PartialPerm, g: PartialPerm) -> bool:
    """True when f agrees with the total map g on all of dom(f).

    >>> h, g = named_generator("h", 4), named_generator("g", 4)
    >>> is_restriction_of(PartialPerm.from_pairs(4, [(1, 1), (2, 4)]), compose(h, g))
    True
    """
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} != {g.degree}")
    if not g.is_total():
        raise ValueError("second argument must be a total map")
    return all(
        img == 0 or img == g.images[p]
        for p, img in enumerate(f.images)
    )


class SequenceKind(NamedTuple):
    """Circular shape of the image sequence over the sorted domain.

    `cyclic` means at most one descent reading the sequence cyclically,
    `anti_cyclic` at most one ascent.  Sequences of length <= 2 are both.
    """

    cyclic: bool
    anti_cyclic: bool


def classify_image_sequence(f: PartialPerm) -> SequenceKind:
    """Classify the image sequence (a_1, ..., a_t) of f, domain sorted.

    >>> classify_image_sequence(named_generator("g", 5))
    SequenceKind(cyclic=True, anti_cyclic=False)
    >>> classify_image_sequence(named_generator("h", 5))
    SequenceKind(cyclic=False, anti_cyclic=True)
    """
    seq = [img for img in f.images if img]
    t = len(seq)
    descents = sum(seq[k] > seq[(k + 1) % t] for k in range(t))
    ascents = sum(seq[k] < seq[(k + 1) % t] for k in range(t))
    return SequenceKind(cyclic=descents <= 1, anti_cyclic=ascents <= 1)


def is_order_preserving(f: PartialPerm) -> bool:
    """p < q implies p.f < q.f on the domain."""
    seq = [img for img in f.images if img]
    return all(a < b for a, b in zip(seq, seq[1:]))


def is_order_reversing(f: PartialPerm) -> bool:
    """p < q implies p.f > q.f on the domain."""
    seq = [img for img in f.images if img]
    return all(a > b for a, b in zip(seq, seq[1:]))


def is_monotone(f: PartialPerm) -> bool:
    """Order-preserving or order-reversing."""
    return is_order_preserving(f) or is_order_reversing(f)


def is_orientation_preserving(f: PartialPerm) -> bool:
    """The image sequence over the sorted domain is cyclic."""
    return classify_image_sequence(f).cyclic


def is_orientation_reversing(f: PartialPerm) -> bool:
    """The image sequence over the sorted domain is anti-cyclic."""
    return classify_image_sequence(f).anti_cyclic


def is_oriented(f: PartialPerm) -> bool:
    """Orientation-preserving or orientation-reversing."""
    kind = classify_image_sequence(f)
    return kind.cyclic or kind.anti_cyclic


#: Valid `kind` arguments of named_generator.
GENERATOR_KINDS = ("g", "h", "e_i", "x", "y", "x_i", "y_i")


def named_generator(kind: str, n: int, i: int | None = None) -> PartialPerm:
    """The standard generating maps, by name.

    kind "g"    rotation p -> p + 1 (mod n), a total n-cycle
    kind "h"    reflection p -> n + 1 - p, total, needs n >= 2
    kind "e_i"  identity on {1..n} minus {i}, needs i in 1..n
    kind "x"    p -> p + 1 on domain {1..n-1}
    kind "y"    inverse of x: p -> p - 1 on domain {2..n}
    kind "x_i"  {1 -> 1, 1+i -> n-i+1}, needs 1 <= i <= (n-1)//2
    kind "y_i"  inverse of x_i: {1 -> 1, n-i+1 -> 1+i}

    >>> named_generator("g", 4).pairs()
    ((1, 2), (2, 3), (3, 4), (4, 1))
    >>> named_generator("x_i", 5, 2).pairs()
    ((1, 1), (3, 4))
    """
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    if kind in ("e_i", "x_i", "y_i"):
        if i is None:
            raise ValueError(f"kind {kind!r} needs an index i")
    elif i is not None:
        raise ValueError(f"kind {kind!r} takes no index")

    if kind == "g":
        return PartialPerm(n, tuple(p % n + 1 for p in range(1, n + 1)))
    if kind == "h":
        if n < 2:
            raise ValueError("reflection needs degree at least 2")
        return PartialPerm(n, tuple(range(n, 0, -1)))
    if kind == "x":
        return PartialPerm(n, tuple(p + 1 for p in range(1, n)) + (0,))
    if kind == "y":
        return inverse(named_generator("x", n))
    if kind == "e_i":
        if not 1 <= i <= n:
            raise ValueError(f"e_i needs 1 <= i <= {n}, got i={i}")
        return partial_identity(n, (p for p in range(1, n + 1) if p != i))
    if kind == "x_i":
        if not 1 <= i <= (n - 1) // 2:
            raise ValueError(f"x_i needs 1 <= i <= {(n - 1) // 2}, got i={i}")
        return PartialPerm.from_pairs(n, [(1, 1), (1 + i, n - i + 1)])
    if kind == "y_i":
        return inverse(named_generator("x_i", n, i))
    raise ValueError(f"unknown generator kind {kind!r}")


def all_partial_perms(n: int) -> Iterator[PartialPerm]:
    """Every partial permutation of degree n, smallest rank first.

    >>> sum(1 for _ in all_partial_perms(3))
    34
    """
    points = range(1, n + 1)
    for k in range(n + 1):
        for dom in itertools.combinations(points, k):
            for img_set in itertools.combinations(points, k):
                for img in itertools.permutations(img_set):
                    yield PartialPerm.from_pairs(n, zip(dom, img))
