"""Finite monoids of partial permutations.

Monoids are built by breadth-first closure of a generating set and
stored with both Cayley tables (right and left multiplication by each
generator).  The named families live inside the symmetric inverse
monoid on the chain {1 < ... < n}:

    DI    restrictions of the 2n symmetries of the regular n-gon
    CI    restrictions of the n rotations only
    ODI   order-preserving elements of DI
    MDI   monotone (order-preserving or -reversing) elements of DI
    OPDI  orientation-preserving elements of DI
    OCI   order-preserving elements of CI

plus the dihedral and cyclic groups themselves as total maps.
Element order is fixed by the deterministic closure, so element
indices are reproducible across runs and platforms.
"""

from __future__ import annotations

import dataclasses
import enum
import functools

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .iperm import (
    PartialPerm,
    compose,
    identity,
    is_monotone,
    is_order_preserving,
    is_orientation_preserving,
    is_restriction_of,
    named_generator,
)


class MonoidFamily(enum.Enum):
    DI = "di"
    ODI = "odi"
    MDI = "mdi"
    OPDI = "opdi"
    CI = "ci"
    OCI = "oci"
    DIHEDRAL_GROUP = "dihedral"
    CYCLIC_GROUP = "cyclic"

    @classmethod
    def parse(cls, text: str) -> "MonoidFamily":
        """Accept the lowercase tag used by the CLI ("odi", "dihedral"...)."""
        try:
            return cls(text.strip().lower())
        except ValueError:
            valid = ", ".join(f.value for f in cls)
            raise ValueError(f"unknown family {text!r}; expected one of {valid}")


class ClosureCapError(RuntimeError):
    """Raised when a closure exceeds its element-count cap."""


@dataclasses.dataclass(frozen=True)
class FiniteMonoid:
    """A closed set of partial permutations with Cayley tables.

    elements[0] is the identity.  right_cayley[i][k] is the index of
    elements[i] * gen_k (apply elements[i] first) and left_cayley[i][k]
    the index of gen_k * elements[i], where gen_k is the k-th generator.
    """

    degree: int
    elements: tuple[PartialPerm, ...]
    generators: tuple[int, ...]
    right_cayley: tuple[tuple[int, ...], ...]
    left_cayley: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    @functools.cached_property
    def _index(self) -> dict[PartialPerm, int]:
        return {f: i for i, f in enumerate(self.elements)}

    def index(self, f: PartialPerm) -> int:
        """Index of an element; KeyError when f is not in the monoid."""
        return self._index[f]

    def __contains__(self, f: PartialPerm) -> bool:
        return f in self._index

    def product(self, i: int, j: int) -> int:
        """Index of elements[i] * elements[j]."""
        return self.index(compose(self.elements[i], self.elements[j]))

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "elements": [f.to_dict() for f in self.elements],
            "generators": list(self.generators),
            "right_cayley": [list(row) for row in self.right_cayley],
            "left_cayley": [list(row) for row in self.left_cayley],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FiniteMonoid":
        return cls(
            degree=data["degree"],
            elements=tuple(PartialPerm.from_dict(d) for d in data["elements"]),
            generators=tuple(data["generators"]),
            right_cayley=tuple(tuple(row) for row in data["right_cayley"]),
            left_cayley=tuple(tuple(row) for row in data["left_cayley"]),
        )


def closure(
    degree: int,
    gens: "list[PartialPerm] | tuple[PartialPerm, ...]",
    max_elements: int = 10_000_000,
) -> FiniteMonoid:
    """Smallest monoid containing the identity and the generators.

    Breadth-first over (element, generator) pairs: elements are indexed
    in discovery order starting from the identity, generators in the
    given order.

    >>> g = named_generator("g", 4)
    >>> closure(4, [g]).size
    4
    """
    gens = list(gens)
    for f in gens:
        if f.degree != degree:
            raise ValueError(f"generator degree {f.degree} != {degree}")

    one = identity(degree)
    elements: list[PartialPerm] = [one]
    index: dict[PartialPerm, int] = {one: 0}
    rows: list[list[int]] = []

    pos = 0
    while pos < len(elements):
        current = elements[pos]
        row = []
        for gen in gens:
            product = compose(current, gen)
            target = index.get(product)
            if target is None:
                if len(elements) >= max_elements:
                    raise ClosureCapError(
                        f"closure exceeded cap of {max_elements} elements"
                    )
                target = len(elements)
                index[product] = target
                elements.append(product)
            row.append(target)
        rows.append(row)
        pos += 1

    left_rows = [
        [index[compose(gen, f)] for gen in gens]
        for f in elements
    ]
    return FiniteMonoid(
        degree=degree,
        elements=tuple(elements),
        generators=tuple(index[g] for g in gens),
        right_cayley=tuple(tuple(r) for r in rows),
        left_cayley=tuple(tuple(r) for r in left_rows),
    )


#: Minimum degree at which each family is defined.
_FAMILY_MIN_N = {
    MonoidFamily.DI: 3,
    MonoidFamily.ODI: 4,
    MonoidFamily.MDI: 4,
    MonoidFamily.OPDI: 4,
    MonoidFamily.CI: 1,
    MonoidFamily.OCI: 1,
    MonoidFamily.DIHEDRAL_GROUP: 3,
    MonoidFamily.CYCLIC_GROUP: 1,
}


def generating_maps(
    family: MonoidFamily, n: int
) -> tuple[tuple[str, PartialPerm], ...]:
    """The standard named generating set of a family, as (name, map) pairs.

    These are the generating sets of minimum size for ODI, MDI and OPDI;
    the other families use their usual two- or three-element sets.
    """
    low = _FAMILY_MIN_N[family]
    if n < low:
        raise ValueError(f"{family.value} needs n >= {low}, got {n}")
    m = (n - 1) // 2
    half = (n + 1) // 2
    if family == MonoidFamily.DI:
        return (
            ("g", named_generator("g", n)),
            ("h", named_generator("h", n)),
            ("e_1", named_generator("e_i", n, 1)),
        )
    if family == MonoidFamily.CI:
        return (
            ("g", named_generator("g", n)),
            ("e_1", named_generator("e_i", n, 1)),
        )
    if family == MonoidFamily.ODI:
        return (
            ("x", named_generator("x", n)),
            ("y", named_generator("y", n)),
            *((f"e_{i}", named_generator("e_i", n, i)) for i in range(2, n)),
            *((f"x_{i}", named_generator("x_i", n, i)) for i in range(1, m + 1)),
            *((f"y_{i}", named_generator("y_i", n, i)) for i in range(1, m + 1)),
        )
    if family == MonoidFamily.MDI:
        return (
            ("h", named_generator("h", n)),
            ("x", named_generator("x", n)),
            *((f"e_{i}", named_generator("e_i", n, i)) for i in range(2, half + 1)),
            *((f"x_{i}", named_generator("x_i", n, i)) for i in range(1, m + 1)),
            *((f"y_{i}", named_generator("y_i", n, i)) for i in range(1, m + 1)),
        )
    if family == MonoidFamily.OPDI:
        return (
            ("g", named_generator("g", n)),
            ("e_1", named_generator("e_i", n, 1)),
            *((f"x_{i}", named_generator("x_i", n, i)) for i in range(1, m + 1)),
        )
    if family == MonoidFamily.OCI:
        return (
            ("x", named_generator("x", n)),
            ("y", named_generator("y", n)),
            *((f"e_{i}", named_generator("e_i", n, i)) for i in range(1, n + 1)),
        )
    if family == MonoidFamily.DIHEDRAL_GROUP:
        return (
            ("g", named_generator("g", n)),
            ("h", named_generator("h", n)),
        )
    if family == MonoidFamily.CYCLIC_GROUP:
        return (("g", named_generator("g", n)),)
    raise ValueError(f"unknown family {family!r}")


def build_named(
    family: MonoidFamily, n: int, max_elements: int = 10_000_000
) -> FiniteMonoid:
    """Closure of the family's standard generating set.

    >>> build_named(MonoidFamily.OCI, 4).size
    38
    >>> build_named(MonoidFamily.ODI, 4).size
    44
    """
    maps = [f for _, f in generating_maps(family, n)]
    return closure(n, maps, max_elements=max_elements)


def cardinality_formula(family: MonoidFamily, n: int) -> int:
    """Closed-form size for the families that have one (ODI, MDI, OCI).

    >>> cardinality_formula(MonoidFamily.ODI, 5)
    104
    >>> cardinality_formula(MonoidFamily.MDI, 4)
    71
    >>> cardinality_formula(MonoidFamily.OCI, 5)
    84
    """
    if family == MonoidFamily.ODI:
        if n < 4:
            raise ValueError(f"odi formula needs n >= 4, got {n}")
        correction = n * n // 4 if n % 2 == 0 else 0
        return 3 * 2**n + (n + 1) * n * (n - 1) // 6 - correction - 2 * n - 2
    if family == MonoidFamily.MDI:
        if n < 4:
            raise ValueError(f"mdi formula needs n >= 4, got {n}")
        correction = 3 * n * n // 2 if n % 2 == 0 else n * n
        return 3 * 2 ** (n + 1) + (n + 1) * n * (n - 1) // 3 - correction - 4 * n - 5
    if family == MonoidFamily.OCI:
        if n < 1:
            raise ValueError(f"oci formula needs n >= 1, got {n}")
        return 3 * 2**n - 2 * n - 2
    raise ValueError(
        f"no closed cardinality form for family {family.value}; "
        "size is defined operationally by closure"
    )


def rank_formula(family: MonoidFamily, n: int) -> int:
    """Minimum generating-set size of ODI, MDI or OPDI.

    >>> [rank_formula(f, 4) for f in (MonoidFamily.ODI, MonoidFamily.MDI, MonoidFamily.OPDI)]
    [6, 5, 3]
    """
    if n < 4:
        raise ValueError(f"rank formula needs n >= 4, got {n}")
    m = (n - 1) // 2
    if family == MonoidFamily.ODI:
        return n + 2 * m
    if family == MonoidFamily.MDI:
        return 2 + 3 * m
    if family == MonoidFamily.OPDI:
        return 2 + m
    raise ValueError(f"no rank formula for family {family.value}")


def verify_generates(
    m: FiniteMonoid, gens: "list[PartialPerm] | tuple[PartialPerm, ...]"
) -> bool:
    """True iff the closure of gens has exactly m's element set."""
    for f in gens:
        if f.degree != m.degree:
            raise ValueError(f"generator degree {f.degree} != {m.degree}")
    try:
        generated = closure(m.degree, gens, max_elements=m.size + 1)
    except ClosureCapError:
        return False
    return set(generated.elements) == set(m.elements)


@dataclasses.dataclass(frozen=True)
class GreenClasses:
    """Class index per element for each of Green's equivalences.

    Class ids are dense and numbered by first occurrence in element
    order, so the identity's class is always 0.
    """

    r: tuple[int, ...]
    l: tuple[int, ...]
    h: tuple[int, ...]
    d: tuple[int, ...]

    def class_of(self, relation: str, element: int) -> int:
        return getattr(self, relation)[element]

    def counts(self) -> dict[str, int]:
        return {
            name: max(labels) + 1 if labels else 0
            for name, labels in (
                ("r", self.r), ("l", self.l), ("h", self.h), ("d", self.d),
            )
        }

    def class_members(self, relation: str, class_id: int) -> tuple[int, ...]:
        labels = getattr(self, relation)
        return tuple(i for i, c in enumerate(labels) if c == class_id)


def _canonical_labels(labels: "np.ndarray") -> tuple[int, ...]:
    # connected_components gives arbitrary label values; renumber by
    # first occurrence so results are platform-independent.
    remap: dict[int, int] = {}
    out = []
    for raw in labels:
        raw = int(raw)
        if raw not in remap:
            remap[raw] = len(remap)
        out.append(remap[raw])
    return tuple(out)


def _scc(size: int, edges: "list[tuple[int, int]]") -> tuple[int, ...]:
    if not edges:
        return tuple(range(size))
    rows, cols = zip(*edges)
    graph = csr_matrix(
        (np.ones(len(edges), dtype=np.int8), (rows, cols)), shape=(size, size)
    )
    _, labels = connected_components(graph, directed=True, connection="strong")
    return _canonical_labels(labels)


def green_classes(m: FiniteMonoid) -> GreenClasses:
    """Green's R, L, H and D (= J, the monoid is finite) classes.

    R-classes are the strongly connected components of the right Cayley
    graph, L-classes of the left one, D-classes of their union; H is
    the common refinement of R and L.
    """
    size = m.size
    right_edges = [
        (i, t) for i, row in enumerate(m.right_cayley) for t in row
    ]
    left_edges = [
        (i, t) for i, row in enumerate(m.left_cayley) for t in row
    ]
    r = _scc(size, right_edges)
    l = _scc(size, left_edges)
    d = _scc(size, right_edges + left_edges)
    pair_ids: dict[tuple[int, int], int] = {}
    h = []
    for pair in zip(r, l):
        if pair not in pair_ids:
            pair_ids[pair] = len(pair_ids)
        h.append(pair_ids[pair])
    return GreenClasses(r=r, l=l, h=tuple(h), d=d)


def elements_of_rank(m: FiniteMonoid, r: int) -> tuple[PartialPerm, ...]:
    """All elements whose image has exactly r points, in element order."""
    if not 0 <= r <= m.degree:
        raise ValueError(f"rank {r} outside 0..{m.degree}")
    return tuple(f for f in m.elements if f.rank() == r)


def dihedral_permutations(n: int) -> tuple[PartialPerm, ...]:
    """The 2n symmetries of the n-gon as total maps: rotations first."""
    g = named_generator("g", n)
    h = named_generator("h", n)
    rotations = [identity(n)]
    for _ in range(n - 1):
        rotations.append(compose(rotations[-1], g))
    return tuple(rotations) + tuple(compose(h, rot) for rot in rotations)


def cyclic_permutations(n: int) -> tuple[PartialPerm, ...]:
    """The n rotations as total maps."""
    return dihedral_permutations(n)[:n]


def family_predicate(family: MonoidFamily, n: int):
    """Membership test defining each family pointwise.

    Returns a predicate PartialPerm -> bool.  The ambient condition is
    extendability to a symmetry (DI and its submonoids) or to a
    rotation (CI and OCI); the group families additionally require
    total maps.
    """
    symmetries = dihedral_permutations(n) if n >= 2 else (identity(n),)
    rotations = symmetries[:n]

    def in_di(f: PartialPerm) -> bool:
        return any(is_restriction_of(f, p) for p in symmetries)

    def in_ci(f: PartialPerm) -> bool:
        return any(is_restriction_of(f, p) for p in rotations)

    if family == MonoidFamily.DI:
        return in_di
    if family == MonoidFamily.CI:
        return in_ci
    if family == MonoidFamily.ODI:
        return lambda f: in_di(f) and is_order_preserving(f)
    if family == MonoidFamily.MDI:
        return lambda f: in_di(f) and is_monotone(f)
    if family == MonoidFamily.OPDI:
        return lambda f: in_di(f) and is_orientation_preserving(f)
    if family == MonoidFamily.OCI:
        return lambda f: in_ci(f) and is_order_preserving(f)
    if family == MonoidFamily.DIHEDRAL_GROUP:
        return lambda f: f.is_total() and in_di(f)
    if family == MonoidFamily.CYCLIC_GROUP:
        return lambda f: f.is_total() and in_ci(f)
    raise ValueError(f"unknown family {family!r}")


def right_cayley_dot(m: FiniteMonoid, gen_names: "list[str] | None" = None) -> str:
    """GraphViz source of the right Cayley graph, edges labeled by generator."""
    names = gen_names or [f"g{k}" for k in range(len(m.generators))]
    if len(names) != len(m.generators):
        raise ValueError("one name per generator required")
    lines = ["digraph right_cayley {"]
    for i, f in enumerate(m.elements):
        label = ",".join(f"{p}:{q}" for p, q in f.pairs()) or "empty"
        lines.append(f'  n{i} [label="{i}: {label}"];')
    for i, row in enumerate(m.right_cayley):
        for k, target in enumerate(row):
            lines.append(f'  n{i} -> n{target} [label="{names[k]}"];')
    lines.append("}")
    return "\n".join(lines)
