"""Alphabets, relation families, assignments and forms sets.

Words are tuples of letter names ("x", "e_3", "x_2", ...).  Each
relation family is parameterized by the chain length n and expanded
eagerly: powers are spelled out letter by letter and every index range
is instantiated.  A chain of equalities u1 = u2 = ... = uk contributes
the k-1 relations between consecutive members.

Every relation carries a tag such as "R_7[i=1,j=2]" naming the clause
and index values it came from, for failure diagnostics.  Relation
order within a family is fixed (clause by clause, indices ascending)
so builds are reproducible.

The families:

    R, U        order-preserving family and its two-sided-ideal core
                over the alphabets A = {x, y, e_1..e_n, x_i, y_i} and
                C = {x, y, e_1..e_n}
    V           R rewritten without e_1 and e_n (B = A minus those)
    Vbar        V extended by the reversal letter h
    VbarPrime   the h-extension over the smaller alphabet
                {h, x, e_2..e_q, x_i, y_i}, q = floor((n+1)/2)
    Q, Q0       orientation-preserving family over D = {g, e_1..e_n,
                x_i} and its core D0 = {g, e_1..e_n}
    QPrime      Q compressed to D' = {g, e_1, x_i}
"""

from __future__ import annotations

import dataclasses
import enum
import functools

from .iperm import PartialPerm, compose, identity, named_generator

Word = "tuple[str, ...]"


@dataclasses.dataclass(frozen=True)
class Letter:
    """A named generator symbol with its dense position in an alphabet."""

    id: int
    name: str


@dataclasses.dataclass(frozen=True)
class Relation:
    """A pair of words, usually written lhs = rhs."""

    lhs: "tuple[str, ...]"
    rhs: "tuple[str, ...]"
    tag: str = ""


@dataclasses.dataclass(frozen=True)
class Presentation:
    """An alphabet together with a finite list of defining relations."""

    label: str
    letters: "tuple[Letter, ...]"
    relations: "tuple[Relation, ...]"

    def __post_init__(self):
        for k, letter in enumerate(self.letters):
            if letter.id != k:
                raise ValueError(f"letter ids must be dense, got {letter} at {k}")
        names = [letter.name for letter in self.letters]
        if len(set(names)) != len(names):
            raise ValueError("duplicate letter names")
        allowed = set(names)
        for rel in self.relations:
            for name in rel.lhs + rel.rhs:
                if name not in allowed:
                    raise ValueError(
                        f"relation {rel.tag or rel}: unknown letter {name!r}"
                    )

    @functools.cached_property
    def letter_names(self) -> "tuple[str, ...]":
        return tuple(letter.name for letter in self.letters)

    @functools.cached_property
    def _ids(self) -> "dict[str, int]":
        return {letter.name: letter.id for letter in self.letters}

    def id_of(self, name: str) -> int:
        return self._ids[name]

    def word_ids(self, w: "tuple[str, ...]") -> "tuple[int, ...]":
        return tuple(self._ids[name] for name in w)

    def tagged(self, prefix: str) -> "tuple[Relation, ...]":
        """Relations whose tag is prefix or prefix[indices].

        >>> len(build_relations(RelationFamily.R, 4).tagged("R_4"))
        6
        """
        return tuple(
            r for r in self.relations
            if r.tag == prefix or r.tag.startswith(prefix + "[")
        )

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "letters": list(self.letter_names),
            "relations": [
                {"lhs": list(r.lhs), "rhs": list(r.rhs), "tag": r.tag}
                for r in self.relations
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Presentation":
        return cls(
            label=data["label"],
            letters=_alphabet(data["letters"]),
            relations=tuple(
                Relation(tuple(r["lhs"]), tuple(r["rhs"]), r.get("tag", ""))
                for r in data["relations"]
            ),
        )


@dataclasses.dataclass(frozen=True)
class Assignment:
    """Letter-to-partial-permutation map defining a homomorphism."""

    degree: int
    images: "tuple[tuple[str, PartialPerm], ...]"

    def __post_init__(self):
        for name, f in self.images:
            if f.degree != self.degree:
                raise ValueError(f"image of {name!r} has degree {f.degree}")

    @functools.cached_property
    def _map(self) -> "dict[str, PartialPerm]":
        return dict(self.images)

    def image(self, name: str) -> PartialPerm:
        return self._map[name]

    def names(self) -> "tuple[str, ...]":
        return tuple(name for name, _ in self.images)


@dataclasses.dataclass(frozen=True)
class FormsSet:
    """A list of candidate representative words, one per congruence class."""

    label: str
    letters: "tuple[str, ...]"
    words: "tuple[tuple[str, ...], ...]"

    @property
    def size(self) -> int:
        return len(self.words)


class RelationFamily(enum.Enum):
    R = "R"
    U = "U"
    V = "V"
    VBAR = "Vbar"
    VBAR_PRIME = "VbarPrime"
    Q = "Q"
    Q0 = "Q0"
    Q_PRIME = "QPrime"

    @classmethod
    def parse(cls, text: str) -> "RelationFamily":
        """Accept the canonical spelling in any case ("R", "vbarprime")."""
        key = text.strip().lower().replace("_", "").replace("-", "")
        for fam in cls:
            if fam.value.lower() == key:
                return fam
        valid = ", ".join(f.value for f in cls)
        raise ValueError(f"unknown relation family {text!r}; expected one of {valid}")


def _alphabet(names) -> "tuple[Letter, ...]":
    return tuple(Letter(i, name) for i, name in enumerate(names))


def _erun(lo: int, hi: int) -> "list[str]":
    """The word e_lo e_{lo+1} ... e_hi; empty when lo > hi."""
    return [f"e_{i}" for i in range(lo, hi + 1)]


def _pow(name: str, k: int) -> "list[str]":
    return [name] * k


def _alphabet_names(family: RelationFamily, n: int) -> "list[str]":
    m = (n - 1) // 2
    q = (n + 1) // 2
    xs = [f"x_{i}" for i in range(1, m + 1)]
    ys = [f"y_{i}" for i in range(1, m + 1)]
    if family == RelationFamily.R:
        return ["x", "y"] + _erun(1, n) + xs + ys
    if family == RelationFamily.U:
        return ["x", "y"] + _erun(1, n)
    if family == RelationFamily.V:
        return ["x", "y"] + _erun(2, n - 1) + xs + ys
    if family == RelationFamily.VBAR:
        return ["h", "x", "y"] + _erun(2, n - 1) + xs + ys
    if family == RelationFamily.VBAR_PRIME:
        return ["h", "x"] + _erun(2, q) + xs + ys
    if family == RelationFamily.Q:
        return ["g"] + _erun(1, n) + xs
    if family == RelationFamily.Q0:
        return ["g"] + _erun(1, n)
    if family == RelationFamily.Q_PRIME:
        return ["g", "e_1"] + xs
    raise ValueError(f"unknown family {family!r}")


def build_alphabet(family: RelationFamily, n: int) -> "tuple[Letter, ...]":
    """The family's alphabet in its standard listed order.

    >>> [l.name for l in build_alphabet(RelationFamily.Q_PRIME, 4)]
    ['g', 'e_1', 'x_1']
    >>> len(build_alphabet(RelationFamily.R, 4))
    8
    """
    if n < 4:
        raise ValueError(f"alphabets need n >= 4, got {n}")
    return _alphabet(_alphabet_names(family, n))


class _Rels:
    """Relation list builder: collects pairs and expands chains."""

    def __init__(self):
        self.out: "list[Relation]" = []

    def add(self, lhs, rhs, tag):
        self.out.append(Relation(tuple(lhs), tuple(rhs), tag))

    def chain(self, words, tag):
        for a, b in zip(words, words[1:]):
            self.add(a, b, tag)


def _relations_r1_to_r5(n: int, r: _Rels) -> None:
    for i in range(1, n + 1):
        r.add([f"e_{i}", f"e_{i}"], [f"e_{i}"], f"R_1[i={i}]")
    r.add(["x", "y"], [f"e_{n}"], "R_2")
    r.add(["y", "x"], ["e_1"], "R_2")
    r.add(["x", "e_1"], ["x"], "R_3")
    r.add(["e_1", "y"], ["y"], "R_3")
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            r.add([f"e_{i}", f"e_{j}"], [f"e_{j}", f"e_{i}"], f"R_4[i={i},j={j}]")
    for i in range(1, n):
        r.add([f"e_{i}", "x"], ["x", f"e_{i+1}"], f"R_5[i={i}]")


def _relation_r11(n: int, r: _Rels) -> None:
    r.add(["x"] + _erun(2, n), _erun(1, n), "R_11")


def _relations_R(n: int) -> "list[Relation]":
    m = (n - 1) // 2
    r = _Rels()
    _relations_r1_to_r5(n, r)
    for i in range(1, m + 1):
        r.add([f"x_{i}", f"y_{i}"], _erun(2, i) + _erun(i + 2, n), f"R_6[i={i}]")
        r.add([f"y_{i}", f"x_{i}"], _erun(2, n - i) + _erun(n - i + 2, n), f"R_6[i={i}]")
    for i in range(1, m + 1):
        for j in range(2, n + 1):
            if j == n - i + 1:
                continue  # that pair is the chain in R_10
            r.add([f"x_{i}", f"e_{j}"], [f"x_{i}"], f"R_7[i={i},j={j}]")
            r.add([f"e_{j}", f"y_{i}"], [f"y_{i}"], f"R_7[i={i},j={j}]")
    for i in range(1, m + 1):
        for j in range(2, n + 1):
            if j == i + 1:
                continue
            r.add([f"e_{j}", f"x_{i}"], [f"x_{i}"], f"R_8[i={i},j={j}]")
            r.add([f"y_{i}", f"e_{j}"], [f"y_{i}"], f"R_8[i={i},j={j}]")
    for i in range(1, m + 1):
        rhs_x = _pow("x", n - 2 * i) + _erun(n - 2 * i + 1, n - i) + _erun(n - i + 2, n)
        r.chain([["e_1", f"x_{i}"], [f"x_{i}", "e_1"], rhs_x], f"R_9[i={i}]")
        rhs_y = _pow("y", n - 2 * i) + _erun(1, i) + _erun(i + 2, 2 * i)
        r.chain([["e_1", f"y_{i}"], [f"y_{i}", "e_1"], rhs_y], f"R_9[i={i}]")
    for i in range(1, m + 1):
        r.chain(
            [
                [f"x_{i}", f"e_{n-i+1}"],
                [f"e_{i+1}", f"x_{i}"],
                [f"y_{i}", f"e_{i+1}"],
                [f"e_{n-i+1}", f"y_{i}"],
                _erun(2, n),
            ],
            f"R_10[i={i}]",
        )
    _relation_r11(n, r)
    return r.out


def _relations_U(n: int) -> "list[Relation]":
    r = _Rels()
    _relations_r1_to_r5(n, r)
    _relation_r11(n, r)
    return r.out


def _relations_V(n: int) -> "list[Relation]":
    m = (n - 1) // 2
    xy = ["x", "y"]
    yx = ["y", "x"]
    u0 = _erun(2, n - 1) + xy
    r = _Rels()
    for i in range(2, n):
        r.add([f"e_{i}", f"e_{i}"], [f"e_{i}"], f"V_1[i={i}]")
    r.add(["x", "y", "x"], ["x"], "V_2")
    r.add(["y", "x", "y"], ["y"], "V_2")
    r.add(["y", "x", "x", "y"], ["x", "y", "y", "x"], "V_3")
    for i in range(2, n):
        for j in range(i + 1, n):
            r.add([f"e_{i}", f"e_{j}"], [f"e_{j}", f"e_{i}"], f"V_4[i={i},j={j}]")
    for i in range(2, n):
        r.add(xy + [f"e_{i}"], [f"e_{i}"] + xy, f"V_5[i={i}]")
        r.add(yx + [f"e_{i}"], [f"e_{i}"] + yx, f"V_5[i={i}]")
    for i in range(2, n - 1):
        r.add(["x", f"e_{i+1}"], [f"e_{i}", "x"], f"V_6[i={i}]")
    r.add(["x", "x", "y"], [f"e_{n-1}", "x"], "V_7")
    r.add(["y", "x", "x"], ["x", "e_2"], "V_7")
    r.add(yx + u0, ["x"] + u0, "V_8")
    for i in range(1, m + 1):
        r.add([f"x_{i}", f"y_{i}"], _erun(2, i) + _erun(i + 2, n - 1) + xy, f"V_9[i={i}]")
    r.add(["y_1", "x_1"], _erun(2, n - 1), "V_9[i=1]")
    for i in range(2, m + 1):
        r.add(
            [f"y_{i}", f"x_{i}"],
            _erun(2, n - i) + _erun(n - i + 2, n - 1) + xy,
            f"V_9[i={i}]",
        )
    for i in range(1, m + 1):
        for j in range(2, n):
            if j == n - i + 1:
                continue
            r.add([f"x_{i}", f"e_{j}"], [f"x_{i}"], f"V_10[i={i},j={j}]")
            r.add([f"e_{j}", f"y_{i}"], [f"y_{i}"], f"V_10[i={i},j={j}]")
    for i in range(1, m + 1):
        for j in range(2, n):
            if j == i + 1:
                continue
            r.add([f"e_{j}", f"x_{i}"], [f"x_{i}"], f"V_11[i={i},j={j}]")
            r.add([f"y_{i}", f"e_{j}"], [f"y_{i}"], f"V_11[i={i},j={j}]")
    for i in range(2, m + 1):
        r.chain([[f"x_{i}"] + xy, xy + [f"x_{i}"], [f"x_{i}"]], f"V_12[i={i}]")
        r.chain([xy + [f"y_{i}"], [f"y_{i}"] + xy, [f"y_{i}"]], f"V_12[i={i}]")
    r.add(xy + ["x_1"], ["x_1"], "V_12[i=1]")
    r.add(["y_1"] + xy, ["y_1"], "V_12[i=1]")
    r.chain(
        [yx + ["x_1"], ["x_1"] + yx, _pow("x", n - 2) + [f"e_{n-1}"]], "V_13[i=1]"
    )
    for i in range(2, m + 1):
        rhs = (
            _pow("x", n - 2 * i)
            + _erun(n - 2 * i + 1, n - i)
            + _erun(n - i + 2, n - 1)
            + xy
        )
        r.chain([yx + [f"x_{i}"], [f"x_{i}"] + yx, rhs], f"V_13[i={i}]")
    for i in range(1, m + 1):
        rhs = _pow("y", n - 2 * i + 1) + ["x"] + _erun(2, i) + _erun(i + 2, 2 * i)
        r.chain([yx + [f"y_{i}"], [f"y_{i}"] + yx, rhs], f"V_13[i={i}]")
    r.chain(
        [["x_1"] + xy, ["e_2", "x_1"], ["y_1", "e_2"], xy + ["y_1"], u0], "V_14[i=1]"
    )
    for i in range(2, m + 1):
        r.chain(
            [
                [f"x_{i}", f"e_{n-i+1}"],
                [f"e_{i+1}", f"x_{i}"],
                [f"y_{i}", f"e_{i+1}"],
                [f"e_{n-i+1}", f"y_{i}"],
                u0,
            ],
            f"V_14[i={i}]",
        )
    return r.out


def _relations_vbar1(n: int) -> "list[Relation]":
    """Conjugation relations of the reversal letter over the V alphabet."""
    m = (n - 1) // 2
    r = _Rels()
    r.add(["h", "x"], ["y", "h"], "Vbar_1")
    for i in range(2, (n + 1) // 2 + 1):
        r.add(["h", f"e_{i}"], [f"e_{n-i+1}", "h"], f"Vbar_1[i={i}]")
    for i in range(1, m + 1):
        r.add(
            ["h", f"x_{i}"],
            _pow("y", n - i - 1) + [f"x_{i}"] + _pow("x", i - 1) + ["h"],
            f"Vbar_1[i={i}]",
        )
        r.add(
            ["h", f"y_{i}"],
            _pow("y", i - 1) + [f"y_{i}"] + _pow("x", n - i - 1) + ["h"],
            f"Vbar_1[i={i}]",
        )
    return r.out


def _relation_vbar2(n: int) -> Relation:
    return Relation(
        tuple(_erun(2, n - 1) + ["x", "y", "h"]), tuple(_pow("x", n - 1)), "Vbar_2"
    )


def _relations_Vbar(n: int) -> "list[Relation]":
    rels = list(_relations_V(n))
    rels.append(Relation(("h", "h"), (), "Vbar_0"))
    rels.extend(_relations_vbar1(n))
    rels.append(_relation_vbar2(n))
    return rels


def _relations_VbarPrime(n: int) -> "list[Relation]":
    m = (n - 1) // 2
    q = (n + 1) // 2
    p = n // 2
    xh2 = ["x", "h", "x", "h"]
    hx2 = ["h", "x", "h", "x"]

    def heh(j):
        return ["h", f"e_{j}", "h"]

    r = _Rels()
    for i in range(2, q + 1):
        r.add([f"e_{i}", f"e_{i}"], [f"e_{i}"], f"Vp_1[i={i}]")
    r.add(xh2 + ["x"], ["x"], "Vp_2")
    r.add(["x", "h", "x", "x", "h", "x", "h"], ["h", "x", "h", "x", "x", "h", "x"], "Vp_3")
    for i in range(2, q + 1):
        for j in range(i + 1, q + 1):
            r.add([f"e_{i}", f"e_{j}"], [f"e_{j}", f"e_{i}"], f"Vp_4[i={i},j={j}]")
    for i in range(2, q + 1):
        for j in range(2, p + 1):
            r.add([f"e_{i}"] + heh(j), heh(j) + [f"e_{i}"], f"Vp_4[i={i},j={j}]")
    for i in range(2, q + 1):
        r.add(xh2 + [f"e_{i}"], [f"e_{i}"] + xh2, f"Vp_5[i={i}]")
        r.add(hx2 + [f"e_{i}"], [f"e_{i}"] + hx2, f"Vp_5[i={i}]")
    for i in range(2, (n - 1) // 2 + 1):
        r.add(["x", f"e_{i+1}"], [f"e_{i}", "x"], f"Vp_6[i={i}]")
    r.add(["x"] + heh(p), [f"e_{q}", "x"], "Vp_6")
    for i in range(2, (n - 2) // 2 + 1):
        r.add(["x"] + heh(i), ["h", f"e_{i+1}", "h", "x"], f"Vp_6[i={i}]")
    r.add(["x"] + xh2, ["h", "e_2", "h", "x"], "Vp_7")
    r.add(hx2 + ["x"], ["x", "e_2"], "Vp_7")
    mid = _erun(2, q) + ["h"] + _erun(2, p)
    r.add(hx2 + mid + hx2, ["x"] + mid + hx2, "Vp_8")
    for i in range(1, m + 1):
        rhs = _erun(2, i) + _erun(i + 2, q) + ["h"] + _erun(2, p) + ["h"] + xh2
        r.add([f"x_{i}", f"y_{i}"], rhs, f"Vp_9[i={i}]")
    r.add(["y_1", "x_1"], _erun(2, q) + ["h"] + _erun(2, p) + ["h"], "Vp_9[i=1]")
    for i in range(2, m + 1):
        rhs = (
            _erun(2, q) + ["h"] + _erun(2, i - 1) + _erun(i + 1, p) + ["h"] + xh2
        )
        r.add([f"y_{i}", f"x_{i}"], rhs, f"Vp_9[i={i}]")
    for i in range(1, m + 1):
        for j in range(2, q + 1):
            r.add([f"x_{i}", f"e_{j}"], [f"x_{i}"], f"Vp_10[i={i},j={j}]")
            r.add([f"e_{j}", f"y_{i}"], [f"y_{i}"], f"Vp_10[i={i},j={j}]")
    for i in range(1, m + 1):
        for j in range(2, p + 1):
            if j == i:
                continue
            r.add([f"x_{i}"] + heh(j), [f"x_{i}"], f"Vp_10[i={i},j={j}]")
            r.add(heh(j) + [f"y_{i}"], [f"y_{i}"], f"Vp_10[i={i},j={j}]")
    for i in range(1, m + 1):
        for j in range(2, q + 1):
            if j == i + 1:
                continue
            r.add([f"e_{j}", f"x_{i}"], [f"x_{i}"], f"Vp_11[i={i},j={j}]")
            r.add([f"y_{i}", f"e_{j}"], [f"y_{i}"], f"Vp_11[i={i},j={j}]")
    for i in range(1, m + 1):
        for j in range(2, p + 1):
            r.add(heh(j) + [f"x_{i}"], [f"x_{i}"], f"Vp_11[i={i},j={j}]")
            r.add([f"y_{i}"] + heh(j), [f"y_{i}"], f"Vp_11[i={i},j={j}]")
    for i in range(2, m + 1):
        r.chain([[f"x_{i}"] + xh2, xh2 + [f"x_{i}"], [f"x_{i}"]], f"Vp_12[i={i}]")
        r.chain([xh2 + [f"y_{i}"], [f"y_{i}"] + xh2, [f"y_{i}"]], f"Vp_12[i={i}]")
    r.add(xh2 + ["x_1"], ["x_1"], "Vp_12[i=1]")
    r.add(["y_1"] + xh2, ["y_1"], "Vp_12[i=1]")
    r.chain(
        [hx2 + ["x_1"], ["x_1"] + hx2, _pow("x", n - 2) + ["h", "e_2", "h"]],
        "Vp_13[i=1]",
    )
    for i in range(2, m + 1):
        rhs = (
            _pow("x", n - 2 * i)
            + _erun(n - 2 * i + 1, q)
            + ["h"]
            + _erun(2, i - 1)
            + _erun(i + 1, p)
            + ["h"]
            + xh2
        )
        r.chain([hx2 + [f"x_{i}"], [f"x_{i}"] + hx2, rhs], f"Vp_13[i={i}]")
    for i in range(1, m + 1):
        rhs = (
            ["h"]
            + _pow("x", n - 2 * i + 1)
            + ["h", "x"]
            + _erun(2, i)
            + _erun(i + 2, q)
            + ["h"]
            + _erun(n - 2 * i + 1, p)
            + ["h"]
        )
        r.chain([hx2 + [f"y_{i}"], [f"y_{i}"] + hx2, rhs], f"Vp_13[i={i}]")
    u0p = _erun(2, q) + ["h"] + _erun(2, p) + ["h"] + xh2
    r.chain(
        [["x_1"] + xh2, ["e_2", "x_1"], ["y_1", "e_2"], xh2 + ["y_1"], u0p],
        "Vp_14[i=1]",
    )
    for i in range(2, m + 1):
        r.chain(
            [
                [f"x_{i}"] + heh(i),
                [f"e_{i+1}", f"x_{i}"],
                [f"y_{i}", f"e_{i+1}"],
                heh(i) + [f"y_{i}"],
                u0p,
            ],
            f"Vp_14[i={i}]",
        )
    r.add(["h", "h"], [], "Vbarp_0")
    if n % 2 == 1:
        r.add(["h", f"e_{q}"], [f"e_{q}", "h"], f"Vbarp_1[i={q}]")
    for i in range(1, m + 1):
        r.add(
            ["h", f"x_{i}"],
            ["h"] + _pow("x", n - i - 1) + ["h", f"x_{i}"] + _pow("x", i - 1) + ["h"],
            f"Vbarp_1[i={i}]",
        )
        r.add(
            ["h", f"y_{i}"],
            ["h"] + _pow("x", i - 1) + ["h", f"y_{i}"] + _pow("x", n - i - 1) + ["h"],
            f"Vbarp_1[i={i}]",
        )
    r.add(_erun(2, q) + ["h"] + _erun(2, p) + hx2, _pow("x", n - 1), "Vbarp_2")
    return r.out


def _relations_q1_to_q5(n: int, r: _Rels) -> None:
    r.add(_pow("g", n), [], "Q_1")
    for i in range(1, n + 1):
        r.add([f"e_{i}", f"e_{i}"], [f"e_{i}"], f"Q_2[i={i}]")
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            r.add([f"e_{i}", f"e_{j}"], [f"e_{j}", f"e_{i}"], f"Q_3[i={i},j={j}]")
    r.add(["g", "e_1"], [f"e_{n}", "g"], "Q_4")
    for i in range(1, n):
        r.add(["g", f"e_{i+1}"], [f"e_{i}", "g"], f"Q_4[i={i}]")
    r.add(["g"] + _erun(1, n), _erun(1, n), "Q_5")


def _relations_Q(n: int) -> "list[Relation]":
    m = (n - 1) // 2
    r = _Rels()
    _relations_q1_to_q5(n, r)
    for i in range(1, m + 1):
        rhs = _pow("g", n - 2 * i) + _erun(1, n - i) + _erun(n - i + 2, n)
        r.chain([["e_1", f"x_{i}"], [f"x_{i}", "e_1"], rhs], f"Q_6[i={i}]")
    for i in range(1, m + 1):
        for j in range(2, n + 1):
            if j == n - i + 1:
                continue
            r.add([f"x_{i}", f"e_{j}"], [f"x_{i}"], f"Q_7[i={i},j={j}]")
    for i in range(1, m + 1):
        for j in range(2, n + 1):
            if j == i + 1:
                continue
            r.add([f"e_{j}", f"x_{i}"], [f"x_{i}"], f"Q_8[i={i},j={j}]")
    for i in range(1, m + 1):
        r.chain(
            [[f"x_{i}", f"e_{n-i+1}"], [f"e_{i+1}", f"x_{i}"], _erun(2, n)],
            f"Q_9[i={i}]",
        )
    for i in range(1, m + 1):
        r.add(
            ([f"x_{i}"] + _pow("g", i)) * 2,
            _erun(2, i) + _erun(i + 2, n),
            f"Q_10[i={i}]",
        )
    return r.out


def _relations_Q0(n: int) -> "list[Relation]":
    r = _Rels()
    _relations_q1_to_q5(n, r)
    return r.out


def _relations_QPrime(n: int) -> "list[Relation]":
    m = (n - 1) // 2
    t = ["e_1"] + _pow("g", n - 1)

    def ebar(j):
        # e_j written over {g, e_1}: g^{n-j+1} e_1 g^{j-1}
        return _pow("g", n - j + 1) + ["e_1"] + _pow("g", j - 1)

    r = _Rels()
    r.add(_pow("g", n), [], "Qp_1")
    r.add(["e_1", "e_1"], ["e_1"], "Qp_2")
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            r.add(
                ["e_1"] + _pow("g", n - j + i) + ["e_1"] + _pow("g", n - i + j),
                _pow("g", n - j + i) + ["e_1"] + _pow("g", n - i + j) + ["e_1"],
                f"Qp_3[i={i},j={j}]",
            )
    r.add(["g"] + t * n, t * n, "Qp_5")
    for i in range(1, m + 1):
        # e_1...e_{n-i} = t^{n-i-1} e_1 g^{n-i-1} and e_{n-i+2}...e_n =
        # g^{i-1} t^{i-1}; the powers of g between them fuse to g^{n-2}.
        rhs = (
            _pow("g", n - 2 * i)
            + t * (n - i - 1)
            + ["e_1"]
            + _pow("g", n - 2)
            + t * (i - 1)
        )
        r.chain([["e_1", f"x_{i}"], [f"x_{i}", "e_1"], rhs], f"Qp_6[i={i}]")
    for i in range(1, m + 1):
        for j in range(2, n + 1):
            if j == n - i + 1:
                continue
            r.add([f"x_{i}"] + ebar(j), [f"x_{i}"], f"Qp_7[i={i},j={j}]")
    for i in range(1, m + 1):
        for j in range(2, n + 1):
            if j == i + 1:
                continue
            r.add(ebar(j) + [f"x_{i}"], [f"x_{i}"], f"Qp_8[i={i},j={j}]")
    for i in range(1, m + 1):
        r.chain(
            [
                [f"x_{i}"] + _pow("g", i) + ["e_1"] + _pow("g", n - i),
                _pow("g", n - i) + ["e_1"] + _pow("g", i) + [f"x_{i}"],
                _pow("g", n - 1) + t * (n - 1),
            ],
            f"Qp_9[i={i}]",
        )
    for i in range(1, m + 1):
        lhs = ([f"x_{i}"] + _pow("g", i)) * 2
        if i == 1:
            # e_3...e_n = g^{n-2} t^{n-2}
            rhs = _pow("g", n - 2) + t * (n - 2)
        else:
            rhs = (
                _pow("g", n - 1)
                + t * (i - 2)
                + ["e_1"]
                + _pow("g", n - 2)
                + t * (n - i - 1)
            )
        r.add(lhs, rhs, f"Qp_10[i={i}]")
    return r.out


_BUILDERS = {
    RelationFamily.R: _relations_R,
    RelationFamily.U: _relations_U,
    RelationFamily.V: _relations_V,
    RelationFamily.VBAR: _relations_Vbar,
    RelationFamily.VBAR_PRIME: _relations_VbarPrime,
    RelationFamily.Q: _relations_Q,
    RelationFamily.Q0: _relations_Q0,
    RelationFamily.Q_PRIME: _relations_QPrime,
}


def build_relations(family: RelationFamily, n: int) -> Presentation:
    """The family's full relation list at chain length n.

    >>> len(build_relations(RelationFamily.R, 4).relations)
    36
    >>> len(build_relations(RelationFamily.Q_PRIME, 4).relations)
    18
    """
    if n < 4:
        raise ValueError(f"relation families need n >= 4, got {n}")
    return Presentation(
        label=f"{family.value}(n={n})",
        letters=build_alphabet(family, n),
        relations=tuple(_BUILDERS[family](n)),
    )


def expected_relation_count(family: RelationFamily, n: int) -> int:
    """Closed-form relation count for each family.

    The VbarPrime closed form disagrees with its own expanded list for
    every n we checked (for example 35 against 32 at n = 4); the other
    seven match build_relations exactly.

    >>> expected_relation_count(RelationFamily.R, 4)
    36
    >>> expected_relation_count(RelationFamily.U, 5)
    24
    """
    if n < 4:
        raise ValueError(f"count formulas need n >= 4, got {n}")
    s = 1 if n % 2 == 0 else -1
    if family == RelationFamily.R:
        return (5 * n * n - (1 + 2 * s) * n - s + 5) // 2
    if family == RelationFamily.U:
        return (n * n + 3 * n + 8) // 2
    if family == RelationFamily.V:
        return (5 * n * n - (1 + 2 * s) * n - s - 3) // 2
    if family == RelationFamily.VBAR:
        return (10 * n * n + (4 - 4 * s) * n - (3 + 5 * s)) // 4
    if family == RelationFamily.VBAR_PRIME:
        return (8 * n * n + (7 - s) * n - 8 * s - 4) // 4
    if family == RelationFamily.Q:
        return (6 * n * n + 2 * (1 - s) * n + 6 - (1 + s)) // 4
    if family == RelationFamily.Q0:
        return (n * n + 3 * n + 4) // 2
    if family == RelationFamily.Q_PRIME:
        return (6 * n * n - 2 * (3 + s) * n + 10 - (1 + s)) // 4
    raise ValueError(f"unknown family {family!r}")


def _generator_for_name(name: str, n: int) -> PartialPerm:
    if name in ("x", "y", "g", "h"):
        return named_generator(name, n)
    kind, _, index = name.partition("_")
    return named_generator(f"{kind}_i", n, int(index))


def build_assignment(family: RelationFamily, n: int) -> Assignment:
    """Map each letter of the family's alphabet to its named generator.

    >>> build_assignment(RelationFamily.R, 4).image("x").pairs()
    ((1, 2), (2, 3), (3, 4))
    """
    if n < 4:
        raise ValueError(f"assignments need n >= 4, got {n}")
    names = _alphabet_names(family, n)
    return Assignment(
        degree=n,
        images=tuple((name, _generator_for_name(name, n)) for name in names),
    )


def evaluate(w: "tuple[str, ...]", a: Assignment) -> PartialPerm:
    """Image of a word: left-to-right product of the letter images.

    >>> phi = build_assignment(RelationFamily.R, 4)
    >>> evaluate(("x", "y"), phi) == phi.image("e_4")
    True
    >>> evaluate((), phi).is_total()
    True
    """
    result = identity(a.degree)
    for name in w:
        result = compose(result, a.image(name))
    return result


@dataclasses.dataclass(frozen=True)
class CheckReport:
    """Outcome of evaluating every relation under an assignment."""

    all_hold: bool
    failing: "tuple[Relation, ...]"


def check_relations_hold(p: Presentation, a: Assignment) -> CheckReport:
    """Evaluate both sides of every relation of p under a.

    >>> n = 5
    >>> rep = check_relations_hold(build_relations(RelationFamily.Q, n),
    ...                            build_assignment(RelationFamily.Q, n))
    >>> rep.all_hold
    True
    """
    have = set(a.names())
    missing = [name for name in p.letter_names if name not in have]
    if missing:
        raise ValueError(f"assignment lacks letters {missing}")
    failing = tuple(
        rel for rel in p.relations
        if evaluate(rel.lhs, a) != evaluate(rel.rhs, a)
    )
    return CheckReport(all_hold=not failing, failing=failing)


def build_extension_presentation(
    base: Presentation,
    new_letter: str,
    conj_relations,
    u0_relation: Relation,
    label: "str | None" = None,
    sq_tag: str = "ext_0",
) -> Presentation:
    """Adjoin an involution letter to a presentation.

    The new letter b is prepended to the alphabet and the relations
    become: base relations, then b^2 = 1, then the given conjugation
    relations (each of shape b a = v b with a a base letter and v a
    base word), then the closing relation u0 b = v0.
    """
    if new_letter in base.letter_names:
        raise ValueError(f"{new_letter!r} already in the alphabet")
    base_names = set(base.letter_names)
    for rel in conj_relations:
        bad = (
            len(rel.lhs) != 2
            or rel.lhs[0] != new_letter
            or rel.lhs[1] not in base_names
            or len(rel.rhs) < 1
            or rel.rhs[-1] != new_letter
            or any(name not in base_names for name in rel.rhs[:-1])
        )
        if bad:
            raise ValueError(f"conjugation relation {rel.tag or rel} has wrong shape")
    if (
        len(u0_relation.lhs) < 1
        or u0_relation.lhs[-1] != new_letter
        or any(name not in base_names for name in u0_relation.lhs[:-1])
    ):
        raise ValueError("closing relation must have shape u0*new_letter = v0")
    letters = _alphabet((new_letter,) + base.letter_names)
    relations = (
        base.relations
        + (Relation((new_letter, new_letter), (), sq_tag),)
        + tuple(conj_relations)
        + (u0_relation,)
    )
    return Presentation(
        label=label if label is not None else f"{base.label}+{new_letter}",
        letters=letters,
        relations=relations,
    )


def eliminate_generator(
    p: Presentation, name: str, replacement: "tuple[str, ...]"
) -> Presentation:
    """Remove a generator, rewriting occurrences to the replacement word.

    Relations that become syntactically trivial (identical sides) are
    dropped.

    >>> p = Presentation("t", _alphabet(["a", "b"]),
    ...                  (Relation(("b",), ("a", "a"), "def_b"),))
    >>> eliminate_generator(p, "b", ("a", "a")).relations
    ()
    """
    replacement = tuple(replacement)
    if name not in p.letter_names:
        raise KeyError(f"{name!r} not in the alphabet")
    if name in replacement:
        raise ValueError(f"replacement word contains {name!r}")
    remaining = [nm for nm in p.letter_names if nm != name]
    for nm in replacement:
        if nm not in remaining:
            raise ValueError(f"replacement letter {nm!r} not in the alphabet")

    def subst(w):
        out = []
        for nm in w:
            out.extend(replacement if nm == name else (nm,))
        return tuple(out)

    rels = []
    for rel in p.relations:
        lhs, rhs = subst(rel.lhs), subst(rel.rhs)
        if lhs == rhs:
            continue
        rels.append(Relation(lhs, rhs, rel.tag))
    return Presentation(
        label=f"{p.label}-{name}", letters=_alphabet(remaining), relations=tuple(rels)
    )


def add_relation(p: Presentation, rel: Relation, checked: bool = True, caps=None) -> Presentation:
    """Append a relation; in checked mode it must be a consequence of p."""
    if checked:
        from .congruence import is_consequence

        if not is_consequence(p, rel, caps):
            raise ValueError(f"{rel.lhs} = {rel.rhs} is not a consequence")
    return Presentation(p.label, p.letters, p.relations + (rel,))


def delete_relation(p: Presentation, rel: Relation, checked: bool = True, caps=None) -> Presentation:
    """Remove the first relation with the same sides as rel.

    In checked mode the removed relation must be a consequence of the
    remaining ones.
    """
    index = next(
        (k for k, r in enumerate(p.relations)
         if r.lhs == rel.lhs and r.rhs == rel.rhs),
        None,
    )
    if index is None:
        raise KeyError(f"{rel.lhs} = {rel.rhs} not present")
    remaining = p.relations[:index] + p.relations[index + 1:]
    smaller = Presentation(p.label, p.letters, remaining)
    if checked:
        from .congruence import is_consequence

        if not is_consequence(smaller, rel, caps):
            raise ValueError(
                f"{rel.lhs} = {rel.rhs} is not a consequence of the rest"
            )
    return smaller


def odi_elimination_chain(n: int) -> "tuple[Presentation, ...]":
    """R, then R with e_n := xy removed, then also e_1 := yx removed.

    All three present the same monoid.
    """
    p0 = build_relations(RelationFamily.R, n)
    p1 = eliminate_generator(p0, f"e_{n}", ("x", "y"))
    p2 = eliminate_generator(p1, "e_1", ("y", "x"))
    return (p0, p1, p2)


def opdi_elimination_chain(n: int) -> "tuple[Presentation, ...]":
    """Q, then Q with e_i := g^{n-i+1} e_1 g^{i-1} removed for i = 2..n."""
    chain = [build_relations(RelationFamily.Q, n)]
    for i in range(2, n + 1):
        replacement = tuple(_pow("g", n - i + 1) + ["e_1"] + _pow("g", i - 1))
        chain.append(eliminate_generator(chain[-1], f"e_{i}", replacement))
    return tuple(chain)


def wprime1_words(n: int) -> "tuple[tuple[str, ...], ...]":
    """The 1 + n^2 required representatives of the empty and rank-1 maps.

    All are words over the V alphabet built around u0 = e_2...e_{n-1}xy.

    >>> len(wprime1_words(4))
    17
    """
    u0 = _erun(2, n - 1) + ["x", "y"]

    def left(i):
        return _erun(i + 1, n - 1) + ["x"] + _pow("y", i)

    def right(j):
        return _pow("x", j - 1) + _erun(j + 1, n - 1) + ["x", "y"]

    words = [("y", "x") + tuple(u0)]
    for i in range(1, n):
        for j in range(1, n):
            words.append(tuple(left(i) + u0 + right(j)))
    for i in range(1, n):
        words.append(tuple(left(i) + u0 + _pow("x", n - 1)))
    for j in range(1, n):
        words.append(tuple(_pow("y", n - 1) + u0 + right(j)))
    words.append(tuple(_pow("y", n - 1) + u0 + _pow("x", n - 1)))
    return tuple(words)


def w1_w2_words(n: int) -> "tuple[tuple[str, ...], ...]":
    """The explicit rank-2 representatives y^r x_i x^s and y^r y_i x^s.

    Index constraints: s+1 <= i <= n-r-1 for the x_i family and
    r+1 <= i <= n-s-1 for the y_i family, with 0 <= r, s <= n-1 and
    1 <= i <= floor((n-1)/2).

    >>> len(w1_w2_words(4))
    6
    """
    m = (n - 1) // 2
    words = []
    for r in range(n):
        for i in range(1, m + 1):
            for s in range(n):
                if s + 1 <= i <= n - r - 1:
                    words.append(tuple(_pow("y", r) + [f"x_{i}"] + _pow("x", s)))
    for r in range(n):
        for i in range(1, m + 1):
            for s in range(n):
                if r + 1 <= i <= n - s - 1:
                    words.append(tuple(_pow("y", r) + [f"y_{i}"] + _pow("x", s)))
    return tuple(words)


def build_forms(family: RelationFamily, n: int, enumeration=None) -> FormsSet:
    """Candidate forms for the R, Vbar and Q presentations.

    For R the enumeration of the U presentation supplies the shortlex
    core W0; the explicit rank-2 words are appended.  For Vbar the
    enumeration of the V presentation supplies shortlex forms W', the
    1 + n^2 words of wprime1_words replace the representatives of
    their classes, and each remaining form w contributes a second form
    wh.  For Q the forms are fully explicit: g^m times a product of
    distinct e_i (any proper subset, ascending), the all-e product,
    and the conjugates g^r x_i g^s.
    """
    if n < 4:
        raise ValueError(f"forms need n >= 4, got {n}")
    m = (n - 1) // 2
    if family == RelationFamily.R:
        if enumeration is None:
            raise ValueError("forms for R need the enumeration of U")
        from .congruence import normal_forms

        w0 = normal_forms(enumeration, build_alphabet(RelationFamily.U, n))
        words = w0.words + w1_w2_words(n)
        return FormsSet(
            label=f"W(n={n})",
            letters=tuple(_alphabet_names(RelationFamily.R, n)),
            words=words,
        )
    if family == RelationFamily.VBAR:
        if enumeration is None:
            raise ValueError("forms for Vbar need the enumeration of V")
        from .congruence import normal_forms

        reps = list(
            normal_forms(enumeration, build_alphabet(RelationFamily.V, n)).words
        )
        required = wprime1_words(n)
        for w in required:
            reps[enumeration.word_class(w)] = w
        required_set = set(required)
        tail = [w + ("h",) for w in reps if w not in required_set]
        return FormsSet(
            label=f"Wbar(n={n})",
            letters=tuple(_alphabet_names(RelationFamily.VBAR, n)),
            words=tuple(reps) + tuple(tail),
        )
    if family == RelationFamily.Q:
        import itertools

        words = []
        for r in range(n):
            for k in range(n):
                for subset in itertools.combinations(range(1, n + 1), k):
                    words.append(tuple(_pow("g", r) + [f"e_{i}" for i in subset]))
        words.append(tuple(_erun(1, n)))
        for i in range(1, m + 1):
            for r in range(n):
                for s in range(n):
                    words.append(tuple(_pow("g", r) + [f"x_{i}"] + _pow("g", s)))
        return FormsSet(
            label=f"Qforms(n={n})",
            letters=tuple(_alphabet_names(RelationFamily.Q, n)),
            words=tuple(words),
        )
    raise ValueError(f"no forms family for {family.value}")
