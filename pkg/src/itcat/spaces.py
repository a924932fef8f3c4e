"""Finite spaces, deterministic maps, and the canonical structural maps.

This is the deterministic substrate everything else sits on: finite labelled
spaces closed under binary products with a one-point terminal space, plain
functions between them, and the handful of structural isomorphisms (projections,
swap, associator, unitors, and the copy/diagonal map) that the categorical
machinery keeps reusing.

Elements of a space are addressed by 0-based index throughout; labels exist for
rendering only.  A product space remembers its two factors so that pair indices
can be split and recombined without guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterator


class SpaceError(ValueError):
    """Inconsistent combination of spaces or maps."""


@dataclass(frozen=True)
class FiniteSpace:
    """A finite labelled space.

    ``factors`` is None for plain spaces and the pair of factor spaces for a
    product.  The terminal space is the unique one-point space ``Z``.
    """

    label: str
    elements: tuple[str, ...]
    factors: tuple["FiniteSpace", "FiniteSpace"] | None = None

    def __post_init__(self) -> None:
        if len(self.elements) == 0:
            raise SpaceError(f"space {self.label!r} must have at least one element")

    @property
    def card(self) -> int:
        return len(self.elements)

    @property
    def is_product(self) -> bool:
        return self.factors is not None

    def indices(self) -> range:
        return range(self.card)

    def pair_index(self, i: int, j: int) -> int:
        """Index of (i, j) in this product space (left index varies slower)."""
        if self.factors is None:
            raise SpaceError(f"{self.label!r} is not a product space")
        _, right = self.factors
        return i * right.card + j

    def split_index(self, k: int) -> tuple[int, int]:
        """Inverse of pair_index."""
        if self.factors is None:
            raise SpaceError(f"{self.label!r} is not a product space")
        _, right = self.factors
        return divmod(k, right.card)

    def __repr__(self) -> str:
        return f"FiniteSpace({self.label!r}, card={self.card})"


def space(label: str, elements: int | tuple[str, ...] | list[str]) -> FiniteSpace:
    """Build a plain space from a cardinality or explicit element labels."""
    if isinstance(elements, int):
        if elements < 1:
            raise SpaceError("cardinality must be >= 1")
        names = tuple(f"{label}{i}" for i in range(elements))
    else:
        names = tuple(elements)
        if not names:
            raise SpaceError("a space needs at least one element")
    return FiniteSpace(label, names)


#: The terminal space: exactly one element, conventionally written ``*``.
TERMINAL = FiniteSpace("Z", ("*",))


def is_terminal(a: FiniteSpace) -> bool:
    """True only for the distinguished terminal object, not every singleton."""
    return a.card == 1 and a.label == "Z"


def product_space(a: FiniteSpace, b: FiniteSpace) -> FiniteSpace:
    """The binary product A x B with row-major element order."""
    elements = tuple(f"({x},{y})" for x, y in _cartesian(a.elements, b.elements))
    return FiniteSpace(f"({a.label}*{b.label})", elements, factors=(a, b))


@dataclass(frozen=True)
class DetMap:
    """A deterministic map between finite spaces, stored as a lookup table."""

    src: FiniteSpace
    dst: FiniteSpace
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.src.card:
            raise SpaceError(
                f"map table has {len(self.table)} entries for source of "
                f"cardinality {self.src.card}"
            )
        for v in self.table:
            if not 0 <= v < self.dst.card:
                raise SpaceError(f"map value {v} outside target of cardinality {self.dst.card}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def is_bijection(self) -> bool:
        return self.src.card == self.dst.card and len(set(self.table)) == self.src.card

    def __repr__(self) -> str:
        return f"DetMap({self.src.label}->{self.dst.label}, {list(self.table)})"


def identity_map(a: FiniteSpace) -> DetMap:
    """The identity map on ``a``."""
    return DetMap(a, a, tuple(a.indices()))


def constant_map(src: FiniteSpace, dst: FiniteSpace, value: int) -> DetMap:
    """The map sending every element of ``src`` to ``dst``'s ``value`` index."""
    return DetMap(src, dst, (value,) * src.card)


def terminal_map(a: FiniteSpace) -> DetMap:
    """The unique map into the terminal space."""
    return DetMap(a, TERMINAL, (0,) * a.card)


def det_compose(outer: DetMap, inner: DetMap) -> DetMap:
    """outer after inner."""
    if inner.dst != outer.src:
        raise SpaceError(
            f"cannot compose: {inner.dst.label} (inner target) != {outer.src.label} (outer source)"
        )
    return DetMap(inner.src, outer.dst, tuple(outer.table[v] for v in inner.table))


def det_product(f: DetMap, g: DetMap) -> DetMap:
    """The pairing <f, g>: x |-> (f x, g x) into the product of the targets."""
    if f.src != g.src:
        raise SpaceError("paired maps must share their source")
    dst = product_space(f.dst, g.dst)
    return DetMap(f.src, dst, tuple(dst.pair_index(f(x), g(x)) for x in f.src.indices()))


def det_tensor(f: DetMap, g: DetMap) -> DetMap:
    """f x g on product spaces: (x, y) |-> (f x, g y)."""
    src = product_space(f.src, g.src)
    dst = product_space(f.dst, g.dst)
    table = []
    for k in src.indices():
        x, y = src.split_index(k)
        table.append(dst.pair_index(f(x), g(y)))
    return DetMap(src, dst, tuple(table))


def proj1(a: FiniteSpace, b: FiniteSpace) -> DetMap:
    """First projection A x B -> A."""
    src = product_space(a, b)
    return DetMap(src, a, tuple(src.split_index(k)[0] for k in src.indices()))


def proj2(a: FiniteSpace, b: FiniteSpace) -> DetMap:
    """Second projection A x B -> B."""
    src = product_space(a, b)
    return DetMap(src, b, tuple(src.split_index(k)[1] for k in src.indices()))


def swap_map(a: FiniteSpace, b: FiniteSpace) -> DetMap:
    """The symmetry (x, y) |-> (y, x)."""
    src = product_space(a, b)
    dst = product_space(b, a)
    table = []
    for k in src.indices():
        x, y = src.split_index(k)
        table.append(dst.pair_index(y, x))
    return DetMap(src, dst, tuple(table))


def assoc_map(a: FiniteSpace, b: FiniteSpace, c: FiniteSpace) -> DetMap:
    """The associator ((x, y), z) |-> (x, (y, z)).

    With row-major indices both sides enumerate triples in the same order, so
    the table is the identity permutation across two differently bracketed
    spaces.  It is still constructed as the pairing of composed projections to
    keep the definition honest.
    """
    left = product_space(product_space(a, b), c)
    ab = proj1(product_space(a, b), c)
    first = det_compose(proj1(a, b), ab)
    second = det_product(det_compose(proj2(a, b), ab), proj2(product_space(a, b), c))
    out = det_product(first, second)
    assert out.src == left
    return out


def left_unit_map(a: FiniteSpace) -> DetMap:
    """Z x A -> A, the second projection from the terminal product."""
    return proj2(TERMINAL, a)


def right_unit_map(a: FiniteSpace) -> DetMap:
    """A x Z -> A, the first projection onto A."""
    return proj1(a, TERMINAL)


def copy_map(a: FiniteSpace) -> DetMap:
    """The diagonal x |-> (x, x), i.e. the pairing of the identity with itself."""
    return det_product(identity_map(a), identity_map(a))


def canonical_map(name: str, *spaces: FiniteSpace) -> DetMap:
    """Dispatch the named structural map for the given component spaces.

    Recognised names (with required argument counts):

    - ``proj1``, ``proj2``, ``swap`` (two spaces)
    - ``assoc`` (three spaces)
    - ``left-unit``, ``right-unit``, ``copy`` (one space)
    """
    builders = {
        "proj1": (2, proj1),
        "proj2": (2, proj2),
        "swap": (2, swap_map),
        "assoc": (3, assoc_map),
        "left-unit": (1, left_unit_map),
        "right-unit": (1, right_unit_map),
        "copy": (1, copy_map),
    }
    if name not in builders:
        raise SpaceError(f"unknown canonical map {name!r}")
    arity, builder = builders[name]
    if len(spaces) != arity:
        raise SpaceError(f"canonical map {name!r} takes {arity} space(s), got {len(spaces)}")
    return builder(*spaces)


def all_maps(src: FiniteSpace, dst: FiniteSpace) -> Iterator[DetMap]:
    """Enumerate every deterministic map src -> dst (dst.card ** src.card maps)."""
    for table in _cartesian(dst.indices(), repeat=src.card):
        yield DetMap(src, dst, table)
