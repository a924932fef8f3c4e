"""Arrows of the Kleisli category of an uncertainty monad.

An arrow A -> B assigns to every element of A an uncertain value over B (one
dense row per source element).  Composition routes a source element through
the intermediate uncertainty and flattens; this is the usual Kleisli
composition, which for the probability monad is exactly stochastic-matrix
multiplication, for powerset relational composition, and for the fuzzy monads
the sup-min / sup-product composition of fuzzy relations.

Deterministic maps embed via :func:`lift`; the embedding is functorial and the
lifted structural maps (projections, swap, associator, unitors) stay
isomorphisms in every Kleisli category.  The copy map does not stay natural —
that failure is deliberate and checked elsewhere.

``product`` is the independent pairing of two arrows with a common source;
``tensor`` the same with independent sources.  A *distribution* is an arrow
whose source is the terminal space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator, Sequence

from .monads import Monad, MonadValueError
from .spaces import (
    TERMINAL,
    DetMap,
    FiniteSpace,
    SpaceError,
    product_space,
    proj1,
    proj2,
)


@dataclass(frozen=True)
class KleisliArrow:
    """An arrow of the Kleisli category: one uncertain value per source element."""

    monad: Monad
    src: FiniteSpace
    dst: FiniteSpace
    rows: tuple

    def __post_init__(self) -> None:
        if len(self.rows) != self.src.card:
            raise MonadValueError(
                f"arrow needs {self.src.card} rows, got {len(self.rows)}"
            )
        for row in self.rows:
            self.monad.validate(self.dst, row)

    def at(self, x: int):
        """The uncertain value this arrow assigns to source element ``x``."""
        return self.rows[x]

    def then(self, other: "KleisliArrow") -> "KleisliArrow":
        """Diagrammatic composition: self first, then other."""
        return compose(other, self)

    def __repr__(self) -> str:
        return (
            f"KleisliArrow[{self.monad.tag}]({self.src.label}->{self.dst.label})"
        )


def arrow(monad: Monad, src: FiniteSpace, dst: FiniteSpace, rows: Sequence) -> KleisliArrow:
    """Validating constructor."""
    return KleisliArrow(monad, src, dst, tuple(rows))


def lift(monad: Monad, f: DetMap) -> KleisliArrow:
    """Embed a deterministic map: each row is the unit at the image point."""
    return KleisliArrow(
        monad, f.src, f.dst, tuple(monad.unit(f.dst, f(x)) for x in f.src.indices())
    )


def identity_arrow(monad: Monad, sp: FiniteSpace) -> KleisliArrow:
    """The identity arrow on ``sp``: every element mapped to its unit value."""
    return KleisliArrow(monad, sp, sp, tuple(monad.unit(sp, x) for x in sp.indices()))


def _check_same_monad(*arrows: KleisliArrow) -> Monad:
    m = arrows[0].monad
    for a in arrows[1:]:
        if a.monad is not m:
            raise MonadValueError(
                f"cannot mix monads {m.tag} and {a.monad.tag} in one construction"
            )
    return m


def compose(outer: KleisliArrow, inner: KleisliArrow) -> KleisliArrow:
    """Kleisli composition ``outer after inner``.

    The row at x is the flattening of inner's row at x pushed through outer's
    rows — for probability, the matrix product; in general mu . T(outer) . inner.
    """
    m = _check_same_monad(outer, inner)
    if inner.dst != outer.src:
        raise SpaceError(
            f"cannot compose: inner target {inner.dst.label} != outer source {outer.src.label}"
        )
    rows = []
    for x in inner.src.indices():
        routed = m.pushforward(lambda y: outer.rows[y], m.row_to_struct(inner.dst, inner.rows[x]))
        rows.append(m.join_rows(outer.dst, routed))
    return KleisliArrow(m, inner.src, outer.dst, tuple(rows))


def product(a: KleisliArrow, b: KleisliArrow) -> KleisliArrow:
    """Independent pairing of two arrows with the same source."""
    m = _check_same_monad(a, b)
    if a.src != b.src:
        raise SpaceError(
            f"product needs a common source, got {a.src.label} and {b.src.label}"
        )
    dst = product_space(a.dst, b.dst)
    rows = tuple(
        m.pair_rows(a.dst, a.rows[x], b.dst, b.rows[x], dst) for x in a.src.indices()
    )
    return KleisliArrow(m, a.src, dst, rows)


def tensor(a: KleisliArrow, b: KleisliArrow) -> KleisliArrow:
    """Independent parallel composition on a product source.

    Defined directly row-by-row; it coincides with product(a . proj1, b . proj2),
    which the law suite checks.
    """
    m = _check_same_monad(a, b)
    src = product_space(a.src, b.src)
    dst = product_space(a.dst, b.dst)
    rows = []
    for k in src.indices():
        x, y = src.split_index(k)
        rows.append(m.pair_rows(a.dst, a.rows[x], b.dst, b.rows[y], dst))
    return KleisliArrow(m, src, dst, tuple(rows))


def tensor_via_projections(a: KleisliArrow, b: KleisliArrow) -> KleisliArrow:
    """The defining formula for tensor, kept separate so tests can compare."""
    left = compose(a, lift(a.monad, proj1(a.src, b.src)))
    right = compose(b, lift(b.monad, proj2(a.src, b.src)))
    return product(left, right)


def distribution(monad: Monad, sp: FiniteSpace, value: Any) -> KleisliArrow:
    """An uncertain value packaged as an arrow from the terminal space."""
    return KleisliArrow(monad, TERMINAL, sp, (value,))


def is_distribution(a: KleisliArrow) -> bool:
    """True when ``a`` is an arrow out of the terminal object (a single row)."""
    return a.src.card == 1 and a.src == TERMINAL


def enumerate_arrows(monad: Monad, src: FiniteSpace, dst: FiniteSpace) -> Iterator[KleisliArrow]:
    """All arrows src -> dst, when the monad has finitely many rows."""
    from itertools import product as cartesian

    rows = monad.enumerate_rows(dst)
    if rows is None:
        raise MonadValueError(f"{monad.tag} has infinitely many rows; cannot enumerate")
    for combo in cartesian(rows, repeat=src.card):
        yield KleisliArrow(monad, src, dst, combo)
