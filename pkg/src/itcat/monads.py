"""Uncertainty monads over finite spaces.

Each monad packages one representation of an uncertain outcome:

* ``identity``    — no uncertainty, a value is just an element.
* ``probability`` — exact finite distributions (``fractions.Fraction`` entries
                    summing to 1).
* ``powerset``    — nonempty sets of possible elements.
* ``fuzzy-min``   — normalised possibility vectors (max grade exactly 1),
                    combined by sup-min.
* ``fuzzy-prod``  — the same vectors combined by sup-product.

Two data layers coexist and agree:

*Dense rows* over a :class:`~itcat.spaces.FiniteSpace` — a probability row is a
tuple of Fractions, a powerset row a frozenset of indices, a fuzzy row a tuple
of grades, an identity row a bare index.  These are what arrows store.

*Sparse structures* over arbitrary hashable atoms — finite-support values whose
atoms may themselves be rows or structures.  These make the higher-order monad
data (values of type T(T(A)), T(T(T(A))), T(A)xT(B)) representable uniformly,
which is what the law checkers need: ``unit``/``pushforward``/``flatten``/
``pair_structs`` implement the monad unit, functor action, multiplication and
the independent-pairing transformation at any order.  A probability structure
is a frozenset of (atom, weight) pairs with positive weights, merged by
summation; fuzzy structures merge by max; powerset structures are frozensets of
atoms; identity structures are the atoms themselves.

All arithmetic is exact (Fractions); nothing in this module touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from typing import Any, Callable, Hashable, Iterable

from .spaces import DetMap, FiniteSpace

Struct = Hashable  # sparse structure; concrete shape depends on the monad

ZERO = Fraction(0)
ONE = Fraction(1)


class MonadValueError(ValueError):
    """A dense row or structure violates the representation invariants."""


def as_fraction(x: Any) -> Fraction:
    """Coerce ints/strings/Fractions to Fraction; floats are refused.

    Floats are refused deliberately: the whole point of this layer is exact
    arithmetic, and a stray 0.1 would poison every downstream equality check.
    """
    if isinstance(x, float):
        raise MonadValueError(f"refusing float {x!r}; use exact rationals")
    return Fraction(x)


class Monad:
    """Shared interface of the five uncertainty representations."""

    tag: str = "?"

    # -- dense rows ---------------------------------------------------------

    def validate(self, sp: FiniteSpace, value: Any) -> None:
        raise NotImplementedError

    def unit(self, sp: FiniteSpace, index: int):
        """eta: a point value regarded as a degenerate uncertain value."""
        raise NotImplementedError

    def fmap(self, f: DetMap, value):
        """T(f): pushforward of a dense row along a deterministic map."""
        out = self.pushforward(lambda i: f(i), self.row_to_struct(f.src, value))
        return self.struct_to_row(f.dst, out)

    def pair_rows(self, sa: FiniteSpace, p, sb: FiniteSpace, q, prod: FiniteSpace):
        """gamma: the independent joint of two rows, as a row over ``prod``."""
        s = self.pair_structs(self.row_to_struct(sa, p), self.row_to_struct(sb, q))
        flat = self.pushforward(lambda ij: prod.pair_index(ij[0], ij[1]), s)
        return self.struct_to_row(prod, flat)

    def join_rows(self, sp: FiniteSpace, struct_of_rows: Struct):
        """mu at row level: mix a structure whose atoms are dense rows."""
        lifted = self.pushforward(lambda row: self.row_to_struct(sp, row), struct_of_rows)
        return self.struct_to_row(sp, self.flatten(lifted))

    # -- sparse structures --------------------------------------------------

    def pure(self, atom: Hashable) -> Struct:
        raise NotImplementedError

    def pushforward(self, fn: Callable[[Hashable], Hashable], s: Struct) -> Struct:
        raise NotImplementedError

    def flatten(self, s: Struct) -> Struct:
        """mu: collapse a structure whose atoms are themselves structures."""
        raise NotImplementedError

    def pair_structs(self, s: Struct, t: Struct) -> Struct:
        """gamma at structure level: atoms of the result are (atom_s, atom_t)."""
        raise NotImplementedError

    def row_to_struct(self, sp: FiniteSpace, value) -> Struct:
        raise NotImplementedError

    def struct_to_row(self, sp: FiniteSpace, s: Struct):
        raise NotImplementedError

    # -- enumeration and sampling ------------------------------------------

    def enumerate_rows(self, sp: FiniteSpace) -> list | None:
        """All dense rows when the representation is finite, else None."""
        return None

    def grid_rows(self, sp: FiniteSpace, max_den: int) -> list:
        """All rows whose entries are rationals with denominator <= max_den."""
        raise NotImplementedError

    def sample_row(self, sp: FiniteSpace, rng) -> Any:
        raise NotImplementedError

    def render(self, sp: FiniteSpace, value) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<monad {self.tag}>"


# ---------------------------------------------------------------------------
# identity


class IdentityMonad(Monad):
    """No uncertainty at all: T(A) = A, and every operation is trivial."""

    tag = "identity"

    def validate(self, sp, value):
        if not isinstance(value, int) or not 0 <= value < sp.card:
            raise MonadValueError(f"identity value {value!r} not an index of {sp.label}")

    def unit(self, sp, index):
        return index

    def pure(self, atom):
        return atom

    def pushforward(self, fn, s):
        return fn(s)

    def flatten(self, s):
        return s

    def pair_structs(self, s, t):
        return (s, t)

    def row_to_struct(self, sp, value):
        return value

    def struct_to_row(self, sp, s):
        return s

    def enumerate_rows(self, sp):
        return list(sp.indices())

    def grid_rows(self, sp, max_den):
        return list(sp.indices())

    def sample_row(self, sp, rng):
        return rng.randrange(sp.card)

    def render(self, sp, value):
        return sp.elements[value]


# ---------------------------------------------------------------------------
# probability


def prob_row(entries: Iterable) -> tuple[Fraction, ...]:
    """Convenience constructor for exact probability rows."""
    return tuple(as_fraction(e) for e in entries)


class ProbabilityMonad(Monad):
    """Finitely supported exact probability distributions.

    Structures: frozensets of (atom, weight) pairs, weights positive Fractions
    summing to 1, each atom listed once.  Pushforward merges colliding atoms by
    adding their weights; flatten is the usual mixture of mixtures.
    """

    tag = "probability"

    def validate(self, sp, value):
        if not isinstance(value, tuple) or len(value) != sp.card:
            raise MonadValueError(f"probability row must be a {sp.card}-tuple")
        total = ZERO
        for p in value:
            if not isinstance(p, Fraction):
                raise MonadValueError(f"probability entry {p!r} is not a Fraction")
            if p < 0:
                raise MonadValueError(f"negative probability {p}")
            total += p
        if total != ONE:
            raise MonadValueError(f"probability row sums to {total}, not 1")

    def unit(self, sp, index):
        return tuple(ONE if i == index else ZERO for i in sp.indices())

    @staticmethod
    def _merge(pairs: Iterable[tuple[Hashable, Fraction]]) -> Struct:
        acc: dict[Hashable, Fraction] = {}
        for atom, w in pairs:
            if w:
                acc[atom] = acc.get(atom, ZERO) + w
        return frozenset(acc.items())

    def pure(self, atom):
        return frozenset({(atom, ONE)})

    def pushforward(self, fn, s):
        return self._merge((fn(atom), w) for atom, w in s)

    def flatten(self, s):
        return self._merge(
            (atom, w * v) for inner, w in s for atom, v in inner
        )

    def pair_structs(self, s, t):
        return self._merge(
            ((a, b), w * v) for a, w in s for b, v in t
        )

    def row_to_struct(self, sp, value):
        return frozenset((i, p) for i, p in enumerate(value) if p)

    def struct_to_row(self, sp, s):
        out = [ZERO] * sp.card
        for i, w in s:
            out[i] += w
        return tuple(out)

    def grid_rows(self, sp, max_den):
        rows: set[tuple[Fraction, ...]] = set()
        for den in range(1, max_den + 1):
            for comp in _compositions(den, sp.card):
                rows.add(tuple(Fraction(k, den) for k in comp))
        return sorted(rows)

    def sample_row(self, sp, rng):
        den = rng.randint(1, 6)
        counts = [0] * sp.card
        for _ in range(den):
            counts[rng.randrange(sp.card)] += 1
        return tuple(Fraction(k, den) for k in counts)

    def render(self, sp, value):
        return " ".join(str(p) for p in value)


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# powerset


class PowersetMonad(Monad):
    """Nonempty sets of possible outcomes; composition is relational image."""

    tag = "powerset"

    def validate(self, sp, value):
        if not isinstance(value, frozenset) or not value:
            raise MonadValueError("powerset row must be a nonempty frozenset")
        for i in value:
            if not isinstance(i, int) or not 0 <= i < sp.card:
                raise MonadValueError(f"powerset member {i!r} not an index of {sp.label}")

    def unit(self, sp, index):
        return frozenset({index})

    def pure(self, atom):
        return frozenset({atom})

    def pushforward(self, fn, s):
        return frozenset(fn(atom) for atom in s)

    def flatten(self, s):
        out: set = set()
        for inner in s:
            out |= inner
        return frozenset(out)

    def pair_structs(self, s, t):
        return frozenset((a, b) for a in s for b in t)

    def row_to_struct(self, sp, value):
        return value

    def struct_to_row(self, sp, s):
        return frozenset(s)

    def enumerate_rows(self, sp):
        out = []
        for bits in range(1, 1 << sp.card):
            out.append(frozenset(i for i in sp.indices() if bits >> i & 1))
        return out

    def grid_rows(self, sp, max_den):
        return self.enumerate_rows(sp)

    def sample_row(self, sp, rng):
        bits = rng.randrange(1, 1 << sp.card)
        return frozenset(i for i in sp.indices() if bits >> i & 1)

    def render(self, sp, value):
        return "{" + ",".join(sp.elements[i] for i in sorted(value)) + "}"


# ---------------------------------------------------------------------------
# fuzzy (sup-min and sup-product)


def fuzzy_row(entries: Iterable) -> tuple[Fraction, ...]:
    """Convenience constructor for normalised fuzzy rows."""
    return tuple(as_fraction(e) for e in entries)


class FuzzyMonad(Monad):
    """Normalised fuzzy sets: grade vectors in [0,1] with max exactly 1.

    The two variants differ only in how grades combine along a composite or a
    pair: ``fuzzy-min`` takes the minimum, ``fuzzy-prod`` the product; both
    resolve multiple routes to the same atom by the supremum, so the merge rule
    for structures is max.  Structures are frozensets of (atom, grade) pairs
    with positive grades and max grade exactly 1.
    """

    def __init__(self, tag: str, combine: Callable[[Fraction, Fraction], Fraction]):
        self.tag = tag
        self.combine = combine

    def validate(self, sp, value):
        if not isinstance(value, tuple) or len(value) != sp.card:
            raise MonadValueError(f"fuzzy row must be a {sp.card}-tuple")
        top = ZERO
        for g in value:
            if not isinstance(g, Fraction):
                raise MonadValueError(f"fuzzy grade {g!r} is not a Fraction")
            if not ZERO <= g <= ONE:
                raise MonadValueError(f"fuzzy grade {g} outside [0, 1]")
            top = max(top, g)
        if top != ONE:
            raise MonadValueError(f"fuzzy row not normed: maximum grade is {top}, expected 1")

    def unit(self, sp, index):
        return tuple(ONE if i == index else ZERO for i in sp.indices())

    @staticmethod
    def _merge(pairs: Iterable[tuple[Hashable, Fraction]]) -> Struct:
        acc: dict[Hashable, Fraction] = {}
        for atom, g in pairs:
            if g and g > acc.get(atom, ZERO):
                acc[atom] = g
        return frozenset(acc.items())

    def pure(self, atom):
        return frozenset({(atom, ONE)})

    def pushforward(self, fn, s):
        return self._merge((fn(atom), g) for atom, g in s)

    def flatten(self, s):
        return self._merge(
            (atom, self.combine(w, g)) for inner, w in s for atom, g in inner
        )

    def pair_structs(self, s, t):
        return self._merge(
            ((a, b), self.combine(w, v)) for a, w in s for b, v in t
        )

    def row_to_struct(self, sp, value):
        return frozenset((i, g) for i, g in enumerate(value) if g)

    def struct_to_row(self, sp, s):
        out = [ZERO] * sp.card
        for i, g in s:
            out[i] = max(out[i], g)
        return tuple(out)

    def grid_rows(self, sp, max_den):
        grades = sorted({Fraction(k, d) for d in range(1, max_den + 1) for k in range(d + 1)})
        rows = []
        for combo in _cartesian(grades, repeat=sp.card):
            if max(combo) == ONE:
                rows.append(tuple(combo))
        return rows

    def sample_row(self, sp, rng):
        den = rng.randint(1, 6)
        row = [Fraction(rng.randint(0, den), den) for _ in sp.indices()]
        row[rng.randrange(sp.card)] = ONE
        return tuple(row)

    def render(self, sp, value):
        return " ".join(str(g) for g in value)


IDENTITY = IdentityMonad()
PROBABILITY = ProbabilityMonad()
POWERSET = PowersetMonad()
FUZZY_MIN = FuzzyMonad("fuzzy-min", min)
FUZZY_PROD = FuzzyMonad("fuzzy-prod", lambda a, b: a * b)

MONADS: dict[str, Monad] = {
    m.tag: m for m in (IDENTITY, PROBABILITY, POWERSET, FUZZY_MIN, FUZZY_PROD)
}

#: Category-level aliases accepted by files, the CLI and the service.
CATEGORY_ALIASES: dict[str, str] = {
    "set": "identity",
    "identity": "identity",
    "stochastic": "probability",
    "probability": "probability",
    "multivalued": "powerset",
    "powerset": "powerset",
    "fuzzy-min": "fuzzy-min",
    "fuzzy-prod": "fuzzy-prod",
}


def get_monad(tag: str) -> Monad:
    """Resolve a category tag or alias (e.g. ``stochastic``) to its monad."""
    key = CATEGORY_ALIASES.get(tag, tag)
    try:
        return MONADS[key]
    except KeyError:
        raise MonadValueError(
            f"unknown category {tag!r}; expected one of "
            + ", ".join(sorted(CATEGORY_ALIASES))
        ) from None
