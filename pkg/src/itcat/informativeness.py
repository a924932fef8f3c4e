"""Accuracy relations, the informativeness preorder, and class structures.

*Accuracy* compares two arrows of identical signature row by row: the
``equality`` relation is exact equality, the ``pointwise`` relation is
set containment for the powerset monad and grade-wise ≤ for the fuzzy monads
(both read "tighter = more accurate").  For probability rows componentwise ≤
between unit-sum vectors collapses to equality; the relation is still
evaluated literally.

*Informativeness*: ``a`` is at least as informative as ``b`` (same source)
when some post-processing ``c`` makes ``c . a`` at least as accurate as ``b``.
The witness search is exhaustive for the identity and powerset monads at
tractable sizes (bitmask-accelerated for powerset) and otherwise runs over a
declared finite candidate pool — lifted deterministic maps, the arrows the
caller supplies, their depth-2 composites, and rational-grid arrows — in which
case a negative verdict only means "no witness within the search".

*Classes*: in the identity-monad category, informativeness classes of arrows
out of D are exactly the partitions of D ordered by refinement, with product =
common refinement; :func:`partition_monoid` builds the full ordered monoid.
For the powerset monad the classes are coverings of D; :func:`covering_of` and
:func:`covering_le` implement the weak (subset-accuracy) and strong
(equality-accuracy) characterizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice, product as _cartesian

from . import kleisli as K
from .monads import IDENTITY, POWERSET, Monad, MonadValueError
from .spaces import FiniteSpace, SpaceError, all_maps

EQUALITY = "equality"
POINTWISE = "pointwise"

#: Largest exhaustive powerset witness search: (2^|dst_b| - 1) ** |dst_a|.
POWERSET_EXHAUSTIVE_CAP = 600_000
#: Candidate-pool bound for the non-exhaustive search.
DEFAULT_POOL_CAP = 20_000


def row_le(monad: Monad, p, q) -> bool:
    """p at least as accurate as q, one row at a time."""
    if monad.tag == "powerset":
        return p <= q
    if monad.tag in ("probability", "fuzzy-min", "fuzzy-prod"):
        return all(x <= y for x, y in zip(p, q))
    return p == q


def accuracy_le(accuracy: str, a: K.KleisliArrow, b: K.KleisliArrow) -> bool:
    """a at least as accurate as b under the named relation."""
    if a.monad is not b.monad or a.src != b.src or a.dst != b.dst:
        raise SpaceError("accuracy comparison needs identical signatures")
    if accuracy == EQUALITY:
        return a.rows == b.rows
    if accuracy == POINTWISE:
        return all(row_le(a.monad, p, q) for p, q in zip(a.rows, b.rows))
    raise ValueError(f"unknown accuracy relation {accuracy!r}")


@dataclass(frozen=True)
class WitnessSearch:
    """Outcome of one directed informativeness query a ⪰ b."""

    verdict: bool
    witness: K.KleisliArrow | None
    exhaustive: bool
    tested: int

    @property
    def label(self) -> str:
        if self.verdict:
            return "YES"
        return "NO" if self.exhaustive else "NO-WITHIN-SEARCH"


# ---------------------------------------------------------------------------
# powerset fast path


def powerset_masks(a: K.KleisliArrow) -> tuple[int, ...]:
    """Rows of a powerset arrow as bitmasks over the target indices."""
    return tuple(sum(1 << i for i in row) for row in a.rows)


def _image_table(c_rows: tuple[int, ...], mid_card: int) -> list[int]:
    """img[mask] = union of c_rows[y] over the bits y of mask."""
    img = [0] * (1 << mid_card)
    for m in range(1, 1 << mid_card):
        low = m & -m
        img[m] = img[m ^ low] | c_rows[low.bit_length() - 1]
    return img


def mask_compose(c_rows: tuple[int, ...], a_masks: tuple[int, ...], mid_card: int):
    """Bitmask Kleisli composition (c . a) for powerset arrows."""
    img = _image_table(c_rows, mid_card)
    return tuple(img[m] for m in a_masks)


def _masks_to_arrow(masks, src: FiniteSpace, dst: FiniteSpace) -> K.KleisliArrow:
    rows = tuple(
        frozenset(i for i in dst.indices() if m >> i & 1) for m in masks
    )
    return K.KleisliArrow(POWERSET, src, dst, rows)


def _powerset_search(accuracy: str, a, b) -> WitnessSearch | None:
    na, nb = a.dst.card, b.dst.card
    space_size = ((1 << nb) - 1) ** na
    if space_size > POWERSET_EXHAUSTIVE_CAP:
        return None
    a_masks = powerset_masks(a)
    b_masks = powerset_masks(b)
    pointwise = accuracy == POINTWISE
    tested = 0
    for c_rows in _cartesian(range(1, 1 << nb), repeat=na):
        tested += 1
        comp = mask_compose(c_rows, a_masks, na)
        if pointwise:
            hit = all(x & ~y == 0 for x, y in zip(comp, b_masks))
        else:
            hit = comp == b_masks
        if hit:
            return WitnessSearch(
                True, _masks_to_arrow(c_rows, a.dst, b.dst), True, tested
            )
    return WitnessSearch(False, None, True, tested)


# ---------------------------------------------------------------------------
# candidate pools and the general search


def candidate_arrows(
    monad: Monad,
    src: FiniteSpace,
    dst: FiniteSpace,
    given: tuple[K.KleisliArrow, ...] = (),
    max_den: int = 4,
    cap: int = DEFAULT_POOL_CAP,
) -> tuple[list[K.KleisliArrow], bool]:
    """(candidates src->dst, exhaustive flag).

    Finite monads: the full hom-set when it fits under ``cap``.  Otherwise:
    lifted deterministic maps, signature-matching given arrows, depth-2
    composites of given arrows, and arrows assembled from rational-grid rows
    with denominators ≤ ``max_den``, deduplicated, truncated to ``cap``.
    """
    finite = monad.enumerate_rows(dst)
    if finite is not None and len(finite) ** src.card <= cap:
        return list(K.enumerate_arrows(monad, src, dst)), True

    pool: dict[K.KleisliArrow, None] = {}

    def add(c: K.KleisliArrow) -> None:
        if c.monad is monad and c.src == src and c.dst == dst and len(pool) < cap:
            pool.setdefault(c, None)

    for f in all_maps(src, dst):
        add(K.lift(monad, f))
    relevant = [g for g in given if g.monad is monad]
    for g in relevant:
        add(g)
    for g in relevant:
        for h in relevant:
            if g.dst == h.src:
                add(K.compose(h, g))
    grid = monad.grid_rows(dst, max_den)
    if grid is not None:
        for combo in islice(_cartesian(grid, repeat=src.card), cap):
            add(K.KleisliArrow(monad, src, dst, combo))
    return list(pool), False


def more_informative(
    accuracy: str,
    a: K.KleisliArrow,
    b: K.KleisliArrow,
    given: tuple[K.KleisliArrow, ...] = (),
    max_den: int = 4,
    cap: int = DEFAULT_POOL_CAP,
) -> WitnessSearch:
    """Search for c with c . a at least as accurate as b."""
    if a.monad is not b.monad:
        raise MonadValueError("informativeness compares arrows of one category")
    if a.src != b.src:
        raise SpaceError("informativeness needs a common source")

    if a.monad is POWERSET:
        fast = _powerset_search(accuracy, a, b)
        if fast is not None:
            return fast

    candidates, exhaustive = candidate_arrows(
        a.monad, a.dst, b.dst, given=given + (a, b), max_den=max_den, cap=cap
    )
    tested = 0
    for c in candidates:
        tested += 1
        if accuracy_le(accuracy, K.compose(c, a), b):
            return WitnessSearch(True, c, exhaustive, tested)
    return WitnessSearch(False, None, exhaustive, tested)


@dataclass(frozen=True)
class Comparison:
    """Two-way informativeness comparison."""

    verdict: str
    forward: WitnessSearch
    backward: WitnessSearch


def compare(
    accuracy: str,
    a: K.KleisliArrow,
    b: K.KleisliArrow,
    given: tuple[K.KleisliArrow, ...] = (),
    max_den: int = 4,
    cap: int = DEFAULT_POOL_CAP,
) -> Comparison:
    """Order two arrows by running the witness search in both directions.

    MORE/LESS/EQUIVALENT verdicts are definitive; INCOMPARABLE is definitive
    only when both searches were exhaustive, and is otherwise reported as
    INCOMPARABLE-WITHIN-SEARCH.
    """
    fwd = more_informative(accuracy, a, b, given, max_den, cap)
    bwd = more_informative(accuracy, b, a, given, max_den, cap)
    if fwd.verdict and bwd.verdict:
        verdict = "EQUIVALENT"
    elif fwd.verdict:
        verdict = "MORE"
    elif bwd.verdict:
        verdict = "LESS"
    elif fwd.exhaustive and bwd.exhaustive:
        verdict = "INCOMPARABLE"
    else:
        verdict = "INCOMPARABLE-WITHIN-SEARCH"
    return Comparison(verdict, fwd, bwd)


# ---------------------------------------------------------------------------
# identity-monad classes: partitions under refinement


Partition = tuple[tuple[int, ...], ...]


def canonical_partition(blocks) -> Partition:
    """Sort blocks and members, dropping empties, for comparable partitions."""
    cleaned = sorted(tuple(sorted(b)) for b in blocks if b)
    return tuple(cleaned)


def all_partitions(n: int) -> list[Partition]:
    """Every set partition of {0..n-1}, canonically ordered."""
    parts: list[list[list[int]]] = [[]]
    for x in range(n):
        grown: list[list[list[int]]] = []
        for p in parts:
            for i in range(len(p)):
                grown.append([b + [x] if i == j else list(b) for j, b in enumerate(p)])
            grown.append([list(b) for b in p] + [[x]])
        parts = grown
    return sorted(canonical_partition(p) for p in parts)


def refines(p: Partition, q: Partition) -> bool:
    """p finer than q: every p-block sits inside a q-block."""
    lookup = {}
    for bi, block in enumerate(q):
        for x in block:
            lookup[x] = bi
    return all(len({lookup[x] for x in block}) == 1 for block in p)


def common_refinement(p: Partition, q: Partition) -> Partition:
    """The coarsest partition refining both: all nonempty block intersections."""
    blocks = []
    for bp in p:
        for bq in q:
            inter = sorted(set(bp) & set(bq))
            if inter:
                blocks.append(tuple(inter))
    return canonical_partition(blocks)


def partition_of_arrow(a: K.KleisliArrow) -> Partition:
    """Kernel partition of an identity-monad arrow: x ~ y iff same image."""
    if a.monad is not IDENTITY:
        raise MonadValueError("kernel partitions are for the identity monad")
    groups: dict[int, list[int]] = {}
    for x in a.src.indices():
        groups.setdefault(a.rows[x], []).append(x)
    return canonical_partition(groups.values())


@dataclass(frozen=True)
class InfoClassMonoid:
    """Informativeness classes out of a fixed source, with order and product.

    ``ge[i][j]`` says class i is at least as informative as class j;
    ``product[i][j]`` indexes the class of the product.  ``zero`` is the class
    of the terminal arrow (neutral element, bottom), ``one`` the class of the
    identity (absorbing element, top).
    """

    carrier: tuple[Partition, ...]
    ge: tuple[tuple[bool, ...], ...]
    product: tuple[tuple[int, ...], ...]
    zero: int
    one: int

    def index_of(self, p: Partition) -> int:
        return self.carrier.index(p)


def partition_monoid(card: int) -> InfoClassMonoid:
    """The full class monoid of deterministic arrows out of a ``card``-point
    source: kernel partitions ordered by refinement, multiplied by common
    refinement."""
    if card > 6:
        raise ValueError("partition monoid limited to cardinality 6")
    carrier = tuple(all_partitions(card))
    ge = tuple(
        tuple(refines(p, q) for q in carrier) for p in carrier
    )
    product = tuple(
        tuple(carrier.index(common_refinement(p, q)) for q in carrier)
        for p in carrier
    )
    zero = carrier.index(canonical_partition([range(card)]))
    one = carrier.index(canonical_partition([[x] for x in range(card)]))
    return InfoClassMonoid(carrier, ge, product, zero, one)


# ---------------------------------------------------------------------------
# powerset classes: coverings


@dataclass(frozen=True)
class Covering:
    """Informativeness class of a powerset arrow out of a ground set.

    ``weak`` mode keeps the maximal preimage sets (an antichain; everything
    below is implicit).  ``strong`` mode keeps the explicit closed family:
    every union of preimage sets that still fits inside some preimage set.
    """

    ground: int
    mode: str
    family: frozenset[frozenset[int]]

    def sorted_family(self) -> list[tuple[int, ...]]:
        return sorted((tuple(sorted(s)) for s in self.family), key=lambda t: (len(t), t))


WEAK = "weak"
STRONG = "strong"


def _preimage_family(a: K.KleisliArrow) -> list[frozenset[int]]:
    gens = []
    for y in a.dst.indices():
        pre = frozenset(x for x in a.src.indices() if y in a.rows[x])
        if pre:
            gens.append(pre)
    return gens


def covering_of(a: K.KleisliArrow, mode: str) -> Covering:
    """The covering of ``a.src`` by target-element preimages, normalised per mode.

    Two powerset arrows are informativeness-equivalent exactly when their
    coverings coincide, and ``covering_le`` decides the order; see Covering
    for what each mode stores.
    """
    if a.monad is not POWERSET:
        raise MonadValueError("coverings characterize powerset arrows")
    gens = set(_preimage_family(a))
    if mode == WEAK:
        family = {g for g in gens if not any(g < h for h in gens)}
    elif mode == STRONG:
        family = set()
        for bits in range(1, 1 << a.src.card):
            s = frozenset(x for x in a.src.indices() if bits >> x & 1)
            inside = [g for g in gens if g <= s]
            if inside and frozenset().union(*inside) == s and any(
                s <= m for m in gens
            ):
                family.add(s)
        assert gens <= family
    else:
        raise ValueError(f"unknown covering mode {mode!r}")
    return Covering(a.src.card, mode, frozenset(family))


def covering_le(p1: Covering, p2: Covering) -> bool:
    """p1's arrows at least as informative as p2's."""
    if p1.mode != p2.mode or p1.ground != p2.ground:
        raise ValueError("coverings must share ground set and mode")
    if p1.mode == WEAK:
        return all(any(a <= b for b in p2.family) for a in p1.family)
    clause_contain = all(any(a <= b for b in p2.family) for a in p1.family)
    if not clause_contain:
        return False
    for b in p2.family:
        parts = [a for a in p1.family if a <= b]
        if not parts or frozenset().union(*parts) != b:
            return False
    return True
