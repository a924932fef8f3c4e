"""Law checking for the uncertainty monads and their Kleisli categories.

Three batteries, each returning one report per law:

* monad laws — the multiplication square and the two unit triangles;
* pairing coherence — the six compatibility conditions between the
  independent-pairing operation and projections, swap, associativity,
  multiplication and unit;
* category axioms — product extraction, interchange, commutativity and
  associativity of the product up to the lifted isomorphisms, terminality,
  naturality of the projections and swap against arbitrary arrows, and the
  copy-map naturality check.

Copy naturality deliberately fails outside the identity monad (noisy arrows
correlate the two copies; independent pairing cannot), so every report carries
an ``expected_pass`` flag and the aggregate verdict compares outcome against
expectation rather than demanding a bare pass.

Everything is exact: a sampled instance that passes is a proof for that
instance.  Sampling is driven by a single seeded ``random.Random`` so a report
is reproducible from (category, max_card, samples, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import kleisli as K
from .monads import IDENTITY, Monad, ONE
from .spaces import (
    FiniteSpace,
    assoc_map,
    copy_map,
    det_product,
    identity_map,
    left_unit_map,
    product_space,
    proj1,
    proj2,
    right_unit_map,
    space,
    swap_map,
    terminal_map,
)

#: Enumeration cap: structure universes at or below this size are enumerated
#: exhaustively, larger ones are sampled.
EXHAUSTIVE_CAP = 160


@dataclass(frozen=True)
class LawReport:
    """Outcome of one law: verdict, expectation, workload, and evidence."""

    name: str
    passed: bool
    expected_pass: bool
    instances: int
    strategy: str
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.passed == self.expected_pass


@dataclass(frozen=True)
class CategorySuite:
    """All law reports for one category run."""

    category: str
    max_card: int
    samples: int
    seed: int
    reports: tuple[LawReport, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)


class _Checker:
    """Accumulates instances for one law and records the first failure."""

    def __init__(self, name: str, expected_pass: bool = True):
        self.name = name
        self.expected_pass = expected_pass
        self.instances = 0
        self.failure: str | None = None

    def check(self, lhs: Any, rhs: Any, describe: Callable[[], str]) -> None:
        self.instances += 1
        if self.failure is None and lhs != rhs:
            self.failure = f"{describe()}\n  left:  {_show(lhs)}\n  right: {_show(rhs)}"

    def report(self, strategy: str) -> LawReport:
        return LawReport(
            name=self.name,
            passed=self.failure is None,
            expected_pass=self.expected_pass,
            instances=self.instances,
            strategy=strategy,
            counterexample=self.failure,
        )


def _show(value: Any) -> str:
    if isinstance(value, K.KleisliArrow):
        return "; ".join(value.monad.render(value.dst, r) for r in value.rows)
    if isinstance(value, tuple) and all(isinstance(v, Fraction) for v in value):
        return " ".join(str(v) for v in value)
    if isinstance(value, frozenset):
        return "{" + ", ".join(sorted(_show(v) for v in value)) + "}"
    return repr(value)


# ---------------------------------------------------------------------------
# value universes


def row_universe(monad: Monad, sp: FiniteSpace, rng: random.Random, samples: int):
    """(rows, exhaustive): all rows for finite monads, else a seeded sample.

    The sampled plan is fixed: every point mass, the uniform row, then
    ``samples`` seeded rational-grid rows (duplicates kept — each draw is one
    checked instance).
    """
    enumerated = monad.enumerate_rows(sp)
    if enumerated is not None:
        return enumerated, True
    rows = [monad.unit(sp, x) for x in sp.indices()]
    rows.append(_uniform_row(monad, sp))
    rows.extend(monad.sample_row(sp, rng) for _ in range(samples))
    return rows, False


def _uniform_row(monad: Monad, sp: FiniteSpace):
    if monad.tag == "probability":
        return tuple(Fraction(1, sp.card) for _ in sp.indices())
    # fuzzy: total ignorance is "everything fully possible"
    return tuple(ONE for _ in sp.indices())


def _sample_struct(monad: Monad, atoms: Sequence, rng: random.Random):
    """One random finite-support structure over the given atoms."""
    if monad is IDENTITY:
        return atoms[rng.randrange(len(atoms))]
    k = rng.randint(1, min(3, len(atoms)))
    support = rng.sample(range(len(atoms)), k)
    if monad.tag == "powerset":
        return frozenset(atoms[i] for i in support)
    if monad.tag == "probability":
        den = k + rng.randint(0, 5)
        counts = [1] * k
        for _ in range(den - k):
            counts[rng.randrange(k)] += 1
        return frozenset(
            (atoms[i], Fraction(c, den)) for i, c in zip(support, counts)
        )
    # fuzzy: positive grades with max exactly 1
    den = rng.randint(1, 6)
    grades = [Fraction(rng.randint(1, den), den) for _ in range(k)]
    grades[rng.randrange(k)] = ONE
    return frozenset(zip((atoms[i] for i in support), grades))


def struct_universe(monad: Monad, atoms: Sequence, rng: random.Random, samples: int):
    """(structures over atoms, exhaustive): exhaustive only when affordable."""
    if monad is IDENTITY:
        return list(atoms), True
    if monad.tag == "powerset" and (1 << len(atoms)) - 1 <= EXHAUSTIVE_CAP:
        out = []
        for bits in range(1, 1 << len(atoms)):
            out.append(frozenset(a for i, a in enumerate(atoms) if bits >> i & 1))
        return out, True
    return [_sample_struct(monad, atoms, rng) for _ in range(samples)], False


def _strategy(exhaustive: bool, seed: int, count: int) -> str:
    return "exhaustive" if exhaustive else f"sampled(seed={seed},count={count})"


# ---------------------------------------------------------------------------
# monad laws


def check_monad_laws(
    monad: Monad, max_card: int, samples: int = 64, seed: int = 0
) -> list[LawReport]:
    """The multiplication square and both unit triangles, order by order."""
    rng = random.Random(seed)
    square = _Checker("join-associativity")
    tri_inner = _Checker("join-unit-inner")
    tri_outer = _Checker("join-unit-outer")
    all_exhaustive = True

    for card in range(1, max_card + 1):
        sp = space(f"S{card}", card)
        rows, rows_exh = row_universe(monad, sp, rng, samples)

        for v in rows:
            spread = monad.pushforward(
                lambda i: monad.unit(sp, i), monad.row_to_struct(sp, v)
            )
            tri_inner.check(
                monad.join_rows(sp, spread),
                v,
                lambda v=v: f"card {card}, value {monad.render(sp, v)}",
            )
            tri_outer.check(
                monad.join_rows(sp, monad.pure(v)),
                v,
                lambda v=v: f"card {card}, value {monad.render(sp, v)}",
            )

        seconds, sec_exh = struct_universe(monad, rows, rng, samples)
        thirds, third_exh = struct_universe(monad, seconds, rng, samples)
        all_exhaustive = all_exhaustive and rows_exh and sec_exh and third_exh
        for t in thirds:
            inner_first = monad.pushforward(lambda s2: monad.join_rows(sp, s2), t)
            outer_first = monad.flatten(t)
            square.check(
                monad.join_rows(sp, inner_first),
                monad.join_rows(sp, outer_first),
                lambda t=t: f"card {card}, third-order value {_show(t)}",
            )

    checkers = [square, tri_inner, tri_outer]
    return [
        c.report(_strategy(all_exhaustive, seed, c.instances)) for c in checkers
    ]


# ---------------------------------------------------------------------------
# pairing coherence (six conditions)


def check_gamma_coherence(
    monad: Monad, max_card: int, samples: int = 64, seed: int = 0
) -> list[LawReport]:
    """The six compatibility conditions for the independent pairing."""
    rng = random.Random(seed)
    c_proj1 = _Checker("pair-proj1")
    c_proj2 = _Checker("pair-proj2")
    c_swap = _Checker("pair-swap")
    c_assoc = _Checker("pair-assoc")
    c_join = _Checker("pair-join")
    c_unit = _Checker("pair-unit")
    all_exhaustive = True

    spaces = {c: space(f"S{c}", c) for c in range(1, max_card + 1)}

    for ca, a in spaces.items():
        for cb, b in spaces.items():
            prod = product_space(a, b)
            rows_a, exh_a = row_universe(monad, a, rng, samples)
            rows_b, exh_b = row_universe(monad, b, rng, samples)
            exhaustive_pair = exh_a and exh_b
            all_exhaustive = all_exhaustive and exhaustive_pair
            pairs = (
                [(p, q) for p in rows_a for q in rows_b]
                if exhaustive_pair
                else list(zip(rows_a, _reshuffled(rows_b, rng)))
            )

            pr1 = proj1(a, b)
            pr2 = proj2(a, b)
            sw = swap_map(a, b)
            prod_ba = product_space(b, a)
            for p, q in pairs:
                joint = monad.pair_rows(a, p, b, q, prod)
                label = lambda p=p, q=q: (
                    f"p = {monad.render(a, p)} over card {ca}; "
                    f"q = {monad.render(b, q)} over card {cb}"
                )
                c_proj1.check(monad.fmap(pr1, joint), p, label)
                c_proj2.check(monad.fmap(pr2, joint), q, label)
                c_swap.check(
                    monad.fmap(sw, joint), monad.pair_rows(b, q, a, p, prod_ba), label
                )

            for x in a.indices():
                for y in b.indices():
                    c_unit.check(
                        monad.pair_rows(a, monad.unit(a, x), b, monad.unit(b, y), prod),
                        monad.unit(prod, prod.pair_index(x, y)),
                        lambda x=x, y=y: f"point masses at ({x},{y}) in {ca}x{cb}",
                    )

            seconds_a, sexh_a = struct_universe(monad, rows_a, rng, samples)
            seconds_b, sexh_b = struct_universe(monad, rows_b, rng, samples)
            all_exhaustive = all_exhaustive and sexh_a and sexh_b
            second_pairs = (
                [(P, Q) for P in seconds_a for Q in seconds_b]
                if sexh_a and sexh_b and len(seconds_a) * len(seconds_b) <= EXHAUSTIVE_CAP
                else list(zip(seconds_a, _reshuffled(seconds_b, rng)))
            )
            if not (sexh_a and sexh_b and len(seconds_a) * len(seconds_b) <= EXHAUSTIVE_CAP):
                all_exhaustive = False
            for P, Q in second_pairs:
                paired = monad.pair_structs(P, Q)
                mixed_then_paired = monad.pair_rows(
                    a, monad.join_rows(a, P), b, monad.join_rows(b, Q), prod
                )
                paired_then_mixed = monad.join_rows(
                    prod,
                    monad.pushforward(
                        lambda pq: monad.pair_rows(a, pq[0], b, pq[1], prod), paired
                    ),
                )
                c_join.check(
                    paired_then_mixed,
                    mixed_then_paired,
                    lambda P=P, Q=Q: f"second-order P = {_show(P)}; Q = {_show(Q)}",
                )

    # associativity needs triples of spaces
    for ca, a in spaces.items():
        for cb, b in spaces.items():
            for cc, c in spaces.items():
                ab = product_space(a, b)
                bc = product_space(b, c)
                ab_c = product_space(ab, c)
                al = assoc_map(a, b, c)
                rows_a, exh_a = row_universe(monad, a, rng, samples)
                rows_b, exh_b = row_universe(monad, b, rng, samples)
                rows_c, exh_c = row_universe(monad, c, rng, samples)
                if exh_a and exh_b and exh_c and (
                    len(rows_a) * len(rows_b) * len(rows_c) <= EXHAUSTIVE_CAP * 3
                ):
                    triples = [
                        (p, q, r) for p in rows_a for q in rows_b for r in rows_c
                    ]
                else:
                    all_exhaustive = False
                    triples = list(
                        zip(rows_a, _reshuffled(rows_b, rng), _reshuffled(rows_c, rng))
                    )
                for p, q, r in triples:
                    lhs = monad.fmap(
                        al,
                        monad.pair_rows(
                            ab, monad.pair_rows(a, p, b, q, ab), c, r, ab_c
                        ),
                    )
                    rhs = monad.pair_rows(
                        a, p, bc, monad.pair_rows(b, q, c, r, bc), product_space(a, bc)
                    )
                    c_assoc.check(
                        lhs,
                        rhs,
                        lambda p=p, q=q, r=r: (
                            f"p = {monad.render(a, p)}; q = {monad.render(b, q)}; "
                            f"r = {monad.render(c, r)} over cards {ca},{cb},{cc}"
                        ),
                    )

    reports = [
        c.report(_strategy(all_exhaustive, seed, c.instances))
        for c in (c_proj1, c_proj2, c_swap, c_assoc, c_join)
    ]
    # The unit condition ranges over point masses only, so it is checked on
    # every instance there is, whatever the row-sampling strategy was.
    reports.append(c_unit.report(_strategy(True, seed, c_unit.instances)))
    return reports


def _reshuffled(items: list, rng: random.Random) -> list:
    out = list(items)
    rng.shuffle(out)
    return out


# ---------------------------------------------------------------------------
# category axioms


def _arrow_universe(
    monad: Monad,
    src: FiniteSpace,
    dst: FiniteSpace,
    rng: random.Random,
    count: int,
):
    """(arrows, exhaustive): full hom-set when small, else a seeded sample.

    Sampled universes always contain every lifted deterministic map plus the
    totally uninformative uniform arrow, so noisy behaviour is represented.
    """
    finite = monad.enumerate_rows(dst)
    if finite is not None and len(finite) ** src.card <= EXHAUSTIVE_CAP:
        return list(K.enumerate_arrows(monad, src, dst)), True
    arrows: list[K.KleisliArrow] = []
    if finite is None:
        from .spaces import all_maps

        arrows.extend(K.lift(monad, f) for f in all_maps(src, dst))
        arrows.append(
            K.KleisliArrow(
                monad, src, dst, tuple(_uniform_row(monad, dst) for _ in src.indices())
            )
        )
    while len(arrows) < count:
        arrows.append(_random_arrow(monad, src, dst, rng))
    return arrows, False


def check_it_axioms(
    monad: Monad, max_card: int, samples: int = 64, seed: int = 0
) -> list[LawReport]:
    """Product extraction/commutativity/associativity, interchange,
    terminality, structural isomorphisms, naturality of projections and swap,
    and the copy-naturality probe (expected to fail off the identity monad)."""
    rng = random.Random(seed)
    per_sig = max(4, min(9, samples // 8))
    c_extract1 = _Checker("product-proj1")
    c_extract2 = _Checker("product-proj2")
    c_commute = _Checker("product-swap")
    c_assoc = _Checker("product-assoc")
    c_inter = _Checker("tensor-interchange")
    c_tensor = _Checker("tensor-definition")
    c_terminal = _Checker("terminal-absorb")
    c_isos = _Checker("structural-isos")
    c_nat1 = _Checker("proj1-naturality")
    c_nat2 = _Checker("proj2-naturality")
    c_nat_swap = _Checker("swap-naturality")
    c_copy = _Checker("copy-naturality", expected_pass=monad is IDENTITY)
    all_exhaustive = True

    spaces = {c: space(f"S{c}", c) for c in range(1, max_card + 1)}

    def sample_arrows(src, dst, limit: int = 9):
        nonlocal all_exhaustive
        arrows, exh = _arrow_universe(monad, src, dst, rng, per_sig)
        if len(arrows) > limit:
            arrows = rng.sample(arrows, limit)
            exh = False
        if not exh:
            all_exhaustive = False
        return arrows

    for cd, d_space in spaces.items():
        for ca, a_space in spaces.items():
            for cb, b_space in spaces.items():
                fs = sample_arrows(d_space, a_space)
                gs = sample_arrows(d_space, b_space)
                pr1 = K.lift(monad, proj1(a_space, b_space))
                pr2 = K.lift(monad, proj2(a_space, b_space))
                sw = K.lift(monad, swap_map(a_space, b_space))
                for a in fs:
                    for b in gs:
                        ab = K.product(a, b)
                        label = lambda a=a, b=b: f"a = [{_show(a)}], b = [{_show(b)}]"
                        c_extract1.check(K.compose(pr1, ab), a, label)
                        c_extract2.check(K.compose(pr2, ab), b, label)
                        c_commute.check(K.compose(sw, ab), K.product(b, a), label)
                        c_tensor.check(
                            K.tensor(a, b), K.tensor_via_projections(a, b), label
                        )

    # associativity of the product, on one representative space triple
    for ca, a_space in spaces.items():
        d_space = spaces[max(spaces)]
        fs = sample_arrows(d_space, a_space)
        gs = sample_arrows(d_space, spaces[1])
        hs = sample_arrows(d_space, spaces[min(2, max_card)])
        for a in fs[:4]:
            for b in gs[:4]:
                for c in hs[:4]:
                    al = K.lift(monad, assoc_map(a.dst, b.dst, c.dst))
                    c_assoc.check(
                        K.compose(al, K.product(K.product(a, b), c)),
                        K.product(a, K.product(b, c)),
                        lambda a=a, b=b, c=c: (
                            f"a = [{_show(a)}], b = [{_show(b)}], c = [{_show(c)}]"
                        ),
                    )

    # interchange: (a tensor b) . (c * d) = (a.c) * (b.d)
    for _ in range(samples // 2):
        cd = rng.randint(1, max_card)
        ca = rng.randint(1, max_card)
        cb = rng.randint(1, max_card)
        ce = rng.randint(1, max_card)
        cf = rng.randint(1, max_card)
        d_space, a_space, b_space = spaces[cd], spaces[ca], spaces[cb]
        e_space, f_space = spaces[ce], spaces[cf]
        c = _random_arrow(monad, d_space, a_space, rng)
        d = _random_arrow(monad, d_space, b_space, rng)
        a = _random_arrow(monad, a_space, e_space, rng)
        b = _random_arrow(monad, b_space, f_space, rng)
        all_exhaustive = False
        c_inter.check(
            K.compose(K.tensor(a, b), K.product(c, d)),
            K.product(K.compose(a, c), K.compose(b, d)),
            lambda: "sampled interchange instance",
        )

    # terminality, structural isos, naturality, copy probe
    for ca, a_space in spaces.items():
        for cb, b_space in spaces.items():
            z_dst = K.lift(monad, terminal_map(b_space))
            z_src = K.lift(monad, terminal_map(a_space))
            for a in sample_arrows(a_space, b_space):
                c_terminal.check(
                    K.compose(z_dst, a), z_src, lambda a=a: f"a = [{_show(a)}]"
                )

            # naturality of projections and swap against pairs of arrows
            fs = sample_arrows(a_space, b_space)
            gs = sample_arrows(spaces[1], spaces[min(2, max_card)])
            for a in fs[:4]:
                for b in gs[:4]:
                    ten = K.tensor(a, b)
                    label = lambda a=a, b=b: f"a = [{_show(a)}], b = [{_show(b)}]"
                    c_nat1.check(
                        K.compose(a, K.lift(monad, proj1(a.src, b.src))),
                        K.compose(K.lift(monad, proj1(a.dst, b.dst)), ten),
                        label,
                    )
                    c_nat2.check(
                        K.compose(b, K.lift(monad, proj2(a.src, b.src))),
                        K.compose(K.lift(monad, proj2(a.dst, b.dst)), ten),
                        label,
                    )
                    c_nat_swap.check(
                        K.compose(K.lift(monad, swap_map(a.dst, b.dst)), ten),
                        K.compose(K.tensor(b, a), K.lift(monad, swap_map(a.src, b.src))),
                        label,
                    )

            for a in fs:
                c_copy.check(
                    K.compose(K.lift(monad, copy_map(b_space)), a),
                    K.compose(K.tensor(a, a), K.lift(monad, copy_map(a_space))),
                    lambda a=a: f"a = [{_show(a)}]",
                )

        # lifted structural maps are two-sided isomorphisms
        ident = K.identity_arrow(monad, a_space)
        lu = K.lift(monad, left_unit_map(a_space))
        lu_inv = K.lift(
            monad, det_product(terminal_map(a_space), identity_map(a_space))
        )
        ru = K.lift(monad, right_unit_map(a_space))
        ru_inv = K.lift(
            monad, det_product(identity_map(a_space), terminal_map(a_space))
        )
        for fwd, back in ((lu, lu_inv), (ru, ru_inv)):
            c_isos.check(
                K.compose(fwd, back), ident, lambda: f"unitor on card {ca}"
            )
            c_isos.check(
                K.compose(back, fwd),
                K.identity_arrow(monad, fwd.src),
                lambda: f"unitor on card {ca}",
            )
        for cb, b_space in spaces.items():
            sw = K.lift(monad, swap_map(a_space, b_space))
            sw_back = K.lift(monad, swap_map(b_space, a_space))
            c_isos.check(
                K.compose(sw_back, sw),
                K.identity_arrow(monad, sw.src),
                lambda: f"swap on {ca}x{cb}",
            )

    checkers = [
        c_extract1,
        c_extract2,
        c_commute,
        c_assoc,
        c_inter,
        c_tensor,
        c_terminal,
        c_isos,
        c_nat1,
        c_nat2,
        c_nat_swap,
        c_copy,
    ]
    return [
        c.report(_strategy(all_exhaustive, seed, c.instances)) for c in checkers
    ]


def _random_arrow(monad, src, dst, rng):
    rows = tuple(monad.sample_row(dst, rng) for _ in src.indices())
    return K.KleisliArrow(monad, src, dst, rows)


# ---------------------------------------------------------------------------
# suite + rendering


def run_category_suite(
    monad: Monad, max_card: int, samples: int = 64, seed: int = 0
) -> CategorySuite:
    """All monad, pairing-coherence, and category-axiom checks for one category."""
    reports = (
        check_monad_laws(monad, max_card, samples, seed)
        + check_gamma_coherence(monad, max_card, samples, seed)
        + check_it_axioms(monad, max_card, samples, seed)
    )
    return CategorySuite(monad.tag, max_card, samples, seed, tuple(reports))


def render_suite(suite: CategorySuite, machine: bool = False) -> str:
    """Render a suite as a report: aligned table with counterexample blocks, or
    tab-separated `name/verdict/expected/instances/strategy` lines when
    ``machine`` is set.  Both endings state the overall PASS/FAIL outcome."""
    if machine:
        lines = []
        for r in suite.reports:
            lines.append(
                "\t".join(
                    [
                        r.name,
                        "pass" if r.passed else "fail",
                        "pass" if r.expected_pass else "fail",
                        str(r.instances),
                        r.strategy,
                    ]
                )
            )
        lines.append("overall\t" + ("PASS" if suite.ok else "FAIL"))
        return "\n".join(lines) + "\n"

    width = max(len(r.name) for r in suite.reports)
    lines = [
        f"category: {suite.category}",
        f"max-card: {suite.max_card}   samples: {suite.samples}   seed: {suite.seed}",
        "",
        f"{'law'.ljust(width)}  verdict  expected  instances  strategy",
    ]
    for r in suite.reports:
        lines.append(
            f"{r.name.ljust(width)}  "
            f"{('pass' if r.passed else 'fail').ljust(7)}  "
            f"{('pass' if r.expected_pass else 'fail').ljust(8)}  "
            f"{str(r.instances).rjust(9)}  {r.strategy}"
        )
    for r in suite.reports:
        if r.counterexample is not None:
            status = "expected" if not r.expected_pass else "UNEXPECTED"
            lines.append("")
            lines.append(f"counterexample for {r.name} ({status} failure):")
            for line in r.counterexample.splitlines():
                lines.append("  " + line)
    lines.append("")
    lines.append("overall: " + ("PASS" if suite.ok else "FAIL"))
    return "\n".join(lines) + "\n"
