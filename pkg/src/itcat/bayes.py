"""Distributions, joints, conditionals, decision problems, and optimal strategies.

A distribution on a space is an arrow out of the terminal space.  Pairing the
identity with a channel and feeding it a distribution produces the joint; this
module extracts marginals, tests independence, recovers conditionals (for the
probability monad), enumerates optimal decision strategies for utility-based
decision problems, and checks that prior-side and posterior-side optimisation
select exactly the same strategies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian

from .informativeness import EQUALITY, accuracy_le, more_informative
from .kleisli import (
    KleisliArrow,
    compose,
    enumerate_arrows,
    identity_arrow,
    is_distribution,
    lift,
    product,
)
from .monads import IDENTITY, POWERSET, PROBABILITY, Monad, as_fraction
from .spaces import DetMap, FiniteSpace

__all__ = [
    "STRATEGY_CAP",
    "BayesError",
    "DecisionProblem",
    "OptResult",
    "BayesReport",
    "joint_from",
    "marginals",
    "is_independent",
    "conditional",
    "deterministic_strategies",
    "decision_scores",
    "aggregate_score",
    "opt_set",
    "bayes_principle_check",
    "semantical_le",
    "theorem4_check",
]

# Largest deterministic-strategy space (|decisions| ** |observations|) that the
# enumerating operations will sweep before refusing.
STRATEGY_CAP = 4096


class BayesError(ValueError):
    """Raised for malformed decision problems or unsupported instances."""


def _require_distribution(f: KleisliArrow, over: FiniteSpace | None = None) -> None:
    if not is_distribution(f):
        raise BayesError("expected a distribution (an arrow out of the terminal space)")
    if over is not None and f.dst != over:
        raise BayesError(f"distribution is over {f.dst.label!r}, expected {over.label!r}")


# ---------------------------------------------------------------------------
# Joints, marginals, independence, conditionals
# ---------------------------------------------------------------------------


def joint_from(f: KleisliArrow, a: KleisliArrow) -> KleisliArrow:
    """The joint distribution of the source and the channel output.

    Pairs the identity on the source with ``a`` and composes with ``f``; the
    marginals of the result recover ``f`` and ``a . f`` exactly.
    """
    _require_distribution(f, a.src)
    if f.monad is not a.monad:
        raise BayesError("distribution and channel use different categories")
    paired = product(identity_arrow(a.monad, a.src), a)
    return compose(paired, f)


def marginals(h: KleisliArrow) -> tuple[KleisliArrow, KleisliArrow]:
    """Project a joint distribution to its two component distributions."""
    _require_distribution(h)
    if not h.dst.is_product:
        raise BayesError("marginals need a distribution on a product space")
    left, right = h.dst.factors
    first = compose(lift(h.monad, _projection(h.dst, left, 0)), h)
    second = compose(lift(h.monad, _projection(h.dst, right, 1)), h)
    return first, second


def _projection(prod: FiniteSpace, component: FiniteSpace, which: int) -> DetMap:
    table = tuple(prod.split_index(k)[which] for k in prod.indices())
    return DetMap(prod, component, table)


def is_independent(h: KleisliArrow) -> bool:
    """True iff the joint equals the product of its own marginals exactly."""
    f, g = marginals(h)
    return h == product(f, g)


def conditional(h: KleisliArrow, wrt: str = "first") -> KleisliArrow:
    """Recover a conditional channel from a probability joint.

    For ``wrt="first"`` returns ``a`` with ``a(x)(y) = h(x, y) / f(x)`` on the
    support of the first marginal ``f``; rows at zero-mass points are set to
    the opposite marginal (any row is valid there, and this choice keeps the
    reconstruction identity exact).  ``wrt="second"`` is the mirror image.
    """
    _require_distribution(h)
    if h.monad is not PROBABILITY:
        raise BayesError("conditionals are only defined for the probability category")
    if not h.dst.is_product:
        raise BayesError("conditioning needs a distribution on a product space")
    if wrt not in ("first", "second"):
        raise BayesError("wrt must be 'first' or 'second'")
    left, right = h.dst.factors
    joint_row = h.rows[0]
    f_row, g_row = _marginal_rows(h.dst, joint_row)
    if wrt == "first":
        src, dst, given, other = left, right, f_row, g_row
    else:
        src, dst, given, other = right, left, g_row, f_row
    rows = []
    for x in range(src.card):
        mass = given[x]
        if mass == 0:
            rows.append(other)
            continue
        if wrt == "first":
            cells = tuple(joint_row[h.dst.pair_index(x, y)] / mass for y in range(dst.card))
        else:
            cells = tuple(joint_row[h.dst.pair_index(y, x)] / mass for y in range(dst.card))
        rows.append(cells)
    return KleisliArrow(PROBABILITY, src, dst, tuple(rows))


def _marginal_rows(prod: FiniteSpace, joint_row) -> tuple[tuple, tuple]:
    left, right = prod.factors
    f = [Fraction(0)] * left.card
    g = [Fraction(0)] * right.card
    for k in prod.indices():
        x, y = prod.split_index(k)
        f[x] += joint_row[k]
        g[y] += joint_row[k]
    return tuple(f), tuple(g)


# ---------------------------------------------------------------------------
# Decision problems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecisionProblem:
    """A finite decision problem: signals, decisions, a utility table, optional prior.

    ``utility[d][u]`` is the (exact rational) payoff of deciding ``u`` when the
    signal is ``d``.  The optional prior is a distribution on the signal space;
    when present it turns per-signal scores into a single aggregate score.
    """

    signals: FiniteSpace
    decisions: FiniteSpace
    utility: tuple
    prior: KleisliArrow | None = None

    def __post_init__(self) -> None:
        rows = tuple(
            tuple(as_fraction(v) for v in row) for row in self.utility
        )
        if len(rows) != self.signals.card or any(
            len(row) != self.decisions.card for row in rows
        ):
            raise BayesError(
                f"utility table must be {self.signals.card} x {self.decisions.card}"
            )
        object.__setattr__(self, "utility", rows)
        if self.prior is not None:
            _require_distribution(self.prior, self.signals)


def deterministic_strategies(monad: Monad, src: FiniteSpace, dst: FiniteSpace):
    """Yield every deterministic strategy ``src -> dst`` as (table, lifted arrow).

    Refuses when ``dst.card ** src.card`` exceeds ``STRATEGY_CAP``.
    """
    total = dst.card**src.card
    if total > STRATEGY_CAP:
        raise BayesError(
            f"strategy enumeration bound exceeded: {total} > {STRATEGY_CAP}"
        )
    for table in _cartesian(range(dst.card), repeat=src.card):
        yield table, lift(monad, DetMap(src, dst, table))


def decision_scores(c: KleisliArrow, problem: DecisionProblem) -> tuple:
    """Per-signal score of a decision transformer ``c: signals -> decisions``.

    Probability rows score by expected utility; multivalued rows by their
    worst-case (minimum) utility; deterministic rows by the chosen entry.
    """
    if c.src != problem.signals or c.dst != problem.decisions:
        raise BayesError("decision transformer does not match the problem spaces")
    util = problem.utility
    monad = c.monad
    scores = []
    for d in range(problem.signals.card):
        row = c.rows[d]
        if monad is PROBABILITY:
            scores.append(sum((row[u] * util[d][u] for u in range(len(row))), Fraction(0)))
        elif monad is POWERSET:
            scores.append(min(util[d][u] for u in row))
        elif monad is IDENTITY:
            scores.append(util[d][row])
        else:
            raise BayesError(
                f"no utility aggregation is defined for the {monad.tag} category"
            )
    return tuple(scores)


def aggregate_score(scores: tuple, problem: DecisionProblem) -> Fraction:
    """Collapse per-signal scores through the problem's prior into one number.

    A probability prior takes the expectation; a multivalued prior takes the
    worst case over its possible signals; a deterministic prior evaluates at
    its point.
    """
    prior = problem.prior
    if prior is None:
        raise BayesError("aggregate score needs a prior on the signal space")
    row = prior.rows[0]
    if prior.monad is PROBABILITY:
        return sum(
            (row[d] * scores[d] for d in range(len(scores))), Fraction(0)
        )
    if prior.monad is POWERSET:
        return min(scores[d] for d in row)
    if prior.monad is IDENTITY:
        return scores[row]
    raise BayesError(f"no aggregation is defined for a {prior.monad.tag} prior")


@dataclass(frozen=True)
class OptResult:
    """All expected-utility-maximal deterministic strategies and their value."""

    strategies: frozenset
    value: Fraction


def opt_set(f: KleisliArrow, a: KleisliArrow, problem: DecisionProblem) -> OptResult:
    """Optimal deterministic strategies for observing ``a`` under prior ``f``.

    Scores every strategy ``r: a.dst -> decisions`` by the expected utility of
    the joint signal/decision distribution it induces, and returns every
    maximizer (ties all kept) together with the optimal value.
    """
    _require_distribution(f, a.src)
    if f.monad is not PROBABILITY or a.monad is not PROBABILITY:
        raise BayesError("optimal-strategy search requires the probability category")
    if a.src != problem.signals:
        raise BayesError("channel source does not match the problem's signal space")
    if problem.prior is not None and problem.prior.rows != f.rows:
        raise BayesError("problem prior disagrees with the supplied distribution")
    util = problem.utility
    best: list = []
    best_value: Fraction | None = None
    for table, strategy in deterministic_strategies(PROBABILITY, a.dst, problem.decisions):
        joint = joint_from(f, compose(strategy, a))
        row = joint.rows[0]
        value = Fraction(0)
        for k in joint.dst.indices():
            d, u = joint.dst.split_index(k)
            value += row[k] * util[d][u]
        if best_value is None or value > best_value:
            best, best_value = [table], value
        elif value == best_value:
            best.append(table)
    return OptResult(frozenset(best), best_value)


@dataclass(frozen=True)
class BayesReport:
    """Outcome of comparing prior-side and posterior-side optimisation.

    ``pointwise`` holds, for each observation, the decisions that maximize the
    posterior-expected utility at that observation (every decision when the
    observation has zero mass).  ``pointwise_opt`` is the set of strategies
    assembled from those per-observation choices.
    """

    prior_opt: frozenset
    posterior_opt: frozenset
    pointwise: tuple
    pointwise_opt: frozenset
    value: Fraction
    sets_equal: bool
    pointwise_equal: bool

    @property
    def ok(self) -> bool:
        return self.sets_equal and self.pointwise_equal


def bayes_principle_check(
    f: KleisliArrow, a: KleisliArrow, problem: DecisionProblem
) -> BayesReport:
    """Check that optimising before and after conditioning picks the same strategies.

    The prior side enumerates strategies against the original channel; the
    posterior side scores the same strategies against the joint assembled from
    the conditional (posterior) channel and the observation distribution, and
    additionally reads off the per-observation optimal decisions.
    """
    prior_side = opt_set(f, a, problem)
    g = compose(a, f)
    posterior = conditional(joint_from(f, a), wrt="second")
    util = problem.utility
    g_row = g.rows[0]

    best: list = []
    best_value: Fraction | None = None
    for table, strategy in deterministic_strategies(PROBABILITY, a.dst, problem.decisions):
        joint = compose(product(posterior, strategy), g)
        row = joint.rows[0]
        value = Fraction(0)
        for k in joint.dst.indices():
            d, u = joint.dst.split_index(k)
            value += row[k] * util[d][u]
        if best_value is None or value > best_value:
            best, best_value = [table], value
        elif value == best_value:
            best.append(table)
    posterior_opt = frozenset(best)

    pointwise = []
    for y in range(a.dst.card):
        if g_row[y] == 0:
            pointwise.append(frozenset(range(problem.decisions.card)))
            continue
        post_row = posterior.rows[y]
        gains = [
            sum(
                (post_row[d] * util[d][u] for d in range(problem.signals.card)),
                Fraction(0),
            )
            for u in range(problem.decisions.card)
        ]
        top = max(gains)
        pointwise.append(frozenset(u for u, gain in enumerate(gains) if gain == top))
    pointwise_opt = frozenset(
        table for table in _cartesian(*[sorted(choice) for choice in pointwise])
    )

    return BayesReport(
        prior_opt=prior_side.strategies,
        posterior_opt=posterior_opt,
        pointwise=tuple(pointwise),
        pointwise_opt=pointwise_opt,
        value=prior_side.value,
        sets_equal=prior_side.strategies == posterior_opt,
        pointwise_equal=prior_side.strategies == pointwise_opt,
    )


# ---------------------------------------------------------------------------
# Semantical informativeness
# ---------------------------------------------------------------------------


def semantical_le(a: KleisliArrow, b: KleisliArrow, problems) -> bool:
    """True iff ``a`` serves every listed decision problem at least as well as ``b``.

    For each problem, every deterministic strategy reading ``b``'s output must
    be matched by a deterministic strategy reading ``a``'s output whose scores
    dominate it: aggregate score with a prior, per-signal domination without.
    """
    if a.src != b.src:
        raise BayesError("transformers must share a source to compare semantically")
    if a.monad is not b.monad:
        raise BayesError("transformers use different categories")
    for problem in problems:
        if problem.signals != a.src:
            raise BayesError("problem signal space does not match the transformers")
        a_scores = []
        for _, strat in deterministic_strategies(a.monad, a.dst, problem.decisions):
            a_scores.append(decision_scores(compose(strat, a), problem))
        for _, strat in deterministic_strategies(b.monad, b.dst, problem.decisions):
            b_score = decision_scores(compose(strat, b), problem)
            if problem.prior is not None:
                target = aggregate_score(b_score, problem)
                if not any(
                    aggregate_score(sa, problem) >= target for sa in a_scores
                ):
                    return False
            else:
                if not any(
                    all(sa[d] >= b_score[d] for d in range(len(b_score)))
                    for sa in a_scores
                ):
                    return False
    return True


# ---------------------------------------------------------------------------
# Structural vs semantical equivalence on exhaustively searchable categories
# ---------------------------------------------------------------------------


def theorem4_check(
    a: KleisliArrow, b: KleisliArrow, accuracy: str = EQUALITY
) -> tuple[bool, bool]:
    """Evaluate structural and semantical informativeness of ``a`` over ``b``.

    The structural verdict is the exhaustive witness search for a ``c`` with
    ``c . a`` at least as accurate as ``b``.  The semantical verdict evaluates
    the tailored decision problem whose decisions are ``b``'s outputs and whose
    preorder ranks ``c`` over ``d`` whenever ``d`` matching ``b`` implies ``c``
    matching ``b``: for every transformer ``b'`` out of ``b``'s output there
    must be a transformer ``a'`` out of ``a``'s output with
    ``a' . a`` ranked over ``b' . b``.  Returns ``(structural, semantical)``;
    the two must agree.
    """
    if a.src != b.src:
        raise BayesError("transformers must share a source")
    if a.monad is not b.monad:
        raise BayesError("transformers use different categories")
    monad = a.monad
    if monad not in (POWERSET, IDENTITY):
        raise BayesError(
            "exhaustive structural/semantical comparison needs a finitely "
            "enumerable category (multivalued or deterministic)"
        )

    search = more_informative(accuracy, a, b)
    if not search.exhaustive:
        raise BayesError("instance too large for an exhaustive structural search")
    structural = search.verdict

    matcher_exists = any(
        accuracy_le(accuracy, compose(a_prime, a), b)
        for a_prime in enumerate_arrows(monad, a.dst, b.dst)
    )
    semantical = True
    for b_prime in enumerate_arrows(monad, b.dst, b.dst):
        if accuracy_le(accuracy, compose(b_prime, b), b) and not matcher_exists:
            semantical = False
            break
    return structural, semantical
