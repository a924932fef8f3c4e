"""Command semantics shared by the HTTP service and the command-line client.

Each ``cmd_*`` function validates its inputs, runs the corresponding library
operation, and renders a deterministic text report (human-readable by default,
tab-separated fields in machine mode).  Bad input raises :class:`CommandError`;
the caller maps that to HTTP 400 or exit code 2.  The returned
:class:`CommandResult` carries the report, the process exit code (0 for
pass/positive verdicts, 1 for failed checks or negative verdicts), and a
JSON-friendly data dictionary for programmatic consumers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import informativeness as inf
from . import linear as lin
from .bayes import BayesError, DecisionProblem, bayes_principle_check, conditional
from .itfile import ItFile, ItFileError, parse_it_file
from .kleisli import KleisliArrow, is_distribution
from .laws import run_category_suite, render_suite
from .monads import CATEGORY_ALIASES, MonadValueError, PROBABILITY, get_monad
from .spaces import SpaceError

__all__ = [
    "CommandError",
    "CommandResult",
    "cmd_laws",
    "cmd_compare",
    "cmd_conditional",
    "cmd_bayes",
    "cmd_classes",
    "ACCURACY_MODES",
]

ACCURACY_MODES = (inf.EQUALITY, inf.POINTWISE)

MAX_LAWS_CARD = 6
MAX_CLASSES_CARD = 6


class CommandError(ValueError):
    """Invalid command input (unknown name, wrong category, bad parameter)."""


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    report: str
    data: dict = field(default_factory=dict)


def _parse(file_text: str) -> ItFile:
    try:
        return parse_it_file(file_text)
    except ItFileError as err:
        raise CommandError(str(err)) from None


def _check_accuracy(accuracy: str) -> str:
    if accuracy not in ACCURACY_MODES:
        raise CommandError(
            f"unknown accuracy {accuracy!r}; expected one of {', '.join(ACCURACY_MODES)}"
        )
    return accuracy


# ---------------------------------------------------------------------------
# laws
# ---------------------------------------------------------------------------


def cmd_laws(
    category: str,
    max_card: int = 3,
    samples: int = 64,
    seed: int = 0,
    machine: bool = False,
) -> CommandResult:
    """Run the law suite for one finite category and render its report."""
    if category not in CATEGORY_ALIASES:
        raise CommandError(
            f"unknown category {category!r}; expected one of "
            + ", ".join(sorted(CATEGORY_ALIASES))
        )
    if not 1 <= max_card <= MAX_LAWS_CARD:
        raise CommandError(f"max-card must be between 1 and {MAX_LAWS_CARD}")
    if samples < 0:
        raise CommandError("samples must be nonnegative")
    suite = run_category_suite(get_monad(category), max_card, samples, seed)
    data = {
        "category": suite.category,
        "overall_pass": suite.ok,
        "results": [
            {
                "name": r.name,
                "passed": r.passed,
                "expected_pass": r.expected_pass,
                "ok": r.ok,
                "instances": r.instances,
                "strategy": r.strategy,
                "counterexample": r.counterexample,
            }
            for r in suite.reports
        ],
    }
    return CommandResult(0 if suite.ok else 1, render_suite(suite, machine), data)


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------


def _render_finite_arrow_rows(arr: KleisliArrow) -> list[str]:
    return [
        f"{arr.src.elements[x]} -> {arr.monad.render(arr.dst, arr.rows[x])}"
        for x in arr.src.indices()
    ]


def _render_linear_arrow(arr: lin.LinearIT) -> list[str]:
    lines = []
    if arr.src_dim > 0:
        lines.append("A")
        for row in arr.A:
            lines.append(" ".join(f"{v:.6g}" for v in row))
    lines.append("Sigma")
    for row in arr.Sigma:
        lines.append(" ".join(f"{v:.6g}" for v in row))
    return lines


def _search_summary(search: inf.WitnessSearch) -> str:
    scope = "exhaustive" if search.exhaustive else "partial"
    return f"{search.label} ({search.tested} candidates, {scope} search)"


def cmd_compare(
    file_text: str, a_name: str, b_name: str, accuracy: str = inf.EQUALITY, machine: bool = False
) -> CommandResult:
    """Compare the informativeness of two named arrows from a file."""
    _check_accuracy(accuracy)
    it = _parse(file_text)
    if it.is_linear:
        return _compare_linear(it, a_name, b_name, machine)
    try:
        a, b = it.arrow(a_name), it.arrow(b_name)
    except ItFileError as err:
        raise CommandError(str(err)) from None
    extra = tuple(arr for name, arr in it.arrows.items() if name not in (a_name, b_name))
    try:
        result = inf.compare(accuracy, a, b, given=extra)
    except (SpaceError, MonadValueError) as err:
        raise CommandError(str(err)) from None

    lines: list[str] = []
    if machine:
        lines.append(f"verdict\t{result.verdict}")
        lines.append(
            f"forward\t{result.forward.label}\t{result.forward.tested}\t"
            + ("exhaustive" if result.forward.exhaustive else "partial")
        )
        lines.append(
            f"backward\t{result.backward.label}\t{result.backward.tested}\t"
            + ("exhaustive" if result.backward.exhaustive else "partial")
        )
        if result.forward.witness is not None:
            for row in _render_finite_arrow_rows(result.forward.witness):
                lines.append(f"witness-forward\t{row}")
        if result.backward.witness is not None:
            for row in _render_finite_arrow_rows(result.backward.witness):
                lines.append(f"witness-backward\t{row}")
    else:
        lines.append(
            f"comparison of {a_name} and {b_name} "
            f"(category {it.category}, accuracy {accuracy})"
        )
        lines.append(f"verdict: {result.verdict}")
        lines.append(f"forward search ({a_name} over {b_name}): {_search_summary(result.forward)}")
        lines.append(f"backward search ({b_name} over {a_name}): {_search_summary(result.backward)}")
        if result.forward.witness is not None:
            lines.append(f"witness turning {a_name} into a cover of {b_name}:")
            for row in _render_finite_arrow_rows(result.forward.witness):
                lines.append("  " + row)
        if result.backward.witness is not None:
            lines.append(f"witness turning {b_name} into a cover of {a_name}:")
            for row in _render_finite_arrow_rows(result.backward.witness):
                lines.append("  " + row)
    report = "\n".join(lines) + "\n"
    exit_code = 0 if result.verdict in ("MORE", "LESS", "EQUIVALENT") else 1
    data = {
        "verdict": result.verdict,
        "forward": result.forward.label,
        "backward": result.backward.label,
    }
    return CommandResult(exit_code, report, data)


def _compare_linear(it: ItFile, a_name: str, b_name: str, machine: bool) -> CommandResult:
    try:
        a, b = it.arrow(a_name), it.arrow(b_name)
    except ItFileError as err:
        raise CommandError(str(err)) from None
    if a.src_dim != b.src_dim:
        raise CommandError("linear comparison needs a common source space")
    try:
        ca, cb = lin.lin_canonical_class(a), lin.lin_canonical_class(b)
    except lin.LinearError as err:
        raise CommandError(str(err)) from None
    fwd, bwd = lin.lin_class_le(ca, cb), lin.lin_class_le(cb, ca)
    if fwd and bwd:
        verdict = "EQUIVALENT"
    elif fwd:
        verdict = "MORE"
    elif bwd:
        verdict = "LESS"
    else:
        verdict = "INCOMPARABLE"
    w_fwd = lin.informativeness_witness(a, b) if fwd else None
    w_bwd = lin.informativeness_witness(b, a) if bwd else None

    lines: list[str] = []
    if machine:
        lines.append(f"verdict\t{verdict}")
        lines.append(f"forward\t{'YES' if fwd else 'NO'}")
        lines.append(f"backward\t{'YES' if bwd else 'NO'}")
        if w_fwd is not None:
            for row in _render_linear_arrow(w_fwd):
                lines.append(f"witness-forward\t{row}")
        if w_bwd is not None:
            for row in _render_linear_arrow(w_bwd):
                lines.append(f"witness-backward\t{row}")
    else:
        lines.append(f"comparison of {a_name} and {b_name} (category linear, class order)")
        lines.append(f"verdict: {verdict}")
        if w_fwd is not None:
            lines.append(f"witness turning {a_name} into a cover of {b_name}:")
            for row in _render_linear_arrow(w_fwd):
                lines.append("  " + row)
        if w_bwd is not None:
            lines.append(f"witness turning {b_name} into a cover of {a_name}:")
            for row in _render_linear_arrow(w_bwd):
                lines.append("  " + row)
    report = "\n".join(lines) + "\n"
    exit_code = 0 if verdict in ("MORE", "LESS", "EQUIVALENT") else 1
    data = {"verdict": verdict, "forward": "YES" if fwd else "NO", "backward": "YES" if bwd else "NO"}
    return CommandResult(exit_code, report, data)


# ---------------------------------------------------------------------------
# conditional
# ---------------------------------------------------------------------------


def cmd_conditional(
    file_text: str, joint_name: str, wrt: str = "first", machine: bool = False
) -> CommandResult:
    """Compute a conditional channel from a named probability joint."""
    it = _parse(file_text)
    if it.is_linear:
        raise CommandError("conditioning on file joints is defined for the probability category")
    try:
        h = it.arrow(joint_name)
    except ItFileError as err:
        raise CommandError(str(err)) from None
    if h.monad is not PROBABILITY:
        raise CommandError(
            f"conditioning requires the probability category, not {it.category}"
        )
    if not is_distribution(h):
        raise CommandError(f"arrow {joint_name!r} is not a distribution (source must be Z)")
    try:
        result = conditional(h, wrt=wrt)
    except BayesError as err:
        raise CommandError(str(err)) from None

    rows = _render_finite_arrow_rows(result)
    if machine:
        lines = [f"row\t{row.replace(' -> ', chr(9))}" for row in rows]
    else:
        lines = [f"conditional of {joint_name} with respect to {wrt}:"]
        lines.extend("  " + row for row in rows)
    return CommandResult(0, "\n".join(lines) + "\n", {"rows": rows})


# ---------------------------------------------------------------------------
# bayes
# ---------------------------------------------------------------------------


def _render_strategy(table, obs, dec) -> str:
    return " ".join(
        f"{obs.elements[y]}->{dec.elements[u]}" for y, u in enumerate(table)
    )


def cmd_bayes(
    file_text: str,
    prior_name: str,
    channel_name: str,
    utility_name: str,
    machine: bool = False,
) -> CommandResult:
    """Check the prior/posterior optimal-strategy equality on a file instance."""
    it = _parse(file_text)
    if it.is_linear:
        raise CommandError("decision analysis runs in the probability category")
    if it.monad is not PROBABILITY:
        raise CommandError(
            f"decision analysis requires the probability category, not {it.category}"
        )
    try:
        f = it.arrow(prior_name)
        a = it.arrow(channel_name)
        decl = it.utility(utility_name)
    except ItFileError as err:
        raise CommandError(str(err)) from None
    if not is_distribution(f):
        raise CommandError(f"prior {prior_name!r} must be a distribution (source Z)")
    signals = it.space(decl.signals)
    decisions = it.space(decl.decisions)
    if signals != a.src:
        raise CommandError(
            f"utility {utility_name!r} scores signals from {decl.signals!r}, "
            f"but the channel reads from a different space"
        )
    try:
        problem = DecisionProblem(signals, decisions, decl.table, prior=f)
        report = bayes_principle_check(f, a, problem)
    except BayesError as err:
        raise CommandError(str(err)) from None

    obs = a.dst
    prior_strats = sorted(report.prior_opt)
    posterior_strats = sorted(report.posterior_opt)
    verdict = "YES" if report.sets_equal else "NO"
    lines: list[str] = []
    if machine:
        lines.append(f"value\t{report.value}")
        for table in prior_strats:
            lines.append(f"prior-opt\t{_render_strategy(table, obs, decisions)}")
        for table in posterior_strats:
            lines.append(f"posterior-opt\t{_render_strategy(table, obs, decisions)}")
        for y, choices in enumerate(report.pointwise):
            rendered = "|".join(decisions.elements[u] for u in sorted(choices))
            lines.append(f"pointwise\t{obs.elements[y]}\t{rendered}")
        lines.append(f"equal\t{verdict}")
    else:
        lines.append(
            f"decision problem: prior {prior_name}, channel {channel_name}, "
            f"utility {utility_name}"
        )
        lines.append(f"optimal value: {report.value}")
        lines.append("prior-side optimal strategies:")
        for table in prior_strats:
            lines.append("  " + _render_strategy(table, obs, decisions))
        lines.append("posterior-side optimal strategies:")
        for table in posterior_strats:
            lines.append("  " + _render_strategy(table, obs, decisions))
        lines.append("pointwise decisions by observation:")
        for y, choices in enumerate(report.pointwise):
            rendered = "|".join(decisions.elements[u] for u in sorted(choices))
            lines.append(f"  {obs.elements[y]} -> {rendered}")
        lines.append(f"OptPrior == OptPosterior : {verdict}")
    exit_code = 0 if report.ok else 1
    data = {
        "value": str(report.value),
        "equal": report.sets_equal,
        "pointwise_equal": report.pointwise_equal,
        "prior_opt": [_render_strategy(t, obs, decisions) for t in prior_strats],
        "posterior_opt": [_render_strategy(t, obs, decisions) for t in posterior_strats],
    }
    return CommandResult(exit_code, "\n".join(lines) + "\n", data)


# ---------------------------------------------------------------------------
# classes
# ---------------------------------------------------------------------------


def _render_partition(p) -> str:
    return "".join("{" + ",".join(str(x) for x in block) + "}" for block in p)


def cmd_classes(category: str = "set", card: int = 3, machine: bool = False) -> CommandResult:
    """Enumerate deterministic-category informativeness classes with their tables."""
    canonical = CATEGORY_ALIASES.get(category)
    if canonical != "identity":
        raise CommandError(
            "class enumeration is implemented for the deterministic category "
            "(--category set)"
        )
    if not 1 <= card <= MAX_CLASSES_CARD:
        raise CommandError(f"card must be between 1 and {MAX_CLASSES_CARD}")
    monoid = inf.partition_monoid(card)
    k = len(monoid.carrier)
    lines: list[str] = []
    if machine:
        for i, p in enumerate(monoid.carrier):
            lines.append(f"class\t{i}\t{_render_partition(p)}")
        for i, row in enumerate(monoid.ge):
            lines.append(f"ge\t{i}\t" + "".join("1" if v else "0" for v in row))
        for i, row in enumerate(monoid.product):
            lines.append(f"product\t{i}\t" + " ".join(str(v) for v in row))
        lines.append(f"zero\t{monoid.zero}")
        lines.append(f"one\t{monoid.one}")
    else:
        lines.append(
            f"informativeness classes of deterministic transformers "
            f"on a {card}-element space: {k} classes"
        )
        for i, p in enumerate(monoid.carrier):
            lines.append(f"  {i}: {_render_partition(p)}")
        lines.append("order (row i column j is 1 when class i covers class j):")
        for row in monoid.ge:
            lines.append("  " + "".join("1" if v else "0" for v in row))
        lines.append("product table (entry i,j is the class of the product):")
        for row in monoid.product:
            lines.append("  " + " ".join(str(v) for v in row))
        lines.append(
            f"terminal class (bottom): {monoid.zero}   identity class (top): {monoid.one}"
        )
    data = {
        "count": k,
        "classes": [_render_partition(p) for p in monoid.carrier],
        "zero": monoid.zero,
        "one": monoid.one,
    }
    return CommandResult(0, "\n".join(lines) + "\n", data)
