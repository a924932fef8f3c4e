"""Line-oriented text format for categories, spaces, arrows, and utilities.

Grammar (one declaration per line, ``#`` starts a comment, blank lines free):

- ``category <tag>`` — first declaration; a finite-category tag
  (``set``/``identity``, ``stochastic``/``probability``,
  ``multivalued``/``powerset``, ``fuzzy-min``, ``fuzzy-prod``) or ``linear``.
- ``object <name> <cardinality>`` — a finite space (finite categories).
- ``space <name> <dim>`` — a Euclidean space (linear category).
- ``product <name> <left> <right>`` — names the product of two declared
  finite spaces (row-major element order, left index varying slower).
- ``arrow <name> <src> <dst>`` — followed by one row per source element:
  probability/fuzzy rows are exact rationals (``3/4`` or integers), one entry
  per destination element; multivalued rows are 0/1 membership vectors;
  set-category rows are a single 0-based destination index.  Linear arrows
  instead carry an ``A`` block (``dst_dim`` rows of ``src_dim`` floats,
  omitted when the source is ``Z``) and a ``Sigma`` block (``dst_dim`` rows).
- ``utility <name> <signals> <decisions>`` — followed by one row of exact
  rationals per signal (finite categories).

The terminal space ``Z`` (cardinality 1, dimension 0) is predeclared.
``parse_it_file`` reports errors with their line number; ``serialize_it_file``
emits text that reparses to an equal :class:`ItFile`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .kleisli import KleisliArrow
from .linear import LinearError, LinearIT
from .monads import (
    CATEGORY_ALIASES,
    Monad,
    MonadValueError,
    get_monad,
)
from .monads import FUZZY_MIN, FUZZY_PROD, IDENTITY, POWERSET, PROBABILITY
from .spaces import TERMINAL, FiniteSpace, SpaceError, product_space, space

__all__ = [
    "ItFileError",
    "UtilityDecl",
    "ItFile",
    "parse_it_file",
    "serialize_it_file",
]

LINEAR_TAG = "linear"


class ItFileError(ValueError):
    """A parse or validation error, carrying the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class UtilityDecl:
    """A named utility table: exact payoffs indexed by signal then decision."""

    signals: str
    decisions: str
    table: tuple


@dataclass(frozen=True, eq=False)
class ItFile:
    """Everything declared by one file, with name-based lookups."""

    category: str
    spaces: dict = field(default_factory=dict)
    products: dict = field(default_factory=dict)
    dims: dict = field(default_factory=dict)
    arrows: dict = field(default_factory=dict)
    linear_arrows: dict = field(default_factory=dict)
    utilities: dict = field(default_factory=dict)

    @property
    def is_linear(self) -> bool:
        return self.category == LINEAR_TAG

    @property
    def monad(self) -> Monad:
        if self.is_linear:
            raise ItFileError("the linear category has no finite-monad representation")
        return get_monad(self.category)

    def space(self, name: str) -> FiniteSpace:
        try:
            return self.spaces[name]
        except KeyError:
            raise ItFileError(f"unknown space {name!r}") from None

    def arrow(self, name: str):
        if self.is_linear:
            try:
                return self.linear_arrows[name]
            except KeyError:
                raise ItFileError(f"unknown arrow {name!r}") from None
        try:
            return self.arrows[name]
        except KeyError:
            raise ItFileError(f"unknown arrow {name!r}") from None

    def utility(self, name: str) -> UtilityDecl:
        try:
            return self.utilities[name]
        except KeyError:
            raise ItFileError(f"unknown utility {name!r}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ItFile):
            return NotImplemented
        if (
            self.category != other.category
            or self.spaces != other.spaces
            or self.products != other.products
            or self.dims != other.dims
            or self.arrows != other.arrows
            or self.utilities != other.utilities
        ):
            return False
        if self.linear_arrows.keys() != other.linear_arrows.keys():
            return False
        for name, mine in self.linear_arrows.items():
            theirs = other.linear_arrows[name]
            if mine.src_dim != theirs.src_dim or mine.dst_dim != theirs.dst_dim:
                return False
            if not (
                np.array_equal(mine.A, theirs.A)
                and np.array_equal(mine.Sigma, theirs.Sigma)
            ):
                return False
        return True


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _logical_lines(text: str):
    """Yield (line_number, tokens) for content lines, comments stripped."""
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield number, content.split()


def _parse_fraction(token: str, line: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ItFileError(f"bad rational {token!r}", line) from None


def _parse_float(token: str, line: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ItFileError(f"bad number {token!r}", line) from None


def _parse_int(token: str, line: int, what: str, minimum: int = 0) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ItFileError(f"bad {what} {token!r}", line) from None
    if value < minimum:
        raise ItFileError(f"{what} must be >= {minimum}, got {value}", line)
    return value


class _Cursor:
    def __init__(self, text: str):
        self.entries = list(_logical_lines(text))
        self.pos = 0

    def peek(self):
        return self.entries[self.pos] if self.pos < len(self.entries) else None

    def take(self):
        entry = self.peek()
        if entry is not None:
            self.pos += 1
        return entry

    def take_row(self, context: str, expected_line_hint: int):
        entry = self.take()
        if entry is None:
            raise ItFileError(f"unexpected end of file while reading {context}", expected_line_hint)
        return entry


def _finite_row(monad: Monad, tokens, dst: FiniteSpace, line: int):
    if monad is IDENTITY:
        if len(tokens) != 1:
            raise ItFileError(
                f"set-category row must be a single destination index, got {len(tokens)} tokens",
                line,
            )
        idx = _parse_int(tokens[0], line, "destination index")
        if idx >= dst.card:
            raise ItFileError(
                f"destination index {idx} out of range for a space of cardinality {dst.card}",
                line,
            )
        return idx
    if len(tokens) != dst.card:
        raise ItFileError(f"row needs {dst.card} entries, got {len(tokens)}", line)
    if monad is POWERSET:
        members = []
        for i, token in enumerate(tokens):
            bit = _parse_int(token, line, "membership flag")
            if bit not in (0, 1):
                raise ItFileError(f"membership flag must be 0 or 1, got {token!r}", line)
            if bit:
                members.append(i)
        if not members:
            raise ItFileError("empty image set (a multivalued row must contain something)", line)
        return frozenset(members)
    return tuple(_parse_fraction(token, line) for token in tokens)


def parse_it_file(text: str) -> ItFile:
    """Parse the text format, validating every declaration as it lands."""
    cursor = _Cursor(text)
    head = cursor.take()
    if head is None:
        raise ItFileError("empty file: expected a 'category' declaration")
    line, tokens = head
    if tokens[0] != "category" or len(tokens) != 2:
        raise ItFileError("first declaration must be 'category <tag>'", line)
    tag = tokens[1]
    if tag == LINEAR_TAG:
        out = ItFile(category=LINEAR_TAG, dims={"Z": 0})
    elif tag in CATEGORY_ALIASES:
        out = ItFile(category=CATEGORY_ALIASES[tag], spaces={"Z": TERMINAL})
    else:
        known = ", ".join(sorted(CATEGORY_ALIASES) + [LINEAR_TAG])
        raise ItFileError(f"unknown category {tag!r}; expected one of {known}", line)

    while True:
        entry = cursor.take()
        if entry is None:
            break
        line, tokens = entry
        keyword = tokens[0]
        if keyword == "category":
            raise ItFileError("duplicate 'category' declaration", line)
        if keyword == "object":
            _parse_object(out, tokens, line)
        elif keyword == "space":
            _parse_space(out, tokens, line)
        elif keyword == "product":
            _parse_product(out, tokens, line)
        elif keyword == "arrow":
            _parse_arrow(out, cursor, tokens, line)
        elif keyword == "utility":
            _parse_utility(out, cursor, tokens, line)
        else:
            raise ItFileError(f"unknown declaration {keyword!r}", line)
    return out


def _check_fresh(out: ItFile, name: str, line: int) -> None:
    if name == "Z":
        raise ItFileError("'Z' is predeclared as the terminal space", line)
    taken = (
        name in out.spaces
        or name in out.dims
        or name in out.arrows
        or name in out.linear_arrows
        or name in out.utilities
    )
    if taken:
        raise ItFileError(f"duplicate name {name!r}", line)


def _parse_object(out: ItFile, tokens, line: int) -> None:
    if out.is_linear:
        raise ItFileError("'object' is for finite categories; use 'space' here", line)
    if len(tokens) != 3:
        raise ItFileError("expected 'object <name> <cardinality>'", line)
    name = tokens[1]
    _check_fresh(out, name, line)
    card = _parse_int(tokens[2], line, "cardinality", minimum=1)
    out.spaces[name] = space(name, card)


def _parse_space(out: ItFile, tokens, line: int) -> None:
    if not out.is_linear:
        raise ItFileError("'space' is for the linear category; use 'object' here", line)
    if len(tokens) != 3:
        raise ItFileError("expected 'space <name> <dim>'", line)
    name = tokens[1]
    _check_fresh(out, name, line)
    out.dims[name] = _parse_int(tokens[2], line, "dimension")


def _parse_product(out: ItFile, tokens, line: int) -> None:
    if out.is_linear:
        raise ItFileError("'product' is for finite categories", line)
    if len(tokens) != 4:
        raise ItFileError("expected 'product <name> <left> <right>'", line)
    name, left, right = tokens[1], tokens[2], tokens[3]
    _check_fresh(out, name, line)
    if left not in out.spaces:
        raise ItFileError(f"unknown space {left!r}", line)
    if right not in out.spaces:
        raise ItFileError(f"unknown space {right!r}", line)
    out.spaces[name] = product_space(out.spaces[left], out.spaces[right])
    out.products[name] = (left, right)


def _parse_arrow(out: ItFile, cursor: _Cursor, tokens, line: int) -> None:
    if len(tokens) != 4:
        raise ItFileError("expected 'arrow <name> <src> <dst>'", line)
    name, src_name, dst_name = tokens[1], tokens[2], tokens[3]
    _check_fresh(out, name, line)
    if out.is_linear:
        _parse_linear_arrow(out, cursor, name, src_name, dst_name, line)
        return
    if src_name not in out.spaces:
        raise ItFileError(f"unknown space {src_name!r}", line)
    if dst_name not in out.spaces:
        raise ItFileError(f"unknown space {dst_name!r}", line)
    src, dst = out.spaces[src_name], out.spaces[dst_name]
    monad = out.monad
    rows = []
    for i in range(src.card):
        row_line, row_tokens = cursor.take_row(f"row {i} of arrow {name!r}", line)
        try:
            rows.append(_finite_row(monad, row_tokens, dst, row_line))
        except ItFileError as err:
            raise ItFileError(
                f"row {i} of arrow {name!r}: {err.message}", err.line
            ) from None
    try:
        out.arrows[name] = KleisliArrow(monad, src, dst, tuple(rows))
    except MonadValueError as err:
        raise ItFileError(f"arrow {name!r}: {err}", line) from None


def _parse_matrix_block(
    cursor: _Cursor, rows: int, cols: int, what: str, context: str, line: int
):
    values = []
    for i in range(rows):
        row_line, row_tokens = cursor.take_row(f"{what} row {i} of {context}", line)
        if len(row_tokens) != cols:
            raise ItFileError(
                f"{what} row {i} of {context} needs {cols} entries, got {len(row_tokens)}",
                row_line,
            )
        values.append([_parse_float(token, row_line) for token in row_tokens])
    return np.array(values, dtype=float).reshape((rows, cols))


def _parse_linear_arrow(
    out: ItFile, cursor: _Cursor, name: str, src_name: str, dst_name: str, line: int
) -> None:
    if src_name not in out.dims:
        raise ItFileError(f"unknown space {src_name!r}", line)
    if dst_name not in out.dims:
        raise ItFileError(f"unknown space {dst_name!r}", line)
    src_dim, dst_dim = out.dims[src_name], out.dims[dst_name]
    context = f"arrow {name!r}"
    if src_dim > 0:
        header_line, header = cursor.take_row(f"'A' header of {context}", line)
        if header != ["A"]:
            raise ItFileError(f"expected 'A' header for {context}", header_line)
        A = _parse_matrix_block(cursor, dst_dim, src_dim, "A", context, header_line)
    else:
        A = np.zeros((dst_dim, 0))
    header_line, header = cursor.take_row(f"'Sigma' header of {context}", line)
    if header != ["Sigma"]:
        raise ItFileError(f"expected 'Sigma' header for {context}", header_line)
    Sigma = _parse_matrix_block(cursor, dst_dim, dst_dim, "Sigma", context, header_line)
    try:
        out.linear_arrows[name] = LinearIT(src_dim, dst_dim, A, Sigma)
    except LinearError as err:
        raise ItFileError(f"arrow {name!r}: {err}", line) from None


def _parse_utility(out: ItFile, cursor: _Cursor, tokens, line: int) -> None:
    if out.is_linear:
        raise ItFileError("utility tables are for finite categories", line)
    if len(tokens) != 4:
        raise ItFileError("expected 'utility <name> <signals> <decisions>'", line)
    name, sig_name, dec_name = tokens[1], tokens[2], tokens[3]
    _check_fresh(out, name, line)
    if sig_name not in out.spaces:
        raise ItFileError(f"unknown space {sig_name!r}", line)
    if dec_name not in out.spaces:
        raise ItFileError(f"unknown space {dec_name!r}", line)
    signals, decisions = out.spaces[sig_name], out.spaces[dec_name]
    table = []
    for i in range(signals.card):
        row_line, row_tokens = cursor.take_row(f"row {i} of utility {name!r}", line)
        if len(row_tokens) != decisions.card:
            raise ItFileError(
                f"row {i} of utility {name!r} needs {decisions.card} entries, "
                f"got {len(row_tokens)}",
                row_line,
            )
        table.append(tuple(_parse_fraction(token, row_line) for token in row_tokens))
    out.utilities[name] = UtilityDecl(sig_name, dec_name, tuple(table))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _space_names(out: ItFile) -> dict:
    names = {TERMINAL: "Z"}
    for name, sp in out.spaces.items():
        names.setdefault(sp, name)
    return names


def _render_finite_row(monad: Monad, row, dst: FiniteSpace) -> str:
    if monad is IDENTITY:
        return str(row)
    if monad is POWERSET:
        return " ".join("1" if i in row else "0" for i in dst.indices())
    return " ".join(str(v) for v in row)


def serialize_it_file(out: ItFile) -> str:
    """Render a parsed file back to text that reparses to an equal value."""
    lines = [f"category {out.category}"]
    if out.is_linear:
        for name, dim in out.dims.items():
            if name != "Z":
                lines.append(f"space {name} {dim}")
        dim_names: dict[int, str] = {}
        for name, dim in out.dims.items():
            dim_names.setdefault(dim, name)
        for name, arr in out.linear_arrows.items():
            src_name = dim_names[arr.src_dim]
            dst_name = dim_names[arr.dst_dim]
            lines.append(f"arrow {name} {src_name} {dst_name}")
            if arr.src_dim > 0:
                lines.append("A")
                for row in arr.A:
                    lines.append(" ".join(repr(float(v)) for v in row))
            lines.append("Sigma")
            for row in arr.Sigma:
                lines.append(" ".join(repr(float(v)) for v in row))
        return "\n".join(lines) + "\n"

    for name in out.spaces:
        if name != "Z" and name not in out.products:
            lines.append(f"object {name} {out.spaces[name].card}")
    for name, (left, right) in out.products.items():
        lines.append(f"product {name} {left} {right}")
    names = _space_names(out)
    monad = out.monad
    for name, arr in out.arrows.items():
        src_name, dst_name = names[arr.src], names[arr.dst]
        lines.append(f"arrow {name} {src_name} {dst_name}")
        for row in arr.rows:
            lines.append(_render_finite_row(monad, row, arr.dst))
    for name, decl in out.utilities.items():
        lines.append(f"utility {name} {decl.signals} {decl.decisions}")
        for row in decl.table:
            lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"
