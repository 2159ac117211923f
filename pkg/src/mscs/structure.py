"""Structure functions: expression trees, evaluators, and the textual DSL.

The three basic building blocks are series (minimum), parallel (maximum),
and k-out-of-n (ascending order statistic). Expression trees compose them
over 1-based component references and are immutable after construction.

DSL grammar::

    expr := "c" INT
          | "series" "(" expr ("," expr)+ ")"
          | "parallel" "(" expr ("," expr)+ ")"
          | "koon" "(" INT ";" expr ("," expr)* ")"

Whitespace is insignificant; INT is a decimal integer >= 1. Series and
parallel take at least two children (a singleton is just the bare
component); koon takes at least one.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .errors import (
    ArityMismatchError,
    EmptyVectorError,
    InvalidKError,
    ParseError,
)


class StructureExpr:
    """Base class for structure-function expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Component(StructureExpr):
    index: int  # 1-based

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ArityMismatchError(
                f"component index must be >= 1, got {self.index}"
            )


@dataclass(frozen=True)
class Series(StructureExpr):
    children: tuple[StructureExpr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        # at least two: singletons are written as the bare component, which
        # keeps parse/format a bijection
        if len(self.children) < 2:
            raise EmptyVectorError("series requires at least two children")


@dataclass(frozen=True)
class Parallel(StructureExpr):
    children: tuple[StructureExpr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise EmptyVectorError("parallel requires at least two children")


@dataclass(frozen=True)
class KOutOfN(StructureExpr):
    k: int
    children: tuple[StructureExpr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 1:
            raise EmptyVectorError("koon requires at least one child")
        if not 1 <= self.k <= len(self.children):
            raise InvalidKError(
                f"k={self.k} outside 1..{len(self.children)} children"
            )


def component(index: int) -> Component:
    return Component(index)


def series(*children: StructureExpr) -> Series:
    return Series(tuple(children))


def parallel(*children: StructureExpr) -> Parallel:
    return Parallel(tuple(children))


def k_out_of_n(k: int, *children: StructureExpr) -> KOutOfN:
    return KOutOfN(k, tuple(children))


#: A structure function: an expression tree, or any callable mapping a state
#: vector to a system level.
StructureFunction = Union[StructureExpr, Callable[[Sequence[int]], int]]

#: The two arrangements with product closed forms.
Kind = Literal["series", "parallel"]


def eval_series(x: Sequence[int]) -> int:
    """System level of a series arrangement: the minimum component level."""
    if len(x) == 0:
        raise EmptyVectorError("state vector must be nonempty")
    return min(x)


def eval_parallel(x: Sequence[int]) -> int:
    """System level of a parallel arrangement: the maximum component level."""
    if len(x) == 0:
        raise EmptyVectorError("state vector must be nonempty")
    return max(x)


def eval_k_out_of_n(k: int, x: Sequence[int]) -> int:
    """The (n-k+1)-th smallest entry of ``x`` (ascending order statistic).

    k=1 reduces to parallel, k=n to series. Ties are resolved naturally by
    the ascending sort.
    """
    if len(x) == 0:
        raise EmptyVectorError("state vector must be nonempty")
    if not 1 <= k <= len(x):
        raise InvalidKError(f"k={k} outside 1..{len(x)}")
    return sorted(x)[len(x) - k]


def kind_evaluator(kind: Kind) -> Callable[[Sequence[int]], int]:
    if kind == "series":
        return eval_series
    if kind == "parallel":
        return eval_parallel
    raise ValueError(f"kind must be 'series' or 'parallel', got {kind!r}")


def arity(expr: StructureExpr) -> int:
    """Largest 1-based component index referenced by ``expr``."""
    if isinstance(expr, Component):
        return expr.index
    if isinstance(expr, (Series, Parallel, KOutOfN)):
        return max(arity(c) for c in expr.children)
    raise TypeError(f"not a structure expression: {expr!r}")


def eval_expr(expr: StructureExpr, x: Sequence[int]) -> int:
    """Recursively evaluate an expression on a state vector.

    ``x`` must cover every referenced component; extra trailing components
    are permitted (and ignored) so that an expression can be checked inside
    a larger declared component set.
    """
    if len(x) < arity(expr):
        raise ArityMismatchError(
            f"vector of length {len(x)} does not cover component "
            f"indices up to {arity(expr)}"
        )
    return _eval(expr, x)


def _eval(expr: StructureExpr, x: Sequence[int]) -> int:
    if isinstance(expr, Component):
        return x[expr.index - 1]
    if isinstance(expr, Series):
        return min(_eval(c, x) for c in expr.children)
    if isinstance(expr, Parallel):
        return max(_eval(c, x) for c in expr.children)
    if isinstance(expr, KOutOfN):
        vals = sorted(_eval(c, x) for c in expr.children)
        return vals[len(vals) - expr.k]
    raise TypeError(f"not a structure expression: {expr!r}")


def eval_expr_batch(expr: StructureExpr, states: np.ndarray) -> np.ndarray:
    """Vectorized :func:`eval_expr` over the rows of a 2-D level matrix."""
    states = np.asarray(states)
    if states.ndim != 2:
        raise ArityMismatchError("states must be a 2-D matrix of levels")
    if states.shape[1] < arity(expr):
        raise ArityMismatchError(
            f"matrix width {states.shape[1]} does not cover component "
            f"indices up to {arity(expr)}"
        )
    return _eval_batch(expr, states)


def _eval_batch(expr: StructureExpr, states: np.ndarray) -> np.ndarray:
    if isinstance(expr, Component):
        return states[:, expr.index - 1]
    if isinstance(expr, Series):
        return np.minimum.reduce([_eval_batch(c, states) for c in expr.children])
    if isinstance(expr, Parallel):
        return np.maximum.reduce([_eval_batch(c, states) for c in expr.children])
    if isinstance(expr, KOutOfN):
        vals = np.stack([_eval_batch(c, states) for c in expr.children], axis=1)
        pick = vals.shape[1] - expr.k
        return np.partition(vals, pick, axis=1)[:, pick]
    raise TypeError(f"not a structure expression: {expr!r}")


def as_level_function(
    structure: StructureFunction, n_components: int
) -> Callable[[Sequence[int]], int]:
    """View any structure function as a plain vector-to-level callable."""
    if isinstance(structure, StructureExpr):
        if n_components < arity(structure):
            raise ArityMismatchError(
                f"{n_components} components do not cover indices up to "
                f"{arity(structure)}"
            )
        return lambda x: _eval(structure, x)
    if callable(structure):
        return structure
    raise TypeError(f"not a structure function: {structure!r}")


def format_expr(expr: StructureExpr) -> str:
    """Canonical DSL text; round-trips through :func:`parse_expr`."""
    if isinstance(expr, Component):
        return f"c{expr.index}"
    if isinstance(expr, Series):
        return f"series({', '.join(format_expr(c) for c in expr.children)})"
    if isinstance(expr, Parallel):
        return f"parallel({', '.join(format_expr(c) for c in expr.children)})"
    if isinstance(expr, KOutOfN):
        inner = ", ".join(format_expr(c) for c in expr.children)
        return f"koon({expr.k}; {inner})"
    raise TypeError(f"not a structure expression: {expr!r}")


# --- DSL parser (recursive descent over a token list) ---

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<name>[A-Za-z][A-Za-z0-9]*)
  | (?P<int>[0-9]+)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
  | (?P<semi>;)
    """,
    re.VERBOSE,
)

_COMPONENT_RE = re.compile(r"^c([0-9]+)$")


@dataclass
class _Token:
    kind: str
    text: str
    offset: int  # 0-based character offset


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _byte_offset(self, char_offset: int) -> int:
        # 1-based byte offset of the character position
        return len(self.text[:char_offset].encode("utf-8")) + 1

    def _fail(self, message: str, char_offset: int) -> ParseError:
        return ParseError(message, self._byte_offset(char_offset))

    def _tokenize(self, text: str) -> list[_Token]:
        tokens: list[_Token] = []
        i = 0
        while i < len(text):
            m = _TOKEN_RE.match(text, i)
            if m is None:
                raise self._fail(f"unexpected character {text[i]!r}", i)
            if m.lastgroup != "ws":
                tokens.append(_Token(m.lastgroup, m.group(), i))
            i = m.end()
        tokens.append(_Token("eof", "", len(text)))
        return tokens

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, kind: str, what: str) -> _Token:
        tok = self._peek()
        if tok.kind != kind:
            raise self._fail(f"expected {what}", tok.offset)
        return self._advance()

    def parse(self) -> StructureExpr:
        expr = self._expr()
        tail = self._peek()
        if tail.kind != "eof":
            raise self._fail("expected end of input", tail.offset)
        return expr

    def _expr(self) -> StructureExpr:
        tok = self._peek()
        if tok.kind != "name":
            raise self._fail(
                "expected 'series', 'parallel', 'koon', or a component "
                "like 'c1'",
                tok.offset,
            )
        self._advance()
        if tok.text in ("series", "parallel"):
            self._expect("lparen", "'('")
            children = [self._expr()]
            comma = self._peek()
            if comma.kind != "comma":
                raise self._fail(
                    f"expected ',' ({tok.text} needs at least two children)",
                    comma.offset,
                )
            while self._peek().kind == "comma":
                self._advance()
                children.append(self._expr())
            self._expect("rparen", "')' or ','")
            node = Series if tok.text == "series" else Parallel
            return node(tuple(children))
        if tok.text == "koon":
            self._expect("lparen", "'('")
            k = self._positive_int()
            self._expect("semi", "';'")
            children = [self._expr()]
            while self._peek().kind == "comma":
                self._advance()
                children.append(self._expr())
            self._expect("rparen", "')' or ','")
            if k > len(children):
                raise InvalidKError(
                    f"k={k} exceeds the {len(children)} children given"
                )
            return KOutOfN(k, tuple(children))
        m = _COMPONENT_RE.match(tok.text)
        if m:
            index = int(m.group(1))
            if index < 1:
                raise self._fail("component index must be >= 1", tok.offset)
            return Component(index)
        raise self._fail(
            f"unknown name {tok.text!r}: expected 'series', 'parallel', "
            "'koon', or a component like 'c1'",
            tok.offset,
        )

    def _positive_int(self) -> int:
        tok = self._expect("int", "a positive integer")
        value = int(tok.text)
        if value < 1:
            raise self._fail("expected an integer >= 1", tok.offset)
        return value


def parse_expr(text: str) -> StructureExpr:
    """Parse DSL text into an expression tree.

    Raises :class:`ParseError` with a 1-based byte offset on malformed
    input, and :class:`InvalidKError` when a koon's k exceeds its child
    count.
    """
    return _Parser(text).parse()
