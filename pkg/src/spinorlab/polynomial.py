"""
Polynomial metrics: the text grammar, its printer, and exact jets.

A metric file lists entries ``g[a][b] = <polynomial in x1..xn>``, one per
line, with indices from 0. Polynomials use ``+ - * ^``, parentheses, decimal
or rational constants, and complex literals written ``(re,im)``. Division is
only allowed by a nonzero constant. Lines starting with ``#`` are comments and
an optional ``m = <int>`` line fixes the dimension; unlisted entries are zero
and each off-diagonal entry may be given once or twice (consistently).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from logging import Logger, getLogger
from math import factorial
from typing import Any, Iterator

import numpy as np
import sympy

from spinorlab.definitions import ArrayT, Dictionary, JsonValueT
from spinorlab.exceptions import AsymmetricEntry, DegenerateMetric, ParseError, SchemaError, UnsupportedDimension

logger: Logger = getLogger(__name__)

#: Highest derivative order carried by a :class:`MetricJet`.
JET_ORDER = 3

_TOKEN = re.compile(
    r"(?P<space>[ \t]+)"
    r"|(?P<number>\d+(?:\.\d*)?|\.\d+)"
    r"|(?P<variable>x(?P<index>\d+))"
    r"|(?P<op>[-+*/^(),])"
)


def coordinates(n: int) -> tuple[sympy.Symbol, ...]:
    """The coordinate symbols ``x1..xn``."""
    return sympy.symbols(f"x1:{n + 1}")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    column: int


class _ExpressionParser:
    """Recursive descent over one polynomial; columns are 1-based within ``text``."""

    def __init__(self, text: str, line: int, offset: int):
        self.text = text
        self.line = line
        self.offset = offset
        self.tokens = list(self._tokenize())
        self.position = 0

    def _error(self, message: str, column: int) -> ParseError:
        return ParseError(message, line=self.line, column=column + self.offset)

    def _tokenize(self) -> Iterator[_Token]:
        column = 0
        while column < len(self.text):
            match = _TOKEN.match(self.text, column)
            if match is None:
                raise self._error(f"unexpected character {self.text[column]!r}", column + 1)
            kind = match.lastgroup if match.lastgroup != "index" else "variable"
            if kind != "space":
                yield _Token(kind or "op", match.group(), column + 1)
            column = match.end()

    def _peek(self) -> _Token | None:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def _next(self, expected: str | None = None) -> _Token:
        token = self._peek()
        if token is None:
            raise self._error("unexpected end of expression", len(self.text) + 1)
        if expected is not None and token.text != expected:
            raise self._error(f"expected {expected!r}; got {token.text!r}", token.column)
        self.position += 1
        return token

    def parse(self) -> sympy.Expr:
        if not self.tokens:
            raise self._error("empty expression", 1)
        value = self._sum()
        token = self._peek()
        if token is not None:
            raise self._error(f"unexpected {token.text!r}", token.column)
        return value

    def _sum(self) -> sympy.Expr:
        value = self._product()
        while (token := self._peek()) is not None and token.text in "+-":
            self._next()
            term = self._product()
            value = value + term if token.text == "+" else value - term
        return value

    def _product(self) -> sympy.Expr:
        value = self._unary()
        while (token := self._peek()) is not None and token.text in "*/":
            self._next()
            factor = self._unary()
            if token.text == "*":
                value = value * factor
                continue
            if not factor.is_number:
                raise self._error("division is only allowed by a constant", token.column)
            if factor == 0:
                raise self._error("division by zero", token.column)
            value = value / factor
        return value

    def _power(self) -> sympy.Expr:
        base = self._atom()
        token = self._peek()
        if token is None or token.text != "^":
            return base
        self._next()
        exponent = self._peek()
        if exponent is None or exponent.kind != "number" or not exponent.text.isdigit():
            column = exponent.column if exponent is not None else len(self.text) + 1
            raise self._error("exponent must be a non-negative integer literal", column)
        self._next()
        return base ** int(exponent.text)  # type: ignore[no-any-return]

    def _unary(self) -> sympy.Expr:
        token = self._peek()
        if token is not None and token.text in "+-":
            self._next()
            value = self._unary()
            return -value if token.text == "-" else value
        return self._power()

    def _atom(self) -> sympy.Expr:
        token = self._next()
        if token.kind == "number":
            return sympy.Rational(token.text)
        if token.kind == "variable":
            index = int(token.text[1:])
            if index < 1:
                raise self._error("coordinates are numbered from x1", token.column)
            return sympy.Symbol(token.text)
        if token.text == "(":
            start = self.position
            inner = self._sum()
            if (comma := self._peek()) is not None and comma.text == ",":
                if not inner.is_number:
                    raise self._error("complex literal parts must be constants", self.tokens[start].column)
                self._next()
                imaginary = self._sum()
                if not imaginary.is_number:
                    raise self._error("complex literal parts must be constants", comma.column)
                inner = inner + sympy.I * imaginary
            self._next(")")
            return inner
        raise self._error(f"unexpected {token.text!r}", token.column)


_ENTRY = re.compile(r"^\s*g\s*\[\s*(\d+)\s*\]\s*\[\s*(\d+)\s*\]\s*=")
_HEADER = re.compile(r"^\s*m\s*=\s*(\d+)\s*$")


def parse_polynomial(text: str, line: int = 1, offset: int = 0) -> sympy.Expr:
    """
    Parse one polynomial of the metric grammar into an expanded sympy expression.

    >>> parse_polynomial("2*x4^2 + (1,-1/2)") == 2 * sympy.Symbol("x4") ** 2 + 1 - sympy.I / 2
    True

    :raises ParseError: the text is not a polynomial of the grammar
    """
    return sympy.expand(_ExpressionParser(text, line, offset).parse())


class PolynomialMetric:
    """
    Symmetric matrix of polynomials in ``n = 2m`` complex coordinates.

    :param m: half the dimension
    :param entries: mapping ``(a, b) -> polynomial``; the symmetric completion is taken
    :raises AsymmetricEntry: ``(a, b)`` and ``(b, a)`` are both given and differ
    """

    def __init__(self, m: int, entries: dict[tuple[int, int], Any]):
        if m < 1:
            raise UnsupportedDimension(f"m must be positive; got {m}")
        self.m = m
        self.n = 2 * m
        self.symbols = coordinates(self.n)
        known = set(self.symbols)
        table: dict[tuple[int, int], sympy.Expr] = {}
        for (a, b), value in entries.items():
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise SchemaError(f"entry g[{a}][{b}] is outside a {self.n}-dimensional metric")
            expr = sympy.expand(sympy.sympify(value))
            stray = expr.free_symbols - known
            if stray:
                raise SchemaError(f"entry g[{a}][{b}] uses unknown symbols {sorted(map(str, stray))}")
            key = (min(a, b), max(a, b))
            if key in table and sympy.expand(table[key] - expr) != 0:
                raise AsymmetricEntry(f"g[{a}][{b}] = {expr} disagrees with g[{b}][{a}] = {table[key]}")
            table[key] = expr
        self.entries = {key: value for key, value in table.items() if value != 0}

    def __repr__(self) -> str:
        return f"PolynomialMetric(m={self.m}, entries={len(self.entries)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolynomialMetric):
            return NotImplemented
        return self.m == other.m and self.entries.keys() == other.entries.keys() and all(
            sympy.expand(self.entries[key] - other.entries[key]) == 0 for key in self.entries
        )

    def __hash__(self) -> int:
        return hash((self.m, frozenset(self.entries)))

    def entry(self, a: int, b: int) -> sympy.Expr:
        return self.entries.get((min(a, b), max(a, b)), sympy.Integer(0))

    def matrix(self) -> sympy.Matrix:
        return sympy.Matrix(self.n, self.n, lambda a, b: self.entry(a, b))

    def scaled(self, factor: Any) -> PolynomialMetric:
        """The metric ``factor * g`` for a polynomial ``factor``."""
        factor = sympy.sympify(factor)
        return PolynomialMetric(self.m, {key: factor * value for key, value in self.entries.items()})

    @cached_property
    def _terms(self) -> dict[tuple[int, int], tuple[ArrayT, ArrayT]]:
        out = {}
        for key, value in self.entries.items():
            poly = sympy.Poly(value, *self.symbols)
            terms = poly.terms()
            exponents = np.array([monomial for monomial, _ in terms], dtype=np.int64).reshape(len(terms), self.n)
            coefficients = np.array([complex(coefficient) for _, coefficient in terms], dtype=np.complex128)
            out[key] = (exponents, coefficients)
        return out

    def jet(self, point: Any, order: int = JET_ORDER) -> MetricJet:
        """Exact derivatives of every entry up to ``order`` at ``point``."""
        return MetricJet.at(self, point, order)

    def evaluate(self, point: Any) -> ArrayT:
        return self.jet(point, 0).g

    def to_text(self) -> str:
        return format_polynomial_metric(self)

    def to_json(self) -> JsonValueT:
        return {
            "m": self.m,
            "entries": [{"a": a, "b": b, "poly": format_polynomial(value)} for (a, b), value in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, data: Any) -> PolynomialMetric:
        """
        :raises SchemaError: the document lacks ``m`` or well-formed ``entries``
        """
        try:
            m = int(data["m"])
            rows = [(int(row["a"]), int(row["b"]), str(row["poly"])) for row in data["entries"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"malformed metric document: {exc}") from exc
        entries: dict[tuple[int, int], sympy.Expr] = {}
        for number, (a, b, text) in enumerate(rows, start=1):
            _merge(entries, a, b, parse_polynomial(text, line=number), number)
        return cls(m, entries)


def _merge(entries: dict[tuple[int, int], sympy.Expr], a: int, b: int, value: sympy.Expr, line: int) -> None:
    if (a, b) in entries:
        raise ParseError(f"g[{a}][{b}] is given twice", line=line, column=1)
    if (b, a) in entries and sympy.expand(entries[(b, a)] - value) != 0:
        raise AsymmetricEntry(f"g[{a}][{b}] on line {line} disagrees with g[{b}][{a}]")
    entries[(a, b)] = value


def parse_polynomial_metric(text: str, m: int | None = None) -> PolynomialMetric:
    """
    Parse the metric text grammar.

    Without an ``m = ...`` header (or the ``m`` argument) the dimension is the
    smallest even number covering every index and coordinate.

    >>> parse_polynomial_metric("g[0][1] = 1\\ng[2][3] = 1").n
    4

    :raises ParseError: malformed line, with its line and column
    :raises AsymmetricEntry: ``g[a][b]`` and ``g[b][a]`` disagree
    """
    entries: dict[tuple[int, int], sympy.Expr] = {}
    header: int | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if (found := _HEADER.match(line)) is not None:
            header = int(found.group(1))
            continue
        found = _ENTRY.match(line)
        if found is None:
            column = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'g[a][b] = <polynomial>' or 'm = <int>'", line=number, column=column)
        a, b = int(found.group(1)), int(found.group(2))
        value = parse_polynomial(line[found.end() :], line=number, offset=found.end())
        _merge(entries, a, b, value, number)
    if m is None:
        m = header
    if m is None:
        extent = max([max(a, b) + 1 for a, b in entries] + [0])
        for value in entries.values():
            extent = max([extent] + [int(str(s)[1:]) for s in value.free_symbols])
        m = max(1, (extent + 1) // 2)
    logger.debug("Parsed polynomial metric with m=%d and %d entries", m, len(entries))
    return PolynomialMetric(m, entries)


def _format_number(value: sympy.Expr) -> str:
    value = sympy.nsimplify(value) if isinstance(value, sympy.Float) else value
    return str(value).replace(" ", "")


def format_coefficient(value: Any) -> str:
    """A constant in grammar form; non-real constants become ``(re,im)``."""
    value = sympy.sympify(value)
    re_part, im_part = value.as_real_imag()
    if im_part == 0:
        text = _format_number(re_part)
        return f"({text})" if text.startswith("-") or "/" in text else text
    return f"({_format_number(re_part)},{_format_number(im_part)})"


def format_polynomial(value: Any) -> str:
    """
    Print an expression in the metric grammar.

    >>> format_polynomial(parse_polynomial("x1*(x2 + 2)^2"))
    'x1*x2^2 + 4*x1*x2 + 4*x1'
    """
    expr = sympy.expand(sympy.sympify(value))
    if expr == 0:
        return "0"
    symbols = sorted(expr.free_symbols, key=lambda s: int(str(s)[1:]))
    if not symbols:
        return format_coefficient(expr)
    terms = []
    for monomial, coefficient in sympy.Poly(expr, *symbols).terms():
        factors = [
            str(symbol) if power == 1 else f"{symbol}^{power}" for symbol, power in zip(symbols, monomial) if power
        ]
        if not factors:
            terms.append(format_coefficient(coefficient))
        elif coefficient == 1:
            terms.append("*".join(factors))
        else:
            terms.append("*".join([format_coefficient(coefficient)] + factors))
    return " + ".join(terms)


def format_polynomial_metric(metric: PolynomialMetric) -> str:
    """The text form of ``metric``; parsing it gives back an equal metric."""
    lines = [f"m = {metric.m}"]
    lines += [f"g[{a}][{b}] = {format_polynomial(value)}" for (a, b), value in sorted(metric.entries.items())]
    return "\n".join(lines) + "\n"


def _derivative_values(exponents: ArrayT, coefficients: ArrayT, point: ArrayT, orders: ArrayT) -> complex:
    """``d^orders`` of a polynomial given by its terms, evaluated at ``point``."""
    remaining = exponents - orders
    alive = np.all(remaining >= 0, axis=1)
    if not np.any(alive):
        return 0j
    falling = np.ones(int(np.count_nonzero(alive)))
    for k in np.nonzero(orders)[0]:
        falling *= np.array([factorial(e) // factorial(e - orders[k]) for e in exponents[alive, k]], dtype=float)
    powers = np.prod(point ** remaining[alive], axis=1)
    return complex(np.sum(coefficients[alive] * falling * powers))


@dataclass(frozen=True)
class MetricJet:
    """
    Metric and its partial derivatives at one point.

    ``dg[c, a, b] = d_c g_ab``, ``d2g[c, d, a, b] = d_c d_d g_ab`` and
    ``d3g[c, d, e, a, b]`` likewise; absent orders are ``None``.
    """

    point: ArrayT
    g: ArrayT
    dg: ArrayT | None = None
    d2g: ArrayT | None = None
    d3g: ArrayT | None = None

    @classmethod
    def at(cls, metric: PolynomialMetric, point: Any, order: int = JET_ORDER) -> MetricJet:
        n = metric.n
        x = np.asarray(point, dtype=np.complex128).reshape(-1)
        if x.shape != (n,):
            raise SchemaError(f"point must have {n} coordinates; got {x.shape[0]}")
        arrays = [np.zeros((n,) * (k + 2), dtype=np.complex128) for k in range(order + 1)]
        for (a, b), (exponents, coefficients) in metric._terms.items():
            for k in range(order + 1):
                for slots in product(range(n), repeat=k):
                    orders = np.bincount(np.array(slots, dtype=np.int64), minlength=n) if k else np.zeros(n, dtype=np.int64)
                    value = _derivative_values(exponents, coefficients, x, orders)
                    arrays[k][slots + (a, b)] = value
                    arrays[k][slots + (b, a)] = value
        jet = cls(x, *arrays)
        scale = float(np.linalg.norm(jet.g)) or 1.0
        if abs(np.linalg.det(jet.g)) <= 1e-12 * scale**n:
            raise DegenerateMetric(f"metric is degenerate at {x}")
        return jet

    @cached_property
    def ginv(self) -> ArrayT:
        return np.linalg.inv(self.g)  # type: ignore[no-any-return]

    def symmetry_residual(self) -> Dictionary:
        """Residuals of the symmetry of mixed partials."""
        out = {"g": float(np.linalg.norm(self.g - self.g.T))}
        if self.d2g is not None:
            out["d2g"] = float(np.linalg.norm(self.d2g - self.d2g.transpose(1, 0, 2, 3)))
        if self.d3g is not None:
            out["d3g"] = max(
                float(np.linalg.norm(self.d3g - self.d3g.transpose(p + (3, 4))))
                for p in ((1, 0, 2), (0, 2, 1), (2, 1, 0))
            )
        return Dictionary(out)


@dataclass(frozen=True)
class ScalarJet:
    """Value, gradient and Hessian of a polynomial function at a point."""

    value: complex
    gradient: ArrayT
    hessian: ArrayT

    @classmethod
    def at(cls, expr: Any, n: int, point: Any) -> ScalarJet:
        symbols = coordinates(n)
        expr = sympy.expand(sympy.sympify(expr))
        stray = expr.free_symbols - set(symbols)
        if stray:
            raise SchemaError(f"function uses unknown symbols {sorted(map(str, stray))}")
        x = np.asarray(point, dtype=np.complex128).reshape(-1)
        poly = sympy.Poly(expr, *symbols)
        terms = poly.terms()
        exponents = np.array([monomial for monomial, _ in terms], dtype=np.int64).reshape(len(terms), n)
        coefficients = np.array([complex(c) for _, c in terms], dtype=np.complex128)
        unit = np.eye(n, dtype=np.int64)
        value = _derivative_values(exponents, coefficients, x, np.zeros(n, dtype=np.int64))
        gradient = np.array([_derivative_values(exponents, coefficients, x, unit[k]) for k in range(n)])
        hessian = np.array(
            [[_derivative_values(exponents, coefficients, x, unit[k] + unit[j]) for j in range(n)] for k in range(n)]
        )
        return cls(value, gradient, hessian)
