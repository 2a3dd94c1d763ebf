"""Sparse multivariate polynomial arithmetic over Q.

Variables are positional (``x0``, ``x1``, ...); exponent vectors are dense
tuples with one entry per variable.  Coefficients are exact rationals
(`fractions.Fraction`); nothing in this package touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Mapping, Sequence, Union

from .errors import ToolError

__all__ = [
    "Monomial",
    "MultiPoly",
    "ParseError",
    "PolyringError",
    "dehomogenize",
    "monomial_degree",
    "monomial_div",
    "monomial_divides",
    "monomial_lcm",
    "monomial_mul",
    "monomials_of_degree",
    "parse_poly",
    "restrict_to_hyperplane",
]

#: Dense exponent vector, one nonnegative integer per variable.
Monomial = tuple

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)


class PolyringError(ToolError):
    code = "polyring.invalid"


class ParseError(PolyringError):
    """Malformed polynomial text; `position` is a 0-based offset into it."""

    code = "polyring.parse"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """Exponent vector of x^a / x^b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(arity: int, degree: int) -> list[Monomial]:
    """All exponent vectors of the given total degree, descending lex order."""
    if arity < 1 or degree < 0:
        raise PolyringError(f"bad arity/degree pair ({arity}, {degree})")
    out: list[Monomial] = []

    def emit(prefix: tuple, remaining_vars: int, remaining_deg: int) -> None:
        if remaining_vars == 1:
            out.append(prefix + (remaining_deg,))
            return
        for e in range(remaining_deg, -1, -1):
            emit(prefix + (e,), remaining_vars - 1, remaining_deg - e)

    emit((), arity, degree)
    return out


def _coerce_scalar(value) -> Fraction:
    if isinstance(value, float):
        raise PolyringError("floating-point coefficients are not allowed")
    return Fraction(value)


class MultiPoly:
    """Immutable sparse polynomial in Q[x0, ..., x{arity-1}].

    Terms map exponent tuples to nonzero Fractions.  Instances are never
    mutated after construction; all operations return new polynomials.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms=()):
        if not isinstance(arity, int) or arity < 1:
            raise PolyringError(f"arity must be a positive integer, got {arity!r}")
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != arity:
                raise PolyringError(
                    f"exponent vector {mono!r} has length {len(mono)}, expected {arity}"
                )
            if any(not isinstance(e, int) or e < 0 for e in mono):
                raise PolyringError(f"exponents must be nonnegative integers: {mono!r}")
            c = _coerce_scalar(coeff)
            if c:
                acc[mono] = acc.get(mono, _ZERO) + c
        self.arity = arity
        self.terms = {m: c for m, c in acc.items() if c}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "MultiPoly":
        return cls(arity)

    @classmethod
    def constant(cls, arity: int, value: Scalar) -> "MultiPoly":
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity: int, index: int) -> "MultiPoly":
        if not 0 <= index < arity:
            raise PolyringError(f"variable index {index} out of range for arity {arity}")
        mono = tuple(1 if i == index else 0 for i in range(arity))
        return cls(arity, {mono: 1})

    # -- structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(mono), _ZERO)

    def terms_sorted(self) -> list:
        """(monomial, coefficient) pairs in canonical print order."""
        return [
            (m, self.terms[m])
            for m in sorted(self.terms, key=lambda m: (sum(m), m), reverse=True)
        ]

    def __iter__(self) -> Iterator:
        return iter(self.terms_sorted())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------

    def _check_ring(self, other: "MultiPoly") -> None:
        if self.arity != other.arity:
            raise PolyringError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_ring(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            v = acc.get(m, _ZERO) + c
            if v:
                acc[m] = v
            elif m in acc:
                del acc[m]
        out = MultiPoly.zero(self.arity)
        out.terms = acc
        return out

    def __radd__(self, other):
        if other == 0:  # lets sum() work
            return self
        return NotImplemented

    def __neg__(self):
        out = MultiPoly.zero(self.arity)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check_ring(other)
            acc: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = monomial_mul(m1, m2)
                    v = acc.get(m, _ZERO) + c1 * c2
                    if v:
                        acc[m] = v
                    elif m in acc:
                        del acc[m]
            out = MultiPoly.zero(self.arity)
            out.terms = acc
            return out
        c = _coerce_scalar(other)
        if not c:
            return MultiPoly.zero(self.arity)
        out = MultiPoly.zero(self.arity)
        out.terms = {m: v * c for m, v in self.terms.items()}
        return out

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise PolyringError(f"exponent must be a nonnegative integer, got {exponent!r}")
        result = MultiPoly.constant(self.arity, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def partial_derivative(self, index: int) -> "MultiPoly":
        if not 0 <= index < self.arity:
            raise PolyringError(f"variable index {index} out of range for arity {self.arity}")
        acc = {}
        for m, c in self.terms.items():
            e = m[index]
            if e:
                dm = m[:index] + (e - 1,) + m[index + 1 :]
                acc[dm] = acc.get(dm, _ZERO) + c * e
        return MultiPoly(self.arity, acc)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.arity:
            raise PolyringError(
                f"point has length {len(point)}, expected {self.arity}"
            )
        coords = [_coerce_scalar(v) for v in point]
        total = _ZERO
        for m, c in self.terms.items():
            v = c
            for x, e in zip(coords, m):
                if e:
                    v *= x**e
            total += v
        return total

    # -- printing -----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.terms_sorted():
            atoms = [
                f"x{i}" if e == 1 else f"x{i}^{e}"
                for i, e in enumerate(mono)
                if e
            ]
            mag = abs(coeff)
            if not atoms:
                body = str(mag)
            elif mag == 1:
                body = "*".join(atoms)
            else:
                body = "*".join([str(mag), *atoms])
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self.arity}: {self})"


# -- parsing ---------------------------------------------------------

_TOKEN = re.compile(r"(?P<int>\d+)|x(?P<index>\d+)|(?P<op>[+\-*/^])")
_WS = re.compile(r"\s+")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        ws = _WS.match(text, pos)
        if ws:
            pos = ws.end()
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "int":
            tokens.append(("int", int(m.group("int")), pos))
        elif m.lastgroup == "index":
            tokens.append(("var", int(m.group("index")), pos))
        else:
            tokens.append((m.group("op"), None, pos))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser for the fixed grammar.

    expression := ['+'|'-'] term (('+'|'-') term)*
    term       := [coeff] ('*'? atom)*
    atom       := var ('^' uint)?
    coeff      := uint | uint '/' uint(positive)
    """

    def __init__(self, text: str, arity: int):
        self.text = text
        self.arity = arity
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expression(self) -> MultiPoly:
        if not self.tokens:
            raise ParseError("empty polynomial text", 0)
        poly = MultiPoly.zero(self.arity)
        sign = 1
        kind, _, _ = self.peek()
        if kind in ("+", "-"):
            self.take()
            sign = -1 if kind == "-" else 1
        poly = poly + self.term(sign)
        while True:
            kind, _, pos = self.peek()
            if kind is None:
                return poly
            if kind == "+":
                self.take()
                poly = poly + self.term(1)
            elif kind == "-":
                self.take()
                poly = poly + self.term(-1)
            elif kind == "/":
                raise ParseError("division is only allowed inside a rational coefficient", pos)
            else:
                raise ParseError("expected '+' or '-' between terms", pos)

    def term(self, sign: int) -> MultiPoly:
        kind, value, pos = self.peek()
        coeff = Fraction(sign)
        saw_content = False
        if kind == "int":
            self.take()
            numerator = value
            kind2, value2, pos2 = self.peek()
            if kind2 == "/":
                self.take()
                kind3, value3, pos3 = self.peek()
                if kind3 != "int":
                    raise ParseError("expected an integer denominator after '/'", pos3)
                self.take()
                if value3 <= 0:
                    raise ParseError("denominator must be a positive integer", pos3)
                coeff *= Fraction(numerator, value3)
            else:
                coeff *= numerator
            saw_content = True
        exponents = [0] * self.arity
        while True:
            kind, value, pos = self.peek()
            if kind == "*":
                self.take()
                kind, value, pos = self.peek()
                if kind != "var":
                    raise ParseError("expected a variable after '*'", pos)
            elif kind != "var":
                break
            self.take()  # the variable token
            if value >= self.arity:
                raise ParseError(
                    f"variable index {value} out of range for arity {self.arity}", pos
                )
            exp = 1
            kind2, value2, pos2 = self.peek()
            if kind2 == "^":
                self.take()
                kind3, value3, pos3 = self.peek()
                if kind3 != "int":
                    raise ParseError("expected an integer exponent after '^'", pos3)
                self.take()
                exp = value3
            exponents[value] += exp
            saw_content = True
        if not saw_content:
            raise ParseError("expected a term", pos)
        return MultiPoly(self.arity, {tuple(exponents): coeff})


def parse_poly(text: str, arity: int) -> MultiPoly:
    """Parse polynomial text into canonical form.

    The grammar admits integer or rational coefficients ("2", "2/3"), atoms
    ``x<i>`` with optional ``^<uint>``, optional ``*`` separators, and a
    top-level sign.  Parse/print round-trips are exact.
    """
    if not isinstance(arity, int) or arity < 1:
        raise PolyringError(f"arity must be a positive integer, got {arity!r}")
    return _Parser(text, arity).expression()


# -- coordinate operations -------------------------------------------


def restrict_to_hyperplane(p: MultiPoly, hyperplane: MultiPoly, eliminated: int) -> MultiPoly:
    """Substitute the hyperplane's solution for one variable and drop it.

    `hyperplane` must be a nonzero homogeneous linear form with nonzero
    coefficient on the eliminated variable.  Remaining variables are
    renumbered to close the gap, so the result has arity reduced by one.
    Homogeneity of `p` is preserved.
    """
    p._check_ring(hyperplane)
    if not 0 <= eliminated < p.arity:
        raise PolyringError(f"variable index {eliminated} out of range for arity {p.arity}")
    if p.arity < 2:
        raise PolyringError("cannot eliminate the only variable")
    if hyperplane.is_zero or hyperplane.degree != 1 or not hyperplane.is_homogeneous:
        raise PolyringError("hyperplane must be a nonzero homogeneous linear form")
    arity = p.arity
    coeffs = [
        hyperplane.coefficient(tuple(1 if i == j else 0 for i in range(arity)))
        for j in range(arity)
    ]
    ce = coeffs[eliminated]
    if ce == 0:
        raise PolyringError("hyperplane has zero coefficient on the eliminated variable")
    small = arity - 1
    sub_terms = {}
    for i, ci in enumerate(coeffs):
        if i == eliminated or ci == 0:
            continue
        j = i if i < eliminated else i - 1
        sub_terms[tuple(1 if t == j else 0 for t in range(small))] = -ci / ce
    substitution = MultiPoly(small, sub_terms)
    powers = {0: MultiPoly.constant(small, 1)}
    result = MultiPoly.zero(small)
    for mono, coeff in p.terms.items():
        k = mono[eliminated]
        if k not in powers:
            top = max(powers)
            for e in range(top + 1, k + 1):
                powers[e] = powers[e - 1] * substitution
        reduced = mono[:eliminated] + mono[eliminated + 1 :]
        result = result + powers[k] * MultiPoly(small, {reduced: coeff})
    return result


def dehomogenize(p: MultiPoly, chart: int) -> MultiPoly:
    """Set x_chart = 1 and drop it: the affine-chart form of a projective p."""
    if not 0 <= chart < p.arity:
        raise PolyringError(f"variable index {chart} out of range for arity {p.arity}")
    if p.arity < 2:
        raise PolyringError("cannot dehomogenize the only variable")
    acc: dict = {}
    for mono, coeff in p.terms.items():
        reduced = mono[:chart] + mono[chart + 1 :]
        acc[reduced] = acc.get(reduced, _ZERO) + coeff
    return MultiPoly(p.arity - 1, acc)
