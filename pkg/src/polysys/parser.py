"""
Parser for polynomial system files.

Grammar (one equation per line, `#` starts a comment):

    equation := expr ['=' expr]          # missing rhs means "= 0"
    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor (['*'] factor)*   # juxtaposition multiplies: "2 z", "2x"
    factor   := rational ['^' uint] | var ['^' uint]
    var      := 'x' uint | 'x' | 'y' | 'z'   # x, y, z alias x0, x1, x2
    rational := ['-'] digits ['.' digits] ['/' digits]

Decimal literals are exact rationals (3.25 -> 13/4).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

import regex

from src.errors import SystemParseError
from src.polysys.polynomial import Polynomial
from src.polysys.polynomial_system import PolynomialSystem

logger = logging.getLogger(__name__)

_TOKEN_PATTERN = regex.compile(
    r"(?P<space>\s+)"
    r"|(?P<number>\d+(?:\.\d+)?(?:/\d+)?)"
    r"|(?P<var>x\d+|[xyz])"
    r"|(?P<op>[-+*^=])"
)
_ALIASES = {"x": 0, "y": 1, "z": 2}

# A sparse monomial: sorted (variable index, exponent) pairs.
Monomial = Tuple[Tuple[int, int], ...]
SparsePolynomial = Dict[Monomial, Fraction]


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    column: int


def _multiply_monomials(a: Monomial, b: Monomial) -> Monomial:
    merged: Dict[int, int] = dict(a)
    for index, e in b:
        merged[index] = merged.get(index, 0) + e
    return tuple(sorted((i, e) for i, e in merged.items() if e))


class _LineParser:
    """Recursive-descent parser for a single line of the grammar."""

    def __init__(self, text: str, line: int):
        self.line = line
        self.tokens = self._tokenize(text)
        self.position = 0
        self.variables: Set[int] = set()

    def _tokenize(self, text: str) -> List[_Token]:
        tokens = []
        position = 0
        while position < len(text):
            match = _TOKEN_PATTERN.match(text, position)
            if match is None:
                raise SystemParseError(f"unexpected character {text[position]!r}", self.line, position + 1)
            if match.lastgroup != "space":
                tokens.append(_Token(match.lastgroup, match.group(), position + 1))
            position = match.end()
        return tokens

    def _peek(self) -> Optional[_Token]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def _advance(self) -> _Token:
        token = self.tokens[self.position]
        self.position += 1
        return token

    def _error(self, message: str, token: Optional[_Token] = None) -> SystemParseError:
        if token is None:
            token = self._peek()
        if token is None:
            column = (self.tokens[-1].column + len(self.tokens[-1].text)) if self.tokens else 1
            return SystemParseError(f"{message} at end of line", self.line, column)
        return SystemParseError(f"{message}, found {token.text!r}", self.line, token.column)

    def _is_op(self, *ops: str) -> bool:
        token = self._peek()
        return token is not None and token.kind == "op" and token.text in ops

    def parse_equation(self) -> SparsePolynomial:
        if not self.tokens:
            raise self._error("expected an expression")
        lhs = self.parse_expression()
        if self._is_op("="):
            self._advance()
            rhs = self.parse_expression()
            for monomial, coefficient in rhs.items():
                lhs[monomial] = lhs.get(monomial, Fraction(0)) - coefficient
        if self._peek() is not None:
            raise self._error("expected '+', '-', '*' or end of equation")
        return lhs

    def parse_expression(self) -> SparsePolynomial:
        result: SparsePolynomial = {}
        sign = 1
        if self._is_op("+", "-"):
            sign = -1 if self._advance().text == "-" else 1
        while True:
            coefficient, monomial = self.parse_term()
            result[monomial] = result.get(monomial, Fraction(0)) + sign * coefficient
            if not self._is_op("+", "-"):
                return result
            sign = -1 if self._advance().text == "-" else 1

    def _starts_factor(self) -> bool:
        token = self._peek()
        return token is not None and token.kind in ("number", "var")

    def parse_term(self) -> Tuple[Fraction, Monomial]:
        coefficient, monomial = self.parse_factor()
        while True:
            if self._is_op("*"):
                self._advance()
            elif not self._starts_factor():
                return coefficient, monomial
            factor_coefficient, factor_monomial = self.parse_factor()
            coefficient *= factor_coefficient
            monomial = _multiply_monomials(monomial, factor_monomial)

    def parse_factor(self) -> Tuple[Fraction, Monomial]:
        token = self._peek()
        negate = False
        if token is not None and token.kind == "op" and token.text == "-":
            self._advance()
            negate = True
            token = self._peek()
            if token is None or token.kind != "number":
                raise self._error("expected a number after unary '-'")
        if token is None or token.kind not in ("number", "var"):
            raise self._error("expected a number or variable")
        self._advance()
        if token.kind == "number":
            coefficient, monomial = self._parse_rational(token), ()
        else:
            index = _ALIASES[token.text] if token.text in _ALIASES else int(token.text[1:])
            self.variables.add(index)
            coefficient, monomial = Fraction(1), ((index, 1),)
        if self._is_op("^"):
            self._advance()
            exponent = self._parse_exponent()
            coefficient = coefficient ** exponent
            monomial = tuple((i, e * exponent) for i, e in monomial if e * exponent)
        return (-coefficient if negate else coefficient), monomial

    def _parse_rational(self, token: _Token) -> Fraction:
        numerator, _, denominator = token.text.partition("/")
        if denominator and int(denominator) == 0:
            raise SystemParseError("division by zero in rational literal", self.line, token.column)
        value = Fraction(numerator)
        return value / int(denominator) if denominator else value

    def _parse_exponent(self) -> int:
        token = self._peek()
        if token is None or token.kind != "number" or not token.text.isdigit():
            raise self._error("exponent must be a non-negative integer")
        self._advance()
        return int(token.text)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _to_polynomial(sparse: SparsePolynomial, n: int) -> Polynomial:
    terms = []
    for monomial, coefficient in sparse.items():
        exponents = [0] * n
        for index, e in monomial:
            exponents[index] = e
        terms.append((coefficient, tuple(exponents)))
    return Polynomial.from_terms(n, terms)


def parse_polynomial(text: str, n: Optional[int] = None) -> Polynomial:
    """Parse a single expression or equation into a polynomial in `n` variables.

    When n is omitted it is 1 + the largest variable index referenced.
    """
    parser = _LineParser(_strip_comment(text), line=1)
    sparse = parser.parse_equation()
    needed = max(parser.variables, default=-1) + 1
    if n is None:
        n = max(needed, 1)
    elif needed > n:
        raise SystemParseError(f"variable x{needed - 1} exceeds variable count {n}", 1, 1)
    return _to_polynomial(sparse, n)


def parse_system(text: str) -> PolynomialSystem:
    """Parse a system file; each non-blank line becomes one equation f_i = 0.

    Raises:
        SystemParseError: On syntax errors, non-integer exponents, or when the
            number of equations differs from the number of variables.
    """
    parsed: List[SparsePolynomial] = []
    referenced: Set[int] = set()
    last_line = 0
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw_line)
        if not line.strip():
            continue
        parser = _LineParser(line, line_number)
        parsed.append(parser.parse_equation())
        referenced |= parser.variables
        last_line = line_number
    if not parsed:
        raise SystemParseError("no equations found", max(last_line, 1), 1)
    if not referenced:
        raise SystemParseError("the system references no variables", last_line, 1)

    n = max(referenced) + 1
    if len(parsed) != n:
        raise SystemParseError(
            f"system is not square: {len(parsed)} equations in {n} variables", last_line, 1
        )
    gaps = tuple(sorted(set(range(n)) - referenced))
    if gaps:
        logger.warning(f"Variables {['x%d' % i for i in gaps]} are never referenced; they still count toward n={n}")
    return PolynomialSystem(tuple(_to_polynomial(p, n) for p in parsed), gap_variables=gaps)
