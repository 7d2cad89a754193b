"""Parser and canonical printer for multilinear polynomial text.

Grammar (whitespace between tokens is ignored)::

    expr     := ['-'] term (('+'|'-') term)*
    term     := [rational '*'] factor+
    factor   := variable | '(' expr ')'
    variable := 'x' digits
    rational := integer ['/' integer]

Juxtaposition of factors is the left-associative product, so ``x1x2x3``
means ``(x1x2)x3`` and a right factor needs parentheses to nest:
``x1(x2x3)``.  A parenthesized factor may itself be a sum; products expand.
After parsing, every monomial must use each of x1..xn exactly once for one
common n (the inferred degree).

Errors carry the 0-based text position.  ``poly_to_str`` emits the
canonical form (terms in canonical monomial order, explicit rational
coefficients) and ``parse_poly(poly_to_str(p)) == p``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import ParseError
from .monomials import Monomial, MultilinearPoly, render_monomial, shapes

# parse trees: int variable number, or (tree, tree) product
_Tree = object


def parse_poly(text: str) -> MultilinearPoly:
    parser = _Parser(text)
    terms = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise ParseError("unexpected trailing input", parser.pos, text)
    return _terms_to_poly(terms, text)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_expr(self) -> list[tuple[Fraction, _Tree]]:
        terms: list[tuple[Fraction, _Tree]] = []
        sign = Fraction(1)
        if self.peek() == "-":
            self.pos += 1
            sign = Fraction(-1)
        terms.extend((sign * c, t) for c, t in self.parse_term())
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                sign = Fraction(1)
            elif ch == "-":
                self.pos += 1
                sign = Fraction(-1)
            else:
                break
            terms.extend((sign * c, t) for c, t in self.parse_term())
        return terms

    def parse_term(self) -> list[tuple[Fraction, _Tree]]:
        coeff = Fraction(1)
        if self.peek().isdigit():
            coeff = self.parse_rational()
            self.skip_ws()
            if self.pos >= len(self.text) or self.text[self.pos] != "*":
                raise ParseError("expected '*' after coefficient", self.pos, self.text)
            self.pos += 1
        factors = [self.parse_factor()]
        while True:
            ch = self.peek()
            if ch == "x" or ch == "(":
                factors.append(self.parse_factor())
            else:
                break
        product = factors[0]
        for f in factors[1:]:
            product = _poly_mul(product, f)
        return [(coeff * c, t) for c, t in product]

    def parse_factor(self) -> list[tuple[Fraction, _Tree]]:
        ch = self.peek()
        if ch == "x":
            start = self.pos
            self.pos += 1
            digits = self._take_digits()
            if not digits:
                raise ParseError("expected digits after 'x'", self.pos, self.text)
            var = int(digits)
            if var < 1:
                raise ParseError("variable index must be >= 1", start, self.text)
            return [(Fraction(1), var)]
        if ch == "(":
            self.pos += 1
            inner = self.parse_expr()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos, self.text)
            self.pos += 1
            return inner
        raise ParseError("expected variable or '('", self.pos, self.text)

    def parse_rational(self) -> Fraction:
        num = int(self._take_digits())
        if self.peek() == "/":
            self.pos += 1
            self.skip_ws()
            digits = self._take_digits()
            if not digits:
                raise ParseError("expected denominator digits", self.pos, self.text)
            den = int(digits)
            if den == 0:
                raise ParseError("zero denominator", self.pos, self.text)
            return Fraction(num, den)
        return Fraction(num)

    def _take_digits(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start : self.pos]


def _poly_mul(
    left: list[tuple[Fraction, _Tree]], right: list[tuple[Fraction, _Tree]]
) -> list[tuple[Fraction, _Tree]]:
    return [(cl * cr, (tl, tr)) for cl, tl in left for cr, tr in right]


def _terms_to_poly(terms: list[tuple[Fraction, _Tree]], text: str) -> MultilinearPoly:
    collected: dict[Monomial, Fraction] = {}
    supports: set[frozenset[int]] = set()
    for coeff, tree in terms:
        variables: list[int] = []

        def rebuild(node):
            if isinstance(node, int):
                slot = len(variables)
                variables.append(node)
                return slot
            return (rebuild(node[0]), rebuild(node[1]))

        shape = rebuild(tree)
        if len(set(variables)) != len(variables):
            raise ParseError(
                f"monomial repeats a variable: {variables}", 0, text
            )
        supports.add(frozenset(variables))
        mon = Monomial(shape, tuple(variables))
        val = collected.get(mon, Fraction(0)) + coeff
        if val:
            collected[mon] = val
        elif mon in collected:
            del collected[mon]
    if len(supports) > 1:
        raise ParseError(
            "terms use different variable sets; not multilinear of one degree",
            0,
            text,
        )
    support = next(iter(supports))
    degree = len(support)
    if support != frozenset(range(1, degree + 1)):
        raise ParseError(
            f"variables must be x1..x{degree} with no gaps, got "
            f"{sorted(support)}",
            0,
            text,
        )
    return MultilinearPoly(degree, collected)


# -- canonical printing ------------------------------------------------------


@lru_cache(maxsize=32)
def _shape_rank(n: int) -> dict:
    return {shape: i for i, shape in enumerate(shapes(n))}


def monomial_sort_key(mon: Monomial):
    """Canonical order: shape generation order, then permutation lex."""
    return (_shape_rank(mon.degree)[mon.shape], mon.perm)


def poly_to_str(poly: MultilinearPoly) -> str:
    if not poly.terms:
        fallback = Monomial(
            _left_comb_shape(poly.degree), tuple(range(1, poly.degree + 1))
        )
        return f"0*{render_monomial(fallback.shape, fallback.perm)}"
    parts: list[str] = []
    for mon in sorted(poly.terms, key=monomial_sort_key):
        coeff = poly.terms[mon]
        mag = abs(coeff)
        body = render_monomial(mon.shape, mon.perm)
        if mag != 1:
            body = f"{_frac(mag)}*{body}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if coeff > 0 else f" - {body}")
    return "".join(parts)


def _left_comb_shape(n: int):
    shape = 0
    for slot in range(1, n):
        shape = (shape, slot)
    return shape


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
