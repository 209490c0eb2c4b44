"""Expression parser and printer for algebra elements.

Grammar (operator precedence: ^ binds tighter than *, which binds tighter
than unary minus, which binds tighter than + and -; juxtaposition is not
multiplication, an explicit * is required):

    expr    := ['-'] term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := primary ['^' NAT]
    primary := 'A' | 'B' | 'C' | 'I' | NAT | 'q'
             | '(' expr ')'
             | '[' expr ',' expr ']'
             | 'ad' '(' expr ')' '^' NAT '(' expr ')'

Scalar subexpressions (built from naturals and q) fold into exact rational
functions during parsing.  Division requires the divisor to fold to a
scalar; dividing by a genuine operator expression is rejected with a
position, and dividing by the zero scalar raises ZeroDivisionError.

``C`` is accepted as an atom and always printed as C; the bracket form
[A,B] evaluates to the same element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import A, B, BasisWord, C, Element, I, ad_power, bracket, element_power, multiply
from .ratfun import QPolynomial, RatFun
from .rewrite import FreeElement


class ParseError(ValueError):
    """Syntax error with a 1-based column, the offending token, and the
    token kinds that would have been accepted."""

    def __init__(self, message: str, column: int, token: str, expected=()):
        self.column = column
        self.token = token
        self.expected = tuple(expected)
        detail = f"{message} at column {column}"
        if token:
            detail += f" (found {token!r})"
        if expected:
            detail += f"; expected one of: {', '.join(expected)}"
        super().__init__(detail)


# -- tokens -------------------------------------------------------------------

_SYMBOLS = set("+-*/^()[],")
_NAMES = {"A", "B", "C", "I", "q", "ad"}


@dataclass(frozen=True)
class Token:
    kind: str  # "nat", "name", a symbol, or "end"
    text: str
    column: int


def tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("nat", text[i:j], col))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            name = text[i:j]
            if name not in _NAMES:
                raise ParseError(
                    "unknown name", col, name, expected=sorted(_NAMES)
                )
            tokens.append(Token("name", name, col))
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(Token(ch, ch, col))
            i += 1
            continue
        raise ParseError("unexpected character", col, ch)
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


# -- syntax tree --------------------------------------------------------------


@dataclass(frozen=True)
class Scalar:
    value: RatFun


@dataclass(frozen=True)
class Atom:
    name: str  # A, B, C, or I


@dataclass(frozen=True)
class Sum:
    parts: tuple  # of (sign, node) with sign in {+1, -1}


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


@dataclass(frozen=True)
class Bracket:
    left: object
    right: object


@dataclass(frozen=True)
class AdPower:
    operand: object
    exponent: int
    argument: object


def _make_sum(parts):
    if all(isinstance(node, Scalar) for _sign, node in parts):
        total = RatFun.zero()
        for sign, node in parts:
            total = total + node.value if sign > 0 else total - node.value
        return Scalar(total)
    if len(parts) == 1 and parts[0][0] > 0:
        return parts[0][1]
    return Sum(tuple(parts))


def _make_product(factors):
    scalar = RatFun.one()
    rest = []
    for f in factors:
        if isinstance(f, Scalar):
            scalar = scalar * f.value
        else:
            rest.append(f)
    if not rest:
        return Scalar(scalar)
    if scalar.is_zero():
        return Scalar(scalar)
    if not scalar.is_one():
        rest.insert(0, Scalar(scalar))
    if len(rest) == 1:
        return rest[0]
    return Product(tuple(rest))


def _make_power(base, exponent):
    if isinstance(base, Scalar):
        return Scalar(base.value**exponent)
    if exponent == 1:
        return base
    return Power(base, exponent)


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError("unexpected token", tok.column, tok.text, expected=(kind,))
        return self.advance()

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError("trailing input", tok.column, tok.text, expected=("end",))
        return node

    def expr(self):
        sign = 1
        if self.peek().kind == "-":
            self.advance()
            sign = -1
        parts = [(sign, self.term())]
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            parts.append((1 if op.kind == "+" else -1, self.term()))
        return _make_sum(parts)

    def term(self):
        factors = [self.factor()]
        while self.peek().kind in ("*", "/"):
            op = self.advance()
            nxt = self.factor()
            if op.kind == "*":
                factors.append(nxt)
                continue
            if not isinstance(nxt, Scalar):
                raise ParseError(
                    "division requires a scalar divisor", op.column, op.text
                )
            if nxt.value.is_zero():
                raise ZeroDivisionError(
                    f"division by zero scalar at column {op.column}"
                )
            factors.append(Scalar(nxt.value.inverse()))
        return _make_product(factors)

    def factor(self):
        base = self.primary()
        if self.peek().kind == "^":
            self.advance()
            exp = int(self.expect("nat").text)
            return _make_power(base, exp)
        return base

    def primary(self):
        tok = self.peek()
        if tok.kind == "nat":
            self.advance()
            return Scalar(RatFun.from_fraction(Fraction(int(tok.text))))
        if tok.kind == "name":
            self.advance()
            if tok.text == "q":
                return Scalar(RatFun.q_power(1))
            if tok.text in ("A", "B", "C", "I"):
                return Atom(tok.text)
            # ad(f)^n(g)
            self.expect("(")
            operand = self.expr()
            self.expect(")")
            self.expect("^")
            exp = int(self.expect("nat").text)
            self.expect("(")
            argument = self.expr()
            self.expect(")")
            return AdPower(operand, exp, argument)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "[":
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Bracket(left, right)
        raise ParseError(
            "expected an expression",
            tok.column,
            tok.text,
            expected=("A", "B", "C", "I", "q", "NAT", "(", "[", "ad"),
        )


def parse(text: str):
    """Parse an expression into a syntax tree with scalars folded."""
    return _Parser(tokenize(text)).parse()


_ATOMS = {"A": A, "B": B, "C": C, "I": I}


def eval_ast(node) -> Element:
    """Evaluate a syntax tree to a normalized element."""
    if isinstance(node, Scalar):
        return Element.scalar(node.value)
    if isinstance(node, Atom):
        return _ATOMS[node.name]
    if isinstance(node, Sum):
        total = Element.zero()
        for sign, part in node.parts:
            val = eval_ast(part)
            total = total + val if sign > 0 else total - val
        return total
    if isinstance(node, Product):
        out = None
        for f in node.factors:
            val = eval_ast(f)
            out = val if out is None else multiply(out, val)
        return out
    if isinstance(node, Power):
        return element_power(eval_ast(node.base), node.exponent)
    if isinstance(node, Bracket):
        return bracket(eval_ast(node.left), eval_ast(node.right))
    if isinstance(node, AdPower):
        return ad_power(eval_ast(node.operand), node.exponent, eval_ast(node.argument))
    raise TypeError(f"not a syntax tree node: {node!r}")


def evaluate(text: str) -> Element:
    """Parse and evaluate in one step."""
    return eval_ast(parse(text))


def eval_ast_free(node) -> FreeElement:
    """Evaluate a syntax tree in the free algebra on the letters A, B, C:
    products are word concatenations and nothing is reduced.  This is the
    input shape for reduction under a caller-chosen rule set."""
    if isinstance(node, Scalar):
        return FreeElement({(): node.value})
    if isinstance(node, Atom):
        return FreeElement({(() if node.name == "I" else (node.name,)): RatFun.one()})
    if isinstance(node, Sum):
        total = FreeElement()
        for sign, part in node.parts:
            val = eval_ast_free(part)
            total = total + val if sign > 0 else total - val
        return total
    if isinstance(node, Product):
        out = None
        for f in node.factors:
            val = eval_ast_free(f)
            out = val if out is None else _free_product(out, val)
        return out
    if isinstance(node, Power):
        out = FreeElement({(): RatFun.one()})
        base = eval_ast_free(node.base)
        for _ in range(node.exponent):
            out = _free_product(out, base)
        return out
    if isinstance(node, Bracket):
        left, right = eval_ast_free(node.left), eval_ast_free(node.right)
        return _free_product(left, right) - _free_product(right, left)
    if isinstance(node, AdPower):
        operand = eval_ast_free(node.operand)
        out = eval_ast_free(node.argument)
        for _ in range(node.exponent):
            out = _free_product(operand, out) - _free_product(out, operand)
        return out
    raise TypeError(f"not a syntax tree node: {node!r}")


def _free_product(x: FreeElement, y: FreeElement) -> FreeElement:
    terms = {}
    for wx, cx in x.terms.items():
        for wy, cy in y.terms.items():
            w = wx + wy
            prod = cx * cy
            prev = terms.get(w)
            terms[w] = prod if prev is None else prev + prod
    return FreeElement(terms)


def parse_ratfun(text: str) -> RatFun:
    """Parse a purely scalar expression (a rational function of q)."""
    node = parse(text)
    if not isinstance(node, Scalar):
        raise ParseError("expected a scalar expression", 1, text)
    return node.value


# -- printing -----------------------------------------------------------------


def word_text(bw: BasisWord) -> str:
    parts = []
    for letter, e in (("B", bw.b), ("C", bw.k), ("A", bw.a)):
        if e == 1:
            parts.append(letter)
        elif e > 1:
            parts.append(f"{letter}^{e}")
    return "*".join(parts) if parts else "I"


def element_text(x: Element) -> str:
    """Terms in graded order, each as (coefficient)*word; re-parseable."""
    if x.is_zero():
        return "0"
    return " + ".join(f"{c}*{word_text(bw)}" for bw, c in x.sorted_terms())


def _fraction_json(c: Fraction):
    if c.denominator == 1:
        return int(c)
    return f"{c.numerator}/{c.denominator}"


def _fraction_from_json(v) -> Fraction:
    if isinstance(v, int):
        return Fraction(v)
    return Fraction(v)


def ratfun_json(c: RatFun) -> dict:
    return {
        "num": [_fraction_json(x) for x in c.num.coeffs],
        "den": [_fraction_json(x) for x in c.den.coeffs],
    }


def ratfun_from_json(doc) -> RatFun:
    num = QPolynomial([_fraction_from_json(v) for v in doc["num"]])
    den = QPolynomial([_fraction_from_json(v) for v in doc["den"]])
    return RatFun(num, den)


def element_json(x: Element) -> dict:
    return {
        "terms": [
            {"b": bw.b, "k": bw.k, "a": bw.a, "coeff": ratfun_json(c)}
            for bw, c in x.sorted_terms()
        ]
    }


def element_from_json(doc) -> Element:
    terms = {}
    for t in doc["terms"]:
        bw = BasisWord(t["b"], t["k"], t["a"])
        terms[bw] = terms.get(bw, RatFun.zero()) + ratfun_from_json(t["coeff"])
    return Element(terms)


def format_element(x: Element, mode: str = "text"):
    """Render an element as re-parseable text or as its JSON document."""
    if mode == "text":
        return element_text(x)
    if mode == "json":
        return element_json(x)
    raise ValueError(f"unknown format mode {mode!r} (expected 'text' or 'json')")
