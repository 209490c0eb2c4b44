"""Normal forms and products in the q-deformed Heisenberg algebra.

An :class:`Element` is a finite linear combination of canonical monomials
B^b C^k A^a (with b*a = 0) over exact rational functions of q.  Products
run through the completed rewrite system by default; ``multiply_cascade``
recomputes them from closed-form generator actions without touching the
rewrite engine, and the two routes are held equal by the test suite.

Everything here is a pure function over immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ratfun import RF_ONE, RF_ONE_MINUS_Q, RatFun, as_ratfun
from .rewrite import FreeElement, RuleSet, Word, normalize_free, word, word_str


@dataclass(frozen=True, order=True)
class BasisWord:
    """Canonical monomial B^b C^k A^a; (0, 0, 0) is the identity I.

    A monomial carries B-powers or A-powers, never both.
    """

    b: int
    k: int
    a: int

    def __post_init__(self):
        if self.b < 0 or self.k < 0 or self.a < 0:
            raise ValueError("basis word exponents must be nonnegative")
        if self.b and self.a:
            raise ValueError(
                f"B^{self.b} C^{self.k} A^{self.a} is not canonical: b*a must be 0"
            )

    @property
    def degree(self) -> int:
        return self.b + self.k + self.a

    def word(self) -> Word:
        return ("B",) * self.b + ("C",) * self.k + ("A",) * self.a

    def grade_key(self):
        return (self.degree, self.b, self.k, self.a)

    def __str__(self) -> str:
        return word_str(self.word())


def _classify_word(w: Word) -> BasisWord:
    b = 0
    while b < len(w) and w[b] == "B":
        b += 1
    k = b
    while k < len(w) and w[k] == "C":
        k += 1
    a = k
    while a < len(w) and w[a] == "A":
        a += 1
    if a != len(w):
        raise ValueError(f"{word_str(w)} is not of the shape B^b C^k A^a")
    return BasisWord(b, k - b, a - k)


class StuckWordError(ValueError):
    """Raised when reduction halts on irreducible words outside the basis
    (possible with the printed rules only).  Carries the offending words and
    the full free normal form rather than coercing them silently."""

    def __init__(self, stuck_words, free_form: FreeElement):
        self.stuck_words = tuple(stuck_words)
        self.free_form = free_form
        names = ", ".join(word_str(w) for w in self.stuck_words)
        super().__init__(
            f"reduction produced irreducible non-basis words: {names}"
        )


class Element:
    """Member of the algebra in normal form: a term map BasisWord -> RatFun
    with no zero coefficients stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for bw, c in terms.items():
                if not isinstance(bw, BasisWord):
                    bw = BasisWord(*bw)
                c = as_ratfun(c)
                if not c.is_zero():
                    clean[bw] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def monomial(cls, b: int, k: int, a: int, coeff=RF_ONE) -> "Element":
        return cls({BasisWord(b, k, a): coeff})

    @classmethod
    def scalar(cls, c) -> "Element":
        return cls({BasisWord(0, 0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, bw) -> RatFun:
        if not isinstance(bw, BasisWord):
            bw = BasisWord(*bw)
        return self.terms.get(bw, RatFun.zero())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0].grade_key())

    def free(self) -> FreeElement:
        return FreeElement({bw.word(): c for bw, c in self.terms.items()})

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self.terms)
        for bw, c in other.terms.items():
            s = out.get(bw)
            out[bw] = c if s is None else s + c
        return Element(out)

    def __neg__(self) -> "Element":
        return Element({bw: -c for bw, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Element":
        c = as_ratfun(c)
        if c.is_zero():
            return Element()
        return Element({bw: c * x for bw, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, m: int) -> "Element":
        return element_power(self, m)

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{bw}" for bw, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"Element({self})"


I = Element.monomial(0, 0, 0)
A = Element.monomial(0, 0, 1)
B = Element.monomial(1, 0, 0)
C = Element.monomial(0, 1, 0)

COMPLETED = RuleSet.completed()
PRINTED = RuleSet.printed()


def _free_to_element(fe: FreeElement, rules: RuleSet) -> Element:
    terms = {}
    stuck = []
    for w, c in fe.terms.items():
        try:
            bw = _classify_word(w)
        except ValueError:
            stuck.append(w)
            continue
        terms[bw] = terms.get(bw, RatFun.zero()) + c
    if stuck:
        raise StuckWordError(sorted(stuck), fe)
    return Element(terms)


def reduce_word(w, rules: RuleSet = COMPLETED) -> Element:
    """Normal form of a single free word.  With the printed rules the
    result can contain irreducible words outside the basis; those raise
    :class:`StuckWordError` instead of being coerced."""
    if isinstance(w, str):
        w = word("" if w == "I" else w)
    return _free_to_element(normalize_free(FreeElement.of_word(w), rules), rules)


def normalize(x, rules: RuleSet = COMPLETED) -> Element:
    """Normal form of an Element or a free word combination.  Idempotent:
    normal forms are fixed points of every rule."""
    fe = x.free() if isinstance(x, Element) else x
    if not isinstance(fe, FreeElement):
        raise TypeError("normalize expects an Element or FreeElement")
    return _free_to_element(normalize_free(fe, rules), rules)


def multiply(x: Element, y: Element, rules: RuleSet = COMPLETED) -> Element:
    """Product in the algebra: concatenate words termwise, then reduce."""
    acc = FreeElement()
    for bx, cx in x.terms.items():
        wx = bx.word()
        for by, cy in y.terms.items():
            acc = acc + normalize_free(
                FreeElement.of_word(wx + by.word(), cx * cy), rules
            )
    return _free_to_element(acc, rules)


# -- independent multiplication oracle --------------------------------------
#
# Left action of a single generator on a canonical monomial, in closed form.
# These formulas come straight from the relations (no rewriting involved):
#
#   C . B^b C^k A^a = q^b  B^b C^(k+1) A^a
#   B . B^b C^k     = B^(b+1) C^k
#   B . C^k A^a     = q^(-k)/(1-q) (C^k A^(a-1) - C^(k+1) A^(a-1))   (a >= 1)
#   A . C^k A^a     = q^k  C^k A^(a+1)
#   A . B^b C^k     = 1/(1-q) (B^(b-1) C^k - q^b B^(b-1) C^(k+1))    (b >= 1)


def _gen_action(letter: str, bw: BasisWord) -> Element:
    b, k, a = bw.b, bw.k, bw.a
    if letter == "C":
        return Element.monomial(b, k + 1, a, RatFun.q_power(b))
    if letter == "B":
        if a == 0:
            return Element.monomial(b + 1, k, 0)
        scale = RatFun.q_power(-k) / RF_ONE_MINUS_Q
        return Element(
            {BasisWord(0, k, a - 1): scale, BasisWord(0, k + 1, a - 1): -scale}
        )
    if letter == "A":
        if b == 0:
            return Element.monomial(0, k, a + 1, RatFun.q_power(k))
        inv = RF_ONE / RF_ONE_MINUS_Q
        return Element(
            {
                BasisWord(b - 1, k, 0): inv,
                BasisWord(b - 1, k + 1, 0): -(RatFun.q_power(b) * inv),
            }
        )
    raise ValueError(f"unknown generator {letter!r}")


def _cascade_word(wx: Word, y: Element) -> Element:
    acc = y
    for letter in reversed(wx):
        nxt = {}
        for bw, c in acc.terms.items():
            for bw2, c2 in _gen_action(letter, bw).terms.items():
                prev = nxt.get(bw2)
                val = c * c2
                nxt[bw2] = val if prev is None else prev + val
        acc = Element(nxt)
    return acc


def multiply_cascade(x: Element, y: Element) -> Element:
    """Product computed by folding x's letters onto y's normal form with the
    closed-form generator actions.  Independent of the rewrite engine; must
    agree with :func:`multiply` on everything."""
    acc = Element.zero()
    for bx, cx in x.terms.items():
        acc = acc + _cascade_word(bx.word(), y).scale(cx)
    return acc


def bracket(x: Element, y: Element) -> Element:
    """Commutator xy - yx."""
    return multiply(x, y) - multiply(y, x)


def ad_power(x: Element, m: int, y: Element) -> Element:
    """m-fold nested commutator [x, [x, ... [x, y]]]; m = 0 returns y."""
    if m < 0:
        raise ValueError("ad power must be nonnegative")
    out = y
    for _ in range(m):
        out = bracket(x, out)
    return out


def adjoint(x: Element) -> Element:
    """The anti-automorphism fixing coefficients with A <-> B and C -> C.

    On a canonical monomial it reverses the word:
    (B^b C^k A^a)* = B^a C^k A^b, which is again canonical.
    """
    return Element({BasisWord(bw.a, bw.k, bw.b): c for bw, c in x.terms.items()})


def element_power(x: Element, m: int) -> Element:
    """m-fold product; x^0 is the identity."""
    if m < 0:
        raise ValueError("element power must be nonnegative")
    out = I
    for _ in range(m):
        out = multiply(out, x)
    return out
