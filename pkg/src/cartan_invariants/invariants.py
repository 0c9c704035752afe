"""Invariant polynomials on g0 encoded as rational combinations of trace words.

A trace word (k1, ..., ks) stands for the function X -> tr(X^k1) ... tr(X^ks).
These span all the gl-type invariants needed here; in particular the
elementary-symmetric (Chern) polynomials are converted to trace words through
Newton's identities, which gives every invariant one canonical encoding and a
single polarization rule.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

Word = tuple[int, ...]  # parts sorted descending


def _canon_word(parts) -> Word:
    w = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p <= 0 for p in w):
        raise ValueError("trace word parts must be positive")
    return w


class InvPoly:
    """Homogeneous linear combination of trace words."""

    __slots__ = ("terms", "degree")

    def __init__(self, terms: dict[Word, Fraction] | None = None):
        clean: dict[Word, Fraction] = {}
        for word, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[_canon_word(word)] = clean.get(_canon_word(word), Fraction(0)) + c
        clean = {w: c for w, c in clean.items() if c}
        degs = {sum(w) for w in clean}
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous invariant polynomial: degrees {sorted(degs)}")
        self.terms = clean
        self.degree = degs.pop() if degs else 0

    @classmethod
    def zero(cls) -> "InvPoly":
        return cls()

    @classmethod
    def one(cls) -> "InvPoly":
        return cls({(): Fraction(1)})

    @classmethod
    def trace_power(cls, k: int) -> "InvPoly":
        """The power-sum invariant X -> tr(X^k)."""
        return cls({(k,): Fraction(1)})

    @classmethod
    def chern(cls, k: int) -> "InvPoly":
        """Elementary-symmetric invariant e_k via the Newton recursion
        k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i."""
        if k < 0:
            raise ValueError("negative degree")
        es = [cls.one()]
        for kk in range(1, k + 1):
            acc = cls.zero()
            for i in range(1, kk + 1):
                term = es[kk - i] * cls.trace_power(i)
                if i % 2 == 0:
                    term = term.scale(-1)
                acc = acc + term
            es.append(acc.scale(Fraction(1, kk)))
        return es[k]

    @classmethod
    def chern_character(cls, j: int) -> "InvPoly":
        """ch_j as an invariant: tr(X^j)/j!."""
        return cls({(j,): Fraction(1, factorial(j))})

    def scale(self, c) -> "InvPoly":
        c = Fraction(c)
        return InvPoly({w: cc * c for w, cc in self.terms.items()})

    def __add__(self, other: "InvPoly") -> "InvPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return InvPoly(out)

    def __sub__(self, other: "InvPoly") -> "InvPoly":
        return self + other.scale(-1)

    def __mul__(self, other: "InvPoly") -> "InvPoly":
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = _canon_word(w1 + w2) if (w1 or w2) else ()
                out[w] = out.get(w, Fraction(0)) + c1 * c2
        return InvPoly(out)

    def __pow__(self, n: int) -> "InvPoly":
        if n < 0:
            raise ValueError("negative power")
        out = InvPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, InvPoly) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "InvPoly(0)"
        bits = []
        for w, c in sorted(self.terms.items(), reverse=True):
            word = "*".join(f"tr{k}" for k in w) or "1"
            bits.append(f"{c}*{word}")
        return "InvPoly(" + " + ".join(bits) + ")"


# -- the `--poly` mini-grammar -------------------------------------------------
#
#   expr   := term (('+' | '-') term)*
#   term   := factor ('*' factor)*
#   factor := atom ('^' INT)?
#   atom   := INT | 'c' INT | 'ch' INT | '(' expr ')'
#
# Every parsed polynomial must be homogeneous in the Chern grading
# (deg c_k = deg ch_k = k); integers are degree 0.


class PolyParseError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif text.startswith("ch", i):
            j = i + 2
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 2:
                raise PolyParseError("expected index after 'ch'")
            tokens.append(text[i:j])
            i = j
        elif ch == "c":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise PolyParseError("expected index after 'c'")
            tokens.append(text[i:j])
            i = j
        else:
            raise PolyParseError(f"unexpected character {ch!r}")
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise PolyParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expr(self) -> InvPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = acc + (t.scale(-1) if op == "-" else t)
        return acc

    def term(self) -> InvPoly:
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> InvPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise PolyParseError(f"expected integer exponent, got {tok!r}")
            base = base ** int(tok)
        return base

    def atom(self) -> InvPoly:
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise PolyParseError("missing ')'")
            return inner
        if tok.isdigit():
            return InvPoly.one().scale(int(tok))
        if tok.startswith("ch"):
            return InvPoly.chern_character(int(tok[2:]))
        if tok.startswith("c"):
            return InvPoly.chern(int(tok[1:]))
        raise PolyParseError(f"unexpected token {tok!r}")


def parse_poly(text: str) -> InvPoly:
    """Parse the CLI polynomial grammar into a trace-word invariant."""
    parser = _Parser(_tokenize(text))
    try:
        poly = parser.expr()
    except PolyParseError:
        raise
    except ValueError as e:  # e.g. inhomogeneous sums
        raise PolyParseError(str(e))
    if parser.peek() is not None:
        raise PolyParseError(f"trailing input at token {parser.peek()!r}")
    if poly.degree == 0 and not poly.is_zero():
        raise PolyParseError("polynomial must have positive Chern degree")
    return poly
