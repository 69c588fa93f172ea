"""Text forms of polynomials, differential operators, and recurrences.

One tokenizer and one recursive-descent expression parser serve three
grammars that differ only in their atoms:

    polynomial:   integers, rationals p/q, the variable, + - * ^ ( )
    diff op:      polynomial atoms in t, plus D (so "(1+t^2)*D - (1-t)")
    recurrence:   polynomial atoms in n, plus a(n), a(n-2), a(n+1), an
                  optional "= <expr>" and an optional "for n >= K" clause

'*' may be omitted immediately before a(...) and D.  '/' is only allowed
between integer literals.  A unicode minus is accepted anywhere '-' is.
Products that would need commuting a polynomial across D (like "D*t") are
rejected rather than silently reordered, and any product of two a(...)
atoms is rejected as nonlinear.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .operators import DifferentialOperator, RecurrenceOperator
from .polynomials import Polynomial, X


class OperatorSyntaxError(ValueError):
    """Malformed operator/recurrence text; carries the offending position."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]\w*)|(?P<sym>>=|[-+*/^()=]))")

# A parsed value is (polynomial part, {key: polynomial}) where the key is a
# derivative order (ode mode) or an index shift s for a(n+s) (rec mode).
_Value = tuple[Polynomial, dict[int, Polynomial]]


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    source = text.replace("−", "-")
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None or match.end() == match.start():
            stripped = source[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(source) - len(stripped)
            raise OperatorSyntaxError(
                f"unexpected character {source[bad_at]!r}", bad_at
            )
        kind = str(match.lastgroup)
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, text: str, mode: str, var: str):
        self.mode = mode
        self.var = var
        self.tokens = _tokenize(text)
        self.i = 0

    def _peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def _take(self) -> tuple[str, str, int]:
        token = self.tokens[self.i]
        self.i += 1
        return token

    def _match(self, kind: str, value: Optional[str] = None) -> bool:
        k, v, _ = self._peek()
        if k != kind or (value is not None and v != value):
            return False
        self.i += 1
        return True

    def _expect(self, kind: str, value: str) -> None:
        k, v, pos = self._peek()
        if k != kind or v != value:
            raise OperatorSyntaxError(f"expected {value!r}, found {v or 'end'!r}", pos)
        self.i += 1

    def _fail(self, message: str) -> OperatorSyntaxError:
        _, _, pos = self._peek()
        return OperatorSyntaxError(message, pos)

    # value algebra ------------------------------------------------------

    @staticmethod
    def _const(c: Fraction) -> _Value:
        return Polynomial.constant(c), {}

    def _add(self, u: _Value, v: _Value, sign: int) -> _Value:
        pu, tu = u
        pv, tv = v
        terms = dict(tu)
        for key, w in tv.items():
            terms[key] = terms.get(key, Polynomial()) + w * sign
        return pu + pv * sign, terms

    def _mul(self, u: _Value, v: _Value, pos: int) -> _Value:
        pu, tu = u
        pv, tv = v
        if self.mode == "rec" and tu and tv:
            raise OperatorSyntaxError("nonlinear product of a(...) terms", pos)
        if self.mode == "ode" and tu and pv.degree >= 1:
            raise OperatorSyntaxError(
                "polynomial coefficients must be written to the left of D", pos
            )
        terms: dict[int, Polynomial] = {}
        for j, x in tv.items():
            terms[j] = pu * x
        for i, w in tu.items():
            terms[i] = terms.get(i, Polynomial()) + w * pv
            for j, x in tv.items():
                key = i + j
                terms[key] = terms.get(key, Polynomial()) + w * x
        return pu * pv, terms

    # grammar ------------------------------------------------------------

    def parse_expression(self) -> _Value:
        sign = 1
        while True:
            if self._match("sym", "-"):
                sign = -sign
            elif self._match("sym", "+"):
                pass
            else:
                break
        value = self.parse_term()
        if sign < 0:
            value = self._add(self._const(Fraction(0)), value, -1)
        while True:
            if self._match("sym", "+"):
                value = self._add(value, self.parse_term(), 1)
            elif self._match("sym", "-"):
                value = self._add(value, self.parse_term(), -1)
            else:
                return value

    def _starts_implicit_factor(self) -> bool:
        kind, name, _ = self._peek()
        if kind != "name":
            return False
        return (self.mode == "ode" and name == "D") or (
            self.mode == "rec" and name == "a"
        )

    def parse_term(self) -> _Value:
        value = self.parse_factor()
        while True:
            _, _, pos = self._peek()
            if self._match("sym", "*"):
                value = self._mul(value, self.parse_factor(), pos)
            elif self._starts_implicit_factor():
                value = self._mul(value, self.parse_factor(), pos)
            else:
                return value

    def parse_factor(self) -> _Value:
        value = self.parse_primary()
        _, _, pos = self._peek()
        if self._match("sym", "^"):
            kind, digits, epos = self._peek()
            if kind != "int":
                raise OperatorSyntaxError("expected an integer exponent", epos)
            self._take()
            exponent = int(digits)
            result = self._const(Fraction(1))
            for _ in range(exponent):
                result = self._mul(result, value, pos)
            return result
        return value

    def parse_primary(self) -> _Value:
        kind, text, pos = self._take()
        if kind == "int":
            numerator = int(text)
            if self._match("sym", "/"):
                dkind, dtext, dpos = self._take()
                if dkind != "int":
                    raise OperatorSyntaxError("expected an integer denominator", dpos)
                if int(dtext) == 0:
                    raise OperatorSyntaxError("zero denominator", dpos)
                return self._const(Fraction(numerator, int(dtext)))
            return self._const(Fraction(numerator))
        if kind == "sym" and text == "(":
            value = self.parse_expression()
            self._expect("sym", ")")
            return value
        if kind == "name":
            if text == self.var:
                return X, {}
            if self.mode == "ode" and text == "D":
                return Polynomial(), {1: Polynomial.constant(1)}
            if self.mode == "rec" and text == "a":
                return self._parse_sequence_atom(pos)
            raise OperatorSyntaxError(f"unknown symbol {text!r}", pos)
        raise OperatorSyntaxError(
            f"expected a value, found {text or 'end'!r}", pos
        )

    def _parse_sequence_atom(self, pos: int) -> _Value:
        self._expect("sym", "(")
        kind, name, npos = self._take()
        if kind != "name" or name != self.var:
            raise OperatorSyntaxError(f"expected {self.var!r} inside a(...)", npos)
        shift = 0
        if not self._match("sym", ")"):
            skind, sym, spos = self._take()
            if skind != "sym" or sym not in "+-":
                raise OperatorSyntaxError("expected '+', '-' or ')' in a(...)", spos)
            okind, digits, opos = self._take()
            if okind != "int":
                raise OperatorSyntaxError("expected an integer shift in a(...)", opos)
            shift = int(digits) if sym == "+" else -int(digits)
            self._expect("sym", ")")
        return Polynomial(), {shift: Polynomial.constant(1)}

    def parse_validity_clause(self) -> Optional[int]:
        if not self._match("name", "for"):
            return None
        kind, name, pos = self._take()
        if kind != "name" or name != self.var:
            raise OperatorSyntaxError(f"expected {self.var!r} after 'for'", pos)
        self._expect("sym", ">=")
        sign = -1 if self._match("sym", "-") else 1
        kind, digits, pos = self._take()
        if kind != "int":
            raise OperatorSyntaxError("expected an integer bound", pos)
        return sign * int(digits)

    def expect_end(self) -> None:
        kind, text, pos = self._peek()
        if kind != "end":
            raise OperatorSyntaxError(f"unexpected trailing {text!r}", pos)


def parse_polynomial(text: str, var: str = "t") -> Polynomial:
    """Parse polynomial text like "1 - t + 0*t^2" into canonical form."""
    parser = _Parser(text, "poly", var)
    poly, terms = parser.parse_expression()
    parser.expect_end()
    assert not terms
    return poly


def parse_differential_operator(text: str) -> DifferentialOperator:
    """Parse operator text like "(1+t^2)*D - (1-t)"."""
    parser = _Parser(text, "ode", "t")
    poly, terms = parser.parse_expression()
    parser.expect_end()
    if not poly.is_zero:
        terms[0] = terms.get(0, Polynomial()) + poly
    if not terms:
        raise OperatorSyntaxError("the zero operator has no order", 0)
    top = max(terms)
    coeffs = tuple(terms.get(j, Polynomial()) for j in range(top + 1))
    return DifferentialOperator(coeffs)


def parse_recurrence(text: str) -> RecurrenceOperator:
    """Parse recurrence text into canonical form.

    Accepts "a(n) - a(n-1) + (n-1)^2*a(n-2) = 0 for n >= 2" and shifted
    spellings like "a(n+1) = a(n) - n^2*a(n-1) for n >= 0"; the stated bound
    refers to the n of the text and is reindexed along with the shifts.
    Without a clause, the bound defaults to the recurrence order.
    """
    parser = _Parser(text, "rec", "n")
    lhs = parser.parse_expression()
    value = lhs
    if parser._match("sym", "="):
        rhs = parser.parse_expression()
        value = parser._add(lhs, rhs, -1)
    valid_from = parser.parse_validity_clause()
    parser.expect_end()
    poly, terms = value
    nonzero = {s: w for s, w in terms.items() if not w.is_zero}
    if not nonzero:
        raise OperatorSyntaxError("no a(...) terms in recurrence", 0)
    if not poly.is_zero:
        raise OperatorSyntaxError(
            "inhomogeneous recurrences are not supported (nonzero polynomial part)", 0
        )
    return RecurrenceOperator.from_shift_weights(nonzero, valid_from)
