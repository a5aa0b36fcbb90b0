"""The group *-algebra of a free group: finite combinations of words.

``AlgebraElement`` is the dense *-subalgebra of the reduced group C*-algebra
spanned by the unitaries ``lambda(g)``.  ``FinVector`` is a finitely supported
vector in ``l2(Gamma)`` written in the basis ``delta_w``.  The vacuum state is
the vector state at ``delta_e``, which reads off the coefficient of the
identity word.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from types import MappingProxyType

from .errors import WordSyntaxError
from .freegroup import (
    IDENTITY,
    LETTER_RE,
    SymbolBijection,
    Word,
    apply_power,
    invert,
    letters_from_match,
    multiply,
)
from .scalars import ONE, ZERO, ComplexRational, Scalar


def _accumulate(pairs: Iterable[tuple[Word, ComplexRational]]) -> dict[Word, ComplexRational]:
    out: dict[Word, ComplexRational] = {}
    for w, c in pairs:
        out[w] = out[w] + c if w in out else c
    return {w: c for w, c in out.items() if c}


class _WordMap:
    """Immutable finite map Word -> nonzero ComplexRational."""

    __slots__ = ("_data",)

    def __init__(self, data: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = ()):
        items = data.items() if isinstance(data, Mapping) else data
        self._data = _accumulate((w, ComplexRational.coerce(c)) for w, c in items)

    @classmethod
    def _wrap(cls, data: dict[Word, ComplexRational]):
        obj = cls.__new__(cls)
        obj._data = data
        return obj

    @property
    def terms(self) -> Mapping[Word, ComplexRational]:
        return MappingProxyType(self._data)

    def coefficient(self, w: Word) -> ComplexRational:
        return self._data.get(w, ZERO)

    def support(self) -> list[Word]:
        return sorted(self._data)

    def items(self) -> Iterator[tuple[Word, ComplexRational]]:
        return iter(self._data.items())

    def __len__(self) -> int:
        return len(self._data)

    def __bool__(self) -> bool:
        return bool(self._data)

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self._data == other._data

    def __hash__(self) -> int:
        return hash(frozenset(self._data.items()))

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._wrap(_accumulate([*self._data.items(), *other._data.items()]))

    def __neg__(self):
        return self._wrap({w: -c for w, c in self._data.items()})

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar):
        c = ComplexRational.coerce(c)
        if not c:
            return self._wrap({})
        return self._wrap({w: c * v for w, v in self._data.items()})

    def map_words(self, f) -> _WordMap:
        return self._wrap(_accumulate((f(w), c) for w, c in self._data.items()))

    def __str__(self) -> str:
        return format_combination(self._data)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class AlgebraElement(_WordMap):
    """Finite combination ``sum c_w lambda(w)``; the empty map is zero."""

    __slots__ = ()

    @classmethod
    def unit(cls) -> AlgebraElement:
        return cls._wrap({IDENTITY: ONE})

    @classmethod
    def zero(cls) -> AlgebraElement:
        return cls._wrap({})

    @classmethod
    def lam(cls, w: Word | str, c: Scalar = 1) -> AlgebraElement:
        if isinstance(w, str):
            w = Word.parse(w)
        return cls({w: c})

    @classmethod
    def parse(cls, text: str) -> AlgebraElement:
        return parse_element(text)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        if isinstance(other, (int, Fraction, ComplexRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ComplexRational)):
            return self.scale(other)
        return NotImplemented

    def adjoint(self) -> AlgebraElement:
        return alg_adjoint(self)

    def words(self) -> list[Word]:
        return self.support()


class FinVector(_WordMap):
    """Finitely supported vector ``sum x(w) delta_w``."""

    __slots__ = ()

    @classmethod
    def delta(cls, w: Word | str, c: Scalar = 1) -> FinVector:
        if isinstance(w, str):
            w = Word.parse(w)
        return cls({w: c})

    @classmethod
    def vacuum(cls) -> FinVector:
        return cls._wrap({IDENTITY: ONE})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ComplexRational)):
            return self.scale(other)
        return NotImplemented

    def restrict(self, keep) -> FinVector:
        return self._wrap({w: c for w, c in self._data.items() if keep(w)})


def inner(x: FinVector, y: FinVector) -> ComplexRational:
    """``<x, y>``, antilinear in the first argument."""
    if len(x) > len(y):
        return inner(y, x).conjugate()
    total = ZERO
    yd = y._data
    for w, c in x._data.items():
        d = yd.get(w)
        if d is not None:
            total = total + c.conjugate() * d
    return total


def norm_sq(x: FinVector) -> Fraction:
    return sum((c.abs2() for c in x._data.values()), Fraction(0))


# --- operations ----------------------------------------------------------


def alg_add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a + b


def alg_scale(c: Scalar, a: AlgebraElement) -> AlgebraElement:
    return a.scale(c)


def alg_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return AlgebraElement._wrap(
        _accumulate((multiply(u, v), c * d) for u, c in a._data.items() for v, d in b._data.items())
    )


def alg_adjoint(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement._wrap({invert(w): c.conjugate() for w, c in a._data.items()})


def vacuum_state(a: AlgebraElement) -> ComplexRational:
    return a._data.get(IDENTITY, ZERO)


def alg_automorphism(T: SymbolBijection, n: int, a: AlgebraElement) -> AlgebraElement:
    """``alpha^n``: the linear extension of ``lambda(g) -> lambda(T^n g)``."""
    return AlgebraElement._wrap({apply_power(T, n, w): c for w, c in a._data.items()})


def left_regular_apply(a: AlgebraElement, x: FinVector) -> FinVector:
    """``lambda(g) delta_h = delta_{gh}``, extended bilinearly."""
    return FinVector._wrap(
        _accumulate((multiply(g, h), c * d) for g, c in a._data.items() for h, d in x._data.items())
    )


def unitary_T_apply(T: SymbolBijection, n: int, x: FinVector) -> FinVector:
    """``U^n delta_g = delta_{T^n g}``."""
    return FinVector._wrap({apply_power(T, n, w): c for w, c in x._data.items()})


# --- text syntax ---------------------------------------------------------


def format_scalar_coefficient(c: ComplexRational) -> str:
    return str(c) if c.is_real else f"({c})"


def format_combination(data: Mapping[Word, ComplexRational]) -> str:
    """Canonical ``c * word + ...`` text, terms sorted by word."""
    if not data:
        return "0"
    parts = []
    for w in sorted(data):
        c = data[w]
        negative = c.is_real and c.re < 0
        mag = -c if negative else c
        body = str(w) if mag == ONE else f"{format_scalar_coefficient(mag)} * {w}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"{'-' if negative else '+'} {body}")
    return " ".join(parts)


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<letter>" + LETTER_RE.pattern + r")|(?P<num>\d+(?:/\d+)?)|(?P<op>[+\-*()])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise WordSyntaxError("unexpected character", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(0), m.start()))
        pos = m.end()
    return tokens


class _ElementParser:
    # element := [+-] term ((+|-) term)* ; term := coef ['*' word] | word
    # coef := num ['i'] [(+|-) num 'i'] | '(' [+-] num ['i'] [(+|-) num 'i'] ')'

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else (None, "", len(self.text))

    def fail(self, message: str):
        raise WordSyntaxError(message, self.text, self.peek()[2])

    def expect_op(self, op: str):
        kind, value, _ = self.peek()
        if kind != "op" or value != op:
            self.fail(f"expected {op!r}")
        self.i += 1

    def parse(self) -> AlgebraElement:
        if not self.tokens:
            self.fail("empty element")
        pairs: list[tuple[Word, ComplexRational]] = []
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            sign = -1 if value == "-" else 1
            self.i += 1
        while True:
            w, c = self.term()
            pairs.append((w, c if sign > 0 else -c))
            kind, value, _ = self.peek()
            if kind is None:
                break
            if kind == "op" and value in "+-":
                sign = -1 if value == "-" else 1
                self.i += 1
                continue
            self.fail("expected '+' or '-'")
        return AlgebraElement._wrap(_accumulate(pairs))

    def _is_imag(self, offset: int) -> bool:
        kind, value, _ = self.peek(offset)
        return kind == "letter" and value == "i"

    def coef(self) -> ComplexRational:
        kind, value, _ = self.peek()
        if kind == "op" and value == "(":
            self.i += 1
            sign = 1
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 in "+-":
                sign = -1 if v2 == "-" else 1
                self.i += 1
            c = self.number(sign)
            self.expect_op(")")
            return c
        return self.number(1)

    def number(self, sign: int) -> ComplexRational:
        # the sign belongs to the leading part only: (-1-1 i) is -1 - i
        kind, value, _ = self.peek()
        if kind != "num":
            self.fail("expected a number")
        self.i += 1
        lead = sign * _fraction(value, self)
        if self._is_imag(0):
            self.i += 1
            return ComplexRational(0, lead)
        k1, v1, _ = self.peek()
        k2, v2, _ = self.peek(1)
        if k1 == "op" and v1 in "+-" and k2 == "num" and self._is_imag(2):
            self.i += 3
            im = _fraction(v2, self)
            return ComplexRational(lead, im if v1 == "+" else -im)
        return ComplexRational(lead)

    def word(self) -> Word:
        letters = []
        kind, value, _ = self.peek()
        if kind != "letter":
            self.fail("expected a word")
        while kind == "letter":
            m = LETTER_RE.fullmatch(value)
            letters.extend(letters_from_match(m, self.text))
            self.i += 1
            kind, value, _ = self.peek()
        return Word(letters)

    def term(self) -> tuple[Word, ComplexRational]:
        kind, value, _ = self.peek()
        if kind == "num" or (kind == "op" and value == "("):
            c = self.coef()
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "*":
                self.i += 1
                return self.word(), c
            return IDENTITY, c
        return self.word(), ONE


def _fraction(value: str, parser: _ElementParser) -> Fraction:
    try:
        return Fraction(value)
    except ZeroDivisionError:
        parser.fail("zero denominator")


def parse_element(text: str) -> AlgebraElement:
    """Parse ``c1 * <word> + c2 * <word> ...``.

    Coefficients are ``p/q``, ``p/q+r/s i`` or parenthesized; a bare
    coefficient stands for a multiple of the unit and a bare word has
    coefficient 1.
    """
    return _ElementParser(text).parse()
