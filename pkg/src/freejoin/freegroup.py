"""Reduced words in free groups and automorphisms induced by alphabet bijections.

A symbol is a pair ``(family, index)``.  Indexed families carry integer
indices and range over all of Z (``s[0]``, ``s[-3]``, ...); finite parts of an
alphabet consist of bare symbols whose index is ``None`` (``a``, ``b``).
Words store letters with exponent +1 or -1 only and are always freely reduced.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import AlphabetMismatchError, IdentityWordError, WordSyntaxError

INFINITE = math.inf
"""Period reported for words whose orbit under a bijection is infinite."""


class Symbol(NamedTuple):
    family: str
    index: int | None = None

    def __str__(self) -> str:
        if self.index is None:
            return self.family
        return f"{self.family}[{self.index}]"


class Letter(NamedTuple):
    symbol: Symbol
    exponent: int = 1

    def inverse(self) -> Letter:
        return Letter(self.symbol, -self.exponent)

    def __str__(self) -> str:
        return str(self.symbol) if self.exponent == 1 else f"{self.symbol}^-1"


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for letter in letters:
        if stack and stack[-1].symbol == letter.symbol and stack[-1].exponent == -letter.exponent:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


class Word:
    """A freely reduced word; the empty word is the group identity."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        letters = tuple(letters)
        for letter in letters:
            if letter.exponent not in (1, -1):
                raise ValueError(f"letter exponent must be +1 or -1, got {letter.exponent}")
        self.letters = _reduce(letters)
        self._hash = hash(self.letters)

    @classmethod
    def _trusted(cls, letters: tuple[Letter, ...]) -> Word:
        # Caller guarantees ``letters`` is already reduced.
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = hash(letters)
        return w

    @classmethod
    def parse(cls, text: str) -> Word:
        return parse_word(text)

    @classmethod
    def gen(cls, family: str, index: int | None = None, exponent: int = 1) -> Word:
        return cls._trusted((Letter(Symbol(family, index), exponent),))

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else invert(self)
        out = IDENTITY
        for _ in range(abs(n)):
            out = multiply(out, base)
        return out

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Word) -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return tuple((l.symbol.family, l.symbol.index, l.exponent) for l in self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def symbols(self) -> set[Symbol]:
        return {l.symbol for l in self.letters}

    def __str__(self) -> str:
        return " ".join(map(str, self.letters)) if self.letters else "e"

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


IDENTITY = Word._trusted(())


def reduce(raw: Iterable[Letter]) -> Word:
    """Freely reduce a sequence of letters."""
    return Word(raw)


def multiply(u: Word, v: Word) -> Word:
    a, b = u.letters, v.letters
    i = 0
    n = min(len(a), len(b))
    while i < n and a[-1 - i].symbol == b[i].symbol and a[-1 - i].exponent == -b[i].exponent:
        i += 1
    return Word._trusted(a[: len(a) - i] + b[i:])


def invert(u: Word) -> Word:
    return Word._trusted(tuple(l.inverse() for l in reversed(u.letters)))


# --- alphabet bijections -------------------------------------------------


@dataclass(frozen=True)
class Shift:
    """``family[i] -> family[i + step]`` on a Z-indexed family."""

    family: str
    step: int


@dataclass(frozen=True)
class FiniteCycles:
    """A permutation of the bare symbols named in ``cycles``.

    Singleton cycles are fixed points, so the members of the finite family
    are exactly the names appearing in ``cycles``.
    """

    family: str
    cycles: tuple[tuple[str, ...], ...]

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(m for c in self.cycles for m in c)


@dataclass(frozen=True)
class Fixed:
    """Identity on a family.

    With ``members=None`` the family is Z-indexed; otherwise it is the finite
    family of the listed bare symbols.
    """

    family: str
    members: tuple[str, ...] | None = None


Part = Union[Shift, FiniteCycles, Fixed]


class SymbolBijection:
    """A bijection of an alphabet assembled from shift, cycle and fixed parts."""

    def __init__(self, parts: Iterable[Part]):
        self.parts: tuple[Part, ...] = tuple(parts)
        labels = [p.family for p in self.parts]
        if len(set(labels)) != len(labels):
            raise ValueError(f"each family may appear in only one part: {labels}")
        # indexed family -> step (0 = fixed); bare symbol -> (cycle, position)
        self._steps: dict[str, int] = {}
        self._cycle_of: dict[str, tuple[tuple[str, ...], int]] = {}
        for p in self.parts:
            if isinstance(p, Shift):
                if p.step == 0:
                    raise ValueError(f"shift step must be nonzero (family {p.family!r}); use Fixed")
                self._steps[p.family] = p.step
            elif isinstance(p, Fixed) and p.members is None:
                self._steps[p.family] = 0
            else:
                cycles = p.cycles if isinstance(p, FiniteCycles) else tuple((m,) for m in p.members)
                for cycle in cycles:
                    if not cycle:
                        raise ValueError(f"empty cycle in family {p.family!r}")
                    for pos, m in enumerate(cycle):
                        if m in self._cycle_of:
                            raise ValueError(f"symbol {m!r} appears in more than one cycle")
                        self._cycle_of[m] = (tuple(cycle), pos)
        clash = set(self._steps) & set(self._cycle_of)
        if clash:
            raise ValueError(f"names used both as indexed family and bare symbol: {sorted(clash)}")

    @classmethod
    def identity(cls, indexed: Iterable[str] = (), bare: Iterable[str] = (), label: str = "fixed") -> SymbolBijection:
        parts: list[Part] = [Fixed(f) for f in indexed]
        bare = tuple(bare)
        if bare:
            parts.append(Fixed(label, bare))
        return cls(parts)

    @property
    def indexed_families(self) -> dict[str, int]:
        """Indexed family name -> shift step (0 when fixed)."""
        return dict(self._steps)

    @property
    def bare_symbols(self) -> tuple[str, ...]:
        return tuple(self._cycle_of)

    def contains(self, s: Symbol) -> bool:
        if s.index is None:
            return s.family in self._cycle_of
        return s.family in self._steps

    def image(self, s: Symbol, n: int = 1) -> Symbol:
        if s.index is None:
            try:
                cycle, pos = self._cycle_of[s.family]
            except KeyError:
                raise AlphabetMismatchError(f"symbol {s} is not in the alphabet") from None
            return Symbol(cycle[(pos + n) % len(cycle)], None)
        try:
            step = self._steps[s.family]
        except KeyError:
            raise AlphabetMismatchError(f"symbol {s} is not in the alphabet") from None
        return Symbol(s.family, s.index + n * step) if step else s

    def symbol_period(self, s: Symbol) -> int | float:
        if s.index is None:
            if s.family not in self._cycle_of:
                raise AlphabetMismatchError(f"symbol {s} is not in the alphabet")
            return len(self._cycle_of[s.family][0])
        if s.family not in self._steps:
            raise AlphabetMismatchError(f"symbol {s} is not in the alphabet")
        return INFINITE if self._steps[s.family] else 1

    def has_finite_orbit(self) -> bool:
        """True iff some symbol of the alphabet has a finite orbit."""
        return bool(self._cycle_of) or any(step == 0 for step in self._steps.values())

    def is_identity(self) -> bool:
        return all(s == 0 for s in self._steps.values()) and all(
            len(c) == 1 for c, _ in self._cycle_of.values()
        )

    def tagged(self, tag: str) -> SymbolBijection:
        """The same bijection with every family and bare symbol renamed ``tag:name``."""
        parts: list[Part] = []
        for p in self.parts:
            if isinstance(p, Shift):
                parts.append(Shift(f"{tag}:{p.family}", p.step))
            elif isinstance(p, FiniteCycles):
                parts.append(
                    FiniteCycles(f"{tag}:{p.family}", tuple(tuple(f"{tag}:{m}" for m in c) for c in p.cycles))
                )
            else:
                members = None if p.members is None else tuple(f"{tag}:{m}" for m in p.members)
                parts.append(Fixed(f"{tag}:{p.family}", members))
        return SymbolBijection(parts)

    @classmethod
    def union(cls, bijections: Iterable[SymbolBijection]) -> SymbolBijection:
        return cls(p for b in bijections for p in b.parts)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SymbolBijection)
            and self._steps == other._steps
            and {m: self.image(Symbol(m)) for m in self._cycle_of}
            == {m: other.image(Symbol(m)) for m in other._cycle_of}
        )

    def __hash__(self) -> int:
        return hash(frozenset(self._steps.items()))

    def __repr__(self) -> str:
        return f"SymbolBijection({list(self.parts)!r})"


def apply_power(T: SymbolBijection, n: int, u: Word) -> Word:
    """Apply ``T**n`` letterwise.

    A bijection of the alphabet keeps distinct symbols distinct, so the image
    of a reduced word is reduced.
    """
    if n == 0:
        for l in u.letters:
            if not T.contains(l.symbol):
                raise AlphabetMismatchError(f"symbol {l.symbol} is not in the alphabet")
        return u
    return Word._trusted(tuple(Letter(T.image(l.symbol, n), l.exponent) for l in u.letters))


def orbit_period(T: SymbolBijection, u: Word) -> int | float:
    """Least ``p > 0`` with ``T**p u == u``, or ``INFINITE``."""
    if u.is_identity:
        raise IdentityWordError("the identity word has the trivial orbit; handle it separately")
    period = 1
    for s in u.symbols():
        p = T.symbol_period(s)
        if p == INFINITE:
            return INFINITE
        period = math.lcm(period, p)
    return period


def is_fixed(T: SymbolBijection, u: Word) -> bool:
    return all(T.image(s, 1) == s for s in u.symbols())


# --- text syntax ---------------------------------------------------------

FAMILY_RE = r"(?:\d+:)?[A-Za-z_][A-Za-z0-9_]*"
LETTER_RE = re.compile(rf"(?P<family>{FAMILY_RE})(?:\[(?P<index>[+-]?\d+)\])?(?:\^(?P<power>[+-]?\d+))?")
_WS = re.compile(r"\s+")


def letters_from_match(m: re.Match, text: str) -> list[Letter]:
    family = m.group("family")
    index = m.group("index")
    power = int(m.group("power")) if m.group("power") is not None else 1
    if power == 0:
        raise WordSyntaxError("zero exponent", text, m.start())
    if family == "e":
        if index is not None:
            raise WordSyntaxError("'e' is reserved for the identity", text, m.start())
        return []
    sym = Symbol(family, int(index) if index is not None else None)
    return [Letter(sym, 1 if power > 0 else -1)] * abs(power)


def parse_word(text: str) -> Word:
    """Parse ``s[0] s[3]^-1 t``-style text; ``e`` is the identity.

    Exponents other than -1 are accepted and expanded into repetition.
    """
    letters: list[Letter] = []
    pos = 0
    n = len(text)
    while pos < n:
        ws = _WS.match(text, pos)
        if ws:
            pos = ws.end()
            continue
        m = LETTER_RE.match(text, pos)
        if not m or (m.end() < n and not text[m.end()].isspace()):
            raise WordSyntaxError("unexpected character", text, m.end() if m else pos)
        letters.extend(letters_from_match(m, text))
        pos = m.end()
    return Word(letters)

