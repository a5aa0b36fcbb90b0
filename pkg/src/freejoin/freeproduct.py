"""Free products of group systems, realized as one free group on tagged symbols.

Factor ``i`` (1-based) contributes its alphabet with every family renamed
``"i:family"``.  Since the tagged alphabets are disjoint, the free group on
their union is the free product of the factor groups, and its group algebra
is the common dense subalgebra of the full and the reduced free product.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import AlphabetMismatchError, ContextError
from .freegroup import (
    IDENTITY,
    Letter,
    Shift,
    Symbol,
    SymbolBijection,
    Word,
    is_fixed,
    multiply,
)
from .groupalg import AlgebraElement, alg_automorphism, vacuum_state
from .scalars import ComplexRational


@dataclass(frozen=True)
class GroupSystem:
    """``(C*_r(Gamma), vacuum, alpha_T)`` for the free group on T's alphabet."""

    name: str
    T: SymbolBijection = field(compare=False)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupSystem) and self.name == other.name and self.T == other.T

    def __hash__(self) -> int:
        return hash(self.name)

    def contains_word(self, w: Word) -> bool:
        return all(self.T.contains(l.symbol) for l in w.letters)

    def check_word(self, w: Word) -> None:
        for l in w.letters:
            if not self.T.contains(l.symbol):
                raise AlphabetMismatchError(f"symbol {l.symbol} is not in the alphabet of system {self.name!r}")

    def check_element(self, a: AlgebraElement) -> None:
        for w in a.terms:
            self.check_word(w)


def shift_system(name: str = "B", families: dict[str, int] | Iterable[str] = ("s",)) -> GroupSystem:
    """A system shifting each Z-indexed family by its step (default 1)."""
    steps = families if isinstance(families, dict) else {f: 1 for f in families}
    return GroupSystem(name, SymbolBijection(Shift(f, s) for f, s in steps.items()))


def identity_system(name: str, bare: Iterable[str] = (), indexed: Iterable[str] = ()) -> GroupSystem:
    return GroupSystem(name, SymbolBijection.identity(indexed=indexed, bare=bare))


def tag_symbol(iota: int, s: Symbol) -> Symbol:
    return Symbol(f"{iota}:{s.family}", s.index)


def untag_symbol(s: Symbol) -> tuple[int, Symbol]:
    tag, sep, family = s.family.partition(":")
    if not sep or not tag.isdigit():
        raise AlphabetMismatchError(f"symbol {s} carries no factor tag")
    return int(tag), Symbol(family, s.index)


@dataclass(frozen=True)
class Monomial:
    """``lambda_{i1}(g1) ... lambda_{im}(gm)`` with factor indices and factor words."""

    indices: tuple[int, ...]
    words: tuple[Word, ...]

    def __post_init__(self):
        if len(self.indices) != len(self.words):
            raise ValueError("a monomial needs one factor index per word")

    @classmethod
    def of(cls, *pairs: tuple[int, Word | str]) -> Monomial:
        idx = tuple(i for i, _ in pairs)
        words = tuple(w if isinstance(w, Word) else Word.parse(w) for _, w in pairs)
        return cls(idx, words)

    def normalized(self) -> Monomial:
        """Merge adjacent same-factor words and drop identities (alternating form)."""
        idx: list[int] = []
        words: list[Word] = []
        for i, w in zip(self.indices, self.words):
            if idx and idx[-1] == i:
                words[-1] = multiply(words[-1], w)
            else:
                idx.append(i)
                words.append(w)
            if words[-1].is_identity:
                idx.pop()
                words.pop()
        return Monomial(tuple(idx), tuple(words))

    def is_alternating(self) -> bool:
        return all(a != b for a, b in zip(self.indices, self.indices[1:]))

    def __str__(self) -> str:
        if not self.indices:
            return "1"
        return " ".join(f"lambda_{i}({w})" for i, w in zip(self.indices, self.words))


class FreeProductContext:
    """The free product of ``k`` group systems (copies allowed)."""

    def __init__(self, factors: Sequence[GroupSystem]):
        self.factors: tuple[GroupSystem, ...] = tuple(factors)
        if not self.factors:
            raise ContextError("a free product needs at least one factor")
        self.bijection = SymbolBijection.union(f.T.tagged(str(i)) for i, f in enumerate(self.factors, 1))

    @property
    def k(self) -> int:
        return len(self.factors)

    def factor(self, iota: int) -> GroupSystem:
        if not 1 <= iota <= self.k:
            raise ContextError(f"factor index {iota} outside 1..{self.k}")
        return self.factors[iota - 1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeProductContext) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __repr__(self) -> str:
        return f"FreeProductContext({[f.name for f in self.factors]})"

    def tag(self, iota: int, w: Word) -> Word:
        self.factor(iota).check_word(w)
        return Word._trusted(tuple(Letter(tag_symbol(iota, l.symbol), l.exponent) for l in w.letters))

    def factor_of(self, s: Symbol) -> tuple[int, Symbol]:
        iota, local = untag_symbol(s)
        if not self.factor(iota).T.contains(local):
            raise AlphabetMismatchError(f"symbol {s} is not in factor {iota}")
        return iota, local

    def split(self, w: Word) -> Monomial:
        """Alternating normal form of a product word: maximal single-factor blocks."""
        idx: list[int] = []
        blocks: list[list[Letter]] = []
        for l in w.letters:
            iota, local = self.factor_of(l.symbol)
            if not idx or idx[-1] != iota:
                idx.append(iota)
                blocks.append([])
            blocks[-1].append(Letter(local, l.exponent))
        return Monomial(tuple(idx), tuple(Word._trusted(tuple(b)) for b in blocks))

    def check_element(self, a: AlgebraElement) -> None:
        for w in a.terms:
            for l in w.letters:
                self.factor_of(l.symbol)

    def is_in_factor(self, iota: int, w: Word) -> bool:
        prefix = f"{iota}:"
        return all(l.symbol.family.startswith(prefix) for l in w.letters)


def embed(ctx: FreeProductContext, iota: int, a: AlgebraElement) -> AlgebraElement:
    """``psi_iota``: retag every family of factor ``iota``."""
    ctx.factor(iota).check_element(a)
    return a.map_words(lambda w: ctx.tag(iota, w))


def flatten(ctx: FreeProductContext, m: Monomial) -> AlgebraElement:
    w = IDENTITY
    for iota, g in zip(m.indices, m.words):
        w = multiply(w, ctx.tag(iota, g))
    return AlgebraElement.lam(w)


def product_automorphism(ctx: FreeProductContext, n: int, a: AlgebraElement) -> AlgebraElement:
    """``alpha^n`` on the free product: each factor's bijection acts on its own tags."""
    return alg_automorphism(ctx.bijection, n, a)


def free_product_state(ctx: FreeProductContext, a: AlgebraElement) -> ComplexRational:
    """The free product of the vacuum states, i.e. the vacuum of the product group."""
    return vacuum_state(a)


def fixed_subgroup_member(ctx: FreeProductContext, w: Word) -> bool:
    return is_fixed(ctx.bijection, w)

