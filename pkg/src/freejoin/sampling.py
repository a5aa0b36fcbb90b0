"""Seeded random words, elements and vectors for the property checks."""

from __future__ import annotations

import random
from collections.abc import Sequence
from fractions import Fraction

from .freegroup import Letter, Symbol, Word
from .freeproduct import FreeProductContext, GroupSystem
from .groupalg import AlgebraElement, FinVector
from .scalars import ComplexRational


def symbol_pool(system: GroupSystem, index_radius: int = 3) -> list[Symbol]:
    """Bare symbols plus indices ``-r..r`` of every indexed family."""
    pool = [Symbol(b) for b in system.T.bare_symbols]
    for f in system.T.indexed_families:
        pool.extend(Symbol(f, i) for i in range(-index_radius, index_radius + 1))
    return pool


def random_word(rng: random.Random, pool: Sequence[Symbol], max_length: int = 6, min_length: int = 0) -> Word:
    """A reduced word of length in ``[min_length, max_length]`` (uniform length, then letters)."""
    if not pool:
        return Word()
    n = rng.randint(min_length, max_length)
    letters: list[Letter] = []
    while len(letters) < n:
        l = Letter(rng.choice(pool), rng.choice((1, -1)))
        if letters and letters[-1] == l.inverse():
            continue
        letters.append(l)
    return Word._trusted(tuple(letters))


def random_scalar(rng: random.Random, complex_: bool = True, den: int = 4) -> ComplexRational:
    re = Fraction(rng.randint(-4, 4), rng.randint(1, den))
    im = Fraction(rng.randint(-4, 4), rng.randint(1, den)) if complex_ and rng.random() < 0.5 else 0
    return ComplexRational(re, im)


def random_element(
    rng: random.Random, pool: Sequence[Symbol], terms: int = 3, max_length: int = 4, complex_: bool = True
) -> AlgebraElement:
    return AlgebraElement(
        (random_word(rng, pool, max_length), random_scalar(rng, complex_)) for _ in range(rng.randint(1, terms))
    )


def random_vector(
    rng: random.Random, pool: Sequence[Symbol], terms: int = 3, max_length: int = 4, complex_: bool = True
) -> FinVector:
    return FinVector(
        (random_word(rng, pool, max_length), random_scalar(rng, complex_)) for _ in range(rng.randint(1, terms))
    )


def product_pool(ctx: FreeProductContext, index_radius: int = 3) -> list[Symbol]:
    out = []
    for i, f in enumerate(ctx.factors, 1):
        out.extend(Symbol(f"{i}:{s.family}", s.index) for s in symbol_pool(f, index_radius))
    return out


def factor_samples(
    rng: random.Random, ctx: FreeProductContext, count: int, max_length: int = 4, index_radius: int = 3
) -> dict[int, list[Word]]:
    return {
        i: [random_word(rng, symbol_pool(f, index_radius), max_length) for _ in range(count)]
        for i, f in enumerate(ctx.factors, 1)
    }


def random_product_elements(
    rng: random.Random, ctx: FreeProductContext, count: int, terms: int = 3, max_length: int = 4, index_radius: int = 3
) -> list[AlgebraElement]:
    pool = product_pool(ctx, index_radius)
    return [random_element(rng, pool, terms, max_length) for _ in range(count)]
