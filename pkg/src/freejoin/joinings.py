"""Joinings of group systems and exact verifiers for the joining axioms.

Every evaluator acts on the group algebra of the tagged free product group,
which is dense in both the full and the reduced free product.  ``carriers``
records which completions the state is known to live on.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import AlphabetMismatchError, ContextError, IntertwiningError
from .freegroup import Letter, Symbol, Word, apply_power
from .freeproduct import FreeProductContext, GroupSystem, embed, product_automorphism
from .groupalg import (
    AlgebraElement,
    FinVector,
    alg_adjoint,
    inner,
    left_regular_apply,
    norm_sq,
    vacuum_state,
)
from .reports import Report
from .scalars import ONE, ZERO, ComplexRational

FULL = "full"
REDUCED = "reduced"


class Joining:
    """A linear functional on the free-product group algebra."""

    kind = "abstract"
    carriers: tuple[str, ...] = (FULL,)

    def __init__(self, ctx: FreeProductContext):
        self.ctx = ctx

    def evaluate_word(self, w: Word) -> ComplexRational:
        raise NotImplementedError

    def evaluate(self, a: AlgebraElement) -> ComplexRational:
        total = ZERO
        for w, c in a.items():
            v = self.evaluate_word(w)
            if v:
                total = total + c * v
        return total

    def __call__(self, a: AlgebraElement) -> ComplexRational:
        return self.evaluate(a)

    def describe(self) -> dict:
        return {"kind": self.kind, "carriers": list(self.carriers), "k": self.ctx.k}


class TrivialJoining(Joining):
    """The free product state: vacuum of the product group."""

    kind = "trivial"
    carriers = (FULL, REDUCED)

    def evaluate_word(self, w: Word) -> ComplexRational:
        return ONE if w.is_identity else ZERO

    def evaluate(self, a: AlgebraElement) -> ComplexRational:
        return vacuum_state(a)


def trivial_joining(ctx: FreeProductContext) -> TrivialJoining:
    return TrivialJoining(ctx)


@dataclass(frozen=True, eq=False)
class FactorMap:
    """Symbol-level homomorphism from factor ``source`` into a target system.

    Names missing from ``symbol_map`` map to themselves; an indexed family
    ``f`` with ``index_shift[f] = c`` sends ``f[i]`` to ``symbol_map[f][i + c]``.
    ``offset`` is the power of the target dynamics applied afterwards.
    """

    source: int
    symbol_map: Mapping[str, str] = field(default_factory=dict)
    index_shift: Mapping[str, int] = field(default_factory=dict)
    offset: int = 0

    @classmethod
    def identity(cls, source: int, offset: int = 0) -> FactorMap:
        return cls(source, {}, {}, offset)

    def image(self, s: Symbol) -> Symbol:
        target = self.symbol_map.get(s.family, s.family)
        if s.index is None:
            return Symbol(target, None)
        return Symbol(target, s.index + self.index_shift.get(s.family, 0))

    def with_offset(self, offset: int) -> FactorMap:
        return FactorMap(self.source, self.symbol_map, self.index_shift, offset)


def validate_factor_map(system: GroupSystem, target: GroupSystem, fmap: FactorMap) -> None:
    """Raise unless ``fmap`` is an injective, intertwining symbol map ``system -> target``."""
    T, TB = system.T, target.T
    src_steps, tgt_steps = T.indexed_families, TB.indexed_families
    known = set(src_steps) | set(T.bare_symbols)
    extra = set(fmap.symbol_map) - known
    if extra:
        raise AlphabetMismatchError(f"factor map names symbols outside factor {fmap.source}: {sorted(extra)}")
    seen: dict[str, str] = {}
    for f, step in src_steps.items():
        F = fmap.symbol_map.get(f, f)
        if F not in tgt_steps:
            raise AlphabetMismatchError(f"family {f!r} maps to {F!r}, not an indexed family of {target.name!r}")
        if tgt_steps[F] != step:
            raise IntertwiningError(
                f"family {f!r} (step {step}) maps to {F!r} (step {tgt_steps[F]}); the map does not intertwine"
            )
        if F in seen:
            raise IntertwiningError(f"families {seen[F]!r} and {f!r} both map to {F!r}; not injective")
        seen[F] = f
    tgt_bare = set(TB.bare_symbols)
    for m in T.bare_symbols:
        M = fmap.symbol_map.get(m, m)
        if M not in tgt_bare:
            raise AlphabetMismatchError(f"symbol {m!r} maps to {M!r}, not a bare symbol of {target.name!r}")
        if M in seen:
            raise IntertwiningError(f"symbols {seen[M]!r} and {m!r} both map to {M!r}; not injective")
        seen[M] = m
        s = Symbol(m)
        if fmap.image(T.image(s)) != TB.image(fmap.image(s)):
            raise IntertwiningError(f"map does not intertwine the dynamics at symbol {m!r}")


class DiagonalJoining(Joining):
    """``Delta_g = nu o delta_g``: push every factor into the target, then evaluate the vacuum."""

    kind = "diagonal"

    def __init__(
        self,
        ctx: FreeProductContext,
        target: GroupSystem,
        maps: Sequence[FactorMap],
        offsets: Sequence[int] | None = None,
        *,
        _validated: bool = False,
    ):
        super().__init__(ctx)
        if len(maps) != ctx.k:
            raise ContextError(f"need one factor map per factor ({ctx.k}), got {len(maps)}")
        maps = list(maps)
        if offsets is not None:
            if len(offsets) != ctx.k:
                raise ContextError(f"need {ctx.k} offsets, got {len(offsets)}")
            maps = [m.with_offset(int(g)) for m, g in zip(maps, offsets)]
        for i, m in enumerate(maps, 1):
            if m.source != i:
                raise ContextError(f"factor map {i} declares source {m.source}")
            if not _validated:
                validate_factor_map(ctx.factor(i), target, m)
        self.target = target
        self.maps: tuple[FactorMap, ...] = tuple(maps)
        self._cache: dict[Symbol, Symbol] = {}

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(m.offset for m in self.maps)

    def with_offsets(self, offsets: Sequence[int]) -> DiagonalJoining:
        return DiagonalJoining(self.ctx, self.target, self.maps, offsets, _validated=True)

    def map_symbol(self, s: Symbol) -> Symbol:
        out = self._cache.get(s)
        if out is None:
            iota, local = self.ctx.factor_of(s)
            m = self.maps[iota - 1]
            out = self.target.T.image(m.image(local), m.offset)
            self._cache[s] = out
        return out

    def delta_word(self, w: Word) -> Word:
        return Word(Letter(self.map_symbol(l.symbol), l.exponent) for l in w.letters)

    def delta(self, a: AlgebraElement) -> AlgebraElement:
        return a.map_words(self.delta_word)

    def factor_image(self, iota: int, g: Word) -> Word:
        """``T_B^{g_iota} h_iota(g)`` for a word of factor ``iota``."""
        m = self.maps[iota - 1]
        self.ctx.factor(iota).check_word(g)
        mapped = Word._trusted(tuple(Letter(m.image(l.symbol), l.exponent) for l in g.letters))
        return apply_power(self.target.T, m.offset, mapped)

    @cached_property
    def _preimage(self) -> list[dict]:
        out = []
        for iota, m in enumerate(self.maps, 1):
            T = self.ctx.factor(iota).T
            fam = {m.symbol_map.get(f, f): f for f in T.indexed_families}
            bare = {m.symbol_map.get(b, b): b for b in T.bare_symbols}
            out.append({"indexed": fam, "bare": bare})
        return out

    def pull_symbol(self, iota: int, s: Symbol) -> Symbol | None:
        """Inverse of ``T_B^{g_iota} h_iota`` on symbols; ``None`` off the image."""
        m = self.maps[iota - 1]
        if not self.target.T.contains(s):
            return None
        s = self.target.T.image(s, -m.offset)
        pre = self._preimage[iota - 1]
        if s.index is None:
            b = pre["bare"].get(s.family)
            return None if b is None else Symbol(b)
        f = pre["indexed"].get(s.family)
        if f is None:
            return None
        return Symbol(f, s.index - m.index_shift.get(f, 0))

    def evaluate_word(self, w: Word) -> ComplexRational:
        return ONE if self.delta_word(w).is_identity else ZERO

    def describe(self) -> dict:
        return {**super().describe(), "target": self.target.name, "offsets": list(self.offsets)}


def diagonal_joining(
    ctx: FreeProductContext,
    target: GroupSystem,
    maps: Sequence[FactorMap] | None = None,
    offsets: Sequence[int] | None = None,
) -> DiagonalJoining:
    """Diagonal joining; ``maps=None`` means identity maps (a self-joining)."""
    if maps is None:
        maps = [FactorMap.identity(i) for i in range(1, ctx.k + 1)]
    return DiagonalJoining(ctx, target, maps, offsets)


class VectorStateJoining(Joining):
    """``a -> <eta, a eta> / <eta, eta>`` on ``l2`` of the product group."""

    kind = "vector"
    carriers = (FULL, REDUCED)

    def __init__(self, ctx: FreeProductContext, eta: FinVector):
        super().__init__(ctx)
        if not eta:
            raise ValueError("the vector of a vector state must be nonzero")
        for w in eta.terms:
            for l in w.letters:
                ctx.factor_of(l.symbol)
        self.eta = eta
        self._norm = norm_sq(eta)

    def evaluate(self, a: AlgebraElement) -> ComplexRational:
        return inner(self.eta, left_regular_apply(a, self.eta)) / self._norm

    def evaluate_word(self, w: Word) -> ComplexRational:
        return self.evaluate(AlgebraElement.lam(w))


def vector_state_joining(ctx: FreeProductContext, eta: FinVector) -> VectorStateJoining:
    return VectorStateJoining(ctx, eta)


# --- verification --------------------------------------------------------


def _as_element(x: AlgebraElement | Word | str) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    return AlgebraElement.lam(x)


def _factor_samples(ctx: FreeProductContext, samples) -> Iterable[tuple[int, Word | AlgebraElement]]:
    if isinstance(samples, Mapping):
        items = samples.items()
    else:
        items = enumerate(samples, 1)
    for iota, ws in items:
        for w in ws:
            yield int(iota), w


def check_state_axioms(J: Joining, elements: Iterable[AlgebraElement], report: Report | None = None) -> Report:
    report = report or Report(f"state-axioms[{J.kind}]")
    report.expect_equal(J(AlgebraElement.unit()), ONE, check="unital")
    for a in elements:
        a = _as_element(a)
        v = J(a)
        report.expect_equal(J(alg_adjoint(a)), v.conjugate(), check="hermitian", element=a)
        p = J(alg_adjoint(a) * a)
        report.check(p.is_nonnegative(), check="positive", element=a, got=p)
    return report


def verify_joining_axioms(
    J: Joining,
    samples: Mapping[int, Sequence[Word]] | Sequence[Sequence[Word]],
    n_range: Iterable[int],
    elements: Sequence[AlgebraElement | Word],
) -> Report:
    """Check restriction to every factor, invariance, and the state axioms.

    For vector-state kinds the same identities are the r-joining conditions,
    since both free products share this dense algebra.
    """
    report = Report(f"verify-joining[{J.kind}]")
    ctx = J.ctx
    for iota, g in _factor_samples(ctx, samples):
        a = _as_element(g)
        report.expect_equal(J(embed(ctx, iota, a)), vacuum_state(a), check="restriction", factor=iota, element=a)
    ns = list(n_range)
    elements = [_as_element(a) for a in elements]
    for a in elements:
        base = J(a)
        for n in ns:
            report.expect_equal(J(product_automorphism(ctx, n, a)), base, check="invariance", n=n, element=a)
    check_state_axioms(J, elements, report)
    report.info.update(J.describe())
    return report


def check_tensorial_splitting(
    J: Joining,
    a1_samples: Sequence[AlgebraElement | Word],
    a2_samples: Sequence[AlgebraElement | Word],
) -> Report:
    """Test ``J(a1 a2) = mu1(a1) mu2(a2)`` and ``J(a2 a1) = mu2(a2) mu1(a1)``."""
    ctx = J.ctx
    if ctx.k != 2:
        raise ContextError(f"tensorial splitting needs exactly two factors, got {ctx.k}")
    report = Report(f"split-check[{J.kind}]")
    for a1 in map(_as_element, a1_samples):
        e1 = embed(ctx, 1, a1)
        for a2 in map(_as_element, a2_samples):
            e2 = embed(ctx, 2, a2)
            product = vacuum_state(a1) * vacuum_state(a2)
            report.expect_equal(J(e1 * e2), product, check="a1*a2", a1=a1, a2=a2)
            report.expect_equal(J(e2 * e1), product, check="a2*a1", a1=a1, a2=a2)
    return report

