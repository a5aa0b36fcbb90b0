"""Ergodicity, multi-time correlation functions, k-mixing and Folner averages.

All correlation functions are for ``k`` copies of a single group system B.
``Delta_n`` is the diagonal self-joining with offsets ``n = (n_1, ..., n_k)``;
a monomial ``lambda_{i1}(g1) ... lambda_{im}(gm)`` evaluates to 1 exactly
when ``T^{n_i1} g1 ... T^{n_im} gm`` reduces to the identity.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import ContextError, IdentityWordError, ThresholdError
from .freegroup import IDENTITY, Shift, Symbol, Word, apply_power, invert, multiply
from .freeproduct import FreeProductContext, GroupSystem, Monomial, flatten, free_product_state
from .groupalg import AlgebraElement
from .joinings import DiagonalJoining, FactorMap, Joining
from .reports import Report
from .scalars import ONE, ZERO, ComplexRational

NOT_STABILIZED = "NOT_STABILIZED"


def is_ergodic(B: GroupSystem) -> bool:
    """Every nontrivial word has an infinite orbit iff no symbol has a finite one."""
    return not B.T.has_finite_orbit()


def is_strongly_mixing(B: GroupSystem) -> bool:
    # group systems are strongly mixing exactly when they are ergodic
    return is_ergodic(B)


def mixing_witness(B: GroupSystem, g: Word | None = None, h: Word | None = None) -> dict:
    """Evidence for or against ``nu(lambda(g) lambda(T^n h)) -> nu(g) nu(h)``.

    For an ergodic system and a pair ``(g, h) != (e, e)`` this returns ``N``
    with ``nu(lambda(g T^n h)) = 0`` for all ``|n| >= N``.  For a non-ergodic
    system it returns a symbol ``x`` of finite period ``p``; then
    ``g = x^-1, h = x`` gives the value 1 at every multiple of ``p``.
    """
    T = B.T
    if not is_ergodic(B):
        fixed = [f for f, step in T.indexed_families.items() if step == 0]
        if fixed:
            x = Word.gen(fixed[0], 0)
        else:
            x = Word.gen(min(T.bare_symbols, key=lambda b: (T.symbol_period(Symbol(b)), b)))
        p = T.symbol_period(x.letters[0].symbol)
        return {"mixing": False, "period": p, "g": invert(x), "h": x}
    if g is None or h is None:
        return {"mixing": True}
    if g.is_identity and h.is_identity:
        raise IdentityWordError("the pair (e, e) has constant correlation 1")
    B.check_word(g)
    B.check_word(h)
    target = invert(g)
    N = 0
    if not g.is_identity and not h.is_identity and len(g) == len(h):
        first_h, first_t = h.letters[0].symbol, target.letters[0].symbol
        if first_h.family == first_t.family:
            step = T.indexed_families[first_h.family]
            diff = first_t.index - first_h.index
            if diff % step == 0 and apply_power(T, diff // step, h) == target:
                N = abs(diff // step) + 1
    return {"mixing": True, "N": N}


def self_joining_context(B: GroupSystem, k: int) -> FreeProductContext:
    if k < 1:
        raise ContextError("k must be at least 1")
    return FreeProductContext([B] * k)


def _base_system(ctx: FreeProductContext) -> GroupSystem:
    B = ctx.factors[0]
    if any(f != B for f in ctx.factors):
        raise ContextError("correlation functions need k copies of one system")
    return B


@dataclass(frozen=True)
class CorrelationSpec:
    system: GroupSystem
    k: int
    monomial: Monomial

    def __post_init__(self):
        for i, w in zip(self.monomial.indices, self.monomial.words):
            if not 1 <= i <= self.k:
                raise ContextError(f"copy index {i} outside 1..{self.k}")
            self.system.check_word(w)

    @classmethod
    def of(cls, system: GroupSystem, k: int, *pairs: tuple[int, Word | str]) -> CorrelationSpec:
        return cls(system, k, Monomial.of(*pairs))

    def context(self) -> FreeProductContext:
        return self_joining_context(self.system, self.k)

    def element(self) -> AlgebraElement:
        return flatten(self.context(), self.monomial)

    def __str__(self) -> str:
        return str(self.monomial)


def correlation_value(spec: CorrelationSpec, nbar: Sequence[int]) -> ComplexRational:
    """``nu(lambda(T^{n_i1} g1 ... T^{n_im} gm))`` computed directly in B."""
    if len(nbar) != spec.k:
        raise ContextError(f"need {spec.k} times, got {len(nbar)}")
    T = spec.system.T
    w = IDENTITY
    for i, g in zip(spec.monomial.indices, spec.monomial.words):
        w = multiply(w, apply_power(T, nbar[i - 1], g))
    return ONE if w.is_identity else ZERO


def correlation_joining(ctx: FreeProductContext, nbar: Sequence[int]) -> DiagonalJoining:
    """``Delta_n`` for k copies of one system (identity factor maps shifted by ``n``)."""
    B = _base_system(ctx)
    return DiagonalJoining(ctx, B, [FactorMap.identity(i) for i in range(1, ctx.k + 1)], nbar)


def _check_pure_shift(B: GroupSystem) -> None:
    if not all(isinstance(p, Shift) for p in B.T.parts):
        raise ThresholdError(
            f"system {B.name!r} has non-shift parts; no closed-form threshold (sample instead)"
        )


def kmixing_threshold(spec: CorrelationSpec) -> int:
    """Gap ``N*`` beyond which the correlation equals the free product value.

    If ``n_1 >= N*`` and every successive gap ``n_{j+1} - n_j >= N*``, then for
    each family with step ``s`` and index span ``D`` (over all words of the
    monomial) two copies differ by at least ``N* |s| > D`` in index, so the
    shifted words of different copies share no symbol and the alternating
    product cannot reduce to the identity.
    """
    B = spec.system
    _check_pure_shift(B)
    m = spec.monomial
    if any(w.is_identity for w in m.words):
        raise ThresholdError("monomial contains an identity word; normalize it first")
    if not m.is_alternating():
        raise ThresholdError("monomial is not alternating; normalize it first")
    if len(set(m.indices)) <= 1:
        return 0
    steps = B.T.indexed_families
    indices: dict[str, list[int]] = {}
    for w in m.words:
        for l in w.letters:
            indices.setdefault(l.symbol.family, []).append(l.symbol.index)
    return max((max(ix) - min(ix)) // abs(steps[f]) + 1 for f, ix in indices.items())


def satisfies_gaps(nbar: Sequence[int], threshold: int) -> bool:
    return nbar[0] >= threshold and all(b - a >= threshold for a, b in zip(nbar, nbar[1:]))


def gap_region(k: int, threshold: int, size: int = 5) -> list[tuple[int, ...]]:
    """``size**k`` points: ``n_1`` and every gap range over ``threshold .. threshold+size-1``."""
    vals = range(threshold, threshold + size)
    out = []
    for first, *gaps in itertools.product(vals, repeat=k):
        n = [first]
        for d in gaps:
            n.append(n[-1] + d)
        out.append(tuple(n))
    return out


def verify_kmixing(
    spec: CorrelationSpec,
    threshold: int,
    region: Iterable[Sequence[int]],
    witness_radius: int | None = None,
) -> Report:
    """Exact ``Delta_n(a) = (*nu)(a)`` on every sampled ``n`` past the threshold.

    Also searches ``n = (0, d_2, ..., d_k)`` with ``|d_j| <= witness_radius``
    for a point where the two differ; by invariance of the vacuum under the
    dynamics this covers every ``n`` with the same successive gaps.
    """
    report = Report(f"kmixing[{spec}]")
    expected = free_product_state(spec.context(), spec.element())
    skipped = 0
    for nbar in region:
        nbar = tuple(nbar)
        if not satisfies_gaps(nbar, threshold):
            skipped += 1
            continue
        report.expect_equal(correlation_value(spec, nbar), expected, n=nbar)
    if witness_radius is None:
        span = max((abs(l.symbol.index or 0) for w in spec.monomial.words for l in w.letters), default=0)
        witness_radius = max(threshold, 1) + span
    witness = None
    rng = range(-witness_radius, witness_radius + 1)
    for tail in itertools.product(rng, repeat=spec.k - 1):
        nbar = (0, *tail)
        v = correlation_value(spec, nbar)
        if v != expected:
            witness = {"n": list(nbar), "value": str(v), "free_product_value": str(expected)}
            break
    report.info.update(
        {"threshold": threshold, "free_product_value": str(expected), "skipped": skipped, "nontrivial_witness": witness}
    )
    return report


# --- Folner boxes --------------------------------------------------------


@dataclass(frozen=True)
class FolnerBoxSequence:
    """``Phi_N = prod_j ([N] + c_j N)`` with ``[N] = {1, ..., N}``."""

    offsets: tuple[int, ...]

    @classmethod
    def shifted(cls, k: int) -> FolnerBoxSequence:
        """``([N]+2N) x ([N]+4N) x ... x ([N]+2kN)``."""
        return cls(tuple(2 * j for j in range(1, k + 1)))

    @classmethod
    def plain(cls, k: int) -> FolnerBoxSequence:
        return cls((0,) * k)

    @property
    def k(self) -> int:
        return len(self.offsets)

    def intervals(self, N: int) -> list[tuple[int, int]]:
        if N < 1:
            raise ValueError("N must be at least 1")
        return [(c * N + 1, c * N + N) for c in self.offsets]

    def size(self, N: int) -> int:
        return N**self.k

    def points(self, N: int, shift: Sequence[int] | None = None) -> Iterable[tuple[int, ...]]:
        shift = shift or (0,) * self.k
        ranges = [range(a + m, b + m + 1) for (a, b), m in zip(self.intervals(N), shift)]
        return itertools.product(*ranges)

    def symmetric_difference_ratio(self, N: int, m: Sequence[int]) -> Fraction:
        """``|Phi_N sym-diff (Phi_N + m)| / |Phi_N|``."""
        overlap = math.prod(max(0, N - abs(x)) for x in m)
        return Fraction(2 * (self.size(N) - overlap), self.size(N))


def _difference_counts(boxes: FolnerBoxSequence, N: int) -> list[tuple[tuple[int, ...], int]]:
    # Delta_n depends on n only through n - n_1 (1, ..., 1), so count the box
    # points per difference vector (d_2, ..., d_k).
    (a1, b1), *rest = boxes.intervals(N)
    ranges = [range(a - b1, b - a1 + 1) for a, b in rest]
    out = []
    for d in itertools.product(*ranges):
        lo, hi = a1, b1
        for (a, b), dj in zip(rest, d):
            lo, hi = max(lo, a - dj), min(hi, b - dj)
        if hi >= lo:
            out.append(((0, *d), hi - lo + 1))
    return out


class AveragedJoining(Joining):
    """``(1/|Phi_N|) sum_{n in Phi_N} Delta_n`` on k copies of one system."""

    kind = "folner-average"

    def __init__(self, ctx: FreeProductContext, boxes: FolnerBoxSequence, N: int):
        super().__init__(ctx)
        if boxes.k != ctx.k:
            raise ContextError(f"boxes live in Z^{boxes.k} but the context has {ctx.k} factors")
        self.system = _base_system(ctx)
        self.boxes = boxes
        self.N = N
        self._counts = _difference_counts(boxes, N)
        self._size = boxes.size(N)

    def evaluate_word(self, w: Word) -> ComplexRational:
        m = self.ctx.split(w)
        T = self.system.T
        hits = 0
        for nbar, count in self._counts:
            u = IDENTITY
            for i, g in zip(m.indices, m.words):
                u = multiply(u, apply_power(T, nbar[i - 1], g))
            if u.is_identity:
                hits += count
        return ComplexRational(Fraction(hits, self._size))

    def describe(self) -> dict:
        return {**super().describe(), "N": self.N, "offsets": list(self.boxes.offsets)}


def _as_target(ctx: FreeProductContext | None, target) -> tuple[FreeProductContext, AlgebraElement]:
    if isinstance(target, CorrelationSpec):
        return ctx or target.context(), target.element()
    if ctx is None:
        raise ContextError("an algebra element needs an explicit context")
    return ctx, target


def folner_average(
    ctx: FreeProductContext | None,
    target: CorrelationSpec | AlgebraElement,
    boxes: FolnerBoxSequence,
    N: int,
) -> ComplexRational:
    ctx, a = _as_target(ctx, target)
    return AveragedJoining(ctx, boxes, N)(a)


def folner_average_direct(ctx: FreeProductContext, a: AlgebraElement, boxes: FolnerBoxSequence, N: int,
                          shift: Sequence[int] | None = None) -> ComplexRational:
    """The same average by brute force over every box point, via ``Delta_n``."""
    base = correlation_joining(ctx, (0,) * ctx.k)
    total = ZERO
    for nbar in boxes.points(N, shift):
        total = total + base.with_offsets(nbar)(a)
    return total / boxes.size(N)


@dataclass
class AsymptoticValue:
    element: AlgebraElement
    values: list[ComplexRational]
    limit: ComplexRational | str
    stabilized_from: int | None

    def to_dict(self) -> dict:
        return {
            "element": str(self.element),
            "limit": str(self.limit),
            "stabilized_from": self.stabilized_from,
            "values": [str(v) for v in self.values],
        }


def asymptotic_state(
    ctx: FreeProductContext,
    elements: Sequence[AlgebraElement | CorrelationSpec],
    boxes: FolnerBoxSequence,
    N_max: int,
    window: int,
) -> list[AsymptoticValue]:
    """Detect ``lim_N Delta_N(a)`` by exact constancy over the last ``window`` values."""
    if not N_max >= window >= 2:
        raise ValueError("need N_max >= window >= 2")
    joinings = [AveragedJoining(ctx, boxes, N) for N in range(1, N_max + 1)]
    out = []
    for target in elements:
        _, a = _as_target(ctx, target)
        values = [J(a) for J in joinings]
        tail = values[-window:]
        if all(v == tail[-1] for v in tail):
            start = N_max
            while start > 1 and values[start - 2] == tail[-1]:
                start -= 1
            out.append(AsymptoticValue(a, values, tail[-1], start))
        else:
            out.append(AsymptoticValue(a, values, NOT_STABILIZED, None))
    return out


def shift_copies(ctx: FreeProductContext, m: Sequence[int], a: AlgebraElement) -> AlgebraElement:
    """``tau``: apply ``beta^{m_i}`` to copy ``i`` (defined through the universal property)."""
    B = _base_system(ctx)

    def move(w: Word) -> Word:
        mono = ctx.split(w)
        u = IDENTITY
        for i, g in zip(mono.indices, mono.words):
            u = multiply(u, ctx.tag(i, apply_power(B.T, m[i - 1], g)))
        return u

    return a.map_words(move)


def verify_shifted_invariance(
    ctx: FreeProductContext,
    element: AlgebraElement | CorrelationSpec,
    boxes: FolnerBoxSequence,
    N: int,
    m: Sequence[int],
) -> Report:
    """``Delta_N(tau a)`` equals the average of ``Delta_n(a)`` over ``Phi_N + m``."""
    ctx, a = _as_target(ctx, element)
    m = tuple(m)
    report = Report(f"shifted-invariance[N={N}, m={list(m)}]")
    lhs = AveragedJoining(ctx, boxes, N)(shift_copies(ctx, m, a))
    rhs = folner_average_direct(ctx, a, boxes, N, shift=m)
    report.expect_equal(lhs, rhs, element=a)
    unshifted = AveragedJoining(ctx, boxes, N)(a)
    ratio = boxes.symmetric_difference_ratio(N, m)
    report.values.append(
        {"element": a, "N": N, "shifted": lhs, "translated_box": rhs, "unshifted": unshifted, "ratio": ratio}
    )
    report.info["ratio"] = str(ratio)
    return report
