import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freejoin.errors import ThresholdError
from freejoin.freegroup import FiniteCycles, Fixed, Shift, SymbolBijection, parse_word
from freejoin.freeproduct import GroupSystem, Monomial, identity_system, shift_system
from freejoin.groupalg import AlgebraElement
from freejoin.mixing import (
    NOT_STABILIZED,
    AveragedJoining,
    CorrelationSpec,
    FolnerBoxSequence,
    asymptotic_state,
    correlation_joining,
    correlation_value,
    folner_average,
    folner_average_direct,
    gap_region,
    is_ergodic,
    kmixing_threshold,
    mixing_witness,
    satisfies_gaps,
    shift_copies,
    verify_kmixing,
    verify_shifted_invariance,
)
from freejoin.sampling import random_word, symbol_pool
from oracles import box_average_oracle, correlation_oracle, triples

W = parse_word
B = shift_system("B")
SPEC = CorrelationSpec.of(B, 2, (1, "s[0]"), (2, "s[0]^-1"))


def test_ergodicity_examples():
    assert is_ergodic(B)
    assert not is_ergodic(identity_system("Id", bare=["a"]))
    mixed = GroupSystem("M", SymbolBijection([Shift("s", 1), FiniteCycles("c", (("a", "b"),))]))
    assert not is_ergodic(mixed)
    assert is_ergodic(GroupSystem("empty", SymbolBijection([])))
    assert not is_ergodic(GroupSystem("t", SymbolBijection([Shift("s", 3), Fixed("t")])))


def test_mixing_witness():
    w = mixing_witness(B, W("s[0] s[1]"), W("s[0]^-1 s[-1]^-1"))
    assert w["mixing"] and w["N"] == 2
    # check the witness: for |n| >= N the product never cancels
    g, h = W("s[0] s[1]"), W("s[0]^-1 s[-1]^-1")
    for n in range(-30, 31):
        u = g * W(" ".join(f"s[{l.symbol.index + n}]^-1" for l in h))
        if abs(n) >= w["N"]:
            assert not u.is_identity
    ident = identity_system("Id", bare=["a"])
    w = mixing_witness(ident)
    assert not w["mixing"] and w["period"] == 1
    assert w["g"] * w["h"] == W("e")
    assert mixing_witness(GroupSystem("empty", SymbolBijection([])))["mixing"]


def test_correlation_value_examples():
    assert correlation_value(SPEC, (3, 3)) == 1
    assert correlation_value(SPEC, (3, 5)) == 0
    assert correlation_joining(SPEC.context(), (3, 3))(SPEC.element()) == 1


@given(st.integers(0, 2**32))
def test_correlation_matches_oracle(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    idx = [rng.randint(1, k) for _ in range(rng.randint(1, 4))]
    words = [random_word(rng, symbol_pool(B, 2), 3, min_length=1) for _ in idx]
    spec = CorrelationSpec(B, k, Monomial(tuple(idx), tuple(words)))
    nbar = tuple(rng.randint(-4, 4) for _ in range(k))
    pairs = [(i, triples(w)) for i, w in zip(idx, words)]
    assert correlation_value(spec, nbar) == correlation_oracle(pairs, nbar)
    # the diagonal joining path agrees with the direct path
    assert correlation_joining(spec.context(), nbar)(spec.element()) == correlation_value(spec, nbar)


def test_threshold_examples():
    assert kmixing_threshold(SPEC) == 1
    assert kmixing_threshold(CorrelationSpec.of(B, 2, (1, "s[0] s[4]"), (2, "s[2]^-1"))) == 5
    assert kmixing_threshold(CorrelationSpec.of(B, 2, (1, "s[0] s[3]"))) == 0
    fast = shift_system("F", {"s": 2})
    assert kmixing_threshold(CorrelationSpec.of(fast, 2, (1, "s[0]"), (2, "s[4]^-1"))) == 3
    with pytest.raises(ThresholdError):
        kmixing_threshold(CorrelationSpec.of(identity_system("I", bare=["a"]), 2, (1, "a"), (2, "a^-1")))


def test_threshold_uses_union_span_across_words():
    # cancellation at gap 10 although each word has span 0
    spec = CorrelationSpec.of(B, 2, (1, "s[10]"), (2, "s[0]^-1"))
    assert correlation_value(spec, (0, 10)) == 1
    assert correlation_value(spec, (0, 9)) == 0
    assert kmixing_threshold(spec) == 11


def test_threshold_is_sound_by_exhaustion():
    rng = random.Random(17)
    for _ in range(60):
        k = rng.randint(2, 3)
        idx = [1]
        for _ in range(rng.randint(1, 4)):
            idx.append(rng.choice([i for i in range(1, k + 1) if i != idx[-1]]))
        words = tuple(random_word(rng, symbol_pool(B, 4), 3, min_length=1) for _ in idx)
        spec = CorrelationSpec(B, k, Monomial(tuple(idx), words))
        N = kmixing_threshold(spec)
        for nbar in gap_region(k, N, 4):
            assert correlation_value(spec, nbar) == 0


def test_verify_kmixing():
    rep = verify_kmixing(SPEC, 1, gap_region(2, 1))
    assert rep.passed
    assert rep.info["threshold"] == 1
    assert rep.info["nontrivial_witness"] == {"n": [0, 0], "value": "1", "free_product_value": "0"}
    spec3 = CorrelationSpec.of(B, 3, (1, "s[0]"), (2, "s[0]"), (3, "s[0]"))
    assert verify_kmixing(spec3, 1, gap_region(3, 1)).passed
    unit = CorrelationSpec(B, 2, Monomial((), ()))
    rep = verify_kmixing(unit, 0, gap_region(2, 0))
    assert rep.passed and rep.info["free_product_value"] == "1"
    # a threshold that is too small is caught
    assert not verify_kmixing(SPEC, 0, gap_region(2, 0)).passed


def test_folner_boxes():
    boxes = FolnerBoxSequence.shifted(2)
    assert boxes.intervals(3) == [(7, 9), (13, 15)]
    assert boxes.size(3) == 9
    assert len(list(boxes.points(3))) == 9
    assert boxes.symmetric_difference_ratio(5, (0, 0)) == 0
    for N in range(1, 12):
        assert boxes.symmetric_difference_ratio(N, (1, 0)) == Fraction(2, N)
    # brute-force symmetric difference on point sets
    for N, m in [(4, (1, 0)), (5, (2, -1)), (3, (4, 0)), (6, (-2, 3))]:
        P = set(boxes.points(N))
        Q = set(boxes.points(N, m))
        assert boxes.symmetric_difference_ratio(N, m) == Fraction(len(P ^ Q), len(P))


def test_folner_average_examples():
    plain = FolnerBoxSequence.plain(2)
    shifted = FolnerBoxSequence.shifted(2)
    for N in range(1, 8):
        assert folner_average(None, SPEC, plain, N) == Fraction(1, N)
        assert folner_average(None, SPEC, shifted, N) == 0
        assert AveragedJoining(SPEC.context(), shifted, N)(AlgebraElement.unit()) == 1
    ident = identity_system("Id", bare=["a", "b"])
    spec = CorrelationSpec.of(ident, 2, (1, "a b"), (2, "b^-1 a^-1"))
    assert folner_average(None, spec, plain, 4) == 1


@settings(max_examples=40)
@given(st.integers(0, 2**32), st.integers(1, 4))
def test_averaged_joining_matches_brute_force(seed, N):
    rng = random.Random(seed)
    k = rng.choice([2, 3])
    boxes = rng.choice([FolnerBoxSequence.shifted(k), FolnerBoxSequence.plain(k), FolnerBoxSequence(tuple(rng.randint(-2, 2) for _ in range(k)))])
    idx = [rng.randint(1, k) for _ in range(rng.randint(1, 4))]
    words = [random_word(rng, symbol_pool(B, 3), 2, min_length=1) for _ in idx]
    spec = CorrelationSpec(B, k, Monomial(tuple(idx), tuple(words)))
    fast = folner_average(None, spec, boxes, N)
    pairs = [(i, triples(w)) for i, w in zip(idx, words)]
    assert fast == box_average_oracle(pairs, boxes.intervals(N))
    assert fast == folner_average_direct(spec.context(), spec.element(), boxes, N)


def test_asymptotic_state():
    ctx = SPEC.context()
    res = asymptotic_state(ctx, [SPEC], FolnerBoxSequence.shifted(2), 8, 3)
    assert res[0].limit == 0 and res[0].stabilized_from == 1
    res = asymptotic_state(ctx, [SPEC], FolnerBoxSequence.plain(2), 8, 3)
    assert res[0].limit == NOT_STABILIZED and res[0].stabilized_from is None
    assert res[0].values[3] == Fraction(1, 4)
    res = asymptotic_state(ctx, [AlgebraElement.unit()], FolnerBoxSequence.plain(2), 4, 2)
    assert res[0].limit == 1 and res[0].stabilized_from == 1


def test_shift_copies_and_invariance():
    ctx = SPEC.context()
    a = SPEC.element()
    assert shift_copies(ctx, (0, 0), a) == a
    assert shift_copies(ctx, (2, -1), a) == AlgebraElement.lam("1:s[2] 2:s[-1]^-1")
    boxes = FolnerBoxSequence.plain(2)
    rep = verify_shifted_invariance(ctx, SPEC, boxes, 6, (1, 0))
    assert rep.passed and rep.info["ratio"] == "1/3"
    rng = random.Random(9)
    for _ in range(4):
        idx = (1, 2, 1)
        words = tuple(random_word(rng, symbol_pool(B, 2), 2, min_length=1) for _ in idx)
        spec = CorrelationSpec(B, 2, Monomial(idx, words))
        rep = verify_shifted_invariance(ctx, spec, FolnerBoxSequence.shifted(2), 50, (2, -1))
        assert rep.passed
        row = rep.values[0]
        # the two averages differ by at most the symmetric-difference ratio
        assert abs(Fraction(str(row["shifted"])) - Fraction(str(row["unshifted"]))) <= row["ratio"]


def test_gap_region_shape():
    region = gap_region(3, 2, 5)
    assert len(region) == 125
    assert all(satisfies_gaps(n, 2) for n in region)
    assert len(set(region)) == 125
    assert not satisfies_gaps((2, 3), 2)
    assert list(itertools.islice(region, 1)) == [(2, 4, 6)]
