"""Concrete GNS models for the trivial and the diagonal joinings.

The trivial joining is realized on ``l2`` of the product group with cyclic
vector ``delta_e``; a diagonal joining on ``l2`` of the target group.  In both
models the cyclic subspace of a factor is spanned by basis vectors ``delta_w``
for ``w`` in an explicit word set, so the orthogonal projection onto it is a
restriction of amplitudes.

For the trivial model the tensor-to-word identification
``delta_h (x) delta_k <-> delta_{(1:h)(2:k)}`` is used as a convention.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import FreeJoinError
from .freegroup import Letter, SymbolBijection, Word
from .freeproduct import FreeProductContext, embed
from .groupalg import (
    AlgebraElement,
    FinVector,
    alg_adjoint,
    inner,
    norm_sq,
    unitary_T_apply,
    vacuum_state,
)
from .joinings import DiagonalJoining, Joining, TrivialJoining
from .reports import Report


class SupportError(FreeJoinError, ValueError):
    """A vector is not supported in the required subspace."""


class GnsModel:
    joining: Joining
    bijection: SymbolBijection

    @property
    def omega(self) -> FinVector:
        return FinVector.vacuum()

    def in_subspace(self, iota: int, w: Word) -> bool:
        raise NotImplementedError

    def gamma(self, iota: int, a: AlgebraElement) -> FinVector:
        raise NotImplementedError

    def gamma_omega(self, a: AlgebraElement) -> FinVector:
        raise NotImplementedError

    def factor_unitary(self, iota: int, n: int, x: FinVector) -> FinVector:
        """``U_iota^n`` computed through the factor's own ``l2`` space."""
        raise NotImplementedError

    def check_support(self, iota: int, x: FinVector) -> None:
        bad = [w for w in x.terms if not self.in_subspace(iota, w)]
        if bad:
            raise SupportError(f"vector has support outside H_{iota}: {bad[0]}")


class TrivialModel(GnsModel):
    kind = "trivial"

    def __init__(self, ctx: FreeProductContext):
        self.ctx = ctx
        self.joining = TrivialJoining(ctx)
        self.bijection = ctx.bijection

    def in_subspace(self, iota: int, w: Word) -> bool:
        return self.ctx.is_in_factor(iota, w)

    def gamma(self, iota: int, a: AlgebraElement) -> FinVector:
        return FinVector(embed(self.ctx, iota, a).terms)

    def gamma_omega(self, a: AlgebraElement) -> FinVector:
        return FinVector(a.terms)

    def factor_unitary(self, iota: int, n: int, x: FinVector) -> FinVector:
        self.check_support(iota, x)
        local = FinVector((self.ctx.split(w).words[0] if w else w, c) for w, c in x.items())
        moved = unitary_T_apply(self.ctx.factor(iota).T, n, local)
        return FinVector((self.ctx.tag(iota, g), c) for g, c in moved.items())


class DiagonalModel(GnsModel):
    kind = "diagonal"

    def __init__(self, joining: DiagonalJoining):
        self.ctx = joining.ctx
        self.joining = joining
        self.bijection = joining.target.T

    def _pull(self, iota: int, w: Word) -> Word | None:
        letters = []
        for l in w.letters:
            s = self.joining.pull_symbol(iota, l.symbol)
            if s is None:
                return None
            letters.append(Letter(s, l.exponent))
        return Word._trusted(tuple(letters))

    def in_subspace(self, iota: int, w: Word) -> bool:
        return self._pull(iota, w) is not None

    def gamma(self, iota: int, a: AlgebraElement) -> FinVector:
        return FinVector((self.joining.factor_image(iota, g), c) for g, c in a.items())

    def gamma_omega(self, a: AlgebraElement) -> FinVector:
        return FinVector(self.joining.delta(a).terms)

    def factor_unitary(self, iota: int, n: int, x: FinVector) -> FinVector:
        self.check_support(iota, x)
        local = FinVector((self._pull(iota, w), c) for w, c in x.items())
        moved = unitary_T_apply(self.ctx.factor(iota).T, n, local)
        return FinVector((self.joining.factor_image(iota, g), c) for g, c in moved.items())


def gns_model(J: Joining) -> GnsModel:
    if isinstance(J, DiagonalJoining):
        return DiagonalModel(J)
    if isinstance(J, TrivialJoining):
        return TrivialModel(J.ctx)
    raise TypeError(f"no concrete GNS model for {J.kind} joinings")


def gamma(model: GnsModel, iota: int, a: AlgebraElement) -> FinVector:
    return model.gamma(iota, a)


def conditional_expectation(model: GnsModel, iota: int, kappa: int, x: FinVector) -> FinVector:
    """``P_iota^kappa``: orthogonal projection of ``x in H_kappa`` onto ``H_iota``."""
    model.check_support(kappa, x)
    return x.restrict(lambda w: model.in_subspace(iota, w))


def gns_unitary(model: GnsModel, n: int, x: FinVector) -> FinVector:
    """``U_omega^n``: ``delta_w -> delta_{T^n w}`` for the model's bijection."""
    return unitary_T_apply(model.bijection, n, x)


def check_intertwining(
    model: GnsModel,
    iota: int,
    kappa: int,
    n_range: Iterable[int],
    samples: Sequence[FinVector],
    basis: Sequence[Word] = (),
) -> Report:
    """``P U_kappa^n = U_iota^n P`` plus the defining property and contraction of ``P``.

    ``basis`` adds extra basis words of ``H_iota`` to test the defining
    property against; the support of each sample is always included.
    """
    report = Report(f"gns-check[{model.kind}, iota={iota}, kappa={kappa}]")
    ns = list(n_range)
    for w in basis:
        report.check(model.in_subspace(iota, w), check="basis-in-H_iota", word=w)
    for x in samples:
        model.check_support(kappa, x)
        px = conditional_expectation(model, iota, kappa, x)
        ys = {w for w in x.terms if model.in_subspace(iota, w)} | set(basis)
        for y in sorted(ys):
            dy = FinVector.delta(y)
            report.expect_equal(inner(px, dy), inner(x, dy), check="defining-property", x=x, y=y)
        report.check(norm_sq(px) <= norm_sq(x), check="contraction", x=x)
        for n in ns:
            ux = model.factor_unitary(kappa, n, x)
            report.expect_equal(gns_unitary(model, n, x), ux, check="restriction U_omega|H_kappa", x=x, n=n)
            lhs = conditional_expectation(model, iota, kappa, ux)
            rhs = model.factor_unitary(iota, n, px)
            report.expect_equal(lhs, rhs, check="intertwining", x=x, n=n)
    return report


def check_gns_inner_product(model: GnsModel, pairs: Iterable[tuple[AlgebraElement, AlgebraElement]]) -> Report:
    """``<gamma(a*), gamma(b)> = omega(ab)``, the defining property of the GNS space."""
    report = Report(f"gns-inner-product[{model.kind}]")
    for a, b in pairs:
        lhs = inner(model.gamma_omega(alg_adjoint(a)), model.gamma_omega(b))
        report.expect_equal(lhs, model.joining(a * b), a=a, b=b)
    return report


def check_factor_gamma(
    model: GnsModel, iota: int, kappa: int, pairs: Iterable[tuple[AlgebraElement, AlgebraElement]]
) -> Report:
    """``<gamma_iota(a*), gamma_kappa(b)> = omega(psi_iota(a) psi_kappa(b))``."""
    ctx = model.ctx
    report = Report(f"gamma-law[{model.kind}, iota={iota}, kappa={kappa}]")
    for a, b in pairs:
        lhs = inner(model.gamma(iota, alg_adjoint(a)), model.gamma(kappa, b))
        report.expect_equal(lhs, model.joining(embed(ctx, iota, a) * embed(ctx, kappa, b)), a=a, b=b)
    return report


def check_fixed_projection(
    model: GnsModel,
    iota: int,
    kappa: int,
    elements: Sequence[AlgebraElement],
    n_range: Iterable[int],
) -> Report:
    """Ergodic factor ``iota`` against an identity factor ``kappa``.

    ``v = P_iota^kappa gamma_kappa(a)`` is fixed by ``U_iota``, and therefore a
    multiple of the cyclic vector, namely ``mu_kappa(a) Omega``.
    """
    report = Report(f"fixed-projection[{model.kind}, iota={iota}, kappa={kappa}]")
    ns = list(n_range)
    for a in elements:
        v = conditional_expectation(model, iota, kappa, model.gamma(kappa, a))
        for n in ns:
            report.expect_equal(model.factor_unitary(iota, n, v), v, check="U_iota-fixed", element=a, n=n)
        report.expect_equal(v, model.omega.scale(vacuum_state(a)), check="in-span-Omega", element=a)
    return report
