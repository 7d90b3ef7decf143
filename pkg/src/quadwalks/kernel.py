"""The kernel method for quadrant walks.

For a step set ``S`` the kernel is ``K_S = xy - t * P_S(x, y)`` with
``P_S = sum_{(a,b) in S} x^(a+1) y^(b+1)``.  Dividing ``xy`` by ``K_S`` in
``Q[[x, y, t]]`` gives a unique quotient ``l`` and a remainder ``r`` none of
whose monomials is divisible by ``xy``.  The quotient is the walk series and
the remainder collects the boundary terms.

Note on the ``Q(0,0,t)`` term: the boundary expression has to carry
``- eps * t * Q(0,0,t)`` for the identity ``xy = K_S * Q + r`` to hold (check
``S = {SW}``, where ``Q = 1`` and ``K_S = xy - t``).  :func:`divide` never
uses that expression, so it does not depend on the sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import BivariatePolynomial, TruncatedSeries, poly_mul, section, swap_xy
from .walks import StepSet, enumerate_walks

SW = (-1, -1)


class MalformedInputError(ValueError):
    """A negative exponent survived where it should have cancelled."""


@dataclass(frozen=True)
class KernelPolynomial:
    steps: StepSet
    # P_S with exponents in {0,1,2}^2
    step_poly: BivariatePolynomial

    def as_series(self, order: int) -> TruncatedSeries:
        """``K_S = xy - t P_S`` as a series of the given order."""
        terms = {(1, 1, 0): 1}
        for (i, j), c in self.step_poly.items():
            terms[(i, j, 1)] = terms.get((i, j, 1), 0) - c
        return TruncatedSeries.from_terms(order, terms)


@dataclass(frozen=True)
class KernelDecomposition:
    steps: StepSet
    order: int
    l: TruncatedSeries  # noqa: E741
    r: TruncatedSeries
    h: TruncatedSeries
    g: TruncatedSeries
    epsilon: int


def kernel(S: StepSet) -> KernelPolynomial:
    return KernelPolynomial(S, {(a + 1, b + 1): 1 for a, b in S.steps})


def split_remainder(r: TruncatedSeries) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Split ``r = h(x, t) + g(y, t)``; pure-t terms are shared equally."""
    hs, gs = [], []
    for s in r.slices:
        h, g = {}, {}
        for (i, j), c in s.items():
            if i and j:
                raise MalformedInputError(f"monomial x^{i} y^{j} divisible by xy")
            if i:
                h[(i, 0)] = c
            elif j:
                g[(0, j)] = c
            else:
                half = Fraction(c, 2)
                h[(0, 0)] = half
                g[(0, 0)] = half
        hs.append(h)
        gs.append(g)
    return TruncatedSeries(r.order, tuple(hs)), TruncatedSeries(r.order, tuple(gs))


def divide(S: StepSet, N: int) -> KernelDecomposition:
    """Divide ``xy`` by ``K_S`` up to ``t^N``.

    Order by order: ``xy * l_n + r_n = P_S * l_{n-1}``, so the part of
    ``P_S * l_{n-1}`` divisible by ``xy`` gives ``l_n`` and the rest is ``r_n``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    P = kernel(S).step_poly
    ls: list[dict] = [{(0, 0): 1}]
    rs: list[dict] = [{}]
    for _ in range(N):
        prod = poly_mul(P, ls[-1])
        ln, rn = {}, {}
        for (i, j), c in prod.items():
            if i >= 1 and j >= 1:
                ln[(i - 1, j - 1)] = c
            else:
                rn[(i, j)] = c
        ls.append(ln)
        rs.append(rn)
    l = TruncatedSeries(N, tuple(ls))  # noqa: E741
    r = TruncatedSeries(N, tuple(rs))
    h, g = split_remainder(r)
    return KernelDecomposition(S, N, l, r, h, g, int(SW in S))


def boundary_form(S: StepSet, Q: TruncatedSeries, N: int) -> TruncatedSeries:
    """``ty sum y^j Q(0,y,t) + tx sum x^i Q(x,0,t) - eps t Q(0,0,t)``.

    The sums run over ``j`` with ``(-1, j) in S`` and ``i`` with ``(i, -1) in S``.
    The ``y^-1``/``x^-1`` factors are absorbed into the leading ``y``/``x``.
    """
    if Q.order < N:
        raise ValueError(f"Q has order {Q.order} < {N}")
    Q = Q.truncate(N)
    out = TruncatedSeries.zero(N)
    on_x_axis, on_y_axis = section(Q, "y=0"), section(Q, "x=0")
    for a, b in S.steps:
        if a == -1:
            out = out + _shift_checked(on_y_axis, 0, b + 1)
        if b == -1:
            out = out + _shift_checked(on_x_axis, a + 1, 0)
    if SW in S:
        out = out - section(Q, "x=y=0")
    return out.shift(dn=1)


def _shift_checked(a: TruncatedSeries, di: int, dj: int) -> TruncatedSeries:
    if di < 0 or dj < 0:
        raise MalformedInputError("negative exponent after Laurent cancellation")
    return a.shift(di, dj)


@dataclass(frozen=True)
class FunctionalEquationReport:
    steps: StepSet
    order: int
    l_matches_oracle: bool
    r_matches_boundary: bool
    identity_holds: bool

    @property
    def ok(self) -> bool:
        return self.l_matches_oracle and self.r_matches_boundary and self.identity_holds

    def to_json(self) -> dict:
        return {
            "steps": str(self.steps),
            "order": self.order,
            "l_matches_oracle": self.l_matches_oracle,
            "r_matches_boundary": self.r_matches_boundary,
            "identity_holds": self.identity_holds,
        }


def division_residual(S: StepSet, Q: TruncatedSeries, r: TruncatedSeries) -> TruncatedSeries:
    """``K_S * Q + r - xy``, which vanishes exactly for the true pair."""
    N = min(Q.order, r.order)
    xy = TruncatedSeries.from_terms(N, {(1, 1, 0): 1})
    return kernel(S).as_series(N) * Q + r - xy


def verify_functional_equation(S: StepSet, N: int) -> FunctionalEquationReport:
    Q = enumerate_walks(S, N)
    dec = divide(S, N)
    bf = boundary_form(S, Q, N)
    return FunctionalEquationReport(
        steps=S,
        order=N,
        l_matches_oracle=dec.l == Q,
        r_matches_boundary=dec.r == bf,
        identity_holds=division_residual(S, Q, bf).is_zero(),
    )


def remainder_shape_ok(r: TruncatedSeries) -> bool:
    return all(i == 0 or j == 0 for i, j, _, _ in r.terms())


def is_r_symmetric(dec: KernelDecomposition) -> bool:
    return swap_xy(dec.r) == dec.r
