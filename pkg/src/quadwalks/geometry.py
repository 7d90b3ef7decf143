"""Surfaces ``M_S = {K_S(w, conj(w), z) = 0}`` and the approximation certificate.

Coordinates: the surface lives in ``(z, w)`` and the kernel is evaluated as
``K_S(w, conj(w), z)``.  Internally every series uses ``(x, y, t)`` with
``x <-> w``, ``y <-> conj(w)``, ``t <-> z``; the renaming happens only when a
certificate is serialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import group as grp
from .kernel import KernelDecomposition, divide, kernel, remainder_shape_ok
from .series import TruncatedSeries, swap_xy, terms_to_json
from .walks import StepSet, all_step_sets, enumerate_walks

SW = (-1, -1)

Poly3 = dict[tuple[int, int, int], int]


class NotSmoothError(ValueError):
    pass


class HypothesisError(ValueError):
    pass


def kernel_poly3(S: StepSet) -> Poly3:
    """``K_S(w, wb, z)`` as ``{(deg_w, deg_wb, deg_z): c}``."""
    out: Poly3 = {(1, 1, 0): 1}
    for (i, j), c in kernel(S).step_poly.items():
        out[(i, j, 1)] = out.get((i, j, 1), 0) - c
    return out


def _diff(p: Poly3, var: int) -> Poly3:
    out: Poly3 = {}
    for m, c in p.items():
        if m[var]:
            mm = list(m)
            mm[var] -= 1
            out[tuple(mm)] = out.get(tuple(mm), 0) + c * m[var]
    return {m: c for m, c in out.items() if c}


def partials_at_origin(S: StepSet) -> tuple[int, int, int]:
    """``(dK/dw, dK/dwb, dK/dz)`` at the origin, by formal differentiation.

    The z-derivative is ``-sum w^(a+1) wb^(b+1)``, so its value is ``-1``
    when ``SW`` is a step and ``0`` otherwise.
    """
    K = kernel_poly3(S)
    return tuple(_diff(K, v).get((0, 0, 0), 0) for v in range(3))


def is_smooth(S: StepSet) -> bool:
    dw, dwb, dz = partials_at_origin(S)
    return dz != 0 or dw != 0 or dwb != 0


def is_diagonally_symmetric(S: StepSet) -> bool:
    return all((b, a) in S for a, b in S.steps)


# ---------------------------------------------------------------------------
# Bishop normal form

Poly2 = dict[tuple[int, int], int]


def _mul_trunc(a: Poly2, b: Poly2, d: int) -> Poly2:
    out: Poly2 = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            if i1 + i2 + j1 + j2 <= d:
                m = (i1 + i2, j1 + j2)
                out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


@dataclass(frozen=True)
class BishopExpansion:
    steps: StepSet
    degree: int
    graph: Poly2  # w wb (1 + R)^-1 up to total degree `degree`
    quadratic: Poly2
    tail: Poly2  # E = w wb - graph

    @property
    def bishop_invariant(self) -> int:
        return self.quadratic.get((2, 0), 0)


def bishop_expansion(S: StepSet, d: int) -> BishopExpansion:
    """Expand the graph of ``M_S`` over the w-plane near the origin.

    With ``SW`` in ``S``, ``K_S = 0`` solves to ``z = w wb / (1 + R)`` where
    ``R = sum_{S - SW} w^(a+1) wb^(b+1)``.
    """
    if SW not in S:
        raise NotSmoothError(f"M_S is singular at the origin for {{{S}}}: SW is not a step")
    if d < 3:
        raise ValueError("degree must be at least 3")
    R: Poly2 = {(a + 1, b + 1): 1 for a, b in S.steps if (a, b) != SW}
    neg_R = {m: -c for m, c in R.items()}
    # (1 + R)^-1 = sum (-R)^k; every term of R has degree >= 1
    inv: Poly2 = {(0, 0): 1}
    power: Poly2 = {(0, 0): 1}
    for _ in range(d):
        power = _mul_trunc(power, neg_R, d - 2)
        if not power:
            break
        for m, c in power.items():
            inv[m] = inv.get(m, 0) + c
    graph = {(i + 1, j + 1): c for (i, j), c in inv.items() if c and i + j + 2 <= d}
    quad = {m: c for m, c in graph.items() if sum(m) == 2}
    tail = {m: -c for m, c in graph.items()}
    tail[(1, 1)] = tail.get((1, 1), 0) + 1
    tail = {m: c for m, c in tail.items() if c}
    exp = BishopExpansion(S, d, graph, quad, tail)
    assert exp.quadratic == {(1, 1): 1}, exp.quadratic
    assert all(sum(m) >= 3 for m in exp.tail), exp.tail
    return exp


# ---------------------------------------------------------------------------
# certificate


@dataclass(frozen=True)
class NashCertificate:
    """Finite-order check of ``w wb + h(z,w) + conj(h)(z,wb) + K_S(w,wb,z) l = 0``.

    The solution has ``l = -Q`` and ``h`` equal to minus the x-axis half of
    the kernel-method remainder ``r``, so ``h + conj(h) = -r``.
    """

    steps: StepSet
    order: int
    Q: TruncatedSeries
    l: TruncatedSeries  # noqa: E741
    r: TruncatedSeries
    h: TruncatedSeries
    residual: TruncatedSeries
    identity_holds: bool
    r_symmetric: bool
    r_nonnegative: bool
    h_real_rational: bool

    @property
    def ok(self) -> bool:
        return self.identity_holds and self.r_symmetric and self.r_nonnegative and self.h_real_rational

    def to_json(self) -> dict:
        return {
            "steps": str(self.steps),
            "order": self.order,
            "identity_holds": self.identity_holds,
            "r_symmetric": self.r_symmetric,
            "r_nonnegative": self.r_nonnegative,
            "h_real_rational": self.h_real_rational,
            # x -> w, t -> z; h has no wb dependence so "j" is always 0
            "h_terms": terms_to_json(self.h),
        }


def positive_integer_coefficients(a: TruncatedSeries) -> bool:
    return all(isinstance(c, int) and c > 0 for *_, c in a.terms())


def certify(S: StepSet, N: int) -> NashCertificate:
    if SW not in S:
        raise HypothesisError(f"{{{S}}}: (-1,-1) is not a step, M_S is not smooth")
    if not is_diagonally_symmetric(S):
        raise HypothesisError(f"{{{S}}}: kernel is not symmetric in w and conj(w)")
    Q = enumerate_walks(S, N)
    dec: KernelDecomposition = divide(S, N)
    h = -dec.h
    h_bar = swap_xy(h)  # real coefficients: conjugation only renames w -> wb
    l = -Q  # noqa: E741
    ww = TruncatedSeries.from_terms(N, {(1, 1, 0): 1})
    residual = ww + h + h_bar + kernel(S).as_series(N) * l
    return NashCertificate(
        steps=S,
        order=N,
        Q=Q,
        l=l,
        r=dec.r,
        h=h,
        residual=residual,
        identity_holds=residual.is_zero() and dec.l == Q and remainder_shape_ok(dec.r),
        r_symmetric=swap_xy(dec.r) == dec.r,
        r_nonnegative=positive_integer_coefficients(dec.r),
        h_real_rational=all(j == 0 and 2 % Fraction(c).denominator == 0 for _, j, _, c in h.terms()),
    )


def figure1_models(
    bound: int = grp.DEFAULT_BOUND,
    prime: int = grp.DEFAULT_PRIME,
    seed: int = 0,
    trials: int = grp.DEFAULT_TRIALS,
) -> list[StepSet]:
    """Canonical infinite-group models that are smooth and diagonal-symmetric."""
    from .classify import reduce

    out = []
    for S in all_step_sets():
        if SW not in S or not is_diagonally_symmetric(S) or reduce(S) is not None:
            continue
        if not grp.order(S, bound=bound, prime=prime, seed=seed, trials=trials).finite:
            out.append(S)
    return out
