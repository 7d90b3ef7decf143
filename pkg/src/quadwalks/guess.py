"""Guessing algebraic equations and linear ODEs from truncated series.

A returned candidate is always checked against every available coefficient.
"None" only means no relation exists within the given bounds at the given
precision.  It is evidence for transcendence or non-D-finiteness, never a
proof.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .series import SECTIONS, Coefficient, section, univariate
from .walks import StepSet, enumerate_walks


class UnderdeterminedError(ValueError):
    """The linear system has at least as many unknowns as equations."""


@dataclass(frozen=True)
class UnivariateSample:
    coefficients: tuple[Coefficient, ...]
    steps: StepSet | None = None
    section: str | None = None

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("empty sample")
        if self.section is not None and self.section not in SECTIONS:
            raise ValueError(f"unknown section {self.section!r}")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


def sample(S: StepSet, which: str, N: int) -> UnivariateSample:
    """Coefficients of ``Q`` restricted to a boundary section."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if which in ("x=0", "y=0"):
        # Q(0, y, t) is a series in y too; the univariate sample sets y = 1
        s = section(section(enumerate_walks(S, N), which), "x=y=1")
    else:
        s = section(enumerate_walks(S, N), which)
    return UnivariateSample(tuple(univariate(s)), S, which)


@dataclass(frozen=True)
class GuessResult:
    kind: str  # "algebraic" or "ode"
    bounds: dict
    sample_order: int
    candidate: tuple[tuple[Coefficient, ...], ...] | None
    verified_to: int
    notes: tuple[str, ...] = field(default=())

    @property
    def found(self) -> bool:
        return self.candidate is not None

    @property
    def shape(self) -> tuple[int, int] | None:
        """``(deg_f, deg_t)`` for algebraic, ``(order, degree)`` for ODE."""
        if self.candidate is None:
            return None
        return len(self.candidate) - 1, max(len(p) for p in self.candidate) - 1

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "found": self.found,
            "bounds": self.bounds,
            "sample_order": self.sample_order,
            "verified_to": self.verified_to,
            "candidate": None
            if self.candidate is None
            else [[str(c) for c in p] for p in self.candidate],
            "evidence_only": True,
        }


# ---------------------------------------------------------------------------
# exact linear algebra


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        g = math.gcd(g, v)
        if g == 1:
            return row
    return [v // g for v in row] if g > 1 else row


def nullspace_vector(rows: Sequence[Sequence[int]], ncols: int) -> list[int] | None:
    """A primitive integer kernel vector of an integer matrix, or None.

    Fraction-free elimination with first-nonzero pivoting; the returned
    vector is the one attached to the first free column.
    """
    work = [_primitive(list(r)) for r in rows if any(r)]
    pivots: list[tuple[int, list[int]]] = []
    free = None
    for c in range(ncols):
        k = next((i for i, r in enumerate(work) if r[c]), None)
        if k is None:
            free = c
            break
        prow = work.pop(k)
        pv = prow[c]
        nxt = []
        for r in work:
            if r[c]:
                f = r[c]
                r = [pv * a - f * b for a, b in zip(r, prow)]
                if any(r):
                    r = _primitive(r)
                else:
                    continue
            nxt.append(r)
        work = nxt
        pivots.append((c, prow))
    if free is None:
        return None
    x = [Fraction(0)] * ncols
    x[free] = Fraction(1)
    for c, prow in reversed(pivots):
        s = sum(prow[j] * x[j] for j in range(c + 1, free + 1))
        x[c] = Fraction(-s, prow[c])
    lcm = 1
    for v in x:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    return _primitive([int(v * lcm) for v in x])


def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        lcm = 1
        for v in r:
            d = Fraction(v).denominator
            lcm = lcm * d // math.gcd(lcm, d)
        out.append([int(Fraction(v) * lcm) for v in r])
    return out


def _series_mul(a: list, b: list, n: int) -> list:
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


# ---------------------------------------------------------------------------
# residual checks


def algebraic_residual(f: Sequence[Coefficient], candidate) -> list:
    """Coefficients of ``sum_k p_k(t) f^k`` through ``t^N``."""
    N = len(f) - 1
    out = [0] * (N + 1)
    power = [1] + [0] * N
    for k, p in enumerate(candidate):
        if k:
            power = _series_mul(power, list(f), N)
        for m, v in enumerate(_series_mul(list(p), power, N)):
            out[m] += v
    return out


def derivative(f: Sequence[Coefficient], k: int) -> list:
    """Formal k-th derivative; known through ``t^(N-k)``."""
    N = len(f) - 1
    return [math.perm(m + k, k) * f[m + k] for m in range(N - k + 1)]


def ode_residual(f: Sequence[Coefficient], candidate) -> list:
    """Coefficients of ``sum_k p_k(t) f^(k)(t)`` through ``t^(N-r)``."""
    N = len(f) - 1
    r = len(candidate) - 1
    out = [0] * (N - r + 1)
    for k, p in enumerate(candidate):
        dk = derivative(f, k)
        for m, v in enumerate(_series_mul(list(p), dk, N - r)):
            out[m] += v
    return out


# ---------------------------------------------------------------------------
# guessers


def _solve(columns: list[list], neq: int) -> list[int] | None:
    rows = [[col[m] for col in columns] for m in range(neq)]
    return nullspace_vector(_integer_rows(rows), len(columns))


def _shifted(seq: list, e: int, n: int) -> list:
    # coefficients of t^e * seq through t^n
    return ([0] * e + list(seq))[: n + 1] + [0] * max(0, n + 1 - e - len(seq))


def _split(vec: list[int], r: int, d: int) -> tuple[tuple[int, ...], ...]:
    polys = [vec[k * (d + 1) : (k + 1) * (d + 1)] for k in range(r + 1)]
    # sign: lowest nonzero coefficient of the top nonzero polynomial is positive
    top = next(p for p in reversed(polys) if any(p))
    if next(c for c in top if c) < 0:
        polys = [[-c for c in p] for p in polys]
    return tuple(tuple(p) for p in polys)


def guess_algebraic(f: UnivariateSample, deg_f: int, deg_t: int) -> GuessResult:
    """Search ``P(t, f) = sum_{k<=deg_f} p_k(t) f^k = 0 mod t^(N+1)``.

    Bidegrees are tried in order of increasing ``deg_f``, then ``deg_t``;
    the first relation found is returned.
    """
    N = f.order
    if deg_f < 1 or deg_t < 0:
        raise ValueError("need deg_f >= 1 and deg_t >= 0")
    if (deg_f + 1) * (deg_t + 1) >= N:
        raise UnderdeterminedError(
            f"(deg_f+1)(deg_t+1) = {(deg_f + 1) * (deg_t + 1)} must be < N = {N}"
        )
    coeffs = list(f.coefficients)
    powers = [[1] + [0] * N]
    for _ in range(deg_f):
        powers.append(_series_mul(powers[-1], coeffs, N))
    bounds = {"deg_f": deg_f, "deg_t": deg_t}
    for df in range(1, deg_f + 1):
        for dt in range(deg_t + 1):
            cols = [_shifted(powers[k], e, N) for k in range(df + 1) for e in range(dt + 1)]
            vec = _solve(cols, N + 1)
            if vec is None:
                continue
            cand = _trim(_split(vec, df, dt))
            if any(algebraic_residual(coeffs, cand)):
                raise AssertionError("candidate failed its own residual check")
            return GuessResult("algebraic", bounds, N, cand, N)
    return GuessResult("algebraic", bounds, N, None, N)


def guess_ode(f: UnivariateSample, max_order: int, max_degree: int) -> GuessResult:
    """Search ``sum_{k<=r} p_k(t) f^(k)(t) = 0`` with ``deg p_k <= d``.

    The k-th derivative of the sample is known through ``t^(N-k)``, so a
    relation of order r is imposed on the coefficients of ``t^0 .. t^(N-r)``.
    Orders are tried first, then degrees.
    """
    N = f.order
    r_max, d_max = max_order, max_degree
    if r_max < 0 or d_max < 0:
        raise ValueError("bounds must be nonnegative")
    if (r_max + 1) * (d_max + 1) >= N:
        raise UnderdeterminedError(
            f"(r+1)(d+1) = {(r_max + 1) * (d_max + 1)} must be < N = {N}"
        )
    coeffs = list(f.coefficients)
    derivs = [derivative(coeffs, k) for k in range(r_max + 1)]
    bounds = {"max_order": r_max, "max_degree": d_max}
    for r in range(r_max + 1):
        neq = N - r + 1
        for d in range(d_max + 1):
            cols = [_shifted(derivs[k], e, N - r) for k in range(r + 1) for e in range(d + 1)]
            vec = _solve(cols, neq)
            if vec is None:
                continue
            cand = _trim(_split(vec, r, d))
            if any(ode_residual(coeffs, cand)):
                raise AssertionError("candidate failed its own residual check")
            return GuessResult("ode", bounds, N, cand, N - r)
    return GuessResult("ode", bounds, N, None, N - r_max)


def _trim(polys: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """Drop trailing zero coefficients of each polynomial."""
    return tuple(tuple(p[: max((i + 1 for i, c in enumerate(p) if c), default=0)]) for p in polys)


def format_candidate(result: GuessResult) -> str:
    if result.candidate is None:
        return "none"
    terms = []
    for k, p in enumerate(result.candidate):
        if not p:
            continue
        poly = " + ".join(
            f"{c}" + (f"*t^{e}" if e else "") for e, c in enumerate(p) if c
        )
        if result.kind == "ode":
            var = f"*f^({k})"
        else:
            var = f"*f^{k}" if k else ""
        terms.append(f"({poly}){var}")
    return " + ".join(terms) + " = 0"
