"""Exact truncated power series in three variables ``x, y, t``.

Series are truncated in ``t`` only: every ``t``-slice is a polynomial in
``x`` and ``y`` with nonnegative exponents and no x/y truncation at all.
Coefficients are Python ints, promoted to :class:`fractions.Fraction` only
when a non-integer value appears.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Union

Coefficient = Union[int, Fraction]
Monomial = tuple[int, int]
BivariatePolynomial = Mapping[Monomial, Coefficient]

SECTIONS = ("x=0", "y=0", "x=y=0", "x=y=1")


class TruncationError(ValueError):
    """Raised when a coefficient beyond the truncation order is requested."""


def normalize(c: Coefficient) -> Coefficient:
    """Return ``c`` as an int when it is integral, else as a reduced Fraction."""
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool) or not isinstance(c, int):
        raise TypeError(f"unsupported coefficient type {type(c).__name__}")
    return c


def _clean(poly: Mapping[Monomial, Coefficient]) -> MappingProxyType:
    out = {}
    for (i, j), c in poly.items():
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent in monomial {(i, j)}")
        c = normalize(c)
        if c:
            out[(i, j)] = c
    return MappingProxyType(out)


def _grlex(m: Monomial) -> tuple[int, int, int]:
    return (m[0] + m[1], m[0], m[1])


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """A series ``sum c[i,j,n] x^i y^j t^n`` known exactly for ``n <= order``."""

    order: int
    slices: tuple[BivariatePolynomial, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if len(self.slices) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} slices, got {len(self.slices)}"
            )
        object.__setattr__(self, "slices", tuple(_clean(s) for s in self.slices))

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls(order, tuple({} for _ in range(order + 1)))

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls.from_terms(order, {(0, 0, 0): 1})

    @classmethod
    def from_terms(
        cls, order: int, terms: Mapping[tuple[int, int, int], Coefficient]
    ) -> TruncatedSeries:
        """Build from ``{(i, j, n): c}``; terms with ``n > order`` are dropped."""
        slices: list[dict[Monomial, Coefficient]] = [{} for _ in range(order + 1)]
        for (i, j, n), c in terms.items():
            if n < 0:
                raise ValueError("negative t-degree")
            if n <= order:
                s = slices[n]
                s[(i, j)] = s.get((i, j), 0) + c
        return cls(order, tuple(slices))

    # access -----------------------------------------------------------

    def coeff(self, i: int, j: int, n: int) -> Coefficient:
        if n < 0 or n > self.order:
            raise TruncationError(
                f"t-degree {n} outside the known range 0..{self.order}"
            )
        return self.slices[n].get((i, j), 0)

    def terms(self) -> Iterator[tuple[int, int, int, Coefficient]]:
        """Yield ``(i, j, n, c)`` in canonical order: by ``n``, then graded lex."""
        for n, s in enumerate(self.slices):
            for m in sorted(s, key=_grlex):
                yield m[0], m[1], n, s[m]

    def is_zero(self) -> bool:
        return not any(self.slices)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise TruncationError(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries(order, self.slices[: order + 1])

    # arithmetic -------------------------------------------------------

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        return add(self, other)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return add(self, other.scale(-1))

    def __neg__(self) -> TruncatedSeries:
        return self.scale(-1)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        return mul(self, other)

    def scale(self, c: Coefficient) -> TruncatedSeries:
        return TruncatedSeries(
            self.order, tuple({m: v * c for m, v in s.items()} for s in self.slices)
        )

    def shift(self, di: int = 0, dj: int = 0, dn: int = 0) -> TruncatedSeries:
        """Multiply by ``x^di y^dj t^dn``, keeping the same order.

        Negative ``di``/``dj`` are allowed only when they cancel exactly;
        otherwise :class:`ValueError` is raised.
        """
        slices: list[dict] = [{} for _ in range(self.order + 1)]
        for n, s in enumerate(self.slices):
            if n + dn > self.order or n + dn < 0:
                if s and n + dn < 0:
                    raise ValueError("shift would produce a negative t-degree")
                continue
            slices[n + dn] = {(i + di, j + dj): c for (i, j), c in s.items()}
        return TruncatedSeries(self.order, tuple(slices))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        return all(dict(a) == dict(b) for a, b in zip(self.slices, other.slices))

    def agrees_with(self, other: TruncatedSeries) -> bool:
        """Equality at ``min(self.order, other.order)``."""
        n = min(self.order, other.order)
        return self.truncate(n) == other.truncate(n)

    def __hash__(self) -> int:
        return hash((self.order, tuple(tuple(sorted(s.items())) for s in self.slices)))

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, {to_text(self)})"

    def __str__(self) -> str:
        return to_text(self)


# ---------------------------------------------------------------------------
# polynomial helpers on single slices


def poly_add(a: BivariatePolynomial, b: BivariatePolynomial) -> dict:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def poly_mul(a: BivariatePolynomial, b: BivariatePolynomial) -> dict:
    out: dict[Monomial, Coefficient] = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            m = (i1 + i2, j1 + j2)
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


# ---------------------------------------------------------------------------
# ring operations


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise sum at order ``min(a.order, b.order)``."""
    n = min(a.order, b.order)
    return TruncatedSeries(
        n, tuple(poly_add(a.slices[k], b.slices[k]) for k in range(n + 1))
    )


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated in ``t`` at ``min(a.order, b.order)``."""
    n = min(a.order, b.order)
    slices = []
    for k in range(n + 1):
        acc: dict[Monomial, Coefficient] = {}
        for p in range(k + 1):
            sa, sb = a.slices[p], b.slices[k - p]
            if not sa or not sb:
                continue
            for m, c in poly_mul(sa, sb).items():
                acc[m] = acc.get(m, 0) + c
        slices.append(acc)
    return TruncatedSeries(n, tuple(slices))


def coeff(a: TruncatedSeries, i: int, j: int, n: int) -> Coefficient:
    return a.coeff(i, j, n)


def section(a: TruncatedSeries, which: str) -> TruncatedSeries:
    """Substitute ``x=0``, ``y=0``, ``x=y=0`` or ``x=y=1`` (same t-order)."""
    if which == "x=0":
        keep = lambda m: m[0] == 0  # noqa: E731
    elif which == "y=0":
        keep = lambda m: m[1] == 0  # noqa: E731
    elif which == "x=y=0":
        keep = lambda m: m == (0, 0)  # noqa: E731
    elif which in ("x=y=1", "x=1,y=1", "x=1 and y=1"):
        return TruncatedSeries(
            a.order, tuple({(0, 0): sum(s.values())} for s in a.slices)
        )
    else:
        raise ValueError(f"unknown section {which!r}; expected one of {SECTIONS}")
    return TruncatedSeries(
        a.order, tuple({m: c for m, c in s.items() if keep(m)} for s in a.slices)
    )


def swap_xy(a: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(
        a.order, tuple({(j, i): c for (i, j), c in s.items()} for s in a.slices)
    )


def univariate(a: TruncatedSeries) -> list[Coefficient]:
    """Coefficients of a series with no x/y dependence, as a list in t."""
    out = []
    for s in a.slices:
        if any(m != (0, 0) for m in s):
            raise ValueError("series depends on x or y")
        out.append(s.get((0, 0), 0))
    return out


# ---------------------------------------------------------------------------
# serialization


def _format_coeff(c: Coefficient) -> str:
    return str(c) if isinstance(c, int) else f"{c.numerator}/{c.denominator}"


def to_text(a: TruncatedSeries) -> str:
    """``c * x^i y^j t^n`` terms joined by `` + `` in canonical order."""
    parts = [f"{_format_coeff(c)} * x^{i} y^{j} t^{n}" for i, j, n, c in a.terms()]
    return " + ".join(parts) if parts else "0"


def to_json(a: TruncatedSeries) -> dict:
    return {"order": a.order, "terms": terms_to_json(a)}


def terms_to_json(a: TruncatedSeries) -> list[dict]:
    out = []
    for i, j, n, c in a.terms():
        f = Fraction(c)
        out.append(
            {"i": i, "j": j, "n": n, "num": str(f.numerator), "den": str(f.denominator)}
        )
    return out


def from_json(data: Mapping) -> TruncatedSeries:
    terms: dict[tuple[int, int, int], Coefficient] = {}
    for t in data["terms"]:
        key = (int(t["i"]), int(t["j"]), int(t["n"]))
        terms[key] = terms.get(key, 0) + Fraction(int(t["num"]), int(t["den"]))
    return TruncatedSeries.from_terms(int(data["order"]), terms)


def from_univariate(coeffs: Iterable[Coefficient]) -> TruncatedSeries:
    cs = list(coeffs)
    return TruncatedSeries(len(cs) - 1, tuple({(0, 0): c} for c in cs))
