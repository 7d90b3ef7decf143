"""The group of the walk.

The step polynomial ``S(x, y) = sum x^a y^b`` is grouped by powers of x,
``S = A_{-1}(y)/x + A_0(y) + A_1(y) x``, and by powers of y,
``S = B_{-1}(x)/y + B_0(x) + B_1(x) y``.  The two involutions

    Phi(x, y) = (A_{-1}(y) / (x A_1(y)), y)
    Psi(x, y) = (x, B_{-1}(x) / (y B_1(x)))

leave ``S`` invariant and generate a dihedral group whose order is twice the
order of ``theta = Psi o Phi``.

Order detection never reduces rational functions.  Compositions are tracked
as unreduced numerator/denominator polynomials and only ever *evaluated*
at random points of a prime field:

* ``modular`` mode iterates ``theta`` on points with field division;
* ``symbolic`` mode evaluates the cross-multiplied identity
  ``X_m - x D_m`` of the unreduced composition.  A nonzero value proves
  ``theta^m != id``; zero values at random points certify the identity with
  Schwartz-Zippel failure probability at most ``(deg + 1) / p`` per point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .walks import StepSet

DEFAULT_PRIME = 2**61 - 1
PRIMES = (2**61 - 1, 2**62 - 57, 2**63 - 25)
DEFAULT_BOUND = 200
DEFAULT_TRIALS = 3
SYMBOLIC_CONFIRM_MAX_ORDER = 24

# univariate polynomial in one variable, coefficients of v^0, v^1, v^2
Quadratic = tuple[int, int, int]
Poly2 = dict[tuple[int, int], int]


class DegenerateModelError(ValueError):
    """A section polynomial needed by the group vanishes."""


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with bases that are deterministic below 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class SectionPolynomials:
    """``A[k]`` holds ``y * A_k(y)`` and ``B[k]`` holds ``x * B_k(x)``.

    Each is a coefficient triple in its variable; the clearing factor is the
    single power ``y`` (resp. ``x``) absorbing the ``b = -1`` (``a = -1``) steps.
    """

    A: dict[int, Quadratic]
    B: dict[int, Quadratic]

    @property
    def degenerate(self) -> list[str]:
        out = []
        for name, table in (("A", self.A), ("B", self.B)):
            for k in (-1, 1):
                if not any(table[k]):
                    out.append(f"{name}_{{{k}}}")
        return out

    def reassemble_by_x(self) -> dict[tuple[int, int], int]:
        """Step polynomial as ``{(a, b): 1}`` rebuilt from the A-grouping."""
        return {(k, e - 1): c for k in (-1, 0, 1) for e, c in enumerate(self.A[k]) if c}

    def reassemble_by_y(self) -> dict[tuple[int, int], int]:
        return {(e - 1, k): c for k in (-1, 0, 1) for e, c in enumerate(self.B[k]) if c}


def sections(S: StepSet) -> SectionPolynomials:
    A = {k: [0, 0, 0] for k in (-1, 0, 1)}
    B = {k: [0, 0, 0] for k in (-1, 0, 1)}
    for a, b in S.steps:
        A[a][b + 1] += 1
        B[b][a + 1] += 1
    return SectionPolynomials(
        {k: tuple(v) for k, v in A.items()}, {k: tuple(v) for k, v in B.items()}
    )


@dataclass(frozen=True)
class BirationalMap:
    """``(x, y) -> (nx/dx, ny/dy)`` with polynomial components over Z."""

    x_num: Poly2
    x_den: Poly2
    y_num: Poly2
    y_den: Poly2

    def __post_init__(self) -> None:
        if not self.x_den or not self.y_den:
            raise ValueError("component denominator is the zero polynomial")

    def swap_conjugate(self) -> BirationalMap:
        """``sigma o self o sigma`` with ``sigma(x, y) = (y, x)``."""

        def sw(p: Poly2) -> Poly2:
            return {(j, i): c for (i, j), c in p.items()}

        return BirationalMap(sw(self.y_num), sw(self.y_den), sw(self.x_num), sw(self.x_den))

    def evaluate(self, x: int, y: int, p: int) -> tuple[int, int] | None:
        """Image of ``(x, y)`` over GF(p), or None on a zero denominator."""
        dx, dy = _ev(self.x_den, x, y, p), _ev(self.y_den, x, y, p)
        if dx == 0 or dy == 0:
            return None
        return (
            _ev(self.x_num, x, y, p) * pow(dx, -1, p) % p,
            _ev(self.y_num, x, y, p) * pow(dy, -1, p) % p,
        )

    def to_sympy(self):
        import sympy

        x, y = sympy.symbols("x y")

        def conv(poly: Poly2):
            return sum((c * x**i * y**j for (i, j), c in poly.items()), sympy.Integer(0))

        return (conv(self.x_num) / conv(self.x_den), conv(self.y_num) / conv(self.y_den))


def _ev(poly: Poly2, x: int, y: int, p: int) -> int:
    return sum(c * pow(x, i, p) * pow(y, j, p) for (i, j), c in poly.items()) % p


def _quad_in(q: Quadratic, var: int) -> Poly2:
    # var 0 -> polynomial in x, var 1 -> polynomial in y
    return {((e, 0) if var == 0 else (0, e)): c for e, c in enumerate(q) if c}


def generators(S: StepSet) -> tuple[BirationalMap, BirationalMap]:
    sec = sections(S)
    bad = sec.degenerate
    if bad:
        raise DegenerateModelError(
            f"model {{{S}}} is degenerate: {', '.join(bad)} vanishes"
        )
    am, ap = _quad_in(sec.A[-1], 1), _quad_in(sec.A[1], 1)
    bm, bp = _quad_in(sec.B[-1], 0), _quad_in(sec.B[1], 0)
    phi = BirationalMap(am, {(i + 1, j): c for (i, j), c in ap.items()}, {(0, 1): 1}, {(0, 0): 1})
    psi = BirationalMap({(1, 0): 1}, {(0, 0): 1}, bm, {(i, j + 1): c for (i, j), c in bp.items()})
    return phi, psi


# ---------------------------------------------------------------------------
# unreduced composition, evaluated projectively


@dataclass
class _Track:
    """Values of the unreduced component polynomials at one base point."""

    x0: int
    y0: int
    X: int
    DX: int
    Y: int
    DY: int


def _hom(q: Quadratic, v: int, d: int, p: int) -> int:
    # d^2 * q(v/d)
    return (q[0] * d * d + q[1] * v * d + q[2] * v * v) % p


def _apply_phi(sec: SectionPolynomials, tr: _Track, p: int) -> None:
    tr.X, tr.DX = (
        _hom(sec.A[-1], tr.Y, tr.DY, p) * tr.DX % p,
        tr.X * _hom(sec.A[1], tr.Y, tr.DY, p) % p,
    )


def _apply_psi(sec: SectionPolynomials, tr: _Track, p: int) -> None:
    tr.Y, tr.DY = (
        _hom(sec.B[-1], tr.X, tr.DX, p) * tr.DY % p,
        tr.Y * _hom(sec.B[1], tr.X, tr.DX, p) % p,
    )


def _deg_phi(dx: int, dy: int) -> tuple[int, int]:
    return 2 * dy + dx, dy


def _deg_psi(dx: int, dy: int) -> tuple[int, int]:
    return dx, 2 * dx + dy


def _is_identity(tr: _Track, p: int) -> bool:
    return (tr.X - tr.x0 * tr.DX) % p == 0 and (tr.Y - tr.y0 * tr.DY) % p == 0


def _fresh_track(rng: random.Random, p: int) -> _Track:
    x0, y0 = rng.randrange(1, p), rng.randrange(1, p)
    return _Track(x0, y0, x0, 1, y0, 1)


def identity_test(
    S: StepSet,
    word: str,
    prime: int = DEFAULT_PRIME,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
) -> tuple[bool, Fraction]:
    """Test whether a word in the generators (e.g. ``"PP"`` or ``"QPQP"``) is the identity.

    Letters act right to left: ``"QP"`` is ``Psi o Phi``.  Returns the verdict
    and the Schwartz-Zippel bound on the probability of a false "identity".
    """
    sec = sections(S)
    if sec.degenerate:
        generators(S)  # raises with the vanishing section named
    rng = random.Random(seed)
    dx = dy = 1
    for ch in reversed(word):
        dx, dy = (_deg_phi if ch == "P" else _deg_psi)(dx, dy)
    for _ in range(trials):
        for _attempt in range(64):
            tr = _fresh_track(rng, prime)
            for ch in reversed(word):
                (_apply_phi if ch == "P" else _apply_psi)(sec, tr, prime)
            if tr.DX and tr.DY:
                break
        else:
            raise RuntimeError("denominator vanished at every sampled point")
        if not _is_identity(tr, prime):
            return False, Fraction(0)
    eps = Fraction(max(dx, dy) + 1, prime) ** trials
    return True, eps


@dataclass(frozen=True)
class GroupReport:
    steps: StepSet
    degenerate: bool
    order: int | None
    bound: int
    method: str
    prime: int
    seed: int
    trials: int
    confirmed: bool = False
    # probability bound for a false "finite" verdict (symbolic certification)
    error_bound: Fraction | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def verdict(self) -> str:
        if self.degenerate:
            return "degenerate"
        return "finite" if self.order is not None else "unbounded"

    @property
    def finite(self) -> bool:
        return self.order is not None

    def to_json(self) -> dict:
        return {
            "steps": str(self.steps),
            "degenerate": self.degenerate,
            "verdict": self.verdict,
            "order": self.order,
            "bound": self.bound,
            "method": self.method,
            "prime": str(self.prime),
            "seed": self.seed,
            "confirmed": self.confirmed,
            "error_bound": None if self.error_bound is None else f"{float(self.error_bound):.3e}",
        }


def _modular_period(
    phi: BirationalMap, psi: BirationalMap, bound: int, p: int, rng: random.Random
) -> list[bool]:
    """``returns[m]`` is True iff theta^m fixes a random base point."""
    for _attempt in range(64):
        x0, y0 = rng.randrange(1, p), rng.randrange(1, p)
        pt: tuple[int, int] | None = (x0, y0)
        returns = [False] * (bound + 1)
        for m in range(1, bound + 1):
            pt = phi.evaluate(*pt, p)
            if pt is not None:
                pt = psi.evaluate(*pt, p)
            if pt is None:
                break
            returns[m] = pt == (x0, y0)
        else:
            return returns
    raise RuntimeError("orbit hit a zero denominator at every sampled point")


def _symbolic_returns(S: StepSet, bound: int, p: int, rng: random.Random) -> tuple[list[bool], list[int]]:
    sec = sections(S)
    for _attempt in range(64):
        tr = _fresh_track(rng, p)
        returns = [False] * (bound + 1)
        degs = [1] * (bound + 1)
        dx = dy = 1
        ok = True
        for m in range(1, bound + 1):
            _apply_phi(sec, tr, p)
            _apply_psi(sec, tr, p)
            dx, dy = _deg_psi(*_deg_phi(dx, dy))
            degs[m] = max(dx, dy) + 1
            if not (tr.DX and tr.DY):
                ok = False
                break
            returns[m] = _is_identity(tr, p)
        if ok:
            return returns, degs
    raise RuntimeError("unreduced denominator vanished at every sampled point")


def order(
    S: StepSet,
    bound: int = DEFAULT_BOUND,
    mode: str = "modular",
    prime: int = DEFAULT_PRIME,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
) -> GroupReport:
    """Order of the group of the walk, if it is at most ``2 * bound``.

    The smallest ``m <= bound`` with ``theta^m = id`` on every trial gives
    order ``2m``.  A finite verdict with order at most 24 is re-certified by
    the cross-multiplied test on three primes.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    if mode not in ("modular", "symbolic"):
        raise ValueError(f"unknown mode {mode!r}")
    if not is_probable_prime(prime):
        raise ValueError(f"{prime} is not prime")
    base = dict(steps=S, bound=bound, prime=prime, seed=seed, trials=trials)
    if sections(S).degenerate:
        return GroupReport(degenerate=True, order=None, method=mode, **base)
    phi, psi = generators(S)
    rng = random.Random(seed)
    hits = [True] * (bound + 1)
    degs = None
    for _ in range(trials):
        if mode == "modular":
            r = _modular_period(phi, psi, bound, prime, rng)
        else:
            r, degs = _symbolic_returns(S, bound, prime, rng)
        hits = [h and x for h, x in zip(hits, r)]
    m = next((k for k in range(1, bound + 1) if hits[k]), None)
    if m is None:
        return GroupReport(degenerate=False, order=None, method=mode, **base)
    confirmed, eps = False, None
    if mode == "symbolic":
        eps = Fraction(degs[m], prime) ** trials
    if 2 * m <= SYMBOLIC_CONFIRM_MAX_ORDER:
        confirmed, eps = confirm_order(S, m, seed=seed, trials=trials)
    return GroupReport(
        degenerate=False, order=2 * m, method=mode, confirmed=confirmed, error_bound=eps, **base
    )


def confirm_order(
    S: StepSet, m: int, primes=PRIMES, seed: int = 0, trials: int = DEFAULT_TRIALS
) -> tuple[bool, Fraction]:
    """Certify ``theta^m = id`` and ``theta^k != id`` for proper divisors k of m.

    Runs the cross-multiplied identity test on each prime.
    """
    eps = Fraction(1)
    for p in primes:
        ok, e = identity_test(S, "QP" * m, prime=p, seed=seed, trials=trials)
        if not ok:
            return False, Fraction(1)
        eps *= e
        for k in range(1, m):
            if m % k == 0 and identity_test(S, "QP" * k, prime=p, seed=seed, trials=trials)[0]:
                return False, Fraction(1)
    return True, eps


def step_poly_mod(S: StepSet, x: int, y: int, p: int) -> int:
    xi, yi = pow(x, -1, p), pow(y, -1, p)
    tot = 0
    for a, b in S.steps:
        tot += (x if a == 1 else xi if a == -1 else 1) * (y if b == 1 else yi if b == -1 else 1)
    return tot % p


def invariance(
    S: StepSet, prime: int = DEFAULT_PRIME, seed: int = 0, trials: int = DEFAULT_TRIALS
) -> bool:
    """Check ``S(Phi(x, y)) = S(x, y)`` and ``S(Psi(x, y)) = S(x, y)`` at random points."""
    phi, psi = generators(S)
    rng = random.Random(seed)
    done = 0
    while done < trials:
        x, y = rng.randrange(1, prime), rng.randrange(1, prime)
        ref = step_poly_mod(S, x, y, prime)
        images = [g.evaluate(x, y, prime) for g in (phi, psi)]
        if any(im is None or 0 in im for im in images):
            continue
        if any(step_poly_mod(S, *im, prime) != ref for im in images):
            return False
        done += 1
    return True
