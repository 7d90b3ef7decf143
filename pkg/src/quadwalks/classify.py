"""Sweep of all 255 step sets down to the 79 nonequivalent models."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import group as grp
from .geometry import is_diagonally_symmetric, is_smooth
from .walks import StepSet, all_step_sets

log = logging.getLogger(__name__)

# reduction reasons
R1_HALF_PLANE = "R1: a quadrant constraint is inactive (half-plane model)"
R2_CONFINED = "R2: walks confined to a line, an axis or the origin"
R3_MIRROR = "R3: diagonal mirror of a smaller bitmask"

EXPECTED_CANONICAL = 79
EXPECTED_FINITE = 23
EXPECTED_INFINITE = 56


def _inactive_constraint(S: StepSet) -> bool:
    steps = S.steps
    if not any(a == -1 for a, _ in steps) or not any(b == -1 for _, b in steps):
        return True
    # x - y never decreases: y >= 0 already forces x >= 0 (and symmetrically)
    return all(a >= b for a, b in steps) or all(b >= a for a, b in steps)


def _confined(S: StepSet) -> bool:
    steps = S.steps
    if not any(a == 1 for a, _ in steps) or not any(b == 1 for _, b in steps):
        return True
    if all(a * d - b * c == 0 for a, b in steps for c, d in steps):
        return True
    # no step leaves the origin
    return all(a + b <= 0 for a, b in steps)


def reduce(S: StepSet) -> str | None:
    """None if ``S`` is canonical, else the first reduction rule that rejects it."""
    if _inactive_constraint(S):
        return R1_HALF_PLANE
    if _confined(S):
        return R2_CONFINED
    if S.reflect().mask < S.mask:
        return R3_MIRROR
    return None


@dataclass(frozen=True)
class ClassificationRecord:
    steps: StepSet
    canonical: bool
    reduction_reason: str | None
    smooth: bool
    diagonal_symmetric: bool
    group: grp.GroupReport | None
    guesses: dict | None = field(default=None)

    @property
    def infinite_group(self) -> bool:
        return self.group is not None and not self.group.degenerate and not self.group.finite

    @property
    def figure1(self) -> bool:
        return self.canonical and self.infinite_group and self.smooth and self.diagonal_symmetric

    def to_json(self) -> dict:
        return {
            "mask": self.steps.mask,
            "steps": str(self.steps),
            "canonical": self.canonical,
            "reduction_reason": self.reduction_reason,
            "smooth": self.smooth,
            "diagonal_symmetric": self.diagonal_symmetric,
            "group": None if self.group is None else self.group.to_json(),
            "guesses": self.guesses,
        }


def classify_one(
    S: StepSet,
    bound: int = grp.DEFAULT_BOUND,
    prime: int = grp.DEFAULT_PRIME,
    seed: int = 0,
    trials: int = grp.DEFAULT_TRIALS,
) -> ClassificationRecord:
    reason = reduce(S)
    report = None
    if reason is None:
        report = grp.order(S, bound=bound, mode="modular", prime=prime, seed=seed, trials=trials)
    return ClassificationRecord(
        steps=S,
        canonical=reason is None,
        reduction_reason=reason,
        smooth=is_smooth(S),
        diagonal_symmetric=is_diagonally_symmetric(S),
        group=report,
    )


def _classify_mask(args: tuple[int, int, int, int, int]) -> ClassificationRecord:
    mask, bound, prime, seed, trials = args
    return classify_one(StepSet(mask), bound, prime, seed, trials)


def sweep(
    bound: int = grp.DEFAULT_BOUND,
    prime: int = grp.DEFAULT_PRIME,
    seed: int = 0,
    trials: int = grp.DEFAULT_TRIALS,
    jobs: int = 1,
) -> list[ClassificationRecord]:
    """One record per nonempty step set, in bitmask order."""
    args = [(S.mask, bound, prime, seed, trials) for S in all_step_sets()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(_classify_mask, args, chunksize=16))
    else:
        records = []
        for k, a in enumerate(args, 1):
            records.append(_classify_mask(a))
            if k % 64 == 0:
                log.info("classified %d/255 step sets", k)
    return records


def summary(records: list[ClassificationRecord]) -> dict:
    canonical = [r for r in records if r.canonical]
    finite = [r for r in canonical if r.group is not None and r.group.finite]
    return {
        "total": len(records),
        "canonical": len(canonical),
        "finite_group": len(finite),
        "infinite_group": sum(r.infinite_group for r in canonical),
        "figure1": [str(r.steps) for r in records if r.figure1],
    }
