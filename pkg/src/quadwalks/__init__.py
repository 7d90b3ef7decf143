"""Exact computations for quarter-plane walks, their kernel equations, and
the Bishop surfaces built from them."""

from .classify import ClassificationRecord, reduce, summary, sweep
from .geometry import (
    BishopExpansion,
    NashCertificate,
    bishop_expansion,
    certify,
    figure1_models,
    is_diagonally_symmetric,
    is_smooth,
    partials_at_origin,
)
from .group import GroupReport, generators, invariance, order, sections
from .guess import GuessResult, UnivariateSample, guess_algebraic, guess_ode, sample
from .kernel import (
    KernelDecomposition,
    boundary_form,
    divide,
    verify_functional_equation,
)
from .series import TruncatedSeries, add, coeff, mul, section, swap_xy
from .walks import StepSet, all_step_sets, count, enumerate_walks

__version__ = "0.1.0"

FIGURE1 = (
    "N,NE,E,SW",
    "NE,S,SW,W",
    "N,E,S,SW,W",
    "N,E,SE,SW,NW",
    "N,NE,E,SE,SW,NW",
    "NE,SE,S,SW,W,NW",
    "N,E,SE,S,SW,W,NW",
)
