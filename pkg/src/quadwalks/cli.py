"""Command-line front end.

Exit status: 0 on success, 1 when any verification flag in the output is
false, 2 on usage errors (bad flags, unknown step tokens, violated
hypotheses).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from . import classify as cls
from . import geometry as geo
from . import group as grp
from . import guess as gss
from . import kernel as ker
from .series import SECTIONS, swap_xy, to_json, to_text
from .walks import StepParseError, StepSet, all_step_sets, enumerate_walks

log = logging.getLogger("quadwalks")

DEFAULT_ORDER = 12
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    # accepts 0x..., underscores, and plain decimals of any size
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--steps", default=None,
                        help="comma-separated tokens (N,NE,E,SE,S,SW,W,NW), 'all' or 'figure1'")
    common.add_argument("--order", type=_int, default=DEFAULT_ORDER,
                        help=f"truncation order in t (default {DEFAULT_ORDER})")
    common.add_argument("--bound", type=_int, default=grp.DEFAULT_BOUND)
    common.add_argument("--prime", type=_int, default=grp.DEFAULT_PRIME)
    common.add_argument("--seed", type=_int, default=0)
    common.add_argument("--trials", type=_int, default=grp.DEFAULT_TRIALS)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", default=None, help="write to this file instead of stdout")
    common.add_argument("--jobs", type=_int, default=1, help="worker processes")

    p = argparse.ArgumentParser(prog="quadwalks", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="walk generating series Q(x,y,t)")
    sub.add_parser("divide", parents=[common], help="kernel division xy = K l + r")
    sub.add_parser("verify", parents=[common], help="check the functional equation")
    g = sub.add_parser("group", parents=[common], help="order of the group of the walk")
    g.add_argument("--mode", choices=("modular", "symbolic"), default="modular")
    sub.add_parser("bishop", parents=[common],
                   help="Bishop expansion of M_S; --order is the total degree")
    sub.add_parser("symmetry", parents=[common], help="diagonal symmetry and smoothness")
    sub.add_parser("figure1", parents=[common], help="smooth symmetric infinite-group models")
    sub.add_parser("certify", parents=[common], help="approximation counterexample certificate")
    sub.add_parser("classify", parents=[common], help="sweep all 255 step sets")
    q = sub.add_parser("guess", parents=[common],
                       help="search algebraic/ODE relations (a negative answer is evidence only)")
    q.add_argument("--section", choices=SECTIONS, default="x=y=0")
    q.add_argument("--kind", choices=("algebraic", "ode", "both"), default="both")
    q.add_argument("--max-ode-order", type=_int, default=2)
    q.add_argument("--max-degree", type=_int, default=2, help="degree bound in t")
    q.add_argument("--max-f-degree", type=_int, default=2,
                   help="degree bound in f for algebraic relations")
    return p


def _resolve_steps(args, required: bool = True) -> list[StepSet]:
    spec = args.steps
    if spec is None:
        if required:
            raise UsageError("--steps is required")
        return []
    key = spec.strip().lower()
    if key == "all":
        return all_step_sets()
    if key == "figure1":
        return geo.figure1_models(args.bound, args.prime, args.seed, args.trials)
    try:
        S = StepSet.parse(spec)
    except StepParseError as e:
        raise UsageError(str(e)) from None
    if not S.mask:
        raise UsageError(f"empty step set {spec!r}")
    return [S]


def _fan_out(fn: Callable, items: list, jobs: int) -> list:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(it) for it in items]


def _check_order(n: int) -> None:
    if n < 0:
        raise UsageError("--order must be nonnegative")


# ---------------------------------------------------------------------------
# subcommands; each returns (json payload, text, ok)


def _cmd_enumerate(args, models):
    _check_order(args.order)
    out = []
    for S in models:
        Q = enumerate_walks(S, args.order)
        out.append(({"steps": str(S), **to_json(Q)}, f"{{{S}}}: {to_text(Q)}"))
    return out, True


def _cmd_divide(args, models):
    _check_order(args.order)
    out, ok = [], True
    for S in models:
        d = ker.divide(S, args.order)
        shape = ker.remainder_shape_ok(d.r)
        ok &= shape
        payload = {
            "steps": str(S),
            "order": d.order,
            "epsilon": d.epsilon,
            "remainder_shape_ok": shape,
            "l": to_json(d.l),
            "r": to_json(d.r),
            "h": to_json(d.h),
            "g": to_json(d.g),
        }
        text = f"{{{S}}} order {d.order}\n  r = {to_text(d.r)}\n  l = {to_text(d.l)}"
        out.append((payload, text))
    return out, ok


def _verify_one(item):
    S, N = item
    return ker.verify_functional_equation(S, N)


def _cmd_verify(args, models):
    _check_order(args.order)
    reports = _fan_out(_verify_one, [(S, args.order) for S in models], args.jobs)
    out = []
    for r in reports:
        text = (f"{{{r.steps}}} order {r.order}: l=Q {r.l_matches_oracle}, "
                f"r=boundary {r.r_matches_boundary}, identity {r.identity_holds}")
        out.append((r.to_json(), text))
    return out, all(r.ok for r in reports)


def _group_one(item):
    S, bound, mode, prime, seed, trials = item
    return grp.order(S, bound=bound, mode=mode, prime=prime, seed=seed, trials=trials)


def _cmd_group(args, models):
    if args.bound < 2:
        raise UsageError("--bound must be at least 2")
    if not grp.is_probable_prime(args.prime):
        raise UsageError(f"--prime {args.prime} is not prime")
    items = [(S, args.bound, args.mode, args.prime, args.seed, args.trials) for S in models]
    reports = _fan_out(_group_one, items, args.jobs)
    out, ok = [], True
    for r in reports:
        if r.finite and 2 <= r.order <= grp.SYMBOLIC_CONFIRM_MAX_ORDER and not r.confirmed:
            ok = False
        if r.degenerate:
            text = f"{{{r.steps}}}: degenerate"
        elif r.finite:
            text = f"{{{r.steps}}}: finite, order {r.order} (confirmed: {r.confirmed})"
        else:
            text = f"{{{r.steps}}}: no order <= {2 * r.bound} (theta^m != id for m <= {r.bound})"
        out.append((r.to_json(), text))
    return out, ok


def _poly_json(p: dict) -> list:
    return [{"i": i, "j": j, "c": str(c)} for (i, j), c in sorted(p.items(), key=lambda kv: (sum(kv[0]), kv[0]))]


def _poly_text(p: dict) -> str:
    items = sorted(p.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    return " + ".join(f"{c} * w^{i} wb^{j}" for (i, j), c in items) or "0"


def _cmd_bishop(args, models):
    out = []
    for S in models:
        try:
            e = geo.bishop_expansion(S, args.order)
        except geo.NotSmoothError as err:
            raise UsageError(str(err)) from None
        except ValueError as err:
            raise UsageError(str(err)) from None
        payload = {
            "steps": str(S),
            "degree": e.degree,
            "quadratic": _poly_json(e.quadratic),
            "bishop_invariant": e.bishop_invariant,
            "tail_min_degree": min((sum(m) for m in e.tail), default=None),
            "tail": _poly_json(e.tail),
        }
        text = (f"{{{S}}} degree {e.degree}: z = w wb - E, Bishop invariant "
                f"{e.bishop_invariant}\n  E = {_poly_text(e.tail)}")
        out.append((payload, text))
    return out, True


def _cmd_symmetry(args, models):
    out, ok = [], True
    for S in models:
        sym = geo.is_diagonally_symmetric(S)
        K = ker.kernel(S).as_series(1)
        kernel_sym = swap_xy(K) == K
        ok &= sym == kernel_sym
        partials = geo.partials_at_origin(S)
        payload = {
            "steps": str(S),
            "diagonal_symmetric": sym,
            "kernel_symmetric": kernel_sym,
            "partials_at_origin": list(partials),
            "smooth": geo.is_smooth(S),
        }
        text = (f"{{{S}}}: symmetric {sym}, smooth {geo.is_smooth(S)}, "
                f"dK at 0 = {partials}")
        out.append((payload, text))
    return out, ok


def _cmd_figure1(args, _models):
    models = geo.figure1_models(args.bound, args.prime, args.seed, args.trials)
    payload = {"count": len(models), "models": [str(S) for S in models]}
    text = "\n".join(f"{{{S}}}" for S in models)
    return [(payload, text)], len(models) == 7


def _certify_one(item):
    S, N = item
    return geo.certify(S, N)


def _cmd_certify(args, models):
    _check_order(args.order)
    for S in models:
        if (-1, -1) not in S or not geo.is_diagonally_symmetric(S):
            try:
                geo.certify(S, 0)
            except geo.HypothesisError as err:
                raise UsageError(str(err)) from None
    certs = _fan_out(_certify_one, [(S, args.order) for S in models], args.jobs)
    out = []
    for c in certs:
        text = (f"{{{c.steps}}} order {c.order}: identity {c.identity_holds}, "
                f"r symmetric {c.r_symmetric}, r positive integer {c.r_nonnegative}, "
                f"h real rational {c.h_real_rational}")
        out.append((c.to_json(), text))
    return out, all(c.ok for c in certs)


def _cmd_classify(args, _models):
    records = cls.sweep(args.bound, args.prime, args.seed, args.trials, jobs=args.jobs)
    summ = cls.summary(records)
    ok = (summ["canonical"], summ["finite_group"], summ["infinite_group"]) == (
        cls.EXPECTED_CANONICAL, cls.EXPECTED_FINITE, cls.EXPECTED_INFINITE)
    payload = {"records": [r.to_json() for r in records], "summary": summ}
    lines = [f"{'mask':>4}  {'steps':<22} {'canon':<5} {'smooth':<6} {'sym':<5} group"]
    for r in records:
        if r.group is None:
            gtxt = "-"
        else:
            gtxt = r.group.verdict + (f" {r.group.order}" if r.group.finite else "")
        lines.append(f"{r.steps.mask:>4}  {str(r.steps):<22} {str(r.canonical):<5} "
                     f"{str(r.smooth):<6} {str(r.diagonal_symmetric):<5} {gtxt}")
    lines.append(
        f"total {summ['total']}, canonical {summ['canonical']}, finite {summ['finite_group']}, "
        f"infinite {summ['infinite_group']}")
    lines.append("figure1: " + "; ".join(summ["figure1"]))
    return [(payload, "\n".join(lines))], ok


def _cmd_guess(args, models):
    _check_order(args.order)
    out = []
    for S in models:
        f = gss.sample(S, args.section, args.order)
        results = []
        try:
            if args.kind in ("algebraic", "both"):
                results.append(gss.guess_algebraic(f, args.max_f_degree, args.max_degree))
            if args.kind in ("ode", "both"):
                results.append(gss.guess_ode(f, args.max_ode_order, args.max_degree))
        except gss.UnderdeterminedError as err:
            raise UsageError(str(err)) from None
        for res in results:
            payload = {"steps": str(S), "section": args.section, **res.to_json()}
            verdict = gss.format_candidate(res) if res.found else (
                f"none within {res.bounds} at N={res.sample_order} "
                "(evidence only, not a proof)")
            out.append((payload, f"{{{S}}} {args.section} {res.kind}: {verdict}"))
    return out, True


COMMANDS = {
    "enumerate": _cmd_enumerate,
    "divide": _cmd_divide,
    "verify": _cmd_verify,
    "group": _cmd_group,
    "bishop": _cmd_bishop,
    "symmetry": _cmd_symmetry,
    "figure1": _cmd_figure1,
    "certify": _cmd_certify,
    "classify": _cmd_classify,
    "guess": _cmd_guess,
}

_NO_STEPS = {"figure1", "classify"}


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(message)s")
    try:
        models = [] if args.command in _NO_STEPS else _resolve_steps(args)
        results, ok = COMMANDS[args.command](args, models)
    except UsageError as e:
        print(f"quadwalks {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    many = args.steps is not None and args.steps.strip().lower() in ("all", "figure1")
    if args.format == "json":
        payloads = [p for p, _ in results]
        data = payloads if many or len(payloads) != 1 else payloads[0]
        text = json.dumps(data, indent=2, sort_keys=True)
    else:
        text = "\n".join(t for _, t in results)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
