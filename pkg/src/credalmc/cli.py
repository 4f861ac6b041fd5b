"""Command-line interface.

Exit codes are part of the contract for scripting: 0 success, 1 failed
check (a NOT verdict or a failed example assertion), 2 domain error,
3 parse error, 4 budget exceeded, 5 infeasible program.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

import numpy as np

from . import lp, oracle, reference
from .core import TransitionLaw, reverse_law
from .credal import Gamble2, IntervalJointSet, is_symmetric_set
from .errors import (
    BudgetExceeded,
    CredalmcError,
    EmptyCredalSet,
    ModelFormatError,
    NoFeasibleGridPoint,
)
from .jointrep import JointSequence, reverse_joint_sequence
from .modelio import ModelDocument, dump_model, load_gamble, load_model
from .numeric import Tolerance
from .randomwalk import (
    IntervalWeightSet,
    WeightMatrix,
    is_symmetric_weight_set,
    walk_joint,
    walk_lower_expectation,
    walk_stationary,
    walk_transition,
    walk_upper_expectation,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_DOMAIN = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4
EXIT_INFEASIBLE = 5


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="credalmc",
        description="Precise and credal Markov chains: reversal, "
        "reversibility checks, walks, and expectation bounds.",
    )
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--rational", action="store_true", default=True,
                      help="exact rational arithmetic (default)")
    mode.add_argument("--float", dest="float_mode", action="store_true",
                      help="double-precision arithmetic")
    parser.add_argument("--tol", type=float, metavar="EPS",
                        help="comparison tolerance for float mode "
                        "(ignored in rational mode)")
    parser.add_argument("--budget", type=int, default=None,
                        help="size cap for path enumeration and grids "
                        "(defaults: 10^6 paths, 10^7 grid points)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reverse", help="time-reverse a transition law or "
                       "joint sequence")
    p.add_argument("model")
    p.add_argument("-o", "--output", help="write the reversed model here "
                   "instead of stdout")

    p = sub.add_parser("check-reversible", help="decide reversibility of an "
                       "interval joint set, joint sequence, or weight model")
    p.add_argument("model")

    p = sub.add_parser("lower-expectation", help="LP bound for the "
                       "expectation of a path gamble")
    p.add_argument("model")
    p.add_argument("--gamble", required=True, help="gamble table file")
    p.add_argument("--horizon", type=int, default=2, help="path length N")
    p.add_argument("--sense", choices=("lower", "upper"), default="lower")
    p.add_argument("--oracle", action="store_true",
                   help="also run the grid oracle and print the gap")
    p.add_argument("--oracle-step", type=float, default=1e-3)

    p = sub.add_parser("walk", help="transition, stationary and joint "
                       "matrices of a weighted-graph walk")
    p.add_argument("model")
    p.add_argument("--part", choices=("transition", "stationary", "joint", "all"),
                   default="all")

    p = sub.add_parser("reproduce-examples", help="recompute the bundled "
                       "worked examples in exact mode and report PASS/FAIL")
    p.add_argument("--json", dest="as_json", action="store_true")
    return parser


def _fmt_number(v, exact: bool) -> str:
    return str(v) if exact else f"{float(v):.12g}"


def _fmt_matrix(arr, exact: bool) -> str:
    return "\n".join(
        "  " + " ".join(_fmt_number(v, exact) for v in row) for row in arr
    )


def _cmd_reverse(args, exact: bool, tol: Tolerance | None) -> int:
    doc = load_model(args.model, exact, tol)
    if doc.kind == "transition_law":
        reversed_model = reverse_law(doc.model, doc.tolerance)
    elif doc.kind == "joint_sequence":
        reversed_model = reverse_joint_sequence(doc.model, doc.tolerance)
    else:
        raise ModelFormatError(
            "reverse needs a transition_law or joint_sequence model"
        )
    out = dump_model(ModelDocument(doc.states, doc.kind, reversed_model,
                                   doc.tolerance, doc.exact))
    if args.output:
        with open(args.output, "w") as fp:
            fp.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _first_asymmetry(arr) -> tuple[int, int]:
    n = arr.shape[0]
    for x in range(n):
        for y in range(x + 1, n):
            if arr[x, y] != arr[y, x]:
                return x, y
    raise AssertionError("no asymmetric entry")


def _check_interval(iset: IntervalJointSet, tol: Tolerance) -> tuple[bool, str]:
    if is_symmetric_set(iset, tol):
        return True, ""
    for name, bound in (("lower", iset.lower), ("upper", iset.upper)):
        if not (abs(bound - bound.T) <= tol.eq).all():
            x, y = _first_asymmetry(bound)
            return False, (f"{name} bound: entry ({x},{y})={bound[x, y]} "
                           f"!= entry ({y},{x})={bound[y, x]}")
    raise AssertionError("symmetry check disagreed with itself")


def _check_sequence(seq: JointSequence, tol: Tolerance) -> tuple[bool, str]:
    mats = seq.mats
    L = len(mats)
    for k in range(L):
        a = mats[k].entries
        b = mats[L - 1 - k].entries
        for x in range(seq.dim):
            for y in range(seq.dim):
                if abs(a[x, y] - b[y, x]) > tol.eq:
                    return False, (
                        f"matrix {k} entry ({x},{y})={a[x, y]} != "
                        f"matrix {L - 1 - k} entry ({y},{x})={b[y, x]}"
                    )
    return True, ""


def _cmd_check_reversible(args, exact: bool, tol: Tolerance | None) -> int:
    doc = load_model(args.model, exact, tol)
    teff = doc.tolerance
    if doc.kind == "interval_joint":
        ok, witness = _check_interval(doc.model, teff)
    elif doc.kind == "joint_sequence":
        ok, witness = _check_sequence(doc.model, teff)
    elif isinstance(doc.model, WeightMatrix):
        w = doc.model.w
        ok = bool((abs(w - w.T) <= teff.eq).all())
        if not ok:
            x, y = _first_asymmetry(w)
            witness = f"weight ({x},{y})={w[x, y]} != weight ({y},{x})={w[y, x]}"
        else:
            witness = ""
    else:
        wset: IntervalWeightSet = doc.model
        ok = is_symmetric_weight_set(wset, teff)
        witness = ""
        if not ok:
            for name, bound in (("lower", wset.lower), ("upper", wset.upper)):
                if not (abs(bound - bound.T) <= teff.eq).all():
                    x, y = _first_asymmetry(bound)
                    witness = (f"{name} bound: entry ({x},{y})={bound[x, y]} "
                               f"!= entry ({y},{x})={bound[y, x]}")
                    break
    if ok:
        print("REVERSIBLE")
        return EXIT_OK
    print(f"NOT reversible: {witness}")
    return EXIT_CHECK_FAILED


def _pairwise_sum_gamble(g: np.ndarray, horizon: int, n: int) -> np.ndarray:
    """Expand a two-state payoff to paths: sum it over adjacent pairs."""
    full = np.zeros((n,) * horizon, dtype=g.dtype)
    for path in itertools.product(range(n), repeat=horizon):
        total = g[path[0], path[1]]
        for k in range(1, horizon - 1):
            total = total + g[path[k], path[k + 1]]
        full[path] = total
    return full


def _cmd_lower_expectation(args, exact: bool, tol: Tolerance | None) -> int:
    doc = load_model(args.model, exact, tol)
    horizon = args.horizon
    if horizon < 2:
        raise ModelFormatError("--horizon must be at least 2")
    g = load_gamble(args.gamble, exact)
    n = len(doc.states)
    lower_sense = args.sense == "lower"
    path_budget = args.budget if args.budget is not None else lp.DEFAULT_PATH_BUDGET
    grid_budget = args.budget if args.budget is not None else 10_000_000

    if isinstance(doc.model, (WeightMatrix, IntervalWeightSet)):
        if horizon != 2:
            raise ModelFormatError(
                "weight models support two-step gambles only; convert to an "
                "interval_joint model for longer horizons"
            )
        if g.shape != (n, n):
            raise ModelFormatError(f"gamble must be {n}x{n}")
        gamble = Gamble2(g, exact)
        if isinstance(doc.model, WeightMatrix):
            value = (walk_joint(doc.model, doc.tolerance).entries * gamble.values).sum()
        else:
            fn = walk_lower_expectation if lower_sense else walk_upper_expectation
            value = fn(doc.model, gamble, doc.tolerance)
        print(f"{float(value):.12g}")
        return EXIT_OK

    if doc.kind != "interval_joint":
        raise ModelFormatError(
            "lower-expectation needs an interval_joint or weights model"
        )
    iset: IntervalJointSet = doc.model
    if horizon == 2:
        if g.shape != (n, n):
            raise ModelFormatError(f"gamble must be {n}x{n} for horizon 2")
        gamble = Gamble2(g, exact)
        fn = (lp.lower_expectation_two_step if lower_sense
              else lp.upper_expectation_two_step)
        value = fn(iset, gamble, doc.tolerance)
    else:
        if n**horizon > path_budget:
            raise BudgetExceeded(
                f"|S|^N = {n**horizon} exceeds the budget {path_budget}"
            )
        if g.shape == (n, n):
            g = _pairwise_sum_gamble(g, horizon, n)
        if g.shape != (n,) * horizon:
            raise ModelFormatError(
                f"gamble must have shape {(n,) * horizon} (or be {n}x{n})"
            )
        fn = (lp.lower_expectation_nstep if lower_sense
              else lp.upper_expectation_nstep)
        value = fn(iset, g, horizon, doc.tolerance, budget=path_budget)
    print(f"{float(value):.12g}")

    if args.oracle:
        spec = oracle.GridSpec(args.oracle_step, grid_budget)
        fiset = IntervalJointSet(np.asarray(iset.lower, dtype=float),
                                 np.asarray(iset.upper, dtype=float))
        if horizon == 2:
            gf = Gamble2(np.asarray(g, dtype=float))
            probe = gf if lower_sense else Gamble2(-gf.values)
            got = oracle.grid_min_expectation(fiset, probe, spec)
            oracle_value = got if lower_sense else -got
        else:
            laws = oracle.enumerate_compatible_laws(fiset, horizon, spec)
            if not laws:
                raise NoFeasibleGridPoint("oracle grid found no compatible law")
            gf = np.asarray(g, dtype=float)
            values = [oracle.law_expectation(law, gf, path_budget) for law in laws]
            oracle_value = min(values) if lower_sense else max(values)
        print(f"oracle {float(oracle_value):.12g}")
        print(f"gap {abs(float(value) - float(oracle_value)):.6g}")
    return EXIT_OK


def _cmd_walk(args, exact: bool, tol: Tolerance | None) -> int:
    doc = load_model(args.model, exact, tol)
    if not isinstance(doc.model, WeightMatrix):
        raise ModelFormatError("walk needs a precise weights matrix model")
    w: WeightMatrix = doc.model
    parts = ("transition", "stationary", "joint") if args.part == "all" \
        else (args.part,)
    for part in parts:
        if part == "transition":
            print("transition:")
            print(_fmt_matrix(walk_transition(w, doc.tolerance).entries, exact))
        elif part == "stationary":
            if w.directed and args.part == "all":
                print("stationary: undefined for directed weights")
                continue
            print("stationary:")
            vec = walk_stationary(w, doc.tolerance).entries
            print("  " + " ".join(_fmt_number(v, exact) for v in vec))
        else:
            print("joint:")
            print(_fmt_matrix(walk_joint(w, doc.tolerance).entries, exact))
    return EXIT_OK


def _cmd_reproduce_examples(args) -> int:
    records = reference.run_all()
    if args.as_json:
        print(json.dumps([r.to_dict() for r in records], indent=2))
    else:
        section = None
        for r in records:
            if r.section != section:
                section = r.section
                print(f"[{section}]")
            if r.passed:
                print(f"  PASS {r.name}: {r.actual}")
            else:
                print(f"  FAIL {r.name}: expected {r.expected}, got {r.actual}")
        failed = sum(not r.passed for r in records)
        print(f"{len(records) - failed} of {len(records)} assertions passed")
    return EXIT_OK if all(r.passed for r in records) else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    exact = not args.float_mode
    tol = None
    if args.tol is not None and not exact:
        tol = Tolerance(args.tol, args.tol, args.tol)
    try:
        if args.command == "reverse":
            return _cmd_reverse(args, exact, tol)
        if args.command == "check-reversible":
            return _cmd_check_reversible(args, exact, tol)
        if args.command == "lower-expectation":
            return _cmd_lower_expectation(args, exact, tol)
        if args.command == "walk":
            return _cmd_walk(args, exact, tol)
        return _cmd_reproduce_examples(args)
    except ModelFormatError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (BudgetExceeded,) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (EmptyCredalSet, NoFeasibleGridPoint) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except CredalmcError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
