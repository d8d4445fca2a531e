"""Command line driver: problem files in, structured reports out.

Subcommands
-----------
milnor        Milnor numbers (mu_rel, mu_X, mu_section) of the t=0 germ.
family-check  mu-constancy by exact specialization of the parameter.
certify       sufficient certificates (weighted-nonnegative, then
              newton-inclusion); reports the first success or all failures.
arc-test      valuation conditions along user-supplied arcs.
newton        Newton polyhedron and non-degeneracy of <phi> + J(f, phi).

Exit codes: 0 success, 1 parse/input error, 2 computation limit exceeded,
3 hypothesis failure (non-ICIS / non-isolated singularity).
"""

from __future__ import annotations

import argparse
import sys
import time

from . import report as rep
from .arcs import test_conditions_on_arcs
from .errors import ComputationLimitError, HypothesisFailureError, InputError
from .invariants import (
    family_mu_check,
    family_mu_check_deformed,
    milnor_report,
    relative_jacobian_ideal,
)
from .newton import (
    CERTIFIED,
    certify_newton,
    certify_weighted_nonnegative,
    is_newton_nondegenerate,
)
from .problems import KIND_DEFORMED, KIND_FIXED, ProblemFile, parse_problem
from .standard_basis import Budget

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_LIMIT = 2
EXIT_HYPOTHESIS = 3


def cmd_milnor(problem: ProblemFile, seed: int = 0, budget: Budget = Budget()) -> dict:
    fg = problem.function_on_germ()
    result = milnor_report(fg, seed=seed, budget=budget)
    doc = rep.base_document("milnor", problem.source, seed=seed)
    doc["results"] = rep.milnor_payload(result)
    doc["notes"].append(rep.MINOR_SIGN_NOTE)
    return rep.attach_conditions(doc, rep.empty_condition_map("single germ, no family"))


def cmd_family_check(
    problem: ProblemFile, samples: int = 3, seed: int = 0, budget: Budget = Budget()
) -> dict:
    if problem.kind == KIND_DEFORMED:
        verdict = family_mu_check_deformed(problem.family_deformed(), samples, seed, budget)
    elif problem.kind == KIND_FIXED:
        verdict = family_mu_check(problem.family_fixed(), samples, seed, budget)
    else:
        raise InputError("family-check needs a family problem ('F', 'f'+'g', or 'Phi')")
    doc = rep.base_document("family-check", problem.source, seed=seed, samples=samples)
    doc["results"] = rep.family_payload(verdict)
    doc["notes"].append(
        "specialization at finitely many parameters is a semi-decision; a "
        "CONSTANT verdict is generic, conclusive certification comes from 'certify'"
    )
    return rep.attach_conditions(doc, rep.condition_map_from_family(verdict))


def cmd_certify(problem: ProblemFile, budget: Budget = Budget()) -> dict:
    if problem.kind != KIND_FIXED:
        raise InputError("certify needs a fixed-X family problem ('F' or 'f'+'g')")
    fam = problem.family_fixed()
    certs = [certify_weighted_nonnegative(fam, budget)]
    if certs[-1].verdict != CERTIFIED:
        certs.append(certify_newton(fam, budget))
    doc = rep.base_document("certify", problem.source)
    winner = next((c for c in certs if c.verdict == CERTIFIED), None)
    doc["results"] = {
        "certified": winner is not None,
        "verdict": winner.kind if winner else "UNKNOWN",
        "certificates": [rep.certificate_payload(c) for c in certs],
    }
    if winner is None:
        doc["notes"].append(
            "no sufficient certificate applies; this does not refute "
            "mu-constancy, try 'family-check' for a generic specialization verdict"
        )
        cmap = rep.unknown_condition_map("no certificate applies")
    else:
        cmap = rep.condition_map_from_certificate(winner)
    return rep.attach_conditions(doc, cmap)


def cmd_arc_test(problem: ProblemFile, budget: Budget = Budget()) -> dict:
    if problem.kind != KIND_FIXED:
        raise InputError("arc-test needs a fixed-X family problem ('F' or 'f'+'g')")
    if not problem.arcs:
        raise InputError("arc-test needs at least one 'arc' line")
    fam = problem.family_fixed()
    result = test_conditions_on_arcs(fam, problem.arcs)
    doc = rep.base_document("arc-test", problem.source)
    doc["results"] = rep.arc_payload(result)
    doc["notes"].append(
        "finitely many arcs can refute the valuation conditions but never prove them"
    )
    doc["notes"].append(rep.MINOR_SIGN_NOTE)
    return rep.attach_conditions(doc, rep.condition_map_from_arcs(result))


def cmd_newton(problem: ProblemFile, budget: Budget = Budget()) -> dict:
    fg = problem.function_on_germ()
    gens = [
        p
        for p in relative_jacobian_ideal(fg.f, fg.germ.phi, fg.germ.vars)
        if not p.is_zero
    ]
    result = is_newton_nondegenerate(gens, budget)
    doc = rep.base_document("newton", problem.source)
    doc["results"] = {
        "ideal": [str(p) for p in gens],
        "nondegeneracy": rep.nondegeneracy_payload(result),
    }
    doc["notes"].append(rep.MINOR_SIGN_NOTE)
    return rep.attach_conditions(doc, rep.empty_condition_map("polyhedron inspection, no family"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icis-mu",
        description="Milnor numbers and mu-constancy of deformations on "
        "isolated complete intersection singularities, in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="problem file path, or '-' for stdin")
    common.add_argument("--seed", type=int, default=0, help="seed for all randomized steps")
    common.add_argument("--samples", type=int, default=3, help="specialization sample count")
    common.add_argument("--budget-steps", type=int, default=1_000_000)
    common.add_argument("--budget-seconds", type=float, default=60.0)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument(
        "--timings", action="store_true", help="include wall-clock time in the report"
    )
    for name in ("milnor", "family-check", "certify", "arc-test", "newton"):
        sub.add_parser(name, parents=[common])
    return parser


def _read_problem(path: str) -> ProblemFile:
    if path == "-":
        return parse_problem(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem(fh.read())


def run(argv: list[str]) -> int:
    args = build_parser().parse_args(argv)
    budget = Budget(max_steps=args.budget_steps, max_seconds=args.budget_seconds)
    started = time.monotonic()
    try:
        problem = _read_problem(args.problem)
        if args.cmd == "milnor":
            doc = cmd_milnor(problem, seed=args.seed, budget=budget)
        elif args.cmd == "family-check":
            doc = cmd_family_check(problem, samples=args.samples, seed=args.seed, budget=budget)
        elif args.cmd == "certify":
            doc = cmd_certify(problem, budget=budget)
        elif args.cmd == "arc-test":
            doc = cmd_arc_test(problem, budget=budget)
        else:
            doc = cmd_newton(problem, budget=budget)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ComputationLimitError as exc:
        print(f"computation limit: {exc} {exc.diagnostics}", file=sys.stderr)
        return EXIT_LIMIT
    except HypothesisFailureError as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    if args.timings:
        doc["timings"]["wall_seconds"] = f"{time.monotonic() - started:.3f}"
    text = rep.render_json(doc) if args.format == "json" else rep.render_text(doc)
    sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
