"""Command-line entry point.

Subcommands: solve, compare, check-ideal, audit-integrality, gen,
reduce-setcover. Exit codes: 0 success, 1 input error, 2 requested outcome
infeasible. All commands are deterministic given input and --seed; roulette
without --seed uses seed 0.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import metrics, policies, solvers
from .generators import (
    BadParameter,
    UnknownCase,
    case_study_names,
    gen_case_study,
    gen_leave_one_out,
    gen_random,
    gen_triangle,
)
from .instance import (
    Instance,
    InstanceError,
    instance_to_dict,
    load_instance,
)
from .lp import INT_TOL, LpStatus, build_group_relaxation, integrality_check, snap_binary, solve_lp, to_mps
from .metrics import rational_field
from .reports import (
    RunRecord,
    comparison_table,
    comparison_to_csv,
    comparison_to_dict,
    comparison_to_text,
    run_record_to_dict,
)
from .solvers import IntegralityAudit, SetCoverInstance, SolverDiagnostics

POLICIES = ("conventional", "roulette", "group-lp", "group-exact", "individual-exact", "ideal")


class UnknownPolicy(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; 2 is reserved for "infeasible"
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0


def run_policy(inst: Instance, policy: str, seed: int | None = None,
               dump_lp: str | None = None) -> RunRecord:
    """Run one policy; a record with keep=None means the outcome does not exist."""
    t0 = time.perf_counter()
    if policy == "conventional":
        out = policies.conventional_desk_reject(inst)
        return RunRecord(policy, out.keep, out.report, _ms(t0), trace=out.trace)
    if policy == "roulette":
        s = 0 if seed is None else seed
        out = policies.roulette_reject(inst, s)
        return RunRecord(policy, out.keep, out.report, _ms(t0), seed=s, trace=out.trace)
    if policy == "group-exact":
        if dump_lp:
            _write_text(dump_lp, to_mps(build_group_relaxation(inst)))
        res = solvers.solve_group_exact(inst)
        return RunRecord(policy, res.keep, res.report, _ms(t0),
                         objective=res.objective, diagnostics=res.diagnostics)
    if policy == "individual-exact":
        res = solvers.solve_individual_exact(inst)
        return RunRecord(policy, res.keep, res.report, _ms(t0),
                         objective=res.objective, diagnostics=res.diagnostics)
    if policy == "group-lp":
        lp = build_group_relaxation(inst)
        if dump_lp:
            _write_text(dump_lp, to_mps(lp))
        sol = solve_lp(lp)
        if sol.status is LpStatus.OPTIMAL and integrality_check(sol):
            keep = snap_binary(sol)
            exact = metrics.group_objective(inst, keep)
            if metrics.is_feasible(inst, keep) and abs(sol.objective_value - float(exact)) <= INT_TOL:
                diag = SolverDiagnostics(
                    node_count=0, lp_calls=1, wall_time_ms=_ms(t0),
                    lp_objective=sol.objective_value, lp_integral=True,
                    best_bound=sol.objective_value,
                )
                return RunRecord(policy, keep, metrics.evaluate(inst, keep), _ms(t0),
                                 objective=exact, diagnostics=diag,
                                 note="relaxation optimum integral; certified exactly")
        res = solvers.solve_group_exact(inst)
        return RunRecord(policy, res.keep, res.report, _ms(t0),
                         objective=res.objective, diagnostics=res.diagnostics,
                         note="relaxation optimum fractional; fell back to exact search")
    if policy == "ideal":
        witness = solvers.solve_ideal_feasibility(inst)
        if witness is None:
            return RunRecord(policy, None, None, _ms(t0),
                             note="no keep set leaves every author at exactly min(x, own count)")
        return RunRecord(policy, witness, metrics.evaluate(inst, witness), _ms(t0))
    raise UnknownPolicy(f"unknown policy {policy!r}; choose from {', '.join(POLICIES)}")


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _write_json(path: str | None, payload: dict):
    _write_text(path, json.dumps(payload, indent=2))


def _load_input(args) -> Instance:
    if not args.input:
        raise BadParameter("--input is required")
    inst = load_instance(args.input)
    if args.limit is not None:
        inst = inst.with_cap(args.limit)
    return inst


def cmd_solve(args) -> int:
    inst = _load_input(args)
    policy = args.policy or "group-exact"
    if policy not in POLICIES:
        raise UnknownPolicy(f"unknown policy {policy!r}; choose from {', '.join(POLICIES)}")
    record = run_policy(inst, policy, seed=args.seed, dump_lp=args.dump_lp)
    _write_json(args.output, run_record_to_dict(record, inst))
    if record.keep is None:
        print(f"INFEASIBLE: {record.note}", file=sys.stderr)
        return 2
    return 0


def cmd_compare(args) -> int:
    inst = _load_input(args)
    requested = args.policy or ["conventional", "roulette", "group-lp", "group-exact", "individual-exact"]
    names: list[str] = []
    for chunk in requested:
        names.extend(p.strip() for p in chunk.split(",") if p.strip())
    for p in names:
        if p not in POLICIES:
            raise UnknownPolicy(f"unknown policy {p!r}; choose from {', '.join(POLICIES)}")
    records = [run_policy(inst, p, seed=args.seed) for p in names]
    table = comparison_table(inst, records)
    if args.output:
        base = args.output
        for suffix in (".json", ".csv"):
            if base.endswith(suffix):
                base = base[: -len(suffix)]
        _write_json(base + ".json", comparison_to_dict(table))
        _write_text(base + ".csv", comparison_to_csv(table))
    print(comparison_to_text(table))
    return 0


def cmd_check_ideal(args) -> int:
    inst = _load_input(args)
    if inst.n <= 2:
        witness = policies.ideal_construct_small(inst)
        method = "constructive (two-author case analysis)"
    else:
        witness = solvers.solve_ideal_feasibility(inst)
        method = "search (depth-first feasibility)"
    if witness is None:
        if args.output:
            _write_json(args.output, {"feasible": False, "method": method})
        print("INFEASIBLE")
        return 2
    kept = [inst.papers[j].id for j in witness.kept_indices()]
    rejected = [inst.papers[j].id for j in witness.rejected_indices()]
    if args.output:
        _write_json(args.output, {
            "feasible": True, "method": method,
            "kept_papers": kept, "rejected_papers": rejected,
        })
    print(f"IDEAL FEASIBLE [{method}]")
    print("keep:   " + (" ".join(kept) if kept else "(none)"))
    print("reject: " + (" ".join(rejected) if rejected else "(none)"))
    return 0


def _audit_to_dict(audit: IntegralityAudit) -> dict:
    return {
        "lp_objective": audit.lp_objective,
        "ilp_objective": rational_field(audit.ilp_objective),
        "gap": audit.gap,
        "lp_integral": audit.lp_integral,
        "counterexample": audit.is_counterexample,
    }


def cmd_audit_integrality(args) -> int:
    if args.input:
        inst = _load_input(args)
        audit = solvers.integrality_audit(inst)
        _write_json(args.output, _audit_to_dict(audit))
        return 0
    if not args.family:
        raise BadParameter("audit-integrality needs --input or --family")
    instances = _sweep_instances(args)
    details = []
    counterexamples = 0
    for label, inst in instances:
        audit = solvers.integrality_audit(inst)
        counterexamples += int(audit.is_counterexample)
        entry = _audit_to_dict(audit)
        entry["instance"] = label
        details.append(entry)
    payload = {
        "instances": len(details),
        "counterexamples": counterexamples,
        "counterexample_rate": counterexamples / len(details) if details else 0.0,
        "details": details,
    }
    _write_json(args.output, payload)
    return 0


def _sweep_instances(args):
    family = args.family
    if family == "triangle":
        return [("triangle", gen_triangle())]
    if family == "leave-one-out":
        if args.n is None:
            raise BadParameter("--family leave-one-out needs --n")
        return [(f"leave_one_out({args.n})", gen_leave_one_out(args.n))]
    if family == "case-study":
        if not args.case:
            raise BadParameter("--family case-study needs --case")
        return [(args.case, gen_case_study(args.case))]
    if family == "random":
        missing = [f for f in ("n", "m", "density", "limit") if getattr(args, f) is None]
        if missing:
            raise BadParameter(f"--family random needs --{', --'.join(missing)}")
        base = args.seed if args.seed is not None else 0
        count = args.count or 1
        return [
            (f"random(n={args.n},m={args.m},x={args.limit},density={args.density},seed={base + i})",
             gen_random(args.n, args.m, args.limit, args.density, base + i))
            for i in range(count)
        ]
    raise BadParameter(f"unknown family {family!r}")


def cmd_gen(args) -> int:
    if not args.family:
        raise BadParameter("gen needs --family")
    instances = _sweep_instances(args)
    if len(instances) != 1:
        raise BadParameter("gen emits one instance; drop --count")
    _write_json(args.output, instance_to_dict(instances[0][1]))
    return 0


def cmd_reduce_setcover(args) -> int:
    if not args.input:
        raise BadParameter("--input is required")
    with open(args.input, encoding="utf-8") as fh:
        raw = json.load(fh)
    budget = args.budget if args.budget is not None else raw.get("budget")
    if budget is None:
        raise BadParameter("budget missing: supply --budget or a 'budget' field")
    sc = SetCoverInstance(
        universe_size=int(raw["universe_size"]),
        sets=tuple(frozenset(int(e) for e in s) for s in raw["sets"]),
        budget=int(budget),
    )
    reduced = solvers.reduce_set_cover(sc)
    payload = {
        "instance": instance_to_dict(reduced.instance),
        "budget": reduced.budget,
    }
    if args.decide:
        answer, witness = solvers.decide_set_cover(sc)
        payload["decision"] = {
            "coverable": answer,
            "witness_sets": [f"s{j + 1}" for j in witness] if witness is not None else None,
        }
    _write_json(args.output, payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="deskfair", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, policy=False, many_policies=False):
        p.add_argument("--input", help="instance JSON file")
        p.add_argument("--output", help="write the result here instead of stdout")
        p.add_argument("--seed", type=int, help="seed for randomized policies (default 0)")
        p.add_argument("--limit", type=int, help="override the submission cap x")
        if policy:
            p.add_argument("--policy", help=f"one of: {', '.join(POLICIES)}")
        if many_policies:
            p.add_argument("--policy", action="append",
                           help="policy to include (repeat or comma-separate); default: all but ideal")

    p = sub.add_parser("solve", help="run one policy on an instance")
    common(p, policy=True)
    p.add_argument("--dump-lp", help="also write the relaxation in MPS layout (group policies)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("compare", help="run several policies and tabulate")
    common(p, many_policies=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("check-ideal", help="witness or refute a collateral-free rejection")
    common(p)
    p.set_defaults(func=cmd_check_ideal)

    p = sub.add_parser("audit-integrality", help="compare relaxation vs exact optimum")
    common(p)
    p.add_argument("--family", help="sweep family: triangle, leave-one-out, case-study, random")
    p.add_argument("--case", help=f"case-study name: {', '.join(case_study_names())}")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--count", type=int, help="number of random instances to sweep")
    p.set_defaults(func=cmd_audit_integrality)

    p = sub.add_parser("gen", help="emit an instance from a named family")
    common(p)
    p.add_argument("--family", help="triangle, leave-one-out, case-study, random")
    p.add_argument("--case", help=f"case-study name: {', '.join(case_study_names())}")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--count", type=int, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce-setcover", help="encode a set-cover question as an instance")
    common(p)
    p.add_argument("--budget", type=int, help="max number of sets in the cover (overrides input)")
    p.add_argument("--decide", action="store_true", help="also decide coverability")
    p.set_defaults(func=cmd_reduce_setcover)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # bad flags exit 1 (via _Parser), --help exits 0
        return int(exc.code or 0)
    if not getattr(args, "func", None):
        parser.print_help()
        return 1
    try:
        return args.func(args)
    except (InstanceError, BadParameter, UnknownCase, UnknownPolicy,
            json.JSONDecodeError, OSError, KeyError, ValueError) as exc:
        print(f"deskfair: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
