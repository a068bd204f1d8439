"""Command-line interface: checking, running, verifying and rendering.

Exit code is 0 exactly when the requested check or verification passes.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import railway
from .catalog import load_catalog
from .engine import Configuration, EngineError, format_trace, format_trace_tsv, run, with_states
from .geometry import dump_rotations
from .pentagrid import enumerate_levels
from .railway import Active, Passive, Side, SwitchKind, SwitchState, cross
from .render import ViewSide, render_scenario
from .rules import RuleConflictError, check_rotation_invariance, load_rule_files, minimal_form, parse_rules
from .scenarios import SCENARIOS, CrossingMode, crossing_start, scenario_names
from .verify import verify_all, verify_scenario


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dodecagrid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    rules = sub.add_parser("rules", help="rule table utilities")
    rules_sub = rules.add_subparsers(dest="rules_command", required=True)
    check = rules_sub.add_parser("check", help="check rotation invariance of rule files")
    check.add_argument("files", nargs="*", type=Path, help="rule files (default: shipped catalog)")
    check.add_argument("--rules", type=Path, default=None, help="rule directory to check instead")
    minform = rules_sub.add_parser("minform", help="print the minimal form of one rule")
    minform.add_argument("rule", help="rule literal, e.g. 'W W W B W W B B B W W W W -> W'")

    rotations = sub.add_parser("rotations", help="rotation group utilities")
    rotations_sub = rotations.add_subparsers(dest="rotations_command", required=True)
    rotations_sub.add_parser("dump", help="print all 60 rotations as face permutations")

    scenario = sub.add_parser("scenario", help="scenario catalog")
    scenario_sub = scenario.add_subparsers(dest="scenario_command", required=True)
    scenario_sub.add_parser("list", help="print all scenario names")

    run_p = sub.add_parser("run", help="run a scenario and print its trace")
    run_p.add_argument("--scenario", required=True, choices=scenario_names())
    run_p.add_argument("--steps", type=int, default=None)
    run_p.add_argument("--emit", choices=("paper", "tsv"), default="paper")
    run_p.add_argument("--rules", type=Path, default=None)

    verify_p = sub.add_parser("verify", help="verify one scenario against its golden trace or properties")
    verify_p.add_argument("--scenario", required=True, choices=scenario_names())
    verify_p.add_argument("--rules", type=Path, default=None)
    verify_p.add_argument("--golden", type=Path, default=None)

    verify_all_p = sub.add_parser("verify-all", help="run the whole verification matrix")
    verify_all_p.add_argument("--rules", type=Path, default=None)
    verify_all_p.add_argument("--golden", type=Path, default=None)
    verify_all_p.add_argument("--jobs", type=int, default=1)

    oracle = sub.add_parser("oracle", help="abstract railway-model oracle")
    oracle_sub = oracle.add_subparsers(dest="oracle_command", required=True)
    crossings = oracle_sub.add_parser("crossings", help="print (exit, new state) for a crossing")
    crossings.add_argument("--kind", required=True, choices=[k.value for k in SwitchKind])
    crossings.add_argument("--mode", required=True, choices=[m.value for m in CrossingMode])
    crossings.add_argument("--lat", default=Side.LEFT.value, choices=[s.value for s in Side])

    pentagrid = sub.add_parser("pentagrid", help="Fibonacci tree of the pentagrid")
    pentagrid_sub = pentagrid.add_subparsers(dest="pentagrid_command", required=True)
    levels = pentagrid_sub.add_parser("levels", help="print number/kind/coordinate per node")
    levels.add_argument("--depth", type=int, required=True)

    render_p = sub.add_parser("render", help="render a scenario frame as SVG")
    render_p.add_argument("--scenario", required=True, choices=scenario_names())
    render_p.add_argument("--time", type=int, default=0)
    render_p.add_argument("--side", choices=[v.value for v in ViewSide], default="above")
    render_p.add_argument("--out", type=Path, required=True)
    render_p.add_argument("--rules", type=Path, default=None)

    return parser


def _cmd_rules_check(args: argparse.Namespace) -> int:
    if args.files:
        table = load_rule_files(args.files, strict=False)
        rules = table.rules
    else:
        rules = load_catalog(args.rules).rules
    report = check_rotation_invariance(rules)
    print(report)
    return 0 if report.ok else 1


def _cmd_rules_minform(args: argparse.Namespace) -> int:
    rules = parse_rules(args.rule, source="<arg>")
    if len(rules) != 1:
        print("expected exactly one rule literal", file=sys.stderr)
        return 2
    print(minimal_form(rules[0]))
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    table = load_catalog(args.rules)
    entry = SCENARIOS[args.scenario]
    trace = entry.trace(table, args.steps)
    emit = format_trace if args.emit == "paper" else format_trace_tsv
    sys.stdout.write(emit(trace))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    table = load_catalog(args.rules)
    result = verify_scenario(args.scenario, table, args.golden)
    print(result.line())
    return 0 if result.ok else 1


def _cmd_verify_all(args: argparse.Namespace) -> int:
    results = verify_all(args.rules, args.golden, jobs=max(1, args.jobs))
    for result in results:
        print(result.line())
    failed = sum(1 for r in results if not r.ok)
    print(f"\n{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def _cmd_oracle_crossings(args: argparse.Namespace) -> int:
    kind = SwitchKind(args.kind)
    lat = Side(args.lat)
    mode = CrossingMode(args.mode)
    state = SwitchState(kind, lat)
    crossing: railway.Crossing
    if mode is CrossingMode.ACTIVE:
        crossing = Active()
    else:
        arm = lat if mode is CrossingMode.PASSIVE_SELECTED else lat.other
        crossing = Passive(arm)
    exit_taken, new_state = cross(state, crossing)
    print(f"exit {exit_taken.value}, selected {new_state.selected.value}")
    return 0


def _cmd_pentagrid_levels(args: argparse.Namespace) -> int:
    for level in enumerate_levels(args.depth):
        for node in level:
            print(f"{node.number} {node.kind.value} {node.coord}")
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    table = load_catalog(args.rules)
    entry = SCENARIOS[args.scenario]
    scenario = entry.build()
    config = scenario.initial
    if entry.is_switch:
        config = with_states(config, crossing_start(scenario, entry.mode))
    trace = run(scenario.graph, config, table, args.time)
    frame = Configuration(trace.states_at(args.time), args.time)
    svg = render_scenario(scenario, frame, ViewSide(args.side))
    args.out.write_text(svg)
    print(f"wrote {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "rules":
        handler = _cmd_rules_check if args.rules_command == "check" else _cmd_rules_minform
    elif args.command == "rotations":
        print(dump_rotations())
        return 0
    elif args.command == "scenario":
        for name in scenario_names():
            print(name)
        return 0
    elif args.command == "run":
        handler = _cmd_run
    elif args.command == "verify":
        handler = _cmd_verify
    elif args.command == "verify-all":
        handler = _cmd_verify_all
    elif args.command == "oracle":
        handler = _cmd_oracle_crossings
    elif args.command == "pentagrid":
        handler = _cmd_pentagrid_levels
    else:
        handler = _cmd_render
    try:
        return handler(args)
    except FileNotFoundError as exc:
        # fail closed: a missing golden or rule file is a configuration error
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EngineError, RuleConflictError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
