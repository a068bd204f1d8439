"""Checks behind ``verify`` and ``verify-all``: golden runs, properties, oracle agreement.

Every check returns a ``CheckResult``; the matrix printed by ``verify-all`` is
just the ordered list of them.  Checks are independent, so they may be run in
parallel, but results are always reported in their fixed order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import railway
from .catalog import load_catalog, load_golden_trace
from .engine import Trace
from .geometry import IDENTITY, compose, enumerate_motions, inverse, preserves_adjacency
from .railway import Exit, Side, SwitchKind
from .rules import B, CellState, R, RuleTable, W, check_rotation_invariance
from .scenarios import (
    APPROACH,
    LEFT_BRANCH,
    RIGHT_BRANCH,
    SCENARIOS,
    CrossingMode,
    NamedScenario,
    Scenario,
    build_bridge,
    build_horizontal_segment,
    build_vertical_segment,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        return f"{mark}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


# The one-dimensional motion rules, read along the track: (behind, cell,
# ahead) -> new state of the cell.  Both travel directions are present.
ONE_D_RULES: dict[tuple[CellState, CellState, CellState], CellState] = {
    (B, W, W): B,
    (W, W, B): B,
    (R, B, W): R,
    (W, B, R): R,
    (W, R, B): W,
    (B, R, W): W,
    (W, W, R): W,
    (R, W, W): W,
}


def check_rotation_group() -> CheckResult:
    perms = enumerate_motions()
    pset = set(perms)
    problems = []
    if len(pset) != 60:
        problems.append(f"{len(pset)} distinct permutations")
    if IDENTITY not in pset:
        problems.append("identity missing")
    if not all(preserves_adjacency(p) for p in perms):
        problems.append("adjacency broken")
    if not all(inverse(p) in pset for p in perms):
        problems.append("inverse missing")
    if not all(compose(a, b) in pset for a in perms for b in perms):
        problems.append("not closed under composition")
    return CheckResult("rotation-group", not problems, "; ".join(problems) or "60 rotations, closed")


def check_catalog_invariance(table: RuleTable) -> CheckResult:
    report = check_rotation_invariance(table.rules)
    detail = f"{len(table)} rules" if report.ok else str(report)
    return CheckResult("rule-catalog-invariance", report.ok, detail)


def trace_divergence(got: Trace, want: Trace) -> str | None:
    """First mismatch as ``time T cell C: expected X, got Y``; None when equal."""
    if got.cell_ids != want.cell_ids:
        return f"cell ordering differs: {got.cell_ids} vs {want.cell_ids}"
    for (t_got, row_got), (t_want, row_want) in zip(got.rows, want.rows):
        if t_got != t_want:
            return f"time labels differ: {t_got} vs {t_want}"
        for cell, s_got, s_want in zip(got.cell_ids, row_got, row_want):
            if s_got is not s_want:
                return f"time {t_got} cell {cell}: expected {s_want.letter}, got {s_got.letter}"
    if len(got.rows) != len(want.rows):
        return f"row counts differ: {len(got.rows)} vs {len(want.rows)}"
    return None


def check_golden(entry: NamedScenario, table: RuleTable, golden_dir: Path | str | None = None) -> CheckResult:
    name = f"golden:{entry.name}"
    want = load_golden_trace(entry.golden_name, golden_dir)  # missing file raises
    got = entry.trace(table)
    diff = trace_divergence(got, want)
    return CheckResult(name, diff is None, diff or "8 rows match")


def chain_rows(trace: Trace, chain: tuple[int, ...]) -> list[tuple[CellState, ...]]:
    index = [trace.cell_ids.index(c) for c in chain]
    return [tuple(states[i] for i in index) for _, states in trace.rows]


def one_d_violations(rows: list[tuple[CellState, ...]]) -> list[str]:
    """Check every track-cell transition against the 1D rules (W beyond the ends)."""
    out = []
    for t in range(len(rows) - 1):
        old, new = rows[t], rows[t + 1]
        for i in range(len(old)):
            behind = old[i - 1] if i > 0 else W
            ahead = old[i + 1] if i + 1 < len(old) else W
            triple = (behind, old[i], ahead)
            expected = ONE_D_RULES.get(triple, W if triple == (W, W, W) else None)
            if expected is None:
                out.append(f"t{t} cell#{i}: unexpected track triple {triple}")
            elif new[i] is not expected:
                out.append(f"t{t} cell#{i}: {triple} -> {new[i].letter}, 1D rules say {expected.letter}")
    return out


def locomotive_progress(rows: list[tuple[CellState, ...]]) -> list[str]:
    """Exactly one B and one R, adjacent, with the front advancing one cell per step."""
    out = []
    fronts = []
    for t, row in enumerate(rows):
        bs = [i for i, s in enumerate(row) if s is B]
        rs = [i for i, s in enumerate(row) if s is R]
        if len(bs) != 1 or len(rs) != 1:
            out.append(f"t{t}: {len(bs)} front cells, {len(rs)} rear cells")
            continue
        if abs(bs[0] - rs[0]) != 1:
            out.append(f"t{t}: front and rear not adjacent ({bs[0]}, {rs[0]})")
        fronts.append(bs[0])
    for t, (a, b_) in enumerate(zip(fronts, fronts[1:])):
        if b_ - a != 1:
            out.append(f"t{t}->{t + 1}: front moved {b_ - a} cells")
    return out


def check_segment(scenario: Scenario, table: RuleTable) -> CheckResult:
    name = f"segment:{scenario.name}" + ("-fwd" if scenario.meta.get("forward", True) else "-rev")
    if "n" in scenario.meta:
        name += f"-n{scenario.meta['n']}"
    if "k" in scenario.meta:
        name += f"-k{scenario.meta['k']}"
    trace = scenario.run(table)
    rows = chain_rows(trace, scenario.track_cells)  # track_cells is in travel order
    problems = locomotive_progress(rows) + one_d_violations(rows)
    final = trace.states_at(trace.rows[-1][0])
    stuck = [c for c in scenario.segment_cells if final[c] is not W]
    if stuck:
        problems.append(f"segment cells not idle after exit: {stuck}")
    return CheckResult(name, not problems, "; ".join(problems[:3]) or f"{len(rows) - 1} steps clean")


def check_bridge(scenario: Scenario, table: RuleTable) -> CheckResult:
    track = scenario.meta["active_track"]
    direction = "fwd" if scenario.meta["forward"] else "rev"
    name = f"bridge:{track}-{direction}"
    trace = scenario.run(table)
    problems = []
    other = scenario.meta["other_track"]
    for t, states in trace.rows:
        row = dict(zip(trace.cell_ids, states))
        touched = [c for c in other if row[c] is not W]
        if touched:
            problems.append(f"t{t}: crossing track disturbed at {touched}")
            break
    rows = chain_rows(trace, scenario.track_cells)
    problems += locomotive_progress(rows) + one_d_violations(rows)
    final = trace.states_at(trace.rows[-1][0])
    stuck = [c for c in scenario.segment_cells if final[c] is not W]
    if stuck:
        problems.append(f"bridge cells not idle after traversal: {stuck}")
    return CheckResult(name, not problems, "; ".join(problems[:3]) or "clean traversal")


# Sensor colours read as the selected side: blue over the selected branch.
_SENSOR_READING = {(B, R): Side.LEFT, (R, B): Side.RIGHT}
_MARKER_READING = {(R, B): Side.LEFT, (B, R): Side.RIGHT}


def ca_outcome(trace: Trace, kind: SwitchKind) -> tuple[Exit, Side]:
    """Exit branch taken and final selected side, read off a crossing trace."""
    final = trace.states_at(trace.rows[-1][0])
    if any(final[c] is not W for c in APPROACH):
        exit_taken = Exit.U
    elif any(final[c] is not W for c in LEFT_BRANCH[1:]):
        exit_taken = Exit.LEFT
    elif any(final[c] is not W for c in RIGHT_BRANCH[1:]):
        exit_taken = Exit.RIGHT
    else:
        raise ValueError("no locomotive on any exit track at the end of the run")
    selected = _SENSOR_READING.get((final[17], final[18]))
    if selected is None:
        raise ValueError(f"unreadable sensor pair: {final[17].letter} {final[18].letter}")
    if kind is SwitchKind.MEMORY:
        markers = _MARKER_READING.get((final[21], final[22]))
        if markers is not selected:
            raise ValueError("markers disagree with sensors")
    return exit_taken, selected


def oracle_mode(mode: CrossingMode, laterality: Side) -> railway.Crossing:
    if mode is CrossingMode.ACTIVE:
        return railway.Active()
    arm = laterality if mode is CrossingMode.PASSIVE_SELECTED else laterality.other
    return railway.Passive(arm)


def check_oracle_agreement(entry: NamedScenario, table: RuleTable) -> CheckResult:
    name = f"oracle:{entry.name}"
    state = railway.SwitchState(entry.kind, entry.laterality)
    want_exit, want_state = railway.cross(state, oracle_mode(entry.mode, entry.laterality))
    trace = entry.trace(table)
    got_exit, got_selected = ca_outcome(trace, entry.kind)
    ok = got_exit is want_exit and got_selected is want_state.selected
    detail = (
        f"exit {got_exit.value}, selected {got_selected.value}"
        if ok
        else f"CA (exit {got_exit.value}, selected {got_selected.value}) "
        f"!= oracle (exit {want_exit.value}, selected {want_state.selected.value})"
    )
    return CheckResult(name, ok, detail)


def verify_scenario(name: str, table: RuleTable, golden_dir: Path | str | None = None) -> CheckResult:
    entry = SCENARIOS[name]
    if entry.golden_name is not None:
        return check_golden(entry, table, golden_dir)
    scenario = entry.build()
    if name == "bridge":
        return check_bridge(scenario, table)
    return check_segment(scenario, table)


def verify_all(
    rules_dir: Path | str | None = None,
    golden_dir: Path | str | None = None,
    jobs: int = 1,
) -> list[CheckResult]:
    table = load_catalog(rules_dir)
    golden_entries = [e for e in SCENARIOS.values() if e.golden_name is not None]

    tasks = [
        check_rotation_group,
        lambda: check_catalog_invariance(table),
    ]
    tasks += [lambda e=e: check_golden(e, table, golden_dir) for e in golden_entries]
    tasks += [
        lambda: check_segment(build_vertical_segment(7), table),
        lambda: check_segment(build_vertical_segment(7, forward=False), table),
        lambda: check_segment(build_horizontal_segment(5), table),
        lambda: check_segment(build_horizontal_segment(5, forward=False), table),
        lambda: check_bridge(build_bridge("v1"), table),
        lambda: check_bridge(build_bridge("v1", forward=False), table),
        lambda: check_bridge(build_bridge("v0"), table),
        lambda: check_bridge(build_bridge("v0", forward=False), table),
    ]
    tasks += [lambda e=e: check_oracle_agreement(e, table) for e in golden_entries]

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(t) for t in tasks]
            return [f.result() for f in futures]
    return [t() for t in tasks]
