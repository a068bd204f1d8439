"""Builders for the runnable cell graphs: track segments, bridges and switches.

Track elements come in two shapes.  A straight element has blue milestones on
faces 2, 5, 6, 7 and passes the locomotive between face 1 and one of faces 3,
4, 8, 10; a corner has seven milestones (faces 3, 5, 6, 7, 8, 10, 11), a white
back on face 0 and exits on faces 1 and 2.  Segment scenarios chain elements
and keep a few extra plain cells past each end so the locomotive is still on
modelled track for every step a test runs; the cells outside the chain are a
permanently white boundary.

Switch graphs (22 cells, printed as columns 1..22) are built from the frozen
wiring in ``data/switch_wiring.json``; the crossing driver places the
locomotive on the approach or on one of the branch arms and runs 7 steps,
which is the window the golden runs cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .catalog import load_switch_wiring
from .engine import (
    CellGraph,
    CellId,
    Configuration,
    FixedPort,
    LinkPort,
    Port,
    Trace,
    run,
    uniform_configuration,
    with_states,
)
from .pentagrid import fibonacci_word
from .railway import Side, SwitchKind
from .rules import B, CellState, R, RuleTable, W

STRAIGHT_EXIT_PAIRS = ((1, 3), (1, 4), (1, 8), (1, 10))
STRAIGHT_MILESTONES = (2, 5, 6, 7)
CORNER_MILESTONES = (3, 5, 6, 7, 8, 10, 11)
CORNER_EXITS = (1, 2)

SEGMENT_BUFFER = 5  # plain cells kept past each end of a segment under test


class CrossingMode(Enum):
    ACTIVE = "active"
    PASSIVE_SELECTED = "sel"
    PASSIVE_NONSELECTED = "nonsel"


@dataclass(frozen=True)
class CellTemplate:
    """Milestone pattern plus the faces a builder may link to other cells."""

    blue: tuple[int, ...]
    red: tuple[int, ...]
    open_faces: tuple[int, ...]
    back: int = 0

    def ports(self, links: dict[int, CellId]) -> list[Port]:
        bad = set(links) - set(self.open_faces)
        if bad:
            raise ValueError(f"faces {sorted(bad)} are not linkable on this element")
        ports: list[Port] = []
        for face in range(12):
            if face in links:
                ports.append(LinkPort(links[face]))
            elif face in self.blue:
                ports.append(FixedPort(B))
            elif face in self.red:
                ports.append(FixedPort(R))
            else:
                ports.append(FixedPort(W))
        return ports


def build_straight_element(exit_pair: tuple[int, int]) -> CellTemplate:
    """A straight track element whose usable exits are the given face pair."""
    if tuple(exit_pair) not in STRAIGHT_EXIT_PAIRS:
        raise ValueError(f"not a straight exit pair: {exit_pair}")
    return CellTemplate(STRAIGHT_MILESTONES, (), tuple(exit_pair))


def build_corner() -> CellTemplate:
    return CellTemplate(CORNER_MILESTONES, (), CORNER_EXITS)


@dataclass
class Scenario:
    name: str
    graph: CellGraph
    initial: Configuration
    print_order: tuple[CellId, ...]
    # cells along the locomotive's path, in travel order (empty for switches)
    track_cells: tuple[CellId, ...] = ()
    # the sub-span whose return to all-white is asserted after a traversal
    segment_cells: tuple[CellId, ...] = ()
    golden_name: str | None = None
    default_steps: int = 7
    layout: dict[CellId, tuple[float, float]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def run(self, table: RuleTable, n_steps: int | None = None) -> Trace:
        steps = self.default_steps if n_steps is None else n_steps
        return run(self.graph, self.initial, table, steps, self.print_order)


def _chain_graph(elements: list[tuple[CellTemplate, int, int]]) -> CellGraph:
    """Link element i's exit face to element i+1's entry face; ends stay open."""
    ports_by_cell: dict[CellId, list[Port]] = {}
    n = len(elements)
    for i, (template, entry, exit_) in enumerate(elements, start=1):
        links: dict[int, CellId] = {}
        if i > 1:
            links[entry] = i - 1
        if i < n:
            links[exit_] = i + 1
        ports_by_cell[i] = template.ports(links)
    return CellGraph(ports_by_cell)


def _place_locomotive(config: Configuration, chain: tuple[CellId, ...], forward: bool) -> Configuration:
    # rear R then front B, pointing along (or against) the chain order
    if forward:
        return with_states(config, {chain[0]: R, chain[1]: B})
    return with_states(config, {chain[-1]: R, chain[-2]: B})


def max_safe_steps(chain_len: int, rear_index: int) -> int:
    # Past the last chain cell there is no modelled track: one step after the
    # front walks off, the lone rear has no covering rule.  Starting with the
    # rear at `rear_index`, the run may take at most this many steps.
    return chain_len - 1 - rear_index


def build_vertical_segment(n: int, forward: bool = True, buffer: int = SEGMENT_BUFFER) -> Scenario:
    """``n`` straight elements chained exit-4 to entry-1, plus end buffers."""
    if n < 3:
        raise ValueError(f"vertical segment needs n >= 3, got {n}")
    total = n + 2 * buffer
    straight = build_straight_element((1, 4))
    elements = [(straight, 1, 4) for _ in range(total)]
    graph = _chain_graph(elements)
    chain = tuple(range(1, total + 1))
    segment = tuple(range(buffer + 1, buffer + n + 1))
    start = segment if forward else tuple(reversed(segment))
    initial = _place_locomotive(uniform_configuration(graph), start, forward=True)
    return Scenario(
        name="vertical",
        graph=graph,
        initial=initial,
        print_order=chain,
        track_cells=chain if forward else tuple(reversed(chain)),
        segment_cells=segment,
        default_steps=n + buffer - 2,
        layout={c: (float(i), 0.0) for i, c in enumerate(chain)},
        meta={"n": n, "forward": forward, "buffer": buffer},
    )


def horizontal_exit_faces(k: int) -> tuple[int, ...]:
    """Exit face (4 or 10) of each straight block, following the Fibonacci word."""
    word = fibonacci_word(k)
    return tuple(4 if letter == "a" else 10 for letter in word)


def build_horizontal_segment(k: int, forward: bool = True, buffer: int = SEGMENT_BUFFER) -> Scenario:
    """Alternating straight/corner blocks, straight exits riding the Fibonacci word."""
    if k < 2:
        raise ValueError(f"horizontal segment needs k >= 2, got {k}")
    plain = build_straight_element((1, 4))
    corner = build_corner()
    elements: list[tuple[CellTemplate, int, int]] = [(plain, 1, 4) for _ in range(buffer)]
    segment_start = len(elements) + 1
    node_kinds: list[tuple[str, str]] = []
    for exit_face in horizontal_exit_faces(k):
        elements.append((build_straight_element((1, exit_face)), 1, exit_face))
        node_kinds.append(("straight", "white" if exit_face == 4 else "black"))
        elements.append((corner, 1, 2))
        node_kinds.append(("corner", "black"))
    segment_end = len(elements)
    elements.extend((plain, 1, 4) for _ in range(buffer))
    graph = _chain_graph(elements)
    chain = tuple(range(1, len(elements) + 1))
    segment = tuple(range(segment_start, segment_end + 1))
    start = segment if forward else tuple(reversed(segment))
    initial = _place_locomotive(uniform_configuration(graph), start, forward=True)
    return Scenario(
        name="horizontal",
        graph=graph,
        initial=initial,
        print_order=chain,
        track_cells=chain if forward else tuple(reversed(chain)),
        segment_cells=segment,
        default_steps=2 * k + buffer - 2,
        layout={c: (float(i), 0.0) for i, c in enumerate(chain)},
        meta={"k": k, "forward": forward, "buffer": buffer, "node_kinds": tuple(node_kinds)},
    )


def build_bridge(active_track: str = "v1", forward: bool = True, buffer: int = SEGMENT_BUFFER) -> Scenario:
    """Two crossing tracks: v0 runs straight through, v1 detours over the deck.

    The deck is a short horizontal run (corner, straight, corner) reached by
    ramp elements using the (1, 3) exits; in the cell graph the two tracks
    share no cell, which is the whole point of the bridge.
    """
    if active_track not in ("v0", "v1"):
        raise ValueError(f"unknown track: {active_track}")
    plain = build_straight_element((1, 4))
    ramp = build_straight_element((1, 3))
    corner = build_corner()

    v0_elements = [(plain, 1, 4) for _ in range(7 + 2 * buffer)]
    v1_elements: list[tuple[CellTemplate, int, int]] = [(plain, 1, 4) for _ in range(buffer + 2)]
    v1_elements.append((ramp, 1, 3))
    v1_elements.extend([(corner, 1, 2), (plain, 1, 4), (corner, 1, 2)])
    v1_elements.append((ramp, 1, 3))
    v1_elements.extend((plain, 1, 4) for _ in range(buffer + 2))

    ports: dict[CellId, list[Port]] = {}
    v0_graph = _chain_graph(v0_elements)
    for cell in v0_graph.cell_ids:
        ports[cell] = list(v0_graph.ports(cell))
    offset = len(v0_elements)
    v1_graph = _chain_graph(v1_elements)
    for cell in v1_graph.cell_ids:
        shifted = [
            LinkPort(p.cell + offset) if isinstance(p, LinkPort) else p for p in v1_graph.ports(cell)
        ]
        ports[cell + offset] = shifted
    graph = CellGraph(ports)

    v0_chain = tuple(range(1, offset + 1))
    v1_chain = tuple(range(offset + 1, offset + len(v1_elements) + 1))
    chain = v0_chain if active_track == "v0" else v1_chain
    other = v1_chain if active_track == "v0" else v0_chain
    start = chain if forward else tuple(reversed(chain))
    initial = _place_locomotive(uniform_configuration(graph), start[buffer:], forward=True)

    deck = tuple(v1_chain[buffer + 2 : buffer + 7])
    layout = {c: (float(i), 0.0) for i, c in enumerate(v0_chain)}
    for i, c in enumerate(v1_chain):
        layout[c] = (float(i), 3.0 if c in deck else 2.0)
    middle = chain[buffer : len(chain) - buffer]
    return Scenario(
        name="bridge",
        graph=graph,
        initial=initial,
        print_order=v0_chain + v1_chain,
        track_cells=start,
        segment_cells=middle,
        default_steps=len(chain) - buffer - 2,
        layout=layout,
        meta={
            "active_track": active_track,
            "forward": forward,
            "other_track": other,
            "deck": deck,
            "buffer": buffer,
        },
    )


SWITCH_CELLS = tuple(range(1, 23))
LEFT_BRANCH = (7, 8, 9, 10, 11)
RIGHT_BRANCH = (12, 13, 14, 15, 16)
APPROACH = (1, 2, 3, 4, 5)

_SWITCH_LAYOUT: dict[CellId, tuple[float, float]] = {
    **{c: (0.0, float(c - 6)) for c in APPROACH + (6,)},
    **{c: (-0.8 * (c - 6), 0.8 * (c - 6)) for c in LEFT_BRANCH},
    **{c: (0.8 * (c - 11), 0.8 * (c - 11)) for c in RIGHT_BRANCH},
    # sensors beside their scanned cells; controller stack and markers west
    17: (-1.6, -0.6),
    18: (1.6, -0.6),
    19: (-1.6, -3.0),
    20: (-1.6, -1.8),
    21: (-2.8, -1.2),
    22: (-2.8, -2.4),
}


def _switch_graph(kind: SwitchKind) -> CellGraph:
    wiring = load_switch_wiring()["kinds"][kind.value]
    ports: dict[CellId, list[Port]] = {}
    for cell_str, entry in wiring.items():
        cell = int(cell_str)
        links = {int(face): int(target) for face, target in entry.get("links", {}).items()}
        blue = set(entry.get("blue", ()))
        red = set(entry.get("red", ()))
        row: list[Port] = []
        for face in range(12):
            if face in links:
                row.append(LinkPort(links[face]))
            elif face in blue:
                row.append(FixedPort(B))
            elif face in red:
                row.append(FixedPort(R))
            else:
                row.append(FixedPort(W))
        ports[cell] = row
    return CellGraph(ports)


def build_switch(kind: SwitchKind, laterality: Side) -> Scenario:
    """The idle 22-cell switch graph; drive a crossing to get a trace."""
    if kind is SwitchKind.FIXED and laterality is not Side.LEFT:
        raise ValueError("the fixed switch only exists left-handed; mirror it with a bridge")
    idle = load_switch_wiring()["idle_states"][kind.value][laterality.value]
    graph = _switch_graph(kind)
    initial = with_states(
        uniform_configuration(graph),
        {int(cell): CellState.from_letter(letter) for cell, letter in idle.items()},
    )
    return Scenario(
        name=f"{kind.value}-{laterality.value}",
        graph=graph,
        initial=initial,
        print_order=SWITCH_CELLS,
        default_steps=7,
        layout=dict(_SWITCH_LAYOUT),
        meta={"kind": kind, "laterality": laterality},
    )


def selected_branch(kind: SwitchKind, laterality: Side) -> tuple[CellId, ...]:
    return LEFT_BRANCH if laterality is Side.LEFT else RIGHT_BRANCH


def crossing_start(scenario: Scenario, mode: CrossingMode) -> dict[CellId, CellState]:
    """Locomotive placement (rear R, front B) for a crossing of the given mode."""
    kind: SwitchKind = scenario.meta["kind"]
    laterality: Side = scenario.meta["laterality"]
    if kind is SwitchKind.FLIPFLOP and mode is not CrossingMode.ACTIVE:
        raise ValueError("a flip-flop switch is only crossed actively")
    if mode is CrossingMode.ACTIVE:
        return {2: R, 3: B}
    branch = selected_branch(kind, laterality)
    if mode is CrossingMode.PASSIVE_NONSELECTED:
        branch = RIGHT_BRANCH if branch is LEFT_BRANCH else LEFT_BRANCH
    return {branch[2]: B, branch[3]: R}


def drive_crossing(scenario: Scenario, mode: CrossingMode, table: RuleTable, n_steps: int = 7) -> Trace:
    start = with_states(scenario.initial, crossing_start(scenario, mode))
    return run(scenario.graph, start, table, n_steps, scenario.print_order)


@dataclass(frozen=True)
class NamedScenario:
    name: str
    golden_name: str | None
    kind: SwitchKind | None = None
    laterality: Side | None = None
    mode: CrossingMode | None = None

    @property
    def is_switch(self) -> bool:
        return self.kind is not None

    def build(self) -> Scenario:
        if self.is_switch:
            scenario = build_switch(self.kind, self.laterality)
            scenario.name = self.name
            scenario.golden_name = self.golden_name
            return scenario
        if self.name == "vertical":
            return build_vertical_segment(7)
        if self.name == "horizontal":
            return build_horizontal_segment(5)
        return build_bridge()

    def trace(self, table: RuleTable, n_steps: int | None = None) -> Trace:
        scenario = self.build()
        if self.is_switch:
            return drive_crossing(scenario, self.mode, table, 7 if n_steps is None else n_steps)
        return scenario.run(table, n_steps)


def _switch_entries() -> list[NamedScenario]:
    entries = []
    for kind, lats in (
        (SwitchKind.MEMORY, (Side.LEFT, Side.RIGHT)),
        (SwitchKind.FIXED, (Side.LEFT,)),
        (SwitchKind.FLIPFLOP, (Side.LEFT, Side.RIGHT)),
    ):
        for lat in lats:
            modes = (CrossingMode.ACTIVE,) if kind is SwitchKind.FLIPFLOP else tuple(CrossingMode)
            for mode in modes:
                if kind is SwitchKind.FIXED:
                    name = f"fixed-{mode.value}"
                elif kind is SwitchKind.MEMORY:
                    name = f"memo-{lat.value}-{mode.value}"
                else:
                    name = f"flipflop-{lat.value}-{mode.value}"
                entries.append(NamedScenario(name, name, kind, lat, mode))
    return entries


SCENARIOS: dict[str, NamedScenario] = {
    "vertical": NamedScenario("vertical", None),
    "horizontal": NamedScenario("horizontal", None),
    "bridge": NamedScenario("bridge", None),
    **{entry.name: entry for entry in _switch_entries()},
}


def scenario_names() -> list[str]:
    return list(SCENARIOS)
