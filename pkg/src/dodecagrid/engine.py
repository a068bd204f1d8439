"""Synchronous execution of the automaton over an explicit cell graph.

Cells carry 12 ports, one per face: a port either holds a permanently fixed
state (milestones, quiescent surroundings, region boundary) or links to
another cell of the graph.  A step reads every context from the old
configuration, so update order is immaterial; the new configuration is a
fresh value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .rules import CellState, Context, MissingRuleError, RuleTable, W

CellId = int


@dataclass(frozen=True)
class FixedPort:
    state: CellState


@dataclass(frozen=True)
class LinkPort:
    cell: CellId


Port = FixedPort | LinkPort

ALL_WHITE_PORTS: tuple[Port, ...] = tuple(FixedPort(W) for _ in range(12))


class GraphError(ValueError):
    pass


class EngineError(RuntimeError):
    """A missing rule surfaced during a run, located by cell and time."""

    def __init__(self, cell: CellId, time: int, missing: MissingRuleError):
        super().__init__(f"cell {cell} at time {time}: {missing}")
        self.cell = cell
        self.time = time
        self.context = missing.context


class CellGraph:
    """Immutable port wiring for a finite set of cells."""

    def __init__(self, ports_by_cell: Mapping[CellId, Iterable[Port]]):
        self._ports: dict[CellId, tuple[Port, ...]] = {}
        for cell, ports in ports_by_cell.items():
            ports = tuple(ports)
            if len(ports) != 12:
                raise GraphError(f"cell {cell}: expected 12 ports, got {len(ports)}")
            self._ports[cell] = ports
        self._validate_links()

    def _validate_links(self) -> None:
        for cell, ports in self._ports.items():
            for face, port in enumerate(ports):
                if not isinstance(port, LinkPort):
                    continue
                if port.cell not in self._ports:
                    raise GraphError(f"cell {cell} face {face} links to unknown cell {port.cell}")
                back = [p for p in self._ports[port.cell] if isinstance(p, LinkPort) and p.cell == cell]
                if len(back) != 1:
                    raise GraphError(
                        f"link {cell}/{face} -> {port.cell} has {len(back)} return links, expected exactly 1"
                    )

    @property
    def cell_ids(self) -> tuple[CellId, ...]:
        return tuple(self._ports)

    def __contains__(self, cell: CellId) -> bool:
        return cell in self._ports

    def __len__(self) -> int:
        return len(self._ports)

    def ports(self, cell: CellId) -> tuple[Port, ...]:
        return self._ports[cell]


@dataclass(frozen=True)
class Configuration:
    states: Mapping[CellId, CellState]
    time: int = 0

    def state(self, cell: CellId) -> CellState:
        return self.states[cell]


def uniform_configuration(graph: CellGraph, state: CellState = W, time: int = 0) -> Configuration:
    return Configuration({cell: state for cell in graph.cell_ids}, time)


def with_states(config: Configuration, overrides: Mapping[CellId, CellState]) -> Configuration:
    states = dict(config.states)
    states.update(overrides)
    return Configuration(states, config.time)


def context_of(graph: CellGraph, config: Configuration, cell: CellId) -> Context:
    """Current state plus the 12 neighbour states seen through the ports."""
    neighbors = tuple(
        port.state if isinstance(port, FixedPort) else config.states[port.cell]
        for port in graph.ports(cell)
    )
    return Context(config.states[cell], neighbors)


def step(graph: CellGraph, config: Configuration, table: RuleTable) -> Configuration:
    new_states: dict[CellId, CellState] = {}
    for cell in graph.cell_ids:
        ctx = context_of(graph, config, cell)
        try:
            new_states[cell] = table.lookup(ctx)
        except MissingRuleError as exc:
            raise EngineError(cell, config.time, exc) from None
    return Configuration(new_states, config.time + 1)


@dataclass(frozen=True)
class Trace:
    """Per-step state rows over a fixed cell ordering, starting at time 0."""

    cell_ids: tuple[CellId, ...]
    rows: tuple[tuple[int, tuple[CellState, ...]], ...]

    def states_at(self, time: int) -> dict[CellId, CellState]:
        for t, states in self.rows:
            if t == time:
                return dict(zip(self.cell_ids, states))
        raise KeyError(f"no row for time {time}")

    def column(self, cell: CellId) -> tuple[CellState, ...]:
        i = self.cell_ids.index(cell)
        return tuple(states[i] for _, states in self.rows)


def run(
    graph: CellGraph,
    config: Configuration,
    table: RuleTable,
    n_steps: int,
    cell_ids: tuple[CellId, ...] | None = None,
) -> Trace:
    order = cell_ids if cell_ids is not None else graph.cell_ids
    rows = [(config.time, tuple(config.states[c] for c in order))]
    for _ in range(n_steps):
        config = step(graph, config, table)
        rows.append((config.time, tuple(config.states[c] for c in order)))
    return Trace(tuple(order), tuple(rows))


def format_trace(trace: Trace, cell_ids: tuple[CellId, ...] | None = None) -> str:
    """Header of cell numbers, then ``time N :`` rows of state letters."""
    order = cell_ids if cell_ids is not None else trace.cell_ids
    idx = [trace.cell_ids.index(c) for c in order]
    lines = [" ".join(str(c) for c in order), ""]
    for t, states in trace.rows:
        lines.append(f"time {t} :  " + "  ".join(states[i].letter for i in idx))
    return "\n".join(lines) + "\n"


def format_trace_tsv(trace: Trace, cell_ids: tuple[CellId, ...] | None = None) -> str:
    order = cell_ids if cell_ids is not None else trace.cell_ids
    idx = [trace.cell_ids.index(c) for c in order]
    lines = ["time\t" + "\t".join(str(c) for c in order)]
    for t, states in trace.rows:
        lines.append(f"{t}\t" + "\t".join(states[i].letter for i in idx))
    return "\n".join(lines) + "\n"


def trace_tokens(text: str) -> list[str]:
    """Whitespace tokens of a trace, comment lines stripped."""
    tokens: list[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    return tokens


def parse_trace_text(text: str) -> Trace:
    """Read a trace back from the token format (inverse of ``format_trace``)."""
    cell_ids: tuple[CellId, ...] | None = None
    rows: list[tuple[int, tuple[CellState, ...]]] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "time":
            if cell_ids is None:
                raise ValueError("trace rows before header")
            if tokens[2] != ":" or len(tokens) != 3 + len(cell_ids):
                raise ValueError(f"malformed trace row: {line!r}")
            rows.append((int(tokens[1]), tuple(CellState.from_letter(s) for s in tokens[3:])))
        else:
            cell_ids = tuple(int(t) for t in tokens)
    if cell_ids is None:
        raise ValueError("trace has no header")
    return Trace(cell_ids, tuple(rows))
