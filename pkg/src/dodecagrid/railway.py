"""Abstract railway-model semantics: switch state machines and the one-bit circuit.

This is the event-level oracle the cellular traces are checked against.  It
knows nothing about cells or timing: a crossing is atomic and only the exit
taken and the resulting switch state matter.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum


class SwitchKind(Enum):
    FIXED = "fixed"
    FLIPFLOP = "flipflop"
    MEMORY = "memory"


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def other(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class Exit(Enum):
    """Where the locomotive leaves a switch: one of the arms, or the single track."""

    LEFT = "left"
    RIGHT = "right"
    U = "u"


@dataclass(frozen=True)
class Active:
    pass


@dataclass(frozen=True)
class Passive:
    arm: Side


Crossing = Active | Passive


@dataclass(frozen=True)
class SwitchState:
    kind: SwitchKind
    selected: Side


def cross(state: SwitchState, mode: Crossing) -> tuple[Exit, SwitchState]:
    """Run one crossing; return the exit taken and the successor state."""
    if isinstance(mode, Active):
        exit_taken = Exit(state.selected.value)
        if state.kind is SwitchKind.FLIPFLOP:
            return exit_taken, replace(state, selected=state.selected.other)
        return exit_taken, state
    if state.kind is SwitchKind.FLIPFLOP:
        raise ValueError("a flip-flop switch is never crossed passively")
    if state.kind is SwitchKind.MEMORY:
        return Exit.U, replace(state, selected=mode.arm)
    return Exit.U, state


class Gate(Enum):
    E = "E"
    U = "U"


class CircuitExit(Enum):
    O1 = "O1"
    O2 = "O2"
    U_RETURN = "U-return"


@dataclass(frozen=True)
class ElementaryCircuit:
    """One stored bit: a memory switch at the read gate, a flip-flop at the write gate."""

    e_switch: SwitchState
    u_switch: SwitchState

    def __post_init__(self) -> None:
        if self.e_switch.kind is not SwitchKind.MEMORY:
            raise ValueError("gate E needs a memory switch")
        if self.u_switch.kind is not SwitchKind.FLIPFLOP:
            raise ValueError("gate U needs a flip-flop switch")


def new_circuit(bit: Side = Side.LEFT) -> ElementaryCircuit:
    return ElementaryCircuit(
        SwitchState(SwitchKind.MEMORY, bit),
        SwitchState(SwitchKind.FLIPFLOP, bit),
    )


def circuit_enter(circuit: ElementaryCircuit, gate: Gate) -> tuple[CircuitExit, ElementaryCircuit]:
    """Read (enter at E) or write (enter at U) the stored bit."""
    if gate is Gate.E:
        exit_taken, e_after = cross(circuit.e_switch, Active())
        out = CircuitExit.O1 if exit_taken is Exit.LEFT else CircuitExit.O2
        return out, replace(circuit, e_switch=e_after)
    # Entering at U toggles the flip-flop, then the loop track routes the
    # locomotive through the memory switch's currently non-selected arm.
    _, u_after = cross(circuit.u_switch, Active())
    _, e_after = cross(circuit.e_switch, Passive(circuit.e_switch.selected.other))
    return CircuitExit.U_RETURN, ElementaryCircuit(e_after, u_after)
