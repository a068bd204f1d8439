"""Rules of the 3-state automaton and their canonical forms under rotation.

A rule maps a context (current state plus the 12 neighbour states indexed by
face) to a new state.  Two contexts are equivalent when one is a rotated form
of the other; the canonical representative is the lexicographic minimum over
the 60 rotations, with states ordered W < B < R.  A rule set is rotation
invariant exactly when no two rules share a minimal context but disagree on
the new state, and lookups go through the minimal form so that any rotated
variant of a listed rule is found.

Contexts that miss the index but have at least ten white neighbours fall back
to keeping their current state; anything else is a hard ``MissingRuleError``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path
from typing import Iterable, NamedTuple

from .geometry import FACE_COUNT, FacePermutation, enumerate_motions

DEFAULT_BLANK_THRESHOLD = 10


class CellState(IntEnum):
    """The three states; the integer order W < B < R is the lexicographic one."""

    W = 0
    B = 1
    R = 2

    @classmethod
    def from_letter(cls, letter: str) -> "CellState":
        try:
            return cls[letter]
        except KeyError:
            raise ValueError(f"not a cell state: {letter!r}") from None

    @property
    def letter(self) -> str:
        return self.name


W, B, R = CellState.W, CellState.B, CellState.R

Neighborhood = tuple[CellState, ...]
ContextKey = tuple[CellState, ...]


class Context(NamedTuple):
    current: CellState
    neighbors: Neighborhood

    def __str__(self) -> str:
        return f"{self.current.letter} | " + " ".join(s.letter for s in self.neighbors)


class Rule(NamedTuple):
    context: Context
    new_state: CellState
    source: str = ""

    def __str__(self) -> str:
        return f"{self.context} -> {self.new_state.letter}"


class RuleParseError(ValueError):
    def __init__(self, source: str, line_no: int, reason: str):
        super().__init__(f"{source}:{line_no}: {reason}")
        self.source = source
        self.line_no = line_no
        self.reason = reason


class RuleConflictError(ValueError):
    """Two rules with the same minimal context but different new states."""

    def __init__(self, a: Rule, b: Rule):
        super().__init__(f"rotation-invariance conflict between [{a.source}] {a} and [{b.source}] {b}")
        self.pair = (a, b)


class MissingRuleError(LookupError):
    def __init__(self, context: Context):
        super().__init__(f"no rule covers context {context}")
        self.context = context


def context_from_letters(letters: Iterable[str]) -> Context:
    states = [CellState.from_letter(tok) for tok in letters]
    if len(states) != FACE_COUNT + 1:
        raise ValueError(f"a context needs 13 states, got {len(states)}")
    return Context(states[0], tuple(states[1:]))


def rotated_context(ctx: Context, perm: FacePermutation) -> Context:
    """Neighbour at slot i of the result is the input neighbour at perm[i]."""
    n = ctx.neighbors
    return Context(ctx.current, tuple(n[perm[i]] for i in range(FACE_COUNT)))


def minimal_context(ctx: Context) -> Context:
    """Lexicographic minimum of the 60 rotated forms, key (current, n0..n11)."""
    n = ctx.neighbors
    best = min(tuple(n[perm[i]] for i in range(FACE_COUNT)) for perm in enumerate_motions())
    return Context(ctx.current, best)


def minimal_form(rule: Rule) -> Rule:
    return Rule(minimal_context(rule.context), rule.new_state, rule.source)


def blank_count(ctx: Context) -> int:
    return sum(1 for s in ctx.neighbors if s is W)


@dataclass(frozen=True)
class Conflict:
    a: Rule
    b: Rule
    minimal: Context


@dataclass(frozen=True)
class InvarianceReport:
    ok: bool
    conflicts: tuple[Conflict, ...]

    def __str__(self) -> str:
        if self.ok:
            return "rotation invariance: ok"
        lines = ["rotation invariance: FAILED"]
        for c in self.conflicts:
            lines.append(f"  minimal context {c.minimal}")
            lines.append(f"    [{c.a.source}] {c.a}")
            lines.append(f"    [{c.b.source}] {c.b}")
        return "\n".join(lines)


class RuleTable:
    """An ordered rule list with a canonical lookup index over minimal forms."""

    def __init__(self, rules: Iterable[Rule], strict: bool = True):
        self.rules: tuple[Rule, ...] = tuple(rules)
        self._index: dict[ContextKey, CellState] = {}
        self._by_minimal: dict[ContextKey, Rule] = {}
        self._cache: dict[Context, CellState] = {}
        for rule in self.rules:
            key = _key(minimal_context(rule.context))
            prior = self._by_minimal.get(key)
            if prior is not None and prior.new_state is not rule.new_state and strict:
                raise RuleConflictError(prior, rule)
            if prior is None:
                self._by_minimal[key] = rule
                self._index[key] = rule.new_state

    def __len__(self) -> int:
        return len(self.rules)

    def lookup(self, ctx: Context) -> CellState:
        hit = self._cache.get(ctx)
        if hit is not None:
            return hit
        new_state = self._index.get(_key(minimal_context(ctx)))
        if new_state is None:
            if blank_count(ctx) >= DEFAULT_BLANK_THRESHOLD:
                new_state = ctx.current
            else:
                raise MissingRuleError(ctx)
        self._cache[ctx] = new_state
        return new_state

    def covers(self, ctx: Context) -> bool:
        return self.has_explicit(ctx) or blank_count(ctx) >= DEFAULT_BLANK_THRESHOLD

    def has_explicit(self, ctx: Context) -> bool:
        return _key(minimal_context(ctx)) in self._index


def _key(ctx: Context) -> ContextKey:
    return (ctx.current, *ctx.neighbors)


def check_rotation_invariance(rules: Iterable[Rule]) -> InvarianceReport:
    """Group rules by minimal context; report any pair disagreeing on new state."""
    seen: dict[ContextKey, tuple[Rule, Context]] = {}
    conflicts: list[Conflict] = []
    for rule in rules:
        mctx = minimal_context(rule.context)
        key = _key(mctx)
        prior = seen.get(key)
        if prior is None:
            seen[key] = (rule, mctx)
        elif prior[0].new_state is not rule.new_state:
            conflicts.append(Conflict(prior[0], rule, mctx))
    return InvarianceReport(not conflicts, tuple(conflicts))


def parse_rule_table(text: str, source: str = "<string>", strict: bool = True) -> RuleTable:
    return RuleTable(parse_rules(text, source), strict=strict)


def parse_rules(text: str, source: str = "<string>") -> list[Rule]:
    """One rule per non-comment line: ``CURRENT N0 .. N11 -> NEW``."""
    rules: list[Rule] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 15 or tokens[13] != "->":
            raise RuleParseError(source, line_no, f"expected 'CURRENT N0 .. N11 -> NEW', got {len(tokens)} tokens")
        try:
            ctx = context_from_letters(tokens[:13])
            new_state = CellState.from_letter(tokens[14])
        except ValueError as exc:
            raise RuleParseError(source, line_no, str(exc)) from None
        rules.append(Rule(ctx, new_state, f"{source}:{line_no}"))
    return rules


def load_rule_files(paths: Iterable[Path | str], strict: bool = True) -> RuleTable:
    rules: list[Rule] = []
    for path in paths:
        path = Path(path)
        rules.extend(parse_rules(path.read_text(), path.name))
    return RuleTable(rules, strict=strict)


def load_rule_dir(directory: Path | str, strict: bool = True) -> RuleTable:
    """Concatenate every ``*.rules`` file in ``directory`` (sorted by name)."""
    paths = sorted(Path(directory).glob("*.rules"))
    if not paths:
        raise FileNotFoundError(f"no .rules files in {directory}")
    return load_rule_files(paths, strict=strict)
