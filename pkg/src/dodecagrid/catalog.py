"""Access to the shipped data files: rule catalog, golden traces, switch wiring."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .engine import Trace, parse_trace_text, trace_tokens
from .rules import RuleTable, load_rule_dir


def data_dir() -> Path:
    return Path(str(resources.files(__package__) / "data"))


def default_rules_dir() -> Path:
    return data_dir() / "rules"


def default_golden_dir() -> Path:
    return data_dir() / "golden"


@lru_cache(maxsize=8)
def load_catalog(rules_dir: Path | str | None = None) -> RuleTable:
    """The full shipped rule catalog, concatenated from one file per rule group."""
    return load_rule_dir(Path(rules_dir) if rules_dir is not None else default_rules_dir())


def golden_path(name: str, golden_dir: Path | str | None = None) -> Path:
    base = Path(golden_dir) if golden_dir is not None else default_golden_dir()
    return base / f"{name}.trace"


def load_golden_text(name: str, golden_dir: Path | str | None = None) -> str:
    path = golden_path(name, golden_dir)
    if not path.is_file():
        raise FileNotFoundError(f"golden trace missing: {path}")
    return path.read_text()


def load_golden_trace(name: str, golden_dir: Path | str | None = None) -> Trace:
    return parse_trace_text(load_golden_text(name, golden_dir))


def golden_tokens(name: str, golden_dir: Path | str | None = None) -> list[str]:
    return trace_tokens(load_golden_text(name, golden_dir))


@lru_cache(maxsize=1)
def load_switch_wiring() -> dict:
    path = data_dir() / "switch_wiring.json"
    return json.loads(path.read_text())
