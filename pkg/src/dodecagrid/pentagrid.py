"""Fibonacci-tree coordinates for the pentagrid and the Fibonacci word.

The spanning tree of a pentagrid sector has white nodes (three sons) and
black nodes (two sons); in both cases the leftmost son is black and the rest
are white.  Nodes are numbered breadth-first from 1 at the root, and the
coordinate of a node is the representation of its number in the Fibonacci
numeration basis 1, 2, 3, 5, 8, ...  Among the several representations of a
number we use the maximal one: no digit 1 sits above two consecutive zeros,
which makes it unique.  Appending "00" to a coordinate names the node's
preferred son.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache


@lru_cache(maxsize=None)
def fib(n: int) -> int:
    """Fibonacci numbers with fib(0) = fib(1) = 1."""
    if n < 0:
        raise ValueError("fib index must be non-negative")
    if n < 2:
        return 1
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return b


def level_size(n: int) -> int:
    """Number of tree nodes on level n (root is level 0)."""
    return fib(2 * n + 1)


class NodeKind(Enum):
    WHITE = "white"  # three sons
    BLACK = "black"  # two sons

    @property
    def son_kinds(self) -> tuple["NodeKind", ...]:
        tail = (NodeKind.WHITE,) * (2 if self is NodeKind.WHITE else 1)
        return (NodeKind.BLACK, *tail)


# Digit strings are most-significant first; position p (1-based from the
# right) weighs fib(p), so "100" = fib(3) = 3 and "1100" = 5 + 3 = 8.


def coord_value(digits: str) -> int:
    if not digits or digits.strip("01"):
        raise ValueError(f"not a digit string: {digits!r}")
    return sum(fib(pos) for pos, d in enumerate(reversed(digits), start=1) if d == "1")


def longest_repr(n: int) -> str:
    """The maximal Fibonacci representation of n.

    Start from the greedy (Zeckendorf) form, then expand fib(p) into
    fib(p-1) + fib(p-2) from the least significant end while legal.  The
    result has no 1 with two zeros directly below it, which pins it uniquely.
    """
    if n < 1:
        raise ValueError("only positive integers have a coordinate")
    top = 1
    while fib(top + 1) <= n:
        top += 1
    digits = [0] * (top + 1)  # index p = basis position, index 0 unused
    rest = n
    for p in range(top, 0, -1):
        if fib(p) <= rest:
            digits[p] = 1
            rest -= fib(p)
    assert rest == 0
    expanded = True
    while expanded:
        expanded = False
        for p in range(3, top + 1):
            if digits[p] == 1 and digits[p - 1] == 0 and digits[p - 2] == 0:
                digits[p] = 0
                digits[p - 1] = 1
                digits[p - 2] = 1
                expanded = True
                break
    out = "".join(str(d) for d in reversed(digits[1:])).lstrip("0")
    return out


def preferred_son_number(n: int) -> int:
    """The node number named by appending "00" to the node's coordinate."""
    return coord_value(longest_repr(n) + "00")


def preferred_son(coord: str) -> str:
    """Coordinate of the preferred son, back in maximal form."""
    return longest_repr(coord_value(coord + "00"))


@dataclass(frozen=True)
class TreeNode:
    number: int
    kind: NodeKind
    coord: str
    level: int
    parent: int | None
    sons: tuple[int, ...]


def enumerate_levels(depth: int) -> list[list[TreeNode]]:
    """The Fibonacci tree down to ``depth``, numbered breadth-first from 1."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    levels: list[list[TreeNode]] = []
    next_number = 2
    frontier: list[tuple[int, NodeKind, int | None]] = [(1, NodeKind.WHITE, None)]
    for level in range(depth + 1):
        nodes: list[TreeNode] = []
        next_frontier: list[tuple[int, NodeKind, int | None]] = []
        for number, kind, parent in frontier:
            son_kinds = kind.son_kinds if level < depth else ()
            sons = tuple(range(next_number, next_number + len(son_kinds)))
            next_number += len(son_kinds)
            nodes.append(TreeNode(number, kind, longest_repr(number), level, parent, sons))
            next_frontier.extend((s, k, number) for s, k in zip(sons, son_kinds))
        levels.append(nodes)
        frontier = next_frontier
    return levels


def fibonacci_word(k: int) -> str:
    """Length-k prefix of the infinite Fibonacci word over {a, b}."""
    if k < 1:
        raise ValueError("k must be positive")
    word = "a"
    while len(word) < k:
        word = word.replace("a", "A").replace("b", "a").replace("A", "ab")
    return word[:k]
