"""Local constraint solves and threshold peeling shared by the decoders.

Labels are XOR masks: bit 0 is the constant term and higher bits are free
symbols carried along unchanged. Concrete decoding uses masks 0 and 1, the
candidate-search decoder rides symbols for class representatives on the same
code path.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .expander import ExpanderCode
from .gf2 import BitVector

__all__ = [
    "DecodeStatus",
    "LEFT",
    "RIGHT",
    "LabelState",
    "LocalSolve",
    "RoundRecord",
    "run_peel",
    "solve_vertex",
    "strict_label_threshold",
]

LEFT = "L"
RIGHT = "R"


class DecodeStatus(enum.Enum):
    COMPLETE = "complete"
    STUCK = "stuck"
    EMPTY = "empty"


@dataclass(frozen=True)
class LocalSolve:
    """Outcome of one vertex solve.

    assigned lists (slot, mask) for every unconstrained slot the system pins
    down; residuals are masks that must vanish for consistency; determined
    means no unconstrained slot was left ambiguous.
    """

    assigned: tuple[tuple[int, int], ...]
    residuals: tuple[int, ...]
    determined: bool


def solve_vertex(
    gen_cols: Sequence[int], constraints: Iterable[tuple[int, int]]
) -> LocalSolve:
    """Eliminate (slot, mask) constraints over the inner-code message space.

    A slot whose generator column falls in the span of the constrained
    columns is pinned to the matching XOR of constraint masks; a dependent
    constraint leaves its mask behind as a residual.
    """
    basis: dict[int, tuple[int, int]] = {}
    residuals: list[int] = []
    constrained = set()
    for slot, rhs in constraints:
        constrained.add(slot)
        row = gen_cols[slot]
        while row:
            p = row.bit_length() - 1
            if p not in basis:
                basis[p] = (row, rhs)
                break
            brow, brhs = basis[p]
            row ^= brow
            rhs ^= brhs
        else:
            residuals.append(rhs)
    assigned = []
    determined = True
    for slot, col in enumerate(gen_cols):
        if slot in constrained:
            continue
        row, acc = col, 0
        while row:
            p = row.bit_length() - 1
            if p not in basis:
                determined = False
                break
            brow, brhs = basis[p]
            row ^= brow
            acc ^= brhs
        else:
            assigned.append((slot, acc))
    return LocalSolve(tuple(assigned), tuple(residuals), determined)


def strict_label_threshold(code: ExpanderCode) -> int:
    """Smallest labeled count strictly above (1 - delta) * d."""
    thr = (1 - code.inner.delta) * code.d
    return thr.numerator // thr.denominator + 1


class LabelState:
    """Mutable per-edge labels with per-vertex missing counts."""

    __slots__ = ("code", "labels", "left_missing", "right_missing", "total_missing")

    def __init__(self, code: ExpanderCode) -> None:
        self.code = code
        self.labels: list[int | None] = [None] * code.num_coords
        self.left_missing = [code.d] * code.n
        self.right_missing = [code.d] * code.n
        self.total_missing = code.num_coords

    def assign(self, e: int, value: int) -> None:
        if self.labels[e] is not None:
            raise ValueError(f"edge {e} already labeled")
        self.labels[e] = value
        d = self.code.d
        self.left_missing[e // d] -= 1
        u, _ = self.code.graph.edge_right_end(e)
        self.right_missing[u] -= 1
        self.total_missing -= 1

    def edge_id(self, side: str, v: int, slot: int) -> int:
        if side == LEFT:
            return v * self.code.d + slot
        return self.code.right_ids[v][slot]

    def vertex_constraints(self, side: str, v: int) -> list[tuple[int, int]]:
        labels = self.labels
        if side == LEFT:
            d = self.code.d
            pairs = ((i, labels[v * d + i]) for i in range(d))
        else:
            pairs = ((j, labels[e]) for j, e in enumerate(self.code.right_ids[v]))
        return [(slot, val) for slot, val in pairs if val is not None]

    def word(self) -> BitVector:
        if self.total_missing:
            raise ValueError("labels incomplete")
        bits = 0
        for e, val in enumerate(self.labels):
            bits |= (val & 1) << e
        return BitVector(self.code.num_coords, bits)


@dataclass(frozen=True)
class RoundRecord:
    """One peel round: side processed, frontier size, labels added, and the
    per-side counts of vertices still missing labels afterwards."""

    side: str
    frontier: int
    new_labels: int
    left_unresolved: int
    right_unresolved: int


def run_peel(
    state: LabelState,
    *,
    start_side: str = LEFT,
    reverse: bool = False,
    symbolic: bool = False,
) -> tuple[DecodeStatus, tuple[RoundRecord, ...]]:
    """Alternate sides, completing every vertex strictly above the label
    threshold, until done or two consecutive rounds make no progress.

    Concrete mode treats a nonzero residual as proof that no codeword matches
    the forced labels. Symbolic mode leaves residuals to the caller's global
    linear system, where they are implied by the per-vertex parity rows.
    """
    code = state.code
    cols = code.inner.gen_cols
    min_labeled = strict_label_threshold(code)
    d = code.d
    side = start_side
    rounds: list[RoundRecord] = []
    quiet = 0
    while state.total_missing:
        missing = state.left_missing if side == LEFT else state.right_missing
        frontier = [
            v for v in range(code.n) if 0 < missing[v] and d - missing[v] >= min_labeled
        ]
        if reverse:
            frontier.reverse()
        new = 0
        for v in frontier:
            solved = solve_vertex(cols, state.vertex_constraints(side, v))
            if not symbolic and any(solved.residuals):
                return DecodeStatus.EMPTY, tuple(rounds)
            for slot, val in solved.assigned:
                state.assign(state.edge_id(side, v, slot), val)
                new += 1
        rounds.append(
            RoundRecord(
                side,
                len(frontier),
                new,
                sum(1 for m in state.left_missing if m),
                sum(1 for m in state.right_missing if m),
            )
        )
        quiet = 0 if new else quiet + 1
        if quiet >= 2:
            return DecodeStatus.STUCK, tuple(rounds)
        side = RIGHT if side == LEFT else LEFT
    return DecodeStatus.COMPLETE, tuple(rounds)
