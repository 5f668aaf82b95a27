"""Erasure correction to a single codeword by iterative local completion."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .expander import ExpanderCode
from .gf2 import BitVector
from .inner import ErasedWord
from .peeling import LEFT, DecodeStatus, LabelState, RoundRecord, run_peel

__all__ = [
    "RegimeError",
    "UniqueDecodeResult",
    "max_guaranteed_erasures",
    "unique_decode",
]


class RegimeError(ValueError):
    """The graph expands too weakly for the requested guarantee."""


@dataclass(frozen=True)
class UniqueDecodeResult:
    """status COMPLETE carries the codeword; STUCK means propagation halted
    with erasures left; EMPTY means no codeword agrees with the input."""

    status: DecodeStatus
    word: BitVector | None
    rounds: tuple[RoundRecord, ...]


def unique_decode(
    code: ExpanderCode,
    received: ErasedWord,
    *,
    start_side: str = LEFT,
    reverse: bool = False,
) -> UniqueDecodeResult:
    """Fill erased edges by completing vertices above the label threshold.

    Every assignment is forced, so the final word is the only candidate; the
    closing membership check catches inputs that were never near a codeword.
    """
    if received.n != code.num_coords:
        raise ValueError("length mismatch")
    state = LabelState(code)
    for e in range(code.num_coords):
        if (received.known >> e) & 1:
            state.assign(e, (received.values >> e) & 1)
    status, rounds = run_peel(state, start_side=start_side, reverse=reverse)
    if status is not DecodeStatus.COMPLETE:
        return UniqueDecodeResult(status, None, rounds)
    word = state.word()
    if not code.is_codeword(word):
        return UniqueDecodeResult(DecodeStatus.EMPTY, None, rounds)
    return UniqueDecodeResult(DecodeStatus.COMPLETE, word, rounds)


def max_guaranteed_erasures(
    code: ExpanderCode, lam: Fraction | int, epsilon: Fraction
) -> int:
    """floor((1 - eps) * delta * (delta - lam/d) * N): every erasure pattern
    up to this size completes. Exact arithmetic only; a float lam has no
    place in a guarantee, so certify the graph first."""
    if isinstance(lam, float):
        raise TypeError("lam must be exact (Fraction or int)")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must be in (0, 1)")
    delta = code.inner.delta
    ratio = Fraction(lam) / code.d
    if ratio >= delta / 2:
        raise RegimeError(
            f"lam/d = {ratio} is not below delta/2 = {delta / 2}; "
            "no completion guarantee holds"
        )
    budget = (1 - epsilon) * delta * (delta - ratio) * code.num_coords
    return budget.numerator // budget.denominator
