"""Short binary linear codes used at the vertices: construction, distances, erasure decoding."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .gf2 import AffineSpace, BitMatrix, BitVector, rref, solve_affine
from .rng import SplitMix

__all__ = [
    "LinearCode",
    "ErasedWord",
    "InnerDecodeFailure",
    "make_code",
    "code_from_generator",
    "erasure_list_decode_inner",
    "erasure_unique_decode_inner",
    "max_list_size_over_patterns",
]

MIN_DISTANCE_CAP = 24
GENERALIZED_CAP = 16


class InnerDecodeFailure(enum.Enum):
    AMBIGUOUS = "ambiguous"
    INCONSISTENT = "inconsistent"


AMBIGUOUS = InnerDecodeFailure.AMBIGUOUS
INCONSISTENT = InnerDecodeFailure.INCONSISTENT


@dataclass
class LinearCode:
    """[d, k0] binary linear code with generator and parity-check matrices.

    Distance fields are memoized on first use; dict/attribute assignment is
    atomic under the GIL, so concurrent readers see either absence or the
    final value.
    """

    name: str
    d: int
    k0: int
    generator: BitMatrix
    parity: BitMatrix
    _delta: Fraction | None = field(default=None, repr=False, compare=False)
    _gdist: dict[int, Fraction] = field(default_factory=dict, repr=False, compare=False)
    _gen_cols: tuple[int, ...] | None = field(default=None, repr=False, compare=False)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k0, self.d)

    @property
    def gen_cols(self) -> tuple[int, ...]:
        """Column j of the generator as a k0-bit int, for coordinate solves."""
        if self._gen_cols is None:
            self._gen_cols = tuple(self.generator.columns())
        return self._gen_cols

    def encode(self, message: int) -> int:
        word = 0
        m = message
        while m:
            low = m & -m
            word ^= self.generator.data[low.bit_length() - 1]
            m ^= low
        return word

    def codewords(self) -> Iterator[int]:
        """All 2^k0 codewords in Gray-code order."""
        word = 0
        yield word
        for i in range(1, 1 << self.k0):
            word ^= self.generator.data[(i & -i).bit_length() - 1]
            yield word

    def is_codeword_local(self, word: int) -> bool:
        return all((word & h).bit_count() % 2 == 0 for h in self.parity.data)

    @property
    def delta(self) -> Fraction:
        """Relative minimum distance, by codeword enumeration."""
        if self._delta is None:
            if self.k0 > MIN_DISTANCE_CAP:
                raise ValueError(f"dimension {self.k0} above enumeration cap")
            best = self.d
            for w in self.codewords():
                if w:
                    wt = w.bit_count()
                    if wt < best:
                        best = wt
            self._delta = Fraction(best, self.d)
        return self._delta

    def generalized_distance(self, r: int) -> Fraction:
        """Minimum fraction of coordinates in the union support of r linearly
        independent codewords (the r-th generalized Hamming weight over d).

        Equivalently the smallest support set S whose supported subcode has
        dimension at least r; searched by ascending |S|, ranking the columns
        outside S with early exit.
        """
        if not 1 <= r <= self.k0:
            raise ValueError(f"order {r} outside 1..{self.k0}")
        if r == 1:
            return self.delta
        if r in self._gdist:
            return self._gdist[r]
        if self.d > GENERALIZED_CAP:
            raise ValueError(f"length {self.d} above generalized-distance cap")
        cols = self.gen_cols
        allowed = self.k0 - r  # dim{c : supp(c) in S} = k0 - rank(cols outside S)

        def outside_rank_within(ids: tuple[int, ...], cap: int) -> bool:
            basis: dict[int, int] = {}
            for j in ids:
                v = cols[j]
                while v:
                    p = (v & -v).bit_length() - 1
                    if p in basis:
                        v ^= basis[p]
                    else:
                        basis[p] = v
                        break
                if len(basis) > cap:
                    return False
            return True

        coords = range(self.d)
        for size in range(r, self.d + 1):
            for inside in combinations(coords, size):
                mask = 0
                for j in inside:
                    mask |= 1 << j
                outside = tuple(j for j in coords if not (mask >> j) & 1)
                if outside_rank_within(outside, allowed):
                    result = Fraction(size, self.d)
                    self._gdist[r] = result
                    return result
        raise AssertionError("unreachable: whole support always works")


def _build(name: str, rows: Sequence[int], d: int) -> LinearCode:
    gen = BitMatrix.from_rows(rows, d)
    if rref(gen).rank != gen.rows:
        raise ValueError("generator rows are dependent")
    kernel = solve_affine(gen, BitVector.zeros(gen.rows))
    parity_rows = rref(
        BitMatrix(kernel.dim, d, tuple(kernel.column_ints()))
    ).matrix.data
    parity = BitMatrix.from_rows(parity_rows, d)
    return LinearCode(name, d, gen.rows, gen, parity)


def make_code(kind: str, params: Sequence[int] = (), seed: int = 0) -> LinearCode:
    """Build a named inner code.

    Kinds: repetition[d], parity[d], hamming74, full[d], random[d,k0].
    """
    if kind == "repetition":
        (d,) = params
        if d < 1:
            raise ValueError("length must be positive")
        return _build(f"repetition[{d}]", [(1 << d) - 1], d)
    if kind == "parity":
        (d,) = params
        if d < 2:
            raise ValueError("parity needs length at least 2")
        return _build(f"parity[{d}]", [0b11 << i for i in range(d - 1)], d)
    if kind == "hamming74":
        if params:
            raise ValueError("hamming74 takes no parameters")
        pcols = (0b011, 0b101, 0b110, 0b111)
        rows = [(1 << i) | (pcols[i] << 4) for i in range(4)]
        return _build("hamming74", rows, 7)
    if kind == "full":
        (d,) = params
        return _build(f"full[{d}]", [1 << i for i in range(d)], d)
    if kind == "random":
        d, k0 = params
        if not 1 <= k0 <= d:
            raise ValueError("need 1 <= k0 <= d")
        gen = SplitMix(seed ^ 0xC0DE)
        for _ in range(256):
            rows = [gen.bitstring(d) for _ in range(k0)]
            if rref(BitMatrix.from_rows(rows, d)).rank == k0:
                return _build(f"random[{d},{k0}]", rows, d)
        raise ValueError("could not draw a full-rank generator")
    raise ValueError(f"unknown code kind: {kind}")


def code_from_generator(text: str, name: str = "from_generator") -> LinearCode:
    """Parse a generator matrix from lines of 0/1 characters."""
    gen = BitMatrix.from_text(text.splitlines())
    return _build(name, list(gen.data), gen.cols)


@dataclass(frozen=True)
class ErasedWord:
    """Word over {0, 1, erased}; known marks unerased coordinates."""

    n: int
    values: int
    known: int

    def __post_init__(self) -> None:
        if not 0 <= self.known < (1 << self.n):
            raise ValueError("mask out of range")
        if self.values & ~self.known:
            raise ValueError("value outside known mask")

    @classmethod
    def from_text(cls, text: str) -> ErasedWord:
        text = text.strip()
        values = known = 0
        for i, c in enumerate(text):
            if c == "?":
                continue
            if c not in "01":
                raise ValueError(f"bad symbol {c!r}")
            known |= 1 << i
            if c == "1":
                values |= 1 << i
        return cls(len(text), values, known)

    @classmethod
    def erase_word(cls, word: BitVector, erased_ids: Sequence[int]) -> ErasedWord:
        mask = 0
        for i in erased_ids:
            if not 0 <= i < word.n:
                raise IndexError(i)
            mask |= 1 << i
        known = ((1 << word.n) - 1) ^ mask
        return cls(word.n, word.bits & known, known)

    def to_text(self) -> str:
        out = []
        for i in range(self.n):
            if (self.known >> i) & 1:
                out.append("1" if (self.values >> i) & 1 else "0")
            else:
                out.append("?")
        return "".join(out)

    def erased_count(self) -> int:
        return self.n - self.known.bit_count()

    def erased_ids(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if not (self.known >> i) & 1)

    def agrees_with(self, word: BitVector) -> bool:
        return word.n == self.n and (word.bits ^ self.values) & self.known == 0


def erasure_list_decode_inner(code: LinearCode, w: ErasedWord) -> AffineSpace:
    """All codewords matching w on its unerased coordinates, canonical form."""
    if w.n != code.d:
        raise ValueError("length mismatch")
    cols = code.gen_cols
    rows = []
    rhs = 0
    for idx, i in enumerate(_mask_ids(w.known)):
        rows.append(cols[i])
        rhs |= ((w.values >> i) & 1) << idx
    msg_space = solve_affine(BitMatrix.from_rows(rows, code.k0), BitVector(len(rows), rhs))
    if msg_space.empty:
        return AffineSpace.empty_space(code.d)
    word_cols = [code.encode(c) for c in msg_space.column_ints()]
    return AffineSpace.from_columns(
        code.d, word_cols, code.encode(msg_space.offset.bits)
    ).canonical()


def erasure_unique_decode_inner(
    code: LinearCode, w: ErasedWord
) -> BitVector | InnerDecodeFailure:
    space = erasure_list_decode_inner(code, w)
    if space.empty:
        return INCONSISTENT
    if space.dim > 0:
        return AMBIGUOUS
    return space.offset


def max_list_size_over_patterns(
    code: LinearCode, e: int, samples: int | None = None, seed: int = 0
) -> int:
    """Largest list produced by any erasure pattern of e coordinates.

    The worst case is met by erasing the zero codeword, where the list size
    is the number of codewords supported inside the pattern. Exhaustive over
    all patterns unless samples is given.
    """
    if not 0 <= e <= code.d:
        raise ValueError("bad erasure count")
    zero = BitVector.zeros(code.d)
    best = 0
    if samples is None:
        patterns: Iterator[tuple[int, ...]] = combinations(range(code.d), e)
    else:
        gen = SplitMix(seed)
        patterns = (tuple(gen.sample_ids(code.d, e)) for _ in range(samples))
    for pat in patterns:
        space = erasure_list_decode_inner(code, ErasedWord.erase_word(zero, pat))
        best = max(best, space.size())
    return best


def _mask_ids(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
