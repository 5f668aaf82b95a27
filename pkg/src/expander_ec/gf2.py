"""Bit-packed linear algebra over GF(2): vectors, matrices, affine solution sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "BitVector",
    "BitMatrix",
    "RrefResult",
    "AffineSpace",
    "rref",
    "solve_affine",
    "affine_equal",
]

# Coordinate i of a word lives at bit i of the backing int, so coordinate 0 is
# the least significant bit and text renderings print coordinate 0 first.

_BYTE_BITS = tuple(tuple((b >> i) & 1 for i in range(8)) for b in range(256))

ENUMERATION_CAP = 20


def _bits_to_list(bits: int, n: int) -> list[int]:
    """Unpack an n-bit int into a list of 0/1 ints, one pass, LSB first."""
    if n == 0:
        return []
    raw = bits.to_bytes((n + 7) // 8, "little")
    out: list[int] = []
    for byte in raw:
        out.extend(_BYTE_BITS[byte])
    del out[n:]
    return out


def _list_to_bits(vals: Sequence[int]) -> int:
    acc = bytearray((len(vals) + 7) // 8)
    for i, v in enumerate(vals):
        if v:
            acc[i >> 3] |= 1 << (i & 7)
    return int.from_bytes(bytes(acc), "little")


@dataclass(frozen=True)
class BitVector:
    """Immutable GF(2) vector of length n backed by a Python int."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("negative length")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError("bits out of range for length")

    @classmethod
    def from_bits(cls, vals: Iterable[int]) -> BitVector:
        vals = list(vals)
        return cls(len(vals), _list_to_bits(vals))

    @classmethod
    def from01(cls, text: str) -> BitVector:
        text = text.strip()
        if set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(text), _list_to_bits([int(c) for c in text]))

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> BitVector:
        return cls(n, (1 << n) - 1)

    def get(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        bits = self.bits
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    def bit_list(self) -> list[int]:
        return _bits_to_list(self.bits, self.n)

    def to01(self) -> str:
        return "".join("1" if b else "0" for b in self.bit_list())

    def __xor__(self, other: BitVector) -> BitVector:
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVector(self.n, self.bits ^ other.bits)

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class BitMatrix:
    """Immutable GF(2) matrix; data holds one int per row, bit j = column j."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0 or len(self.data) != self.rows:
            raise ValueError("shape mismatch")
        bound = 1 << self.cols
        if any(not 0 <= r < bound for r in self.data):
            raise ValueError("row out of range for width")

    @classmethod
    def from_rows(cls, rows: Sequence[int], cols: int) -> BitMatrix:
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def from_text(cls, lines: Iterable[str]) -> BitMatrix:
        vecs = [BitVector.from01(line) for line in lines if line.strip()]
        if not vecs:
            raise ValueError("no rows")
        cols = vecs[0].n
        if any(v.n != cols for v in vecs):
            raise ValueError("ragged rows")
        return cls(len(vecs), cols, tuple(v.bits for v in vecs))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    def column_bits(self, j: int) -> int:
        if not 0 <= j < self.cols:
            raise IndexError(j)
        out = 0
        for i, r in enumerate(self.data):
            out |= ((r >> j) & 1) << i
        return out

    def columns(self) -> list[int]:
        return [self.column_bits(j) for j in range(self.cols)]

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.cols, self.rows, tuple(self.columns()))

    def mul_vec(self, v: BitVector) -> BitVector:
        if v.n != self.cols:
            raise ValueError("dimension mismatch")
        out = 0
        for i, r in enumerate(self.data):
            out |= ((r & v.bits).bit_count() & 1) << i
        return BitVector(self.rows, out)

    def matmul(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ocols = other.columns()
        rows = []
        for r in self.data:
            acc = 0
            for j, c in enumerate(ocols):
                acc |= ((r & c).bit_count() & 1) << j
            rows.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(rows))

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.cols:
            raise ValueError("width mismatch")
        return BitMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    def rank(self) -> int:
        return rref(self).rank

    def to_text(self) -> str:
        return "\n".join(self.row(i).to01() for i in range(self.rows))


@dataclass(frozen=True)
class RrefResult:
    matrix: BitMatrix
    pivots: tuple[int, ...]
    rank: int


def _rref_ints(rows: Sequence[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon over GF(2); pivot columns scanned low bit first.

    Returns (nonzero reduced rows ordered by pivot, pivot columns).
    """
    basis: dict[int, int] = {}
    for row in rows:
        while row:
            p = (row & -row).bit_length() - 1
            if p in basis:
                row ^= basis[p]
            else:
                basis[p] = row
                break
    pivots = sorted(basis)
    # back-substitute so each pivot column is cleared from every other row
    for p in reversed(pivots):
        for q in pivots:
            if q < p and (basis[q] >> p) & 1:
                basis[q] ^= basis[p]
    return [basis[p] for p in pivots], pivots


def rref(m: BitMatrix) -> RrefResult:
    """Row-reduce m; zero rows are dropped from the result matrix."""
    reduced, pivots = _rref_ints(m.data)
    return RrefResult(
        BitMatrix(len(reduced), m.cols, tuple(reduced)), tuple(pivots), len(pivots)
    )


class _Eliminator:
    """Incremental GF(2) elimination basis over ints, low-bit pivots."""

    __slots__ = ("basis",)

    def __init__(self) -> None:
        self.basis: dict[int, int] = {}

    def reduce(self, row: int) -> int:
        while row:
            p = (row & -row).bit_length() - 1
            if p not in self.basis:
                return row
            row ^= self.basis[p]
        return 0

    def add(self, row: int) -> bool:
        """Reduce and absorb; True if row was independent of the basis."""
        row = self.reduce(row)
        if row == 0:
            return False
        self.basis[(row & -row).bit_length() - 1] = row
        return True


@dataclass(frozen=True)
class AffineSpace:
    """Affine subspace {basis @ x + offset} of GF(2)^ambient, or the empty set.

    basis is ambient x k with basis vectors as columns; row i of basis is the
    row of coefficients coordinate i carries over the k parameters.
    """

    ambient: int
    basis: BitMatrix
    offset: BitVector
    empty: bool = False

    def __post_init__(self) -> None:
        if self.basis.rows != self.ambient or self.offset.n != self.ambient:
            raise ValueError("shape mismatch")

    @classmethod
    def empty_space(cls, ambient: int) -> AffineSpace:
        return cls(ambient, BitMatrix.zeros(ambient, 0), BitVector.zeros(ambient), True)

    @classmethod
    def point(cls, v: BitVector) -> AffineSpace:
        return cls(v.n, BitMatrix.zeros(v.n, 0), v)

    @classmethod
    def from_columns(cls, ambient: int, cols: Sequence[int], offset: int) -> AffineSpace:
        data = [0] * ambient
        for j, c in enumerate(cols):
            while c:
                low = c & -c
                data[low.bit_length() - 1] |= 1 << j
                c ^= low
        return cls(ambient, BitMatrix(ambient, len(cols), tuple(data)), BitVector(ambient, offset))

    @property
    def dim(self) -> int:
        return 0 if self.empty else self.basis.cols

    def size(self) -> int:
        return 0 if self.empty else 1 << self.basis.cols

    def column_ints(self) -> list[int]:
        return self.basis.columns()

    def contains(self, v: BitVector) -> bool:
        if self.empty:
            return False
        if v.n != self.ambient:
            raise ValueError("length mismatch")
        elim = _Eliminator()
        for c in self.column_ints():
            elim.add(c)
        return elim.reduce(v.bits ^ self.offset.bits) == 0

    def points(self, cap: int = ENUMERATION_CAP) -> Iterator[BitVector]:
        """Enumerate members in Gray-code order; refuses dim > cap."""
        if self.empty:
            return
        if self.dim > cap:
            raise ValueError(f"dimension {self.dim} above enumeration cap {cap}")
        cols = self.column_ints()
        cur = self.offset.bits
        yield BitVector(self.ambient, cur)
        for i in range(1, 1 << self.dim):
            cur ^= cols[(i & -i).bit_length() - 1]
            yield BitVector(self.ambient, cur)

    def canonical(self) -> AffineSpace:
        """Unique representation: column-reduced echelon basis, offset cleared
        at every pivot coordinate (the least member of the coset when
        coordinates are compared starting from coordinate 0)."""
        if self.empty:
            return AffineSpace.empty_space(self.ambient)
        reduced, pivots = _rref_ints(self.column_ints())
        off = self.offset.bits
        for vec, p in zip(reduced, pivots):
            if (off >> p) & 1:
                off ^= vec
        return AffineSpace.from_columns(self.ambient, reduced, off)


def solve_affine(m: BitMatrix, y: BitVector) -> AffineSpace:
    """Solution set of m @ x = y as an AffineSpace over GF(2)^cols.

    The offset is the solution with every free coordinate zero; basis columns
    are the standard kernel generators, one per free column.
    """
    if y.n != m.rows:
        raise ValueError("rhs length mismatch")
    rhs_bit = 1 << m.cols
    mask = rhs_bit - 1
    augmented = [row | (rhs_bit if (y.bits >> i) & 1 else 0) for i, row in enumerate(m.data)]

    basis: dict[int, int] = {}
    for row in augmented:
        while row & mask:
            p = (row & -row).bit_length() - 1
            if p in basis:
                row ^= basis[p]
            else:
                basis[p] = row
                break
        else:
            if row:
                return AffineSpace.empty_space(m.cols)
    pivots = sorted(basis)
    for p in reversed(pivots):
        for q in pivots:
            if q < p and (basis[q] >> p) & 1:
                basis[q] ^= basis[p]

    offset = 0
    for p in pivots:
        if basis[p] >> m.cols:
            offset |= 1 << p
    pivot_set = set(pivots)
    kernel = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        vec = 1 << f
        for p in pivots:
            if (basis[p] >> f) & 1:
                vec |= 1 << p
        kernel.append(vec)
    return AffineSpace.from_columns(m.cols, kernel, offset)


def affine_equal(a: AffineSpace, b: AffineSpace) -> bool:
    """Set equality, decided by dimension match plus mutual membership."""
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    if a.empty or b.empty:
        return a.empty == b.empty
    if a.dim != b.dim:
        return False

    def contained(inner: AffineSpace, outer: AffineSpace) -> bool:
        elim = _Eliminator()
        for c in outer.column_ints():
            elim.add(c)
        if elim.reduce(inner.offset.bits ^ outer.offset.bits) != 0:
            return False
        return all(elim.reduce(c) == 0 for c in inner.column_ints())

    return contained(a, b) and contained(b, a)
