"""Edge-labeling codes: an inner-code constraint at every vertex of a bipartite graph.

A labeling of the n*d edges is a codeword when the local view at each left
and right vertex, read in slot order, lies in the inner code. Coordinate ids
follow the left ports: edge (v, i) has id v*d + i.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .gf2 import AffineSpace, BitMatrix, BitVector, solve_affine
from .graphs import BipartiteGraph
from .inner import ErasedWord, LinearCode
from .rng import SplitMix

__all__ = [
    "ExpanderCode",
    "erase_random",
    "oracle_list_decode",
    "sample_even_subgraph",
]

EXPLICIT_KERNEL_CAP = 4096
CODEWORD_ENUM_CAP = 20
PAIR_DISTANCE_CAP = 16


@dataclass
class ExpanderCode:
    graph: BipartiteGraph
    inner: LinearCode
    _kernel: AffineSpace | None = field(default=None, repr=False, compare=False)
    _right_ids: tuple[tuple[int, ...], ...] | None = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.inner.d != self.graph.d:
            raise ValueError(
                f"inner code length {self.inner.d} != graph degree {self.graph.d}"
            )

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def d(self) -> int:
        return self.graph.d

    @property
    def num_coords(self) -> int:
        return self.graph.num_edges

    @property
    def right_ids(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids at each right vertex, in slot order."""
        if self._right_ids is None:
            self._right_ids = tuple(
                tuple(self.graph.right_edge_ids(u)) for u in range(self.n)
            )
        return self._right_ids

    def local_views(self, word: BitVector) -> tuple[list[int], list[int]]:
        """Per-vertex d-bit views of a labeling, left side then right side."""
        if word.n != self.num_coords:
            raise ValueError("length mismatch")
        bits = word.bit_list()
        d = self.d
        left = [
            sum(bits[v * d + i] << i for i in range(d)) for v in range(self.n)
        ]
        right = [
            sum(bits[e] << j for j, e in enumerate(ids)) for ids in self.right_ids
        ]
        return left, right

    def is_codeword(self, word: BitVector) -> bool:
        left, right = self.local_views(word)
        ok = self.inner.is_codeword_local
        return all(ok(w) for w in left) and all(ok(w) for w in right)

    def parity_rows(self) -> list[int]:
        """Global parity-check rows as edge-id masks, left vertices first."""
        d = self.d
        rows = [h << (v * d) for v in range(self.n) for h in self.inner.parity.data]
        for ids in self.right_ids:
            for h in self.inner.parity.data:
                mask = 0
                for j, e in enumerate(ids):
                    if (h >> j) & 1:
                        mask |= 1 << e
                rows.append(mask)
        return rows

    def kernel(self) -> AffineSpace:
        """The code as an affine space (offset zero); explicit solve."""
        if self._kernel is None:
            if self.num_coords > EXPLICIT_KERNEL_CAP:
                raise ValueError(f"{self.num_coords} coordinates above kernel cap")
            m = BitMatrix.from_rows(self.parity_rows(), self.num_coords)
            self._kernel = solve_affine(m, BitVector.zeros(m.rows)).canonical()
        return self._kernel

    def dim(self) -> int:
        return self.kernel().dim

    @property
    def rate(self) -> Fraction:
        return Fraction(self.dim(), self.num_coords)

    def enumerate_codewords(self, cap: int = CODEWORD_ENUM_CAP) -> Iterator[BitVector]:
        yield from self.kernel().points(cap=cap)

    def sample_codeword(self, seed: int) -> BitVector:
        space = self.kernel()
        coeffs = SplitMix(seed).bitstring(space.dim)
        word = 0
        for idx, col in enumerate(space.column_ints()):
            if (coeffs >> idx) & 1:
                word ^= col
        return BitVector(self.num_coords, word)

    def min_distance(self, cap: int = CODEWORD_ENUM_CAP) -> int:
        """Minimum codeword weight, by enumeration."""
        if self.dim() > cap:
            raise ValueError(f"dimension {self.dim()} above enumeration cap")
        best = self.num_coords
        for w in self.enumerate_codewords(cap):
            if w.bits:
                best = min(best, w.weight())
        return best

    def second_generalized_support(self, cap: int = PAIR_DISTANCE_CAP) -> int:
        """Smallest union support over pairs of distinct nonzero codewords.

        |supp(a) + supp(b)| = (w(a) + w(b) + w(a^b)) / 2; sorting by weight
        lets the scan stop once the lighter bound passes the best union.
        """
        if self.dim() > cap:
            raise ValueError(f"dimension {self.dim()} above pair cap")
        words = sorted(
            (w.bits for w in self.enumerate_codewords(cap=cap) if w.bits),
            key=lambda b: b.bit_count(),
        )
        if len(words) < 2:
            raise ValueError("need at least two nonzero codewords")
        weights = [b.bit_count() for b in words]
        best = self.num_coords
        for j in range(1, len(words)):
            if weights[j] >= best:
                break
            for i in range(j):
                union = (weights[i] + weights[j] + (words[i] ^ words[j]).bit_count()) >> 1
                if union < best:
                    best = union
        return best


def oracle_list_decode(code: ExpanderCode, received: ErasedWord) -> AffineSpace:
    """All codewords agreeing with the received word, by direct linear solve."""
    if received.n != code.num_coords:
        raise ValueError("length mismatch")
    erased = received.erased_ids()
    pos = {e: idx for idx, e in enumerate(erased)}
    rows = []
    rhs = 0
    for ridx, h in enumerate(code.parity_rows()):
        const = (h & received.values).bit_count() & 1
        rhs |= const << ridx
        row = 0
        unknown = h & ~received.known
        while unknown:
            low = unknown & -unknown
            row |= 1 << pos[low.bit_length() - 1]
            unknown ^= low
        rows.append(row)
    sol = solve_affine(
        BitMatrix.from_rows(rows, len(erased)), BitVector(len(rows), rhs)
    )
    if sol.empty:
        return AffineSpace.empty_space(code.num_coords)

    def lift(small: int) -> int:
        full = 0
        for idx, e in enumerate(erased):
            if (small >> idx) & 1:
                full |= 1 << e
        return full

    return AffineSpace.from_columns(
        code.num_coords,
        [lift(c) for c in sol.column_ints()],
        received.values | lift(sol.offset.bits),
    ).canonical()


def erase_random(word: BitVector, count: int, seed: int) -> ErasedWord:
    """Erase count coordinates chosen uniformly without replacement."""
    ids = SplitMix(seed).sample_ids(word.n, count)
    return ErasedWord.erase_word(word, ids)


def sample_even_subgraph(graph: BipartiteGraph, seed: int) -> BitVector:
    """Uniform element of the cycle space, as an edge labeling.

    Spanning-forest fundamental cycles generate the space, so a random subset
    XOR is uniform. Every vertex sees an even number of chosen edges, which
    makes this a codeword whenever the inner code is the even-weight code.
    BFS keeps the forest shallow, so cycle walks stay cheap on large graphs.
    """
    n, d = graph.n, graph.d
    parent_edge = [-1] * (2 * n)  # left v -> v, right u -> n + u
    seen = [False] * (2 * n)
    non_tree: list[int] = []
    gen = SplitMix(seed)
    for start in range(2 * n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        while queue:
            g = queue.popleft()
            if g < n:
                edges = [(e, n + graph.ports[g][e % d][0]) for e in graph.left_edge_ids(g)]
            else:
                edges = [(e, e // d) for e in graph.right_edge_ids(g - n)]
            for e, other in edges:
                if not seen[other]:
                    seen[other] = True
                    parent_edge[other] = e
                    queue.append(other)
                elif parent_edge[other] != e and parent_edge[g] != e:
                    non_tree.append(e)
    word = 0
    chosen = [e for e in sorted(set(non_tree)) if gen.next_u64() & 1]
    for e in chosen:
        # walk both endpoints to the root, cancelling shared prefix by XOR
        word ^= 1 << e
        for g in (e // d, n + graph.ports[e // d][e % d][0]):
            cur = g
            while parent_edge[cur] >= 0:
                pe = parent_edge[cur]
                word ^= 1 << pe
                cur = pe // d if cur >= n else n + graph.ports[pe // d][pe % d][0]
    return BitVector(graph.num_edges, word)
