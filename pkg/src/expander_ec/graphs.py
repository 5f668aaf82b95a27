"""Regular graphs, bipartite double covers, and spectral expansion estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .rng import SplitMix

__all__ = [
    "RegularGraph",
    "BipartiteGraph",
    "double_cover",
    "make_graph",
    "expansion_lambda",
    "bipartite_lambda",
    "mixing_check",
    "count_edges_between",
    "write_graph",
    "read_graph",
    "parse_graph_text",
]

DENSE_EIGEN_CAP = 512


@dataclass
class RegularGraph:
    """d-regular undirected graph on n vertices via neighbor lists.

    Self-loops are allowed only when loops=True (each loop occupies one
    adjacency slot); multi-edges are never allowed. lam caches the spectral
    expansion max(second largest, |smallest|) of the adjacency eigenvalues,
    exact when certified by construction.
    """

    n: int
    d: int
    adj: tuple[tuple[int, ...], ...]
    loops: bool = False
    lam: Fraction | float | None = None
    lam_certified: bool = False

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency size mismatch")
        for v, nbrs in enumerate(self.adj):
            if len(nbrs) != self.d:
                raise ValueError(f"vertex {v} has degree {len(nbrs)}")
            if len(set(nbrs)) != self.d:
                raise ValueError(f"vertex {v} has a repeated neighbor")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} out of range")
                if u == v and not self.loops:
                    raise ValueError(f"unexpected self-loop at {v}")
                if u != v and v not in self.adj[u]:
                    raise ValueError(f"edge {v}-{u} not symmetric")


@dataclass
class BipartiteGraph:
    """d-regular bipartite graph, n vertices per side, with explicit ports.

    ports[v][i] = (u, j) pairs left slot (v, i) with right slot (u, j); the
    pairing is an involution and edge (v, i) has id v*d + i. Labelings of the
    nd edges index coordinates by that id.
    """

    n: int
    d: int
    ports: tuple[tuple[tuple[int, int], ...], ...]
    lam: Fraction | float | None = None
    lam_certified: bool = False
    right_ports: tuple[tuple[tuple[int, int], ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.ports) != self.n:
            raise ValueError("port table size mismatch")
        back: list[list[tuple[int, int] | None]] = [[None] * self.d for _ in range(self.n)]
        for v, slots in enumerate(self.ports):
            if len(slots) != self.d:
                raise ValueError(f"left vertex {v} has degree {len(slots)}")
            seen = set()
            for i, (u, j) in enumerate(slots):
                if not (0 <= u < self.n and 0 <= j < self.d):
                    raise ValueError(f"port ({u},{j}) out of range")
                if u in seen:
                    raise ValueError(f"multi-edge at left vertex {v}")
                seen.add(u)
                if back[u][j] is not None:
                    raise ValueError(f"right slot ({u},{j}) used twice")
                back[u][j] = (v, i)
        if any(None in row for row in back):
            raise ValueError("unmatched right slot")
        self.right_ports = tuple(tuple(row) for row in back)  # type: ignore[arg-type]

    @property
    def num_edges(self) -> int:
        return self.n * self.d

    def left_edge_ids(self, v: int) -> range:
        return range(v * self.d, (v + 1) * self.d)

    def right_edge_id(self, u: int, j: int) -> int:
        v, i = self.right_ports[u][j]
        return v * self.d + i

    def right_edge_ids(self, u: int) -> list[int]:
        return [v * self.d + i for v, i in self.right_ports[u]]

    def edge_right_end(self, e: int) -> tuple[int, int]:
        return self.ports[e // self.d][e % self.d]

    def biadjacency(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.float64)
        for v, slots in enumerate(self.ports):
            for u, _ in slots:
                m[v, u] = 1.0
        return m


def double_cover(g: RegularGraph) -> BipartiteGraph:
    """Bipartite double cover: left v slot i pairs with right u at the slot
    where u lists v; a self-loop pairs (v, i) with its own mirror slot."""
    index_of = [{u: j for j, u in enumerate(nbrs)} for nbrs in g.adj]
    ports = tuple(
        tuple((u, index_of[u][v]) for u in nbrs) for v, nbrs in enumerate(g.adj)
    )
    return BipartiteGraph(g.n, g.d, ports, lam=g.lam, lam_certified=g.lam_certified)


def _random_regular(n: int, d: int, seed: int) -> RegularGraph:
    """Stub pairing with retry: shuffle unpaired stubs each pass, keep pairs
    that create neither loops nor duplicates, restart when a pass strands."""
    if n * d % 2:
        raise ValueError("n*d must be even")
    if not 0 < d < n:
        raise ValueError("need 0 < d < n")
    gen = SplitMix(seed ^ 0x9A9B)
    for _ in range(200):
        stubs = [v for v in range(n) for _ in range(d)]
        edges: set[tuple[int, int]] = set()
        progress = True
        while stubs and progress:
            gen.shuffle(stubs)
            progress = False
            leftovers: list[int] = []
            for a, b in zip(stubs[::2], stubs[1::2]):
                if a == b or (min(a, b), max(a, b)) in edges:
                    leftovers.extend((a, b))
                else:
                    edges.add((min(a, b), max(a, b)))
                    progress = True
            stubs = leftovers
        if not stubs:
            adj: list[list[int]] = [[] for _ in range(n)]
            for a, b in sorted(edges):
                adj[a].append(b)
                adj[b].append(a)
            return RegularGraph(n, d, tuple(tuple(sorted(x)) for x in adj))
    raise RuntimeError(f"no simple {d}-regular graph found for n={n} after retries")


def make_graph(kind: str, params: Sequence[int] = (), seed: int = 0) -> RegularGraph | BipartiteGraph:
    """Build a named graph.

    Regular kinds: complete[n], complete_with_loops[n], cycle[n],
    random_regular[n,d]. Bipartite kind: complete_bipartite[n].
    """
    if kind == "complete":
        (n,) = params
        if n < 2:
            raise ValueError("complete graph needs n >= 2")
        adj = tuple(tuple(u for u in range(n) if u != v) for v in range(n))
        return RegularGraph(n, n - 1, adj, lam=Fraction(1), lam_certified=True)
    if kind == "complete_with_loops":
        (n,) = params
        if n < 1:
            raise ValueError("need n >= 1")
        adj = tuple(tuple(range(n)) for _ in range(n))
        return RegularGraph(n, n, adj, loops=True, lam=Fraction(0), lam_certified=True)
    if kind == "cycle":
        (n,) = params
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        adj = tuple(tuple(sorted(((v - 1) % n, (v + 1) % n))) for v in range(n))
        if n % 2 == 0:
            lam: Fraction | float = Fraction(2)  # bipartite, so -2 is an eigenvalue
            certified = True
        elif n == 3:
            lam, certified = Fraction(1), True
        else:
            lam, certified = 2.0 * math.cos(math.pi / n), False
        return RegularGraph(n, 2, adj, lam=lam, lam_certified=certified)
    if kind == "random_regular":
        n, d = params
        return _random_regular(n, d, seed)
    if kind == "complete_bipartite":
        (n,) = params
        if n < 1:
            raise ValueError("need n >= 1")
        ports = tuple(tuple((u, v) for u in range(n)) for v in range(n))
        return BipartiteGraph(n, n, ports, lam=Fraction(0), lam_certified=True)
    raise ValueError(f"unknown graph kind: {kind}")


def _adjacency_matrix(g: RegularGraph) -> np.ndarray:
    m = np.zeros((g.n, g.n), dtype=np.float64)
    for v, nbrs in enumerate(g.adj):
        for u in nbrs:
            m[v, u] += 1.0
    return m


def expansion_lambda(g: RegularGraph, tol: float = 1e-6, dense_cap: int = DENSE_EIGEN_CAP) -> float:
    """max(second largest, |smallest|) adjacency eigenvalue; reported to tol,
    not certified. Dense solve up to dense_cap vertices, Lanczos beyond."""
    if g.n < 2:
        raise ValueError("expansion needs n >= 2")
    if g.n <= dense_cap:
        ev = np.linalg.eigvalsh(_adjacency_matrix(g))
        lam = float(max(ev[-2], abs(ev[0])))
    else:
        from scipy.sparse import csr_matrix
        from scipy.sparse.linalg import ArpackNoConvergence, eigsh

        rows = [v for v, nbrs in enumerate(g.adj) for _ in nbrs]
        cols = [u for nbrs in g.adj for u in nbrs]
        mat = csr_matrix(
            (np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n), dtype=np.float64
        )
        try:
            top = eigsh(mat, k=2, which="LA", tol=tol, return_eigenvectors=False)
            bottom = eigsh(mat, k=1, which="SA", tol=tol, return_eigenvectors=False)
        except ArpackNoConvergence as exc:
            raise RuntimeError(f"eigenvalue estimation did not converge: {exc}") from exc
        lam = float(max(min(top), abs(bottom[0])))
    if g.lam is None:
        g.lam = lam
    return lam


def bipartite_lambda(g: BipartiteGraph, tol: float = 1e-6, dense_cap: int = DENSE_EIGEN_CAP) -> float:
    """Second singular value of the biadjacency matrix, reported to tol."""
    if g.n < 2:
        raise ValueError("expansion needs n >= 2")
    if g.n <= dense_cap:
        sv = np.linalg.svd(g.biadjacency(), compute_uv=False)
        lam = float(sv[1])
    else:
        from scipy.sparse import csr_matrix
        from scipy.sparse.linalg import ArpackNoConvergence, svds

        rows = [v for v, slots in enumerate(g.ports) for _ in slots]
        cols = [u for slots in g.ports for u, _ in slots]
        mat = csr_matrix(
            (np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n), dtype=np.float64
        )
        try:
            sv = svds(mat, k=2, tol=tol, return_singular_vectors=False)
        except ArpackNoConvergence as exc:
            raise RuntimeError(f"singular value estimation did not converge: {exc}") from exc
        lam = float(sorted(sv)[-2])
    if g.lam is None:
        g.lam = lam
    return lam


def count_edges_between(g: BipartiteGraph, left: set[int], right: set[int]) -> int:
    total = 0
    for v in left:
        for u, _ in g.ports[v]:
            if u in right:
                total += 1
    return total


def mixing_check(g: BipartiteGraph, left: set[int], right: set[int], lam: float) -> bool:
    """Whether |E(S,T) - d|S||T|/n| <= lam * sqrt(|S||T|); callers add slack."""
    actual = count_edges_between(g, left, right)
    expected = g.d * len(left) * len(right) / g.n
    return abs(actual - expected) <= lam * math.sqrt(len(left) * len(right))


def write_graph(g: RegularGraph | BipartiteGraph, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(graph_to_text(g))


def graph_to_text(g: RegularGraph | BipartiteGraph) -> str:
    lines = []
    if isinstance(g, RegularGraph):
        lines.append(f"regular {g.n} {g.d}")
        lines.extend(" ".join(str(u) for u in nbrs) for nbrs in g.adj)
    else:
        lines.append(f"bipartite {g.n} {g.d}")
        lines.extend(
            " ".join(f"{u}:{j}" for u, j in slots) for slots in g.ports
        )
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> RegularGraph | BipartiteGraph:
    with open(path, encoding="ascii") as fh:
        return parse_graph_text(fh.read())


def parse_graph_text(text: str) -> RegularGraph | BipartiteGraph:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 3 or head[0] not in ("regular", "bipartite"):
        raise ValueError(f"bad header: {lines[0]!r}")
    n, d = int(head[1]), int(head[2])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} vertex lines, found {len(lines) - 1}")
    if head[0] == "regular":
        adj = tuple(tuple(int(tok) for tok in ln.split()) for ln in lines[1:])
        loops = any(v in nbrs for v, nbrs in enumerate(adj))
        return RegularGraph(n, d, adj, loops=loops)
    ports = []
    for ln in lines[1:]:
        slots = []
        for tok in ln.split():
            u, _, j = tok.partition(":")
            if not j:
                raise ValueError(f"bad port token {tok!r}")
            slots.append((int(u), int(j)))
        ports.append(tuple(slots))
    return BipartiteGraph(n, d, tuple(ports))
