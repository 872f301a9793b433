"""Simple undirected d-regular graphs: container, generators, edge counting.

Vertices are 0-indexed integers. Edges are stored as (u, v) pairs with u < v,
sorted lexicographically, so equal graphs serialize identically.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import GenerationError, InvalidParameterError

# Vertex subsets are plain frozensets of vertex indices.
VertexSubset = frozenset

_RESTART_CAP = 1000


def _as_seed(seed: int) -> int:
    """Reduce an arbitrary Python int to an unsigned 64-bit seed."""
    return int(seed) & 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class RegularGraph:
    """A simple undirected d-regular graph on n vertices.

    Invariants enforced at construction: every vertex has degree exactly d,
    edges are (u, v) with 0 <= u < v < n, no duplicates, sorted
    lexicographically, and len(edges) == n*d/2.
    """

    n: int
    d: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise InvalidParameterError("n and d must be positive integers")
        if (self.n * self.d) % 2 != 0:
            raise InvalidParameterError("n*d must be even for a d-regular graph")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if len(edges) != self.n * self.d // 2:
            raise InvalidParameterError(
                f"expected {self.n * self.d // 2} edges, got {len(edges)}"
            )
        deg = [0] * self.n
        prev = None
        for u, v in edges:
            if not (0 <= u < v < self.n):
                raise InvalidParameterError(f"bad edge ({u},{v}) for n={self.n}")
            if prev is not None and (u, v) <= prev:
                raise InvalidParameterError("edges must be sorted and duplicate-free")
            prev = (u, v)
            deg[u] += 1
            deg[v] += 1
        bad = [x for x in range(self.n) if deg[x] != self.d]
        if bad:
            raise InvalidParameterError(
                f"vertex {bad[0]} has degree {deg[bad[0]]}, expected {self.d}"
            )

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def complete_graph(m: int) -> RegularGraph:
    """K_m: every pair of the m vertices adjacent."""
    if m < 2:
        raise InvalidParameterError("complete_graph requires m >= 2")
    edges = tuple((u, v) for u in range(m) for v in range(u + 1, m))
    return RegularGraph(m, m - 1, edges)


def complete_bipartite(m: int) -> RegularGraph:
    """K_{m,m}: parts {0..m-1} and {m..2m-1}, all cross pairs adjacent."""
    if m < 1:
        raise InvalidParameterError("complete_bipartite requires m >= 1")
    edges = tuple((u, m + v) for u in range(m) for v in range(m))
    return RegularGraph(2 * m, m, edges)


def cycle_graph(n: int) -> RegularGraph:
    """The n-cycle (2-regular)."""
    if n < 3:
        raise InvalidParameterError("cycle_graph requires n >= 3")
    edges = sorted([(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])
    return RegularGraph(n, 2, tuple(edges))


def disjoint_copies(g: RegularGraph, m: int) -> RegularGraph:
    """m vertex-disjoint copies of g; copy c occupies vertices [c*n, (c+1)*n)."""
    if m < 1:
        raise InvalidParameterError("disjoint_copies requires m >= 1")
    edges = []
    for c in range(m):
        off = c * g.n
        edges.extend((u + off, v + off) for u, v in g.edges)
    return RegularGraph(m * g.n, g.d, tuple(edges))


def _pair_stubs(rng: np.random.Generator, n: int, d: int):
    """One attempt at pairing n*d vertex stubs into a simple graph.

    Valid pairs become edges immediately; stubs involved in a self-loop or a
    duplicate go back into the pool and are reshuffled. Returns None when the
    leftover pool admits no legal pair (the attempt is stuck and the caller
    restarts from scratch).
    """
    edges: set[tuple[int, int]] = set()
    stubs = np.repeat(np.arange(n), d)
    while stubs.size:
        rng.shuffle(stubs)
        leftover = defaultdict(int)
        it = iter(stubs.tolist())
        for s1, s2 in zip(it, it):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                leftover[s1] += 1
                leftover[s2] += 1
        if not leftover:
            break
        keys = list(leftover)
        if not any(
            a != b and (min(a, b), max(a, b)) not in edges
            for i, a in enumerate(keys)
            for b in keys[i:]
        ):
            return None
        stubs = np.array(
            [x for x, c in leftover.items() for _ in range(c)], dtype=np.int64
        )
    return tuple(sorted(edges))


def random_regular(n: int, d: int, seed: int) -> RegularGraph:
    """Sample a simple d-regular graph via stub pairing, deterministic per seed.

    Uses the configuration model with per-pair rejection: colliding stubs are
    reshuffled and re-paired rather than discarding the whole configuration,
    so degrees like d=6 at n=500 succeed reliably. A full restart happens only
    when the leftover stubs admit no legal pair; after 1000 restarts the
    sampler gives up with GenerationError.
    """
    if n < 1 or d < 1:
        raise InvalidParameterError("n and d must be positive")
    if d >= n:
        raise InvalidParameterError("need d < n for a simple graph")
    if (n * d) % 2 != 0:
        raise InvalidParameterError("n*d must be even")
    rng = np.random.default_rng(_as_seed(seed))
    for _ in range(_RESTART_CAP):
        edges = _pair_stubs(rng, n, d)
        if edges is not None:
            return RegularGraph(n, d, edges)
    raise GenerationError(
        f"no simple {d}-regular graph on {n} vertices found in {_RESTART_CAP} restarts"
    )


def _check_subset(g: RegularGraph, s: Iterable[int]) -> frozenset:
    out = frozenset(int(x) for x in s)
    for x in out:
        if not (0 <= x < g.n):
            raise InvalidParameterError(f"vertex {x} out of range [0,{g.n})")
    return out


def edges_between(g: RegularGraph, s: Iterable[int], t: Iterable[int]) -> int:
    """Number of ordered incidences (u in S, v in T) over edges {u,v}.

    An edge with both endpoints in the intersection of S and T counts twice;
    this is the convention under which E(S,S) equals the sum of degrees inside
    S and the mixing bound is stated.
    """
    ss = _check_subset(g, s)
    tt = _check_subset(g, t)
    count = 0
    for u, v in g.edges:
        if u in ss and v in tt:
            count += 1
        if v in ss and u in tt:
            count += 1
    return count


def adjacency_matrix(g: RegularGraph) -> np.ndarray:
    """Dense symmetric 0/1 adjacency matrix with zero diagonal."""
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def edge_endpoints(g: RegularGraph) -> tuple[np.ndarray, np.ndarray]:
    """Edge list as two parallel index arrays (useful for vectorized sums)."""
    if not g.edges:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    arr = np.asarray(g.edges, dtype=np.int64)
    return arr[:, 0], arr[:, 1]
