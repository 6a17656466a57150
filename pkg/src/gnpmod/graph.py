"""Simple undirected graphs on [n], seeded G(n,p) sampling, and subset
edge/volume statistics.

Vertices are labeled 1..n throughout, matching the edge-list file
format.  Graphs are immutable after construction and safe to share
between parallel workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np

from .errors import ValidationError
from .rng import generator


class Graph:
    """Immutable simple undirected graph on vertex set {1, ..., n}."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise ValidationError(f"n={n} must be a positive integer")
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValidationError(f"edge ({u},{v}) out of range 1..{n}")
            canon.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(canon))

    @property
    def m(self) -> int:
        """Number of edges e(G)."""
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        """Adjacency sets, indexed 0..n (index 0 unused)."""
        sets: list[set] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            sets[u].add(v)
            sets[v].add(u)
        return tuple(frozenset(s) for s in sets)

    @cached_property
    def degrees(self) -> np.ndarray:
        """Degree array indexed 0..n-1 (vertex v at position v-1)."""
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u - 1] += 1
            deg[v - 1] += 1
        return deg

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """0-indexed endpoint arrays (u, v) for vectorized subset queries."""
        if self.m == 0:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        e = np.asarray(self.edges, dtype=np.int64)
        return e[:, 0] - 1, e[:, 1] - 1

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        """Neighborhood bit masks (bit v-1 for vertex v); requires n <= 64."""
        if self.n > 64:
            raise ValidationError(f"bit masks need n <= 64, got n={self.n}")
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u - 1] |= 1 << (v - 1)
            masks[v - 1] |= 1 << (u - 1)
        return tuple(masks)

    @cached_property
    def neighbor_arrays(self) -> list[np.ndarray]:
        """Neighbor index arrays (0-indexed), for vectorized updates."""
        return [np.fromiter((w - 1 for w in self.adj[v]), dtype=np.int64)
                for v in range(1, self.n + 1)]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph)
                and self.n == other.n and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexSubset:
    """A subset S of the vertices of a graph on [n]."""

    members: frozenset
    n: int

    def __post_init__(self):
        if not all(isinstance(v, int) and 1 <= v <= self.n for v in self.members):
            raise ValidationError(f"subset members must lie in 1..{self.n}")

    @classmethod
    def of(cls, members: Iterable[int], n: int) -> "VertexSubset":
        return cls(frozenset(members), n)

    def complement(self) -> "VertexSubset":
        return VertexSubset(frozenset(range(1, self.n + 1)) - self.members, self.n)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def fraction(self) -> float:
        """s = |S| / n."""
        return len(self.members) / self.n

    @property
    def mask(self) -> int:
        """Bit mask with bit v-1 set for each member v; requires n <= 64."""
        if self.n > 64:
            raise ValidationError(f"bit masks need n <= 64, got n={self.n}")
        m = 0
        for v in self.members:
            m |= 1 << (v - 1)
        return m


@dataclass(frozen=True)
class EdgeCounts:
    """Edge statistics of a subset S: e(S), e(S̄), e(S,S̄) and volumes."""

    e_in: int
    e_out: int
    e_cross: int
    vol_S: int
    vol_Sbar: int

    @property
    def total(self) -> int:
        return self.e_in + self.e_out + self.e_cross


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """Sample G(n,p): each of the n(n-1)/2 vertex pairs is an edge
    independently with probability p.

    Deterministic for fixed (n, p, seed); pairs are examined in
    lexicographic order (1,2), (1,3), ..., (n-1,n) so samples are
    bit-reproducible.
    """
    if n < 1:
        raise ValidationError(f"n={n} must be a positive integer")
    if not (0.0 <= p <= 1.0):
        raise ValidationError(f"p={p} must lie in [0,1]")
    npairs = n * (n - 1) // 2
    if npairs == 0 or p == 0.0:
        return Graph(n, [])
    us = generator(seed).random(npairs)
    iu, iv = np.triu_indices(n, k=1)
    keep = us < p
    edges = [(int(u) + 1, int(v) + 1) for u, v in zip(iu[keep], iv[keep])]
    return Graph(n, edges)


def degree(G: Graph, v: int) -> int:
    """deg(v) = number of edges containing v."""
    if not (1 <= v <= G.n):
        raise ValidationError(f"vertex {v} out of range 1..{G.n}")
    return int(G.degrees[v - 1])


def edge_counts(G: Graph, S: VertexSubset) -> EdgeCounts:
    """Exact integer counts e(S), e(S̄), e(S,S̄), vol(S), vol(S̄)."""
    if S.n != G.n:
        raise ValidationError(f"subset is over [{S.n}], graph over [{G.n}]")
    mem = S.members
    e_in = e_cross = 0
    for u, v in G.edges:
        inu = u in mem
        inv = v in mem
        if inu and inv:
            e_in += 1
        elif inu or inv:
            e_cross += 1
    e_out = G.m - e_in - e_cross
    vol_S = int(sum(G.degrees[v - 1] for v in mem))
    return EdgeCounts(e_in=e_in, e_out=e_out, e_cross=e_cross,
                      vol_S=vol_S, vol_Sbar=2 * G.m - vol_S)


def mask_edge_counts(e_in_table, vol_table, total_edges: int, two_m: int,
                     mask: int, full: int) -> EdgeCounts:
    """EdgeCounts from precomputed subset tables (see subset_tables)."""
    e_in = int(e_in_table[mask])
    e_out = int(e_in_table[full ^ mask])
    vol_S = int(vol_table[mask])
    return EdgeCounts(e_in=e_in, e_out=e_out,
                      e_cross=total_edges - e_in - e_out,
                      vol_S=vol_S, vol_Sbar=two_m - vol_S)


def subset_tables(G: Graph) -> tuple[list, list]:
    """Tables e_in[mask], vol[mask] over all 2^n subsets (n <= 24).

    Built by the standard low-bit recursion:
    e(S) = e(S - {v}) + |N(v) ∩ (S - {v})| for v the lowest vertex of S.
    """
    n = G.n
    masks = G.adj_masks
    deg = G.degrees
    size = 1 << n
    e_in = [0] * size
    vol = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        e_in[mask] = e_in[rest] + (masks[i] & rest).bit_count()
        vol[mask] = vol[rest] + int(deg[i])
    return e_in, vol


def connected_components(G: Graph) -> list[frozenset]:
    """Connected components as vertex sets, ordered by smallest member."""
    seen = [False] * (G.n + 1)
    comps = []
    for start in range(1, G.n + 1):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in G.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def write_edge_list(G: Graph, out: TextIO) -> None:
    """Write the `n m` / `u v` edge-list text format (1-indexed, u < v)."""
    out.write(f"{G.n} {G.m}\n")
    for u, v in G.edges:
        out.write(f"{u} {v}\n")


def read_edge_list(inp: TextIO) -> Graph:
    """Parse the edge-list text format, rejecting malformed input."""
    header = inp.readline().split()
    if len(header) != 2:
        raise ValidationError("first line must be 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ValidationError(f"bad header {header!r}") from exc
    edges = []
    seen = set()
    for _ in range(m):
        parts = inp.readline().split()
        if len(parts) != 2:
            raise ValidationError(f"expected {m} edge lines 'u v'")
        u, v = int(parts[0]), int(parts[1])
        if not (1 <= u < v <= n):
            raise ValidationError(f"edge ({u},{v}) violates 1 <= u < v <= {n}")
        if (u, v) in seen:
            raise ValidationError(f"duplicate edge ({u},{v})")
        seen.add((u, v))
        edges.append((u, v))
    return Graph(n, edges)
