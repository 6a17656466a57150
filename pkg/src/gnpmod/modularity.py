"""Modularity scoring and maximization.

Two algebraically equivalent score formulas are provided, both
accumulated as exact integer numerators with a single final division so
floating error can never flip an argmax decision:

    definition form:  sum_S (4 e(S) e(G) - vol(S)^2) / (4 e(G)^2)
    edge form:        sum_S (4 e(S) e(Sbar) - e(S,Sbar)^2) / (4 e(G)^2)

Exact maximization enumerates all set partitions (cap n <= 13); the
heuristic is a local-move + merge scheme that always returns the score
of a genuine partition, hence a lower bound on the true modularity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, TextIO

from .errors import CapExceeded, ValidationError
from .graph import Graph, VertexSubset, connected_components, subset_tables
from .rng import generator, trial_seed

EXACT_CAP_DEFAULT = 13  # Bell(13) ~ 2.8e7 partitions


@dataclass(frozen=True)
class Partition:
    """A decomposition of {1..n} into disjoint nonempty blocks."""

    blocks: tuple[VertexSubset, ...]
    n: int

    def __post_init__(self):
        seen: set = set()
        for b in self.blocks:
            if b.n != self.n:
                raise ValidationError("block owner n mismatch")
            if not b.members:
                raise ValidationError("empty block")
            if seen & b.members:
                raise ValidationError("blocks overlap")
            seen |= b.members
        if seen != set(range(1, self.n + 1)):
            raise ValidationError("blocks do not cover 1..n")

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]], n: int) -> "Partition":
        return cls(tuple(VertexSubset.of(b, n) for b in blocks), n)

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls.of([range(1, n + 1)], n)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls.of([[v] for v in range(1, n + 1)], n)

    def canonical_blocks(self) -> list[list[int]]:
        """Blocks as sorted lists, ordered by smallest member."""
        return sorted((sorted(b.members) for b in self.blocks), key=lambda b: b[0])

    def labels(self) -> list[int]:
        """Block index per vertex (position v-1), canonical block order."""
        lab = [0] * self.n
        for i, b in enumerate(self.canonical_blocks()):
            for v in b:
                lab[v - 1] = i
        return lab


@dataclass(frozen=True)
class ModularityResult:
    score: float
    partition: Partition
    method: str  # exact | heuristic | components | bisection | trivial


def _block_stats(G: Graph, P: Partition) -> list[tuple[int, int, int]]:
    """(e_in, e_cross, vol) per block, all exact integers, one edge pass."""
    lab = P.labels()
    k = len(P.blocks)
    e_in = [0] * k
    cross = [0] * k
    for u, v in G.edges:
        lu, lv = lab[u - 1], lab[v - 1]
        if lu == lv:
            e_in[lu] += 1
        else:
            cross[lu] += 1
            cross[lv] += 1
    vol = [0] * k
    deg = G.degrees
    for v in range(G.n):
        vol[lab[v]] += int(deg[v])
    return list(zip(e_in, cross, vol))


def _check(G: Graph, P: Partition) -> None:
    if P.n != G.n:
        raise ValidationError(f"partition over [{P.n}], graph over [{G.n}]")


def score_definition(G: Graph, P: Partition) -> float:
    """Modularity score, definition form. Zero-edge graphs score 0."""
    _check(G, P)
    m = G.m
    if m == 0:
        return 0.0
    num = sum(4 * e_in * m - vol * vol for e_in, _, vol in _block_stats(G, P))
    return num / (4 * m * m)


def score_edge_form(G: Graph, P: Partition) -> float:
    """Modularity score, edge form: per-block (4 e(S)e(Sbar) - e(S,Sbar)^2)."""
    _check(G, P)
    m = G.m
    if m == 0:
        return 0.0
    num = 0
    for e_in, cross, _ in _block_stats(G, P):
        e_out = m - e_in - cross
        num += 4 * e_in * e_out - cross * cross
    return num / (4 * m * m)


def _partition_from_mask_blocks(mask_blocks: list[int], n: int) -> Partition:
    blocks = []
    for mb in mask_blocks:
        blocks.append([v + 1 for v in range(n) if mb >> v & 1])
    return Partition.of(blocks, n)


def _prefers(a: int, b: int) -> bool:
    """True if block mask `a` precedes `b` in first-maximizer order:
    the one owning the lowest differing vertex comes first."""
    d = a ^ b
    return bool(a & (d & -d))


def exact_modularity(G: Graph, cap: int = EXACT_CAP_DEFAULT) -> ModularityResult:
    """True maximum modularity by enumeration over all set partitions.

    Runs a subset-sum dynamic program over the 2^n vertex subsets, which
    visits every partition implicitly (O(3^n) work).  Ties are broken
    toward the first maximizer in restricted-growth-string enumeration
    order: blocks are chosen for the lowest unassigned vertex, preferring
    the block that owns the lowest vertex on which two candidates differ.
    """
    n = G.n
    if n > cap:
        raise CapExceeded("exact_modularity n", n, cap)
    m = G.m
    if m == 0:
        return ModularityResult(0.0, Partition.trivial(n), "exact")
    e_in, vol = subset_tables(G)
    full = (1 << n) - 1
    w = [4 * e_in[s] * m - vol[s] * vol[s] for s in range(full + 1)]
    f = [0] * (full + 1)
    choice = [0] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        best = None
        best_blk = 0
        sub = rest
        while True:
            blk = sub | low
            cand = w[blk] + f[rest ^ sub]
            if best is None or cand > best or (cand == best and _prefers(blk, best_blk)):
                best = cand
                best_blk = blk
            if sub == 0:
                break
            sub = (sub - 1) & rest
        f[mask] = best
        choice[mask] = best_blk
    mask_blocks = []
    mask = full
    while mask:
        blk = choice[mask]
        mask_blocks.append(blk)
        mask ^= blk
    P = _partition_from_mask_blocks(mask_blocks, n)
    return ModularityResult(f[full] / (4 * m * m), P, "exact")


def enumerate_partitions_rgs(n: int):
    """All set partitions of {1..n} in restricted-growth-string order.

    Yields lists of blocks (lists of vertices).  Brute-force oracle for
    the dynamic program above; exponential, keep n tiny.
    """
    a = [0] * n
    while True:
        k = max(a) + 1
        blocks: list[list[int]] = [[] for _ in range(k)]
        for v in range(n):
            blocks[a[v]].append(v + 1)
        yield blocks
        i = n - 1
        while i > 0 and a[i] == max(a[:i]) + 1:
            a[i] = 0
            i -= 1
        if i == 0:
            return
        a[i] += 1


def score_components(G: Graph) -> ModularityResult:
    """Score of the connected-components partition."""
    if G.m < 1:
        raise ValidationError("score_components needs at least one edge")
    P = Partition(tuple(VertexSubset(c, G.n) for c in connected_components(G)), G.n)
    return ModularityResult(score_definition(G, P), P, "components")


# ---------------------------------------------------------------------------
# Heuristic maximization: greedy local moves + block merges, with restarts.


def _local_move_level(adj: list[dict], strength: list[float], two_m: float,
                      rng) -> list[int]:
    """One level of greedy moves: each node to the neighboring community
    with the best score gain, repeated to a fixed point."""
    nnodes = len(adj)
    comm = list(range(nnodes))
    cvol = strength.copy()
    moved_any = True
    while moved_any:
        moved_any = False
        for v in rng.permutation(nnodes):
            v = int(v)
            a = comm[v]
            kv: dict[int, float] = {}
            for w, wt in adj[v].items():
                if w == v:
                    continue
                c = comm[w]
                kv[c] = kv.get(c, 0.0) + wt
            dv = strength[v]
            cvol[a] -= dv
            best_c = a
            best_gain = kv.get(a, 0.0) - dv * cvol[a] / two_m
            for c, k in kv.items():
                if c == a:
                    continue
                gain = k - dv * cvol[c] / two_m
                if gain > best_gain + 1e-12:
                    best_c, best_gain = c, gain
            cvol[best_c] += dv
            comm[v] = best_c
            if best_c != a:
                moved_any = True
    return comm


def _louvain_labels(G: Graph, rng) -> list[int]:
    """Full local-move + merge hierarchy; returns a community label per
    vertex (0-indexed positions)."""
    adj: list[dict] = [dict() for _ in range(G.n)]
    for u, v in G.edges:
        adj[u - 1][v - 1] = adj[u - 1].get(v - 1, 0.0) + 1.0
        adj[v - 1][u - 1] = adj[v - 1].get(u - 1, 0.0) + 1.0
    strength = [float(d) for d in G.degrees]
    two_m = 2.0 * G.m
    members: list[list[int]] = [[v] for v in range(G.n)]
    while True:
        comm = _local_move_level(adj, strength, two_m, rng)
        ids = sorted(set(comm))
        if len(ids) == len(adj):
            break
        remap = {c: i for i, c in enumerate(ids)}
        k = len(ids)
        new_members: list[list[int]] = [[] for _ in range(k)]
        new_strength = [0.0] * k
        new_adj: list[dict] = [dict() for _ in range(k)]
        for v, c in enumerate(comm):
            i = remap[c]
            new_members[i].extend(members[v])
            new_strength[i] += strength[v]
        for v, nbrs in enumerate(adj):
            i = remap[comm[v]]
            row = new_adj[i]
            for w, wt in nbrs.items():
                j = remap[comm[w]]
                row[j] = row.get(j, 0.0) + wt
        adj, strength, members = new_adj, new_strength, new_members
        if len(adj) == 1:
            break
    labels = [0] * G.n
    for i, mem in enumerate(members):
        for v in mem:
            labels[v] = i
    return labels


def heuristic_modularity(G: Graph, seed: int = 0, budget: int = 3) -> ModularityResult:
    """Heuristic lower estimate of mod(G): best of the trivial partition,
    the components partition, and `budget` seeded local-move runs.

    The returned score is the exact score of a real partition, hence
    never exceeds the true modularity.
    """
    if G.m < 1:
        raise ValidationError("heuristic_modularity needs at least one edge")
    candidates: list[ModularityResult] = [
        ModularityResult(0.0, Partition.trivial(G.n), "trivial"),
        score_components(G),
    ]
    for r in range(budget):
        rng = generator(trial_seed(seed, r))
        labels = _louvain_labels(G, rng)
        blocks: dict[int, list[int]] = {}
        for v, c in enumerate(labels):
            blocks.setdefault(c, []).append(v + 1)
        P = Partition.of(blocks.values(), G.n)
        candidates.append(ModularityResult(score_definition(G, P), P, "heuristic"))
    return max(candidates, key=lambda r: r.score)


# ---------------------------------------------------------------------------
# Partition text format: one line per block, blocks sorted by smallest member.


def write_partition(P: Partition, out: TextIO) -> None:
    for block in P.canonical_blocks():
        out.write(" ".join(str(v) for v in block) + "\n")


def read_partition(inp: TextIO, n: int) -> Partition:
    blocks = []
    for line in inp:
        line = line.strip()
        if not line:
            continue
        blocks.append([int(tok) for tok in line.split()])
    return Partition.of(blocks, n)
