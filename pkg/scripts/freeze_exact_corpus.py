"""Freeze the golden corpus for the exact-modularity acceptance check.

Scores come from brute-force enumeration of every partition in
restricted-growth-string order (the oracle), not from the production
solver, so the frozen file is an independent reference. Scores are
stored as exact integer fractions num/(4 m^2).

Run from the repository root:
    python3 scripts/freeze_exact_corpus.py
"""

import json
import pathlib

from gnpmod.graph import Graph, sample_gnp
from gnpmod.modularity import Partition, _block_stats, enumerate_partitions_rgs

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden" / "exact_corpus.json"


def oracle(G):
    m = G.m
    if m == 0:
        return 0, 1, [sorted(range(1, G.n + 1))]
    best_num = None
    best_blocks = None
    for blocks in enumerate_partitions_rgs(G.n):
        P = Partition.of(blocks, G.n)
        num = sum(4 * e * m - vol * vol for e, _, vol in _block_stats(G, P))
        if best_num is None or num > best_num:
            best_num = num
            best_blocks = P.canonical_blocks()
    return best_num, 4 * m * m, best_blocks


def main():
    named = {
        "two_disjoint_edges": Graph(4, [(1, 2), (3, 4)]),
        "K2": Graph(2, [(1, 2)]),
        "K3": Graph(3, [(1, 2), (1, 3), (2, 3)]),
        "P4": Graph(4, [(1, 2), (2, 3), (3, 4)]),
    }
    entries = []
    for name, G in named.items():
        num, den, blocks = oracle(G)
        entries.append({"name": name, "n": G.n, "edges": list(G.edges),
                        "num": num, "den": den, "blocks": blocks})
    for i in range(40):
        n = 4 + i % 7  # n in 4..10
        G = sample_gnp(n, 0.5, 20_000 + i)
        if G.m == 0:
            continue
        num, den, blocks = oracle(G)
        entries.append({"name": f"gnp_{n}_seed{20_000 + i}", "n": n,
                        "edges": list(G.edges), "num": num, "den": den,
                        "blocks": blocks})
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(entries, indent=1) + "\n")
    print(f"wrote {len(entries)} entries to {OUT}")


if __name__ == "__main__":
    main()
