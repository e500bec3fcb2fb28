#!/usr/bin/env python3
"""Writes hla_b_synthetic.txt: a sequence whose bigram table is hla_b_counts.tsv.

The sequence is an Eulerian trail through the bigram multigraph, built by
Hierholzer's algorithm taking the alphabetically smallest successor first, so
the output is deterministic. Layout follows the printed listing: a 1-based
offset, then six blocks of ten symbols per line.
"""
import pathlib
import sys

HERE = pathlib.Path(__file__).resolve().parent


def read_counts(path):
    rows = [line.split() for line in path.read_text().splitlines()
            if line.strip() and not line.startswith("#")]
    symbols = rows[0]
    return symbols, {r[0]: dict(zip(symbols, map(int, r[1:]))) for r in rows[1:]}


def eulerian_trail(symbols, counts):
    out_deg = {s: sum(counts[s].values()) for s in symbols}
    in_deg = {s: sum(counts[r][s] for r in symbols) for s in symbols}
    starts = [s for s in symbols if out_deg[s] - in_deg[s] == 1]
    start = starts[0] if starts else symbols[0]
    remaining = {s: dict(counts[s]) for s in symbols}
    stack, trail = [start], []
    while stack:
        here = stack[-1]
        nxt = next((t for t in symbols if remaining[here][t] > 0), None)
        if nxt is None:
            trail.append(stack.pop())
        else:
            remaining[here][nxt] -= 1
            stack.append(nxt)
    return "".join(reversed(trail))


def layout(seq):
    lines = []
    for offset in range(0, len(seq), 60):
        chunk = seq[offset:offset + 60]
        blocks = [chunk[i:i + 10] for i in range(0, len(chunk), 10)]
        lines.append(f"{offset + 1}\t" + "\t".join(blocks))
    return "\n".join(lines) + "\n"


def main():
    symbols, counts = read_counts(HERE / "hla_b_counts.tsv")
    seq = eulerian_trail(symbols, counts)
    if len(seq) != sum(map(sum, (c.values() for c in counts.values()))) + 1:
        sys.exit("bigram graph has no Eulerian trail")
    (HERE / "hla_b_synthetic.txt").write_text(layout(seq))
    print(f"{len(seq)} symbols, starts {seq[0]}, ends {seq[-1]}")


if __name__ == "__main__":
    main()
