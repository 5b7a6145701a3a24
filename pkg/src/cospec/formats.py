"""Graph serialization: graph6 strings and DOT files.

graph6 is the compact ASCII format: a size header followed by the
upper-triangular adjacency bits packed into 6-bit printable chunks.
One graph per line, no ">>graph6<<" header.
"""

from __future__ import annotations

from .constructions import Graph
from .errors import PreconditionError
from .matrix import IntMatrix

# distinguishable fill colors for partition blocks, cycled
PALETTE = (
    "#a6cee3",
    "#b2df8a",
    "#fb9a99",
    "#fdbf6f",
    "#cab2d6",
    "#ffff99",
)


def graph6(adj: IntMatrix) -> str:
    """Encode a simple graph's adjacency matrix as a graph6 string."""
    if not adj.is_symmetric():
        raise PreconditionError("graph6 encodes simple undirected graphs")
    if not adj.has_zero_diagonal():
        raise PreconditionError("graph6 does not represent loops")
    if not adj.is_binary():
        raise PreconditionError("graph6 needs a 0/1 adjacency matrix")
    n = adj.rows
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(
            chr(((n >> shift) & 0x3F) + 63) for shift in (12, 6, 0)
        )
    else:
        raise PreconditionError("graphs this large are out of scope")
    bits = [adj.entries[i][j] for j in range(1, n) for i in range(j)]
    while len(bits) % 6:
        bits.append(0)
    chunks = [
        chr(sum(bit << (5 - k) for k, bit in enumerate(bits[i : i + 6])) + 63)
        for i in range(0, len(bits), 6)
    ]
    return head + "".join(chunks)


def dot(graph: Graph, name: str = "G") -> str:
    """Render a graph as DOT, filling nodes by canonical partition block."""
    n = graph.n
    block_of = [0] * n
    if graph.partition:
        v = 0
        for bi, size in enumerate(graph.partition):
            for _ in range(size):
                block_of[v] = bi
                v += 1
    lines = [f"graph {name} {{", "  node [style=filled];"]
    for v in range(n):
        color = PALETTE[block_of[v] % len(PALETTE)]
        lines.append(f'  v{v} [fillcolor="{color}"];')
    for i in range(n):
        for j in range(i + 1, n):
            if graph.adj.entries[i][j]:
                lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
