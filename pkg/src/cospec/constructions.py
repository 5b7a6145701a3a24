"""The three unfolding constructions.

Each builder turns a small seed (binary matrices, or a size tuple plus a
binary matrix) into a pair of simple graphs assembled with partitioned
tensor products. The two graphs of a pair differ only in which of the
off-diagonal tensor factors is transposed; swapping a block with its
transpose preserves the spectrum under the applicable conditions but
usually breaks isomorphism.

Builders never decide isomorphism or cospectrality themselves: they
build, record the canonical vertex partition, and expose the structural
hypothesis flags that make non-isomorphism verdicts predictable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import PreconditionError
from .matrix import Block2, Block3, IntMatrix, block_antidiag, ptp2, ptp3


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph as a symmetric binary adjacency matrix.

    `partition` records the canonical vertex partition (block sizes in
    vertex order) when the graph came out of an unfolding.
    """

    adj: IntMatrix
    partition: tuple[int, ...] | None = None
    loops_allowed: bool = False

    def __post_init__(self) -> None:
        if not self.adj.is_symmetric():
            raise PreconditionError("adjacency matrix must be symmetric")
        if not self.adj.is_binary():
            raise PreconditionError("adjacency matrix must be 0/1")
        if not self.loops_allowed and not self.adj.has_zero_diagonal():
            raise PreconditionError("loops are not allowed here")
        if self.partition is not None and sum(self.partition) != self.adj.rows:
            raise PreconditionError("partition does not cover the vertex set")

    @property
    def n(self) -> int:
        return self.adj.rows

    def degrees(self) -> tuple[int, ...]:
        return self.adj.row_sums()

    def edge_count(self) -> int:
        # loops count once
        total = sum(self.adj.row_sums())
        diag = sum(self.adj.entries[i][i] for i in range(self.n))
        return (total - diag) // 2 + diag


def bipartite_graph(biadj: IntMatrix) -> Graph:
    """Bipartite graph [[0, V], [V^T, 0]] with the two sides as partition."""
    if not biadj.is_binary():
        raise PreconditionError("biadjacency matrix must be 0/1")
    return Graph(
        block_antidiag(biadj, biadj.T), partition=(biadj.rows, biadj.cols)
    )


@dataclass(frozen=True)
class UnfoldingPair:
    """A constructed pair of graphs plus the seed that produced it."""

    left: Graph
    right: Graph
    construction: str  # "I" | "II" | "III"
    seed: dict[str, Any]


def _require_binary(name: str, m: IntMatrix) -> None:
    if not m.is_binary():
        raise PreconditionError(f"{name} must be a 0/1 matrix")


def _require_simple(name: str, m: IntMatrix) -> None:
    if not m.is_symmetric():
        raise PreconditionError(f"{name} must be symmetric")
    if not m.has_zero_diagonal():
        raise PreconditionError(f"{name} must have a zero diagonal (no loops)")


def build_reflexive_unfolding(
    v: IntMatrix, a: IntMatrix, b: IntMatrix, d: IntMatrix
) -> UnfoldingPair:
    """Unfold [[A,B],[B^T,D]] against the reflexive bipartite scaffold of V.

    left  = [[I_m@A, V@B ], [V^T@B^T, I_n@D]]
    right = [[I_m@D, V@B^T], [V^T@B,  I_n@A]]   (@ = Kronecker)

    The identity blocks carry the scaffold's loops, so with loopless A
    and D both outputs are simple. Canonical partitions are (m*p, n*q)
    and (m*q, n*p).
    """
    for name, m in (("V", v), ("A", a), ("B", b), ("D", d)):
        _require_binary(name, m)
    _require_simple("A", a)
    _require_simple("D", d)
    if b.rows != a.rows or b.cols != d.rows:
        raise PreconditionError(
            f"B must be {a.rows}x{d.rows} to join A and D, got {b.shape}"
        )
    im = IntMatrix.identity(v.rows)
    i_n = IntMatrix.identity(v.cols)
    scaffold = Block2.of(im, v, v.T, i_n)
    left_mat, left_part = ptp2(scaffold, Block2.of(a, b, b.T, d))
    right_mat, right_part = ptp2(scaffold, Block2.of(d, b.T, b, a))
    return UnfoldingPair(
        left=Graph(left_mat, partition=left_part),
        right=Graph(right_mat, partition=right_part),
        construction="I",
        seed={"V": v, "A": a, "B": b, "D": d},
    )


def build_semireflexive_unfolding(
    u: IntMatrix, x: IntMatrix, b: IntMatrix
) -> UnfoldingPair:
    """Unfold [[0,B],[B^T,I]] against the scaffold [[0,U],[U^T,X]].

    left  = [[0, U@B ], [U^T@B^T, X@I_p]]
    right = [[0, U@B^T], [U^T@B,  X@I_p]]

    B must be square; the X@I block is shared by both outputs. Canonical
    partition is (m*p, n*p) for both.
    """
    _require_binary("U", u)
    _require_binary("X", x)
    _require_binary("B", b)
    _require_simple("X", x)
    if x.rows != u.cols:
        raise PreconditionError(
            f"X must be {u.cols}x{u.cols} to match U's columns, got {x.shape}"
        )
    if not b.is_square():
        raise PreconditionError("B must be square for the semi-reflexive unfolding")
    p = b.rows
    scaffold = Block2.of(IntMatrix.zeros(u.rows, u.rows), u, u.T, x)
    zp = IntMatrix.zeros(p, p)
    ip = IntMatrix.identity(p)
    left_mat, left_part = ptp2(scaffold, Block2.of(zp, b, b.T, ip))
    right_mat, right_part = ptp2(scaffold, Block2.of(zp, b.T, b, ip))
    return UnfoldingPair(
        left=Graph(left_mat, partition=left_part),
        right=Graph(right_mat, partition=right_part),
        construction="II",
        seed={"U": u, "X": x, "B": b},
    )


def build_tripartite_unfolding(
    p: int, q: int, r: int, b: IntMatrix
) -> UnfoldingPair:
    """Unfold the tripartite blow-up of B against all-ones blocks of sizes p,q,r.

    left uses the cyclic orientation [[0,B,B],[B^T,0,B],[B^T,B^T,0]],
    right the blockwise transpose of it; both are tensored against the
    complete tripartite scaffold with parts of sizes p, q, r. Canonical
    partition is (p*n, q*n, r*n).
    """
    if min(p, q, r) < 1:
        raise PreconditionError("part sizes must be positive")
    _require_binary("B", b)
    if not b.is_square():
        raise PreconditionError("B must be square for the tripartite unfolding")
    n = b.rows
    sizes = (p, q, r)
    scaffold = Block3.of(
        [
            [
                IntMatrix.zeros(sizes[i], sizes[j])
                if i == j
                else IntMatrix.ones(sizes[i], sizes[j])
                for j in range(3)
            ]
            for i in range(3)
        ]
    )
    zn = IntMatrix.zeros(n, n)
    bt = b.T
    core = Block3.of([[zn, b, b], [bt, zn, b], [bt, bt, zn]])
    core_tau = Block3.of([[zn, bt, bt], [b, zn, bt], [b, b, zn]])
    left_mat, left_part = ptp3(scaffold, core)
    right_mat, right_part = ptp3(scaffold, core_tau)
    return UnfoldingPair(
        left=Graph(left_mat, partition=left_part),
        right=Graph(right_mat, partition=right_part),
        construction="III",
        seed={"pqr": (p, q, r), "B": b},
    )


def validate_biregular(bip: Graph) -> tuple[int, int]:
    """Degrees (per side) of a biregular bipartite graph.

    The graph must carry a two-block partition with no edges inside
    either side. Returns (first-side degree, second-side degree), or
    raises if either side's degrees are not constant.
    """
    if bip.partition is None or len(bip.partition) != 2:
        raise PreconditionError("need a graph with a two-block partition")
    m, n = bip.partition
    adj = bip.adj
    for i in range(m):
        for j in range(m):
            if adj.entries[i][j]:
                raise PreconditionError("edge inside the first side")
    for i in range(n):
        for j in range(n):
            if adj.entries[m + i][m + j]:
                raise PreconditionError("edge inside the second side")
    degs = adj.row_sums()
    first = set(degs[:m])
    second = set(degs[m:])
    if len(first) != 1:
        raise PreconditionError(f"first-side degrees not constant: {sorted(first)}")
    if len(second) != 1:
        raise PreconditionError(f"second-side degrees not constant: {sorted(second)}")
    return (first.pop(), second.pop())


@dataclass(frozen=True)
class HypothesisReport:
    """Structural hypothesis flags for a constructed pair.

    These are the degree/shape conditions under which the constructions'
    isomorphism theory applies, so a certifier can say whether a
    non-isomorphism verdict was predicted or merely observed. PET/PST
    facts about the seed are deliberately not computed here.
    """

    construction: str
    b_zero: bool
    b_has_zero_row: bool
    b_has_zero_col: bool
    # B admits the Kronecker cancellation argument
    b_cancellation_ok: bool
    # constructions I and II: the bipartite scaffold is biregular with
    # side degrees (l, k) = (row sums, column sums of V or U)
    side_degrees: tuple[int, int] | None = None
    biregular_distinct: bool | None = None  # I: biregular and l != k
    no_isolated_condition: bool | None = None  # II: l <= k and G_X has no isolated vertex
    max_degree_condition: bool | None = None  # II: l > k and maxdeg(G_X) == l-k-1
    # construction III tuple arithmetic
    ordered_tuple: bool | None = None  # p < q < r
    tuple_gap: bool | None = None  # p + q < r
    equal_ends: bool | None = None  # p == r
    # summary: any isomorphism of the pair must respect the partitions
    partition_forced: bool = False
    # summary: a non-PET seed certifies non-isomorphism of the pair
    nonpet_implies_noniso: bool = False

    def to_dict(self) -> dict[str, Any]:
        d = {
            "construction": self.construction,
            "b_zero": self.b_zero,
            "b_has_zero_row": self.b_has_zero_row,
            "b_has_zero_col": self.b_has_zero_col,
            "b_cancellation_ok": self.b_cancellation_ok,
            "side_degrees": list(self.side_degrees) if self.side_degrees else None,
            "biregular_distinct": self.biregular_distinct,
            "no_isolated_condition": self.no_isolated_condition,
            "max_degree_condition": self.max_degree_condition,
            "ordered_tuple": self.ordered_tuple,
            "tuple_gap": self.tuple_gap,
            "equal_ends": self.equal_ends,
            "partition_forced": self.partition_forced,
            "nonpet_implies_noniso": self.nonpet_implies_noniso,
        }
        return d


def _constant_side_degrees(m: IntMatrix) -> tuple[int, int] | None:
    rows = set(m.row_sums())
    cols = set(m.col_sums())
    if len(rows) == 1 and len(cols) == 1:
        return (rows.pop(), cols.pop())
    return None


def check_hypotheses(pair: UnfoldingPair) -> HypothesisReport:
    """Evaluate the structural hypotheses relevant to the pair's construction."""
    b: IntMatrix = pair.seed["B"]
    zero_row = any(s == 0 for s in b.row_sums())
    zero_col = any(s == 0 for s in b.col_sums())
    common = {
        "construction": pair.construction,
        "b_zero": b.is_zero(),
        "b_has_zero_row": zero_row,
        "b_has_zero_col": zero_col,
        "b_cancellation_ok": not (zero_row and zero_col),
    }

    if pair.construction == "I":
        degrees = _constant_side_degrees(pair.seed["V"])
        distinct = degrees is not None and degrees[0] != degrees[1]
        return HypothesisReport(
            **common,
            side_degrees=degrees,
            biregular_distinct=distinct,
            partition_forced=distinct,
            nonpet_implies_noniso=distinct and common["b_cancellation_ok"],
        )

    if pair.construction == "II":
        degrees = _constant_side_degrees(pair.seed["U"])
        x: IntMatrix = pair.seed["X"]
        x_degs = x.row_sums()
        cond1 = cond2 = False
        if degrees is not None:
            l, k = degrees
            cond1 = l <= k and all(dg > 0 for dg in x_degs)
            cond2 = l > k and max(x_degs) == l - k - 1
        forced = cond1 or cond2
        return HypothesisReport(
            **common,
            side_degrees=degrees,
            no_isolated_condition=cond1,
            max_degree_condition=cond2,
            partition_forced=forced,
            nonpet_implies_noniso=forced and common["b_cancellation_ok"],
        )

    p, q, r = pair.seed["pqr"]
    ordered = p < q < r
    gap = p + q < r
    return HypothesisReport(
        **common,
        ordered_tuple=ordered,
        tuple_gap=gap,
        equal_ends=p == r,
        partition_forced=False,
        nonpet_implies_noniso=ordered and gap,
    )
