"""Decidable equivalence checks: PET, PST, graph isomorphism, and friends.

Every search here is exhaustive backtracking over permutations with
multiset pruning, behind a hard size cap. A `None` result within the cap
is therefore a proof of non-existence, not a heuristic failure. All
searches use lexicographic candidate order and return the first witness
found, so results are deterministic across runs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .constructions import Graph, UnfoldingPair
from .errors import CapExceededError, PreconditionError
from .matrix import IntMatrix, kron

PET_CAP = 8  # largest matrix side for PET/PST/permutation-equivalence searches
ISO_CAP = 24  # largest vertex count for graph-isomorphism searches

FloatMatrix = Sequence[Sequence[float]]


@dataclass(frozen=True)
class PermWitness:
    """Permutation(s) certifying an equivalence, replayable exactly.

    perm (and col_perm for the two-sided kinds) index into the source
    matrix: the certified equation is the one checked by `holds_for`.
    """

    kind: str  # "pet" | "pst" | "graph_iso" | "partition_iso"
    perm: tuple[int, ...]
    col_perm: tuple[int, ...] | None = None

    def matrices(self) -> tuple[IntMatrix, IntMatrix]:
        p = permutation_matrix(self.perm)
        q = permutation_matrix(self.col_perm) if self.col_perm is not None else p
        return p, q

    def holds_for(self, left: IntMatrix, right: IntMatrix | None = None) -> bool:
        """Replay the defining equation P^T * left * Q == right.

        For PET/PST kinds `right` defaults to left^T; for the graph kinds
        it is the second adjacency matrix and Q == P.
        """
        if right is None:
            if self.kind not in ("pet", "pst"):
                raise ValueError("graph witnesses need both adjacency matrices")
            right = left.T
        p, q = self.matrices()
        return p.T @ left @ q == right

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "perm": list(self.perm),
            "col_perm": list(self.col_perm) if self.col_perm is not None else None,
        }


def permutation_matrix(perm: Sequence[int]) -> IntMatrix:
    """Matrix P with P[perm[j], j] == 1, so (P^T M Q)[i,j] == M[perm_P[i], perm_Q[j]]."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of 0..n-1")
    return IntMatrix(
        tuple(tuple(1 if perm[j] == i else 0 for j in range(n)) for i in range(n))
    )


def _check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapExceededError(
            f"{what} search is capped at {cap}, got size {size}; "
            "the verdict would not be exhaustive"
        )


def perm_equivalent(
    m: IntMatrix, n: IntMatrix, cap: int = PET_CAP
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Row/column permutations (sigma, tau) with m[sigma[i], tau[j]] == n[i, j].

    Backtracks over sigma with row-multiset pruning; at each depth the
    columns assigned so far must match as multisets of prefixes, which
    is exactly the feasibility condition for completing tau.
    """
    if m.shape != n.shape:
        return None
    _check_cap(max(m.shape), cap, "permutation equivalence")
    rows, cols = m.shape
    ment, nent = m.entries, n.entries
    m_row_keys = [tuple(sorted(r)) for r in ment]
    n_row_keys = [tuple(sorted(r)) for r in nent]
    if sorted(m_row_keys) != sorted(n_row_keys):
        return None
    if sorted(tuple(sorted(c)) for c in zip(*ment)) != sorted(
        tuple(sorted(c)) for c in zip(*nent)
    ):
        return None

    sigma: list[int] = []
    used = [False] * rows

    def columns_feasible() -> bool:
        t = len(sigma)
        mcols = sorted(tuple(ment[sigma[i]][c] for i in range(t)) for c in range(cols))
        ncols = sorted(tuple(nent[i][j] for i in range(t)) for j in range(cols))
        return mcols == ncols

    def extend(i: int) -> bool:
        if i == rows:
            return True
        for r in range(rows):
            if used[r] or m_row_keys[r] != n_row_keys[i]:
                continue
            sigma.append(r)
            used[r] = True
            if columns_feasible() and extend(i + 1):
                return True
            used[r] = False
            sigma.pop()
        return False

    if not extend(0):
        return None

    # sigma fixed; assign tau greedily, smallest matching column first
    buckets: dict[tuple[int, ...], list[int]] = {}
    for c in range(cols):
        buckets.setdefault(tuple(ment[sigma[i]][c] for i in range(rows)), []).append(c)
    tau: list[int] = []
    for j in range(cols):
        vec = tuple(nent[i][j] for i in range(rows))
        tau.append(buckets[vec].pop(0))
    return tuple(sigma), tuple(tau)


def is_pet(b: IntMatrix, cap: int = PET_CAP) -> PermWitness | None:
    """Witness (P, Q) with P^T B Q == B^T, or None (exhaustively)."""
    if not b.is_square():
        raise PreconditionError("PET is defined for square matrices")
    found = perm_equivalent(b, b.T, cap=cap)
    if found is None:
        return None
    sigma, tau = found
    return PermWitness("pet", sigma, tau)


def quick_non_pet(b: IntMatrix) -> bool:
    """Sound, incomplete shortcut: row-sum and column-sum multisets differ."""
    if not b.is_square():
        raise PreconditionError("PET is defined for square matrices")
    return sorted(b.row_sums()) != sorted(b.col_sums())


def is_pst(b: IntMatrix, cap: int = PET_CAP) -> PermWitness | None:
    """Witness P with P^T B P == B^T, or None (exhaustively)."""
    if not b.is_square():
        raise PreconditionError("PST is defined for square matrices")
    n = b.rows
    _check_cap(n, cap, "permutation similarity")
    ent = b.entries
    row_keys = [tuple(sorted(r)) for r in ent]
    col_keys = [tuple(sorted(c)) for c in zip(*ent)]

    sigma: list[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for r in range(n):
            # position i of B^T has row = column i of B and column = row i of B
            if used[r] or row_keys[r] != col_keys[i] or col_keys[r] != row_keys[i]:
                continue
            if ent[r][r] != ent[i][i]:
                continue
            ok = True
            for j, rj in enumerate(sigma):
                if ent[r][rj] != ent[j][i] or ent[rj][r] != ent[i][j]:
                    ok = False
                    break
            if not ok:
                continue
            sigma.append(r)
            used[r] = True
            if extend(i + 1):
                return True
            used[r] = False
            sigma.pop()
        return False

    if extend(0):
        return PermWitness("pst", tuple(sigma))
    return None


def _neighbors(adj: IntMatrix) -> list[tuple[int, ...]]:
    return [
        tuple(j for j, x in enumerate(row) if x) for row in adj.entries
    ]


def _refine_colors(
    nbrs1: list[tuple[int, ...]],
    nbrs2: list[tuple[int, ...]],
    c1: list[int],
    c2: list[int],
) -> tuple[list[int], list[int]] | None:
    """Iterated neighborhood-color refinement, run in lockstep on both graphs.

    Returns stabilized colorings sharing one token space, or None as soon
    as the two color histograms diverge (a proof of non-isomorphism).
    """
    while True:
        table: dict[tuple, int] = {}

        def recolor(nbrs: list[tuple[int, ...]], c: list[int]) -> list[int]:
            out = []
            for v, nb in enumerate(nbrs):
                sig = (c[v], tuple(sorted(c[u] for u in nb)))
                out.append(table.setdefault(sig, len(table)))
            return out

        new1 = recolor(nbrs1, c1)
        new2 = recolor(nbrs2, c2)
        if sorted(new1) != sorted(new2):
            return None
        if len(set(new1)) == len(set(c1)) and len(set(new2)) == len(set(c2)):
            return new1, new2
        c1, c2 = new1, new2


def _adjacency_isomorphism(
    a1: IntMatrix,
    a2: IntMatrix,
    kind: str,
    seed1: list[int] | None = None,
    seed2: list[int] | None = None,
) -> PermWitness | None:
    """Backtracking search for sigma with a1[sigma[i], sigma[j]] == a2[i, j]."""
    n = a1.rows
    nbrs1 = _neighbors(a1)
    nbrs2 = _neighbors(a2)
    refined = _refine_colors(
        nbrs1, nbrs2, seed1 or [0] * n, seed2 or [0] * n
    )
    if refined is None:
        return None
    c1, c2 = refined

    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(c1[v], []).append(v)
    class_size = {color: len(vs) for color, vs in by_color.items()}
    # rare colors first shrinks the tree; candidate order stays lexicographic
    order = sorted(range(n), key=lambda v: (class_size[c2[v]], c2[v], v))

    e1, e2 = a1.entries, a2.entries
    sigma = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for r in by_color.get(c2[i], ()):
            if used[r]:
                continue
            ok = True
            for j in order[:pos]:
                rj = sigma[j]
                if e1[r][rj] != e2[i][j] or e1[rj][r] != e2[j][i]:
                    ok = False
                    break
            if not ok:
                continue
            sigma[i] = r
            used[r] = True
            if extend(pos + 1):
                return True
            used[r] = False
            sigma[i] = -1
        return False

    if extend(0):
        return PermWitness(kind, tuple(sigma))
    return None


def graph_isomorphic(g1: Graph, g2: Graph, cap: int = ISO_CAP) -> PermWitness | None:
    """Isomorphism witness P with P^T A(g1) P == A(g2), or None (exhaustively).

    Unequal vertex counts short-circuit to None; sizes above the cap
    raise instead of guessing.
    """
    if g1.n != g2.n:
        return None
    _check_cap(g1.n, cap, "graph isomorphism")
    return _adjacency_isomorphism(g1.adj, g2.adj, "graph_iso")


def partition_respecting_iso(
    pair: UnfoldingPair, cap: int = ISO_CAP
) -> PermWitness | None:
    """Isomorphism restricted to maps sending partition blocks onto blocks.

    Tries every size-preserving matching of left blocks to right blocks
    (identity, the swap, and so on) and searches within each.
    """
    left, right = pair.left, pair.right
    if left.partition is None or right.partition is None:
        raise PreconditionError("both graphs need a canonical partition")
    if left.n != right.n:
        return None
    _check_cap(left.n, cap, "partition-respecting isomorphism")
    k = len(left.partition)
    if k != len(right.partition):
        return None
    for matching in itertools.permutations(range(k)):
        if any(
            left.partition[i] != right.partition[matching[i]] for i in range(k)
        ):
            continue
        seed1 = []
        for bi, size in enumerate(left.partition):
            seed1.extend([bi] * size)
        inverse = [0] * k
        for i, mi in enumerate(matching):
            inverse[mi] = i
        seed2 = []
        for bj, size in enumerate(right.partition):
            seed2.extend([inverse[bj]] * size)
        found = _adjacency_isomorphism(
            left.adj, right.adj, "partition_iso", seed1, seed2
        )
        if found is not None:
            return found
    return None


@dataclass(frozen=True)
class SimilarityCheck:
    """Classification of a user-supplied real similarity witness."""

    orthogonal: bool
    involutory: bool
    relation_holds: bool

    def valid(self) -> bool:
        return (self.orthogonal or self.involutory) and self.relation_holds


def verify_similarity_witness(
    b: IntMatrix, q: FloatMatrix, tol: float = 1e-9
) -> SimilarityCheck:
    """Check a claimed real similarity B -> B^T by the matrix Q.

    Classifies Q as orthogonal (Q^T Q == I) and/or involutory (Q^2 == I)
    and tests the similarity relation in the inverse-free form
    B Q == Q B^T, all within `tol`. Q is only verified, never searched
    for.
    """
    n = b.rows
    if not b.is_square():
        raise PreconditionError("similarity is defined for square matrices")
    qm = [[float(x) for x in row] for row in q]
    if len(qm) != n or any(len(row) != n for row in qm):
        raise PreconditionError(f"Q must be {n}x{n}")
    if abs(_fdet([row[:] for row in qm])) < 1e-12:
        raise PreconditionError("Q is singular; it cannot witness a similarity")
    qt = [list(col) for col in zip(*qm)]
    ident = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    orthogonal = _fclose(_fmul(qt, qm), ident, tol)
    involutory = _fclose(_fmul(qm, qm), ident, tol)
    bf = [[float(x) for x in row] for row in b.entries]
    btf = [list(col) for col in zip(*bf)]
    relation = _fclose(_fmul(bf, qm), _fmul(qm, btf), tol)
    return SimilarityCheck(orthogonal, involutory, relation)


def _fmul(a: list[list[float]], b: list[list[float]]) -> list[list[float]]:
    bt = list(zip(*b))
    return [[math.fsum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _fclose(a: list[list[float]], b: list[list[float]], tol: float) -> bool:
    return all(
        abs(x - y) <= tol for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def _fdet(a: list[list[float]]) -> float:
    n = len(a)
    det = 1.0
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[pivot][col]) == 0.0:
            return 0.0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            for c in range(col, n):
                a[r][c] -= f * a[col][c]
    return det


def hammack_property_test(
    c: IntMatrix, a: IntMatrix, b: IntMatrix, cap: int = 12
) -> bool:
    """Kronecker cancellation check, decided by brute force on both sides.

    For 0/1 matrices with C non-zero and square A lacking either a zero
    row or a zero column, C@A and C@B are permutationally equivalent
    exactly when A and B are. Returns whether the two brute-force
    verdicts agree (they must, under the preconditions).
    """
    for name, m in (("C", c), ("A", a), ("B", b)):
        if not m.is_binary():
            raise PreconditionError(f"{name} must be a 0/1 matrix")
    if c.is_zero():
        raise PreconditionError("C must be non-zero")
    if not a.is_square():
        raise PreconditionError("A must be square")
    if any(s == 0 for s in a.row_sums()) and any(s == 0 for s in a.col_sums()):
        raise PreconditionError("A must not have both a zero row and a zero column")
    big = perm_equivalent(kron(c, a), kron(c, b), cap=cap) is not None
    small = perm_equivalent(a, b, cap=cap) is not None
    return big == small
