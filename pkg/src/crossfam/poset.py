"""Relative orders on separated point sets and the chain machinery built on them.

For separated sets A and B, a point x of A precedes y (written here as
LESS under B) when all of B lies strictly to the left of the directed line
x -> y. This relation is a strict partial order; two points are incomparable
exactly when their line meets the convex hull of B.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .errors import DegenerateInputError, HypothesisViolatedError, NotSeparatedError
from .geom import Point, PointSet, _orient_coords, convex_hull, hulls_disjoint

# Comparability tables are materialized in O(m^2); keep inputs cluster-sized.
SIZE_CAP = 4096


class Cmp(Enum):
    LESS = "less"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def _classify_pair(xc, yc, hull_coords) -> Cmp:
    """Side of every hull vertex relative to the directed line x -> y.

    All strictly left means LESS, all strictly right means GREATER, a mix
    means INCOMPARABLE. A hull vertex exactly on the line is degenerate.
    """
    px, py = xc
    qx, qy = yc
    pos = neg = False
    for rx, ry in hull_coords:
        s = _orient_coords(px, py, qx, qy, rx, ry)
        if s == 0:
            raise DegenerateInputError(
                f"point ({rx}, {ry}) lies on the line through ({px}, {py}) and ({qx}, {qy})"
            )
        if s > 0:
            pos = True
        else:
            neg = True
        if pos and neg:
            return Cmp.INCOMPARABLE
    return Cmp.LESS if pos else Cmp.GREATER


def less_under(x: Point, y: Point, B) -> Cmp:
    """Compare x against y relative to the point collection B."""
    if x == y:
        raise ValueError("less_under requires distinct points")
    hull = convex_hull(list(B))
    if not hull:
        raise ValueError("B must be nonempty")
    return _classify_pair((x.x, x.y), (y.x, y.y), [(p.x, p.y) for p in hull])


@dataclass(frozen=True)
class PairPoset:
    """Comparability data for a separated pair of vertex-index sets.

    ``less_a`` holds ordered pairs (u, v) of indices of ``a`` with u LESS v
    relative to ``b``; absent in both directions means incomparable.
    ``iota_a`` counts unordered incomparable pairs on the ``a`` side.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    less_a: frozenset[tuple[int, int]]
    less_b: frozenset[tuple[int, int]]
    iota_a: int
    iota_b: int

    def cmp_ab(self, x: int, y: int) -> Cmp:
        if (x, y) in self.less_a:
            return Cmp.LESS
        if (y, x) in self.less_a:
            return Cmp.GREATER
        return Cmp.INCOMPARABLE

    def cmp_ba(self, x: int, y: int) -> Cmp:
        if (x, y) in self.less_b:
            return Cmp.LESS
        if (y, x) in self.less_b:
            return Cmp.GREATER
        return Cmp.INCOMPARABLE

    def less_in_a(self, x: int, y: int) -> bool:
        return (x, y) in self.less_a

    def less_in_b(self, x: int, y: int) -> bool:
        return (x, y) in self.less_b

    @property
    def iota_sum(self) -> int:
        return self.iota_a + self.iota_b

    @property
    def is_zero_avoiding(self) -> bool:
        return self.iota_a == 0 and self.iota_b == 0


def _build_side(indices, V: PointSet, opposite_hull_coords):
    less = set()
    iota = 0
    coords = V.coords
    k = len(indices)
    for i in range(k - 1):
        u = indices[i]
        cu = coords[u]
        for j in range(i + 1, k):
            v = indices[j]
            c = _classify_pair(cu, coords[v], opposite_hull_coords)
            if c is Cmp.LESS:
                less.add((u, v))
            elif c is Cmp.GREATER:
                less.add((v, u))
            else:
                iota += 1
    return frozenset(less), iota


def build_pair_poset(A, B, V: PointSet, *, check_separated: bool = True) -> PairPoset:
    """Construct the full comparability tables for both sides of a pair.

    The opposite set's convex hull is precomputed so each pair test costs
    O(hull size). Raises NotSeparatedError when the hulls intersect.
    """
    a = tuple(A)
    b = tuple(B)
    if not a or not b:
        raise ValueError("both sides must be nonempty")
    if set(a) & set(b):
        raise ValueError("sides must be disjoint index sets")
    if len(a) > SIZE_CAP or len(b) > SIZE_CAP:
        raise ValueError(f"side exceeds the comparability table cap ({SIZE_CAP})")
    pa = [V[i] for i in a]
    pb = [V[i] for i in b]
    if check_separated and not hulls_disjoint(pa, pb):
        raise NotSeparatedError("convex hulls of the two sides intersect")
    hull_a = [(p.x, p.y) for p in convex_hull(pa)]
    hull_b = [(p.x, p.y) for p in convex_hull(pb)]
    less_a, iota_a = _build_side(a, V, hull_b)
    less_b, iota_b = _build_side(b, V, hull_a)
    return PairPoset(a, b, less_a, less_b, iota_a, iota_b)


def iota_sum_capped(A, B, V: PointSet, cap: int) -> int | None:
    """Incomparable-pair count over both sides, or None once it exceeds cap.

    Used by pair scanners to reject tangled pairs early without building the
    full tables.
    """
    coords = V.coords
    hull_b = [(p.x, p.y) for p in convex_hull([V[i] for i in B])]
    hull_a = [(p.x, p.y) for p in convex_hull([V[i] for i in A])]
    total = 0
    for side, hull in ((tuple(A), hull_b), (tuple(B), hull_a)):
        k = len(side)
        for i in range(k - 1):
            cu = coords[side[i]]
            for j in range(i + 1, k):
                if _classify_pair(cu, coords[side[j]], hull) is Cmp.INCOMPARABLE:
                    total += 1
                    if total > cap:
                        return None
    return total


@dataclass(frozen=True)
class Chain:
    """Ordered disjoint blocks, each entirely below the next."""

    blocks: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.blocks)


def interval_chains(elements: Sequence, less: Callable, n: int, k: int) -> Chain:
    """Extract k blocks of n elements, blockwise totally ordered.

    The construction drops every element incomparable to too many others,
    linearly extends the rest (ties broken by original position), and takes
    k intervals of length n separated by a fixed buffer of skipped elements.
    Requires |P| > nk and 16k * iota <= (|P| - nk)^2; otherwise raises
    HypothesisViolatedError carrying the offending quantities.
    """
    items = list(elements)
    N = len(items)
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")

    # Pairwise comparability; cmp[i][j] True when items[i] < items[j].
    inc_count = [0] * N
    lt = [[False] * N for _ in range(N)]
    iota = 0
    for i in range(N - 1):
        for j in range(i + 1, N):
            if less(items[i], items[j]):
                lt[i][j] = True
            elif less(items[j], items[i]):
                lt[j][i] = True
            else:
                iota += 1
                inc_count[i] += 1
                inc_count[j] += 1

    slack = N - n * k
    if slack <= 0 or 16 * k * iota > slack * slack:
        raise HypothesisViolatedError(N, n, k, iota)

    # Keep elements with |I_x| < T where T = slack / (4k), compared exactly.
    q_idx = [i for i in range(N) if inc_count[i] * 4 * k < slack]

    # Stable topological order of the kept elements, ties by original index.
    pos_in_q = {v: i for i, v in enumerate(q_idx)}
    indeg = [0] * len(q_idx)
    succs: list[list[int]] = [[] for _ in q_idx]
    for qi, i in enumerate(q_idx):
        for qj, j in enumerate(q_idx):
            if lt[i][j]:
                succs[qi].append(qj)
                indeg[qj] += 1
    ready = [i for i in range(len(q_idx)) if indeg[i] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        cur = heapq.heappop(ready)
        order.append(q_idx[cur])
        for nxt in succs[cur]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                heapq.heappush(ready, nxt)
    assert len(order) == len(q_idx), "comparability tables are not acyclic"

    buffer = slack // (2 * k)  # floor(2T)
    blocks = []
    for b in range(k):
        start = b * (n + buffer)
        blocks.append(tuple(items[i] for i in order[start : start + n]))
    assert all(len(blk) == n for blk in blocks), "kept set too small for the intervals"

    if __debug__:
        for bi in range(k - 1):
            for bj in range(bi + 1, k):
                for u in blocks[bi]:
                    for v in blocks[bj]:
                        assert less(u, v), "interval blocks are not totally ordered"
    return Chain(tuple(blocks))


def longest_chain(items: Sequence, dominates: Callable) -> list:
    """A maximum-length chain under a strict partial order.

    ``dominates(a, b)`` must be irreflexive and transitive, with True meaning
    a precedes b. Among maximum chains the lexicographically smallest index
    sequence is returned.
    """
    n = len(items)
    if n == 0:
        return []
    dom = [[dominates(items[i], items[j]) for j in range(n)] for i in range(n)]
    # Transitivity makes "number of dominators" a valid topological height.
    ndom = [sum(dom[j][i] for j in range(n)) for i in range(n)]
    topo = sorted(range(n), key=lambda i: (ndom[i], i))
    suffix = [1] * n
    for i in reversed(topo):
        best = 0
        for j in range(n):
            if dom[i][j] and suffix[j] > best:
                best = suffix[j]
        suffix[i] = 1 + best
    total = max(suffix)
    chain: list[int] = []
    need = total
    candidates = range(n)
    while need > 0:
        pick = min(
            i
            for i in candidates
            if suffix[i] == need and (not chain or dom[chain[-1]][i])
        )
        chain.append(pick)
        need -= 1
        candidates = [j for j in range(n) if dom[pick][j]]
    return [items[i] for i in chain]
