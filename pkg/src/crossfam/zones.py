"""Zone-bounding line sets built from seeded point samples, with verification.

The construction samples a point subset, takes all lines it determines, and
audits that no candidate line's zone in that arrangement holds more than an
epsilon fraction of the points. Zone membership is decided exactly: a point
belongs to the zone of a line iff its open arrangement cell meets the line,
which reduces to a one-dimensional rational feasibility test. The audit runs
vectorized over points, but every comparison that could flip an answer is
resolved in exact integer arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .errors import ZoneVerificationError
from .geom import Point, PointSet

# Coordinates at or below this magnitude keep every intermediate product of
# the vectorized audit inside int64; larger inputs take the exact slow path.
_FAST_COORD_LIMIT = 2**29


@dataclass(frozen=True, order=True)
class Line:
    """The line {(x, y) : a*x + b*y + c = 0}, gcd-normalized with a canonical
    sign so each geometric line has exactly one representation."""

    a: int
    b: int
    c: int

    @staticmethod
    def through(p: Point, q: Point) -> "Line":
        if (p.x, p.y) == (q.x, q.y):
            raise ValueError("a line needs two distinct points")
        dx = q.x - p.x
        dy = q.y - p.y
        a = -dy
        b = dx
        c = dy * p.x - dx * p.y
        g = gcd(gcd(abs(a), abs(b)), abs(c))
        a //= g
        b //= g
        c //= g
        if a < 0 or (a == 0 and b < 0):
            a, b, c = -a, -b, -c
        return Line(a, b, c)

    def normalized(self) -> "Line":
        a, b, c = self.a, self.b, self.c
        if (a, b) == (0, 0):
            raise ValueError("invalid line: a and b are both zero")
        g = gcd(gcd(abs(a), abs(b)), abs(c))
        a //= g
        b //= g
        c //= g
        if a < 0 or (a == 0 and b < 0):
            a, b, c = -a, -b, -c
        return Line(a, b, c)

    def eval_at(self, p: Point) -> int:
        return self.a * p.x + self.b * p.y + self.c

    def side_of(self, p: Point) -> int:
        v = self.eval_at(p)
        return (v > 0) - (v < 0)


@dataclass(frozen=True)
class AllDetermined:
    """Audit every line through a pair of points of V."""


@dataclass(frozen=True)
class Sampled:
    """Audit a seeded sample of determined lines; count 0 skips the audit."""

    count: int
    seed: int = 0


CandidateLines = AllDetermined | Sampled


@dataclass(frozen=True)
class ZoneLineSet:
    lines: tuple[Line, ...]
    epsilon: Fraction
    seed: int
    net: tuple[int, ...]
    verified: bool

    def line_triples(self) -> frozenset[tuple[int, int, int]]:
        return frozenset((l.a, l.b, l.c) for l in self.lines)


def net_sample_size(eps: Fraction, n: int, net_constant: int = 40) -> int:
    """Sample size for the sector-piercing net, clamped to [2, n]."""
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must be in (0, 1]")
    inv = 1 / eps
    raw = net_constant * float(inv) * math.log(float(inv))
    return min(n, max(2, math.ceil(raw)))


def sample_sector_net(
    V: PointSet,
    eps,
    seed: int,
    *,
    net_constant: int = 40,
    size_override: int | None = None,
) -> tuple[int, ...]:
    """Seeded sample of vertex indices intended to pierce every heavy angular
    sector; returned sorted for determinism."""
    n = len(V)
    if n < 2:
        raise ValueError("need at least two points")
    if size_override is not None:
        size = min(n, max(2, size_override))
    else:
        size = net_sample_size(Fraction(eps), n, net_constant)
    rng = random.Random(seed)
    return tuple(sorted(rng.sample(range(n), size)))


def lines_through(V: PointSet, indices: Sequence[int]) -> tuple[Line, ...]:
    """All distinct lines determined by pairs of the given vertices, in
    canonical order."""
    seen: set[Line] = set()
    idx = list(indices)
    for i in range(len(idx) - 1):
        p = V[idx[i]]
        for j in range(i + 1, len(idx)):
            seen.add(Line.through(p, V[idx[j]]))
    return tuple(sorted(seen))


def _unrank_pair(rank: int, n: int) -> tuple[int, int]:
    # rank within the lexicographic list of pairs (i, j), i < j.
    lo, hi = 0, n - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid * (2 * n - mid - 1) // 2 <= rank:
            lo = mid
        else:
            hi = mid - 1
    i = lo
    j = i + 1 + rank - i * (2 * n - i - 1) // 2
    return i, j


def _candidate_pairs(n: int, candidates: CandidateLines):
    total = n * (n - 1) // 2
    if isinstance(candidates, AllDetermined):
        for i in range(n - 1):
            for j in range(i + 1, n):
                yield i, j
    elif isinstance(candidates, Sampled):
        if candidates.count <= 0:
            return
        rng = random.Random(candidates.seed)
        k = min(candidates.count, total)
        for rank in sorted(rng.sample(range(total), k)):
            yield _unrank_pair(rank, n)
    else:
        raise TypeError(f"unsupported candidate selector: {candidates!r}")


def _as_lines(L) -> tuple[Line, ...]:
    if isinstance(L, ZoneLineSet):
        return L.lines
    return tuple(L)


def zone_point_count(L, ell: Line, V: PointSet) -> int:
    """Number of points of V in open cells of the arrangement that ell meets.

    Points lying on any line of the arrangement belong to no open cell and
    are never counted. A line of the arrangement itself has an empty zone by
    convention. Fully exact; intended for single queries and cross-checks.
    """
    lines = _as_lines(L)
    ell = ell.normalized()
    if ell in {l.normalized() for l in lines}:
        return 0
    if not lines:
        return len(V)

    # Rational point on ell, scaled by s0 = a^2 + b^2 > 0; scaling every
    # offset by the same positive factor preserves the feasibility test.
    a, b, c = ell.a, ell.b, ell.c
    s0 = a * a + b * b
    p0x, p0y = -a * c, -b * c
    dx, dy = b, -a
    avals = []
    bvals = []
    for l in lines:
        av = l.a * p0x + l.b * p0y + l.c * s0
        bv = l.a * dx + l.b * dy
        assert av != 0 or bv != 0, "candidate line coincides with an arrangement line"
        avals.append(av)
        bvals.append(bv)

    count = 0
    for v in V:
        lo: Fraction | None = None
        hi: Fraction | None = None
        ok = True
        on_line = False
        for l, av, bv in zip(lines, avals, bvals):
            s = l.side_of(v)
            if s == 0:
                on_line = True
                break
            if bv == 0:
                if (av > 0) != (s > 0):
                    ok = False
                    break
                continue
            t = Fraction(-av, bv)
            if (s > 0) == (bv > 0):
                if lo is None or t > lo:
                    lo = t
            else:
                if hi is None or t < hi:
                    hi = t
        if on_line or not ok:
            continue
        if lo is None or hi is None or lo < hi:
            count += 1
    return count


class _FracKey:
    """Sort key comparing num/den pairs (den > 0) by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, kv):
        self.num, self.den = kv

    def __lt__(self, other):
        return self.num * other.den < other.num * self.den


class _ZoneAudit:
    """Vectorized zone counting for many candidate lines over one arrangement.

    Floats are used only to order crossing parameters; any two parameters
    closer than the float error bound are re-compared exactly, so the
    resulting group ranks are exact.
    """

    def __init__(self, V: PointSet, lines: Sequence[Line]):
        self.V = V
        self.lines = list(lines)
        self.n = len(V)
        coord_max = max((max(abs(x), abs(y)) for x, y in V.coords), default=0)
        self.fast = bool(self.lines) and coord_max <= _FAST_COORD_LIMIT
        if not self.fast:
            return
        self.La = np.array([l.a for l in self.lines], dtype=np.int64)
        self.Lb = np.array([l.b for l in self.lines], dtype=np.int64)
        self.Lc = np.array([l.c for l in self.lines], dtype=np.int64)
        xs = np.array([p[0] for p in V.coords], dtype=np.int64)
        ys = np.array([p[1] for p in V.coords], dtype=np.int64)
        vals = xs[:, None] * self.La[None, :] + ys[:, None] * self.Lb[None, :] + self.Lc[None, :]
        self.S = np.sign(vals).astype(np.int8)
        self.off_cells = (self.S == 0).any(axis=1)
        # Cell fingerprints: 64-bit wrap-around sums of per-line tokens signed
        # by the side. Collisions only cost an extra exact check, never a
        # wrong count.
        rng = np.random.Generator(np.random.PCG64(0x5EED_C0DE))
        self.h = (rng.integers(0, 2**63, len(self.lines), dtype=np.int64) << 1) | 1
        with np.errstate(over="ignore"):
            point_hashes = self.S.astype(np.int64) @ self.h
        self._hash_points: dict[int, list[int]] = {}
        for v in np.flatnonzero(~self.off_cells):
            self._hash_points.setdefault(int(point_hashes[v]), []).append(int(v))
        self._ph_sorted = np.sort(np.array(list(self._hash_points) or [0], dtype=np.int64))
        self._have_points = bool(self._hash_points)

    def count(self, p: Point, q: Point) -> int:
        """Points of V in cells met by the line through p and q.

        Walks the line across the arrangement: each non-parallel line flips
        one component of the cell sign vector, so visited-cell fingerprints
        are a cumulative sum over crossings ordered by their exact crossing
        ranks. Fingerprint matches are then verified exactly per point.
        """
        if not self.fast:
            return zone_point_count(self.lines, Line.through(p, q), self.V)
        if not self._have_points:
            return 0
        px, py = p.x, p.y
        dx, dy = q.x - p.x, q.y - p.y
        A = self.La * px + self.Lb * py + self.Lc
        B = self.La * dx + self.Lb * dy
        r = len(A)
        par = B == 0
        sgn_b = np.sign(B)
        if par.any():
            assert not (par & (A == 0)).any(), "candidate coincides with an arrangement line"
            sstart = np.where(par, np.sign(A), -sgn_b)
        else:
            sstart = -sgn_b
        with np.errstate(over="ignore"):
            start_hash = (sstart * self.h).sum(dtype=np.int64)
        npar_idx = np.flatnonzero(~par)
        gid_np = None
        if len(npar_idx):
            gid_np = self._group_ids(A[npar_idx], B[npar_idx])
            walk = np.argsort(gid_np, kind="stable")
            cols = npar_idx[walk]
            gs = gid_np[walk]
            with np.errstate(over="ignore"):
                deltas = (-2) * sstart[cols] * self.h[cols]
                cums = np.cumsum(deltas)
            ends = np.flatnonzero(np.concatenate((gs[1:] != gs[:-1], [True])))
            with np.errstate(over="ignore"):
                qhashes = np.concatenate(([start_hash], start_hash + cums[ends]))
        else:
            qhashes = np.array([start_hash], dtype=np.int64)
        pos = np.searchsorted(self._ph_sorted, qhashes)
        pos_c = np.minimum(pos, len(self._ph_sorted) - 1)
        hit = self._ph_sorted[pos_c] == qhashes
        if not hit.any():
            return 0
        rows: list[int] = []
        for qh in np.unique(qhashes[hit]):
            rows.extend(self._hash_points[int(qh)])
        # Exact feasibility for the proposed rows only: for each line, flip
        # encodes whether the point's side demands t above (+1) or below (-1)
        # the line's crossing rank; parallel mismatches force rank -3.
        flip = sgn_b.astype(np.int8)
        gid = np.full(r, -3, dtype=np.int64)
        if par.any():
            flip[par] = np.sign(A[par]).astype(np.int8)
        if gid_np is not None:
            gid[npar_idx] = gid_np
        sub = self.S[np.array(sorted(rows))]
        u = sub * flip[None, :]
        big = (r + 1) * (r + 1) + 7
        lower = np.where(u > 0, gid[None, :], -2).max(axis=1)
        upper = np.where(u < 0, gid[None, :], big).min(axis=1)
        return int(np.count_nonzero(lower < upper))

    @staticmethod
    def _group_ids(An: np.ndarray, Bn: np.ndarray) -> np.ndarray:
        """Rank the crossing parameters -An/Bn into exact equality groups.

        Ranks are order-isomorphic to the exact rational values: floats give
        the coarse order, and any neighbours within the float error bound are
        re-ranked with integer cross-multiplication.
        """
        r = len(An)
        t = -An.astype(np.float64) / Bn.astype(np.float64)
        order = np.argsort(t, kind="stable")
        if r == 1:
            return np.zeros(1, dtype=np.int32)
        ts = t[order]
        scale = np.maximum(1.0, np.maximum(np.abs(ts[:-1]), np.abs(ts[1:])))
        near = (ts[1:] - ts[:-1]) <= scale * 2.0**-40
        base = np.concatenate(([0], np.cumsum(~near, dtype=np.int64)))
        rank_in_run = np.zeros(r, dtype=np.int64)
        if near.any():
            nz = np.flatnonzero(near)
            breaks = np.flatnonzero(np.diff(nz) > 1)
            starts = np.concatenate(([0], breaks + 1))
            ends = np.concatenate((breaks, [len(nz) - 1]))
            for s_i, e_i in zip(starts, ends):
                lo = int(nz[s_i])
                hi = int(nz[e_i]) + 1  # run spans sorted positions lo..hi
                cols = order[lo : hi + 1]
                # Exact ranks via gcd-reduced fractions with positive
                # denominators; magnitudes are unbounded Python ints.
                keys = []
                for c in cols:
                    a = int(An[c])
                    b = int(Bn[c])
                    num, den = (-a, b) if b > 0 else (a, -b)
                    g = gcd(abs(num), den) or 1
                    keys.append((num // g, den // g))
                ranking = {
                    kv: i
                    for i, kv in enumerate(sorted(set(keys), key=_FracKey))
                }
                for off, kv in enumerate(keys):
                    rank_in_run[lo + off] = ranking[kv]
        gids_sorted = base * (r + 1) + rank_in_run
        out = np.empty(r, dtype=np.int64)
        out[order] = gids_sorted
        if (r + 1) * (r + 1) + 7 < 2**31:
            return out.astype(np.int32)
        return out


def verify_zone_property(L, V: PointSet, eps, candidates: CandidateLines):
    """Check every candidate line's zone against the eps * |V| budget.

    Returns None when the property holds, else the first (line, count)
    witness in candidate order. Comparisons against the budget are exact
    rational comparisons.
    """
    lines = _as_lines(L)
    eps = Fraction(eps)
    n = len(V)
    triples = {(l.a, l.b, l.c) for l in lines}
    audit: _ZoneAudit | None = None
    for i, j in _candidate_pairs(n, candidates):
        ell = Line.through(V[i], V[j])
        if (ell.a, ell.b, ell.c) in triples:
            continue
        if not lines:
            count = n
        else:
            if audit is None:
                audit = _ZoneAudit(V, lines)
                if audit.fast:
                    # Zone counts never exceed the number of points in open
                    # cells; if that already fits the budget, everything passes.
                    in_cells = int(np.count_nonzero(~audit.off_cells))
                    if in_cells * eps.denominator <= eps.numerator * n:
                        return None
            count = audit.count(V[i], V[j])
        if count * eps.denominator > eps.numerator * n:
            return ell, count
    return None


def build_zone_lines(
    V: PointSet,
    eps,
    seed: int,
    audit: CandidateLines,
    *,
    net_constant: int = 40,
    size_override: int | None = None,
    max_attempts: int = 16,
) -> ZoneLineSet:
    """Sample a net, take its determined lines, and verify the zone property.

    On a failed audit the net is resampled with the next seed, up to
    ``max_attempts`` times; exhaustion raises ZoneVerificationError carrying
    the worst witness observed.
    """
    eps = Fraction(eps)
    worst_line = None
    worst_count = -1
    for attempt in range(max_attempts):
        cur_seed = seed + attempt
        net = sample_sector_net(
            V, eps, cur_seed, net_constant=net_constant, size_override=size_override
        )
        lines = lines_through(V, net)
        witness = verify_zone_property(lines, V, eps, audit)
        if witness is None:
            return ZoneLineSet(lines, eps, cur_seed, net, True)
        if witness[1] > worst_count:
            worst_line, worst_count = witness
    raise ZoneVerificationError(worst_line, worst_count, max_attempts)
