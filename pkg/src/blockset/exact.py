"""Exact minimum symmetric 2-blocking search over F_3^k as set cover.

A symmetric 2-blocking set {0} | B | -B in F_3^k is determined by the
set of through-origin lines it contains, so minimizing its size reduces
to a 0/1 covering problem: choose the fewest projective points (lines)
such that every codimension-2 affine subspace avoiding the origin
contains a point of some chosen line.  (Subspaces through the origin
are blocked by the origin itself.)

The instance carries two families of valid hyperplane inequalities over
the line variables, derived from the fact that a 2-blocking set meets
every affine hyperplane H in a 1-blocking set of H (>= 2k-1 points):

* for a linear hyperplane H0, the chosen lines inside H0 contribute
  1 + 2*(lines inside) points to |S  intersect  H0|, so
  sum over lines inside H0 >= k - 1;
* for an affine hyperplane H avoiding the origin, each chosen line
  meets H in at most one point and meets H iff it is not inside the
  parallel linear hyperplane, giving (conservatively)
  sum over lines meeting H >= k - 1.

Both cut families depend only on the parallel class, so there is one
cut of each kind per projective functional.

The solver is a deterministic branch-and-bound over line variables:
it repeatedly picks an uncovered subspace (preferring few remaining
candidate lines), branches on which candidate line covers it, and
makes the branches disjoint by excluding the earlier candidates in
later branches.  Lower bounds: coverage counting, a greedy packing of
subspaces with pairwise disjoint candidate sets, the cut deficits, and
the global bound 4(k-1) on any strong blocking set.  The tree is
exhausted, so optimality certificates are search-complete; the reported
cover is re-canonicalized to the lexicographically smallest optimal
index set.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from importlib import resources

from .algebra import field_new
from .blocking import (PointSet, is_affine_blocking, lift_to_affine,
                       normalize_projective, projective_points)
from .errors import InsufficientData, KTooLarge, TimeLimitExceeded
from .geometry import enumerate_affine_subspaces, qbin

Q = 3


@dataclass(frozen=True)
class CoverInstance:
    """Set-cover form of the minimum symmetric 2-blocking problem in F_3^k.

    universe: all codim-2 affine subspaces avoiding the origin, in
    enumeration order; lines: all projective points, sorted; blocks[i]
    is the bitmask over universe indices that line i covers; cuts are
    (line-index bitmask, rhs) inequalities every feasible cover satisfies.
    """

    k: int
    lines: tuple[tuple[int, ...], ...]
    universe: tuple
    blocks: tuple[int, ...]
    elem_lines: tuple[tuple[int, ...], ...]
    cuts: tuple[tuple[int, int], ...]


def build_instance(k: int) -> CoverInstance:
    """Build the covering instance for F_3^k, 2 <= k <= 6."""
    if not 2 <= k <= 6:
        raise KTooLarge(f"supported range is 2 <= k <= 6, got k={k}")
    ctx = field_new(Q)
    lines = projective_points(k, Q)
    index = {p: i for i, p in enumerate(lines)}
    universe = list(enumerate_affine_subspaces(k, 2, Q, "avoiding_origin"))
    blocks = [0] * len(lines)
    elem_lines = []
    for e, sub in enumerate(universe):
        cand = sorted(index[normalize_projective(ctx, x)] for x in sub.points())
        elem_lines.append(tuple(cand))
        for i in cand:
            blocks[i] |= 1 << e
    cuts = []
    for a in lines:  # one functional per projective class
        inside = 0
        outside = 0
        for i, v in enumerate(lines):
            if ctx.dot(a, v) == 0:
                inside |= 1 << i
            else:
                outside |= 1 << i
        cuts.append((inside, k - 1))
        cuts.append((outside, k - 1))
    return CoverInstance(k, tuple(lines), tuple(universe), tuple(blocks),
                         tuple(elem_lines), tuple(cuts))


@dataclass(frozen=True)
class SearchCertificate:
    """Exact optimum with its witness cover and a search audit trail.

    trace records (event, size, node_count) triples; the final
    ("exhausted", optimum, nodes) entry certifies that the tree was
    searched to completion, i.e. no smaller cover exists.  canonical
    means `chosen` is the lexicographically smallest optimal index set.
    """

    k: int
    optimum: int
    chosen: tuple[tuple[int, ...], ...]
    chosen_indices: tuple[int, ...]
    node_count: int
    elapsed: float
    trace: tuple[tuple[str, int, int], ...]
    canonical: bool
    verified: bool


def _greedy_cover(nsets: int, masks, full: int) -> list[int]:
    covered = 0
    chosen: list[int] = []
    while covered != full:
        best_i, best_gain = -1, -1
        for i in range(nsets):
            gain = (masks[i] & ~covered).bit_count()
            if gain > best_gain:
                best_i, best_gain = i, gain
        if best_gain == 0:
            raise AssertionError("universe not coverable")  # unreachable here
        chosen.append(best_i)
        covered |= masks[best_i]
    return chosen


class _Solver:
    """Branch-and-bound state for one reduced cover instance."""

    def __init__(self, inst: CoverInstance, time_limit: float | None):
        self.inst = inst
        self.k = inst.k
        self.nlines = len(inst.lines)
        self.time_limit = time_limit
        self.t0 = time.monotonic()

        # Reduce the universe: subspaces with identical candidate sets
        # (each W and its negation -W) impose the same constraint.
        seen: dict[tuple[int, ...], int] = {}
        red_elems: list[tuple[int, ...]] = []
        for cand in inst.elem_lines:
            if cand not in seen:
                seen[cand] = len(red_elems)
                red_elems.append(cand)
        self.red_elems = red_elems
        self.n_red = len(red_elems)
        self.full = (1 << self.n_red) - 1
        self.cand_masks = [0] * self.n_red  # over lines
        self.line_cover = [0] * self.nlines  # over reduced elements
        for e, cand in enumerate(red_elems):
            for i in cand:
                self.cand_masks[e] |= 1 << i
                self.line_cover[i] |= 1 << e
        self.max_static_cov = max(m.bit_count() for m in self.line_cover)
        self.global_lb = 4 * (inst.k - 1)
        self.nodes = 0
        self.trace: list[tuple[str, int, int]] = []
        self.best_size = self.nlines + 1
        self.best: list[int] = []

    def _check_time(self):
        if self.time_limit is not None and \
                time.monotonic() - self.t0 > self.time_limit:
            raise TimeLimitExceeded(
                f"time limit {self.time_limit}s exceeded",
                lower=None, upper=self.best_size if self.best else None,
                incumbent=list(self.best))

    def _lower_bound_add(self, uncovered: int, avail: int, chosen_mask: int,
                         n_chosen: int) -> int:
        lb = max((uncovered.bit_count() + self.max_static_cov - 1)
                 // self.max_static_cov,
                 self.global_lb - n_chosen)
        for mask, rhs in self.inst.cuts:
            need = rhs - (chosen_mask & mask).bit_count()
            if need > lb:
                if (avail & mask).bit_count() < need:
                    return self.nlines + 1  # infeasible branch
                lb = need
        # greedy packing of elements with pairwise disjoint candidate sets
        packed = 0
        used = 0
        rem = uncovered
        while rem:
            e = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            cand = self.cand_masks[e] & avail
            if cand and not cand & used:
                packed += 1
                used |= cand
        return max(lb, packed)

    def _select(self, uncovered: int, avail: int) -> int:
        """Uncovered element with fewest remaining candidates (first 48 scanned)."""
        best_e, best_c = -1, self.nlines + 1
        rem = uncovered
        scanned = 0
        while rem and scanned < 48:
            e = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            c = (self.cand_masks[e] & avail).bit_count()
            if c < best_c:
                best_e, best_c = e, c
                if c <= 1:
                    break
            scanned += 1
        return best_e

    def optimize(self):
        greedy = _greedy_cover(self.nlines, self.line_cover, self.full)
        self.best_size = len(greedy)
        self.best = greedy
        self.trace.append(("incumbent", self.best_size, self.nodes))
        self._search((1 << self.nlines) - 1, 0, 0, [])
        self.trace.append(("exhausted", self.best_size, self.nodes))

    def _search(self, avail: int, covered: int, chosen_mask: int,
                chosen: list[int]):
        self.nodes += 1
        if not self.nodes % 4096:
            self._check_time()
        uncovered = self.full & ~covered
        if not uncovered:
            if len(chosen) < self.best_size:
                self.best_size = len(chosen)
                self.best = list(chosen)
                self.trace.append(("incumbent", self.best_size, self.nodes))
            return
        n = len(chosen)
        if n + 1 >= self.best_size:
            return
        if n + self._lower_bound_add(uncovered, avail, chosen_mask, n) \
                >= self.best_size:
            return
        e = self._select(uncovered, avail)
        cand = self.cand_masks[e] & avail
        if not cand:
            return
        excluded = 0
        while cand:
            bit = cand & -cand
            cand ^= bit
            i = bit.bit_length() - 1
            excluded |= bit
            chosen.append(i)
            self._search(avail & ~excluded, covered | self.line_cover[i],
                         chosen_mask | bit, chosen)
            chosen.pop()

    def lex_first_optimal(self) -> list[int] | None:
        """Lexicographically smallest cover of the optimal size, or None on timeout."""
        target = self.best_size

        def rec(start: int, chosen_mask: int, covered: int,
                chosen: list[int]) -> list[int] | None:
            self.nodes += 1
            if not self.nodes % 4096:
                self._check_time()
            uncovered = self.full & ~covered
            if not uncovered:
                return list(chosen)
            n = len(chosen)
            if n >= target:
                return None
            avail = ((1 << self.nlines) - (1 << start)) if start < self.nlines else 0
            if n + self._lower_bound_add(uncovered, avail, chosen_mask, n) > target:
                return None
            for i in range(start, self.nlines):
                bit = 1 << i
                chosen.append(i)
                found = rec(i + 1, chosen_mask | bit,
                            covered | self.line_cover[i], chosen)
                if found is not None:
                    return found
                chosen.pop()
            return None

        try:
            return rec(0, 0, 0, [])
        except TimeLimitExceeded:
            return None


def solve_min_cover(inst: CoverInstance, time_limit: float | None = None,
                    mode: str = "bnb") -> SearchCertificate:
    """Exact minimum cover with optimality certified by tree exhaustion.

    mode "bnb" is the default; "exhaustive" enumerates index subsets by
    size and is only practical for k <= 3.  Raises TimeLimitExceeded
    (carrying the best bracket found) when the limit runs out.
    """
    t0 = time.monotonic()
    if mode == "exhaustive":
        chosen_idx, nodes, trace = _solve_exhaustive(inst, time_limit, t0)
        canonical = True
    elif mode == "bnb":
        solver = _Solver(inst, time_limit)
        try:
            solver.optimize()
        except TimeLimitExceeded as exc:
            raise TimeLimitExceeded(
                str(exc), lower=None, upper=solver.best_size,
                incumbent=solver.best) from None
        lex = solver.lex_first_optimal()
        canonical = lex is not None
        chosen_idx = lex if lex is not None else solver.best
        nodes, trace = solver.nodes, solver.trace
    else:
        raise ValueError(f"unknown mode {mode!r}")
    chosen = tuple(inst.lines[i] for i in sorted(chosen_idx))
    cert = SearchCertificate(
        k=inst.k, optimum=len(chosen_idx), chosen=chosen,
        chosen_indices=tuple(sorted(chosen_idx)), node_count=nodes,
        elapsed=time.monotonic() - t0, trace=tuple(trace),
        canonical=canonical, verified=_verify_cover(inst.k, chosen))
    assert cert.verified
    return cert


def _verify_cover(k: int, chosen) -> bool:
    ctx = field_new(Q)
    ls = PointSet.projective(ctx, k, chosen)
    return bool(is_affine_blocking(lift_to_affine(ls), 2).holds)


def _solve_exhaustive(inst: CoverInstance, time_limit, t0):
    import itertools
    nlines = len(inst.lines)
    seen: dict[tuple[int, ...], None] = {}
    red: list[int] = []
    for cand in inst.elem_lines:
        if cand not in seen:
            seen[cand] = None
    masks = [0] * nlines
    for e, cand in enumerate(seen):
        for i in cand:
            masks[i] |= 1 << e
    full = (1 << len(seen)) - 1
    nodes = 0
    trace = []
    for size in range(1, nlines + 1):
        for combo in itertools.combinations(range(nlines), size):
            nodes += 1
            if not nodes % 16384 and time_limit is not None and \
                    time.monotonic() - t0 > time_limit:
                raise TimeLimitExceeded("time limit exceeded in exhaustive mode",
                                        lower=size, upper=None, incumbent=None)
            acc = 0
            for i in combo:
                acc |= masks[i]
            if acc == full:
                trace.append(("exhausted", size, nodes))
                return list(combo), nodes, trace
        trace.append(("refuted", size, nodes))
    raise AssertionError("all lines together always cover")  # unreachable


def min_symmetric_blocking(k: int, time_limit: float | None = None,
                           mode: str = "bnb") -> SearchCertificate:
    """Convenience wrapper: build the F_3^k instance and solve it."""
    return solve_min_cover(build_instance(k), time_limit, mode)


# --- best known values and the linear-trifference size table ---

def known_bprime() -> dict[int, tuple[int, int]]:
    """Bundled best known values (lo, hi) for the minimum strong blocking
    set size in PG(k-1, 3); lo == hi where the exact value is known."""
    text = resources.files("blockset").joinpath("data/bprime_known.json") \
        .read_text()
    return {int(k): (v[0], v[1]) for k, v in json.loads(text).items()}


@dataclass(frozen=True)
class TlRow:
    """Largest linear trifferent code size at one length, as log_3 bounds."""

    n: int
    log3_lo: int
    log3_hi: int

    @property
    def exact(self) -> bool:
        return self.log3_lo == self.log3_hi

    @property
    def value(self) -> int | None:
        return Q ** self.log3_lo if self.exact else None


def tl_table(n_max: int,
             bprime: dict[int, tuple[int, int]] | None = None) -> list[TlRow]:
    """Table of the largest linear trifferent code size for n = 1..n_max.

    Uses: such a code of size 3^k exists at length n iff the minimum
    strong blocking set size for dimension k is at most n.  `bprime`
    maps k to (lo, hi) bounds on that minimum; k = 1 is implicitly
    (1, 1).  Rows where the data cannot pin the step emit a lo/hi range;
    raises InsufficientData when the data cannot close row n_max.
    """
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    data = {1: (1, 1)}
    data.update(bprime if bprime is not None else known_bprime())
    ks = sorted(data)
    if ks != list(range(1, len(ks) + 1)):
        raise InsufficientData(f"contiguous k values required, got {ks}")
    top_lo = data[ks[-1]][0]
    rows = []
    for n in range(1, n_max + 1):
        k_lo = max((k for k in ks if data[k][1] <= n), default=0)
        k_hi = max((k for k in ks if data[k][0] <= n), default=0)
        if k_lo == 0:
            raise InsufficientData(f"no dimension attainable at n={n}")
        if k_hi == ks[-1] and n >= top_lo:
            raise InsufficientData(
                f"need data for k={ks[-1] + 1} to close the table at n={n}")
        rows.append(TlRow(n, k_lo, k_hi))
    return rows
