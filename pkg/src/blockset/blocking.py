"""Verifiers for affine blocking sets and strong blocking sets.

An affine s-blocking set meets every codimension-s affine subspace of
F_q^k.  A strong t-blocking set in PG(k-1, q) meets every codimension-t
projective subspace in a set that spans it.  The two notions correspond:
a projective set L is strong (s-1)-blocking exactly when the union of
the lines through the origin it labels is an affine s-blocking set.

Verification enumerates the dual subspace universe in a fixed order and
short-circuits at the first violation, so negative witnesses are
reproducible.  For prime q the inner products are batched through numpy;
extension fields fall back to table arithmetic.  A sampled mode checks
only random subspaces and never claims the property holds.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import FieldCtx, Matrix, field_new
from .errors import UniverseTooLarge
from .geometry import ENUM_BUDGET, AffineSubspace, qbin, rref_matrices
from .rng import SplitMix64


def normalize_projective(ctx: FieldCtx, v) -> tuple[int, ...]:
    """Canonical representative of [v]: first nonzero coordinate scaled to 1."""
    for x in v:
        if x:
            if x == 1:
                return tuple(v)
            return ctx.scale_vec(ctx.inv(x), v)
    raise ValueError("zero vector has no projective class")


def projective_points(k: int, q: int) -> list[tuple[int, ...]]:
    """All (q^k - 1)/(q - 1) points of PG(k-1, q), sorted lexicographically."""
    ctx = field_new(q)
    seen = set()
    for v in itertools.product(range(q), repeat=k):
        if any(v):
            seen.add(normalize_projective(ctx, v))
    return sorted(seen)


@dataclass(frozen=True)
class PointSet:
    """Deduplicated set of affine points of F_q^k or points of PG(k-1, q).

    Projective points are stored as normalized representatives; points are
    kept sorted so equal sets compare equal.
    """

    ctx: FieldCtx
    k: int
    kind: str  # "affine" | "projective"
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.kind not in ("affine", "projective"):
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def affine(cls, ctx: FieldCtx, k: int, pts) -> "PointSet":
        dedup = sorted({tuple(p) for p in pts})
        for p in dedup:
            if len(p) != k or any(not 0 <= x < ctx.q for x in p):
                raise ValueError(f"bad point {p}")
        return cls(ctx, k, "affine", tuple(dedup))

    @classmethod
    def projective(cls, ctx: FieldCtx, k: int, pts) -> "PointSet":
        dedup = sorted({normalize_projective(ctx, tuple(p)) for p in pts})
        for p in dedup:
            if len(p) != k:
                raise ValueError(f"bad point {p}")
        return cls(ctx, k, "projective", tuple(dedup))

    @cached_property
    def as_set(self) -> frozenset:
        return frozenset(self.points)

    @property
    def contains_origin(self) -> bool:
        return self.kind == "affine" and (0,) * self.k in self.as_set

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class BlockingVerdict:
    """Outcome of a blocking verification.

    holds is True/False for exhaustive runs; None for a sampled run that
    found no violation (sampling never certifies the property).  When
    holds is False the witness is the first violating subspace in
    enumeration order (or the sampled one), and re-checks as violating.
    """

    holds: bool | None
    witness: AffineSubspace | None
    checked: int


def _dual_enumeration(q: int, k: int, codim: int):
    """All codim-codim dual matrices, plus an int64 array view for prime q."""
    total = q ** codim * qbin(k, codim, q)
    if total > ENUM_BUDGET:
        raise UniverseTooLarge(f"{total} subspaces exceeds budget {ENUM_BUDGET}")
    ctx = field_new(q)
    duals = list(rref_matrices(ctx, codim, k))
    arr = np.array([m.rows for m in duals], dtype=np.int64) if duals else None
    return duals, arr


_DUAL_CACHE: dict[tuple[int, int, int], tuple] = {}


def _duals(q: int, k: int, codim: int):
    key = (q, k, codim)
    if key not in _DUAL_CACHE:
        _DUAL_CACHE[key] = _dual_enumeration(q, k, codim)
    return _DUAL_CACHE[key]


def _covered_codes_prime(duals_arr, pts_arr, p: int, codim: int):
    """For each dual matrix, the base-q codes of A x over the point set."""
    sig = duals_arr @ pts_arr.T % p  # (nduals, codim, npts)
    codes = np.zeros(sig.shape[::2], dtype=np.int64)
    for i in range(codim):
        codes = codes * p + sig[:, i, :]
    return codes


def _first_missing_rhs(codes_row, q: int, codim: int) -> int | None:
    """Smallest rhs code not covered, or None when all q^codim appear."""
    present = np.zeros(q ** codim, dtype=bool)
    present[codes_row] = True
    if present.all():
        return None
    return int(np.argmin(present))


def _decode_rhs(code: int, q: int, codim: int) -> tuple[int, ...]:
    digits = []
    for _ in range(codim):
        digits.append(code % q)
        code //= q
    return tuple(reversed(digits))


def is_affine_blocking(b: PointSet, s: int, threads: int = 1,
                       sample: int | None = None,
                       seed: int = 0) -> BlockingVerdict:
    """Does b meet every codimension-s affine subspace of F_q^k?

    Exhaustive by default; with `sample=N` only N uniformly random
    subspaces are checked and the verdict can only be a violation or
    "no violation found" (holds=None).
    """
    if b.kind != "affine":
        raise ValueError("affine point set required")
    ctx, k, q = b.ctx, b.k, b.ctx.q
    if not 1 <= s <= k:
        raise ValueError(f"need 1 <= s <= k, got s={s}")
    if sample is not None:
        return _sampled_affine(b, s, sample, seed)
    if not b.points:
        duals, _ = _duals(q, k, s)
        return BlockingVerdict(False, AffineSubspace(ctx, duals[0], (0,) * s), 1)

    duals, duals_arr = _duals(q, k, s)
    qs = q ** s
    if ctx.is_prime:
        pts_arr = np.array(b.points, dtype=np.int64)

        def scan(lo, hi):
            codes = _covered_codes_prime(duals_arr[lo:hi], pts_arr, ctx.p, s)
            counts = np.zeros((hi - lo, qs), dtype=bool)
            np.put_along_axis(counts, codes, True, axis=1)
            bad = ~counts.all(axis=1)
            if not bad.any():
                return None
            d = int(np.argmax(bad))
            return lo + d, int(np.argmin(counts[d]))
    else:
        pts = b.points

        def scan(lo, hi):
            for d in range(lo, hi):
                dual = duals[d]
                covered = {dual.mul_vec(x) for x in pts}
                if len(covered) < qs:
                    for i, rhs in enumerate(itertools.product(range(q), repeat=s)):
                        if rhs not in covered:
                            return d, i
            return None

    hit = _parallel_first(scan, len(duals), threads)
    if hit is None:
        return BlockingVerdict(True, None, len(duals) * qs)
    d, code = hit
    witness = AffineSubspace(ctx, duals[d], _decode_rhs(code, q, s))
    return BlockingVerdict(False, witness, d * qs + code + 1)


def _parallel_first(scan, n: int, threads: int):
    """First violation over [0, n) chunks; min-index reduction across threads."""
    if threads <= 1 or n < 2 * threads:
        return scan(0, n)
    bounds = [(i * n // threads, (i + 1) * n // threads) for i in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda ab: scan(*ab), bounds))
    hits = [r for r in results if r is not None]
    return min(hits) if hits else None


def _sampled_affine(b: PointSet, s: int, n_samples: int,
                    seed: int) -> BlockingVerdict:
    ctx, k, q = b.ctx, b.k, b.ctx.q
    rng = SplitMix64(seed)
    pts = b.points
    for i in range(n_samples):
        rows = _random_full_rank(ctx, s, k, rng)
        rhs = tuple(rng.randrange(q) for _ in range(s))
        sub = AffineSubspace.from_equations(ctx, rows, rhs)
        if not any(sub.contains(x) for x in pts):
            return BlockingVerdict(False, sub, i + 1)
    return BlockingVerdict(None, None, n_samples)


def _random_full_rank(ctx: FieldCtx, r: int, k: int, rng: SplitMix64):
    while True:
        rows = [tuple(rng.randrange(ctx.q) for _ in range(k)) for _ in range(r)]
        if Matrix(ctx, tuple(rows)).rank() == r:
            return rows


def rank_of_points(ctx: FieldCtx, pts) -> int:
    """Rank of the matrix whose rows are the given points."""
    if not pts:
        return 0
    return Matrix.from_rows(ctx, pts).rank()


def is_strong_blocking(l: PointSet, t: int, threads: int = 1,
                       sample: int | None = None,
                       seed: int = 0) -> BlockingVerdict:
    """Does l meet every codimension-t projective subspace in a spanning set?

    Subspaces are represented by their through-origin duals; spanning is
    tested as rank(points of l inside W) == dim W.
    """
    if l.kind != "projective":
        raise ValueError("projective point set required")
    ctx, k, q = l.ctx, l.k, l.ctx.q
    if not 1 <= t <= k - 1:
        raise ValueError(f"need 1 <= t <= k-1, got t={t}")
    if sample is not None:
        return _sampled_strong(l, t, sample, seed)
    if qbin(k, t, q) > ENUM_BUDGET:
        raise UniverseTooLarge("too many subspaces")

    duals, duals_arr = _duals(q, k, t)
    need = k - t
    pts = l.points
    if ctx.is_prime and pts:
        pts_arr = np.array(pts, dtype=np.int64)
        inside = (duals_arr @ pts_arr.T % ctx.p == 0).all(axis=1)

        def scan(lo, hi):
            for d in range(lo, hi):
                sel = [pts[j] for j in np.flatnonzero(inside[d])]
                if len(sel) < need or rank_of_points(ctx, sel) < need:
                    return (d,)
            return None
    else:

        def scan(lo, hi):
            for d in range(lo, hi):
                dual = duals[d]
                zero = (0,) * t
                sel = [x for x in pts if dual.mul_vec(x) == zero]
                if len(sel) < need or rank_of_points(ctx, sel) < need:
                    return (d,)
            return None

    hit = _parallel_first(scan, len(duals), threads)
    if hit is None:
        return BlockingVerdict(True, None, len(duals))
    d = hit[0]
    return BlockingVerdict(False, AffineSubspace(ctx, duals[d], (0,) * t), d + 1)


def _sampled_strong(l: PointSet, t: int, n_samples: int,
                    seed: int) -> BlockingVerdict:
    ctx, k = l.ctx, l.k
    rng = SplitMix64(seed)
    need = k - t
    for i in range(n_samples):
        rows = _random_full_rank(ctx, t, k, rng)
        sub = AffineSubspace.from_equations(ctx, rows, (0,) * t)
        sel = [x for x in l.points if sub.contains(x)]
        if len(sel) < need or rank_of_points(ctx, sel) < need:
            return BlockingVerdict(False, sub, i + 1)
    return BlockingVerdict(None, None, n_samples)


def lift_to_affine(l: PointSet) -> PointSet:
    """Union of the through-origin lines labeled by l, as affine points.

    Always contains the origin; the size is (q - 1)|l| + 1 because two
    distinct lines share only the origin.
    """
    if l.kind != "projective":
        raise ValueError("projective point set required")
    if not l.points:
        raise ValueError("empty projective set")
    ctx = l.ctx
    pts = [(0,) * l.k]
    for v in l.points:
        for c in range(1, ctx.q):
            pts.append(ctx.scale_vec(c, v))
    return PointSet.affine(ctx, l.k, pts)


def projective_support(s: PointSet) -> PointSet:
    """Projective classes of the nonzero points of an affine set."""
    if s.kind != "affine":
        raise ValueError("affine point set required")
    nz = [p for p in s.points if any(p)]
    return PointSet.projective(s.ctx, s.k, nz)


def is_symmetric(s: PointSet) -> tuple[bool, tuple[tuple[int, ...], ...] | None]:
    """Is s of the form {0} | B | -B?  If so, also return a canonical B.

    B holds one representative per {v, -v} pair, the lexicographically
    smaller one.  Requires the origin to be present and the set closed
    under negation.
    """
    if s.kind != "affine":
        raise ValueError("affine point set required")
    ctx = s.ctx
    if not s.contains_origin:
        return False, None
    members = s.as_set
    reps = []
    for v in s.points:
        if not any(v):
            continue
        w = ctx.neg_vec(v)
        if w not in members:
            return False, None
        if v <= w:
            reps.append(v)
    return True, tuple(reps)


# --- point-set file format: header "q k n kind", then n coordinate rows ---

def write_point_set(ps: PointSet, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{ps.ctx.q} {ps.k} {len(ps.points)} {ps.kind}\n")
        for p in ps.points:
            fh.write(" ".join(map(str, p)) + "\n")


def read_point_set(path) -> PointSet:
    with open(path) as fh:
        header = fh.readline().split()
        q, k, n, kind = int(header[0]), int(header[1]), int(header[2]), header[3]
        pts = [tuple(map(int, fh.readline().split())) for _ in range(n)]
    ctx = field_new(q)
    if kind == "affine":
        return PointSet.affine(ctx, k, pts)
    if kind == "projective":
        return PointSet.projective(ctx, k, pts)
    raise ValueError(f"unknown kind {kind!r}")
