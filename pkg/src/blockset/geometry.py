"""Counting and enumeration in F_q^k and PG(k-1, q).

Provides exact Gaussian-binomial counting, deterministic enumeration of
affine subspaces (dual form) and of vector subspaces through the origin
(parametric form), the closed-form count of s-dimensional through-origin
subspaces disjoint from a fixed codimension-s affine subspace avoiding
the origin, an independent brute-force oracle for that count, and exact
rational checks of the quantitative estimates the rest of the package
relies on.

All counts are big integers; inequality checks use `fractions.Fraction`
so there is no floating-point rounding anywhere in this module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import FieldCtx, Matrix, field_new, solve_affine
from .errors import UniverseTooLarge

ENUM_BUDGET = 10 ** 7


def qbin(k: int, s: int, q: int) -> int:
    """Gaussian binomial coefficient: number of s-dim subspaces of F_q^k.

    Returns 0 outside 0 <= s <= k; the empty product (s = 0) is 1.
    """
    if s < 0 or k < 0 or s > k:
        return 0
    s = min(s, k - s)
    num = 1
    den = 1
    for i in range(s):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_affine(k: int, s: int, q: int) -> int:
    """Number of s-dimensional affine subspaces of F_q^k: q^(k-s) * qbin(k,s,q)."""
    if not 0 <= s <= k:
        raise ValueError(f"need 0 <= s <= k, got s={s}, k={k}")
    return q ** (k - s) * qbin(k, s, q)


def rref_matrices(ctx: FieldCtx, r: int, k: int):
    """Yield every full-rank r x k matrix in reduced row-echelon form.

    There are qbin(k, r, q) of them, one per r-dimensional row space.
    Order: pivot-column sets lexicographically, then the free entries in
    row-major lexicographic order (itertools.product).  This single
    generator backs both dual-form (codimension-r) and parametric-form
    (dimension-r) subspace enumeration.
    """
    q = ctx.q
    if r == 0:
        yield Matrix(ctx, ())
        return
    for pivots in itertools.combinations(range(k), r):
        pivot_set = set(pivots)
        free_pos = [(i, c) for i in range(r)
                    for c in range(pivots[i] + 1, k) if c not in pivot_set]
        base = [[0] * k for _ in range(r)]
        for i, p in enumerate(pivots):
            base[i][p] = 1
        if not free_pos:
            yield Matrix(ctx, tuple(tuple(row) for row in base))
            continue
        for vals in itertools.product(range(q), repeat=len(free_pos)):
            rows = [row[:] for row in base]
            for (i, c), v in zip(free_pos, vals):
                rows[i][c] = v
            yield Matrix(ctx, tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class AffineSubspace:
    """Coset {x : A x = b} of a vector subspace of F_q^k, in dual form.

    `dual` is kept in reduced row-echelon form with full row rank, which
    makes the (dual, rhs) pair a canonical key for the subspace.
    """

    ctx: FieldCtx
    dual: Matrix
    rhs: tuple[int, ...]

    @classmethod
    def from_equations(cls, ctx: FieldCtx, rows, rhs) -> "AffineSubspace":
        """Build from an arbitrary consistent system, normalizing to canonical form."""
        a = Matrix.from_rows(ctx, rows)
        aug = Matrix(ctx, tuple(r + (b,) for r, b in zip(a.rows, rhs)))
        red, pivots = aug.rref()
        if a.ncols in pivots:
            raise ValueError("inconsistent system does not define a subspace")
        nr = len(pivots)
        return cls(ctx, Matrix(ctx, tuple(r[:-1] for r in red.rows[:nr])),
                   tuple(r[-1] for r in red.rows[:nr]))

    @property
    def k(self) -> int:
        return self.dual.ncols

    @property
    def codim(self) -> int:
        return self.dual.nrows

    @property
    def dim(self) -> int:
        return self.k - self.codim

    def contains(self, x) -> bool:
        return self.dual.mul_vec(x) == self.rhs

    def through_origin(self) -> bool:
        return all(b == 0 for b in self.rhs)

    def points(self):
        """Iterate all q^dim points, in deterministic order."""
        sol = solve_affine(self.dual, self.rhs)
        assert sol is not None  # canonical form is always consistent
        return iter(sol)

    def key(self) -> tuple:
        return (self.dual.rows, self.rhs)


def enumerate_affine_subspaces(k: int, codim: int, q: int,
                               which: str = "all"):
    """Yield each codimension-`codim` affine subspace of F_q^k exactly once.

    `which` is one of "all", "through_origin", "avoiding_origin".  Order is
    deterministic: dual matrices per :func:`rref_matrices`, then right-hand
    sides in lexicographic order.  Counts match q^codim * qbin(k, codim, q)
    for "all" and (q^codim - 1) * qbin(k, codim, q) for "avoiding_origin".
    """
    if not 0 <= codim <= k:
        raise ValueError(f"need 0 <= codim <= k, got codim={codim}, k={k}")
    if which not in ("all", "through_origin", "avoiding_origin"):
        raise ValueError(f"unknown filter {which!r}")
    total = q ** codim * qbin(k, codim, q)
    if total > ENUM_BUDGET:
        raise UniverseTooLarge(f"{total} subspaces exceeds budget {ENUM_BUDGET}")
    ctx = field_new(q)
    if which == "through_origin":
        rhs_iter = [(0,) * codim]
    elif which == "avoiding_origin":
        rhs_iter = [b for b in itertools.product(range(q), repeat=codim)
                    if any(b)]
    else:
        rhs_iter = list(itertools.product(range(q), repeat=codim))
    for dual in rref_matrices(ctx, codim, k):
        for b in rhs_iter:
            yield AffineSubspace(ctx, dual, b)


def subspaces_through_origin(k: int, dim: int, q: int):
    """Yield each dim-dimensional vector subspace of F_q^k as a basis matrix.

    Bases are the canonical reduced-echelon ones from :func:`rref_matrices`.
    """
    if qbin(k, dim, q) > ENUM_BUDGET:
        raise UniverseTooLarge("too many subspaces")
    ctx = field_new(q)
    return rref_matrices(ctx, dim, k)


def n_q_formula(k: int, s: int, q: int) -> int:
    """Closed form for the number of s-dim through-origin subspaces disjoint
    from a fixed codimension-s affine subspace that avoids the origin."""
    if not 1 <= s <= k:
        raise ValueError(f"need 1 <= s <= k, got s={s}, k={k}")
    return sum(q ** ((s - i) * (k - i - s + 1))
               * qbin(s - 1, i - 1, q) * qbin(k - s, i, q)
               for i in range(1, s + 1))


def default_avoiding_subspace(k: int, s: int, q: int) -> AffineSubspace:
    """Canonical codim-s affine subspace avoiding the origin: x_1=1, x_2..x_s=0."""
    ctx = field_new(q)
    rows = tuple(tuple(1 if j == i else 0 for j in range(k)) for i in range(s))
    rhs = (1,) + (0,) * (s - 1)
    return AffineSubspace(ctx, Matrix(ctx, rows), rhs)


def n_q_oracle(k: int, s: int, q: int,
               subspace: AffineSubspace | None = None) -> int:
    """Brute-force count of s-dim through-origin subspaces disjoint from a
    codim-s affine subspace avoiding the origin.

    Enumerates all qbin(k, s, q) candidate subspaces and tests disjointness
    by solving a small linear system; independent of :func:`n_q_formula`.
    The result must not depend on the choice of `subspace`.
    """
    if not 1 <= s <= k:
        raise ValueError(f"need 1 <= s <= k, got s={s}, k={k}")
    h = subspace if subspace is not None else default_avoiding_subspace(k, s, q)
    if h.codim != s or h.k != k or h.through_origin():
        raise ValueError("subspace must have codimension s and avoid the origin")
    count = 0
    for basis in subspaces_through_origin(k, s, q):
        # x = c . basis lies in h iff (A basis^T) c = b is solvable
        system = Matrix(h.ctx, tuple(zip(*[h.dual.mul_vec(row)
                                           for row in basis.rows])))
        if solve_affine(system, h.rhs) is None:
            count += 1
    return count


def exp_bounds(t: Fraction, terms: int = 24) -> tuple[Fraction, Fraction]:
    """Certified rational enclosure of e^t for 0 <= t < 1.

    Lower bound: truncated power series (all omitted terms are positive).
    Upper bound: adds the geometric tail bound t^(N+1)/((N+1)! (1-t)).
    """
    if not 0 <= t < 1:
        raise ValueError("need 0 <= t < 1")
    lo = Fraction(0)
    term = Fraction(1)
    for n in range(terms + 1):
        lo += term
        term = term * t / (n + 1)
    hi = lo + term / (1 - t)
    return lo, hi


@dataclass(frozen=True)
class EstimateCheck:
    """One exact inequality/identity evaluation: holds, with both sides."""

    name: str
    holds: bool
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class CountReport:
    q: int
    k: int
    s: int
    qbin: int
    affine_count: int
    n_q: int
    checks: tuple[EstimateCheck, ...]


def check_estimates(k: int, s: int, q: int) -> CountReport:
    """Evaluate the package's counting estimates exactly for one (k, s, q).

    Checks, all in exact rational arithmetic:
      * qbin_lower:      1 <= q^(-s(k-s)) qbin(k,s,q)
      * qbin_upper:      q^(-s(k-s)) qbin(k,s,q) <= q/(q-1) * e^(q/((q^2-1)(q-1))),
                         with e^t replaced by a certified rational lower bound,
                         so a reported "holds" is sound;
      * qbin_lower_cubic (only for s >= 3, k >= s+3):
                         q^3/((q^2-1)(q-1)) <= q^(-s(k-s)) qbin(k,s,q)
      * disjoint_upper:  n_q(k,s) <= (q^3-q+1)/q^4 * qbin(k,s,q)
      * vandermonde:     qbin(k-1,s,q) = sum_i qbin(s-1,s-i) qbin(k-s,i) q^((k-s-i)(s-i))
      * hyperplane_disjoint_s1: n_q(k,1,q) = qbin(k-1,1,q)
    """
    if not 1 <= s <= k:
        raise ValueError(f"need 1 <= s <= k, got s={s}, k={k}")
    gb = qbin(k, s, q)
    nq = n_q_formula(k, s, q)
    normalized = Fraction(gb, q ** (s * (k - s)))
    checks = []

    checks.append(EstimateCheck("qbin_lower", 1 <= normalized,
                                Fraction(1), normalized))

    t = Fraction(q, (q * q - 1) * (q - 1))
    exp_lo, _ = exp_bounds(t)
    upper = Fraction(q, q - 1) * exp_lo
    checks.append(EstimateCheck("qbin_upper", normalized <= upper,
                                normalized, upper))

    if s >= 3 and k >= s + 3:
        cubic = Fraction(q ** 3, (q * q - 1) * (q - 1))
        checks.append(EstimateCheck("qbin_lower_cubic", cubic <= normalized,
                                    cubic, normalized))

    bound = Fraction(q ** 3 - q + 1, q ** 4) * gb
    checks.append(EstimateCheck("disjoint_upper", Fraction(nq) <= bound,
                                Fraction(nq), bound))

    vander_rhs = sum(qbin(s - 1, s - i, q) * qbin(k - s, i, q)
                     * q ** ((k - s - i) * (s - i)) for i in range(1, s + 1))
    checks.append(EstimateCheck("vandermonde", qbin(k - 1, s, q) == vander_rhs,
                                Fraction(qbin(k - 1, s, q)),
                                Fraction(vander_rhs)))

    checks.append(EstimateCheck("hyperplane_disjoint_s1",
                                n_q_formula(k, 1, q) == qbin(k - 1, 1, q),
                                Fraction(n_q_formula(k, 1, q)),
                                Fraction(qbin(k - 1, 1, q))))

    return CountReport(q=q, k=k, s=s, qbin=gb,
                       affine_count=count_affine(k, s, q), n_q=nq,
                       checks=tuple(checks))


def ln_big(n: int) -> float:
    """Natural log of a positive big integer, via mantissa/exponent split.

    Relative error is a few ulps (< 1e-12), independent of how far n
    exceeds the float range.
    """
    if n <= 0:
        raise ValueError("need n > 0")
    shift = max(n.bit_length() - 53, 0)
    return math.log(n >> shift) + shift * math.log(2)
