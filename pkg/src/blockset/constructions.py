"""Generators of blocking sets, plus the graph machinery behind them.

Three construction families:

* random unions of through-origin subspaces (or of plain random points),
  retried until the affine blocking verifier accepts the result;
* the tetrahedron: all lines through pairs of the k standard basis
  points, a strong blocking set of size C(k,2)(q-1) + k;
* the generic graph construction: given projective points P_1..P_n and
  a graph G on them, the union of the lines <P_i, P_j> over edges is a
  strong blocking set whenever every vertex deletion leaves a component
  spanning the space together with the deleted set; a sufficient
  condition is iota(G) >= n - d + 1, with d the code distance of the
  point set and iota the vertex integrity min_S (|S| + largest
  component of G - S).

Randomness comes exclusively from the package's SplitMix64 streams, so
every construction is reproducible from (parameters, seed).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import Matrix, field_new, row_space
from .blocking import (PointSet, is_affine_blocking, normalize_projective,
                       rank_of_points)
from .errors import (GraphTooLarge, RetriesExhausted, UnsupportedStrategy)
from .geometry import AffineSubspace, qbin
from .rng import SplitMix64, stream

DEFAULT_RETRY_CAP = 50


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop at {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i},{j}) out of range")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        dedup = sorted({(min(i, j), max(i, j)) for i, j in edges})
        return cls(n, tuple(dedup))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple(itertools.combinations(range(n), 2)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, ())

    def adjacency_masks(self) -> list[int]:
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj


def _largest_component(adj: list[int], alive: int) -> int:
    """Size of the largest component of the subgraph induced on `alive`."""
    best = 0
    remaining = alive
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = f & -f
                nxt |= adj[v.bit_length() - 1]
                f ^= v
            nxt &= alive & ~comp
            comp |= nxt
            frontier = nxt
        best = max(best, comp.bit_count())
        remaining &= ~comp
    return best


def vertex_integrity(g: Graph, mode: str = "auto") -> tuple[int, tuple[int, ...]]:
    """Exact vertex integrity min_S (|S| + largest component of G - S).

    Returns (value, S) with S the lexicographically smallest optimal
    deletion set.  mode: "exhaustive" (n <= 20), "bnb" (n <= 40), or
    "auto" which picks exhaustive for small n.
    """
    n = g.n
    if mode == "auto":
        mode = "exhaustive" if n <= 16 else "bnb"
    if mode == "exhaustive" and n > 20:
        raise GraphTooLarge(f"exhaustive mode supports n <= 20, got {n}")
    if mode == "bnb" and n > 40:
        raise GraphTooLarge(f"branch-and-bound mode supports n <= 40, got {n}")
    if mode not in ("exhaustive", "bnb"):
        raise ValueError(f"unknown mode {mode!r}")
    adj = g.adjacency_masks()
    full = (1 << n) - 1

    if mode == "exhaustive":
        best = n  # S = V gives |S| + 0 = n
        for s_mask in range(full):
            value = s_mask.bit_count() + _largest_component(adj, full & ~s_mask)
            if value < best:
                best = value
    else:
        best = _integrity_bnb(adj, n, full)

    witness = _lex_first_optimal(adj, n, full, best)
    return best, witness


def _integrity_bnb(adj: list[int], n: int, full: int) -> int:
    best = n

    def rec(idx: int, in_mask: int, out_mask: int):
        nonlocal best
        lower = in_mask.bit_count() + _largest_component(adj, out_mask)
        if lower >= best:
            return
        if idx == n:
            best = lower
            return
        bit = 1 << idx
        rec(idx + 1, in_mask, out_mask | bit)
        rec(idx + 1, in_mask | bit, out_mask)

    rec(0, 0, 0)
    return best


def _lex_first_optimal(adj, n, full, best) -> tuple[int, ...]:
    """First S in sorted-tuple lexicographic preorder with |S| + kappa = best."""

    def rec(s_mask: int, size: int, start: int):
        if size + _largest_component(adj, full & ~s_mask) == best:
            return s_mask
        if size + 1 >= best:
            return None
        for j in range(start, n):
            found = rec(s_mask | (1 << j), size + 1, j + 1)
            if found is not None:
                return found
        return None

    result = rec(0, 0, 0)
    assert result is not None  # the optimum is attained somewhere
    return tuple(i for i in range(n) if result >> i & 1)


def line_through(ctx, u, v) -> list[tuple[int, ...]]:
    """The q+1 projective points on the line through distinct points [u], [v]."""
    pts = {normalize_projective(ctx, u), normalize_projective(ctx, v)}
    for lam in range(1, ctx.q):
        pts.add(normalize_projective(ctx, ctx.add_vec(ctx.scale_vec(lam, u), v)))
    return sorted(pts)


def tetrahedron(k: int, q: int) -> PointSet:
    """Union of all lines through pairs of the k standard basis points.

    Size is C(k,2)(q-1) + k and the set is strong blocking.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    ctx = field_new(q)
    basis = [tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]
    pts = []
    for u, v in itertools.combinations(basis, 2):
        pts.extend(line_through(ctx, u, v))
    return PointSet.projective(ctx, k, pts)


@dataclass(frozen=True)
class GraphLinesResult:
    """Output of the graph construction plus its sufficient-condition report."""

    points: PointSet
    distance: int
    integrity: int
    condition: bool


def graph_lines_construction(ps: PointSet, g: Graph) -> GraphLinesResult:
    """Union of the lines <P_i, P_j> over the edges of g.

    Vertex i of g labels ps.points[i] (the stored, sorted order).  Also
    reports d = n - max hyperplane intersection and iota(g), and whether
    the sufficient condition iota >= n - d + 1 holds; when it does, the
    output is guaranteed strong blocking.
    """
    from .codes import max_hyperplane_intersection
    from .errors import NonSpanningPoints
    if ps.kind != "projective":
        raise ValueError("projective point set required")
    if g.n != len(ps.points):
        raise ValueError(f"graph has {g.n} vertices, point set has {len(ps.points)}")
    if rank_of_points(ps.ctx, ps.points) != ps.k:
        raise NonSpanningPoints("points do not span the space")
    n = len(ps.points)
    union = []
    for i, j in g.edges:
        union.extend(line_through(ps.ctx, ps.points[i], ps.points[j]))
    out = PointSet.projective(ps.ctx, ps.k, union)
    d = n - max_hyperplane_intersection(ps)
    iota, _ = vertex_integrity(g)
    return GraphLinesResult(out, d, iota, iota >= n - d + 1)


def check_main_const_hypothesis(ps: PointSet, g: Graph) -> bool:
    """Exhaustively test: for every S, some component C of G - S satisfies
    span(S united with C) = the whole space.

    When S deletes every vertex the component is taken to be empty, so
    the requirement degenerates to S itself spanning.
    """
    if g.n != len(ps.points):
        raise ValueError("graph order must match the point count")
    if g.n > 20:
        raise GraphTooLarge(f"hypothesis check supports n <= 20, got {g.n}")
    ctx, k = ps.ctx, ps.k
    pts = ps.points
    adj = g.adjacency_masks()
    full = (1 << g.n) - 1

    def spans(mask: int) -> bool:
        sel = [pts[i] for i in range(g.n) if mask >> i & 1]
        return len(sel) >= k and rank_of_points(ctx, sel) == k

    for s_mask in range(full + 1):
        alive = full & ~s_mask
        if alive == 0:
            if not spans(s_mask):
                return False
            continue
        found = False
        remaining = alive
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    v = f & -f
                    nxt |= adj[v.bit_length() - 1]
                    f ^= v
                nxt &= alive & ~comp
                comp |= nxt
                frontier = nxt
            if spans(s_mask | comp):
                found = True
                break
            remaining &= ~comp
        if not found:
            return False
    return True


def uniform_subspace(q: int, k: int, dim: int, rng: SplitMix64) -> AffineSubspace:
    """Uniformly random dim-dimensional vector subspace of F_q^k.

    Rejection-samples a random dim x k matrix until it has full rank;
    every subspace has the same number of ordered bases, so the row
    space is uniform.  The acceptance probability exceeds
    prod_i (1 - q^(i-1-k)) > 1/4.
    """
    if not 1 <= dim <= k:
        raise ValueError(f"need 1 <= dim <= k, got dim={dim}")
    ctx = field_new(q)
    while True:
        m = Matrix(ctx, tuple(tuple(rng.randrange(q) for _ in range(k))
                              for _ in range(dim)))
        if m.rank() == dim:
            break
    dual = m.nullspace()
    if not dual:  # dim == k: the whole space
        return AffineSubspace(ctx, Matrix(ctx, ()), ())
    return AffineSubspace.from_equations(ctx, dual, (0,) * len(dual))


def _exact_ceil_threshold(base_num: int, base_den: int, q: int, n_exp: int,
                          offset: int) -> int:
    """Smallest integer m with (m + offset) * log_q(base_num/base_den) >= n_exp.

    Evaluated exactly: base_num^(m+offset) >= q^n_exp * base_den^(m+offset).
    A float estimate seeds the search; the inequality itself is checked
    in big-integer arithmetic, so the threshold is never off by one.
    """
    import math
    est = n_exp * math.log(q) / math.log(base_num / base_den) - offset
    m = max(0, math.floor(est) - 2)

    def ok(mm: int) -> bool:
        t = mm + offset
        return base_num ** t >= q ** n_exp * base_den ** t

    while not ok(m):
        m += 1
    while m > 0 and ok(m - 1):
        m -= 1
    return m


def subspace_draw_count(q: int, k: int, s: int) -> int:
    """Number of random s-dim subspaces whose union blocks with positive probability.

    Smallest integer m with m >= s(k-s)+s+2 over log_q(q^4/(q^3-q+1)),
    minus one; requires q >= 3.
    """
    if q < 3:
        raise UnsupportedStrategy("subspace draw bound requires q >= 3")
    n_exp = s * (k - s) + s + 2
    return _exact_ceil_threshold(q ** 4, q ** 3 - q + 1, q, n_exp, offset=1)


def point_draw_count(q: int, k: int, s: int) -> int:
    """Number of random points whose set blocks with positive probability.

    Smallest integer m with m >= (s(k-s)+s+2) / log_q(q^s/(q^s-1)); the
    union bound behind it is alphabet-independent.
    """
    n_exp = s * (k - s) + s + 2
    return _exact_ceil_threshold(q ** s, q ** s - 1, q, n_exp, offset=0)


@dataclass(frozen=True)
class ConstructionResult:
    """A constructed blocking set plus how it was made.

    verified=True means the stated blocking property re-checked via the
    independent verifier.
    """

    points: PointSet
    strategy: str
    params: dict = field(compare=False)
    attempts: int
    verified: bool


def random_subspace_blocking(q: int, k: int, s: int, seed: int,
                             strategy: str = "subspaces",
                             dim: int | None = None,
                             m: int | None = None,
                             retry_cap: int = DEFAULT_RETRY_CAP,
                             threads: int = 1) -> ConstructionResult:
    """Random s-blocking set in F_q^k, retried until it verifies.

    strategy "subspaces": union of m uniformly random dim-dimensional
    (default dim = s) subspaces through the origin; the default m comes
    from :func:`subspace_draw_count` and needs q >= 3 and dim = s.
    strategy "points": m uniformly random points, default m from
    :func:`point_draw_count`.  For parameter combinations without a
    formula-backed default, m must be supplied.

    Each attempt draws from an independent SplitMix64 stream of `seed`,
    so results are reproducible; raises RetriesExhausted past retry_cap.
    """
    if not 1 <= s <= k:
        raise ValueError(f"need 1 <= s <= k, got s={s}")
    ctx = field_new(q)
    if strategy == "subspaces":
        dim = s if dim is None else dim
        if m is None:
            if dim != s:
                raise UnsupportedStrategy(
                    f"no draw-count formula for dim={dim} != s; supply m")
            m = subspace_draw_count(q, k, s)  # raises for q < 3
    elif strategy == "points":
        if m is None:
            m = point_draw_count(q, k, s)
    else:
        raise UnsupportedStrategy(f"unknown strategy {strategy!r}")

    params = {"q": q, "k": k, "s": s, "seed": seed, "m": m,
              "strategy": strategy, "dim": dim}
    for attempt in range(1, retry_cap + 1):
        rng = stream(seed, attempt - 1)
        pts: list[tuple[int, ...]] = []
        if strategy == "subspaces":
            for _ in range(m):
                sub = uniform_subspace(q, k, dim, rng)
                pts.extend(sub.points())
        else:
            pts = [tuple(rng.randrange(q) for _ in range(k)) for _ in range(m)]
        candidate = PointSet.affine(ctx, k, pts)
        if is_affine_blocking(candidate, s, threads=threads).holds:
            return ConstructionResult(candidate, strategy, params,
                                      attempt, True)
    raise RetriesExhausted(
        f"no verified blocking set in {retry_cap} attempts for "
        f"q={q} k={k} s={s} seed={seed}")


# --- graph file format: header "n m", then m edge lines "i j" ---

def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{g.n} {len(g.edges)}\n")
        for i, j in g.edges:
            fh.write(f"{i} {j}\n")


def read_graph(path) -> Graph:
    with open(path) as fh:
        n, m = map(int, fh.readline().split())
        edges = [tuple(map(int, fh.readline().split())) for _ in range(m)]
    return Graph.from_edges(n, edges)
