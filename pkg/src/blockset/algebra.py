"""Exact arithmetic and linear algebra over small finite fields F_q.

Field elements are encoded as integers 0..q-1: for q = p^e the integer n
encodes the polynomial whose base-p digits (low degree first) are the
coefficients of n.  Addition/multiplication/inverse are dense lookup
tables, built once per field from polynomial arithmetic modulo the
canonical irreducible polynomial: the lexicographically smallest monic
irreducible of degree e over F_p, coefficients compared low-degree-first.
The encoding is bijective and bit-exact, so file formats that store raw
element integers are reproducible across runs.

Supported orders: prime powers q <= 32.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DimensionMismatch, NotAPrimePower, UnsupportedSize

MAX_Q = 32

_CTX_CACHE: dict[int, "FieldCtx"] = {}


def _prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise NotAPrimePower."""
    if q < 2:
        raise NotAPrimePower(f"q={q} is not a prime power")
    n = q
    p = None
    for d in range(2, q + 1):
        if d * d > n:
            p = n
            break
        if n % d == 0:
            p = d
            break
    e = 0
    while n % p == 0 and n > 1:
        n //= p
        e += 1
    if n != 1:
        raise NotAPrimePower(f"q={q} is not a prime power")
    return p, e


# --- polynomial helpers over F_p; coefficient tuples, low degree first ---

def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m, coefficients mod p."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _poly_trim([x % p for x in a[:dm]])


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _is_irreducible(m, p):
    """Trial division of the monic polynomial m by all lower-degree monics."""
    deg = len(m) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = tuple(tail) + (1,)
            if not _poly_mod(m, divisor, p):
                return False
    return True


def _canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e, low-degree-first lex order."""
    if e == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=e):
        m = tuple(tail) + (1,)
        if _is_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldCtx:
    """Arithmetic context for F_q with dense lookup tables.

    Immutable after construction; safe to share across threads.  Use
    :func:`field_new` rather than calling this constructor directly, so
    contexts are cached per order.
    """

    __slots__ = ("q", "p", "e", "modulus", "add_table", "mul_table",
                 "inv_table", "neg_table")

    def __init__(self, q: int):
        if q > MAX_Q:
            raise UnsupportedSize(f"q={q} exceeds the supported maximum {MAX_Q}")
        p, e = _prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        self.modulus = _canonical_modulus(p, e)

        def to_poly(n):
            digits = []
            for _ in range(e):
                digits.append(n % p)
                n //= p
            return _poly_trim(digits)

        def from_poly(c):
            n = 0
            for d in reversed(c):
                n = n * p + d
            return n

        polys = [to_poly(n) for n in range(q)]
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            pa = polys[a]
            for b in range(a, q):
                pb = polys[b]
                s = [0] * e
                for i, c in enumerate(pa):
                    s[i] = c
                for i, c in enumerate(pb):
                    s[i] = (s[i] + c) % p
                v = from_poly(_poly_trim(s))
                add[a][b] = add[b][a] = v
                w = from_poly(_poly_mod(_poly_mul(pa, pb, p), self.modulus, p))
                mul[a][b] = mul[b][a] = w
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        neg = [0] * q
        for a in range(q):
            for b in range(q):
                if add[a][b] == 0:
                    neg[a] = b
                    break
        self.add_table = tuple(tuple(r) for r in add)
        self.mul_table = tuple(tuple(r) for r in mul)
        self.inv_table = tuple(inv)
        self.neg_table = tuple(neg)
        self._check_axioms()

    # -- scalar operations --

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def elements(self) -> range:
        return range(self.q)

    @property
    def is_prime(self) -> bool:
        return self.e == 1

    def dot(self, u, v) -> int:
        """Inner product of two equal-length coordinate sequences."""
        if self.e == 1:
            p = self.p
            return sum(a * b for a, b in zip(u, v)) % p
        mul = self.mul_table
        add = self.add_table
        acc = 0
        for a, b in zip(u, v):
            acc = add[acc][mul[a][b]]
        return acc

    def scale_vec(self, c: int, v) -> tuple[int, ...]:
        row = self.mul_table[c]
        return tuple(row[x] for x in v)

    def neg_vec(self, v) -> tuple[int, ...]:
        neg = self.neg_table
        return tuple(neg[x] for x in v)

    def add_vec(self, u, v) -> tuple[int, ...]:
        add = self.add_table
        return tuple(add[a][b] for a, b in zip(u, v))

    def _check_axioms(self):
        q, add, mul = self.q, self.add_table, self.mul_table
        rng = range(q)
        for a in rng:
            assert add[a][0] == a and mul[a][1] == a and mul[a][0] == 0
            assert a == 0 or mul[a][self.inv_table[a]] == 1
            for b in rng:
                assert add[a][b] == add[b][a] and mul[a][b] == mul[b][a]
                for c in rng:
                    assert add[add[a][b]][c] == add[a][add[b][c]]
                    assert mul[mul[a][b]][c] == mul[a][mul[b][c]]
                    assert mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]

    def __repr__(self):
        return f"FieldCtx(q={self.q})"


def field_new(q: int) -> FieldCtx:
    """Return the (cached) arithmetic context for F_q, q a prime power <= 32."""
    ctx = _CTX_CACHE.get(q)
    if ctx is None:
        ctx = _CTX_CACHE[q] = FieldCtx(q)
    return ctx


@dataclass(frozen=True)
class Matrix:
    """Immutable row-major matrix over F_q."""

    ctx: FieldCtx
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        q = self.ctx.q
        ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            if any(not 0 <= x < q for x in r):
                raise ValueError("entry out of field range")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows) -> "Matrix":
        return cls(ctx, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "Matrix":
        return cls(ctx, tuple(tuple(1 if i == j else 0 for j in range(n))
                              for i in range(n)))

    @classmethod
    def zero(cls, ctx: FieldCtx, r: int, c: int) -> "Matrix":
        return cls(ctx, tuple((0,) * c for _ in range(r)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def mul_vec(self, x) -> tuple[int, ...]:
        """A @ x for a column vector x of length ncols."""
        if len(x) != self.ncols:
            raise DimensionMismatch(f"expected length {self.ncols}, got {len(x)}")
        return tuple(self.ctx.dot(r, x) for r in self.rows)

    def vec_mul(self, u) -> tuple[int, ...]:
        """u @ A for a row vector u of length nrows."""
        if len(u) != self.nrows:
            raise DimensionMismatch(f"expected length {self.nrows}, got {len(u)}")
        ctx = self.ctx
        acc = (0,) * self.ncols
        for c, row in zip(u, self.rows):
            if c:
                acc = ctx.add_vec(acc, ctx.scale_vec(c, row))
        return acc

    def transpose(self) -> "Matrix":
        return Matrix(self.ctx, tuple(zip(*self.rows)) if self.rows else ())

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row-echelon form and its pivot columns.

        Pivots are chosen as the first nonzero entry scanning columns
        left-to-right and rows top-to-bottom, so the result is
        deterministic.
        """
        ctx = self.ctx
        rows = [list(r) for r in self.rows]
        nr, nc = len(rows), self.ncols
        pivots = []
        r = 0
        for c in range(nc):
            pr = next((i for i in range(r, nr) if rows[i][c]), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = ctx.inv(rows[r][c])
            if inv != 1:
                rows[r] = [ctx.mul(inv, x) for x in rows[r]]
            for i in range(nr):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [ctx.sub(x, ctx.mul(f, y))
                               for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return Matrix(ctx, tuple(tuple(x) for x in rows)), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> tuple[tuple[int, ...], ...]:
        """Basis of {x : A x = 0}, one vector per non-pivot column."""
        ctx = self.ctx
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        basis = []
        for f in free:
            v = [0] * self.ncols
            v[f] = 1
            for i, pc in enumerate(pivots):
                v[pc] = ctx.neg(red.rows[i][f])
            basis.append(tuple(v))
        return tuple(basis)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]


def rank(m: Matrix) -> int:
    """Row rank of m via Gaussian elimination over F_q."""
    return m.rank()


def row_space(m: Matrix):
    """Yield the q^rank(m) distinct vectors of the row space of m.

    Enumeration runs over coefficient tuples of the reduced echelon basis
    in lexicographic order, so the order is deterministic and free of
    duplicates even when m itself is rank-deficient.
    """
    ctx = m.ctx
    red, pivots = m.rref()
    basis = red.rows[:len(pivots)]
    for coeffs in itertools.product(ctx.elements(), repeat=len(basis)):
        acc = (0,) * m.ncols
        for c, row in zip(coeffs, basis):
            if c:
                acc = ctx.add_vec(acc, ctx.scale_vec(c, row))
        yield acc


@dataclass(frozen=True)
class AffineSolutionSet:
    """Solution set {x : A x = b} as particular point plus kernel basis."""

    ctx: FieldCtx
    particular: tuple[int, ...]
    kernel_basis: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.kernel_basis)

    @property
    def size(self) -> int:
        return self.ctx.q ** len(self.kernel_basis)

    def __iter__(self):
        ctx = self.ctx
        for coeffs in itertools.product(ctx.elements(),
                                        repeat=len(self.kernel_basis)):
            acc = self.particular
            for c, v in zip(coeffs, self.kernel_basis):
                if c:
                    acc = ctx.add_vec(acc, ctx.scale_vec(c, v))
            yield acc


def solve_affine(a: Matrix, b) -> AffineSolutionSet | None:
    """Full solution set of A x = b, or None when the system is inconsistent."""
    if len(b) != a.nrows:
        raise DimensionMismatch(f"b has length {len(b)}, expected {a.nrows}")
    ctx = a.ctx
    aug = Matrix(ctx, tuple(r + (bi,) for r, bi in zip(a.rows, b)))
    red, pivots = aug.rref()
    if a.ncols in pivots:
        return None
    particular = [0] * a.ncols
    for i, pc in enumerate(pivots):
        particular[pc] = red.rows[i][a.ncols]
    return AffineSolutionSet(ctx, tuple(particular), a.nullspace())


# --- matrix file format: header "q r c", then r rows of c integers ---

def write_matrix(m: Matrix, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{m.ctx.q} {m.nrows} {m.ncols}\n")
        for row in m.rows:
            fh.write(" ".join(map(str, row)) + "\n")


def read_matrix(path) -> Matrix:
    with open(path) as fh:
        tokens = fh.read().split()
    q, r, c = int(tokens[0]), int(tokens[1]), int(tokens[2])
    vals = list(map(int, tokens[3:]))
    if len(vals) != r * c:
        raise ValueError(f"expected {r * c} entries, found {len(vals)}")
    ctx = field_new(q)
    return Matrix(ctx, tuple(tuple(vals[i * c:(i + 1) * c]) for i in range(r)))
