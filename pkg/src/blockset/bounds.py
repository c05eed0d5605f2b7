"""Closed-form bound evaluation, q-ary entropy, and the rate constant c_q.

Every bound the package knows about is evaluated here as a pure
function.  Entries are tagged with the quantity they bound and whether
they are asymptotic (coefficient-only, with an unquantified o(1) term);
asymptotic entries never participate in the lower<=upper sanity check.

c_q is the unique x >= 1 solving M_q((q-1)/(x(q+1))) = 1/(x(q+1)),
where M_q is the entropy-form second-linear-programming upper bound on
the asymptotic rate of q-ary codes of given relative distance.  It is
found by bisection on a sign-changing bracket; the residuals at both
bracket ends are part of the result so callers can audit the root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BracketFailure, OutOfDomain
from .geometry import ln_big, qbin


def entropy_q(q: int, x: float) -> float:
    """q-ary entropy H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x).

    Defined on [0, 1] with the continuity convention 0 log 0 = 0.
    """
    if not 0 <= x <= 1:
        raise OutOfDomain(f"H_q needs 0 <= x <= 1, got {x}")
    lnq = math.log(q)
    acc = x * math.log(q - 1) / lnq
    if 0 < x:
        acc -= x * math.log(x) / lnq
    if x < 1:
        acc -= (1 - x) * math.log(1 - x) / lnq
    return acc


def mrrw(q: int, delta: float) -> float:
    """Entropy-form rate upper bound M_q(delta) on [0, 1 - 1/q].

    M_q(0) = 1, M_q(1 - 1/q) = 0, strictly decreasing in between.
    """
    hi = 1 - 1 / q
    if not 0 <= delta <= hi + 1e-15:
        raise OutOfDomain(f"M_q needs 0 <= delta <= 1 - 1/q, got {delta}")
    delta = min(delta, hi)
    inner = (q - 1 - (q - 2) * delta
             - 2 * math.sqrt((q - 1) * delta * (1 - delta))) / q
    inner = min(max(inner, 0.0), 1.0)  # clamp float dust at the endpoints
    return entropy_q(q, inner)


@dataclass(frozen=True)
class CqResult:
    """Root c_q with its final bisection bracket and end residuals."""

    q: int
    c_q: float
    bracket: tuple[float, float]
    tolerance: float
    residuals: tuple[float, float]


def cq_residual(q: int, x: float) -> float:
    """f(x) = M_q((q-1)/(x(q+1))) - 1/(x(q+1)); c_q is its unique root >= 1."""
    t = 1.0 / (x * (q + 1))
    return mrrw(q, (q - 1) * t) - t


def compute_cq(q: int, tolerance: float = 1e-9) -> CqResult:
    """Bisect for c_q starting from [1, X], doubling X until the sign flips.

    f(1) < 0 always (M_q((q-1)/(q+1)) < 1/(q+1)) and f increases to 1,
    so the bracket is guaranteed; bisection keeps it sign-changing.
    """
    if tolerance < 1e-12:
        raise ValueError("tolerance below 1e-12 is not resolvable in floats")
    lo = 1.0
    f_lo = cq_residual(q, lo)
    if f_lo >= 0:
        raise BracketFailure(f"expected negative residual at x=1, got {f_lo}")
    hi = 2.0
    for _ in range(64):
        f_hi = cq_residual(q, hi)
        if f_hi > 0:
            break
        hi *= 2
    else:
        raise BracketFailure("no sign change found while doubling the bracket")
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if cq_residual(q, mid) < 0:
            lo = mid
        else:
            hi = mid
    return CqResult(q, 0.5 * (lo + hi), (lo, hi), tolerance,
                    (cq_residual(q, lo), cq_residual(q, hi)))


_CQ_CACHE: dict[int, CqResult] = {}


def cq_cached(q: int) -> CqResult:
    if q not in _CQ_CACHE:
        _CQ_CACHE[q] = compute_cq(q)
    return _CQ_CACHE[q]


# --- affine blocking set bounds ---

def lb_affine(q: int, k: int, s: int) -> int:
    """Lower bound (q^s - 1)(k - s + 1) + 1 on the smallest affine s-blocking set."""
    if not 1 <= s <= k:
        raise ValueError(f"need 1 <= s <= k, got s={s}, k={k}")
    return (q ** s - 1) * (k - s + 1) + 1


def ub_fractional(q: int, k: int, s: int) -> float:
    """Fractional-cover upper bound q^s (1 + ln qbin(k,s,q))."""
    if not 1 <= s <= k:
        raise ValueError(f"need 1 <= s <= k, got s={s}, k={k}")
    return q ** s * (1 + ln_big(qbin(k, s, q)))


def log_q_ratio(q: int, num: float, den: float) -> float:
    return math.log(num / den) / math.log(q)


def ub_thm_main(q: int, k: int, s: int) -> float:
    """Random-construction upper bound on the smallest affine s-blocking set.

    q = 2: (s(k-s)+s+2) / log_2(2^s/(2^s-1)) + 1  (random points);
    q >= 3: (q^s-1)(s(k-s)+s+2) / log_q(q^4/(q^3-q+1)) + 1 (random subspaces).
    """
    if not 2 <= s <= k:
        raise ValueError(f"need 2 <= s <= k, got s={s}, k={k}")
    n_exp = s * (k - s) + s + 2
    if q == 2:
        return n_exp / log_q_ratio(2, 2 ** s, 2 ** s - 1) + 1
    return (q ** s - 1) * n_exp / log_q_ratio(q, q ** 4, q ** 3 - q + 1) + 1


# --- strong blocking set bounds ---

def strong_upper_random(q: int, k: int) -> float:
    """(q+1) * 2k / log_q(q^4/(q^3-q+1)): lines of random planes through the origin."""
    return (q + 1) * 2 * k / log_q_ratio(q, q ** 4, q ** 3 - q + 1)


def strong_upper_short(q: int, k: int) -> float:
    """Previously best upper bound on the smallest strong blocking set."""
    if q == 2:
        return (2 * k - 1) / log_q_ratio(2, 4, 3)
    return (q + 1) * math.ceil(2 / (1 + 1 / ((q + 1) ** 2 * math.log(q))) * (k - 1))


def strong_lower_basic(q: int, k: int) -> int:
    """(q+1)(k-1): polynomial-method lower bound on strong blocking sets."""
    return (q + 1) * (k - 1)


def strong_upper_general(q: int, k: int, s: int) -> float:
    """Upper bound for strong (s-1)-blocking sets from the random-subspace union."""
    if q < 3:
        raise ValueError("the subspace construction needs q >= 3")
    n_exp = s * (k - s) + s + 2
    return (q ** s - 1) / (q - 1) * n_exp / log_q_ratio(q, q ** 4, q ** 3 - q + 1)


@dataclass(frozen=True)
class BoundEntry:
    name: str
    quantity: str
    side: str  # "lower" | "upper"
    value: float
    asymptotic: bool = False
    note: str = ""


@dataclass(frozen=True)
class BoundReport:
    q: int
    k: int
    s: int | None
    entries: tuple[BoundEntry, ...]

    def __post_init__(self):
        by_quantity: dict[str, list[BoundEntry]] = {}
        for e in self.entries:
            if not e.asymptotic:
                by_quantity.setdefault(e.quantity, []).append(e)
        for quantity, group in by_quantity.items():
            lows = [e.value for e in group if e.side == "lower"]
            highs = [e.value for e in group if e.side == "upper"]
            if lows and highs and max(lows) > min(highs):
                raise ValueError(
                    f"inconsistent bounds for {quantity}: "
                    f"lower {max(lows)} > upper {min(highs)}")


def bounds_report(q: int, k: int, s: int = 2,
                  c: float | None = None) -> BoundReport:
    """All applicable affine and strong blocking-set bounds for (q, k, s).

    The asymptotic strong lower bound is reported as the coefficient
    c*(q+1)(k-1) for a user-chosen c < c_q (default c_q minus the root
    tolerance); it is a statement about large k only.
    """
    entries = [
        BoundEntry("affine_lower", f"b_q(k,{s})", "lower",
                   float(lb_affine(q, k, s))),
        BoundEntry("affine_upper_fractional", f"b_q(k,{s})", "upper",
                   ub_fractional(q, k, s)),
    ]
    if s >= 2:
        entries.append(BoundEntry("affine_upper_random", f"b_q(k,{s})",
                                  "upper", ub_thm_main(q, k, s)))
    if k >= 2:
        entries.append(BoundEntry("strong_lower_basic", "strong_blocking",
                                  "lower", float(strong_lower_basic(q, k))))
        cq = cq_cached(q)
        cc = c if c is not None else cq.c_q - cq.tolerance
        entries.append(BoundEntry(
            "strong_lower_asymptotic", "strong_blocking", "lower",
            cc * (q + 1) * (k - 1), asymptotic=True,
            note=f"coefficient c={cc:.9f} < c_q; asymptotic, o(1) unspecified"))
        if q >= 3:
            entries.append(BoundEntry("strong_upper_random", "strong_blocking",
                                      "upper", strong_upper_random(q, k)))
        entries.append(BoundEntry("strong_upper_short", "strong_blocking",
                                  "upper", strong_upper_short(q, k)))
        if q >= 3 and s > 2:
            entries.append(BoundEntry(
                f"strong_{s - 1}_upper_random", f"strong_{s - 1}_blocking",
                "upper", strong_upper_general(q, k, s)))
    return BoundReport(q, k, s, tuple(entries))


def strong_upper_crossover(q: int, k_max: int = 200) -> int | None:
    """Smallest k <= k_max from which the random bound beats the short-cover bound."""
    crossover = None
    for k in range(2, k_max + 1):
        if strong_upper_random(q, k) < strong_upper_short(q, k):
            if crossover is None:
                crossover = k
        else:
            crossover = None
    return crossover


# --- trifferent code size bounds ---

LOG3_9_5 = math.log(9 / 5) / math.log(3)


def trifferent_bounds(n: int) -> BoundReport:
    """Size bounds for (linear) trifferent codes of length n, in log_3 scale.

    Entries carry log_3 of the bound in `value`; `note` holds the plain
    value when it fits in a float.  All four are asymptotic statements.
    """
    if n < 1:
        raise ValueError("need n >= 1")

    def entry(name, quantity, side, log3_value):
        plain = 3.0 ** log3_value if log3_value < 600 else math.inf
        return BoundEntry(name, quantity, side, log3_value, asymptotic=True,
                          note=f"value ~ {plain:.6g}")

    entries = (
        entry("linear_lower", "linear_trifferent", "lower",
              n / 4 * LOG3_9_5 - 1),
        entry("linear_upper", "linear_trifferent", "upper", n / 4.55),
        entry("general_lower", "trifferent", "lower", n / 4 * LOG3_9_5),
        entry("general_upper", "trifferent", "upper",
              (math.log(2) + n * math.log(1.5)) / math.log(3)),
    )
    return BoundReport(3, n, None, entries)


def trifferent_identity_error() -> float:
    """|3^(log_3(81/25)/8) - (9/5)^(1/4)|, which is zero up to float rounding."""
    lhs = 3 ** (log_q_ratio(3, 81, 25) / 8)
    rhs = (9 / 5) ** 0.25
    return abs(lhs - rhs)
