"""Box-constrained quadratic Diophantine solving by divisor enumeration.

The equation treated throughout is

    (x^2 + C1*x) - (y^2 + C2*y) = C3,    x in [1..C4], y in [1..C5],

with C1, C2 nonnegative integers of equal parity.  Completing the square
factors the left side as

    (x - y + (C1-C2)/2) * (x + y + (C1+C2)/2) - (C1^2 - C2^2)/4,

so with q = x - y + (C1-C2)/2 and p = x + y + (C1+C2)/2 the equation becomes
p*q = Cs, where Cs = C3 + (C1-C2)(C1+C2)/4.  The box constraint translates
into two interval conditions and a parity condition on (p, q), and any
qualifying p necessarily exceeds sqrt(|Cs|), so scanning the large divisors
of |Cs| decides solvability exactly.

``solve_bruteforce`` is the independent oracle: an exhaustive scan of the
box.  The two must agree on solvability for every valid instance.

All comparisons against the threshold function

    g(C1, C2) = (C2 + sqrt(C2^2 - 4*C1)) / 2   (or -inf for negative
                                                discriminants)

are done in exact integer arithmetic via ``compare_g``; no decision path
touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt

DEFAULT_BOX_CAP = 4_000_000


@dataclass(frozen=True)
class BoxDioProblem:
    """One instance: linear coefficients c1, c2, right side c3, box c4 x c5."""

    c1: int
    c2: int
    c3: int
    c4: int
    c5: int

    def __post_init__(self) -> None:
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError("linear coefficients must be nonnegative")
        if (self.c1 - self.c2) % 2 != 0:
            raise ValueError("linear coefficients must have equal parity")
        if self.c4 < 1 or self.c5 < 1:
            raise ValueError("box bounds must be positive")

    def lhs(self, x: int, y: int) -> int:
        return (x * x + self.c1 * x) - (y * y + self.c2 * y)


@dataclass(frozen=True)
class DivisorWitness:
    """A divisor pair p*q = Cs together with the recovered box solution."""

    p: int
    q: int
    x: int
    y: int


def c_star(problem: BoxDioProblem) -> int:
    """The product constant Cs = C3 + (C1 - C2)(C1 + C2)/4, exactly.

    The division is exact because C1 and C2 share parity, which makes
    C1^2 - C2^2 divisible by 4.
    """
    return problem.c3 + (problem.c1 - problem.c2) * (problem.c1 + problem.c2) // 4


def _sum_bounds(problem: BoxDioProblem) -> tuple[int, int]:
    return problem.c1 + 2, problem.c1 + 2 * problem.c4


def _diff_bounds(problem: BoxDioProblem) -> tuple[int, int]:
    return problem.c2 + 2, problem.c2 + 2 * problem.c5


def _recover(problem: BoxDioProblem, p: int, q: int) -> DivisorWitness:
    # Inverts p = x + y + (c1+c2)/2, q = x - y + (c1-c2)/2.
    x = (p + q - problem.c1) // 2
    y = (p - q - problem.c2) // 2
    witness = DivisorWitness(p, q, x, y)
    if not (1 <= x <= problem.c4 and 1 <= y <= problem.c5):
        raise RuntimeError(f"recovered point {x, y} escapes the box in {problem}")
    if problem.lhs(x, y) != problem.c3:
        raise RuntimeError(f"recovered point {x, y} does not solve {problem}")
    return witness


def _accepts(problem: BoxDioProblem, p: int, q: int) -> bool:
    sum_lo, sum_hi = _sum_bounds(problem)
    diff_lo, diff_hi = _diff_bounds(problem)
    return (
        sum_lo <= p + q <= sum_hi
        and diff_lo <= p - q <= diff_hi
        and (p + q - problem.c1) % 2 == 0
    )


def solve_by_divisors(problem: BoxDioProblem) -> DivisorWitness | None:
    """Decide solvability by scanning divisors of |Cs|; None means unsolvable.

    For Cs != 0 the candidates are the divisors p of |Cs| with p^2 > |Cs|.
    For Cs = 0 every positive integer divides with cofactor 0, and the two
    interval conditions confine p to a finite range which is scanned
    directly.  The first qualifying p in ascending order is returned, with
    its recovered (x, y) verified against the original equation.
    """
    cs = c_star(problem)
    if cs == 0:
        sum_lo, sum_hi = _sum_bounds(problem)
        diff_lo, diff_hi = _diff_bounds(problem)
        lo = max(sum_lo, diff_lo)
        hi = min(sum_hi, diff_hi)
        if (lo - problem.c1) % 2 != 0:
            lo += 1
        for p in range(lo, hi + 1, 2):
            return _recover(problem, p, 0)
        return None

    magnitude = abs(cs)
    root = isqrt(magnitude)
    candidates = []
    for d in range(1, root + 1):
        if magnitude % d == 0:
            big = magnitude // d
            if big * big > magnitude:
                candidates.append(big)
    candidates.sort()
    for p in candidates:
        if p * p <= magnitude:
            raise RuntimeError(f"divisor candidate {p} at or below sqrt(|{cs}|)")
        q = cs // p
        if _accepts(problem, p, q):
            return _recover(problem, p, q)
    return None


def solve_bruteforce(
    problem: BoxDioProblem, cap: int = DEFAULT_BOX_CAP
) -> tuple[int, int] | None:
    """Exhaustive box scan in lexicographic order; the solver's oracle."""
    if problem.c4 * problem.c5 > cap:
        raise ValueError(
            f"box {problem.c4}x{problem.c5} exceeds the brute-force cap {cap}"
        )
    for x in range(1, problem.c4 + 1):
        base = x * x + problem.c1 * x - problem.c3
        for y in range(1, problem.c5 + 1):
            if base == y * y + problem.c2 * y:
                return (x, y)
    return None


@dataclass(frozen=True)
class GValue:
    """Extended-real value of the threshold function g."""

    finite: bool
    value: float


def g_value(c1: int, c2: float) -> GValue:
    """Floating-point g, for diagnostics only; decisions go through compare_g."""
    if c2 <= 0:
        raise ValueError("g is defined for positive second argument")
    disc = c2 * c2 - 4 * c1
    if disc < 0:
        return GValue(False, float("-inf"))
    return GValue(True, 0.5 * (c2 + math.sqrt(disc)))


def compare_g_unchecked(x: int, c1: int, c2: int) -> int:
    """Sign of x - g(c1, c2) in exact integer arithmetic.

    Returns -1, 0 or +1.  A negative discriminant means g = -inf, so any x
    compares greater.  Otherwise x >= g iff 2x - c2 is nonnegative and its
    square is at least c2^2 - 4*c1.
    """
    disc = c2 * c2 - 4 * c1
    if disc < 0:
        return 1
    shifted = 2 * x - c2
    if shifted < 0:
        return -1
    if shifted * shifted > disc:
        return 1
    if shifted * shifted == disc:
        return 0
    return -1


def compare_g(x: int, c1: int, c2: int) -> int:
    """``compare_g_unchecked`` guarded by the hypotheses x > sqrt(|c1|), c2 > 0.

    The guard matters because only under it do the divisor-sum inequalities
    p + c1/p >= c2 and x >= g(c1, c2) coincide.
    """
    if c2 <= 0:
        raise ValueError("g comparison needs a positive second argument")
    if x <= 0 or x * x <= abs(c1):
        raise ValueError(f"comparison hypothesis x > sqrt(|c1|) fails for x={x}, c1={c1}")
    return compare_g_unchecked(x, c1, c2)


def interval_route_accepts(problem: BoxDioProblem, p: int) -> bool:
    """Conditions on p +- Cs/p via the two integer intervals (parity excluded)."""
    cs = c_star(problem)
    if cs != 0 and cs % p != 0:
        return False
    q = cs // p
    sum_lo, sum_hi = _sum_bounds(problem)
    diff_lo, diff_hi = _diff_bounds(problem)
    return sum_lo <= p + q <= sum_hi and diff_lo <= p - q <= diff_hi


def g_route_accepts(problem: BoxDioProblem, p: int) -> bool:
    """The same acceptance test phrased through g-thresholds (parity excluded).

    Requires p > sqrt(|Cs|); under that hypothesis this must agree with
    ``interval_route_accepts`` for every divisor p of Cs.
    """
    cs = c_star(problem)
    if cs != 0 and cs % p != 0:
        return False
    sum_lo, sum_hi = _sum_bounds(problem)
    diff_lo, diff_hi = _diff_bounds(problem)
    return (
        compare_g(p, cs, sum_lo) >= 0
        and compare_g(p, cs, sum_hi) <= 0
        and compare_g(p, -cs, diff_lo) >= 0
        and compare_g(p, -cs, diff_hi) <= 0
    )


def parity_condition(problem: BoxDioProblem, p: int) -> bool:
    cs = c_star(problem)
    return (p + cs // p - problem.c1) % 2 == 0
