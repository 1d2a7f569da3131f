"""Symbolic certification that whole one-parameter tree families are TI.

Families are starlike or double starlike trees whose branch lengths are
linear integer polynomials in a parameter t ranging over the nonnegative
integers.  For families of even order, every divisor case of the
characterization asks that a fundamental polynomial

    F(t) = T1(t)*T2(t) + T3(t)*T4(t),    deg F <= 2,

never have a divisor p caught between four threshold expressions.  The
certifier brackets the thresholds between linear polynomials using strict
square-root under/over-approximations of the discriminants, then discharges
each case by one of three exact arguments:

* the bracket interval is empty for every t;
* deg F <= 1: the quotient |F(t)|/p is pinned to a size that is impossible
  (a ladder of coefficientwise inequalities plus 4- and 3-divisibility
  facts that exploit the parity rule for even orders);
* deg F = 2: the bracket slopes coincide, so p is confined to finitely many
  linear forms; each is eliminated by exact polynomial division, with the
  finitely many small t where the remainder argument is inconclusive checked
  one by one.

Every step lands in a :class:`FamilyCertificate`, which carries enough data
for an independent checker to replay the arithmetic.  Any failed step raises
:class:`CertifierInapplicable`: the method is sound but not complete, so
inapplicability never says anything about the family itself.

All arithmetic is exact; Python integers are unbounded, so no overflow
handling is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Any, Iterable

from .trees import DoubleStarlikeSpec, StarlikeSpec, TreeSpec

MANUAL_CHECK_CAP = 10_000


class CertifierInapplicable(Exception):
    """The certifier cannot decide this family; not a claim of non-TI."""

    def __init__(self, reason: str, case: str | None = None, step: str | None = None):
        self.reason = reason
        self.case = case
        self.step = step
        where = f" [{case}]" if case else ""
        stage = f" at {step}" if step else ""
        super().__init__(f"certifier inapplicable{where}{stage}: {reason}")


class _DischargeFailed(Exception):
    """Internal: one (lower, upper) bracket combination failed to discharge."""


def _fmt(c0: int, c1: int, c2: int = 0) -> str:
    def term(coeff: int, power: str) -> str:
        if coeff in (1, -1):
            return f"{'-' if coeff < 0 else ''}{power}"
        return f"{coeff}{power}"

    terms = []
    if c2:
        terms.append(term(c2, "t^2"))
    if c1:
        terms.append(term(c1, "t"))
    if c0 or not terms:
        terms.append(str(c0))
    return "+".join(terms).replace("+-", "-")


@dataclass(frozen=True)
class LinPoly:
    """c0 + c1*t with integer coefficients."""

    c0: int
    c1: int = 0

    def __add__(self, other: "LinPoly") -> "LinPoly":
        return LinPoly(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other: "LinPoly") -> "LinPoly":
        return LinPoly(self.c0 - other.c0, self.c1 - other.c1)

    def __neg__(self) -> "LinPoly":
        return LinPoly(-self.c0, -self.c1)

    def __mul__(self, k: int) -> "LinPoly":
        return LinPoly(self.c0 * k, self.c1 * k)

    __rmul__ = __mul__

    def __call__(self, t: int) -> int:
        return self.c0 + self.c1 * t

    def as_quad(self) -> "QuadPoly":
        return QuadPoly(self.c0, self.c1, 0)

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def __str__(self) -> str:
        return _fmt(self.c0, self.c1)


@dataclass(frozen=True)
class QuadPoly:
    """c0 + c1*t + c2*t^2 with integer coefficients."""

    c0: int
    c1: int = 0
    c2: int = 0

    def __add__(self, other: "QuadPoly") -> "QuadPoly":
        return QuadPoly(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "QuadPoly") -> "QuadPoly":
        return QuadPoly(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> "QuadPoly":
        return QuadPoly(-self.c0, -self.c1, -self.c2)

    def __mul__(self, k: int) -> "QuadPoly":
        return QuadPoly(self.c0 * k, self.c1 * k, self.c2 * k)

    __rmul__ = __mul__

    def __call__(self, t: int) -> int:
        return self.c0 + self.c1 * t + self.c2 * t * t

    def __str__(self) -> str:
        return _fmt(self.c0, self.c1, self.c2)


def lin_mul(a: LinPoly, b: LinPoly) -> QuadPoly:
    return QuadPoly(a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0, a.c1 * b.c1)


def always_ge(a: LinPoly, b: LinPoly) -> bool:
    """a(t) >= b(t) for all integer t >= 0 (coefficientwise test, sufficient)."""
    return a.c0 >= b.c0 and a.c1 >= b.c1


def always_gt(a: LinPoly, b: LinPoly) -> bool:
    """a(t) > b(t) for all integer t >= 0 (coefficientwise, strict free term)."""
    return a.c0 > b.c0 and a.c1 >= b.c1


def _ceil_sqrt(x: int) -> int:
    r = isqrt(x)
    return r if r * r == x else r + 1


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def lower_sqrt_approx(a: QuadPoly) -> LinPoly:
    """Linear B with even slope, odd positive free term, and B(t)^2 < a(t)
    for every integer t >= 0.  Requires nonnegative coefficients."""
    if a.c0 < 0 or a.c1 < 0 or a.c2 < 0:
        raise ValueError("square-root approximation needs nonnegative coefficients")
    b1 = isqrt(a.c2)
    b1 -= b1 % 2
    if b1 == 0:
        b0 = isqrt(a.c0)
    else:
        b0 = min(isqrt(a.c0), a.c1 // (2 * b1))
    if b0 % 2 == 0:
        b0 -= 1
    if b0 < 1:
        raise CertifierInapplicable(
            f"no positive odd free term fits under sqrt({a})", step="lower-sqrt"
        )
    if b0 * b0 == a.c0:
        b0 -= 2
        if b0 < 1:
            raise CertifierInapplicable(
                f"strictness leaves no positive free term under sqrt({a})",
                step="lower-sqrt",
            )
    result = LinPoly(b0, b1)
    square = lin_mul(result, result)
    if not (square.c0 < a.c0 and square.c1 <= a.c1 and square.c2 <= a.c2):
        raise AssertionError(f"lower sqrt bound {result} fails its contract on {a}")
    return result


def upper_sqrt_approx(a: QuadPoly) -> LinPoly:
    """Linear B with even slope >= 2, odd positive free term, and
    B(t)^2 > a(t) for every integer t >= 0."""
    if a.c0 < 0 or a.c1 < 0 or a.c2 < 0:
        raise ValueError("square-root approximation needs nonnegative coefficients")
    b1 = max(_ceil_sqrt(a.c2), 2)
    b1 += b1 % 2
    b0 = max(_ceil_sqrt(a.c0), _ceil_div(a.c1, 2 * b1))
    if b0 % 2 == 0:
        b0 += 1
    if b0 * b0 == a.c0:
        b0 += 2
    result = LinPoly(b0, b1)
    square = lin_mul(result, result)
    if not (square.c0 > a.c0 and square.c1 >= a.c1 and square.c2 >= a.c2):
        raise AssertionError(f"upper sqrt bound {result} fails its contract on {a}")
    return result


@dataclass(frozen=True)
class GApprox:
    """One threshold bracket: which side, its inputs, and the derived bound."""

    kind: str
    c1: QuadPoly
    c2: LinPoly
    sqrt_arg: QuadPoly
    sqrt_bound: LinPoly
    bound: LinPoly


def _g_approx(kind: str, c1: QuadPoly, c2: LinPoly) -> GApprox:
    if c2.c0 % 2 == 0 or c2.c1 % 2 != 0:
        raise ValueError(
            f"threshold argument {c2} must have an odd free term and an even slope"
        )
    sqrt_arg = lin_mul(c2, c2) - 4 * c1
    if sqrt_arg.c0 < 0 or sqrt_arg.c1 < 0 or sqrt_arg.c2 < 0:
        raise CertifierInapplicable(
            f"discriminant {sqrt_arg} has a negative coefficient", step=f"{kind}-g"
        )
    if kind == "lower":
        root = lower_sqrt_approx(sqrt_arg)
        bound = LinPoly((c2.c0 + root.c0) // 2 + 1, (c2.c1 + root.c1) // 2)
    else:
        root = upper_sqrt_approx(sqrt_arg)
        bound = LinPoly((c2.c0 + root.c0) // 2 - 1, (c2.c1 + root.c1) // 2)
    return GApprox(kind, c1, c2, sqrt_arg, root, bound)


def lower_g_approx(c1: QuadPoly, c2: LinPoly) -> LinPoly:
    """Integer lower bound valid for any integer p >= g(c1(t), c2(t)), all t >= 0."""
    return _g_approx("lower", c1, c2).bound


def upper_g_approx(c1: QuadPoly, c2: LinPoly) -> LinPoly:
    """Integer upper bound valid for any integer p <= g(c1(t), c2(t)), all t >= 0."""
    return _g_approx("upper", c1, c2).bound


@dataclass(frozen=True)
class EmptyInterval:
    method = "empty-interval"


@dataclass(frozen=True)
class QuotientLadder:
    method = "quotient-ladder"
    magnitude: LinPoly
    steps: tuple[str, ...]


@dataclass(frozen=True)
class ManualCheck:
    t: int
    p: int
    f: int
    divides: bool
    quotient: int | None
    parity_matched: bool | None


@dataclass(frozen=True)
class ResidueCase:
    """One candidate divisor form p = slope*t + theta and its elimination.

    sign * F = quotient * modulus + remainder holds identically, so p(t)
    divides F(t) exactly when it divides remainder(t)."""

    theta: int
    modulus: LinPoly
    sign: int
    quotient: LinPoly
    remainder: LinPoly
    threshold: int
    checks: tuple[ManualCheck, ...]
    parity_discharge: bool


@dataclass(frozen=True)
class ResidueEnumeration:
    method = "residue-enumeration"
    cases: tuple[ResidueCase, ...]


Discharge = EmptyInterval | QuotientLadder | ResidueEnumeration


@dataclass(frozen=True)
class CaseCertificate:
    case: str
    fundament: QuadPoly
    lower: LinPoly
    upper: LinPoly
    discharge: Discharge
    approximations: tuple[GApprox, ...]


def _first_positive_t(a: int, b: int) -> int:
    # least integer t >= 0 with a*t + b > 0; requires a > 0
    if b > 0:
        return 0
    return (-b) // a + 1


def _residue_case(f: QuadPoly, slope: int, theta: int) -> ResidueCase:
    modulus = LinPoly(theta, slope)
    sign = 1
    quotient = LinPoly(0, 0)
    rem = f
    if rem.c2 < 0:
        sign, quotient, rem = -sign, -quotient, -rem
    k2 = rem.c2 // slope
    rem = QuadPoly(rem.c0, rem.c1 - k2 * theta, rem.c2 - k2 * slope)
    quotient = quotient + LinPoly(0, k2)
    if rem.c1 < 0:
        sign, quotient, rem = -sign, -quotient, -rem
    k1 = rem.c1 // slope
    rem = QuadPoly(rem.c0 - k1 * theta, rem.c1 - k1 * slope, 0)
    quotient = quotient + LinPoly(k1, 0)
    remainder = LinPoly(rem.c0, rem.c1)
    identity = lin_mul(quotient, modulus) + remainder.as_quad()
    if identity != (f if sign == 1 else -f):
        raise AssertionError(f"polynomial division broke: {f} vs {modulus}")

    if remainder.is_zero():
        # The modulus divides F identically; the quotient's parity must match
        # the modulus for every t, which mod 2 only needs t in {0, 1}.
        for t in (0, 1):
            if (modulus(t) - sign * quotient(t)) % 2 != 0:
                raise _DischargeFailed(
                    f"p = {modulus} divides the target with opposite parity"
                )
        return ResidueCase(theta, modulus, sign, quotient, remainder, 0, (), True)

    r0, r1 = remainder.c0, remainder.c1
    threshold = max(
        _first_positive_t(slope - r1, theta - r0),
        _first_positive_t(slope + r1, theta + r0),
    )
    if r1 > 0 and r0 <= 0:
        # past the remainder's only root its value stays nonzero
        threshold = max(threshold, (-r0) // r1 + 1)
    if threshold > MANUAL_CHECK_CAP:
        raise _DischargeFailed(f"p = {modulus} needs {threshold} manual checks")

    checks = []
    for t in range(threshold):
        p_val = modulus(t)
        f_val = f(t)
        if p_val <= 0 or f_val % p_val != 0:
            checks.append(ManualCheck(t, p_val, f_val, False, None, None))
            continue
        q_val = f_val // p_val
        if (p_val - q_val) % 2 != 0:
            raise _DischargeFailed(
                f"p = {p_val} divides {f_val} with opposite parity at t = {t}"
            )
        checks.append(ManualCheck(t, p_val, f_val, True, q_val, True))
    return ResidueCase(
        theta, modulus, sign, quotient, remainder, threshold, tuple(checks), False
    )


def _quotient_ladder(f: LinPoly, lower: LinPoly, upper: LinPoly) -> QuotientLadder:
    magnitude = -f if f.c0 < 0 else f
    if magnitude.c0 <= 0 or magnitude.c1 < 0:
        raise _DischargeFailed("target polynomial can vanish or change sign")
    if always_gt(lower, magnitude):
        return QuotientLadder(magnitude, ("lower-bound-exceeds-magnitude",))
    steps = []
    if not always_gt(magnitude, upper):
        raise _DischargeFailed("quotient 1 not excluded: magnitude can meet the bracket")
    steps.append("magnitude-exceeds-upper-bound")
    if always_gt(2 * lower, magnitude):
        steps.append("magnitude-below-2x-lower")
        return QuotientLadder(magnitude, tuple(steps))
    if magnitude.c0 % 4 or magnitude.c1 % 4:
        raise _DischargeFailed("quotient 2 not excluded: coefficients not all divisible by 4")
    steps.append("coefficients-divisible-by-4")
    if always_gt(3 * lower, magnitude):
        steps.append("magnitude-below-3x-lower")
        return QuotientLadder(magnitude, tuple(steps))
    if magnitude.c1 % 3 or magnitude.c0 % 3 == 0:
        raise _DischargeFailed("quotient 3 not excluded: no 3-divisibility pattern")
    steps.append("free-term-coprime-to-3")
    if always_gt(4 * lower, magnitude):
        steps.append("magnitude-below-4x-lower")
        return QuotientLadder(magnitude, tuple(steps))
    raise _DischargeFailed("quotient 4 not excluded")


def _discharge(f: QuadPoly, lower: LinPoly, upper: LinPoly) -> Discharge:
    if always_gt(lower, upper):
        return EmptyInterval()
    if f.c2 == 0:
        return _quotient_ladder(LinPoly(f.c0, f.c1), lower, upper)
    if lower.c1 != upper.c1:
        raise _DischargeFailed("bracket slopes differ for a degree-2 target")
    slope = lower.c1
    if slope <= 0:
        raise _DischargeFailed("bracket slope is not positive")
    if f.c2 % slope != 0:
        raise _DischargeFailed("leading coefficient not divisible by the bracket slope")
    cases = tuple(
        _residue_case(f, slope, theta) for theta in range(lower.c0, upper.c0 + 1)
    )
    return ResidueEnumeration(cases)


def certify_no_divisor(
    t1: LinPoly,
    t2: LinPoly,
    t3: LinPoly,
    t4: LinPoly,
    g1: LinPoly,
    g2: LinPoly,
    g3: LinPoly,
    g4: LinPoly,
    case: str = "case",
) -> CaseCertificate:
    """Certify that F = t1*t2 + t3*t4 admits no feasible divisor for any t >= 0.

    The four threshold arguments bound p from below (g1 with +F, g2 with -F)
    and above (g3 with +F, g4 with -F).  Any single (lower, upper) pair is a
    sound relaxation since a feasible p must respect all four, so every
    combination is tried and the first discharge wins.
    """
    fundament = lin_mul(t1, t2) + lin_mul(t3, t4)
    approximations: list[GApprox] = []
    lowers: list[LinPoly] = []
    uppers: list[LinPoly] = []
    failures: list[str] = []
    for kind, c1, c2 in (
        ("lower", fundament, g1),
        ("lower", -fundament, g2),
        ("upper", fundament, g3),
        ("upper", -fundament, g4),
    ):
        try:
            approx = _g_approx(kind, c1, c2)
        except CertifierInapplicable as exc:
            failures.append(f"{kind} bound via {c2}: {exc.reason}")
            continue
        approximations.append(approx)
        (lowers if kind == "lower" else uppers).append(approx.bound)
    if not lowers or not uppers:
        raise CertifierInapplicable("; ".join(failures), case=case, step="bounds")

    # Tightest bracket first: eventually-largest lower bound, eventually-
    # smallest upper bound.  Any pair is sound, so the rest stay as fallbacks.
    lowers.sort(key=lambda p: (-p.c1, -p.c0))
    uppers.sort(key=lambda p: (p.c1, p.c0))
    for lower in lowers:
        for upper in uppers:
            try:
                discharge = _discharge(fundament, lower, upper)
            except _DischargeFailed as exc:
                message = f"[{lower}, {upper}]: {exc}"
                if message not in failures:
                    failures.append(message)
                continue
            return CaseCertificate(
                case, fundament, lower, upper, discharge, tuple(approximations)
            )
    raise CertifierInapplicable("; ".join(failures), case=case, step="discharge")


@dataclass(frozen=True)
class SFamilySpec:
    """Starlike family S(b1(t), ..., bk(t)) with linear branch forms."""

    branches: tuple[LinPoly, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "branches", tuple(self.branches))
        if len(self.branches) < 3:
            raise ValueError("a starlike family needs at least 3 branch forms")
        for b in self.branches:
            if b.c0 < 1 or b.c1 < 0:
                raise ValueError(f"branch form {b} needs a positive free term and nonnegative slope")

    def order(self) -> LinPoly:
        total = LinPoly(1, 0)
        for b in self.branches:
            total = total + b
        return total

    def instantiate(self, t: int) -> StarlikeSpec:
        return StarlikeSpec(tuple(b(t) for b in self.branches))

    def __str__(self) -> str:
        return "S(" + ", ".join(str(b) for b in self.branches) + ")"


@dataclass(frozen=True)
class HFamilySpec:
    """Double starlike family H(c(t); a1(t), a2(t); b1(t), b2(t))."""

    c: LinPoly
    a_branches: tuple[LinPoly, LinPoly]
    b_branches: tuple[LinPoly, LinPoly]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a_branches", tuple(self.a_branches))
        object.__setattr__(self, "b_branches", tuple(self.b_branches))
        if len(self.a_branches) != 2 or len(self.b_branches) != 2:
            raise ValueError("an H family carries exactly two branch forms per hub")
        for form in (self.c, *self.a_branches, *self.b_branches):
            if form.c0 < 1 or form.c1 < 0:
                raise ValueError(f"form {form} needs a positive free term and nonnegative slope")

    def order(self) -> LinPoly:
        total = self.c + LinPoly(1, 0)
        for b in self.a_branches + self.b_branches:
            total = total + b
        return total

    def instantiate(self, t: int) -> DoubleStarlikeSpec:
        return DoubleStarlikeSpec(
            self.c(t),
            tuple(b(t) for b in self.a_branches),
            tuple(b(t) for b in self.b_branches),
        )

    def __str__(self) -> str:
        return "H({}; {}, {}; {}, {})".format(
            self.c, *self.a_branches, *self.b_branches
        )


FamilySpec = SFamilySpec | HFamilySpec


@dataclass(frozen=True)
class FamilyCertificate:
    family: FamilySpec
    order: LinPoly
    attestations: tuple[str, ...]
    cases: tuple[CaseCertificate, ...]


def _attest_even_order(order: LinPoly) -> None:
    if order.c0 % 2 or order.c1 % 2:
        raise CertifierInapplicable(
            f"family order {order} is not even for every t", step="preconditions"
        )


def _attest_below_half(form: LinPoly, half: LinPoly, what: str) -> None:
    if not (always_ge(half, form) and form.c0 < half.c0):
        raise CertifierInapplicable(
            f"{what} {form} is not strictly below half the order", step="preconditions"
        )


def _attest_strictly_above(first: LinPoly, second: LinPoly, what: str) -> None:
    if not (always_ge(first, second) and first.c0 > second.c0):
        raise CertifierInapplicable(
            f"{what}: {first} does not strictly dominate {second}", step="preconditions"
        )


def certify_starlike_family(fam: SFamilySpec) -> FamilyCertificate:
    """Certify every member of a starlike family, or raise CertifierInapplicable."""
    order = fam.order()
    one = LinPoly(1, 0)
    _attest_even_order(order)
    half = LinPoly(order.c0 // 2, order.c1 // 2)
    for first, second in zip(fam.branches, fam.branches[1:]):
        _attest_strictly_above(first, second, "branch ordering")
    for branch in fam.branches:
        _attest_below_half(branch, half, "branch")
    attestations = ("even-order", "branches-strictly-descending", "branches-below-half-order")

    zero = LinPoly(0, 0)
    cases = []
    branches = fam.branches
    for x in range(len(branches)):
        for y in range(x + 1, len(branches)):
            bi, bj = branches[x], branches[y]
            cases.append(
                certify_no_divisor(
                    order - one - bi - bj,
                    bj - bi,
                    zero,
                    zero,
                    order + one - 2 * bi,
                    order + one - 2 * bj,
                    order - one,
                    order - one,
                    case=f"alpha({x + 1},{y + 1})",
                )
            )
    return FamilyCertificate(fam, order, attestations, tuple(cases))


def certify_h_family(fam: HFamilySpec) -> FamilyCertificate:
    """Certify every member of an H family, or raise CertifierInapplicable."""
    order = fam.order()
    one = LinPoly(1, 0)
    _attest_even_order(order)
    half = LinPoly(order.c0 // 2, order.c1 // 2)
    a1, a2 = fam.a_branches
    b1, b2 = fam.b_branches
    _attest_strictly_above(a1, a2, "first-hub branch ordering")
    _attest_strictly_above(b1, b2, "second-hub branch ordering")
    for branch in (a1, a2, b1, b2):
        _attest_below_half(branch, half, "branch")
    a_star = a1 + a2
    b_star = b1 + b2
    hub_weight = a_star + one
    if not (always_ge(hub_weight, half) and hub_weight.c0 > half.c0):
        raise CertifierInapplicable(
            f"1 + first-hub total {hub_weight} does not strictly exceed half the order",
            step="preconditions",
        )
    attestations = (
        "even-order",
        "branches-strictly-descending",
        "branches-below-half-order",
        "first-hub-total-above-half-order",
    )

    zero = LinPoly(0, 0)
    cases = [
        certify_no_divisor(
            order - one - a1 - a2,
            a2 - a1,
            zero,
            zero,
            order + one - 2 * a1,
            order + one - 2 * a2,
            order - one,
            order - one,
            case="alpha(1,2)",
        ),
        certify_no_divisor(
            order - one - b1 - b2,
            b2 - b1,
            zero,
            zero,
            order + one - 2 * b1,
            order + one - 2 * b2,
            order - one,
            order - one,
            case="beta(1,2)",
        ),
    ]
    for i, ai in enumerate(fam.a_branches, start=1):
        cases.append(
            certify_no_divisor(
                order - one - ai - a_star,
                a_star - ai,
                zero,
                zero,
                order + one - 2 * ai,
                2 * a_star - order + LinPoly(3, 0),
                order - one,
                2 * a_star + 2 * fam.c - order + one,
                case=f"gamma({i})",
            )
        )
    for i, ai in enumerate(fam.a_branches, start=1):
        for j, bj in enumerate(fam.b_branches, start=1):
            cases.append(
                certify_no_divisor(
                    order - one - ai - bj,
                    bj - ai,
                    fam.c,
                    a_star - b_star,
                    order + one - 2 * ai,
                    order + one - 2 * bj,
                    order - one,
                    order - one,
                    case=f"delta({i},{j})",
                )
            )
    return FamilyCertificate(fam, order, attestations, tuple(cases))


def certify_family(fam: FamilySpec) -> FamilyCertificate:
    if isinstance(fam, SFamilySpec):
        return certify_starlike_family(fam)
    return certify_h_family(fam)


def _shift(p: LinPoly, s: int) -> LinPoly:
    return LinPoly(p.c0 + p.c1 * s, p.c1)


def shift_family(fam: FamilySpec, s: int) -> tuple[FamilySpec, list[TreeSpec]]:
    """Substitute t <- t + s; returns the shifted family plus the concrete
    specs for t = 0..s-1 which the caller must decide individually."""
    if s < 0:
        raise ValueError("shift must be nonnegative")
    base = [fam.instantiate(t) for t in range(s)]
    if isinstance(fam, SFamilySpec):
        shifted: FamilySpec = SFamilySpec(tuple(_shift(b, s) for b in fam.branches))
    else:
        shifted = HFamilySpec(
            _shift(fam.c, s),
            tuple(_shift(b, s) for b in fam.a_branches),
            tuple(_shift(b, s) for b in fam.b_branches),
        )
    return shifted, base


# -- family file format -------------------------------------------------------
#
#   S | a1,b1 a2,b2 ... ak,bk
#   H | c0,c1 | a10,a11 a20,a21 | b10,b11 b20,b21
#
# where each x,y token is the linear form x + y*t.  Blank lines and lines
# starting with '#' are skipped when reading whole files.


def _parse_form(token: str) -> LinPoly:
    parts = token.split(",")
    if len(parts) != 2:
        raise ValueError(f"malformed linear form {token!r}: expected 'c0,c1'")
    return LinPoly(int(parts[0]), int(parts[1]))


def parse_family_line(line: str) -> FamilySpec:
    parts = [p.strip() for p in line.strip().split("|")]
    if parts[0] == "S" and len(parts) == 2:
        return SFamilySpec(tuple(_parse_form(tok) for tok in parts[1].split()))
    if parts[0] == "H" and len(parts) == 4:
        a_forms = tuple(_parse_form(tok) for tok in parts[2].split())
        b_forms = tuple(_parse_form(tok) for tok in parts[3].split())
        if len(a_forms) != 2 or len(b_forms) != 2:
            raise ValueError("an H family line needs exactly two forms per hub")
        return HFamilySpec(_parse_form(parts[1]), a_forms, b_forms)
    raise ValueError(f"malformed family line {line!r}")


def format_family_line(fam: FamilySpec) -> str:
    def form(p: LinPoly) -> str:
        return f"{p.c0},{p.c1}"

    if isinstance(fam, SFamilySpec):
        return "S | " + " ".join(form(b) for b in fam.branches)
    return "H | {} | {} | {}".format(
        form(fam.c),
        " ".join(form(b) for b in fam.a_branches),
        " ".join(form(b) for b in fam.b_branches),
    )


def parse_family_file(text: str) -> list[FamilySpec]:
    families = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        families.append(parse_family_line(stripped))
    return families


# -- JSON shape of certificates ----------------------------------------------


def _lin(p: LinPoly) -> list[int]:
    return [p.c0, p.c1]


def _quad(p: QuadPoly) -> list[int]:
    return [p.c0, p.c1, p.c2]


def _approx_to_dict(a: GApprox) -> dict[str, Any]:
    return {
        "kind": a.kind,
        "c1": _quad(a.c1),
        "c2": _lin(a.c2),
        "sqrt_arg": _quad(a.sqrt_arg),
        "sqrt_bound": _lin(a.sqrt_bound),
        "bound": _lin(a.bound),
    }


def _discharge_to_dict(d: Discharge) -> dict[str, Any]:
    if isinstance(d, EmptyInterval):
        return {"method": d.method}
    if isinstance(d, QuotientLadder):
        return {"method": d.method, "magnitude": _lin(d.magnitude), "steps": list(d.steps)}
    return {
        "method": d.method,
        "cases": [
            {
                "theta": rc.theta,
                "modulus": _lin(rc.modulus),
                "sign": rc.sign,
                "quotient": _lin(rc.quotient),
                "remainder": _lin(rc.remainder),
                "threshold": rc.threshold,
                "parity_discharge": rc.parity_discharge,
                "checks": [
                    {
                        "t": ch.t,
                        "p": ch.p,
                        "f": ch.f,
                        "divides": ch.divides,
                        "quotient": ch.quotient,
                        "parity_matched": ch.parity_matched,
                    }
                    for ch in rc.checks
                ],
            }
            for rc in d.cases
        ],
    }


def certificate_to_dict(cert: FamilyCertificate) -> dict[str, Any]:
    return {
        "family": format_family_line(cert.family),
        "order": _lin(cert.order),
        "attestations": list(cert.attestations),
        "cases": [
            {
                "case": c.case,
                "fundament": _quad(c.fundament),
                "lower": _lin(c.lower),
                "upper": _lin(c.upper),
                "discharge": _discharge_to_dict(c.discharge),
                "approximations": [_approx_to_dict(a) for a in c.approximations],
            }
            for c in cert.cases
        ],
    }


def _lin_from(v: Iterable[int]) -> LinPoly:
    c0, c1 = v
    return LinPoly(int(c0), int(c1))


def _quad_from(v: Iterable[int]) -> QuadPoly:
    c0, c1, c2 = v
    return QuadPoly(int(c0), int(c1), int(c2))


def _discharge_from_dict(d: dict[str, Any]) -> Discharge:
    method = d["method"]
    if method == EmptyInterval.method:
        return EmptyInterval()
    if method == QuotientLadder.method:
        return QuotientLadder(_lin_from(d["magnitude"]), tuple(d["steps"]))
    cases = tuple(
        ResidueCase(
            int(rc["theta"]),
            _lin_from(rc["modulus"]),
            int(rc["sign"]),
            _lin_from(rc["quotient"]),
            _lin_from(rc["remainder"]),
            int(rc["threshold"]),
            tuple(
                ManualCheck(
                    int(ch["t"]),
                    int(ch["p"]),
                    int(ch["f"]),
                    bool(ch["divides"]),
                    None if ch["quotient"] is None else int(ch["quotient"]),
                    None if ch["parity_matched"] is None else bool(ch["parity_matched"]),
                )
                for ch in rc["checks"]
            ),
            bool(rc["parity_discharge"]),
        )
        for rc in d["cases"]
    )
    return ResidueEnumeration(cases)


def certificate_from_dict(data: dict[str, Any]) -> FamilyCertificate:
    cases = tuple(
        CaseCertificate(
            c["case"],
            _quad_from(c["fundament"]),
            _lin_from(c["lower"]),
            _lin_from(c["upper"]),
            _discharge_from_dict(c["discharge"]),
            tuple(
                GApprox(
                    a["kind"],
                    _quad_from(a["c1"]),
                    _lin_from(a["c2"]),
                    _quad_from(a["sqrt_arg"]),
                    _lin_from(a["sqrt_bound"]),
                    _lin_from(a["bound"]),
                )
                for a in c["approximations"]
            ),
        )
        for c in data["cases"]
    )
    return FamilyCertificate(
        parse_family_line(data["family"]),
        _lin_from(data["order"]),
        tuple(data["attestations"]),
        cases,
    )
