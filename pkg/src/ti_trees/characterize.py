"""TI decisions for starlike and double starlike trees, with checkable witnesses.

A starlike tree is TI exactly when its branch lengths are distinct, every
branch is shorter than half the order, and for every branch pair the
associated target number

    alpha_ij = (n - 1 - Ai - Aj)(Aj - Ai)

admits no divisor p > sqrt(|alpha_ij|) satisfying two interval conditions
and a parity condition.  The double starlike criterion is the same shape
over four case families: branch pairs on either hub (alpha, beta), each
first-hub branch against the spine (gamma), and cross-hub pairs (delta).
Each case is decided exactly by ``diophantine.solve_by_divisors`` on an
equivalent box problem, and every divisor witness converts back into a pair
of equal-transmission vertices.

Branches are sorted internally (descending) so that the first member of each
pair is the longer branch; witnesses are reported in the caller's original
indexing and orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .diophantine import BoxDioProblem, DivisorWitness, c_star, solve_by_divisors
from .transmission import (
    closed_form_offsets_double,
    hub_transmission_double,
    hub_transmission_starlike,
    closed_form_offset_starlike,
)
from .trees import (
    DoubleStarlikeSpec,
    Side,
    StarlikeSpec,
    TreeSpec,
    VertexLabel,
    normalize_double_starlike,
)
from .verdicts import (
    Collision,
    CollisionWitness,
    EqualBranches,
    LongBranch,
    Reason,
    SpineShort,
    Verdict,
)


class CaseKind(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    DELTA = "delta"


@dataclass(frozen=True)
class CaseTarget:
    """One divisor case: its target number and the equivalent box problem.

    ``sum_bounds`` and ``diff_bounds`` are the required intervals for
    p + value/p and p - value/p.  Branch indices refer to the spec handed to
    the generating function (for double starlike targets: its normalized
    orientation).
    """

    kind: CaseKind
    i: int
    j: int | None
    value: int
    sum_bounds: tuple[int, int]
    diff_bounds: tuple[int, int]
    problem: BoxDioProblem

    def __post_init__(self) -> None:
        if c_star(self.problem) != self.value:
            raise ValueError(
                f"case target {self.kind.value}({self.i},{self.j}) does not "
                f"match its box problem"
            )

    def case_name(self) -> str:
        if self.j is None:
            return f"{self.kind.value}({self.i})"
        return f"{self.kind.value}({self.i},{self.j})"


def _ranked(branches: tuple[int, ...]) -> list[tuple[int, int]]:
    """(original 1-based index, length), longest first, index as tiebreak."""
    return sorted(
        ((i, a) for i, a in enumerate(branches, start=1)),
        key=lambda item: (-item[1], item[0]),
    )


def _find_duplicate(ranked: list[tuple[int, int]]) -> tuple[int, int, int] | None:
    for (oi, ai), (oj, aj) in zip(ranked, ranked[1:]):
        if ai == aj:
            lo, hi = sorted((oi, oj))
            return lo, hi, ai
    return None


def _ordered_witness(
    label1: VertexLabel, label2: VertexLabel, transmission: int
) -> CollisionWitness:
    if label2.sort_key() < label1.sort_key():
        label1, label2 = label2, label1
    return CollisionWitness(label1, label2, transmission)


def _alpha_like_target(
    kind: CaseKind, n: int, oi: int, ai: int, oj: int, aj: int, shift: int
) -> CaseTarget:
    value = (n - 1 - ai - aj) * (aj - ai) + shift
    problem = BoxDioProblem(n - 2 * ai - 1, n - 2 * aj - 1, shift, ai, aj)
    return CaseTarget(
        kind,
        oi,
        oj,
        value,
        (n + 1 - 2 * ai, n - 1),
        (n + 1 - 2 * aj, n - 1),
        problem,
    )


def case_targets_starlike(spec: StarlikeSpec) -> list[CaseTarget]:
    """All branch-pair targets, defined once lengths are distinct and short."""
    n = spec.order
    ranked = _ranked(spec.branches)
    if _find_duplicate(ranked) is not None:
        raise ValueError("case targets are undefined for repeated branch lengths")
    if 2 * ranked[0][1] >= n:
        raise ValueError("case targets are undefined for branches reaching n/2")
    targets = []
    for x in range(len(ranked)):
        for y in range(x + 1, len(ranked)):
            oi, ai = ranked[x]
            oj, aj = ranked[y]
            targets.append(_alpha_like_target(CaseKind.ALPHA, n, oi, ai, oj, aj, 0))
    return targets


def case_targets_double(spec: DoubleStarlikeSpec) -> list[CaseTarget]:
    """All alpha/beta/gamma/delta targets of the normalized orientation."""
    norm = normalize_double_starlike(spec)
    n = norm.order
    ranked_a = _ranked(norm.a_branches)
    ranked_b = _ranked(norm.b_branches)
    if _find_duplicate(ranked_a) is not None or _find_duplicate(ranked_b) is not None:
        raise ValueError("case targets are undefined for repeated branch lengths")
    a_star = norm.a_total
    if 2 * ranked_a[0][1] >= n or 2 * ranked_b[0][1] >= n or 2 * (1 + a_star) <= n:
        raise ValueError("case targets are undefined when a half-order condition fails")

    targets = []
    for x in range(len(ranked_a)):
        for y in range(x + 1, len(ranked_a)):
            oi, ai = ranked_a[x]
            oj, aj = ranked_a[y]
            targets.append(_alpha_like_target(CaseKind.ALPHA, n, oi, ai, oj, aj, 0))
    for x in range(len(ranked_b)):
        for y in range(x + 1, len(ranked_b)):
            oi, bi = ranked_b[x]
            oj, bj = ranked_b[y]
            targets.append(_alpha_like_target(CaseKind.BETA, n, oi, bi, oj, bj, 0))
    for oi, ai in ranked_a:
        value = (n - 1 - ai - a_star) * (a_star - ai)
        problem = BoxDioProblem(n - 2 * ai - 1, 2 * a_star - n + 1, 0, ai, norm.c)
        targets.append(
            CaseTarget(
                CaseKind.GAMMA,
                oi,
                None,
                value,
                (n + 1 - 2 * ai, n - 1),
                (2 * a_star - n + 3, 2 * a_star + 2 * norm.c - n + 1),
                problem,
            )
        )
    shift = norm.c * (a_star - norm.b_total)
    for oi, ai in ranked_a:
        for oj, bj in ranked_b:
            targets.append(_alpha_like_target(CaseKind.DELTA, n, oi, ai, oj, bj, shift))
    return targets


def scan_starlike_cases(
    spec: StarlikeSpec,
) -> list[tuple[CaseTarget, DivisorWitness | None]]:
    """Run the divisor search on every target; diagnostic, no early exit."""
    return [(t, solve_by_divisors(t.problem)) for t in case_targets_starlike(spec)]


def scan_double_cases(
    spec: DoubleStarlikeSpec,
) -> list[tuple[CaseTarget, DivisorWitness | None]]:
    return [(t, solve_by_divisors(t.problem)) for t in case_targets_double(spec)]


def check_starlike(spec: StarlikeSpec) -> Verdict:
    """Decide TI for a starlike tree; negative verdicts carry a witness pair."""
    n = spec.order
    hub_tr = hub_transmission_starlike(spec)
    ranked = _ranked(spec.branches)

    duplicate = _find_duplicate(ranked)
    if duplicate is not None:
        lo, hi, length = duplicate
        witness = _ordered_witness(
            VertexLabel(Side.A, lo, 1),
            VertexLabel(Side.A, hi, 1),
            hub_tr + (n - 2 * length),
        )
        return Verdict(False, EqualBranches(Side.A, lo, hi, witness))

    oi, ai = ranked[0]
    if 2 * ai >= n:
        witness = _ordered_witness(
            VertexLabel(Side.A, oi, 0),
            VertexLabel(Side.A, oi, 2 * ai + 1 - n),
            hub_tr,
        )
        return Verdict(False, LongBranch(Side.A, oi, witness))

    for target in case_targets_starlike(spec):
        found = solve_by_divisors(target.problem)
        if found is not None:
            transmission = hub_tr + closed_form_offset_starlike(
                spec, target.i, found.x
            )
            witness = _ordered_witness(
                VertexLabel(Side.A, target.i, found.x),
                VertexLabel(Side.A, target.j, found.y),
                transmission,
            )
            return Verdict(False, Collision(witness))
    return Verdict(True)


def _swap_sides_label(label: VertexLabel, c: int) -> VertexLabel:
    if label.side is Side.A:
        return VertexLabel(Side.B, label.branch, label.position)
    if label.side is Side.B:
        return VertexLabel(Side.A, label.branch, label.position)
    return VertexLabel(Side.SPINE, 0, c - label.position)


def _swap_sides_reason(reason: Reason, c: int) -> Reason:
    witness = reason.witness
    swapped = _ordered_witness(
        _swap_sides_label(witness.label1, c),
        _swap_sides_label(witness.label2, c),
        witness.transmission,
    )
    flip = {Side.A: Side.B, Side.B: Side.A}
    if isinstance(reason, EqualBranches):
        return EqualBranches(flip[reason.side], reason.branch_i, reason.branch_j, swapped)
    if isinstance(reason, LongBranch):
        return LongBranch(flip[reason.side], reason.branch, swapped)
    if isinstance(reason, SpineShort):
        return SpineShort(swapped)
    return Collision(swapped)


def check_double_starlike(spec: DoubleStarlikeSpec) -> Verdict:
    """Decide TI for a double starlike tree.

    Normalization (first hub carries the larger branch total) is applied
    internally; witnesses are remapped back to the caller's orientation.
    """
    norm = normalize_double_starlike(spec)
    verdict = _check_double_normalized(norm)
    if norm is not spec and verdict.reason is not None:
        verdict = Verdict(False, _swap_sides_reason(verdict.reason, spec.c))
    return verdict


def _check_double_normalized(spec: DoubleStarlikeSpec) -> Verdict:
    n = spec.order
    a_star = spec.a_total
    hub_tr = hub_transmission_double(spec)
    offsets = closed_form_offsets_double(spec)
    ranked_a = _ranked(spec.a_branches)
    ranked_b = _ranked(spec.b_branches)

    for side, ranked, base in (
        (Side.A, ranked_a, hub_tr),
        (Side.B, ranked_b, hub_tr + offsets.hub_gap),
    ):
        duplicate = _find_duplicate(ranked)
        if duplicate is not None:
            lo, hi, length = duplicate
            witness = _ordered_witness(
                VertexLabel(side, lo, 1),
                VertexLabel(side, hi, 1),
                base + (n - 2 * length),
            )
            return Verdict(False, EqualBranches(side, lo, hi, witness))

    for side, ranked, base in (
        (Side.A, ranked_a, hub_tr),
        (Side.B, ranked_b, hub_tr + offsets.hub_gap),
    ):
        oi, length = ranked[0]
        if 2 * length >= n:
            witness = _ordered_witness(
                VertexLabel(side, oi, 0),
                VertexLabel(side, oi, 2 * length + 1 - n),
                base,
            )
            return Verdict(False, LongBranch(side, oi, witness))
    if 2 * (1 + a_star) <= n:
        witness = _ordered_witness(
            VertexLabel(Side.SPINE, 0, 0),
            VertexLabel(Side.SPINE, 0, n + 1 - 2 * (1 + a_star)),
            hub_tr,
        )
        return Verdict(False, SpineShort(witness))

    for target in case_targets_double(spec):
        found = solve_by_divisors(target.problem)
        if found is None:
            continue
        if target.kind is CaseKind.BETA:
            transmission = hub_tr + offsets.hub_gap + offsets.b[target.i - 1][found.x]
            first = VertexLabel(Side.B, target.i, found.x)
            other = VertexLabel(Side.B, target.j, found.y)
        else:
            transmission = hub_tr + offsets.a[target.i - 1][found.x]
            first = VertexLabel(Side.A, target.i, found.x)
            if target.kind is CaseKind.ALPHA:
                other = VertexLabel(Side.A, target.j, found.y)
            elif target.kind is CaseKind.GAMMA:
                other = VertexLabel(Side.SPINE, 0, found.y)
            else:
                other = VertexLabel(Side.B, target.j, found.y)
        witness = _ordered_witness(first, other, transmission)
        return Verdict(False, Collision(witness))
    return Verdict(True)


def check_tree(spec: TreeSpec) -> Verdict:
    if isinstance(spec, StarlikeSpec):
        return check_starlike(spec)
    return check_double_starlike(spec)


def alkl_predicate(a2: int) -> bool:
    """Closed form for trees S(1, a2, a2+1) with a2 > 1: TI iff a2 avoids
    the exclusion values (k^2 - 1)/2 and (k^2 - 2)/2 for every k >= 3."""
    if a2 <= 1:
        raise ValueError("the closed form applies for a2 > 1")
    doubled = 2 * a2
    k = 3
    while k * k - 2 <= doubled:
        if doubled in (k * k - 1, k * k - 2):
            return False
        k += 1
    return True
