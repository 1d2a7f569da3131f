"""Verdict values: TI yes/no plus a machine-checkable witness on "no".

Every negative verdict names two distinct vertices with equal transmission,
so any "not TI" answer can be confirmed independently of the decision path
that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .trees import Side, VertexLabel


@dataclass(frozen=True)
class CollisionWitness:
    """Two distinct vertices sharing one transmission value."""

    label1: VertexLabel
    label2: VertexLabel
    transmission: int | None = None


@dataclass(frozen=True)
class EqualBranches:
    """Two branches of the same hub have identical lengths."""

    kind = "equal-branches"
    side: Side
    branch_i: int
    branch_j: int
    witness: CollisionWitness


@dataclass(frozen=True)
class LongBranch:
    """A branch reaches at least half the tree order."""

    kind = "long-branch"
    side: Side
    branch: int
    witness: CollisionWitness


@dataclass(frozen=True)
class SpineShort:
    """The first hub's branch total is too small relative to the order."""

    kind = "spine-short"
    witness: CollisionWitness


@dataclass(frozen=True)
class Collision:
    """A transmission collision located by a divisor (or oracle) search."""

    kind = "collision"
    witness: CollisionWitness


Reason = EqualBranches | LongBranch | SpineShort | Collision


@dataclass(frozen=True)
class Verdict:
    is_ti: bool
    reason: Reason | None = None

    def __post_init__(self) -> None:
        if self.is_ti and self.reason is not None:
            raise ValueError("a TI verdict carries no failure reason")
        if not self.is_ti and self.reason is None:
            raise ValueError("a negative verdict needs a witness")


def label_to_dict(label: VertexLabel) -> dict[str, Any]:
    return {
        "side": label.side.value,
        "branch": label.branch,
        "position": label.position,
        "name": str(label),
    }


def label_from_dict(d: dict[str, Any]) -> VertexLabel:
    return VertexLabel(Side(d["side"]), int(d["branch"]), int(d["position"]))


def witness_to_dict(w: CollisionWitness) -> dict[str, Any]:
    return {
        "label1": label_to_dict(w.label1),
        "label2": label_to_dict(w.label2),
        "transmission": w.transmission,
    }


def witness_from_dict(d: dict[str, Any]) -> CollisionWitness:
    tr = d.get("transmission")
    return CollisionWitness(
        label_from_dict(d["label1"]),
        label_from_dict(d["label2"]),
        None if tr is None else int(tr),
    )


def verdict_to_dict(verdict: Verdict) -> dict[str, Any]:
    out: dict[str, Any] = {"is_ti": verdict.is_ti}
    reason = verdict.reason
    if reason is None:
        return out
    info: dict[str, Any] = {"kind": reason.kind}
    if isinstance(reason, EqualBranches):
        info.update(side=reason.side.value, branch_i=reason.branch_i, branch_j=reason.branch_j)
    elif isinstance(reason, LongBranch):
        info.update(side=reason.side.value, branch=reason.branch)
    out["reason"] = info
    out["witness"] = witness_to_dict(reason.witness)
    return out


def verdict_from_dict(d: dict[str, Any]) -> Verdict:
    if d["is_ti"]:
        return Verdict(True)
    info = d["reason"]
    witness = witness_from_dict(d["witness"])
    kind = info["kind"]
    reason: Reason
    if kind == EqualBranches.kind:
        reason = EqualBranches(Side(info["side"]), int(info["branch_i"]), int(info["branch_j"]), witness)
    elif kind == LongBranch.kind:
        reason = LongBranch(Side(info["side"]), int(info["branch"]), witness)
    elif kind == SpineShort.kind:
        reason = SpineShort(witness)
    elif kind == Collision.kind:
        reason = Collision(witness)
    else:
        raise ValueError(f"unknown verdict reason kind {kind!r}")
    return Verdict(False, reason)
