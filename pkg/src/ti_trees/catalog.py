"""Exhaustive enumeration of tree specs by order, with verdict rows.

Specs are emitted in lexicographic order of (order, descending branch
tuples) so catalogs are reproducible byte for byte.  Each double starlike
spec is emitted once per isomorphism class: the first hub carries the larger
branch total, with a lexicographic tiebreak when the totals agree and the
hubs have equally many branches.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Iterator

from .characterize import check_tree
from .transmission import is_ti_bruteforce
from .trees import DoubleStarlikeSpec, StarlikeSpec, TreeSpec, build_tree
from .verdicts import verdict_to_dict


def _partitions(total: int, parts: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Descending tuples of `parts` positive integers summing to `total`."""
    if max_part is None:
        max_part = total
    if parts == 1:
        if 1 <= total <= max_part:
            yield (total,)
        return
    first_hi = min(max_part, total - (parts - 1))
    for first in range(first_hi, 0, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def iter_starlike_specs(k: int, max_order: int) -> Iterator[StarlikeSpec]:
    if k < 3:
        raise ValueError("starlike enumeration needs k >= 3")
    for n in range(k + 1, max_order + 1):
        for branches in sorted(_partitions(n - 1, k)):
            yield StarlikeSpec(branches)


def iter_double_starlike_specs(
    k: int, m: int, max_order: int, max_c: int | None = None
) -> Iterator[DoubleStarlikeSpec]:
    if k < 2 or m < 2:
        raise ValueError("double starlike enumeration needs k, m >= 2")
    for n in range(k + m + 2, max_order + 1):
        c_hi = n - 1 - k - m
        if max_c is not None:
            c_hi = min(c_hi, max_c)
        for c in range(1, c_hi + 1):
            rows = []
            for a_sum in range(k, n - c - m):
                b_sum = n - 1 - c - a_sum
                if b_sum < m or a_sum < b_sum:
                    continue
                for a_parts in _partitions(a_sum, k):
                    for b_parts in _partitions(b_sum, m):
                        if a_sum == b_sum and k == m and a_parts < b_parts:
                            continue
                        rows.append((a_parts, b_parts))
            for a_parts, b_parts in sorted(rows):
                yield DoubleStarlikeSpec(c, a_parts, b_parts)


def catalog_row(spec: TreeSpec, verify: bool = False) -> dict[str, Any]:
    verdict = check_tree(spec)
    row: dict[str, Any] = {"spec": str(spec), "n": spec.order}
    row.update(verdict_to_dict(verdict))
    if verify:
        oracle = is_ti_bruteforce(build_tree(spec))
        row["oracle_is_ti"] = oracle.is_ti
        row["oracle_agrees"] = oracle.is_ti == verdict.is_ti
    return row


def catalog_rows(
    specs: Iterator[TreeSpec], verify: bool = False, jobs: int = 1
) -> Iterator[dict[str, Any]]:
    """Verdict rows in input order; `jobs` worker threads fan out the checks.

    A bounded window of in-flight futures keeps the output streaming even on
    very large enumerations.
    """
    if jobs <= 1:
        for spec in specs:
            yield catalog_row(spec, verify)
        return
    window: deque = deque()
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for spec in specs:
            window.append(pool.submit(catalog_row, spec, verify))
            if len(window) >= 8 * jobs:
                yield window.popleft().result()
        while window:
            yield window.popleft().result()
