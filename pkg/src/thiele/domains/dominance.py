"""Candidate domination: ``j`` dominates ``j'`` when ``N_j' ⊊ N_j``."""

from __future__ import annotations

from thiele.core import ApprovalMatrix


def supporter_masks(matrix: ApprovalMatrix) -> list[int]:
    """Supporter sets as bitmasks over voters."""
    masks = []
    for supporters in matrix.supporters_by_candidate:
        mask = 0
        for i in supporters:
            mask |= 1 << i
        masks.append(mask)
    return masks


def find_dominations(matrix: ApprovalMatrix) -> list[tuple[int, int]]:
    """All ``(dominator, dominated)`` pairs, in lexicographic order.

    Equal supporter sets are not a domination.
    """
    masks = supporter_masks(matrix)
    return [
        (j, jp)
        for j, big in enumerate(masks)
        for jp, small in enumerate(masks)
        if small != big and small & ~big == 0
    ]


def is_domination_free(matrix: ApprovalMatrix) -> bool:
    return not find_dominations(matrix)


def remove_dominated_columns(matrix: ApprovalMatrix):
    """Drop every dominated candidate; returns ``(submatrix, kept_columns)``."""
    dominated = {jp for _, jp in find_dominations(matrix)}
    kept = [j for j in range(matrix.m) if j not in dominated]
    return matrix.submatrix(candidates=kept), kept
