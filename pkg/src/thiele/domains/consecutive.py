"""Consecutive-ones recognition (candidate-interval and voter-interval tests).

The family of row sets is split into overlap components (two sets overlap
when they meet and neither contains the other).  Within one component the
arrangement of its atoms is forced up to reversal, so it can be built by
inserting the sets one at a time in overlap order, refining an ordered
partition.  Components are laminar: the union of one lies inside a single
atom of another, or the two are disjoint.  Nesting the component
arrangements accordingly yields an order whenever one exists.
"""

from __future__ import annotations

from typing import Sequence

from thiele.core import ApprovalMatrix

COLUMNS = "columns"
ROWS = "rows"


def _overlap(a: frozenset, b: frozenset) -> bool:
    return bool(a & b) and not a <= b and not b <= a


def _components(sets: list[frozenset]) -> list[list[frozenset]]:
    """Overlap components, each listed in an order where every set overlaps an earlier one."""
    seen = [False] * len(sets)
    comps = []
    for start in range(len(sets)):
        if seen[start]:
            continue
        seen[start] = True
        order = [start]
        head = 0
        while head < len(order):
            cur = sets[order[head]]
            head += 1
            for other in range(len(sets)):
                if not seen[other] and _overlap(cur, sets[other]):
                    seen[other] = True
                    order.append(other)
        comps.append([sets[idx] for idx in order])
    return comps


def _arrange_component(comp: list[frozenset]) -> list[frozenset] | None:
    """Ordered partition of the component's union into atoms, or None."""
    seq = [comp[0]]
    union = set(comp[0])
    for t in comp[1:]:
        new = frozenset(t - union)
        hit = [idx for idx, cls in enumerate(seq) if cls & t]
        a, b = hit[0], hit[-1]
        if hit != list(range(a, b + 1)):
            return None
        if any(not seq[idx] <= t for idx in range(a + 1, b)):
            return None
        if not new:
            if a == b:
                return None
            seq = (
                seq[:a]
                + [seq[a] - t, seq[a] & t]
                + seq[a + 1 : b]
                + [seq[b] & t, seq[b] - t]
                + seq[b + 1 :]
            )
        elif b == len(seq) - 1 and seq[b] <= t or a == b == len(seq) - 1:
            # new atoms go to the right end
            seq = seq[:a] + [seq[a] - t, seq[a] & t] + seq[a + 1 :] + [new]
        elif a == 0 and (seq[a] <= t or a == b):
            seq = [new] + seq[:b] + [seq[b] & t, seq[b] - t] + seq[b + 1 :]
        else:
            return None
        seq = [cls for cls in seq if cls]
        union |= new
    return seq


def _c1p_order(ground: int, sets: Sequence[frozenset]) -> list[int] | None:
    family = sorted({frozenset(s) for s in sets if len(s) >= 2}, key=lambda s: sorted(s))
    comps = []
    for comp in _components(family):
        seq = _arrange_component(comp)
        if seq is None:
            return None
        comps.append((frozenset().union(*seq), seq))

    # parent: the component owning the smallest atom that contains this union
    children = {idx: {} for idx in range(len(comps))}
    roots = []
    for idx, (union, _) in enumerate(comps):
        best = None
        for pidx, (punion, pseq) in enumerate(comps):
            if pidx == idx:
                continue
            for pos, atom in enumerate(pseq):
                if union <= atom:
                    key = (len(atom), len(punion))
                    if best is None or key < best[0]:
                        best = (key, pidx, pos)
        if best is None:
            roots.append(idx)
        else:
            children[best[1]].setdefault(best[2], []).append(idx)

    def expand(idx: int) -> list[int]:
        out = []
        for pos, atom in enumerate(comps[idx][1]):
            placed = set()
            for child in sorted(children[idx].get(pos, []), key=lambda c: min(comps[c][0])):
                block = expand(child)
                out.extend(block)
                placed.update(block)
            out.extend(sorted(atom - placed))
        return out

    order = []
    covered = set()
    for root in sorted(roots, key=lambda r: min(comps[r][0])):
        block = expand(root)
        order.extend(block)
        covered.update(block)
    order.extend(e for e in range(ground) if e not in covered)
    return order


def has_consecutive_ones(sets: Sequence[frozenset], order: Sequence[int]) -> bool:
    """True iff every set occupies a contiguous stretch of ``order``."""
    pos = {e: p for p, e in enumerate(order)}
    for s in sets:
        if s:
            spots = [pos[e] for e in s]
            if max(spots) - min(spots) + 1 != len(s):
                return False
    return True


def consecutive_ones_order(matrix: ApprovalMatrix, axis: str = COLUMNS) -> tuple | None:
    """A permutation witnessing consecutive ones, or None.

    ``axis="columns"`` reorders candidates so every ballot is contiguous (CI);
    ``axis="rows"`` reorders voters so every supporter set is contiguous (VI).
    """
    if axis == COLUMNS:
        ground, sets = matrix.m, matrix.approvals_by_voter
    elif axis == ROWS:
        ground, sets = matrix.n, matrix.supporters_by_candidate
    else:
        raise ValueError(f"axis must be 'columns' or 'rows', not {axis!r}")
    order = _c1p_order(ground, sets)
    if order is None:
        return None
    if sorted(order) != list(range(ground)) or not has_consecutive_ones(sets, order):
        raise AssertionError(f"consecutive-ones order {order} failed verification")
    return tuple(order)
