"""L/R labelings of zero entries and the small-matrix VCI refutation.

For fixed row and column orders the labeling conditions are a 2-SAT
instance over the zero entries (``True`` meaning ``L``):

(a) a zero with a 1 to its right cannot be L;
(b) a zero with a 1 below it cannot be R;
(c) L propagates to the zeros on its right;
(d) R propagates to the zeros below it.

(a) and (b) clash at one zero exactly when that zero breaks linear
consistency for the two orders, which is what lets the refutation restrict
itself to LC witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from thiele.core import ApprovalMatrix
from thiele.domains.lc import BRUTE_FORCE_LIMIT, precedence_graph
from thiele.errors import TooLarge

L = "L"
R = "R"


@dataclass(frozen=True)
class LrLabeling:
    """``labels[(voter, candidate)]`` is ``"L"`` or ``"R"``, in original indices."""

    row_order: tuple
    col_order: tuple
    labels: dict


def _two_sat(num_vars: int, implications: list[tuple[int, int]]) -> list[bool] | None:
    """Literal ``2v`` is ``v``, ``2v+1`` is its negation.  Kosaraju on the implication graph."""
    size = 2 * num_vars
    graph = [[] for _ in range(size)]
    rgraph = [[] for _ in range(size)]
    for a, b in implications:
        graph[a].append(b)
        rgraph[b].append(a)

    order, seen = [], [False] * size
    for root in range(size):
        if seen[root]:
            continue
        seen[root] = True
        stack = [(root, 0)]
        while stack:
            node, idx = stack.pop()
            if idx < len(graph[node]):
                stack.append((node, idx + 1))
                nxt = graph[node][idx]
                if not seen[nxt]:
                    seen[nxt] = True
                    stack.append((nxt, 0))
            else:
                order.append(node)

    comp = [-1] * size
    label = 0
    for root in reversed(order):
        if comp[root] != -1:
            continue
        comp[root] = label
        stack = [root]
        while stack:
            node = stack.pop()
            for nxt in rgraph[node]:
                if comp[nxt] == -1:
                    comp[nxt] = label
                    stack.append(nxt)
        label += 1

    # components come out in topological order of the condensation
    values = []
    for v in range(num_vars):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        values.append(comp[2 * v] > comp[2 * v + 1])
    return values


def lr_labeling_feasible(
    matrix: ApprovalMatrix, row_order: Sequence[int], col_order: Sequence[int]
) -> LrLabeling | None:
    """A labeling satisfying both closure conditions under the given orders, or None."""
    grid = [[int(c in matrix.approvals_by_voter[i]) for c in col_order] for i in row_order]
    n, m = len(grid), len(grid[0])
    var = {}
    for p in range(n):
        for q in range(m):
            if not grid[p][q]:
                var[(p, q)] = len(var)

    clauses = []
    for (p, q), v in var.items():
        pos, neg = 2 * v, 2 * v + 1
        if any(grid[p][q2] for q2 in range(q + 1, m)):
            clauses.append((pos, neg))
        if any(grid[p2][q] for p2 in range(p + 1, n)):
            clauses.append((neg, pos))
        # neighbours suffice: a 1 in between already forbids the label
        if (p, q + 1) in var:
            w = var[(p, q + 1)]
            clauses += [(pos, 2 * w), (2 * w + 1, neg)]
        if (p + 1, q) in var:
            w = var[(p + 1, q)]
            clauses += [(neg, 2 * w + 1), (2 * w, pos)]

    values = _two_sat(len(var), clauses)
    if values is None:
        return None
    labels = {
        (row_order[p], col_order[q]): L if values[v] else R for (p, q), v in var.items()
    }
    labeling = LrLabeling(tuple(row_order), tuple(col_order), labels)
    if not check_lr_labeling(matrix, labeling):
        raise AssertionError("2-SAT assignment violates the labeling conditions")
    return labeling


def check_lr_labeling(matrix: ApprovalMatrix, labeling: LrLabeling) -> bool:
    """Re-check both closure conditions directly on the ordered matrix."""
    rows, cols = labeling.row_order, labeling.col_order
    labels = labeling.labels
    zeros = {(i, c) for i in rows for c in cols if c not in matrix.approvals_by_voter[i]}
    if set(labels) != zeros or not set(labels.values()) <= {L, R}:
        return False
    for p, i in enumerate(rows):
        for q, c in enumerate(cols):
            tag = labels.get((i, c))
            if tag == L and any(labels.get((i, d)) != L for d in cols[q + 1 :]):
                return False
            if tag == R and any(labels.get((j, c)) != R for j in rows[p + 1 :]):
                return False
    return True


def _distinct_orders(keys: Sequence) -> list[tuple]:
    """Orders of ``range(len(keys))`` with equal keys kept in index order."""
    groups = {}
    for idx, key in enumerate(keys):
        groups.setdefault(key, []).append(idx)
    out = []
    for pattern in sorted(set(permutations(keys))):
        queues = {key: iter(idxs) for key, idxs in groups.items()}
        out.append(tuple(next(queues[key]) for key in pattern))
    return out


def _linear_extensions(succ, indeg, allowed_first):
    """All topological orders of a DAG, generated depth-first."""
    m = len(indeg)
    indeg = list(indeg)
    order = []

    def rec():
        if len(order) == m:
            yield tuple(order)
            return
        for c in range(m):
            if indeg[c] == 0 and c not in placed and allowed_first(c, order):
                placed.add(c)
                order.append(c)
                for d in succ[c]:
                    indeg[d] -= 1
                yield from rec()
                for d in succ[c]:
                    indeg[d] += 1
                order.pop()
                placed.discard(c)

    placed = set()
    yield from rec()


def refute_vci_small(matrix: ApprovalMatrix) -> bool:
    """True iff no row/column order pair admits an L/R labeling (so the matrix is not VCI).

    False is inconclusive.  Only LC witnesses can be labelable, so for each
    row order the column orders searched are the linear extensions of the
    LC precedence relation.  Identical rows (and identical columns) are
    interchangeable, so only one relative order of each group is tried.
    """
    if matrix.n > BRUTE_FORCE_LIMIT or matrix.m > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"refutation is limited to {BRUTE_FORCE_LIMIT}x{BRUTE_FORCE_LIMIT}")
    row_keys = [tuple(sorted(ballot)) for ballot in matrix.approvals_by_voter]
    col_keys = [tuple(sorted(sup)) for sup in matrix.supporters_by_candidate]
    first_twin = {}
    for c, key in enumerate(col_keys):
        first_twin.setdefault(key, []).append(c)

    def twin_ok(c, order):
        twins = first_twin[col_keys[c]]
        earlier = twins[: twins.index(c)]
        return all(t in order for t in earlier)

    for rows in _distinct_orders(row_keys):
        vpos = [0] * matrix.n
        for p, i in enumerate(rows):
            vpos[i] = p
        succ, indeg = precedence_graph(matrix, vpos)
        for cols in _linear_extensions(succ, indeg, twin_ok):
            if lr_labeling_feasible(matrix, rows, cols) is not None:
                return False
    return True
