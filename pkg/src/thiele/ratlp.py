"""Exact rational linear programming.

Problems are ``maximize c.x  s.t.  A x = b,  lo <= x <= hi`` with rational
data.  :func:`solve` runs a revised simplex over exact rationals and always
returns a basic (vertex) solution; :func:`verify_vertex` certifies vertices
independently by a rank computation.

Both simplex variants keep an explicit sparse basis inverse (row dictionaries
plus a column index) and start from a crash basis of singleton columns, with
artificial variables only on rows that have none.

* When every variable is boxed the bounded dual simplex is used.  Any basis
  is dual feasible once each nonbasic variable sits at the bound its reduced
  cost points to, so no phase 1 is needed.  The Thiele LP is heavily primal
  degenerate, which stalls the primal method but not this one.
* Otherwise a two-phase bounded primal simplex with Dantzig pricing runs.

Both fall back to Bland's rule after a streak of degenerate pivots and only
leave it after a pivot that makes strict progress, so neither can cycle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

try:  # gmpy2 is an order of magnitude faster than fractions in the pivot loop
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

# degenerate pivots tolerated under Dantzig pricing before switching to Bland
DEGENERATE_STREAK = 25


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


@dataclass(frozen=True)
class LpProblem:
    """Equality-constrained LP with box bounds, maximization form.

    ``eq_constraints`` holds ``(coefficients, rhs)`` pairs; coefficients are
    either a dense sequence of length ``num_vars`` or a sparse mapping
    ``{var: coef}``.  They are normalized to sparse dicts.  An upper bound of
    ``None`` means unbounded above.
    """

    num_vars: int
    objective: tuple
    eq_constraints: tuple = ()
    var_bounds: tuple | None = None

    def __post_init__(self):
        n = self.num_vars
        if len(self.objective) != n:
            raise ValueError(f"objective has {len(self.objective)} entries, expected {n}")
        rows = []
        for coeffs, rhs in self.eq_constraints:
            if isinstance(coeffs, Mapping):
                items = coeffs.items()
            else:
                if len(coeffs) != n:
                    raise ValueError(f"constraint has {len(coeffs)} coefficients, expected {n}")
                items = enumerate(coeffs)
            row = {}
            for j, a in items:
                if not 0 <= j < n:
                    raise ValueError(f"constraint references variable {j} outside [0, {n})")
                a = Fraction(a)
                if a:
                    row[j] = a
            rows.append((row, Fraction(rhs)))
        bounds = self.var_bounds
        if bounds is None:
            bounds = [(0, 1)] * n
        if len(bounds) != n:
            raise ValueError(f"{len(bounds)} bounds given for {n} variables")
        norm = []
        for lo, hi in bounds:
            lo = Fraction(lo)
            hi = None if hi is None else Fraction(hi)
            if hi is not None and lo > hi:
                raise ValueError(f"empty bound interval [{lo}, {hi}]")
            norm.append((lo, hi))
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "eq_constraints", tuple(rows))
        object.__setattr__(self, "var_bounds", tuple(norm))

    def dense_rows(self) -> list[list[Fraction]]:
        out = []
        for row, _ in self.eq_constraints:
            dense = [Fraction(0)] * self.num_vars
            for j, a in row.items():
                dense[j] = a
            out.append(dense)
        return out

    def objective_value(self, point: Sequence) -> Fraction:
        return sum((c * Fraction(v) for c, v in zip(self.objective, point) if c), Fraction(0))


@dataclass(frozen=True)
class LpSolution:
    status: Status
    point: tuple | None = None
    objective_value: Fraction | None = None
    basis: tuple = ()
    at_upper: tuple = ()
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class _Simplex:
    def __init__(self, problem: LpProblem, dual: bool):
        self.n = n = problem.num_vars
        self.m = m = len(problem.eq_constraints)
        self.cols = [dict() for _ in range(n)]
        b = []
        for r, (row, rhs) in enumerate(problem.eq_constraints):
            for j, a in row.items():
                self.cols[j][r] = _Q(a)
            b.append(_Q(rhs))
        self.b = b
        self.lo = [_Q(lo) for lo, _ in problem.var_bounds]
        self.hi = [None if hi is None else _Q(hi) for _, hi in problem.var_bounds]
        self.c = [_Q(c) for c in problem.objective]
        self.x = list(self.lo)
        self.pivots = 0
        self.dual = dual

        resid = list(b)
        for j in range(n):
            if self.x[j]:
                for r, a in self.cols[j].items():
                    resid[r] -= a * self.x[j]

        # crash: a column with a single nonzero becomes the initial basic
        # variable of its row; the primal method also needs its value in bounds
        self.basis = [None] * m
        self.basic_pos = {}
        for j in range(n):
            if len(self.cols[j]) != 1:
                continue
            (r, a), = self.cols[j].items()
            if self.basis[r] is not None:
                continue
            v = self.x[j] + resid[r] / a
            if dual or (v >= self.lo[j] and (self.hi[j] is None or v <= self.hi[j])):
                self.basis[r] = j
                self.basic_pos[j] = r
                self.x[j] = v
                resid[r] = _Q(0)

        self.artificial = []
        for r in range(m):
            if self.basis[r] is not None:
                continue
            j = len(self.cols)
            sign = _Q(1) if resid[r] >= 0 else _Q(-1)
            self.cols.append({r: sign})
            self.lo.append(_Q(0))
            # the dual method keeps artificials fixed at zero from the start
            self.hi.append(_Q(0) if dual else None)
            self.c.append(_Q(0))
            self.x.append(resid[r] * sign)
            self.basis[r] = j
            self.basic_pos[j] = r
            self.artificial.append(j)

        self.rows = [dict() for _ in range(m)]
        for j, col in enumerate(self.cols):
            for r, a in col.items():
                self.rows[r][j] = a

        # basis inverse as row dicts plus, per column, the rows holding a nonzero
        self.binv = []
        self.colidx = [set() for _ in range(m)]
        for r in range(m):
            a = self.cols[self.basis[r]][r]
            self.binv.append({r: 1 / a})
            self.colidx[r].add(r)

    # ------------------------------------------------------------------
    def _ftran(self, col):
        acc = {}
        binv = self.binv
        for s, a in col.items():
            for r in self.colidx[s]:
                acc[r] = acc.get(r, 0) + binv[r][s] * a
        return {r: v for r, v in acc.items() if v}

    def _duals(self, cost):
        pi = {}
        for r, j in enumerate(self.basis):
            cb = cost[j]
            if cb:
                for s, v in self.binv[r].items():
                    pi[s] = pi.get(s, 0) + cb * v
        return pi

    def _pivot_binv(self, p, alpha):
        binv, colidx = self.binv, self.colidx
        ap = alpha[p]
        rowp = {s: v / ap for s, v in binv[p].items()}
        binv[p] = rowp
        for r, f in alpha.items():
            if r == p:
                continue
            row = binv[r]
            for s, v in rowp.items():
                nv = row.get(s, 0) - f * v
                if nv:
                    if s not in row:
                        colidx[s].add(r)
                    row[s] = nv
                elif s in row:
                    del row[s]
                    colidx[s].discard(r)

    def _reduced_costs(self, cost):
        pi = self._duals(cost)
        d = list(cost)
        for j in range(len(self.cols)):
            if j in self.basic_pos:
                d[j] = _Q(0)
                continue
            for r, a in self.cols[j].items():
                p = pi.get(r)
                if p:
                    d[j] -= p * a
        return d

    def _pivot_row(self, p):
        """Row ``p`` of ``B^-1 A`` as a sparse dict over all columns."""
        acc = {}
        rows = self.rows
        for s, v in self.binv[p].items():
            for j, a in rows[s].items():
                acc[j] = acc.get(j, 0) + v * a
        return {j: v for j, v in acc.items() if v}

    def _eligible(self, j, dj):
        if not dj or j in self.basic_pos or j >= self.limit:
            return False
        if dj > 0:
            return self.x[j] != self.hi[j]
        return self.x[j] != self.lo[j]

    def run(self, cost, limit):
        """Maximize ``cost`` over variables ``< limit`` from the current basis."""
        self.limit = limit
        d = self._reduced_costs(cost)
        x, lo, hi = self.x, self.lo, self.hi
        eligible = {j for j in range(limit) if self._eligible(j, d[j])}
        bland = False
        streak = 0
        while True:
            if not eligible:
                return Status.OPTIMAL
            if bland:
                q = min(eligible)
            else:
                # Dantzig: largest |d_j|, ties to the lowest index
                q = min(eligible, key=lambda j: (-abs(d[j]), j))
            d_sign = 1 if x[q] == lo[q] else -1
            alpha = self._ftran(self.cols[q])

            theta = None if hi[q] is None else hi[q] - lo[q]
            leave_row = None
            leave_var = None
            for r, a in alpha.items():
                j = self.basis[r]
                rate = a * d_sign  # x_B[r] decreases at this rate
                if rate > 0:
                    ratio = (x[j] - lo[j]) / rate
                elif hi[j] is not None:
                    ratio = (hi[j] - x[j]) / (-rate)
                else:
                    continue
                if theta is None or ratio < theta or (
                    ratio == theta and leave_var is not None and j < leave_var
                ):
                    theta = ratio
                    leave_row = r
                    leave_var = j
            if theta is None:
                return Status.UNBOUNDED

            self.pivots += 1
            if theta:
                for r, a in alpha.items():
                    x[self.basis[r]] -= d_sign * theta * a
                x[q] += d_sign * theta
            if leave_row is None:
                # bound flip: q stays nonbasic at its other bound
                eligible.discard(q)
            else:
                j = self.basis[leave_row]
                # snap the leaving variable exactly onto the bound it reached
                x[j] = lo[j] if alpha[leave_row] * d_sign > 0 else hi[j]
                row = self._pivot_row(leave_row)
                step = d[q] / alpha[leave_row]
                for col, v in row.items():
                    d[col] -= step * v
                d[q] = _Q(0)
                self._pivot_binv(leave_row, alpha)
                del self.basic_pos[j]
                self.basis[leave_row] = q
                self.basic_pos[q] = leave_row
                eligible.discard(q)
                for col in row:
                    if self._eligible(col, d[col]):
                        eligible.add(col)
                    else:
                        eligible.discard(col)

            if theta:
                bland = False
                streak = 0
            else:
                streak += 1
                if streak >= DEGENERATE_STREAK:
                    bland = True

    def _basic_values(self):
        """Recompute basic values from the nonbasic ones: ``x_B = B^-1 (b - N x_N)``."""
        resid = [_Q(0)] * self.m
        for r, row in enumerate(self.rows):
            total = self.b[r]
            for j, a in row.items():
                if j not in self.basic_pos and self.x[j]:
                    total -= a * self.x[j]
            resid[r] = total
        for r in range(self.m):
            self.x[self.basis[r]] = sum(
                (v * resid[s] for s, v in self.binv[r].items()), _Q(0)
            )

    def dual_run(self):
        """Bounded dual simplex; every basis is dual feasible once each nonbasic
        variable sits at the bound its reduced cost points to."""
        x, lo, hi = self.x, self.lo, self.hi
        d = self._reduced_costs(self.c)
        for j in range(len(self.cols)):
            if j not in self.basic_pos:
                x[j] = hi[j] if d[j] > 0 else lo[j]
        self._basic_values()
        bland = False
        streak = 0
        while True:
            leave_row = None
            worst = 0
            for r, j in enumerate(self.basis):
                v = x[j]
                if v < lo[j]:
                    gap = lo[j] - v
                elif v > hi[j]:
                    gap = v - hi[j]
                else:
                    continue
                if bland:
                    if leave_row is None or j < self.basis[leave_row]:
                        leave_row = r
                elif gap > worst or (gap == worst and j < self.basis[leave_row]):
                    worst = gap
                    leave_row = r
            if leave_row is None:
                return Status.OPTIMAL
            p = leave_row
            j_out = self.basis[p]
            if x[j_out] < lo[j_out]:
                target, direction = lo[j_out], 1
            else:
                target, direction = hi[j_out], -1
            row = self._pivot_row(p)

            q = None
            best = None
            for j, a in row.items():
                if j in self.basic_pos or lo[j] == hi[j]:
                    continue
                at_lower = x[j] == lo[j]
                if (a * direction < 0) != at_lower:
                    continue
                ratio = abs(d[j] / a)
                if best is None or ratio < best or (ratio == best and j < q):
                    best = ratio
                    q = j
            if q is None:
                return Status.INFEASIBLE

            self.pivots += 1
            alpha = self._ftran(self.cols[q])
            delta = (x[j_out] - target) / alpha[p]
            for r, a in alpha.items():
                x[self.basis[r]] -= a * delta
            x[q] += delta
            x[j_out] = target
            step = d[q] / alpha[p]
            if step:
                for col, v in row.items():
                    d[col] -= step * v
            d[q] = _Q(0)
            self._pivot_binv(p, alpha)
            del self.basic_pos[j_out]
            self.basis[p] = q
            self.basic_pos[q] = p

            if step:
                bland = False
                streak = 0
            else:
                streak += 1
                if streak >= DEGENERATE_STREAK:
                    bland = True

    def solve(self) -> Status:
        if self.dual:
            return self.dual_run()
        n_total = len(self.cols)
        if self.artificial:
            phase1 = [_Q(0)] * n_total
            for j in self.artificial:
                phase1[j] = _Q(-1)
            self.run(phase1, n_total)
            if any(self.x[j] for j in self.artificial):
                return Status.INFEASIBLE
            for j in self.artificial:
                self.hi[j] = _Q(0)
        return self.run(self.c, self.n)


def solve(problem: LpProblem, method: str = "auto") -> LpSolution:
    """Find an optimal basic solution of ``problem`` in exact arithmetic.

    ``method`` is ``"dual"``, ``"primal"`` or ``"auto"`` (dual simplex when all
    variables are boxed).  Infeasibility and unboundedness are reported
    through ``status``.
    """
    boxed = all(hi is not None for _, hi in problem.var_bounds)
    if method == "auto":
        method = "dual" if boxed else "primal"
    if method not in ("dual", "primal"):
        raise ValueError(f"unknown method {method!r}")
    if method == "dual" and not boxed:
        raise ValueError("the dual simplex needs finite upper bounds on every variable")
    simplex = _Simplex(problem, dual=method == "dual")
    status = simplex.solve()
    if status is not Status.OPTIMAL:
        return LpSolution(status, pivots=simplex.pivots)
    point = tuple(_frac(v) for v in simplex.x[: problem.num_vars])
    basis = tuple(sorted(j for j in simplex.basic_pos if j < problem.num_vars))
    at_upper = tuple(
        j
        for j in range(problem.num_vars)
        if j not in simplex.basic_pos
        and problem.var_bounds[j][1] is not None
        and point[j] == problem.var_bounds[j][1]
        and point[j] != problem.var_bounds[j][0]
    )
    return LpSolution(
        Status.OPTIMAL,
        point,
        problem.objective_value(point),
        basis,
        at_upper,
        simplex.pivots,
    )


def check_feasible(problem: LpProblem, point: Sequence) -> bool:
    """True iff ``point`` satisfies every equality and bound exactly."""
    if len(point) != problem.num_vars:
        raise ValueError(f"point has {len(point)} entries, expected {problem.num_vars}")
    point = [Fraction(v) for v in point]
    for v, (lo, hi) in zip(point, problem.var_bounds):
        if v < lo or (hi is not None and v > hi):
            return False
    for row, rhs in problem.eq_constraints:
        if sum((a * point[j] for j, a in row.items()), Fraction(0)) != rhs:
            return False
    return True


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-exact Gaussian elimination."""
    mat = [[Fraction(v) for v in row] for row in rows]
    if not mat:
        return 0
    rank = 0
    ncols = len(mat[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col] / p
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    mat = [[Fraction(v) for v in row] for row in rows]
    size = len(mat)
    if any(len(row) != size for row in mat):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if mat[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        p = mat[col][col]
        det *= p
        for r in range(col + 1, size):
            if mat[r][col]:
                f = mat[r][col] / p
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return det


def verify_vertex(problem: LpProblem, point: Sequence) -> bool:
    """True iff ``point`` is feasible and its active constraints have full rank.

    Tight bounds contribute unit rows, so the rank equals the number of tight
    variables plus the rank of the equality rows restricted to the others.
    """
    if not check_feasible(problem, point):
        return False
    point = [Fraction(v) for v in point]
    loose = [
        j
        for j, (v, (lo, hi)) in enumerate(zip(point, problem.var_bounds))
        if v != lo and (hi is None or v != hi)
    ]
    if not loose:
        return True
    sub = [[row.get(j, Fraction(0)) for j in loose] for row, _ in problem.eq_constraints]
    return exact_rank(sub) == len(loose)
