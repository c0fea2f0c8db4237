"""Exact rational linear programming for the fractional clique relaxations.

A small dense two-phase simplex over fractions.Fraction with Bland's
anti-cycling rule.  No floating point anywhere: claims like "the fractional
independence number of the five-cycle is 5/2" must be bit-exact, and the
clique LPs are heavily degenerate, so epsilon pivoting would be fragile.

The solver handles max/min objectives and <=/>= rows with nonnegative
variables, which covers both clique relaxations:

  primal    max 1'z   s.t.  Wz <= 1, z >= 0     (fractional independence)
  dual      min 1'y   s.t.  W'y >= 1, y >= 0     (fractional clique cover)

Every solution carries a dual certificate that is re-verified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InfeasibleLpError,
    InputError,
    InternalConsistencyError,
    UnboundedLpError,
)
from .graphs import InfoGraph, maximal_cliques

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LinearProgram:
    """max/min objective'x subject to rows, x >= 0.

    Rows are normalized to <= at construction; a >= row is negated.  The
    certificate of any solution refers to this normalized orientation.
    """

    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    sense: str  # "max" | "min"

    @staticmethod
    def build(objective, rows, senses, rhs, sense) -> "LinearProgram":
        if sense not in ("max", "min"):
            raise InputError(f"unknown objective sense {sense!r}")
        objective = tuple(Fraction(c) for c in objective)
        norm_rows, norm_rhs = [], []
        if not (len(rows) == len(senses) == len(rhs)):
            raise InputError("rows, senses, and rhs must have equal length")
        for row, s, b in zip(rows, senses, rhs):
            if len(row) != len(objective):
                raise InputError("row width does not match objective length")
            row = tuple(Fraction(a) for a in row)
            b = Fraction(b)
            if s == "<=":
                norm_rows.append(row)
                norm_rhs.append(b)
            elif s == ">=":
                norm_rows.append(tuple(-a for a in row))
                norm_rhs.append(-b)
            else:
                raise InputError(f"unknown row sense {s!r}")
        return LinearProgram(objective, tuple(norm_rows), tuple(norm_rhs), sense)


@dataclass(frozen=True)
class LpSolution:
    optimum: Fraction
    point: tuple[Fraction, ...]
    certificate: dict


def dump_tableau(lp: LinearProgram) -> str:
    """Plain-text tableau for debugging."""
    lines = [f"{lp.sense} {' '.join(str(c) for c in lp.objective)}"]
    for row, b in zip(lp.rows, lp.rhs):
        lines.append(f"  {' '.join(str(a) for a in row)} <= {b}")
    return "\n".join(lines) + "\n"


class _Tableau:
    """Dense simplex tableau: rows of [coeffs | rhs], basis per row."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis

    def pivot(self, r: int, c: int):
        rows = self.rows
        prow = rows[r]
        piv = prow[c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = prow = [a * inv for a in prow]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[c]
            if f:
                rows[i] = [a - f * b for a, b in zip(row, prow)]
        self.basis[r] = c


def _bland_max(tab: _Tableau, cost: list[Fraction], ncols: int) -> list[Fraction]:
    """Run simplex maximizing with Bland's rule; returns the final cost row.

    ``cost`` is the reduced objective row [c | value], updated in place.
    Raises UnboundedLpError if a cost-improving column has no blocking row.
    """
    rows = tab.rows
    while True:
        enter = -1
        for j in range(ncols):
            if cost[j] > 0:
                enter = j
                break
        if enter < 0:
            return cost
        leave, best, best_var = -1, None, None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (
                    ratio == best and tab.basis[i] < best_var
                ):
                    leave, best, best_var = i, ratio, tab.basis[i]
        if leave < 0:
            raise UnboundedLpError("objective is unbounded")
        tab.pivot(leave, enter)
        f = cost[enter]
        prow = rows[leave]
        for j in range(len(cost)):
            cost[j] -= f * prow[j]


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Exact optimum, optimal point, and a re-verifiable dual certificate."""
    n = len(lp.objective)
    m = len(lp.rows)
    obj = lp.objective if lp.sense == "max" else tuple(-c for c in lp.objective)

    # Equality system [A | I](x, s) = b; flip rows with negative rhs and give
    # them artificials so the slack/artificial basis starts feasible.
    ncols = n + m
    flipped = [b < 0 for b in lp.rhs]
    art_of = {i: ncols + k for k, i in enumerate(i for i in range(m) if flipped[i])}
    total_cols = ncols + len(art_of)
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    for i in range(m):
        sign = -1 if flipped[i] else 1
        row = [sign * a for a in lp.rows[i]]
        row += [(sign if j == i else 0) * ONE for j in range(m)]
        row += [ONE if art_of.get(i) == c else ZERO for c in range(ncols, total_cols)]
        row.append(sign * lp.rhs[i])
        rows.append(row)
        basis.append(art_of.get(i, n + i))
    art_cols = sorted(art_of.values())
    tab = _Tableau(rows, basis)

    if art_cols:
        # phase 1: maximize -(sum of artificials), priced out over the basis
        cost = [ZERO] * (total_cols + 1)
        for c in art_cols:
            cost[c] = -ONE
        for r, b in enumerate(tab.basis):
            f = cost[b]
            if f:
                prow = tab.rows[r]
                for j in range(total_cols + 1):
                    cost[j] -= f * prow[j]
        cost = _bland_max(tab, cost, total_cols)
        if -cost[-1] != 0:
            raise InfeasibleLpError("no feasible point")
        # drive leftover artificials out of the basis, dropping redundant rows
        keep = []
        for r in range(m):
            if tab.basis[r] in art_cols:
                prow = tab.rows[r]
                piv = next((j for j in range(ncols) if prow[j] != 0), None)
                if piv is None:
                    continue  # redundant row
                tab.pivot(r, piv)
            keep.append(r)
        tab.rows = [tab.rows[r] for r in keep]
        tab.basis = [tab.basis[r] for r in keep]
        # blank artificial columns so they can never re-enter
        for row in tab.rows:
            for c in art_cols:
                row[c] = ZERO

    # phase 2
    cost = [ZERO] * (total_cols + 1)
    for j in range(n):
        cost[j] = obj[j]
    for r, b in enumerate(tab.basis):
        f = cost[b]
        if f:
            prow = tab.rows[r]
            for j in range(total_cols + 1):
                cost[j] -= f * prow[j]
    cost = _bland_max(tab, cost, ncols)

    point = [ZERO] * n
    for r, b in enumerate(tab.basis):
        if b < n:
            point[b] = tab.rows[r][-1]
    value = -cost[-1]
    # dual of the normalized <= system: the slack column of row i is its
    # identity column up to the row's flip sign, which cancels against the
    # flipped multiplier, so y_i is always the negated slack reduced cost
    dual = [-cost[n + i] for i in range(m)]
    if lp.sense == "min":
        value = -value
        dual = [-y for y in dual]

    sol = LpSolution(value, tuple(point), {"dual": tuple(dual)})
    ok, why = verify_certificate(lp, sol)
    if not ok:
        raise InternalConsistencyError(f"simplex certificate failed: {why}")
    return sol


def verify_certificate(lp: LinearProgram, sol: LpSolution) -> tuple[bool, str]:
    """Exact primal feasibility, dual feasibility, and objective equality."""
    x = sol.point
    n = len(lp.objective)
    if len(x) != n:
        return False, "point has wrong dimension"
    if any(v < 0 for v in x):
        return False, "point violates nonnegativity"
    for row, b in zip(lp.rows, lp.rhs):
        if sum(a * v for a, v in zip(row, x)) > b:
            return False, "point violates a row"
    primal = sum(c * v for c, v in zip(lp.objective, x))
    if primal != sol.optimum:
        return False, "objective value mismatch"

    y = sol.certificate["dual"]
    if len(y) != len(lp.rows):
        return False, "dual has wrong dimension"
    sign = 1 if lp.sense == "max" else -1
    # normalized dual: min y'b s.t. A'y >= c, y >= 0 (for max-sense primal)
    if any(sign * v < 0 for v in y):
        return False, "dual violates nonnegativity"
    for j in range(n):
        col = sum(lp.rows[i][j] * y[i] for i in range(len(lp.rows)))
        if sign * (col - lp.objective[j]) < 0:
            return False, f"dual violates column {j}"
    dual_obj = sum(b * v for b, v in zip(lp.rhs, y))
    if dual_obj != sol.optimum:
        return False, "strong duality gap"
    return True, "ok"


# ---------------------------------------------------------------------------
# Clique relaxations
# ---------------------------------------------------------------------------


def _clique_rows(g: InfoGraph) -> list[tuple[frozenset[int], tuple[Fraction, ...]]]:
    rows = []
    for c in maximal_cliques(g):
        rows.append((c, tuple(ONE if v in c else ZERO for v in range(1, g.n + 1))))
    return rows


def independence_lp(g: InfoGraph) -> LinearProgram:
    """max 1'z s.t. (maximal-clique rows) z <= 1, z >= 0.

    Every clique row is dominated by a maximal superset's row when z >= 0, so
    restricting to maximal cliques leaves the optimum unchanged while keeping
    the tableau small.  ``clique_matrix`` still exposes the full matrix.
    """
    rows = _clique_rows(g)
    return LinearProgram.build(
        [ONE] * g.n,
        [r for _, r in rows],
        ["<="] * len(rows),
        [ONE] * len(rows),
        "max",
    )


def cover_lp(g: InfoGraph) -> LinearProgram:
    """min 1'y s.t. (maximal-clique columns) y >= 1, y >= 0."""
    rows = _clique_rows(g)
    ncl = len(rows)
    cols = []
    for v in range(1, g.n + 1):
        cols.append(tuple(rows[c][1][v - 1] for c in range(ncl)))
    return LinearProgram.build(
        [ONE] * ncl,
        cols,
        [">="] * g.n,
        [ONE] * g.n,
        "min",
    )


def alpha_star_solution(g: InfoGraph) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Fractional independence number and an optimal vertex of its LP."""
    if g.n == 0:
        return ZERO, ()
    sol = solve_lp(independence_lp(g))
    return sol.optimum, sol.point


def alpha_star(g: InfoGraph) -> Fraction:
    return alpha_star_solution(g)[0]


def k_star(g: InfoGraph) -> Fraction:
    """Fractional clique cover number; must equal alpha_star exactly."""
    if g.n == 0:
        return ZERO
    sol = solve_lp(cover_lp(g))
    a = alpha_star(g)
    if sol.optimum != a:
        raise InternalConsistencyError(
            f"strong duality violated: alpha*={a} but k*={sol.optimum}"
        )
    return sol.optimum
