"""Small dense linear-programming core for grasp feasibility tests.

Two fixed-shape problems are solved over the six basis contact wrenches:

* force balance: min sum(k) s.t. ext + sum(k_i F_i) = 0, k_i >= 0
* form closure:  min sum(k) s.t. sum(k_i F_i) = 0, k_i >= 1

Both reduce to a 3-equality-row LP in nonnegative variables, solved with a
two-phase dense simplex using Bland's rule (no cycling). The feasibility
question is what downstream sweeps consume; the minimising coefficients are
returned as a certificate. An independent basic-solution enumeration oracle
(`oracle_force_balance`) cross-checks the simplex and must never be merged
with it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .wrenches import Wrench, WrenchBasis

# Equality residuals carry the trig noise of the wrench coefficients
# (~1e-15) amplified by pivoting; 1e-7 leaves margin without admitting
# genuinely infeasible cells. Bounds get a tighter 1e-9.
RESIDUAL_TOL = 1e-7
BOUND_TOL = 1e-9

_PIVOT_TOL = 1e-11
_REDCOST_TOL = 1e-11
_ITERATION_CAP = 10_000


class LpDegeneracyError(RuntimeError):
    """Simplex exceeded its iteration cap; indicates a bug, not a model state."""


@dataclass(frozen=True)
class LpProblem:
    """Equality-constrained LP over wrench columns with a uniform lower bound."""

    columns: tuple[Wrench, ...]
    rhs: Wrench
    lower_bound: float


@dataclass(frozen=True)
class LpOutcome:
    feasible: bool
    coefficients: tuple[float, ...] | None = None
    objective: float | None = None
    residual: float | None = None


def _solve_nonneg(
    columns: list[tuple[float, float, float]],
    rhs: tuple[float, float, float],
    residual_tol: float,
) -> tuple[bool, list[float] | None]:
    """min sum(k) s.t. sum(k_j * columns[j]) = rhs, k >= 0.

    Dense two-phase simplex on the 3-row tableau. Phase 1 minimises the sum
    of artificial variables (the L1 equality residual); at most residual_tol
    of it may remain for the problem to count as feasible, which makes the
    feasible region boundary inclusive.
    """
    n = len(columns)
    m = 3
    # Tableau rows [A | I_artificial | b] with b >= 0.
    T = []
    for i in range(m):
        s = 1.0 if rhs[i] >= 0.0 else -1.0
        row = [s * columns[j][i] for j in range(n)]
        row.extend(1.0 if j == i else 0.0 for j in range(m))
        row.append(s * rhs[i])
        T.append(row)
    basis = list(range(n, n + m))
    ncols = n + m + 1

    def pivot(row: int, col: int) -> None:
        prow = T[row]
        inv = 1.0 / prow[col]
        for j in range(ncols):
            prow[j] *= inv
        for i in range(len(T)):
            if i == row:
                continue
            f = T[i][col]
            if f != 0.0:
                tr = T[i]
                for j in range(ncols):
                    tr[j] -= f * prow[j]
        basis[row] = col

    def run(cost: list[float], allow: int) -> float:
        # Bland's rule throughout: entering = lowest eligible index,
        # leaving = lowest basis index among minimum ratios. Terminates.
        for _ in range(_ITERATION_CAP):
            enter = -1
            for j in range(allow):
                cj = cost[j]
                for i in range(len(T)):
                    cb = cost[basis[i]]
                    if cb != 0.0:
                        cj -= cb * T[i][j]
                if cj < -_REDCOST_TOL:
                    enter = j
                    break
            if enter < 0:
                return sum(cost[basis[i]] * T[i][ncols - 1] for i in range(len(T)))
            leave = -1
            best = math.inf
            for i in range(len(T)):
                aij = T[i][enter]
                if aij > _PIVOT_TOL:
                    r = T[i][ncols - 1] / aij
                    if r < best - 1e-12 or (
                        leave >= 0 and abs(r - best) <= 1e-12 and basis[i] < basis[leave]
                    ):
                        best = r
                        leave = i
            if leave < 0:
                # Unbounded descent; cannot occur for these objectives.
                raise LpDegeneracyError("unbounded phase objective")
            pivot(leave, enter)
        raise LpDegeneracyError("simplex iteration cap exceeded")

    cost1 = [0.0] * n + [1.0] * m
    if run(cost1, n + m) > residual_tol:
        return False, None

    # Remove artificials: pivot each basic one onto a real column, or drop
    # its (redundant, ~zero) row entirely so phase 2 sees none.
    for i in range(len(T) - 1, -1, -1):
        if basis[i] >= n:
            for j in range(n):
                if abs(T[i][j]) > 1e-9:
                    pivot(i, j)
                    break
            else:
                del T[i]
                del basis[i]

    cost2 = [1.0] * n + [0.0] * m
    run(cost2, n)

    coeffs = [0.0] * n
    for i in range(len(T)):
        # Pivoting noise can leave a basic value at -1e-16; clamp to the bound.
        coeffs[basis[i]] = max(T[i][ncols - 1], 0.0)
    return True, coeffs


def _residual_inf(
    columns: list[tuple[float, float, float]],
    coeffs: list[float],
    ext: tuple[float, float, float],
) -> float:
    return max(
        abs(ext[i] + sum(coeffs[j] * columns[j][i] for j in range(len(columns))))
        for i in range(3)
    )


def solve_force_balance(
    basis: WrenchBasis, ext: Wrench, residual_tol: float = RESIDUAL_TOL
) -> LpOutcome:
    """Can nonnegative combinations of the basis wrenches cancel ext?

    Feasible iff -ext lies in the cone of the six columns; the returned
    coefficients minimise their sum.
    """
    columns = basis.columns()
    rhs = (-ext.m, -ext.fx, -ext.fy)
    feasible, coeffs = _solve_nonneg(columns, rhs, residual_tol)
    if not feasible:
        return LpOutcome(False)
    return LpOutcome(
        True,
        coefficients=tuple(coeffs),
        objective=sum(coeffs),
        residual=_residual_inf(columns, coeffs, ext.as_tuple()),
    )


def solve_form_closure(basis: WrenchBasis, residual_tol: float = RESIDUAL_TOL) -> LpOutcome:
    """Does a strictly positive combination of the basis wrenches sum to zero?

    The k_i >= 1 bound is handled by the shift k = 1 + u with u >= 0, which
    reuses the nonnegative-variable simplex unchanged.
    """
    columns = basis.columns()
    rhs = tuple(-sum(col[i] for col in columns) for i in range(3))
    feasible, u = _solve_nonneg(columns, rhs, residual_tol)
    if not feasible:
        return LpOutcome(False)
    coeffs = [ui + 1.0 for ui in u]
    return LpOutcome(
        True,
        coefficients=tuple(coeffs),
        objective=sum(coeffs),
        residual=_residual_inf(columns, coeffs, (0.0, 0.0, 0.0)),
    )


def solve_problem(problem: LpProblem, residual_tol: float = RESIDUAL_TOL) -> LpOutcome:
    """Solve an explicit LpProblem; the lower bound selects the formulation.

    lower_bound 0 is the balance problem against -rhs as the external wrench;
    lower_bound 1 shifts variables to reuse the nonnegative simplex.
    """
    columns = [w.as_tuple() for w in problem.columns]
    shift = problem.lower_bound
    rhs = tuple(
        problem.rhs.as_tuple()[i] - shift * sum(col[i] for col in columns) for i in range(3)
    )
    feasible, u = _solve_nonneg(columns, rhs, residual_tol)
    if not feasible:
        return LpOutcome(False)
    coeffs = [ui + shift for ui in u]
    ext = tuple(-v for v in problem.rhs.as_tuple())
    return LpOutcome(
        True,
        coefficients=tuple(coeffs),
        objective=sum(coeffs),
        residual=_residual_inf(columns, coeffs, ext),
    )


def oracle_force_balance(
    basis: WrenchBasis,
    ext: Wrench,
    residual_tol: float = RESIDUAL_TOL,
    bound_tol: float = BOUND_TOL,
) -> bool:
    """Brute-force cone membership check, independent of the simplex.

    Enumerates every column subset of size one to three and solves the
    corresponding exactly- or over-determined system; -ext is in the cone
    iff some subset admits a componentwise nonnegative solution. By
    Caratheodory's theorem for cones this enumeration is exhaustive.
    """
    b = -np.array(ext.as_tuple())
    if float(np.max(np.abs(b))) <= residual_tol:
        return True
    cols = np.array(basis.columns()).T  # 3 x 6
    for size in (3, 2, 1):
        for subset in combinations(range(6), size):
            A = cols[:, subset]
            if size == 3:
                try:
                    k = np.linalg.solve(A, b)
                except np.linalg.LinAlgError:
                    continue
            else:
                k = np.linalg.lstsq(A, b, rcond=None)[0]
            if float(np.min(k)) < -bound_tol:
                continue
            if float(np.max(np.abs(A @ k - b))) <= residual_tol:
                return True
    return False
