"""Posynomial geometric programming by the dual method.

A posynomial GP minimizes a positive-coefficient monomial sum subject to
posynomial constraints bounded by one.  Its dual maximizes

    V(delta) = prod_i (beta_i / delta_i)^delta_i * prod_{k>=1} lambda_k^lambda_k

over nonnegative weights satisfying one normality condition (objective
weights sum to one) and n orthogonality conditions (exponent-weighted
sums vanish per variable), with lambda_k the weight total of constraint
block k.  log V is concave, so:

* at degree of difficulty zero (N = n + 1) the conditions fix the weights
  outright and a single linear solve suffices;
* otherwise the feasible affine set is parametrized by its null space and
  log V is maximized by damped Newton with backtracking.

The primal minimizer is recovered from the log-linear stationarity
relations linking delta, the dual value and the exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog

from .errors import (
    DegreeOfDifficultyNegative,
    InfeasibleDual,
    NonConvergence,
    RankDeficient,
)

__all__ = [
    "Posynomial",
    "DeterministicGP",
    "DualProblem",
    "DualSolution",
    "GPDiagnostics",
    "degree_of_difficulty",
    "build_dual",
    "solve_dual",
    "recover_primal",
    "verify_solution",
    "solve_gp",
]

_DELTA_DROP = 1e-12  # weights below this are treated as inactive in recovery
_GRAD_TOL = 1e-9
_MAX_NEWTON_ITER = 500
_LINE_SEARCH_FLOOR = 1e-300


@dataclass(frozen=True)
class Posynomial:
    """Sum of terms coefficient * prod_j x_j**exponent_j, coefficients > 0."""

    coefficients: tuple[float, ...]
    exponents: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a posynomial needs at least one term")
        if len(self.exponents) != len(self.coefficients):
            raise ValueError("one exponent vector per coefficient required")
        if any(c <= 0 for c in self.coefficients):
            raise ValueError("posynomial coefficients must be positive")
        widths = {len(row) for row in self.exponents}
        if len(widths) > 1:
            raise ValueError("all exponent vectors must have equal length")

    @property
    def n_terms(self) -> int:
        return len(self.coefficients)

    @property
    def n_variables(self) -> int:
        return len(self.exponents[0])

    def value(self, x) -> float:
        x = np.asarray(x, dtype=float)
        total = 0.0
        for coeff, row in zip(self.coefficients, self.exponents):
            total += coeff * float(np.prod(x ** np.asarray(row, dtype=float)))
        return total


@dataclass(frozen=True)
class DeterministicGP:
    """min objective(x) subject to constraint_k(x) <= 1, x > 0 componentwise."""

    objective: Posynomial
    constraints: tuple[Posynomial, ...] = ()

    def __post_init__(self) -> None:
        n = self.objective.n_variables
        for k, block in enumerate(self.constraints):
            if block.n_variables != n:
                raise ValueError(
                    f"constraint {k + 1} has {block.n_variables} variables, "
                    f"objective has {n}"
                )

    @property
    def n_variables(self) -> int:
        return self.objective.n_variables

    @property
    def total_terms(self) -> int:
        return self.objective.n_terms + sum(b.n_terms for b in self.constraints)


def degree_of_difficulty(gp: DeterministicGP) -> int:
    """Total term count minus (variable count + 1)."""
    return gp.total_terms - (gp.n_variables + 1)


@dataclass(frozen=True, eq=False)
class DualProblem:
    """Flattened dual data: one row per term, objective block first."""

    coefficients: np.ndarray  # (N,)
    exponent_matrix: np.ndarray  # (N, n)
    term_blocks: np.ndarray  # (N,) int, 0 for objective, k for constraint k
    n_constraints: int

    @property
    def n_terms(self) -> int:
        return int(self.coefficients.shape[0])

    @property
    def n_variables(self) -> int:
        return int(self.exponent_matrix.shape[1])

    def condition_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """Normality row plus n orthogonality rows, with right-hand side."""
        rows = np.vstack(
            [
                (self.term_blocks == 0).astype(float),
                self.exponent_matrix.T,
            ]
        )
        rhs = np.zeros(self.n_variables + 1)
        rhs[0] = 1.0
        return rows, rhs

    def block_totals(self, delta: np.ndarray) -> np.ndarray:
        """lambda_k = sum of weights in block k, for k = 0..K."""
        totals = np.zeros(self.n_constraints + 1)
        np.add.at(totals, self.term_blocks, delta)
        return totals

    def log_value(self, delta: np.ndarray) -> float:
        """log V(delta) with the continuous extension 0 * log(.) = 0."""
        total = 0.0
        for beta, d in zip(self.coefficients, delta):
            if d > 0.0:
                total += d * math.log(beta / d)
        for lam in self.block_totals(delta)[1:]:
            if lam > 0.0:
                total += lam * math.log(lam)
        return total


def build_dual(gp: DeterministicGP) -> DualProblem:
    """Assemble coefficient vector, exponent matrix and block map."""
    coeffs: list[float] = list(gp.objective.coefficients)
    rows: list[tuple[float, ...]] = list(gp.objective.exponents)
    blocks: list[int] = [0] * gp.objective.n_terms
    for k, constraint in enumerate(gp.constraints, start=1):
        coeffs.extend(constraint.coefficients)
        rows.extend(constraint.exponents)
        blocks.extend([k] * constraint.n_terms)
    return DualProblem(
        coefficients=np.asarray(coeffs, dtype=float),
        exponent_matrix=np.asarray(rows, dtype=float).reshape(len(coeffs), -1),
        term_blocks=np.asarray(blocks, dtype=int),
        n_constraints=len(gp.constraints),
    )


@dataclass(frozen=True)
class GPDiagnostics:
    """Consistency report for a solved GP."""

    primal_objective: float
    duality_gap_rel: float
    constraint_values: tuple[float, ...]
    linear_residual: float
    condition_residual: float
    gap_exceeds: bool
    violated_constraints: tuple[int, ...]


@dataclass(frozen=True)
class DualSolution:
    delta: tuple[float, ...]
    lam: tuple[float, ...]  # lambda_0 = 1 first
    dual_value: float
    primal_x: tuple[float, ...] | None = None
    diagnostics: GPDiagnostics | None = None


def _feasible_interior_point(A: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Strictly positive delta with A delta = rhs, by maximizing the margin.

    Solves max t subject to A delta = rhs, delta >= t, t <= 1 as a linear
    program.  Raises InfeasibleDual when no nonnegative solution exists or
    when every nonnegative solution touches the boundary.
    """
    n_cond, n_var = A.shape
    c = np.zeros(n_var + 1)
    c[-1] = -1.0
    a_eq = np.hstack([A, np.zeros((n_cond, 1))])
    a_ub = np.hstack([-np.eye(n_var), np.ones((n_var, 1))])
    bounds = [(0.0, None)] * n_var + [(None, 1.0)]
    res = linprog(
        c,
        A_ub=a_ub,
        b_ub=np.zeros(n_var),
        A_eq=a_eq,
        b_eq=rhs,
        bounds=bounds,
        method="highs",
    )
    if not res.success:
        raise InfeasibleDual(
            "the normality/orthogonality conditions admit no nonnegative solution"
        )
    margin = res.x[-1]
    if margin <= 0.0:
        raise InfeasibleDual(
            "the normality/orthogonality conditions admit no strictly "
            "positive solution"
        )
    return res.x[:-1]


def solve_dual(dual: DualProblem) -> DualSolution:
    """Maximize V(delta) over the dual feasible set.

    Degree-of-difficulty zero with a nonsingular condition matrix is
    solved by one linear solve; a negative exact solution is reported as
    InfeasibleDual rather than projected.  Otherwise the feasible affine
    set is parametrized by its null space and log V (concave) is
    maximized by damped Newton with backtracking, converging when the
    reduced gradient norm drops to 1e-9.
    """
    N, n = dual.n_terms, dual.n_variables
    if N < n + 1:
        raise DegreeOfDifficultyNegative(
            f"{N} dual variables cannot satisfy {n + 1} conditions; "
            "the dual method needs N >= n + 1"
        )
    A, rhs = dual.condition_matrix()

    delta: np.ndarray | None = None
    if N == n + 1:
        try:
            candidate = np.linalg.solve(A, rhs)
        except np.linalg.LinAlgError:
            candidate = None
        if candidate is not None and np.max(np.abs(A @ candidate - rhs)) > 1e-9:
            candidate = None  # numerically singular: use the general path
        if candidate is not None:
            if np.any(candidate < 0.0):
                raise InfeasibleDual(
                    "the unique solution of the dual conditions has negative "
                    "components"
                )
            delta = candidate

    if delta is None:
        delta = _newton_max_log_value(dual, A, rhs)

    lam = dual.block_totals(delta)
    lam[0] = 1.0
    return DualSolution(
        delta=tuple(float(d) for d in delta),
        lam=tuple(float(v) for v in lam),
        dual_value=math.exp(dual.log_value(delta)),
    )


def _newton_max_log_value(
    dual: DualProblem, A: np.ndarray, rhs: np.ndarray
) -> np.ndarray:
    delta = _feasible_interior_point(A, rhs)
    basis = null_space(A)
    if basis.shape[1] == 0:
        return delta  # conditions pin delta down; nothing to optimize

    blocks = dual.term_blocks
    beta = dual.coefficients

    def gradient(d: np.ndarray) -> np.ndarray:
        lam = dual.block_totals(d)
        g = np.log(beta / d)
        g[blocks == 0] -= 1.0
        constrained = blocks >= 1
        g[constrained] += np.log(lam[blocks[constrained]])
        return g

    def hessian(d: np.ndarray) -> np.ndarray:
        lam = dual.block_totals(d)
        H = np.diag(-1.0 / d)
        for k in range(1, dual.n_constraints + 1):
            members = np.flatnonzero(blocks == k)
            if members.size and lam[k] > 0.0:
                H[np.ix_(members, members)] += 1.0 / lam[k]
        return H

    current = dual.log_value(delta)
    for _ in range(_MAX_NEWTON_ITER):
        g_red = basis.T @ gradient(delta)
        if np.linalg.norm(g_red) <= _GRAD_TOL:
            return delta
        H_red = basis.T @ hessian(delta) @ basis
        try:
            step = np.linalg.solve(H_red, -g_red)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(H_red, -g_red, rcond=None)[0]
        direction = basis @ step
        if g_red @ step <= 0.0:
            direction = basis @ g_red  # fall back to steepest ascent
            step = g_red

        tau = 1.0
        slope = float(g_red @ step)
        for _ in range(200):
            trial = delta + tau * direction
            if np.all(trial > _LINE_SEARCH_FLOOR):
                value = dual.log_value(trial)
                if value >= current + 1e-4 * tau * slope:
                    delta, current = trial, value
                    break
            tau *= 0.5
        else:
            raise NonConvergence(
                "line search stalled while maximizing the dual objective"
            )
    raise NonConvergence(
        f"dual maximization did not converge in {_MAX_NEWTON_ITER} Newton steps"
    )


def _recovery_rows(
    gp: DeterministicGP, sol: DualSolution
) -> tuple[np.ndarray, np.ndarray]:
    rows: list[tuple[float, ...]] = []
    rhs: list[float] = []
    for coeff, exps, d in zip(
        gp.objective.coefficients, gp.objective.exponents, sol.delta
    ):
        if d > _DELTA_DROP:
            rows.append(exps)
            rhs.append(math.log(d * sol.dual_value / coeff))
    offset = gp.objective.n_terms
    for k, constraint in enumerate(gp.constraints, start=1):
        lam_k = sol.lam[k]
        for coeff, exps in zip(constraint.coefficients, constraint.exponents):
            d = sol.delta[offset]
            offset += 1
            if lam_k > _DELTA_DROP and d > _DELTA_DROP:
                rows.append(exps)
                rhs.append(math.log(d / (lam_k * coeff)))
    matrix = np.asarray(rows, dtype=float).reshape(len(rows), gp.n_variables)
    return matrix, np.asarray(rhs, dtype=float)


def recover_primal(sol: DualSolution, gp: DeterministicGP) -> np.ndarray:
    """Recover x* from the stationarity relations, in log space.

    All rows with active weight are stacked (objective rows use the dual
    value for the optimal objective) and solved by least squares; rows of
    inactive constraint blocks are dropped.  RankDeficient is raised when
    the stacked exponent rows cannot determine every variable.
    """
    matrix, rhs = _recovery_rows(gp, sol)
    if np.linalg.matrix_rank(matrix) < gp.n_variables:
        raise RankDeficient(
            "active exponent rows have rank "
            f"{np.linalg.matrix_rank(matrix)} < {gp.n_variables}"
        )
    log_x = np.linalg.lstsq(matrix, rhs, rcond=None)[0]
    return np.exp(log_x)


def verify_solution(gp: DeterministicGP, sol: DualSolution) -> GPDiagnostics:
    """Primal value, relative duality gap, constraint values and residuals."""
    if sol.primal_x is None:
        raise ValueError("solution carries no primal point to verify")
    x = np.asarray(sol.primal_x, dtype=float)
    primal = gp.objective.value(x)
    gap = abs(primal - sol.dual_value) / sol.dual_value
    constraint_values = tuple(block.value(x) for block in gp.constraints)

    matrix, rhs = _recovery_rows(gp, sol)
    linear_residual = float(
        np.linalg.norm(matrix @ np.log(x) - rhs) if matrix.size else 0.0
    )
    A, b = build_dual(gp).condition_matrix()
    condition_residual = float(
        np.max(np.abs(A @ np.asarray(sol.delta) - b))
    )
    return GPDiagnostics(
        primal_objective=float(primal),
        duality_gap_rel=float(gap),
        constraint_values=constraint_values,
        linear_residual=linear_residual,
        condition_residual=condition_residual,
        gap_exceeds=bool(gap > 1e-6),
        violated_constraints=tuple(
            k for k, v in enumerate(constraint_values, start=1) if v > 1.0 + 1e-8
        ),
    )


def solve_gp(gp: DeterministicGP) -> DualSolution:
    """Full pipeline: dual construction, dual solve, recovery, verification."""
    sol = solve_dual(build_dual(gp))
    x = recover_primal(sol, gp)
    sol = replace(sol, primal_x=tuple(float(v) for v in x))
    return replace(sol, diagnostics=verify_solution(gp, sol))
