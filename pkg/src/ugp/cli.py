"""Command-line front end.

Subcommands:

* ``ugp reduce <file>``  -- dump reduced-distribution curves as CSV
* ``ugp solve <file>``   -- solve at one confidence level, print a report
* ``ugp sweep <file>``   -- solve a grid of confidence levels, emit CSV
* ``ugp tables``         -- run both bundled benchmark problems and write
  table1.csv / table2.csv

Problem files are JSON documents: a ``variables`` name list, an
``objective`` list of term records and a ``constraints`` list of term
record blocks; every term record carries ``family`` ("tri" or "tra"),
``params``, ``theta_l``, ``theta_r`` and an ``exponents`` map from
variable name to real exponent.

Exit codes: 0 success, 2 problem-file parse error, 3 domain error
(invalid values, infeasible or rank-deficient model), 4 negative degree
of difficulty, 5 solver non-convergence.  CSV output is deterministic:
dot decimal separator, 17 significant digits, LF line endings.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from importlib import resources
from pathlib import Path

from .chance import (
    FailedRow,
    SweepRow,
    UncertainGPProblem,
    UncertainTerm,
    deterministic_form,
    reduce_problem,
    sweep,
)
from .errors import (
    AlphaOutOfRange,
    DegreeOfDifficultyNegative,
    InfeasibleDual,
    NonConvergence,
    ProblemFormatError,
    QuadratureNonConvergence,
    RankDeficient,
    YOutOfRange,
)
from .gp import solve_gp
from .twofold import ReductionCriterion, TwoFoldVariable, reduce_twofold

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_DOD = 4
EXIT_NONCONVERGENCE = 5

_FAMILIES = {"tri": "triangular", "tra": "trapezoidal"}


def _fmt(value: float) -> str:
    return format(value, ".17g")


# ---------------------------------------------------------------------------
# Problem files
# ---------------------------------------------------------------------------


def load_problem(path: str | Path) -> tuple[list[str], UncertainGPProblem]:
    """Parse a JSON problem file into variable names and the problem.

    Schema violations raise ProblemFormatError; value violations (params
    not increasing, thetas outside [0, 1], ...) surface as ValueError
    from the domain constructors.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFormatError(f"cannot read problem file: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"invalid JSON: {exc}") from exc

    if not isinstance(doc, dict):
        raise ProblemFormatError("problem file must be a JSON object")
    variables = doc.get("variables")
    if (
        not isinstance(variables, list)
        or not variables
        or not all(isinstance(v, str) for v in variables)
    ):
        raise ProblemFormatError("field 'variables' must be a nonempty name list")
    if len(set(variables)) != len(variables):
        raise ProblemFormatError("field 'variables' contains duplicates")

    def parse_term(record: object, where: str) -> UncertainTerm:
        if not isinstance(record, dict):
            raise ProblemFormatError(f"{where}: term record must be an object")
        for key in ("family", "params", "theta_l", "theta_r", "exponents"):
            if key not in record:
                raise ProblemFormatError(f"{where}: missing field '{key}'")
        family = _FAMILIES.get(record["family"])
        if family is None:
            raise ProblemFormatError(
                f"{where}: field 'family' must be 'tri' or 'tra', "
                f"got {record['family']!r}"
            )
        params = record["params"]
        if not isinstance(params, list) or not all(
            isinstance(p, (int, float)) for p in params
        ):
            raise ProblemFormatError(f"{where}: field 'params' must be a number list")
        for key in ("theta_l", "theta_r"):
            if not isinstance(record[key], (int, float)):
                raise ProblemFormatError(f"{where}: field '{key}' must be a number")
        exponents = record["exponents"]
        if not isinstance(exponents, dict):
            raise ProblemFormatError(
                f"{where}: field 'exponents' must map variable names to reals"
            )
        row = [0.0] * len(variables)
        for name, power in exponents.items():
            if name not in variables:
                raise ProblemFormatError(
                    f"{where}: exponent key {name!r} is not a declared variable"
                )
            if not isinstance(power, (int, float)):
                raise ProblemFormatError(
                    f"{where}: exponent for {name!r} must be a number"
                )
            row[variables.index(name)] = float(power)
        coefficient = TwoFoldVariable(
            family,
            tuple(float(p) for p in params),
            float(record["theta_l"]),
            float(record["theta_r"]),
        )
        return UncertainTerm(coefficient=coefficient, exponents=tuple(row))

    objective_doc = doc.get("objective")
    if not isinstance(objective_doc, list) or not objective_doc:
        raise ProblemFormatError("field 'objective' must be a nonempty term list")
    objective = tuple(
        parse_term(rec, f"objective[{i}]") for i, rec in enumerate(objective_doc)
    )
    constraints_doc = doc.get("constraints", [])
    if not isinstance(constraints_doc, list):
        raise ProblemFormatError("field 'constraints' must be a list of term lists")
    constraints = []
    for k, block in enumerate(constraints_doc):
        if not isinstance(block, list) or not block:
            raise ProblemFormatError(
                f"constraints[{k}] must be a nonempty term list"
            )
        constraints.append(
            tuple(
                parse_term(rec, f"constraints[{k}][{i}]")
                for i, rec in enumerate(block)
            )
        )
    return list(variables), UncertainGPProblem(
        objective=objective, constraints=tuple(constraints)
    )


def bundled_problem_path(name: str) -> Path:
    """Filesystem path of a packaged benchmark problem file."""
    return Path(resources.files("ugp") / "data" / name)


# ---------------------------------------------------------------------------
# CSV helpers
# ---------------------------------------------------------------------------


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            if len(row) == 1 and row[0].startswith("#"):
                handle.write(row[0] + "\n")
            else:
                writer.writerow(row)


def _sweep_header(n_variables: int, n_terms: int) -> list[str]:
    return (
        ["gamma"]
        + [f"x{j + 1}" for j in range(n_variables)]
        + [f"delta{i + 1}" for i in range(n_terms)]
        + ["objective"]
    )


def _sweep_csv_rows(outcomes: list[SweepRow | FailedRow]) -> list[list[str]]:
    rows: list[list[str]] = []
    for outcome in outcomes:
        if isinstance(outcome, FailedRow):
            rows.append(
                [f"# gamma={_fmt(outcome.gamma)} error={outcome.error}: "
                 f"{outcome.message}"]
            )
        else:
            rows.append(
                [_fmt(outcome.gamma)]
                + [_fmt(v) for v in outcome.x_star]
                + [_fmt(d) for d in outcome.delta_star]
                + [_fmt(outcome.expected_objective)]
            )
    return rows


def _print_table(outcomes: list[SweepRow | FailedRow], header: list[str]) -> None:
    print("  ".join(f"{name:>9s}" for name in header))
    for outcome in outcomes:
        if isinstance(outcome, FailedRow):
            print(f"# gamma={outcome.gamma:g} failed: {outcome.error}")
            continue
        cells = (
            [outcome.gamma]
            + list(outcome.x_star)
            + list(outcome.delta_star)
            + [outcome.expected_objective]
        )
        print("  ".join(f"{cell:9.3f}" for cell in cells))


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _parse_gammas(text: str) -> list[float]:
    """A gamma grid: 'start:stop:step' (inclusive) or a comma list; '' is empty."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("gamma range must be start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("gamma range step must be positive")
        grid = []
        count = int(round((stop - start) / step))
        for i in range(count + 1):
            g = start + i * step
            if g <= stop + 1e-12:
                grid.append(round(g, 12))
        return grid
    return [float(p) for p in text.split(",")]


def _criterion_from_args(args: argparse.Namespace) -> ReductionCriterion:
    if args.criterion == "expected":
        return ReductionCriterion.expected()
    if args.alpha is None:
        raise AlphaOutOfRange(
            f"criterion '{args.criterion}' needs --alpha in (0, 1)"
        )
    if args.criterion == "optimistic":
        return ReductionCriterion.optimistic(args.alpha)
    return ReductionCriterion.pessimistic(args.alpha)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ugp",
        description=(
            "Geometric programming with two-fold uncertain coefficients: "
            "reduction curves, chance-constrained solves and confidence sweeps."
        ),
        epilog=(
            "exit codes: 0 ok, 2 parse error, 3 domain error, "
            "4 negative degree of difficulty, 5 non-convergence"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_criterion(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--criterion",
            choices=("expected", "optimistic", "pessimistic"),
            default="expected",
        )
        p.add_argument("--alpha", type=float, default=None)

    p_reduce = sub.add_parser(
        "reduce", help="dump reduced single-fold distribution curves as CSV"
    )
    p_reduce.add_argument("file")
    add_criterion(p_reduce)
    p_reduce.add_argument("--samples", type=int, default=1000)
    p_reduce.add_argument("-o", "--output", required=True)

    p_solve = sub.add_parser("solve", help="solve at one confidence level")
    p_solve.add_argument("file")
    p_solve.add_argument("--gamma", type=float, required=True)
    add_criterion(p_solve)
    p_solve.add_argument("-o", "--output", default=None)

    p_sweep = sub.add_parser("sweep", help="solve a grid of confidence levels")
    p_sweep.add_argument("file")
    p_sweep.add_argument(
        "--gammas", required=True, help="start:stop:step or comma list"
    )
    add_criterion(p_sweep)
    p_sweep.add_argument("-o", "--output", required=True)

    p_tables = sub.add_parser(
        "tables",
        help="run both bundled benchmark problems and write table1.csv/table2.csv",
    )
    p_tables.add_argument("--outdir", default=".")
    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_reduce(args: argparse.Namespace) -> int:
    _, problem = load_problem(args.file)
    criterion = _criterion_from_args(args)
    if args.samples < 2:
        raise ValueError("--samples must be at least 2")

    labels: list[str] = []
    coefficients: list[TwoFoldVariable] = []
    for i, term in enumerate(problem.objective, start=1):
        labels.append(f"obj{i}")
        coefficients.append(term.coefficient)
    for k, block in enumerate(problem.constraints, start=1):
        for i, term in enumerate(block, start=1):
            labels.append(f"c{k}t{i}")
            coefficients.append(term.coefficient)

    header: list[str] = []
    columns: list[list[float]] = []
    for label, coefficient in zip(labels, coefficients):
        reduced = reduce_twofold(coefficient, criterion)
        lo, hi = reduced.support
        step = (hi - lo) / (args.samples - 1)
        xs = [lo + i * step for i in range(args.samples)]
        xs[-1] = hi
        header.extend([f"x_{label}", f"cdf_{label}"])
        columns.append(xs)
        columns.append([reduced.cdf(x) for x in xs])

    rows = [
        [_fmt(col[i]) for col in columns] for i in range(args.samples)
    ]
    _write_csv(Path(args.output), header, rows)
    print(f"wrote {args.samples} samples for {len(labels)} coefficients "
          f"to {args.output}")
    return EXIT_OK


def _cmd_solve(args: argparse.Namespace) -> int:
    _, problem = load_problem(args.file)
    criterion = _criterion_from_args(args)
    solution = solve_gp(
        deterministic_form(reduce_problem(problem, criterion), args.gamma)
    )
    diag = solution.diagnostics

    print(f"gamma = {args.gamma:g}  (criterion: {criterion.kind})")
    print("x* = (" + ", ".join(f"{v:.6f}" for v in solution.primal_x) + ")")
    print("delta* = (" + ", ".join(f"{d:.6f}" for d in solution.delta) + ")")
    print(f"expected objective = {diag.primal_objective:.6f}")
    print(f"duality gap (relative) = {diag.duality_gap_rel:.3e}")
    if diag.constraint_values:
        values = ", ".join(f"{v:.9f}" for v in diag.constraint_values)
        print(f"constraint values = ({values})")
    print(f"stationarity residual = {diag.linear_residual:.3e}")

    if args.output:
        row = SweepRow(
            gamma=args.gamma,
            x_star=solution.primal_x,
            delta_star=solution.delta,
            expected_objective=diag.primal_objective,
        )
        header = _sweep_header(len(row.x_star), len(row.delta_star))
        _write_csv(Path(args.output), header, _sweep_csv_rows([row]))
        print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    _, problem = load_problem(args.file)
    criterion = _criterion_from_args(args)
    gammas = _parse_gammas(args.gammas)
    outcomes = sweep(problem, gammas, criterion)

    n_terms = len(problem.objective) + sum(
        len(block) for block in problem.constraints
    )
    header = _sweep_header(problem.n_variables, n_terms)
    _write_csv(Path(args.output), header, _sweep_csv_rows(outcomes))

    successes = [o for o in outcomes if isinstance(o, SweepRow)]
    _print_table(outcomes, header)
    print(f"wrote {len(successes)}/{len(outcomes)} rows to {args.output}")
    if gammas and not successes:
        first = next(o for o in outcomes if isinstance(o, FailedRow))
        raise _ERROR_BY_NAME.get(first.error, RuntimeError)(first.message)
    return EXIT_OK


def _cmd_tables(args: argparse.Namespace) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    grid = [round(0.1 * i, 12) for i in range(1, 10)]
    for name, out in (
        ("triangular_case.json", "table1.csv"),
        ("trapezoidal_case.json", "table2.csv"),
    ):
        _, problem = load_problem(bundled_problem_path(name))
        outcomes = sweep(problem, grid, ReductionCriterion.expected())
        n_terms = len(problem.objective) + sum(
            len(block) for block in problem.constraints
        )
        header = _sweep_header(problem.n_variables, n_terms)
        _write_csv(outdir / out, header, _sweep_csv_rows(outcomes))
        print(f"{name} -> {outdir / out}")
        _print_table(outcomes, header)
    return EXIT_OK


_ERROR_BY_NAME = {
    cls.__name__: cls
    for cls in (
        AlphaOutOfRange,
        YOutOfRange,
        QuadratureNonConvergence,
        DegreeOfDifficultyNegative,
        InfeasibleDual,
        NonConvergence,
        RankDeficient,
        ValueError,
    )
}

_COMMANDS = {
    "reduce": _cmd_reduce,
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "tables": _cmd_tables,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ProblemFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegreeOfDifficultyNegative as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOD
    except NonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (
        AlphaOutOfRange,
        YOutOfRange,
        QuadratureNonConvergence,
        InfeasibleDual,
        RankDeficient,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
