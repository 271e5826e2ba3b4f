"""Exact two-phase tableau simplex over Fractions with Bland's anti-cycling rule."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from ..logging_config import get_logger

logger = get_logger(__name__)


class Relation(str, Enum):
    """Constraint relations."""

    LE = "<="
    EQ = "="
    GE = ">="


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    row: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction


@dataclass
class LinearProgram:
    """Maximize (or minimize) objective . x subject to constraints and bounds.

    ``bounds[j]`` is ``(lower, upper)``; ``None`` means unbounded on that side.
    Variables default to ``x_j >= 0``.
    """

    objective: tuple[Fraction, ...]
    constraints: list[Constraint] = field(default_factory=list)
    bounds: Optional[list[tuple[Optional[Fraction], Optional[Fraction]]]] = None
    maximize: bool = True

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add(self, row: Sequence[Fraction], relation: Relation, rhs: Fraction) -> None:
        if len(row) != self.num_vars:
            raise ValueError(f"constraint has {len(row)} coefficients, expected {self.num_vars}")
        self.constraints.append(Constraint(tuple(Fraction(v) for v in row), relation, Fraction(rhs)))

    def variable_bounds(self) -> list[tuple[Optional[Fraction], Optional[Fraction]]]:
        if self.bounds is None:
            return [(Fraction(0), None)] * self.num_vars
        if len(self.bounds) != self.num_vars:
            raise ValueError(f"{len(self.bounds)} bounds for {self.num_vars} variables")
        return self.bounds


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: Optional[Fraction] = None
    solution: Optional[tuple[Fraction, ...]] = None
    pivots: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == LPStatus.OPTIMAL


class _Tableau:
    """Dense tableau for A x = b, x >= 0, b >= 0."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]) -> None:
        self.width = len(rows[0])
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0
        # Reduced costs of the objective being maximized, kept current by pivot().
        self.reduced: Optional[list[Fraction]] = None

    @property
    def num_cols(self) -> int:
        return self.width

    def pivot(self, r: int, c: int) -> None:
        pivot_row = self.rows[r]
        pivot_value = pivot_row[c]
        nonzero = [k for k, v in enumerate(pivot_row) if v != 0]
        if pivot_value != 1:
            for k in nonzero:
                pivot_row[k] /= pivot_value
            self.rhs[r] /= pivot_value
        pivot_rhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            factor = row[c]
            if factor != 0:
                for k in nonzero:
                    row[k] -= factor * pivot_row[k]
                self.rhs[i] -= factor * pivot_rhs
        if self.reduced is not None:
            factor = self.reduced[c]
            if factor != 0:
                for k in nonzero:
                    self.reduced[k] -= factor * pivot_row[k]
        self.basis[r] = c
        self.pivots += 1

    def _reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        reduced = list(cost)
        for b, row in zip(self.basis, self.rows):
            cb = cost[b]
            if cb == 0:
                continue
            for k, v in enumerate(row):
                if v != 0:
                    reduced[k] -= cb * v
        return reduced

    def maximize(self, cost: list[Fraction], allowed: list[bool]) -> LPStatus:
        self.reduced = self._reduced_costs(cost)
        try:
            while True:
                # Bland: lowest-index improving column, then lowest-index leaving basic variable.
                entering = next(
                    (j for j, rc in enumerate(self.reduced) if rc > 0 and allowed[j]),
                    None,
                )
                if entering is None:
                    return LPStatus.OPTIMAL
                leaving = None
                best = None
                for i, row in enumerate(self.rows):
                    if row[entering] > 0:
                        key = (self.rhs[i] / row[entering], self.basis[i])
                        if best is None or key < best:
                            best, leaving = key, i
                if leaving is None:
                    return LPStatus.UNBOUNDED
                self.pivot(leaving, entering)
        finally:
            self.reduced = None

    def objective(self, cost: list[Fraction]) -> Fraction:
        return sum((cost[b] * v for b, v in zip(self.basis, self.rhs)), Fraction(0))

    def values(self) -> list[Fraction]:
        x = [Fraction(0)] * self.num_cols
        for b, v in zip(self.basis, self.rhs):
            x[b] = v
        return x


def lp_solve(lp: LinearProgram) -> LPResult:
    """Solve ``lp`` exactly. Infeasible and unbounded programs are results, not errors."""
    bounds = lp.variable_bounds()
    for row in lp.constraints:
        if len(row.row) != lp.num_vars:
            raise ValueError("constraint width does not match objective")

    # Substitute every original variable by nonnegative columns:
    # x = offset + sum(sign * column).
    n = 0
    offsets: list[Fraction] = []
    extra: list[tuple[dict[int, Fraction], Relation, Fraction]] = []
    expansion: list[list[tuple[int, Fraction]]] = []
    for lower, upper in bounds:
        if lower is not None:
            offsets.append(Fraction(lower))
            expansion.append([(n, Fraction(1))])
            if upper is not None:
                extra.append(({n: Fraction(1)}, Relation.LE, Fraction(upper) - Fraction(lower)))
            n += 1
        elif upper is not None:
            offsets.append(Fraction(upper))
            expansion.append([(n, Fraction(-1))])
            n += 1
        else:
            offsets.append(Fraction(0))
            expansion.append([(n, Fraction(1)), (n + 1, Fraction(-1))])
            n += 2

    rows: list[tuple[list[Fraction], Relation, Fraction]] = []
    for constraint in lp.constraints:
        row = [Fraction(0)] * n
        rhs = constraint.rhs
        for j, coefficient in enumerate(constraint.row):
            if coefficient == 0:
                continue
            rhs -= coefficient * offsets[j]
            for col, sign in expansion[j]:
                row[col] += coefficient * sign
        rows.append((row, constraint.relation, rhs))
    for sparse, relation, rhs in extra:
        row = [Fraction(0)] * n
        for col, v in sparse.items():
            row[col] = v
        rows.append((row, relation, rhs))

    sense = Fraction(1) if lp.maximize else Fraction(-1)
    cost = [Fraction(0)] * n
    constant = Fraction(0)
    for j, c in enumerate(lp.objective):
        constant += c * offsets[j]
        for col, sign in expansion[j]:
            cost[col] += sense * c * sign

    if not rows:
        if any(c > 0 for c in cost):
            return LPResult(LPStatus.UNBOUNDED)
        x = _recover([Fraction(0)] * n, offsets, expansion)
        return LPResult(LPStatus.OPTIMAL, constant, x)

    # Normalize to b >= 0 and turn "row >= 0" into "-row <= 0", so that every
    # inequality whose slack can start basic gets no artificial column.
    normalized = []
    for row, relation, rhs in rows:
        if rhs < 0 or (rhs == 0 and relation == Relation.GE):
            row = [-v for v in row]
            rhs = -rhs
            relation = {Relation.LE: Relation.GE, Relation.GE: Relation.LE}.get(relation, relation)
        normalized.append((row, relation, rhs))
    num_slack = sum(1 for _, relation, _ in normalized if relation != Relation.EQ)
    num_artificial = sum(1 for _, relation, _ in normalized if relation != Relation.LE)
    total = n + num_slack + num_artificial
    tab_rows: list[list[Fraction]] = []
    tab_rhs: list[Fraction] = []
    basis: list[int] = []
    artificial = [False] * total
    slack_col = n
    art_col = n + num_slack
    for row, relation, rhs in normalized:
        full = row + [Fraction(0)] * (num_slack + num_artificial)
        if relation == Relation.LE:
            full[slack_col] = Fraction(1)
            basis.append(slack_col)
            slack_col += 1
        else:
            if relation == Relation.GE:
                full[slack_col] = Fraction(-1)
                slack_col += 1
            full[art_col] = Fraction(1)
            artificial[art_col] = True
            basis.append(art_col)
            art_col += 1
        tab_rows.append(full)
        tab_rhs.append(rhs)

    tableau = _Tableau(tab_rows, tab_rhs, basis)
    allowed = [True] * total
    if any(artificial[b] for b in basis):
        phase_one = [Fraction(-1) if artificial[j] else Fraction(0) for j in range(total)]
        tableau.maximize(phase_one, allowed)
        if tableau.objective(phase_one) < 0:
            logger.debug(f"LP infeasible after {tableau.pivots} pivots")
            return LPResult(LPStatus.INFEASIBLE, pivots=tableau.pivots)
        _drive_out_artificials(tableau, artificial)

    allowed = [not artificial[j] for j in range(total)]
    full_cost = cost + [Fraction(0)] * (total - n)
    status = tableau.maximize(full_cost, allowed)
    if status == LPStatus.UNBOUNDED:
        logger.debug(f"LP unbounded after {tableau.pivots} pivots")
        return LPResult(LPStatus.UNBOUNDED, pivots=tableau.pivots)

    x = _recover(tableau.values()[:n], offsets, expansion)
    value = sum((c * v for c, v in zip(lp.objective, x)), Fraction(0))
    logger.debug(f"LP optimal value {value} after {tableau.pivots} pivots")
    return LPResult(LPStatus.OPTIMAL, value, x, tableau.pivots)


def _drive_out_artificials(tableau: _Tableau, artificial: list[bool]) -> None:
    """Pivot zero-valued artificials out of the basis; drop redundant rows."""
    i = 0
    while i < len(tableau.rows):
        if not artificial[tableau.basis[i]]:
            i += 1
            continue
        column = next(
            (j for j in range(tableau.num_cols) if not artificial[j] and tableau.rows[i][j] != 0),
            None,
        )
        if column is None:
            del tableau.rows[i]
            del tableau.rhs[i]
            del tableau.basis[i]
            continue
        tableau.pivot(i, column)
        i += 1


def _recover(
    columns: list[Fraction],
    offsets: list[Fraction],
    expansion: list[list[tuple[int, Fraction]]],
) -> tuple[Fraction, ...]:
    return tuple(
        offsets[j] + sum((sign * columns[col] for col, sign in expansion[j]), Fraction(0))
        for j in range(len(offsets))
    )
