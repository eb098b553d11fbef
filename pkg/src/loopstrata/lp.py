"""Exact rational linear programming: two-phase simplex with Bland's rule.

All arithmetic is over Fraction; no floating point anywhere.  Outcomes are
values (optimal/unbounded/infeasible), never exceptions.  For bounded
feasible programs a dual certificate is extracted from the final tableau
so strong duality can be spot-checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Rat

Row = list[Fraction]


@dataclass
class LinearProgram:
    """maximize (or minimize) c.x subject to rows (coeffs, rel, rhs) with
    rel one of ">=", "<=", "="; variables are free (unrestricted sign)."""

    variables: tuple[str, ...]
    constraints: list[tuple[tuple[Rat, ...], str, Rat]] = field(default_factory=list)
    objective: tuple[Rat, ...] = ()
    maximize: bool = True

    def add(self, coeffs, rel: str, rhs) -> None:
        if rel not in (">=", "<=", "="):
            raise ValueError(f"bad relation {rel!r}")
        if len(coeffs) != len(self.variables):
            raise ValueError("coefficient length mismatch")
        self.constraints.append(
            (tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs))
        )

    def report(self) -> dict:
        return {
            "variables": list(self.variables),
            "maximize": self.maximize,
            "objective": [str(c) for c in self.objective],
            "constraints": [
                {"coeffs": [str(c) for c in co], "rel": rel, "rhs": str(rhs)}
                for co, rel, rhs in self.constraints
            ],
        }


@dataclass
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Rat | None = None
    point: tuple[Rat, ...] | None = None
    dual: tuple[Rat, ...] | None = None


def solve(lp: LinearProgram) -> LPResult:
    """Exact optimum with a vertex certificate; Bland pivoting throughout."""
    nv = len(lp.variables)
    sign = 1 if lp.maximize else -1
    obj = [sign * Fraction(c) for c in lp.objective]
    # split free variables x = x+ - x-; normalize constraints to <= / =
    rows: list[Row] = []
    rels: list[str] = []
    rhss: list[Fraction] = []
    for coeffs, rel, rhs in lp.constraints:
        if rel == ">=":
            coeffs = tuple(-c for c in coeffs)
            rhs = -rhs
            rel = "<="
        rows.append(list(coeffs))
        rels.append(rel)
        rhss.append(Fraction(rhs))
    m = len(rows)
    # columns: 2*nv split vars, then m slack (0 for '='), then m artificial
    nslack = m
    ncols = 2 * nv + nslack + m
    tab: list[Row] = []
    basis: list[int] = []
    for i in range(m):
        row = [Fraction(0)] * (ncols + 1)
        flip = -1 if rhss[i] < 0 else 1
        for j in range(nv):
            row[2 * j] = flip * rows[i][j]
            row[2 * j + 1] = -flip * rows[i][j]
        if rels[i] == "<=":
            row[2 * nv + i] = Fraction(flip)
        row[2 * nv + nslack + i] = Fraction(1)
        row[ncols] = flip * rhss[i]
        tab.append(row)
        basis.append(2 * nv + nslack + i)
    art_start = 2 * nv + nslack

    def pivot(r: int, c: int) -> None:
        prow = tab[r]
        inv = 1 / prow[c]
        tab[r] = [x * inv for x in prow]
        for i in range(m):
            if i != r and tab[i][c]:
                f = tab[i][c]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        basis[r] = c

    def run_phase(cost: Row, allowed) -> str:
        while True:
            # reduced costs: z_j - c_j with current basis
            red = list(cost)
            for i, b in enumerate(basis):
                cb = cost[b]
                if cb:
                    for j in range(ncols):
                        if tab[i][j]:
                            red[j] -= cb * tab[i][j]
            enter = -1
            for j in range(ncols):
                if allowed(j) and red[j] > 0:
                    enter = j  # Bland: first improving index
                    break
            if enter < 0:
                return "optimal"
            leave, best = -1, None
            for i in range(m):
                if tab[i][enter] > 0:
                    ratio = tab[i][ncols] / tab[i][enter]
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best, leave = ratio, i
            if leave < 0:
                return "unbounded"
            pivot(leave, enter)

    # phase 1: maximize -sum(artificials)
    cost1 = [Fraction(0)] * ncols
    for j in range(art_start, ncols):
        cost1[j] = Fraction(-1)
    # price out the initial artificial basis
    run_phase(cost1, lambda j: j < art_start or True)
    phase1_value = sum(tab[i][ncols] for i in range(m) if basis[i] >= art_start)
    infeasible = any(
        basis[i] >= art_start and tab[i][ncols] != 0 for i in range(m)
    )
    if infeasible:
        return LPResult("infeasible")
    # drive remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= art_start:
            for j in range(art_start):
                if tab[i][j] != 0:
                    pivot(i, j)
                    break

    cost2 = [Fraction(0)] * ncols
    for j in range(nv):
        cost2[2 * j] = obj[j]
        cost2[2 * j + 1] = -obj[j]
    status = run_phase(cost2, lambda j: j < art_start)
    if status == "unbounded":
        return LPResult("unbounded")
    point = [Fraction(0)] * nv
    for i, b in enumerate(basis):
        if b < 2 * nv:
            j, neg = divmod(b, 2)
            point[j] += -tab[i][ncols] if neg else tab[i][ncols]
    value = sum(c * p for c, p in zip(lp.objective, point))
    # dual: reduced costs of the artificial columns give y = c_B B^-1
    red = list(cost2)
    for i, b in enumerate(basis):
        cb = cost2[b]
        if cb:
            for j in range(ncols):
                if tab[i][j]:
                    red[j] -= cb * tab[i][j]
    dual = []
    for i in range(m):
        y = -red[art_start + i]
        flip = -1 if rhss[i] < 0 else 1
        orig_flip = -1 if lp.constraints[i][1] == ">=" else 1
        dual.append(sign * flip * orig_flip * y)
    return LPResult("optimal", value, tuple(point), tuple(dual))


def verify_certificate(lp: LinearProgram, res: LPResult) -> bool:
    """Substitute the optimal point back into the constraints and the
    objective; exact."""
    if res.status != "optimal":
        return False
    for coeffs, rel, rhs in lp.constraints:
        val = sum(c * p for c, p in zip(coeffs, res.point))
        if rel == "<=" and not val <= rhs:
            return False
        if rel == ">=" and not val >= rhs:
            return False
        if rel == "=" and val != rhs:
            return False
    return sum(c * p for c, p in zip(lp.objective, res.point)) == res.value


def dual_value(lp: LinearProgram, res: LPResult) -> Rat:
    """y . b for the extracted dual certificate."""
    return sum(y * rhs for y, (_c, _r, rhs) in zip(res.dual, lp.constraints))


def dual_feasible(lp: LinearProgram, res: LPResult) -> bool:
    """Check dual feasibility of the certificate for a maximization
    program: A^T y = c with sign conditions per constraint sense."""
    if res.dual is None:
        return False
    nv = len(lp.variables)
    for y, (_c, rel, _rhs) in zip(res.dual, lp.constraints):
        if lp.maximize:
            if rel == "<=" and y < 0:
                return False
            if rel == ">=" and y > 0:
                return False
        else:
            if rel == "<=" and y > 0:
                return False
            if rel == ">=" and y < 0:
                return False
    for j in range(nv):
        total = sum(
            y * coeffs[j] for y, (coeffs, _r, _b) in zip(res.dual, lp.constraints)
        )
        if total != lp.objective[j]:
            return False
    return True


# ---------------------------------------------------------------------------
# half-space reduction for filtration constraints


def reduce_halfspaces(constraints: list[tuple[tuple[int, ...], Rat]]):
    """Keep, for each weight, only the minimal level: the inequality for
    the deepest affine root space implies all shallower ones."""
    best: dict[tuple[int, ...], Fraction] = {}
    for alpha, level in constraints:
        level = Fraction(level)
        cur = best.get(alpha)
        if cur is None or level < cur:
            best[alpha] = level
    return sorted(best.items())
