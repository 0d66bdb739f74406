"""Exact linear programming over rational (and quadratic-extension) scalars.

Feasibility and optimization for small linear programs, used by the
distinguishability, face, and spectrality queries on polytopes.  Everything
is exact: coefficients are Fractions (or Sqrt5 values for bodies defined
over Q(sqrt 5)), the simplex method uses Bland's anti-cycling rule, and a
returned witness or dual certificate re-verifies with zero tolerance.

Floats are rejected at construction; callers that start from floating-point
data must go through :func:`rationalize_vector`, which records the rounding
error it introduced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .scalars import Sqrt5, format_scalar, parse_scalar

RELATIONS = ("<=", "=", ">=")


class LPError(ValueError):
    """Malformed program or internal certificate failure."""


def _coerce(value):
    if isinstance(value, bool):
        raise LPError("boolean is not a scalar coefficient")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Fraction, Sqrt5)):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, float):
        raise LPError(
            "float coefficients are not accepted; rationalize explicitly "
            "with rationalize_vector"
        )
    raise LPError(f"unsupported coefficient type {type(value).__name__}")


@dataclass(frozen=True)
class LinearProgram:
    """Immutable exact linear program.

    ``constraints`` is a tuple of ``(row, relation, rhs)`` triples with
    relation one of ``<=``, ``=``, ``>=``.  Variables are free unless
    constrained; per-variable bounds passed to :func:`linear_program` are
    normalized into single-variable rows here.  ``objective`` may be None
    for pure feasibility programs; ``sense`` is ``max`` or ``min``.
    """

    n_vars: int
    constraints: tuple
    objective: tuple | None = None
    sense: str = "max"

    def to_json(self) -> str:
        doc = {
            "n_vars": self.n_vars,
            "sense": self.sense,
            "objective": None
            if self.objective is None
            else [format_scalar(v) for v in self.objective],
            "constraints": [
                {
                    "coeffs": [format_scalar(v) for v in row],
                    "rel": rel,
                    "rhs": format_scalar(rhs),
                }
                for row, rel, rhs in self.constraints
            ],
        }
        return json.dumps(doc, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "LinearProgram":
        doc = json.loads(text)
        return linear_program(
            constraints=[(c["coeffs"], c["rel"], c["rhs"]) for c in doc["constraints"]],
            objective=doc["objective"],
            sense=doc["sense"],
            n_vars=doc["n_vars"],
        )


def linear_program(constraints, objective=None, sense="max", n_vars=None, bounds=None):
    """Validate and freeze a program; the only supported constructor.

    ``bounds``, when given, is a sequence of ``(lo, hi)`` pairs (either end
    may be None) that become ``x_j >= lo`` / ``x_j <= hi`` rows.
    """
    rows = []
    width = n_vars
    for row, rel, rhs in constraints:
        coeffs = tuple(_coerce(v) for v in row)
        if width is None:
            width = len(coeffs)
        if len(coeffs) != width:
            raise LPError(f"constraint row has {len(coeffs)} coefficients, expected {width}")
        if rel not in RELATIONS:
            raise LPError(f"unknown relation {rel!r}")
        rows.append((coeffs, rel, _coerce(rhs)))
    if width is None:
        raise LPError("cannot infer variable count from an empty program")
    if width < 1:
        raise LPError("programs need at least one variable")
    if not rows and not bounds:
        raise LPError("programs need at least one constraint")
    if bounds is not None:
        if len(bounds) != width:
            raise LPError("bounds length must match variable count")
        for j, (lo, hi) in enumerate(bounds):
            unit = tuple(Fraction(int(k == j)) for k in range(width))
            if lo is not None:
                rows.append((unit, ">=", _coerce(lo)))
            if hi is not None:
                rows.append((unit, "<=", _coerce(hi)))
    obj = None
    if objective is not None:
        obj = tuple(_coerce(v) for v in objective)
        if len(obj) != width:
            raise LPError(f"objective has {len(obj)} coefficients, expected {width}")
    if sense not in ("max", "min"):
        raise LPError(f"unknown sense {sense!r}")
    return LinearProgram(n_vars=width, constraints=tuple(rows), objective=obj, sense=sense)


@dataclass(frozen=True)
class Feasible:
    witness: tuple

    status = "feasible"


@dataclass(frozen=True)
class Infeasible:
    status = "infeasible"


@dataclass(frozen=True)
class Unbounded:
    status = "unbounded"


@dataclass(frozen=True)
class DualCertificate:
    """Dual solution for the standardized program max{cx : Ax = b, x >= 0}.

    ``y`` is dual-feasible when y.col_j >= c_j for every column; strong
    duality then pins y.b to the primal optimum.  One multiplier per
    standardized row, redundant rows included.
    """

    rows: tuple
    rhs: tuple
    costs: tuple
    y: tuple

    def is_valid(self, value) -> bool:
        m = len(self.rows)
        n = len(self.costs)
        for j in range(n):
            reduced = sum(self.y[i] * self.rows[i][j] for i in range(m)) - self.costs[j]
            if reduced < 0:
                return False
        dual_value = sum(self.y[i] * self.rhs[i] for i in range(m))
        return dual_value == value


@dataclass(frozen=True)
class Optimal:
    value: object
    witness: tuple
    certificate: DualCertificate

    status = "optimal"


def check_witness(lp: LinearProgram, point) -> bool:
    """Exact zero-tolerance check of every constraint at ``point``."""
    if len(point) != lp.n_vars:
        raise LPError("witness length mismatch")
    for row, rel, rhs in lp.constraints:
        lhs = sum(c * x for c, x in zip(row, point))
        ok = lhs <= rhs if rel == "<=" else lhs >= rhs if rel == ">=" else lhs == rhs
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# simplex core


def _standardize(lp: LinearProgram, objective):
    """Rewrite as max{c.x : Ax = b, x >= 0, b >= 0}.

    Free variable x_j splits into x_j^+ - x_j^- (columns 2j, 2j+1); <= rows
    gain a slack column, >= rows a surplus column; rows are negated as needed
    to make the right-hand side nonnegative.
    """
    n = lp.n_vars
    slacks = sum(1 for _, rel, _ in lp.constraints if rel != "=")
    width = 2 * n + slacks
    rows, rhs = [], []
    slack_at = 2 * n
    for row, rel, rhs_v in lp.constraints:
        body = [0] * width
        for j, c in enumerate(row):
            body[2 * j] = c
            body[2 * j + 1] = -c
        if rel != "=":
            body[slack_at] = 1 if rel == "<=" else -1
            slack_at += 1
        if rhs_v < 0:
            body = [-v for v in body]
            rhs_v = -rhs_v
        rows.append(body)
        rhs.append(rhs_v)
    cost = [0] * width
    if objective is not None:
        sign = 1 if lp.sense == "max" else -1
        for j, c in enumerate(objective):
            cost[2 * j] = sign * c
            cost[2 * j + 1] = -sign * c
    return rows, rhs, cost


def _pivot(rows, w, basis, r, j):
    piv = rows[r][j]
    rows[r] = [v / piv for v in rows[r]]
    for i in range(len(rows)):
        if i != r and rows[i][j] != 0:
            f = rows[i][j]
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
    if w[j] != 0:
        f = w[j]
        for k in range(len(w)):
            w[k] = w[k] - f * rows[r][k]
    basis[r] = j


def _iterate(rows, w, basis, allowed):
    """Bland's rule loop; ``allowed`` bounds the entering-column range."""
    while True:
        enter = next((j for j in range(allowed) if w[j] > 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(rows, w, basis, best[1], enter)


def _solve_standard(rows, rhs, cost):
    """Two-phase primal simplex on equality standard form with b >= 0.

    Returns ("infeasible",) or ("optimal"|"unbounded", rows, w, basis, kept)
    where ``kept`` lists the surviving original row indices and the artificial
    block (columns n..n+m-1 of the final tableau, restricted to kept rows)
    holds the basis inverse for dual extraction.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    tableau = [list(rows[i]) + [0] * m + [rhs[i]] for i in range(m)]
    for i in range(m):
        tableau[i][n + i] = 1
    basis = list(range(n, n + m))
    # Phase I: maximize -(sum of artificials); reduced costs via c_B = -1.
    w = [0] * (n + m + 1)
    for j in range(n):
        w[j] = sum(tableau[i][j] for i in range(m))
    w[-1] = sum(tableau[i][-1] for i in range(m))
    _iterate(tableau, w, basis, n + m)
    if w[-1] != 0:
        return ("infeasible",)
    # Drive leftover artificials out of the (degenerate) basis.
    drop = []
    for i in range(m):
        if basis[i] >= n:
            j = next((k for k in range(n) if tableau[i][k] != 0), None)
            if j is None:
                drop.append(i)
            else:
                _pivot(tableau, w, basis, i, j)
    kept = [i for i in range(m) if i not in drop]
    tableau = [tableau[i] for i in kept]
    basis = [basis[i] for i in kept]
    # Phase II reduced costs from scratch; artificials barred from entering.
    w = list(cost) + [0] * m + [0]
    for i, row in enumerate(tableau):
        cb = cost[basis[i]]
        if cb != 0:
            for k in range(n + m + 1):
                w[k] = w[k] - cb * row[k]
    verdict = _iterate(tableau, w, basis, n)
    return (verdict, tableau, w, basis, kept)


def _extract_primal(tableau, basis, n):
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = tableau[i][-1]
    return x


def _user_witness(x, n_vars):
    return tuple(x[2 * j] - x[2 * j + 1] for j in range(n_vars))


def lp_feasible(lp: LinearProgram):
    """Exact feasibility: Feasible(witness) or Infeasible."""
    rows, rhs, cost = _standardize(lp, None)
    result = _solve_standard(rows, rhs, cost)
    if result[0] == "infeasible":
        return Infeasible()
    _, tableau, _, basis, _ = result
    witness = _user_witness(_extract_primal(tableau, basis, len(rows[0])), lp.n_vars)
    if not check_witness(lp, witness):
        raise LPError("internal error: simplex witness failed exact re-check")
    return Feasible(witness=witness)


def lp_optimize(lp: LinearProgram):
    """Exact optimum with a verified dual certificate.

    Returns Optimal(value, witness, certificate), Unbounded, or Infeasible.
    The certificate refers to the standardized equality form; it is checked
    before returning (a failure would be an internal bug, raised as LPError).
    """
    if lp.objective is None:
        raise LPError("lp_optimize requires an objective")
    rows, rhs, cost = _standardize(lp, lp.objective)
    result = _solve_standard(rows, rhs, cost)
    if result[0] == "infeasible":
        return Infeasible()
    if result[0] == "unbounded":
        return Unbounded()
    _, tableau, w, basis, _ = result
    n = len(rows[0])
    x = _extract_primal(tableau, basis, n)
    witness = _user_witness(x, lp.n_vars)
    if not check_witness(lp, witness):
        raise LPError("internal error: simplex witness failed exact re-check")
    std_value = -w[-1]
    y = tuple(-w[n + i] for i in range(len(rows)))
    cert = DualCertificate(
        rows=tuple(tuple(r) for r in rows),
        rhs=tuple(rhs),
        costs=tuple(cost),
        y=y,
    )
    if not cert.is_valid(std_value):
        raise LPError("internal error: dual certificate failed exact verification")
    sign = 1 if lp.sense == "max" else -1
    direct = sum(c * v for c, v in zip(lp.objective, witness))
    if sign * direct != std_value:
        raise LPError("internal error: objective value mismatch")
    return Optimal(value=direct, witness=witness, certificate=cert)


# ---------------------------------------------------------------------------
# float -> rational bridge


def rationalize_vector(values, max_denominator=10**6):
    """Round floats to Fractions with bounded denominator, reporting the error.

    Returns (fractions, report) where report records the denominator bound
    and the largest absolute rounding error as a float.  This is the only
    sanctioned entry point for floating-point data.
    """
    fracs = []
    worst = 0.0
    for v in values:
        f = Fraction(float(v)).limit_denominator(max_denominator)
        fracs.append(f)
        err = abs(float(f) - float(v))
        if err > worst:
            worst = err
    report = {"max_denominator": max_denominator, "max_abs_error": worst}
    return tuple(fracs), report
