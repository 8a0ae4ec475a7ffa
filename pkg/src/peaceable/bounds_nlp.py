"""Venn-region relaxations that bound army density from above.

Partition the board by which of the occupied line unions a cell belongs
to (rows R, columns C, diagonals D, skews S; the diagonal and skew
families split by index parity when the board has two parity classes).
One variable z_F per Venn region, the fraction of cells in F, turns
counting arguments into a small nonlinear program whose value bounds
min(|B|, |W|) / n^2 for every peaceful battle, independent of n.

Three models: the odd torus (16 regions, product constraints from
one-point line intersections), the even torus (64 regions, doubled
products for same-parity diagonal-skew pairs, zero products across
parities), and the regular board (64 regions, where varying line
lengths weaken the products to root inequalities).

The solver is a projected-gradient augmented Lagrangian over the box,
run from many starts; it reports the best feasible point found and
makes no claim of global optimality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .rng import SplitMix64

FEASIBILITY_TOL = 1e-8
OBJECTIVE_TOL = 1e-6

#: gradient guard for sqrt terms; never applied to reported residuals
SQRT_FLOOR = 1e-12


class ModelKind(str, Enum):
    ODD_TORUS = "odd-torus"
    EVEN_TORUS = "even-torus"
    REGULAR = "regular"


_SETS: dict[ModelKind, tuple[str, ...]] = {
    ModelKind.ODD_TORUS: ("R", "C", "D", "S"),
    ModelKind.EVEN_TORUS: ("R", "C", "D0", "D1", "S0", "S1"),
    ModelKind.REGULAR: ("R", "C", "D0", "D1", "S0", "S1"),
}


@dataclass(frozen=True)
class LinearEq:
    """a . z = rhs"""

    a: np.ndarray
    rhs: float
    label: str


@dataclass(frozen=True)
class ProductEq:
    """coeff * (a . z)(b . z) = (p . z)"""

    coeff: float
    a: np.ndarray
    b: np.ndarray
    p: np.ndarray
    label: str


@dataclass(frozen=True)
class LinearIneq:
    """a . z <= rhs"""

    a: np.ndarray
    rhs: float
    label: str


@dataclass(frozen=True)
class RootIneq:
    """p . z <= (a . z) sqrt(b . z) - (a . z)^2 / 4"""

    p: np.ndarray
    a: np.ndarray
    b: np.ndarray
    label: str


Constraint = Union[LinearEq, ProductEq, LinearIneq, RootIneq]


@dataclass(frozen=True)
class NlpModel:
    kind: ModelKind
    set_labels: tuple[str, ...]
    var_names: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    #: objective is max of the min over these linear forms
    branches: tuple[np.ndarray, ...]
    branch_labels: tuple[str, ...]

    @property
    def n_vars(self) -> int:
        return len(self.var_names)


@dataclass(frozen=True)
class SolveReport:
    best_point: np.ndarray
    best_objective: float
    constraint_violation: float
    starts: int
    converged_starts: int

    @property
    def feasible(self) -> bool:
        return self.constraint_violation <= FEASIBILITY_TOL


def _region_name(mask: int, labels: Sequence[str]) -> str:
    if mask == 0:
        return "z_0"
    return "z_" + "".join(s for b, s in enumerate(labels) if mask >> b & 1)


def _aggregate(m: int, bits: int) -> np.ndarray:
    """Indicator over regions containing every set in bits."""
    out = np.zeros(m)
    for mask in range(m):
        if mask & bits == bits:
            out[mask] = 1.0
    return out


def build_model(kind: ModelKind) -> NlpModel:
    """The Venn-region program for one board family.

    Constraint 0 is always the total-mass equality sum z = 1.  Every
    y_X in the displayed constraints is a linear aggregate of z, never
    a variable of its own, so the aggregates appear here only as
    coefficient vectors.
    """
    kind = ModelKind(kind)
    labels = _SETS[kind]
    k = len(labels)
    m = 1 << k
    bit = {s: 1 << b for b, s in enumerate(labels)}
    names = tuple(_region_name(mask, labels) for mask in range(m))

    def y(*sets: str) -> np.ndarray:
        return _aggregate(m, sum(bit[s] for s in sets))

    cons: list[Constraint] = [LinearEq(np.ones(m), 1.0, "total mass")]

    if kind is ModelKind.ODD_TORUS:
        pairs = [(x, xp) for i, x in enumerate(labels) for xp in labels[i + 1 :]]
        for x, xp in pairs:
            cons.append(ProductEq(1.0, y(x), y(xp), y(x, xp), f"y_{x}{xp} = y_{x} y_{xp}"))
        full = np.zeros(m)
        full[m - 1] = 1.0
        empty = np.zeros(m)
        empty[0] = 1.0
        return NlpModel(kind, labels, names, tuple(cons), (full, empty),
                        (names[m - 1], names[0]))

    # even torus and regular board share regions and objective
    crosses = ("D0", "D1", "S0", "S1")
    f2 = bit["R"] | bit["C"] | bit["D0"] | bit["S0"]
    f3 = bit["R"] | bit["C"] | bit["D1"] | bit["S1"]
    empty = np.zeros(m)
    empty[0] = 1.0
    black = np.zeros(m)
    black[f2] = 1.0
    black[f3] = 1.0
    branch_labels = (names[0], f"{names[f2]} + {names[f3]}")

    if kind is ModelKind.EVEN_TORUS:
        cons.append(ProductEq(1.0, y("R"), y("C"), y("R", "C"), "y_RC = y_R y_C"))
        cons.append(ProductEq(2.0, y("D0"), y("S0"), y("D0", "S0"), "y_D0S0 = 2 y_D0 y_S0"))
        cons.append(ProductEq(2.0, y("D1"), y("S1"), y("D1", "S1"), "y_D1S1 = 2 y_D1 y_S1"))
        for x in ("R", "C"):
            for xp in crosses:
                cons.append(ProductEq(1.0, y(x), y(xp), y(x, xp), f"y_{x}{xp} = y_{x} y_{xp}"))
    else:
        cons.append(ProductEq(1.0, y("R"), y("C"), y("R", "C"), "y_RC = y_R y_C"))
        # line lengths vary on the grid, so products weaken to two-sided bounds
        for x in ("R", "C"):
            for xp in crosses:
                cons.append(LinearIneq(y(x, xp) - y(xp), 0.0, f"y_{x}{xp} <= y_{xp}"))
                cons.append(RootIneq(y(x, xp), y(x), y(xp),
                                     f"y_{x}{xp} <= y_{x} sqrt(y_{xp}) - y_{x}^2/4"))
        # the two full regions live on opposite cell parities, and a generic
        # row-column intersection splits evenly between the parities, so the
        # black mass is capped at half of R cap C
        cons.append(LinearIneq(black - 0.5 * y("R", "C"), 0.0,
                               "z_F2 + z_F3 <= y_RC / 2"))

    for x, xp in (("D0", "D1"), ("D0", "S1"), ("S0", "D1"), ("S0", "S1")):
        cons.append(LinearEq(y(x, xp), 0.0, f"y_{x}{xp} = 0"))
    for x in crosses:
        cons.append(LinearIneq(y(x), 0.5, f"y_{x} <= 1/2"))

    return NlpModel(kind, labels, names, tuple(cons), (empty, black), branch_labels)


def evaluate(model: NlpModel, point: np.ndarray) -> tuple[float, np.ndarray]:
    """Objective and per-constraint violations at a z vector.

    Violations are |residual| for equalities and max(0, excess) for
    inequalities, in constraint order, evaluated without any gradient
    guards.  Plain float arithmetic; tolerances are the caller's job.
    """
    z = np.asarray(point, dtype=float)
    if z.shape != (model.n_vars,):
        raise ValueError(f"point has shape {z.shape}, model wants ({model.n_vars},)")
    objective = min(float(b @ z) for b in model.branches)
    res = np.empty(len(model.constraints))
    for i, con in enumerate(model.constraints):
        if isinstance(con, LinearEq):
            res[i] = abs(float(con.a @ z) - con.rhs)
        elif isinstance(con, ProductEq):
            res[i] = abs(con.coeff * float(con.a @ z) * float(con.b @ z) - float(con.p @ z))
        elif isinstance(con, LinearIneq):
            res[i] = max(0.0, float(con.a @ z) - con.rhs)
        else:
            ax = float(con.a @ z)
            bx = float(con.b @ z)
            res[i] = max(0.0, float(con.p @ z) - (ax * math.sqrt(max(bx, 0.0)) - ax * ax / 4.0))
    return objective, res


# ---------------------------------------------------------------------------
# solver: augmented Lagrangian with projected-gradient inner loops


def _split(model: NlpModel):
    eqs = [c for c in model.constraints if isinstance(c, (LinearEq, ProductEq))]
    ineqs = [c for c in model.constraints if isinstance(c, (LinearIneq, RootIneq))]
    return eqs, ineqs


def _eq_vals_grads(eqs, z):
    vals = np.empty(len(eqs))
    grads = np.empty((len(eqs), z.size))
    for i, con in enumerate(eqs):
        if isinstance(con, LinearEq):
            vals[i] = float(con.a @ z) - con.rhs
            grads[i] = con.a
        else:
            ax = float(con.a @ z)
            bx = float(con.b @ z)
            vals[i] = con.coeff * ax * bx - float(con.p @ z)
            grads[i] = con.coeff * (bx * con.a + ax * con.b) - con.p
    return vals, grads


def _ineq_vals_grads(ineqs, z):
    vals = np.empty(len(ineqs))
    grads = np.empty((len(ineqs), z.size))
    for i, con in enumerate(ineqs):
        if isinstance(con, LinearIneq):
            vals[i] = float(con.a @ z) - con.rhs
            grads[i] = con.a
        else:
            ax = float(con.a @ z)
            bx = max(float(con.b @ z), SQRT_FLOOR)
            root = math.sqrt(bx)
            vals[i] = float(con.p @ z) - ax * root + ax * ax / 4.0
            grads[i] = con.p - root * con.a - (ax / (2.0 * root)) * con.b + (ax / 2.0) * con.a
    return vals, grads


def _solve_one(
    model: NlpModel,
    z0: np.ndarray,
    merit_sink: Optional[Callable[[list[float]], None]] = None,
    max_outer: int = 60,
    max_inner: int = 2000,
) -> tuple[np.ndarray, bool]:
    """One augmented-Lagrangian run; returns (z, converged).

    Minimizes -t over (z, t) in the box, t an epigraph variable under
    the objective branches.  The inner projected-gradient loop uses an
    Armijo backtracking line search, so each inner merit sequence is
    non-increasing; merit_sink receives one list per inner loop.
    Converged means the constraint violation met FEASIBILITY_TOL after
    an inner loop reached a stationary point.
    """
    eqs, ineqs = _split(model)
    m = model.n_vars
    branches = model.branches

    x = np.empty(m + 1)
    x[:m] = np.clip(z0, 0.0, 1.0)
    x[m] = min(float(b @ x[:m]) for b in branches)

    lam = np.zeros(len(eqs))
    mu = np.zeros(len(ineqs) + len(branches))
    rho = 10.0
    prev_viol = math.inf

    def merit_grad(xv: np.ndarray, want_grad: bool = True):
        z, t = xv[:m], xv[m]
        ev, eg = _eq_vals_grads(eqs, z)
        iv, ig = _ineq_vals_grads(ineqs, z)
        # epigraph rows: t - branch . z <= 0
        bv = np.array([t - float(b @ z) for b in branches])
        gv = np.concatenate([iv, bv])
        merit = -t + float(lam @ ev) + 0.5 * rho * float(ev @ ev)
        act = np.maximum(0.0, mu + rho * gv)
        merit += float(act @ act - mu @ mu) / (2.0 * rho)
        if not want_grad:
            return merit, None, ev, gv
        gz = eg.T @ (lam + rho * ev)
        gz += ig.T @ act[: len(ineqs)]
        gt = -1.0
        for bi, b in enumerate(branches):
            a = act[len(ineqs) + bi]
            gz -= a * b
            gt += a
        grad = np.concatenate([gz, [gt]])
        return merit, grad, ev, gv

    for _outer in range(max_outer):
        step = 1.0
        merit, grad, ev, gv = merit_grad(x)
        merits = [merit]
        stationary = False
        for _inner in range(max_inner):
            # Armijo backtracking on the box-projected step
            while True:
                cand = np.clip(x - step * grad, 0.0, 1.0)
                direction = cand - x
                if (
                    merit_grad(cand, want_grad=False)[0]
                    <= merit + 1e-4 * float(grad @ direction)
                    or step < 1e-14
                ):
                    break
                step *= 0.5
            if step < 1e-14 or float(np.abs(direction).max()) < 1e-14:
                stationary = True
                break
            x = cand
            merit, grad, ev, gv = merit_grad(x)
            merits.append(merit)
            step = min(step * 2.0, 1.0)
        if merit_sink is not None:
            merit_sink(merits)

        viol = max(
            float(np.abs(ev).max()) if ev.size else 0.0,
            float(np.maximum(0.0, gv).max()) if gv.size else 0.0,
        )
        if viol <= FEASIBILITY_TOL and stationary:
            return x[:m], True
        lam += rho * ev
        mu = np.maximum(0.0, mu + rho * gv)
        if viol > 0.25 * prev_viol:
            rho = min(rho * 4.0, 1e9)
        prev_viol = viol
    return x[:m], False


def _structured_starts(model: NlpModel) -> list[np.ndarray]:
    m = model.n_vars
    starts = [np.full(m, 1.0 / m)]
    if model.kind is ModelKind.ODD_TORUS:
        z = np.zeros(m)
        z[0] = z[m - 1] = 0.125
        for mask in range(m):
            if bin(mask).count("1") == 2:
                z[mask] = 0.125
        starts.append(z)
    else:
        # limit shape of the best known even-torus construction
        c = 2.0 - math.sqrt(3.0)
        bit = {s: 1 << b for b, s in enumerate(model.set_labels)}
        z = np.zeros(m)
        z[0] = c / 2.0
        z[bit["R"] | bit["C"] | bit["D0"] | bit["S0"]] = 0.25 + c * c / 4.0
        z[bit["R"] | bit["C"] | bit["D1"] | bit["S1"]] = c / 2.0
        z[bit["R"] | bit["D1"] | bit["S1"]] = (1.0 - c) / 4.0
        z[bit["C"] | bit["D1"] | bit["S1"]] = (1.0 - c) / 4.0
        z[bit["R"] | bit["D0"] | bit["S0"]] = c * (1.0 - c) / 4.0
        z[bit["C"] | bit["D0"] | bit["S0"]] = c * (1.0 - c) / 4.0
        starts.append(z)
    return starts


def solve_multistart(
    model: NlpModel,
    seed: int,
    n_starts: int,
    merit_sink: Optional[Callable[[list[float]], None]] = None,
) -> SolveReport:
    """Best feasible point over seeded multistart local solves.

    Starts are the fixed structured points followed by Dirichlet-style
    random simplex draws.  Reduction keeps the maximum objective among
    converged starts, ties to the lowest start index; if nothing
    converges the least-violating point is reported and the report's
    feasible flag goes false.
    """
    if n_starts < 1:
        raise ValueError(f"n_starts must be >= 1, got {n_starts}")
    rng = SplitMix64(seed)
    m = model.n_vars
    starts = _structured_starts(model)[:n_starts]
    while len(starts) < n_starts:
        draws = np.array([-math.log(1.0 - rng.next_float()) for _ in range(m)])
        starts.append(draws / draws.sum())

    best: Optional[tuple[float, np.ndarray, float]] = None  # (objective, z, violation)
    fallback: Optional[tuple[float, np.ndarray, float]] = None
    converged_count = 0
    for z0 in starts:
        z, converged = _solve_one(model, z0, merit_sink)
        objective, residuals = evaluate(model, z)
        viol = float(residuals.max()) if residuals.size else 0.0
        if converged and viol <= FEASIBILITY_TOL:
            converged_count += 1
            if best is None or objective > best[0] + OBJECTIVE_TOL * 1e-3:
                best = (objective, z, viol)
        if fallback is None or viol < fallback[2]:
            fallback = (objective, z, viol)
    chosen = best if best is not None else fallback
    assert chosen is not None
    return SolveReport(
        best_point=chosen[1],
        best_objective=chosen[0],
        constraint_violation=chosen[2],
        starts=n_starts,
        converged_starts=converged_count,
    )


# ---------------------------------------------------------------------------
# text export and round-trip parser


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _sum_expr(vec: np.ndarray, names: Sequence[str]) -> str:
    terms = []
    for i, coef in enumerate(vec):
        if coef == 0.0:
            continue
        terms.append(names[i] if coef == 1.0 else f"(* {_fmt(coef)} {names[i]})")
    if not terms:
        return "0"
    if len(terms) == 1:
        return terms[0]
    return "(+ " + " ".join(terms) + ")"


def export_model(model: NlpModel, path: str) -> None:
    """Write the model as line-oriented text that round-trips.

    One `var` line per region variable, one `con` line per constraint
    in model order, one `obj` line with the min of the branches; all
    expressions in prefix notation.
    """
    names = model.var_names
    lines = [f"var {name} in [0,1]" for name in names]
    for con in model.constraints:
        if isinstance(con, LinearEq):
            lines.append(f"con {_sum_expr(con.a, names)} = {_fmt(con.rhs)}")
        elif isinstance(con, ProductEq):
            prod = f"(* {_sum_expr(con.a, names)} {_sum_expr(con.b, names)})"
            if con.coeff != 1.0:
                prod = f"(* {_fmt(con.coeff)} {prod})"
            lines.append(f"con {prod} = {_sum_expr(con.p, names)}")
        elif isinstance(con, LinearIneq):
            lines.append(f"con {_sum_expr(con.a, names)} <= {_fmt(con.rhs)}")
        else:
            a = _sum_expr(con.a, names)
            bound = f"(- (* {a} (sqrt {_sum_expr(con.b, names)})) (* 0.25 (* {a} {a})))"
            lines.append(f"con {_sum_expr(con.p, names)} <= {bound}")
    branches = " ".join(_sum_expr(b, names) for b in model.branches)
    lines.append(f"obj max (min {branches})")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


Expr = Union[str, float, list]


@dataclass(frozen=True)
class ParsedModel:
    var_names: tuple[str, ...]
    bounds: tuple[tuple[float, float], ...]
    constraints: tuple[tuple[Expr, str, Expr], ...]
    objective: Expr


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _parse_expr(tokens: list[str], pos: int) -> tuple[Expr, int]:
    tok = tokens[pos]
    if tok == "(":
        op = tokens[pos + 1]
        args: list[Expr] = [op]
        pos += 2
        while tokens[pos] != ")":
            node, pos = _parse_expr(tokens, pos)
            args.append(node)
        return args, pos + 1
    if tok == ")":
        raise ValueError("unbalanced parenthesis in expression")
    try:
        return float(tok), pos + 1
    except ValueError:
        return tok, pos + 1


def _parse_single(tokens: list[str]) -> Expr:
    node, pos = _parse_expr(tokens, 0)
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in expression: {tokens[pos:]}")
    return node


def parse_model(path: str) -> ParsedModel:
    names: list[str] = []
    bounds: list[tuple[float, float]] = []
    cons: list[tuple[Expr, str, Expr]] = []
    objective: Optional[Expr] = None
    with open(path, encoding="ascii") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            head, rest = line.split(None, 1)
            if head == "var":
                name, inkw, box = rest.split(None, 2)
                if inkw != "in":
                    raise ValueError(f"malformed var line: {line}")
                lo, hi = box.strip("[]").split(",")
                names.append(name)
                bounds.append((float(lo), float(hi)))
            elif head == "con":
                tokens = _tokenize(rest)
                depth = 0
                split_at = None
                for i, tok in enumerate(tokens):
                    depth += tok == "("
                    depth -= tok == ")"
                    if depth == 0 and tok in ("=", "<="):
                        split_at = i
                        break
                if split_at is None:
                    raise ValueError(f"constraint without relation: {line}")
                lhs = _parse_single(tokens[:split_at])
                rhs = _parse_single(tokens[split_at + 1 :])
                cons.append((lhs, tokens[split_at], rhs))
            elif head == "obj":
                sense, expr = rest.split(None, 1)
                if sense != "max":
                    raise ValueError(f"unsupported objective sense: {sense}")
                objective = _parse_single(_tokenize(expr))
            else:
                raise ValueError(f"unknown line kind: {head}")
    if objective is None:
        raise ValueError("model has no objective line")
    return ParsedModel(tuple(names), tuple(bounds), tuple(cons), objective)


def _eval_expr(node: Expr, env: dict[str, float]) -> float:
    if isinstance(node, float):
        return node
    if isinstance(node, str):
        return env[node]
    op, *args = node
    vals = [_eval_expr(a, env) for a in args]
    if op == "+":
        return sum(vals)
    if op == "-":
        if len(vals) != 2:
            raise ValueError("- takes exactly two arguments")
        return vals[0] - vals[1]
    if op == "*":
        out = 1.0
        for v in vals:
            out *= v
        return out
    if op == "sqrt":
        return math.sqrt(vals[0])
    if op == "min":
        return min(vals)
    raise ValueError(f"unknown operator: {op}")


def evaluate_parsed(parsed: ParsedModel, point: np.ndarray) -> tuple[float, np.ndarray]:
    """Objective and violations of a parsed text model; mirrors evaluate."""
    z = np.asarray(point, dtype=float)
    if z.shape != (len(parsed.var_names),):
        raise ValueError(f"point has shape {z.shape}, model wants ({len(parsed.var_names)},)")
    env = dict(zip(parsed.var_names, map(float, z)))
    res = np.empty(len(parsed.constraints))
    for i, (lhs, op, rhs) in enumerate(parsed.constraints):
        lv = _eval_expr(lhs, env)
        rv = _eval_expr(rhs, env)
        res[i] = abs(lv - rv) if op == "=" else max(0.0, lv - rv)
    return _eval_expr(parsed.objective, env), res
