"""Exact rational linear programming.

A small primal simplex (Bland's rule, two-phase) over arbitrary-precision
rationals, plus the higher-level tools the solver pipeline needs:

* `solve_lp` - exact optimum of a named-variable LP.  Problems with many
  constraints and few variables are solved through their dual so the
  simplex basis stays small; the recovered primal point is verified
  exactly against the original problem.
* `solve_with_generation` - cutting-plane driver for implicitly described
  constraint families.
* `is_functional_fixed` / `relative_interior_point` - the fixedness and
  interior-point primitives behind fix(Q) and universal allocations.
* `affine_hull` / `enumerate_vertices` - exact affine-hull and vertex
  enumeration utilities for polytopes described by constraint lists.

No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping, Optional

from ._linalg import nullspace, rank, rref
from ._rational import Q, ZERO, rat

LE, EQ, GE = "<=", "=", ">="

# Optional debug hook; the CLI installs a printer here behind --dump-lp.
dump_hook: Optional[Callable] = None


class InfeasibleSystemError(ValueError):
    """A constraint system expected to be feasible is not."""


class SeparationContractError(RuntimeError):
    """A separation callback returned a constraint that is not violated."""


@dataclass(frozen=True)
class LinearFunctional:
    """Sparse linear functional sum(coeffs[v] * x[v]) + constant."""

    coeffs: Mapping
    constant: object = ZERO

    def value(self, point: Mapping):
        return sum((c * point[v] for v, c in self.coeffs.items()), Q(self.constant))

    def dot(self, vector: Mapping):
        """Pairing with a direction (constant ignored)."""
        return sum((c * vector.get(v, ZERO) for v, c in self.coeffs.items()), ZERO)

    def scaled(self, factor) -> "LinearFunctional":
        f = Q(factor)
        return LinearFunctional({v: c * f for v, c in self.coeffs.items()}, f * Q(self.constant))


def lf(coeffs: Mapping, constant=0) -> LinearFunctional:
    return LinearFunctional({v: rat(c) for v, c in coeffs.items() if rat(c) != 0}, rat(constant))


Constraint = tuple  # (LinearFunctional, relation, rhs)


def constraint_slack(con: Constraint, point: Mapping):
    """Nonnegative slack of an inequality at a point (0 when tight)."""
    f, rel, rhs = con
    v = f.value(point)
    if rel == LE:
        return Q(rhs) - v
    if rel == GE:
        return v - Q(rhs)
    raise ValueError("equality constraints have no slack")


def constraint_satisfied(con: Constraint, point: Mapping) -> bool:
    f, rel, rhs = con
    v = f.value(point)
    r = Q(rhs)
    return v <= r if rel == LE else v >= r if rel == GE else v == r


@dataclass
class LPProblem:
    variables: list
    objective: LinearFunctional
    constraints: list
    nonneg_vars: set = field(default_factory=set)

    def check_well_formed(self):
        declared = set(self.variables)
        for f, rel, _ in self.constraints:
            if rel not in (LE, EQ, GE):
                raise ValueError(f"bad relation {rel!r}")
            undeclared = set(f.coeffs) - declared
            if undeclared:
                raise ValueError(f"constraint references undeclared variables {undeclared}")
        if set(self.objective.coeffs) - declared:
            raise ValueError("objective references undeclared variables")


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    point: Optional[dict]
    value: Optional[object]

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


# ---------------------------------------------------------------------------
# simplex core: min c.z  s.t.  A z = b, z >= 0
# ---------------------------------------------------------------------------


def _pivot(T, basis, row, col, width):
    inv = T[row][col]
    if inv != 1:
        T[row] = [v / inv for v in T[row]]
    prow = T[row]
    for i in range(len(T)):
        if i == row:
            continue
        f = T[i][col]
        if f != 0:
            ri = T[i]
            T[i] = [a - f * b for a, b in zip(ri, prow)]
    basis[row] = col


def _price_out(T, basis, cost, width):
    """Reduced-cost row for the given phase costs."""
    r = list(cost)
    for i, bi in enumerate(basis):
        cb = cost[bi]
        if cb != 0:
            row = T[i]
            for j in range(width):
                if row[j] != 0:
                    r[j] -= cb * row[j]
    return r


def _bland_iterate(T, basis, r, cost, width, allowed):
    """Run Bland pivots until optimal or unbounded. Returns True if optimal."""
    m = len(T)
    while True:
        enter = next((j for j in range(width) if allowed[j] and r[j] < 0), None)
        if enter is None:
            return True
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return False
        f = r[enter]
        _pivot(T, basis, leave, enter, width)
        if f != 0:
            prow = T[leave]
            r[:] = [rj - f * pj for rj, pj in zip(r, prow[:width])]


def _simplex_standard(A, b, c, want_multipliers=False):
    """Two-phase simplex. Returns (status, z, objective, multipliers).

    Multipliers are reported for the rows as given (before any internal
    sign normalization); they are None unless requested.
    """
    m = len(A)
    n = len(A[0]) if m else len(c)
    if m == 0:
        if any(cj < 0 for cj in c):
            return "unbounded", None, None, None
        return "optimal", [ZERO] * n, ZERO, [] if want_multipliers else None
    flips = [1] * m
    T = []
    for i in range(m):
        row = list(A[i])
        rhs = Q(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            flips[i] = -1
        T.append(row + [ZERO] * m + [rhs])
        T[i][n + i] = Q(1)
    width = n + m
    basis = list(range(n, n + m))
    allowed = [True] * width

    # phase 1: drive artificials to zero
    cost1 = [ZERO] * n + [Q(1)] * m
    r = _price_out(T, basis, cost1, width)
    if not _bland_iterate(T, basis, r, cost1, width, allowed):
        raise RuntimeError("phase 1 cannot be unbounded")  # pragma: no cover
    if sum((cost1[bi] * T[i][width] for i, bi in enumerate(basis)), ZERO) != 0:
        return "infeasible", None, None, None
    # pivot surviving artificials out (or leave them on all-zero rows)
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col, width)

    # phase 2
    for j in range(n, width):
        allowed[j] = False
    cost2 = list(c) + [ZERO] * m
    r = _price_out(T, basis, cost2, width)
    if not _bland_iterate(T, basis, r, cost2, width, allowed):
        return "unbounded", None, None, None

    z = [ZERO] * n
    for i, bi in enumerate(basis):
        if bi < n:
            z[bi] = T[i][width]
    obj = sum((c[j] * z[j] for j in range(n) if z[j] != 0), ZERO)
    pi = None
    if want_multipliers:
        # artificial columns hold B^{-1}; pi = cB . B^{-1}, unflipped
        pi = []
        for k in range(m):
            val = sum((cost2[bi] * T[i][n + k] for i, bi in enumerate(basis)), ZERO)
            pi.append(val * flips[k])
    return "optimal", z, obj, pi


# ---------------------------------------------------------------------------
# named-variable front end
# ---------------------------------------------------------------------------


def _solve_direct(p: LPProblem, want_multipliers=False):
    """Maximize p.objective. Returns (LPSolution, multipliers or None)."""
    cols = []  # (var, sign)
    col_of = {}
    for v in p.variables:
        col_of[v] = len(cols)
        cols.append((v, 1))
        if v not in p.nonneg_vars:
            cols.append((v, -1))
    nstruct = len(cols)
    nslack = sum(1 for _, rel, _ in p.constraints if rel != EQ)
    ncols = nstruct + nslack
    A, b = [], []
    si = 0
    for f, rel, rhs in p.constraints:
        row = [ZERO] * ncols
        for v, cv in f.coeffs.items():
            j = col_of[v]
            row[j] += cv
            if j + 1 < nstruct and cols[j + 1] == (v, -1):
                row[j + 1] -= cv
        rr = Q(rhs) - Q(f.constant)
        if rel == GE:
            row = [-x for x in row]
            rr = -rr
            rel = LE
        if rel == LE:
            row[nstruct + si] = Q(1)
            si += 1
        A.append(row)
        b.append(rr)
    c = [ZERO] * ncols
    for v, cv in p.objective.coeffs.items():
        j = col_of[v]
        c[j] -= cv  # minimize the negation
        if j + 1 < nstruct and cols[j + 1] == (v, -1):
            c[j + 1] += cv
    status, z, _, pi = _simplex_standard(A, b, c, want_multipliers)
    if status != "optimal":
        return LPSolution(status, None, None), None
    point = {v: ZERO for v in p.variables}
    for j, (v, sign) in enumerate(cols):
        if z[j] != 0:
            point[v] += sign * z[j]
    value = p.objective.value(point)
    return LPSolution("optimal", point, value), pi


def _dual_of(p: LPProblem) -> tuple:
    """Dual of `max objective` with rows normalized to {<=, =}.

    Returns (dual problem posed as a max LP, list of primal-variable row
    names in order).  Minimizing b.y is expressed as maximizing -b.y.
    """
    rows = []
    for f, rel, rhs in p.constraints:
        coeffs = dict(f.coeffs)
        b = Q(rhs) - Q(f.constant)
        if rel == GE:
            coeffs = {v: -c for v, c in coeffs.items()}
            b = -b
            rel = LE
        rows.append((coeffs, rel, b))
    yvars = [("y", i) for i in range(len(rows))]
    nonneg = {("y", i) for i, (_, rel, _) in enumerate(rows) if rel == LE}
    obj = LinearFunctional({("y", i): -b for i, (_, _, b) in enumerate(rows) if b != 0})
    by_var = {v: {} for v in p.variables}
    for i, (coeffs, _, _) in enumerate(rows):
        for v, c in coeffs.items():
            by_var[v][("y", i)] = c
    dual_cons = []
    for v in p.variables:
        rel = GE if v in p.nonneg_vars else EQ
        cj = Q(p.objective.coeffs.get(v, ZERO))
        dual_cons.append((LinearFunctional(by_var[v]), rel, cj))
    dual = LPProblem(yvars, obj, dual_cons, nonneg)
    return dual, p.variables


def _solve_via_dual(p: LPProblem) -> Optional[LPSolution]:
    """Solve through the dual (small basis). None means: fall back."""
    dual, row_vars = _dual_of(p)
    sol, pi = _solve_direct(dual, want_multipliers=True)
    if sol.status == "unbounded":
        return LPSolution("infeasible", None, None)
    if sol.status == "infeasible":
        feas, _ = _solve_direct(
            LPProblem(p.variables, LinearFunctional({}), p.constraints, p.nonneg_vars)
        )
        return LPSolution("unbounded" if feas.optimal else "infeasible", None, None)
    dual_min = -sol.value  # value of min b.y = max of the linear objective part
    for sign in (1, -1):
        point = {v: sign * pi[i] for i, v in enumerate(row_vars)}
        value = p.objective.value(point)
        if value - Q(p.objective.constant) == dual_min and all(
            constraint_satisfied(c, point) for c in p.constraints
        ):
            return LPSolution("optimal", point, value)
    return None


def solve_lp(p: LPProblem, method: str = "auto") -> LPSolution:
    """Exact optimum of `max p.objective` subject to `p.constraints`.

    Statuses cover every outcome; no tolerances anywhere.
    """
    p.check_well_formed()
    if dump_hook is not None:
        dump_hook(p)
    if method == "auto":
        method = "dual" if len(p.constraints) > 2 * len(p.variables) + 6 else "direct"
    if method == "dual":
        sol = _solve_via_dual(p)
        if sol is not None:
            return sol
    sol, _ = _solve_direct(p)
    return sol


def minimize_lp(p: LPProblem, method: str = "auto") -> LPSolution:
    flipped = LPProblem(p.variables, p.objective.scaled(-1), p.constraints, p.nonneg_vars)
    sol = solve_lp(flipped, method)
    if not sol.optimal:
        return sol
    return LPSolution("optimal", sol.point, -sol.value)


def solve_with_generation(p: LPProblem, separator) -> tuple:
    """Cutting-plane loop for an implicit constraint family.

    `separator(point) -> Constraint | None` must return a constraint of
    the family violated at the queried point, or None to certify
    feasibility.  Returns (solution, final problem) with every generated
    constraint recorded on the final problem.
    """
    work = LPProblem(list(p.variables), p.objective, list(p.constraints), set(p.nonneg_vars))
    while True:
        sol = solve_lp(work)
        if not sol.optimal:
            return sol, work
        cut = separator(sol.point)
        if cut is None:
            return sol, work
        if constraint_satisfied(cut, sol.point):
            raise SeparationContractError(
                f"separator returned a satisfied constraint at {sol.point}"
            )
        work.constraints.append(cut)


def collect_variables(constraints, extra=()):
    seen = {}
    for f, _, _ in constraints:
        for v in f.coeffs:
            seen.setdefault(v, None)
    for v in extra:
        seen.setdefault(v, None)
    return list(seen)


def is_functional_fixed(constraints, f: LinearFunctional, variables=None):
    """Whether f is constant over {x : constraints}, and its value if so.

    Nonnegativity must appear explicitly in `constraints`; all variables
    are treated as free.  Unboundedness in either direction yields
    (False, None); an infeasible system raises.
    """
    if variables is None:
        variables = collect_variables(constraints, f.coeffs)
    prob = LPProblem(list(variables), f, list(constraints))
    hi = solve_lp(prob)
    if hi.status == "infeasible":
        raise InfeasibleSystemError("fixedness query over an infeasible system")
    if hi.status == "unbounded":
        return False, None
    lo = minimize_lp(prob)
    if lo.status == "unbounded":
        return False, None
    if hi.value == lo.value:
        return True, hi.value
    return False, None


_DELTA = ("__delta__",)


def relative_interior_point(constraints, variables=None) -> dict:
    """A point in the relative interior of {x : constraints}.

    Implicit equalities (inequalities with zero maximum slack) are
    detected exactly and pinned; every other inequality ends up with
    strictly positive slack.
    """
    if variables is None:
        variables = collect_variables(constraints)
    eqs = [c for c in constraints if c[1] == EQ]
    ineqs = [c for c in constraints if c[1] != EQ]
    implicit = set()
    while True:
        cons = list(eqs)
        for i, c in enumerate(ineqs):
            if i in implicit:
                f, rel, rhs = c
                cons.append((f, EQ, rhs))
            else:
                f, rel, rhs = c
                # slack >= delta
                coeffs = dict(f.coeffs)
                coeffs[_DELTA] = Q(-1) if rel == GE else Q(1)
                cons.append((LinearFunctional(coeffs, f.constant), rel, rhs))
        cons.append((LinearFunctional({_DELTA: Q(1)}), LE, Q(1)))
        prob = LPProblem(list(variables) + [_DELTA], LinearFunctional({_DELTA: Q(1)}), cons)
        sol = solve_lp(prob)
        if sol.status != "optimal":
            raise InfeasibleSystemError("relative interior of an infeasible system")
        if sol.value > 0:
            point = dict(sol.point)
            point.pop(_DELTA)
            return point
        # some tight inequality must be an implicit equality; find them
        progress = False
        full = list(eqs) + [
            (ineqs[i][0], EQ, ineqs[i][2]) if i in implicit else ineqs[i]
            for i in range(len(ineqs))
        ]
        for i, c in enumerate(ineqs):
            if i in implicit or constraint_slack(c, sol.point) > 0:
                continue
            fixed, _ = _max_slack_zero(full, c, variables)
            if fixed:
                implicit.add(i)
                progress = True
        if not progress:
            raise RuntimeError("relative interior search stalled")  # unreachable


def _max_slack_zero(constraints, con, variables):
    f, rel, rhs = con
    slack_f = (
        LinearFunctional({v: -c for v, c in f.coeffs.items()}, Q(rhs) - Q(f.constant))
        if rel == LE
        else LinearFunctional(dict(f.coeffs), Q(f.constant) - Q(rhs))
    )
    sol = solve_lp(LPProblem(list(variables), slack_f, list(constraints)))
    if sol.status == "unbounded":
        return False, None
    return sol.value == 0, sol.value


# ---------------------------------------------------------------------------
# affine hulls and vertex enumeration
# ---------------------------------------------------------------------------


def affine_hull(opt, variables):
    """Exact affine hull of a nonempty bounded polytope.

    `opt(coeffs: dict, maximize: bool) -> (value, point)` optimizes a
    linear functional over the polytope.  Returns (x0, directions) where
    directions is a basis (vectors aligned with `variables`) of the
    polytope's direction space.  A functional is constant over the
    polytope iff it annihilates every direction.
    """
    n = len(variables)
    _, x0 = opt({}, True)
    dirs = []
    fixed = []  # independent functionals certified constant on the polytope
    while len(dirs) + len(fixed) < n:
        # a functional orthogonal to all known directions and independent
        # of the certified ones always exists at this point
        g = next(
            g
            for g in nullspace(dirs, n)
            if rank(fixed + [g]) > len(fixed)
        )
        coeffs = {variables[j]: g[j] for j in range(n) if g[j] != 0}
        vmax, pmax = opt(coeffs, True)
        vmin, pmin = opt(coeffs, False)
        if vmax != vmin:
            dirs.append([pmax[v] - pmin[v] for v in variables])
        else:
            fixed.append(g)
    return x0, dirs


def functional_fixed_over(f: LinearFunctional, directions, variables) -> bool:
    for d in directions:
        if sum((f.coeffs.get(variables[j], ZERO) * d[j] for j in range(len(variables))), ZERO) != 0:
            return False
    return True


def enumerate_vertices(constraints, variables, lower, upper):
    """All vertices of the polytope {x : constraints}, exactly.

    The polytope must be contained in the box [lower, upper]^variables.
    Incremental double description in the coordinates of the affine hull
    of the equality constraints; redundant halfspaces cost one pass.
    """
    nv = len(variables)
    idx = {v: j for j, v in enumerate(variables)}
    eq_rows, eq_rhs = [], []
    half = []  # (normal vector, rhs) meaning a.x <= b
    for f, rel, rhs in constraints:
        row = [ZERO] * nv
        for v, c in f.coeffs.items():
            row[idx[v]] = c
        b = Q(rhs) - Q(f.constant)
        if rel == EQ:
            eq_rows.append(row)
            eq_rhs.append(b)
        elif rel == LE:
            half.append((row, b))
        else:
            half.append(([-x for x in row], -b))

    # parameterize the equality system: x = x0 + N t
    if eq_rows:
        red, pivots = rref([r + [q] for r, q in zip(eq_rows, eq_rhs)])
        for i in range(len(red)):
            if all(v == 0 for v in red[i][:nv]) and red[i][nv] != 0:
                return []
        x0 = [ZERO] * nv
        for i, pcol in enumerate(pivots):
            if pcol < nv:
                x0[pcol] = red[i][nv]
        basis = nullspace([r for r in eq_rows], nv)
    else:
        x0 = [ZERO] * nv
        basis = nullspace([], nv)
    d = len(basis)
    if d == 0:
        pt = x0
        ok = all(sum((a[j] * pt[j] for j in range(nv)), ZERO) <= b for a, b in half)
        ok = ok and all(Q(lower) <= c <= Q(upper) for c in pt)
        return [dict(zip(variables, pt))] if ok else []

    # project halfspaces to t-space: (a.N) t <= b - a.x0
    tcons = []
    for a, b in half:
        an = [sum((a[j] * basis[k][j] for j in range(nv)), ZERO) for k in range(d)]
        bb = b - sum((a[j] * x0[j] for j in range(nv)), ZERO)
        tcons.append((an, bb))
    lo, hi = Q(lower), Q(upper)
    box = []
    for k in range(d):
        e = [ZERO] * d
        e[k] = Q(1)
        box.append((e, hi))
        box.append(([-v for v in e], -lo))
    allcons = box + tcons

    verts = []  # (t-point, tight index set)
    for corner in product((lo, hi), repeat=d):
        tight = set()
        for k in range(d):
            tight.add(2 * k if corner[k] == hi else 2 * k + 1)
            if lo == hi:
                tight.add(2 * k)
                tight.add(2 * k + 1)
        verts.append((list(corner), tight))
    seen_pts = {tuple(t) for t, _ in verts}
    if len(seen_pts) < len(verts):  # degenerate box
        verts = [(list(p), set.union(*[s for t, s in verts if tuple(t) == p])) for p in seen_pts]

    for ci in range(len(box), len(allcons)):
        a, b = allcons[ci]
        svals = [b - sum((a[k] * t[k] for k in range(d)), ZERO) for t, _ in verts]
        if all(s >= 0 for s in svals):
            for (t, tight), s in zip(verts, svals):
                if s == 0:
                    tight.add(ci)
            continue
        pos = [i for i, s in enumerate(svals) if s > 0]
        zero = [i for i, s in enumerate(svals) if s == 0]
        neg = [i for i, s in enumerate(svals) if s < 0]
        new = {}
        for ip in pos:
            tp, gp = verts[ip]
            for iq in neg:
                tq, gq = verts[iq]
                common = gp & gq
                normals = [allcons[k][0] for k in common]
                if rank(normals) != d - 1:
                    continue
                lam = svals[ip] / (svals[ip] - svals[iq])
                pt = tuple(tp[k] + lam * (tq[k] - tp[k]) for k in range(d))
                tightset = common | {ci}
                if pt in new:
                    new[pt] |= tightset
                else:
                    new[pt] = set(tightset)
        kept = [verts[i] for i in pos]
        for i in zero:
            verts[i][1].add(ci)
            kept.append(verts[i])
        kept.extend((list(p), s) for p, s in new.items())
        verts = kept

    out = []
    seen = set()
    for t, _ in verts:
        x = [x0[j] + sum((basis[k][j] * t[k] for k in range(d)), ZERO) for j in range(nv)]
        key = tuple(x)
        if key not in seen:
            seen.add(key)
            out.append(dict(zip(variables, x)))
    return out
