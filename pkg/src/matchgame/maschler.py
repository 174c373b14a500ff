"""The iterative scheme that narrows the leastcore down to the nucleolus.

Each round maximizes a common slack eps over the constraints whose
left-hand sides are not yet constant on the current polytope, then pins
the winners at the new level and repeats.  Two constraint families are
used:

* empty core: the compact description built from a universal allocation
  (symmetry inside each blossom, per-edge caps on universal-matching
  edges, per-edge floors outside the blossoms, the reference matching
  pinned at eps), with round constraints over nodes, floor edges, and
  cap edges;
* non-empty core: floors x(v) >= eps for nodes and x(e) >= w(e) + eps
  for edges, skipping an edge that spans the whole node set (with two
  players, that edge is not a proper coalition).

Fixedness is decided exactly: a functional is constant on the current
polytope iff it annihilates the polytope's direction space, which is
computed once per round from a few support LPs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ._rational import Q, ZERO
from .game import Allocation, GameInstance
from .leastcore import EPS, Decomposition, LeastcoreResult, build_decomposition, solve_leastcore
from .lp import (
    EQ,
    GE,
    LE,
    LPProblem,
    LinearFunctional,
    affine_hull,
    functional_fixed_over,
    lf,
    minimize_lp,
    solve_lp,
)
from .matching import game_value


@dataclass(frozen=True)
class Item:
    """One eps-indexed constraint family member.

    GE means functional >= base + eps, LE means functional <= base - eps.
    """

    key: tuple
    coeffs: dict
    rel: str
    base: object

    @property
    def functional(self) -> LinearFunctional:
        return LinearFunctional(self.coeffs)

    def eps_constraint(self):
        coeffs = dict(self.coeffs)
        coeffs[EPS] = Q(-1) if self.rel == GE else Q(1)
        return (LinearFunctional(coeffs), self.rel, self.base)

    def pinned_constraint(self, eps):
        rhs = self.base + eps if self.rel == GE else self.base - eps
        return (self.functional, self.rel, rhs)


@dataclass(frozen=True)
class RoundRecord:
    """One round: its value and how much freedom is left afterwards."""

    index: int
    epsilon: object
    unfixed_nodes: int  # node coordinates still varying after the round
    unfixed_items: int  # families still varying after the round


@dataclass(frozen=True)
class MaschlerState:
    game: GameInstance
    constraints: tuple  # current polytope, in node variables only
    items: tuple  # still-active constraint families
    epsilons: tuple
    records: tuple
    hull: tuple = None  # cached (point, directions) of the current polytope
    done: bool = False
    point: Allocation = None


@dataclass(frozen=True)
class NucleolusResult:
    allocation: Allocation
    epsilons: tuple
    records: tuple
    method: str

    @property
    def rounds(self) -> int:
        return len(self.epsilons)


def _polytope_optimizer(variables, constraints):
    def opt(coeffs, maximize):
        prob = LPProblem(list(variables), LinearFunctional(dict(coeffs)), list(constraints))
        sol = solve_lp(prob) if maximize else minimize_lp(prob)
        assert sol.optimal, "round polytopes are nonempty and bounded"
        return sol.value, sol.point

    return opt


def _hull(game, constraints):
    return affine_hull(_polytope_optimizer(game.nodes, constraints), list(game.nodes))


def _unfixed_nodes(game, dirs):
    variables = list(game.nodes)
    return sum(
        1 for v in game.nodes if not functional_fixed_over(lf({v: 1}), dirs, variables)
    )


def advance_round(state: MaschlerState) -> MaschlerState:
    """One round: detect fixed families, push eps on the rest, pin them."""
    game = state.game
    variables = list(game.nodes)
    x0, dirs = state.hull if state.hull is not None else _hull(game, state.constraints)
    if not dirs:
        point = Allocation(tuple(x0[v] for v in variables))
        return replace(state, done=True, point=point)
    unfixed = [
        it for it in state.items if not functional_fixed_over(it.functional, dirs, variables)
    ]
    assert unfixed, "a non-singleton polytope leaves some family unfixed"
    cons = list(state.constraints) + [it.eps_constraint() for it in unfixed]
    sol = solve_lp(LPProblem(variables + [EPS], lf({EPS: 1}), cons))
    assert sol.optimal, "each round program is feasible and bounded"
    eps = sol.value
    if state.epsilons:
        assert eps > state.epsilons[-1], "round values increase strictly"
    new_cons = state.constraints + tuple(it.pinned_constraint(eps) for it in unfixed)
    new_hull = _hull(game, new_cons)
    still = [
        it for it in unfixed if not functional_fixed_over(it.functional, new_hull[1], variables)
    ]
    record = RoundRecord(
        len(state.records) + 1, eps, _unfixed_nodes(game, new_hull[1]), len(still)
    )
    return replace(
        state,
        constraints=new_cons,
        items=tuple(unfixed),
        epsilons=state.epsilons + (eps,),
        records=state.records + (record,),
        hull=new_hull,
    )


def _run(state: MaschlerState, method: str) -> NucleolusResult:
    limit = state.game.n + 1
    while not state.done:
        assert len(state.epsilons) <= limit, "the scheme finishes within |V| rounds"
        state = advance_round(state)
    return NucleolusResult(state.point, state.epsilons, state.records, method)


def _allocation_base(game: GameInstance, nu):
    cons = [(lf({v: 1 for v in game.nodes}), EQ, nu)]
    cons += [(lf({v: 1}), GE, 0) for v in game.nodes]
    return cons


# ---------------------------------------------------------------------------
# empty core: compact chain
# ---------------------------------------------------------------------------


def compact_p1(game: GameInstance, dec: Decomposition):
    """The compact leastcore program.  Returns (epsilon1, polytope constraints).

    The optimum is certified against the matching-generated leastcore
    value carried by the decomposition.
    """
    x_star = dec.x_star
    nu = game_value(game)
    cons = _allocation_base(game, nu)
    for s, rep in zip(dec.blossoms, dec.representatives):
        for u in sorted(s):
            if u != rep:
                cons.append((lf({u: 1, rep: -1}), EQ, x_star[u] - x_star[rep]))
    for e in dec.e_star:
        cons.append((lf({e[0]: 1, e[1]: 1}), LE, game.weights[e]))
    for e in dec.e_plus:
        cons.append((lf({e[0]: 1, e[1]: 1}), GE, game.weights[e]))
    m_star_nodes = {v for e in dec.m_star for v in e}
    m_star_row = LinearFunctional({v: Q(1) for v in m_star_nodes} | {EPS: Q(-1)})
    w_m_star = game.weight_of(dec.m_star)
    sol = solve_lp(
        LPProblem(
            list(game.nodes) + [EPS],
            lf({EPS: 1}),
            cons + [(m_star_row, EQ, w_m_star)],
        )
    )
    assert sol.optimal and sol.value == dec.epsilon, (
        "the compact program reproduces the leastcore value"
    )
    pinned = LinearFunctional({v: Q(1) for v in m_star_nodes})
    cons.append((pinned, EQ, w_m_star + dec.epsilon))
    return sol.value, tuple(cons)


def _compact_items(game: GameInstance, dec: Decomposition):
    eps1 = dec.epsilon
    items = [Item(("node", v), {v: Q(1)}, GE, -eps1) for v in game.nodes]
    items += [
        Item(("edge+", e), {e[0]: Q(1), e[1]: Q(1)}, GE, game.weights[e] - eps1)
        for e in dec.e_plus
    ]
    items += [
        Item(("edge-", e), {e[0]: Q(1), e[1]: Q(1)}, LE, game.weights[e] + eps1)
        for e in dec.e_star
    ]
    return tuple(items)


def run_compact(game: GameInstance, lc: LeastcoreResult = None) -> NucleolusResult:
    """Nucleolus of an empty-core instance via the compact chain."""
    if lc is None:
        lc = solve_leastcore(game)
    assert lc.epsilon < 0
    dec = build_decomposition(game, lc)
    eps1, cons = compact_p1(game, dec)
    items = _compact_items(game, dec)
    hull = _hull(game, cons)
    variables = list(game.nodes)
    still = [
        it for it in items if not functional_fixed_over(it.functional, hull[1], variables)
    ]
    first = RoundRecord(1, eps1, _unfixed_nodes(game, hull[1]), len(still))
    state = MaschlerState(
        game=game,
        constraints=cons,
        items=items,
        epsilons=(eps1,),
        records=(first,),
        hull=hull,
    )
    return _run(state, "compact")


# ---------------------------------------------------------------------------
# non-empty core
# ---------------------------------------------------------------------------


def _nonempty_items(game: GameInstance):
    items = [Item(("node", v), {v: Q(1)}, GE, ZERO) for v in game.nodes]
    for e in game.edges:
        if game.n == 2:
            continue  # a spanning edge is the grand coalition, not a proper one
        items.append(Item(("edge", e), {e[0]: Q(1), e[1]: Q(1)}, GE, game.weights[e]))
    return tuple(items)


def run_nonempty_core(game: GameInstance, lc: LeastcoreResult = None) -> NucleolusResult:
    """Nucleolus when the core is non-empty: per-node and per-edge floors."""
    if lc is None:
        lc = solve_leastcore(game)
    assert lc.epsilon == 0
    state = MaschlerState(
        game=game,
        constraints=tuple(_allocation_base(game, lc.value)),
        items=_nonempty_items(game),
        epsilons=(),
        records=(),
    )
    return _run(state, "nonempty-core")


def nucleolus(game: GameInstance) -> NucleolusResult:
    """Nucleolus of a weighted matching game, dispatching on core emptiness."""
    if game.n == 1:
        return NucleolusResult(Allocation((ZERO,)), (), (), "trivial")
    lc = solve_leastcore(game)
    if lc.epsilon < 0:
        return run_compact(game, lc)
    return run_nonempty_core(game, lc)
