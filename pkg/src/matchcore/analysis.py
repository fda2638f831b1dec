"""Core imputations, complementarity, and concurrency, all exactly.

The dual side of each matching program is treated as the object of
interest: optimal dual solutions map to payoff vectors, the optimal dual
face is scanned for coordinate ranges and constraint slacks, and every
claim about the core is cross-checkable against the brute-force oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from .caps import DEFAULT_CAPS, EnumerationCaps, check_instance_size
from .formulations import (
    build_dual,
    lower_dual_var,
    upper_dual_var,
    vertex_dual_var,
)
from .games import (
    BIPARTITE_KINDS,
    EdgeKey,
    GameInstance,
    GameKind,
    Imputation,
    SurplusAccount,
    make_imputation,
    restrict,
)
from .lp import (
    Constraint,
    LinearProgram,
    LpSolution,
    Relation,
    Sense,
    Status,
    optimal_face,
    solve,
)
from .oracle import (
    ClassLabel,
    InfeasibleInstanceError,
    classify_player,
    classify_team,
    is_degenerate,
    max_weight,
    worth,
)
from .rationals import ONE, ZERO, ensure_rational

F = Fraction


@dataclass(frozen=True)
class DualSolution:
    """Dual values: one per agent, plus per-edge bound duals where present."""
    vertex_values: tuple[tuple[str, Fraction], ...]
    lower_duals: tuple[tuple[EdgeKey, Fraction], ...] = ()
    upper_duals: tuple[tuple[EdgeKey, Fraction], ...] = ()

    def vertex(self, q: str) -> Fraction:
        for name, value in self.vertex_values:
            if name == q:
                return value
        raise ValueError(f"no dual value for agent {q!r}")

    def lower(self, key: EdgeKey) -> Fraction:
        return next((v for k, v in self.lower_duals if k == key), ZERO)

    def upper(self, key: EdgeKey) -> Fraction:
        return next((v for k, v in self.upper_duals if k == key), ZERO)


def make_dual(instance: GameInstance, vertex_values: Mapping[str, Fraction],
              lower: Mapping[EdgeKey, Fraction] | None = None,
              upper: Mapping[EdgeKey, Fraction] | None = None) -> DualSolution:
    """Normalize mappings into a DualSolution over the instance's agents."""
    vv = tuple((q, ensure_rational(vertex_values.get(q, 0)))
               for q in instance.agents)
    lo = tuple((e.key, ensure_rational((lower or {}).get(e.key, 0)))
               for e in instance.edges)
    hi = tuple((e.key, ensure_rational((upper or {}).get(e.key, 0)))
               for e in instance.edges if e.upper is not None)
    return DualSolution(vv, lo, hi)


def _dual_vector(instance: GameInstance, lp: LinearProgram,
                 d: DualSolution) -> tuple[Fraction, ...]:
    values = []
    for name in lp.variables:
        if name.startswith("pay["):
            values.append(d.vertex(name[4:-1]))
        elif name.startswith("floor["):
            u, v = name[6:-1].split(",")
            values.append(d.lower((u, v)))
        else:
            u, v = name[5:-1].split(",")
            values.append(d.upper((u, v)))
    return tuple(values)


def dual_from_solution(instance: GameInstance, sol: LpSolution) -> DualSolution:
    assigned = sol.as_dict()
    vv = {q: assigned[vertex_dual_var(q)] for q in instance.agents}
    lo = {}
    hi = {}
    if instance.kind is GameKind.HOFFMAN_KRUSKAL:
        for e in instance.edges:
            lo[e.key] = assigned[lower_dual_var(e.key)]
            if e.upper is not None:
                hi[e.key] = assigned[upper_dual_var(e.key)]
    return make_dual(instance, vv, lo, hi)


@lru_cache(maxsize=50_000)
def _dual_program(instance: GameInstance) -> LinearProgram:
    return build_dual(instance)


@lru_cache(maxsize=50_000)
def _dual_solved(instance: GameInstance) -> LpSolution:
    sol = solve(_dual_program(instance))
    if sol.status is not Status.OPTIMAL:
        raise InfeasibleInstanceError(
            "the matching program has no finite optimum (infeasible bounds)")
    return sol


def primal_optimum(instance: GameInstance) -> Fraction:
    """Optimal value of the fractional matching program (= dual optimum)."""
    return _dual_solved(instance).value


def optimal_dual(instance: GameInstance) -> DualSolution:
    """The deterministic optimal dual: the solver's Bland-rule vertex."""
    return dual_from_solution(instance, _dual_solved(instance))


def is_optimal_dual(instance: GameInstance, d: DualSolution) -> bool:
    """Feasible for the dual program and exactly optimal in value."""
    lp = _dual_program(instance)
    vec = _dual_vector(instance, lp, d)
    return lp.is_feasible(vec) and lp.evaluate(vec) == _dual_solved(instance).value


def surplus_account(instance: GameInstance, d: DualSolution,
                    verified: bool = False) -> SurplusAccount:
    """Distributable total under one optimal dual of a bounds-capacity game.

    surplus = worth + sum(lower * lower_dual - upper * upper_dual); by
    duality this always equals the capacity-weighted sum of vertex duals.
    """
    if instance.kind is not GameKind.HOFFMAN_KRUSKAL:
        raise ValueError("surplus accounting applies to hoffman_kruskal instances")
    if not verified and not is_optimal_dual(instance, d):
        raise ValueError("dual solution is not optimal")
    w = _dual_solved(instance).value
    adjustment = ZERO
    for e in instance.edges:
        adjustment += F(e.lower) * d.lower(e.key)
        if e.upper is not None:
            adjustment -= F(e.upper) * d.upper(e.key)
    return SurplusAccount(w, adjustment, w + adjustment)


def dual_to_imputation(instance: GameInstance, d: DualSolution,
                       caps: EnumerationCaps = DEFAULT_CAPS) -> Imputation:
    """Payoffs from an optimal dual: capacity times the vertex dual.

    For the general kind this is only an imputation when the game is
    concurrent (fractional and integral optima agree), so that is
    enforced.
    """
    if not is_optimal_dual(instance, d):
        raise ValueError("dual solution is not optimal")
    if instance.kind is GameKind.GENERAL:
        if primal_optimum(instance) != max_weight(instance, caps)[0]:
            raise ValueError("not concurrent: optimal covers are not imputations")
    payoffs = {q: F(instance.capacity(q)) * d.vertex(q) for q in instance.agents}
    account = None
    if instance.kind is GameKind.HOFFMAN_KRUSKAL:
        account = surplus_account(instance, d, verified=True)
    return make_imputation(instance, payoffs, source_dual=d, surplus=account)


# ---------------------------------------------------------------------------
# The optimal dual face.
# ---------------------------------------------------------------------------

class DualFace:
    """Exact scans over the set of optimal dual solutions of one instance."""

    def __init__(self, instance: GameInstance):
        self.instance = instance
        self.lp = _dual_program(instance)
        self.base = _dual_solved(instance)
        self.face = optimal_face(self.lp, self.base)

    def _objective(self, coeffs: Mapping[str, Fraction]):
        return [ensure_rational(coeffs.get(name, 0)) for name in self.lp.variables]

    def extremize(self, coeffs: Mapping[str, Fraction], sense: Sense) -> LpSolution:
        return solve(self.face.with_objective(self._objective(coeffs), sense))

    def max_value(self, coeffs: Mapping[str, Fraction]) -> Fraction | None:
        """Max of a linear functional over the face; None when unbounded."""
        sol = self.extremize(coeffs, Sense.MAXIMIZE)
        return sol.value if sol.status is Status.OPTIMAL else None

    def min_value(self, coeffs: Mapping[str, Fraction]) -> Fraction | None:
        sol = self.extremize(coeffs, Sense.MINIMIZE)
        return sol.value if sol.status is Status.OPTIMAL else None

    def vertex_range(self, q: str) -> tuple[Fraction | None, Fraction | None]:
        name = vertex_dual_var(q)
        return (self.min_value({name: ONE}), self.max_value({name: ONE}))

    def slack_coeffs(self, key: EdgeKey) -> dict[str, Fraction]:
        e = self.instance.edge(key)
        coeffs = {vertex_dual_var(e.u): ONE, vertex_dual_var(e.v): ONE}
        if self.instance.kind is GameKind.HOFFMAN_KRUSKAL:
            coeffs[lower_dual_var(e.key)] = -ONE
            if e.upper is not None:
                coeffs[upper_dual_var(e.key)] = ONE
        return coeffs

    def max_overpayment(self, key: EdgeKey) -> Fraction | None:
        """Max slack of the edge's dual row over the face; None = unbounded."""
        top = self.max_value(self.slack_coeffs(key))
        return None if top is None else top - self.instance.edge(key).weight

    def with_pinned_vertex_values(self, values: Mapping[str, Fraction]) -> LinearProgram:
        extra = []
        n = len(self.lp.variables)
        for q, val in values.items():
            coeffs = [ZERO] * n
            coeffs[self.lp.index(vertex_dual_var(q))] = ONE
            extra.append(Constraint(tuple(coeffs), Relation.EQ,
                                    ensure_rational(val), f"pin[{q}]"))
        return self.face.with_extra_constraints(extra)


def is_concurrent(instance: GameInstance,
                  caps: EnumerationCaps = DEFAULT_CAPS) -> bool:
    """Fractional and integral matching optima agree (general kind)."""
    return primal_optimum(instance) == max_weight(instance, caps)[0]


@dataclass(frozen=True)
class ConcurrencyReport:
    fractional_optimum: Fraction
    integral_optimum: Fraction

    @property
    def concurrent(self) -> bool:
        return self.fractional_optimum == self.integral_optimum


def check_concurrency(instance: GameInstance,
                      caps: EnumerationCaps = DEFAULT_CAPS) -> ConcurrencyReport:
    """(fractional optimum, integral optimum, equal?) for a general game.

    Equality holds exactly when the core is non-empty.
    """
    if instance.kind is not GameKind.GENERAL:
        raise ValueError("concurrency applies to general instances")
    return ConcurrencyReport(primal_optimum(instance), max_weight(instance, caps)[0])


# ---------------------------------------------------------------------------
# Core membership.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoreVerdict:
    in_core: bool
    witness: frozenset | None = None
    witness_demand: Fraction | None = None
    witness_allocation: Fraction | None = None
    witness_dual: DualSolution | None = None


def _proper_coalitions(agents: tuple[str, ...]):
    for size in range(1, len(agents)):
        yield from combinations(agents, size)


def _coalition_surplus(instance: GameInstance,
                       members: tuple[str, ...]) -> tuple[Fraction, DualSolution | None]:
    """Deterministic surplus of a sub-coalition of a bounds-capacity game.

    Uses the fixed-pivot-rule optimal dual of the restricted dual program,
    so repeated runs agree; the chosen dual is returned alongside.
    """
    sub = restrict(instance, members)
    if not sub.edges:
        return ZERO, None
    d = optimal_dual(sub)
    return surplus_account(sub, d, verified=True).surplus, d


def _grand_total_ok(instance: GameInstance, imp: Imputation,
                    caps: EnumerationCaps = DEFAULT_CAPS) -> bool:
    """Does the imputation total match the game's distributable amount?

    Non-bounds kinds: the worth. Bounds-capacity kind: the surplus under
    some optimal dual, decided by LP feasibility over the optimal dual
    face of "capacity-weighted vertex duals sum to the total".
    """
    total = imp.total
    if instance.kind is not GameKind.HOFFMAN_KRUSKAL:
        if instance.kind is GameKind.GENERAL:
            return total == max_weight(instance, caps)[0]
        return total == primal_optimum(instance)
    if imp.source_dual is not None and imp.surplus is not None:
        if imp.surplus.surplus == total and is_optimal_dual(instance, imp.source_dual):
            return True
    face = DualFace(instance)
    n = len(face.lp.variables)
    coeffs = [ZERO] * n
    for q in instance.agents:
        coeffs[face.lp.index(vertex_dual_var(q))] = F(instance.capacity(q))
    pinned = face.face.with_extra_constraints(
        [Constraint(tuple(coeffs), Relation.EQ, total, "total")])
    return solve(pinned.with_objective([ZERO] * n, Sense.MINIMIZE)).status is Status.OPTIMAL


def is_core_imputation(instance: GameInstance, imp: Imputation,
                       caps: EnumerationCaps = DEFAULT_CAPS) -> CoreVerdict:
    """Brute-force core membership over every non-empty sub-coalition.

    A coalition blocks when it can generate strictly more on its own
    (its worth, or for the bounds-capacity kind its deterministic
    surplus) than it is allocated. The first blocking coalition in
    size-then-lexicographic order is returned as the witness.
    """
    agents = instance.agents
    check_instance_size(len(agents), len(instance.edges), caps)
    hk = instance.kind is GameKind.HOFFMAN_KRUSKAL
    if not _grand_total_ok(instance, imp, caps):
        demand = (None if hk else
                  (max_weight(instance, caps)[0] if instance.kind is GameKind.GENERAL
                   else primal_optimum(instance)))
        return CoreVerdict(False, frozenset(agents), demand, imp.total, None)
    for members in _proper_coalitions(agents):
        allocation = imp.restricted_total(members)
        if hk:
            demand, chosen = _coalition_surplus(instance, members)
        else:
            demand, chosen = worth(instance, members, caps), None
        if demand > allocation:
            return CoreVerdict(False, frozenset(members), demand,
                               allocation, chosen)
    return CoreVerdict(True)


def in_dual_image(instance: GameInstance, imp: Imputation) -> bool:
    """Membership in D(I): does some optimal dual map to these payoffs?

    Decided exactly: pin every vertex dual to payoff divided by capacity
    and test feasibility over the optimal dual face.
    """
    if instance.kind not in BIPARTITE_KINDS:
        raise ValueError("the dual-image test applies to bipartite kinds")
    face = DualFace(instance)
    pins = {q: imp[q] / F(instance.capacity(q)) for q in instance.agents}
    pinned = face.with_pinned_vertex_values(pins)
    zero = [ZERO] * len(face.lp.variables)
    return solve(pinned.with_objective(zero, Sense.MINIMIZE)).status is Status.OPTIMAL


def core_nonempty(instance: GameInstance,
                  caps: EnumerationCaps = DEFAULT_CAPS) -> tuple[bool, Imputation | None]:
    """Balancedness via LP: materialize every coalition constraint.

    Feasibility of {payoffs >= 0, total = grand amount, every coalition
    allocated at least its demand}; a feasible point is returned as a
    witness imputation.
    """
    agents = instance.agents
    check_instance_size(len(agents), len(instance.edges), caps)
    hk = instance.kind is GameKind.HOFFMAN_KRUSKAL
    if hk:
        grand = surplus_account(instance, optimal_dual(instance), verified=True).surplus
    else:
        grand = worth(instance, agents, caps)
    names = [f"alloc[{q}]" for q in agents]
    rows = [Constraint(tuple(ONE for _ in agents), Relation.EQ, grand, "total")]
    for members in _proper_coalitions(agents):
        chosen = set(members)
        if hk:
            demand, _ = _coalition_surplus(instance, members)
        else:
            demand = worth(instance, members, caps)
        if demand == 0:
            continue
        coeffs = tuple(ONE if q in chosen else ZERO for q in agents)
        rows.append(Constraint(coeffs, Relation.GE, demand,
                               "coalition[" + "|".join(members) + "]"))
    lp = LinearProgram(Sense.MINIMIZE, names, [ZERO] * len(agents), rows)
    sol = solve(lp)
    if sol.status is not Status.OPTIMAL:
        return False, None
    payoffs = {q: sol[f"alloc[{q}]"] for q in agents}
    return True, make_imputation(instance, payoffs)


def core_polytope(instance: GameInstance,
                  caps: EnumerationCaps = DEFAULT_CAPS) -> LinearProgram:
    """The core constraint system in payoff space (non-bounds kinds)."""
    if instance.kind is GameKind.HOFFMAN_KRUSKAL:
        raise ValueError("payoff-space core polytope is for worth-based kinds")
    agents = instance.agents
    check_instance_size(len(agents), len(instance.edges), caps)
    grand = worth(instance, agents, caps)
    names = [f"alloc[{q}]" for q in agents]
    rows = [Constraint(tuple(ONE for _ in agents), Relation.EQ, grand, "total")]
    for members in _proper_coalitions(agents):
        chosen = set(members)
        demand = worth(instance, members, caps)
        if demand == 0:
            continue
        rows.append(Constraint(tuple(ONE if q in chosen else ZERO for q in agents),
                               Relation.GE, demand,
                               "coalition[" + "|".join(members) + "]"))
    return LinearProgram(Sense.MINIMIZE, names, [ZERO] * len(agents), rows)


def sample_core_vertices(instance: GameInstance, count: int, seed: int,
                         caps: EnumerationCaps = DEFAULT_CAPS) -> list[Imputation]:
    """Vertices of the core polytope found by random rational objectives."""
    lp = core_polytope(instance, caps)
    rng = random.Random(seed)
    seen = set()
    out = []
    for _ in range(count):
        objective = [F(rng.randint(-9, 9)) for _ in lp.variables]
        sol = solve(lp.with_objective(objective, Sense.MAXIMIZE))
        if sol.status is not Status.OPTIMAL or sol.values in seen:
            continue
        seen.add(sol.values)
        payoffs = {q: sol[f"alloc[{q}]"] for q in instance.agents}
        out.append(make_imputation(instance, payoffs))
    return out


def sample_dual_vertices(instance: GameInstance, count: int, seed: int,
                         face: DualFace | None = None) -> list[DualSolution]:
    """Optimal dual vertices found by random objectives over the face."""
    face = face or DualFace(instance)
    rng = random.Random(seed)
    seen = set()
    out = []
    for _ in range(count):
        objective = {name: F(rng.randint(-9, 9)) for name in face.lp.variables}
        sol = face.extremize(objective, Sense.MAXIMIZE)
        if sol.status is not Status.OPTIMAL or sol.values in seen:
            continue
        seen.add(sol.values)
        out.append(dual_from_solution(instance, sol))
    return out


# ---------------------------------------------------------------------------
# Complementarity: who gets paid, which teams are overpaid.
# ---------------------------------------------------------------------------

def paid_sometimes(instance: GameInstance, q: str,
                   caps: EnumerationCaps = DEFAULT_CAPS,
                   face: DualFace | None = None) -> bool | None:
    """Is the agent paid under some dual-derived core imputation?

    True iff the agent's dual coordinate has positive maximum over the
    optimal dual face. On a non-concurrent general instance the core is
    empty and the distinguished outcome None is returned.
    """
    if instance.kind is GameKind.GENERAL and not is_concurrent(instance, caps):
        return None
    face = face or DualFace(instance)
    top = face.max_value({vertex_dual_var(q): ONE})
    return top is None or top > 0


def always_paid_fairly(instance: GameInstance, key: EdgeKey,
                       caps: EnumerationCaps = DEFAULT_CAPS,
                       face: DualFace | None = None) -> bool | None:
    """Is the team's dual row tight under every optimal dual?

    The row slack is the overpayment: vertex duals (plus upper-bound dual,
    minus lower-bound dual, where present) beyond the edge weight. None is
    the distinguished empty-core outcome for non-concurrent general games.
    """
    if instance.kind is GameKind.GENERAL and not is_concurrent(instance, caps):
        return None
    face = face or DualFace(instance)
    over = face.max_overpayment(key)
    return over == 0


def payoff_range(instance: GameInstance, q: str,
                 face: DualFace | None = None) -> tuple[Fraction | None, Fraction | None]:
    """Lowest and highest payoff of one agent across dual-derived imputations."""
    face = face or DualFace(instance)
    lo, hi = face.vertex_range(q)
    b = F(instance.capacity(q))
    return (None if lo is None else b * lo, None if hi is None else b * hi)


@dataclass(frozen=True)
class PlayerFinding:
    agent: str
    label: ClassLabel
    paid_sometimes: bool | None


@dataclass(frozen=True)
class TeamFinding:
    edge: EdgeKey
    label: ClassLabel
    always_paid_fairly: bool | None


@dataclass(frozen=True)
class ComplementarityReport:
    """Oracle labels against dual-face payment facts, with any violations.

    ``violations`` holds theorem counterexamples (the failure signal);
    ``gaps`` records where a one-directional implication is strict on
    general instances (allowed, and worth reporting).
    """
    kind: GameKind
    degenerate: bool
    concurrent: bool | None
    players: tuple[PlayerFinding, ...]
    teams: tuple[TeamFinding, ...]
    violations: tuple[str, ...]
    gaps: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_complementarity(instance: GameInstance,
                           caps: EnumerationCaps = DEFAULT_CAPS) -> ComplementarityReport:
    """Cross-check payment predicates against brute-force classes.

    Bipartite kinds assert full equivalences plus the subpar-endpoint and
    degeneracy corollaries; general kinds assert the forward implications
    only (when concurrent) and record strict gaps.
    """
    kind = instance.kind
    general = kind is GameKind.GENERAL
    concurrent = is_concurrent(instance, caps) if general else None
    if general and not concurrent:
        # Classes are oracle facts and still meaningful; the payment
        # verdicts get the distinguished empty-core outcome.
        players = tuple(PlayerFinding(q, classify_player(instance, q, caps), None)
                        for q in instance.agents)
        teams = tuple(TeamFinding(e.key, classify_team(instance, e.key, caps), None)
                      for e in instance.edges)
        return ComplementarityReport(kind, is_degenerate(instance, caps), False,
                                     players, teams, (), ("core is empty",))

    face = DualFace(instance)
    degenerate = is_degenerate(instance, caps)
    violations: list[str] = []
    gaps: list[str] = []

    players = []
    labels = {}
    for q in instance.agents:
        label = classify_player(instance, q, caps)
        labels[q] = label
        paid = paid_sometimes(instance, q, caps, face)
        players.append(PlayerFinding(q, label, paid))
        essential = label is ClassLabel.ESSENTIAL
        if not general and paid != essential:
            violations.append(f"player {q}: {label.value} but "
                              f"{'paid sometimes' if paid else 'never paid'}")
        if general:
            if paid and not essential:
                violations.append(f"player {q}: paid sometimes but {label.value}")
            if essential and not paid:
                gaps.append(f"player {q}: essential yet never paid")

    teams = []
    for e in instance.edges:
        label = classify_team(instance, e.key, caps)
        fair = always_paid_fairly(instance, e.key, caps, face)
        teams.append(TeamFinding(e.key, label, fair))
        matched_somewhere = label is not ClassLabel.SUBPAR
        if not general and fair != matched_somewhere:
            violations.append(f"team ({e.u},{e.v}): {label.value} but "
                              f"{'always paid fairly' if fair else 'sometimes overpaid'}")
        if general:
            if matched_somewhere and not fair:
                violations.append(f"team ({e.u},{e.v}): {label.value} but sometimes overpaid")
            if label is ClassLabel.SUBPAR and fair:
                gaps.append(f"team ({e.u},{e.v}): subpar yet always paid fairly")
        if not general and label is ClassLabel.SUBPAR:
            # A subpar team must contain an essential endpoint (skip edges
            # that can never be matched at all).
            if e.upper == 0:
                continue
            if ClassLabel.ESSENTIAL not in (labels[e.u], labels[e.v]):
                violations.append(f"team ({e.u},{e.v}): subpar with no essential endpoint")

    if degenerate:
        for finding in players:
            if finding.label is ClassLabel.VIABLE and finding.paid_sometimes:
                violations.append(f"player {finding.agent}: viable yet paid under degeneracy")
        for finding in teams:
            if finding.label is ClassLabel.VIABLE and not finding.always_paid_fairly:
                violations.append(f"team {finding.edge}: viable yet overpaid under degeneracy")

    return ComplementarityReport(kind, degenerate, concurrent, tuple(players),
                                 tuple(teams), tuple(violations), tuple(gaps))


# ---------------------------------------------------------------------------
# Extreme, combined, and simultaneous imputations.
# ---------------------------------------------------------------------------

_EXTREME_KINDS = (GameKind.ASSIGNMENT, GameKind.UNIFORM_B)


def extreme_imputations(instance: GameInstance,
                        face: DualFace | None = None) -> tuple[Imputation, Imputation]:
    """The two antipodal core imputations: (left-high, right-low) and
    (left-low, right-high), assembled from per-coordinate ranges over the
    optimal dual face and re-verified to be optimal duals."""
    if instance.kind not in _EXTREME_KINDS:
        raise ValueError("extreme imputations apply to assignment and "
                         "uniform-capacity kinds")
    face = face or DualFace(instance)
    lo_vals, hi_vals = {}, {}
    for q in instance.agents:
        lo, hi = face.vertex_range(q)
        lo_vals[q], hi_vals[q] = lo, hi
    left = set(instance.side_u)
    favor_left = make_dual(instance, {
        q: (hi_vals[q] if q in left else lo_vals[q]) for q in instance.agents})
    favor_right = make_dual(instance, {
        q: (lo_vals[q] if q in left else hi_vals[q]) for q in instance.agents})
    for d in (favor_left, favor_right):
        if not is_optimal_dual(instance, d):
            raise ArithmeticError("assembled extreme is not an optimal dual; "
                                  "this contradicts the antipodal-imputation theorem")
    return (dual_to_imputation(instance, favor_left),
            dual_to_imputation(instance, favor_right))


def meet_join(instance: GameInstance, first: Imputation, second: Imputation,
              caps: EnumerationCaps = DEFAULT_CAPS) -> tuple[Imputation, Imputation]:
    """Coordinate-wise (min left, max right) and (max left, min right).

    Both inputs must be core imputations of the same uniform-capacity (or
    assignment) instance; both outputs are verified to be in the core.
    """
    if instance.kind not in _EXTREME_KINDS:
        raise ValueError("meet/join applies to assignment and uniform-capacity kinds")
    for imp in (first, second):
        if not is_core_imputation(instance, imp, caps).in_core:
            raise ValueError("input imputation is not in the core")
    left = set(instance.side_u)

    def build(low_left: bool) -> Imputation:
        payoffs = {}
        for q in instance.agents:
            a, b = first[q], second[q]
            take_min = (q in left) == low_left
            payoffs[q] = min(a, b) if take_min else max(a, b)
        return make_imputation(instance, payoffs)

    meet = build(low_left=True)
    join = build(low_left=False)
    for imp in (meet, join):
        if not is_core_imputation(instance, imp, caps).in_core:
            raise ArithmeticError("combined imputation left the core; this "
                                  "contradicts the lattice lemma")
    return meet, join


def simultaneous_imputation(instance: GameInstance,
                            caps: EnumerationCaps = DEFAULT_CAPS) -> Imputation:
    """One core imputation paying exactly the essential players and
    overpaying exactly the subpar teams.

    Averages, with equal weight, one witnessing optimal dual per essential
    player (coordinate maximized) and per subpar team (overpayment
    maximized); the required properties are asserted before returning.
    """
    if instance.kind not in _EXTREME_KINDS:
        raise ValueError("the simultaneous imputation applies to assignment "
                         "and uniform-capacity kinds")
    face = DualFace(instance)
    witnesses = []
    essentials = set()
    subpars = set()
    for q in instance.agents:
        if classify_player(instance, q, caps) is ClassLabel.ESSENTIAL:
            essentials.add(q)
            witnesses.append(face.extremize({vertex_dual_var(q): ONE}, Sense.MAXIMIZE))
    for e in instance.edges:
        if classify_team(instance, e.key, caps) is ClassLabel.SUBPAR:
            subpars.add(e.key)
            witnesses.append(face.extremize(face.slack_coeffs(e.key), Sense.MAXIMIZE))
    if not witnesses:
        witnesses.append(face.base)
    k = F(len(witnesses))
    averaged = {}
    for name in face.lp.variables:
        averaged[name] = sum((w[name] for w in witnesses), ZERO) / k
    d = make_dual(instance, {q: averaged[vertex_dual_var(q)] for q in instance.agents})
    imp = dual_to_imputation(instance, d)
    for q in instance.agents:
        if (imp[q] > 0) != (q in essentials):
            raise ArithmeticError(f"simultaneous imputation mispays player {q}")
    for e in instance.edges:
        slack = d.vertex(e.u) + d.vertex(e.v) - e.weight
        if (slack > 0) != (e.key in subpars):
            raise ArithmeticError(f"simultaneous imputation mistreats team {e.key}")
    return imp
