"""The matching linear programs, their duals, and polytope structure checks.

Construction is a verbatim transcription of each game's primal/dual pair
with a canonical variable and constraint ordering (agents in input order,
edges in input order), so solver output is reproducible. Also houses the
exhaustive total-unimodularity sweep and the half-integral vertex
structure check for general-graph matching programs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .caps import DEFAULT_CAPS, CapExceededError, EnumerationCaps
from .games import EdgeKey, GameInstance, GameKind
from .lp import Constraint, LinearProgram, Relation, Sense, is_vertex
from .rationals import ONE, ZERO

F = Fraction


def primal_var(key: EdgeKey) -> str:
    return f"x[{key[0]},{key[1]}]"


def vertex_dual_var(q: str) -> str:
    return f"pay[{q}]"


def lower_dual_var(key: EdgeKey) -> str:
    return f"floor[{key[0]},{key[1]}]"


def upper_dual_var(key: EdgeKey) -> str:
    return f"ceil[{key[0]},{key[1]}]"


def build_primal(instance: GameInstance) -> LinearProgram:
    """Maximum-weight (fractional) matching program for the instance.

    One variable per edge, one capacity row per vertex. The
    capacity-with-edge-bounds kind carries its per-edge multiplicity
    window as variable bounds; a missing upper bound leaves the variable
    uncapped above.
    """
    names = [primal_var(e.key) for e in instance.edges]
    objective = [e.weight for e in instance.edges]
    rows = []
    for q in instance.agents:
        coeffs = [ONE if e.touches(q) else ZERO for e in instance.edges]
        rows.append(Constraint(tuple(coeffs), Relation.LE,
                               F(instance.capacity(q)), f"cap[{q}]"))
    lower = None
    upper = None
    if instance.kind is GameKind.HOFFMAN_KRUSKAL:
        lower = [F(e.lower) for e in instance.edges]
        upper = [None if e.upper is None else F(e.upper) for e in instance.edges]
    return LinearProgram(Sense.MAXIMIZE, names, objective, rows, lower, upper)


def build_dual(instance: GameInstance) -> LinearProgram:
    """The dual of :func:`build_primal`, written out explicitly.

    Vertex variables are weighted by the vertex capacities in the
    objective. The capacity-with-edge-bounds kind adds one lower-bound
    dual per edge and one upper-bound dual per edge that has a finite
    upper bound (an absent bound contributes no column at all).
    """
    names = [vertex_dual_var(q) for q in instance.agents]
    objective = [F(instance.capacity(q)) for q in instance.agents]
    hk = instance.kind is GameKind.HOFFMAN_KRUSKAL
    if hk:
        for e in instance.edges:
            names.append(lower_dual_var(e.key))
            objective.append(-F(e.lower))
            if e.upper is not None:
                names.append(upper_dual_var(e.key))
                objective.append(F(e.upper))
    index = {n: j for j, n in enumerate(names)}
    rows = []
    for e in instance.edges:
        coeffs = [ZERO] * len(names)
        coeffs[index[vertex_dual_var(e.u)]] = ONE
        coeffs[index[vertex_dual_var(e.v)]] = ONE
        if hk:
            coeffs[index[lower_dual_var(e.key)]] = -ONE
            if e.upper is not None:
                coeffs[index[upper_dual_var(e.key)]] = ONE
        rows.append(Constraint(tuple(coeffs), Relation.GE, e.weight,
                               f"edge[{e.u},{e.v}]"))
    return LinearProgram(Sense.MINIMIZE, names, objective, rows)


def odd_set_label(subset: Sequence[str]) -> str:
    return "odd[" + "|".join(subset) + "]"


def build_odd_set_primal(instance: GameInstance,
                         caps: EnumerationCaps = DEFAULT_CAPS) -> LinearProgram:
    """General-graph matching program strengthened by odd-set rows.

    For every odd vertex subset S with |S| >= 3, the edges inside S may
    carry total value at most (|S|-1)/2. All rows are materialized
    explicitly, so the vertex count is capped.
    """
    if instance.kind is not GameKind.GENERAL:
        raise ValueError("odd-set rows apply to general instances only")
    vertices = instance.agents
    if len(vertices) > caps.max_vertices:
        raise CapExceededError(
            f"{len(vertices)} vertices exceed the odd-set cap of {caps.max_vertices}")
    base = build_primal(instance)
    extra = []
    for size in range(3, len(vertices) + 1, 2):
        for subset in combinations(vertices, size):
            inside = set(subset)
            coeffs = tuple(ONE if (e.u in inside and e.v in inside) else ZERO
                           for e in instance.edges)
            if not any(coeffs):
                continue
            extra.append(Constraint(coeffs, Relation.LE,
                                    F(size - 1, 2), odd_set_label(subset)))
    return base.with_extra_constraints(extra)


@dataclass(frozen=True)
class ConstraintMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.col_labels))


def constraint_matrix(lp: LinearProgram) -> ConstraintMatrix:
    return ConstraintMatrix(
        tuple(c.coeffs for c in lp.constraints),
        tuple(c.name for c in lp.constraints),
        lp.variables,
    )


def incidence_matrix(instance: GameInstance) -> ConstraintMatrix:
    """Vertex-by-edge incidence rows of the matching program."""
    return constraint_matrix(build_primal(instance))


def _int_det(rows: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(rows)
    mat = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if mat[i][k]), -1)
            if swap < 0:
                return 0
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[n - 1][n - 1]


def is_totally_unimodular(matrix: ConstraintMatrix,
                          max_order: int | None = None) -> bool:
    """True iff every square submatrix has determinant -1, 0, or 1.

    Exhaustive exact sweep in increasing submatrix order, abandoning the
    search at the first violating determinant. Refuses matrices whose
    smaller dimension exceeds the cap.
    """
    cap = DEFAULT_CAPS.max_tum_order if max_order is None else max_order
    m, n = matrix.shape
    order = min(m, n)
    if order > cap:
        raise CapExceededError(
            f"submatrix order {order} exceeds the sweep cap of {cap}")
    rows = []
    for row in matrix.entries:
        ints = []
        for v in row:
            if v.denominator != 1 or v not in (-1, 0, 1):
                return False
            ints.append(int(v))
        rows.append(ints)
    for k in range(2, order + 1):
        for rsel in combinations(range(m), k):
            sub = [rows[i] for i in rsel]
            for csel in combinations(range(n), k):
                det = _int_det([[r[j] for j in csel] for r in sub])
                if det not in (-1, 0, 1):
                    return False
    return True


@dataclass(frozen=True)
class HalfIntegralStructure:
    """Vertex-structure report for the general matching polytope.

    A valid vertex has every edge value in {0, 1/2, 1}; the 1-edges form
    a matching and the 1/2-edges split into vertex-disjoint odd cycles.
    """
    matched_edges: tuple[EdgeKey, ...]
    half_cycles: tuple[tuple[str, ...], ...]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_half_integrality(solution, instance: GameInstance) -> HalfIntegralStructure:
    """Classify a vertex of the general matching program.

    Raises if the assignment is not a vertex of the polytope (structure
    is only guaranteed at vertices).
    """
    if instance.kind is not GameKind.GENERAL:
        raise ValueError("half-integral structure applies to general instances")
    lp = build_primal(instance)
    values = tuple(solution[primal_var(e.key)] for e in instance.edges)
    if not is_vertex(lp, values):
        raise ValueError("assignment is not a vertex of the matching polytope")

    violations = []
    ones: list[EdgeKey] = []
    halves: list[EdgeKey] = []
    half = F(1, 2)
    for e, x in zip(instance.edges, values):
        if x == 1:
            ones.append(e.key)
        elif x == half:
            halves.append(e.key)
        elif x != 0:
            violations.append(f"x[{e.u},{e.v}] = {x} is not in {{0, 1/2, 1}}")
    used = set()
    for u, v in ones:
        if u in used or v in used:
            violations.append(f"integral edges are not a matching at ({u},{v})")
        used.update((u, v))

    adjacency: dict[str, list[str]] = {}
    for u, v in halves:
        adjacency.setdefault(u, []).append(v)
        adjacency.setdefault(v, []).append(u)
        if u in used or v in used:
            violations.append(f"half edge ({u},{v}) shares a vertex with a matched edge")
    for q, nbrs in adjacency.items():
        if len(nbrs) != 2:
            violations.append(f"half edges at {q} do not close a cycle")

    cycles: list[tuple[str, ...]] = []
    if not violations:
        # No parallel edges, so every half-degree-2 vertex has two distinct
        # neighbours and each component is a simple cycle.
        visited: set[str] = set()
        for start in sorted(adjacency):
            if start in visited:
                continue
            cycle = [start]
            prev, cur = None, start
            while True:
                nxt = next(n for n in adjacency[cur] if n != prev)
                if nxt == start:
                    break
                cycle.append(nxt)
                prev, cur = cur, nxt
            visited.update(cycle)
            if len(cycle) % 2 == 0:
                violations.append(f"half cycle through {start} has even length")
            cycles.append(tuple(cycle))
    return HalfIntegralStructure(tuple(ones), tuple(cycles), tuple(violations))
