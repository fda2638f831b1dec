#!/usr/bin/env python3
"""General (one-sided) matching games: when does the core survive?

Without a bipartition the matching polytope picks up half-integral
vertices on odd cycles, and the core is non-empty exactly when the
fractional relaxation gains nothing over integral matchings.

Run: python3 demos/general_graphs.py
"""

from pathlib import Path

from matchcore import (
    always_paid_fairly,
    build_odd_set_primal,
    build_primal,
    check_concurrency,
    check_half_integrality,
    classify_player,
    classify_team,
    core_nonempty,
    parse_instance,
    paid_sometimes,
    solve,
    verify_complementarity,
)

here = Path(__file__).parent / "instances"

# -- A triangle: the classic empty core. -------------------------------------

triangle = parse_instance((here / "unit_triangle.game").read_text())
r = check_concurrency(triangle)
print(f"Unit triangle: fractional optimum {r.fractional_optimum}, integral "
      f"optimum {r.integral_optimum} -> core "
      f"{'non-empty' if r.concurrent else 'empty'}.")
assert not core_nonempty(triangle)[0]

vertex = solve(build_primal(triangle))
structure = check_half_integrality(vertex, triangle)
print(f"The fractional optimum is half on every edge: one odd cycle "
      f"{structure.half_cycles[0]}.")
print(f"Adding odd-set rows repairs integrality: optimum "
      f"{solve(build_odd_set_primal(triangle)).value}.")
print(f"Payment questions get the distinguished empty-core answer: "
      f"{paid_sometimes(triangle, 'i')!r}.\n")

# -- A degenerate seven-vertex game with a unique core split. ----------------

ring = parse_instance((here / "weighted_seven_ring.game").read_text())
r = check_concurrency(ring)
print(f"Seven-ring: optima agree at {r.integral_optimum}, so the core exists.")
ok, split = core_nonempty(ring)
print("Its only member pays", {q: str(split[q]) for q in ring.agents if split[q]})

for q in ("v2", "v1"):
    print(f"  {q}: {classify_player(ring, q).value}, "
          f"{'paid sometimes' if paid_sometimes(ring, q) else 'never paid'}")
for key in (("v4", "v7"), ("v1", "v2")):
    print(f"  team {key}: {classify_team(ring, key).value}, "
          f"{'always paid fairly' if always_paid_fairly(ring, key) else 'sometimes overpaid'}")
print("Only the never-matched team (v4,v7) gets overpaid; its members are "
      "stars elsewhere, just not together.\n")

# -- The one-way street of general graphs. -----------------------------------

pendant = parse_instance((here / "triangle_with_pendant.game").read_text())
report = verify_complementarity(pendant)
assert report.ok
print("Pendant triangle: forward implications hold, but "
      + "; ".join(report.gaps) + ".")
print("On bipartite graphs that reverse direction is a theorem; here it fails.")
