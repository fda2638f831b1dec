#!/usr/bin/env python3
"""Capacity games: where the dual stops telling the whole story.

With one shared capacity, optimal duals describe every core split
(complete characterization). With per-vertex capacities they only cover
part of it, and with per-edge floors and caps the distributable total
itself depends on which optimal dual you settle on.

Run: python3 demos/capacity_games.py
"""

from pathlib import Path

from matchcore import (
    dual_to_imputation,
    in_dual_image,
    is_core_imputation,
    make_dual,
    make_imputation,
    max_weight,
    meet_join,
    optimal_dual,
    parse_instance,
    sample_dual_vertices,
    surplus_account,
)

here = Path(__file__).parent / "instances"

# -- Arbitrary capacities: the dual is only a partial story. ---------------

skewed = parse_instance((here / "three_agent_b_matching.game").read_text())
print(f"Hub agent u (capacity 2) with partners v1 (2) and v2 (1); "
      f"worth {max_weight(skewed)[0]}.")

from_dual = dual_to_imputation(skewed, optimal_dual(skewed))
print("The unique optimal dual pays", {q: str(from_dual[q]) for q in skewed.agents})

lopsided = make_imputation(skewed, {"u": 4})
assert is_core_imputation(skewed, lopsided).in_core
assert not in_dual_image(skewed, lopsided)
print("Yet (4, 0, 0) is also defection-proof and corresponds to no optimal "
      "dual: the dual only partially characterizes this core.\n")

# -- Uniform capacities: a lattice of core splits. --------------------------

uniform = parse_instance(
    "game uniform_b\nside_u a1 a2\nside_v b1 b2\nb_const 2\n"
    "edge a1 b1 weight 4\nedge a1 b2 weight 4\nedge a2 b1 weight 4\n")
duals = sample_dual_vertices(uniform, count=6, seed=11)
print(f"Uniform capacity 2, three equal edges: found {len(duals)} core vertices.")
first = dual_to_imputation(uniform, duals[0])
second = dual_to_imputation(uniform, duals[-1])
low_left, high_left = meet_join(uniform, first, second)
print("Combining two of them coordinate-wise stays in the core:")
print("  min on side_u, max on side_v:", {q: str(low_left[q]) for q in uniform.agents})
print("  max on side_u, min on side_v:", {q: str(high_left[q]) for q in uniform.agents}, "\n")

# -- Edge floors and caps: the surplus depends on the dual. ------------------

windowed = parse_instance((here / "hub_capacity_surplus.game").read_text())
print(f"Capacities (4,2,3), edge windows [1,2] and [0,3]; worth "
      f"{max_weight(windowed)[0]}.")
first = make_dual(windowed, {"u": 3}, lower={("u", "v1"): 2})
second = make_dual(windowed, {"u": 1, "v2": 2})
for label, d in (("first", first), ("second", second)):
    acct = surplus_account(windowed, d)
    pay = dual_to_imputation(windowed, d)
    print(f"  {label} dual: worth {acct.worth} {'+' if acct.adjustment >= 0 else '-'} "
          f"adjustment {abs(acct.adjustment)} = surplus {acct.surplus}; "
          f"payments {tuple(str(pay[q]) for q in windowed.agents)}")
    assert is_core_imputation(windowed, pay).in_core
print("Two optimal duals, two different distributable totals: binding edge "
      "floors inflate the pot, binding caps shrink it.")
