"""Walk from the root system to orbits, the closure order and cells."""

from g2micro import grothendieck, orbitgeom

model = orbitgeom.orbit_model("g2")
print("K-orbits on the flag variety of G2 for K = SL2 x SL2")
for o in model.orbits:
    print(f"  S{o.id}: dim {o.dim}, p = {o.p_word:<14} natures {o.nature}")

poset = model.poset()
print(f"\n{len(poset.solid_edges())} labelled covers, {len(poset.dotted_edges())} extra containments")

action = grothendieck.coherent_action()
for k, block in enumerate(grothendieck.hc_cells(action).blocks):
    print(f"cell {k}: {sorted(block)}")

lam = (orbitgeom.Fraction(1, 3), orbitgeom.Fraction(2, 3))
kind = orbitgeom.integral_subsystem(lam)
print(f"\nlambda = {lam[0]}, {lam[1]} has integral system {kind}; "
      f"K options {[p.k_type for p in orbitgeom.k_lambda_options(kind)]}")
