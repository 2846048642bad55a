"""Translate to the s1 wall, then recover local Euler obstructions."""

from g2micro import euler, translation

block = translation.subregular_block()
for q in block.q_orbits:
    print(f"Q{q.id}: dim {q.dim}, fibre {sorted(q.fibre)}, handle {q.handle}")

cc = translation.singular_cc(block)
for g in range(cc.n_params):
    print(f"  CC(gamma{g}) = {cc.cycle(g)}")
for handle in ("psi_a", "psi_b"):
    print(handle, translation.singular_packet(block, handle).eta)

for case in ("integral", "subregular"):
    e = euler.solve_case(case)
    print(f"\n{case}: obstructions outside {{0, 1}}")
    for up, lo, val in euler.obstruction_report(e):
        print(f"  a({e.label}{lo} in closure of {e.label}{up}) = {val}")
