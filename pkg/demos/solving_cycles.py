"""Show why the characteristic cycles are forced, and what they imply for packets."""

from g2micro import ccsolver, conormal, packets

print("moment images:", conormal.moment_image_map())

system = ccsolver.assemble()
print(f"{len(system.variables)} unknowns, {len(system.equations)} polynomial equations")
for bound in (4, 8):
    loose = ccsolver.enumerate_solutions(system, bound, use_lemma=False)
    print(f"bound {bound}: {len(loose)} solutions before the lattice check")

print("stable complement exists for c =", [c for c in range(3) if ccsolver.complement_check(c)])
sol = ccsolver.solve_integral()
for xi in range(sol.cc.n_params):
    cyc = sol.cc.cycle(xi)
    if len(cyc.support()) > 1:
        print(f"  CC(xi{xi}) = {cyc}")

print("\nmicro-packets")
for pk in packets.all_micro_packets(sol.cc):
    terms = " ".join(f"{c:+d}*pi{x}" for x, c in sorted(pk.eta.items()))
    print(f"  S{pk.orbit}: {terms}")

for nil in packets.NILCLASSES:
    print(f"A-parameter {nil:<13} -> {packets.arthur_target(nil).target}")
