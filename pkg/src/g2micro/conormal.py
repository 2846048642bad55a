"""Conormal classes, the nilpotent K-orbit poset, and moment-map images.

The moment image of each conormal class is recovered by a small exhaustive
search.  The search uses a handful of seed values, the Springer counts, and
monotonicity along the weak order.  It also uses the fact that associated
varieties are constant on cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import fixtures
from .grothendieck import IntVector, coherent_action, hc_cells, tau_invariant
from .orbitgeom import get_pair, orbit_model


@dataclass(frozen=True)
class LVector(IntVector):
    """Integer combination of conormal classes [T_S]."""

    prefix: str = "T"


# ---------------------------------------------------------------------------
# nilpotent orbits


@dataclass(frozen=True)
class NilpotentPoset:
    orbits: tuple
    dims: dict
    covers: frozenset  # (lower, upper)
    component_group: dict
    special: frozenset

    def closure(self, name: str) -> frozenset:
        below = {name}
        frontier = [name]
        while frontier:
            u = frontier.pop()
            for lo, up in self.covers:
                if up == u and lo not in below:
                    below.add(lo)
                    frontier.append(lo)
        return frozenset(below)

    def leq(self, a: str, b: str) -> bool:
        """True when orbit a lies in the closure of orbit b."""
        return a in self.closure(b)


NILPOTENT_ORBITS = ("O6", "O51", "O52", "O4", "O3", "O0")


def nilpotent_poset(fixture_dir=None) -> NilpotentPoset:
    groups = {row["nilp_orbit"]: row["component_group"] for row in _springer_rows(fixture_dir)}
    return NilpotentPoset(
        orbits=NILPOTENT_ORBITS,
        dims={"O6": 6, "O51": 5, "O52": 5, "O4": 4, "O3": 3, "O0": 0},
        covers=frozenset({("O51", "O6"), ("O52", "O6"), ("O4", "O51"), ("O4", "O52"),
                          ("O3", "O4"), ("O0", "O3")}),
        component_group=groups,
        special=frozenset({"O6", "O51", "O52", "O0"}),
    )


def _springer_rows(fixture_dir=None) -> list:
    rows = fixtures.read_tsv(fixtures.fixture_path("springer_g2.tsv", fixture_dir))
    names = [r.get("nilp_orbit") for r in rows]
    if sorted(names) != sorted(NILPOTENT_ORBITS):
        raise fixtures.FixtureError(f"springer_g2.tsv lists {names}")
    return rows


def springer_counts(fixture_dir=None) -> dict:
    try:
        return {r["nilp_orbit"]: int(r["count"]) for r in _springer_rows(fixture_dir)}
    except ValueError as exc:
        raise fixtures.FixtureError("springer_g2.tsv: non-integer count") from exc


# ---------------------------------------------------------------------------
# vertical / horizontal


def vertical(orbit: int, s: int, pair="g2", action=None) -> bool:
    """Orbit is s-vertical iff s is in the tau-invariant of its constant sheaf."""
    action = action or coherent_action(get_pair(pair).key)
    return s in tau_invariant(action, orbit)


def vertical_table(pair="g2", action=None) -> dict:
    model = orbit_model(pair)
    action = action or coherent_action(get_pair(pair).key)
    return {
        g: frozenset(o.id for o in model.orbits if vertical(o.id, g, pair, action))
        for g in model.generators
    }


# ---------------------------------------------------------------------------
# forced cycles and moment images


def forced_single_term(pair="g2", action=None) -> frozenset:
    """Parameters whose cycle can only be their own conormal class.

    Support and tau-invariant alone leave one candidate orbit for these.
    """
    model = orbit_model(pair)
    action = action or coherent_action(get_pair(pair).key)
    vert = vertical_table(pair, action)
    forced = set()
    for p in model.parameters():
        cands = [
            S for S in model.closure(p.orbit)
            if all(S in vert[g] for g in tau_invariant(action, p.id))
        ]
        if cands == [p.orbit]:
            forced.add(p.id)
    return frozenset(forced)


def linked_orbits(pair="g2", action=None) -> list:
    """Groups of orbits that must share a moment image.

    Two parameters with forced cycles in one cell have the same associated
    variety, so their orbits have the same image.
    """
    action = action or coherent_action(get_pair(pair).key)
    model = orbit_model(pair)
    params = model.parameters()
    forced = forced_single_term(pair, action)
    groups = []
    for block in hc_cells(action).blocks:
        orbits = sorted({params[i].orbit for i in block if i in forced})
        if len(orbits) > 1:
            groups.append(tuple(orbits))
    return groups


DEFAULT_SEEDS = {0: "O6", 1: "O51", 2: "O52", 9: "O0", 8: "O3"}


@dataclass(frozen=True)
class MomentImages:
    assignment: dict
    solutions: tuple = field(repr=False)

    @property
    def unique(self) -> bool:
        return len(self.solutions) == 1


def weak_order_edges(pair="g2") -> list:
    return [(lo, up) for lo, up, _ in orbit_model(pair).weak_order_edges()]


def moment_images(seeds=None, counts=None, poset=None, weak_order=None, linked=None,
                  n_orbits: int | None = None) -> MomentImages:
    """All assignments orbit -> nilpotent orbit meeting the constraints.

    ``assignment`` is the unique solution when there is exactly one, else empty.
    """
    seeds = DEFAULT_SEEDS if seeds is None else dict(seeds)
    counts = springer_counts() if counts is None else dict(counts)
    poset = poset or nilpotent_poset()
    weak_order = weak_order_edges() if weak_order is None else list(weak_order)
    linked = linked_orbits() if linked is None else list(linked)
    n = n_orbits if n_orbits is not None else sum(counts.values())

    def consistent(assign: dict) -> bool:
        used: dict = {}
        for o in assign.values():
            used[o] = used.get(o, 0) + 1
            if used[o] > counts.get(o, 0):
                return False
        for lo, up in weak_order:
            if lo in assign and up in assign and not poset.leq(assign[up], assign[lo]):
                return False
        for group in linked:
            vals = {assign[j] for j in group if j in assign}
            if len(vals) > 1:
                return False
        return True

    solutions = []

    def extend(j: int, assign: dict) -> None:
        if j == n:
            if all(sum(1 for v in assign.values() if v == o) == c for o, c in counts.items()):
                solutions.append(dict(assign))
            return
        options = [seeds[j]] if j in seeds else list(poset.orbits)
        for o in options:
            assign[j] = o
            if consistent(assign):
                extend(j + 1, assign)
            del assign[j]

    extend(0, {})
    unique = solutions[0] if len(solutions) == 1 else {}
    return MomentImages(unique, tuple(solutions))


@lru_cache(maxsize=None)
def moment_image_map() -> dict:
    result = moment_images()
    if not result.unique:
        raise fixtures.FixtureError(
            f"moment-image constraints admit {len(result.solutions)} solutions"
        )
    return dict(result.assignment)
