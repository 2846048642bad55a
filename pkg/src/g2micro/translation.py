"""The subregular singular block, obtained by translating to the wall of s1.

Orbits on the partial flag variety are the fibres of the projection that
forgets the s1 direction.  Two orbits share a fibre exactly when the
m(s1)-action sends them to the same orbit, and that common image is the
largest orbit of the fibre.  A parameter survives translation exactly when
s1 lies in its tau-invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ccsolver import CCMatrix, solve_integral
from .grothendieck import coherent_action, tau_invariant
from .orbitgeom import integral_subsystem, is_regular, orbit_model
from .packets import MicroPacket, packet_from_column_data

SINGULAR_GENERATOR = 1
SUBREGULAR_LAMBDA = (Fraction(1), Fraction(2))

# fibres and parameters stated outright; everything else is derived
_STATED_FIBRES = {"psi_a": frozenset({0, 2, 4}), "psi_b": frozenset({1})}


@dataclass(frozen=True)
class QOrbit:
    id: int
    dim: int
    top: int  # the largest orbit in the fibre, i.e. the pushforward of Q
    fibre: frozenset
    handle: str | None


@dataclass(frozen=True)
class GammaParameter:
    id: int
    q: int
    pushforward: int
    local_system: str


@dataclass(frozen=True)
class SingularBlock:
    q_orbits: tuple
    gammas: tuple
    closure: dict  # Q id -> frozenset of Q ids
    provenance: dict  # ("fibre", S) / ("pushforward", g) -> "stated" | "derived"

    @property
    def pushforward(self) -> dict:
        return {g.id: g.pushforward for g in self.gammas}

    @property
    def fibre_partition(self) -> dict:
        return {S: q.id for q in self.q_orbits for S in q.fibre}

    @property
    def dims(self) -> tuple:
        return tuple(q.dim for q in self.q_orbits)

    def handle_orbit(self, handle: str) -> int:
        for q in self.q_orbits:
            if q.handle == handle:
                return q.id
        raise KeyError(handle)

    def killed(self, n_params: int) -> list:
        image = set(self.pushforward.values())
        return [i for i in range(n_params) if i not in image]


def subregular_block() -> SingularBlock:
    model = orbit_model("g2")
    params = model.parameters()
    coherent = coherent_action("g2-sl2xsl2")
    s = SINGULAR_GENERATOR

    fibres: dict = {}
    for o in model.orbits:
        fibres.setdefault(model.m_action(s, o.id), set()).add(o.id)
    tops = sorted(fibres, key=lambda t: (model.orbits[t].dim, t))
    handles = {}
    for name, fib in _STATED_FIBRES.items():
        handles[frozenset(fib)] = name
    q_orbits = tuple(
        QOrbit(i, model.orbits[t].dim - 1, t, frozenset(fibres[t]), handles.get(frozenset(fibres[t])))
        for i, t in enumerate(tops)
    )
    q_of_top = {q.top: q.id for q in q_orbits}

    survivors = [
        p for p in params
        if p.real_form == "split" and s in tau_invariant(coherent, p.id)
    ]
    gammas = []
    for k, p in enumerate(survivors):
        if p.orbit not in q_of_top:
            raise AssertionError(f"surviving parameter {p.id} is not on the top of its fibre")
        label = "trivial" if p.local_system == "trivial" else f"L{k}"
        gammas.append(GammaParameter(k, q_of_top[p.orbit], p.id, label))

    closure = {
        q.id: frozenset(r.id for r in q_orbits if r.top in model.closure(q.top)) for q in q_orbits
    }
    provenance = {}
    stated = set().union(*_STATED_FIBRES.values())
    for o in model.orbits:
        provenance[("fibre", o.id)] = "stated" if o.id in stated else "derived"
    for g in gammas:
        provenance[("pushforward", g.id)] = "stated"
    return SingularBlock(q_orbits, tuple(gammas), closure, provenance)


def singular_cc(block: SingularBlock | None = None, cc: CCMatrix | None = None) -> CCMatrix:
    """chi_Q(gamma) = chi_{f*Q}(f* gamma)."""
    block = block or subregular_block()
    cc = cc or solve_integral().cc
    vals = np.zeros((len(block.q_orbits), len(block.gammas)), dtype=np.int64)
    for q in block.q_orbits:
        for g in block.gammas:
            vals[q.id, g.id] = cc.chi(q.top, g.pushforward)
    vals.setflags(write=False)
    return CCMatrix("g2-subregular", vals, tuple(g.q for g in block.gammas))


def singular_packet(block: SingularBlock | None, q) -> MicroPacket:
    """Micro-packet over a Q-orbit, given by index or by handle ('psi_a', 'psi_b')."""
    block = block or subregular_block()
    qid = block.handle_orbit(q) if isinstance(q, str) else int(q)
    chi = singular_cc(block)
    forms = ["split"] * len(block.gammas)
    return packet_from_column_data(
        [int(x) for x in chi.values[qid]], qid, chi.param_orbit, block.dims, forms
    )


def singular_summary(lam) -> str:
    """One-line answer for an arbitrary singular infinitesimal character."""
    lam = tuple(Fraction(x) for x in lam)
    if is_regular(lam):
        raise ValueError("lambda is regular")
    if lam == SUBREGULAR_LAMBDA:
        return "subregular: see the materialized singular block"
    kind = integral_subsystem(lam)
    if kind != "G2":
        return f"non-integral ({kind}); singular micro-packets are L-packets after translation"
    return "integral singular; only the subregular block is materialized"
