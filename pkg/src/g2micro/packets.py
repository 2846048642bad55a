"""Micro-packets, their stable combinations, and the Arthur-parameter targets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ccsolver import CCMatrix, cc_nonintegral, solve_integral
from .grothendieck import KVector
from .orbitgeom import get_pair, integral_subsystem, is_regular, orbit_model
from .rootsys import format_word, g2, g2_weyl, pairing


@dataclass(frozen=True)
class MicroPacket:
    orbit: int
    members: frozenset
    eta: dict  # parameter id -> signed coefficient

    def eta_vector(self, n_params: int) -> KVector:
        return KVector(tuple(self.eta.get(i, 0) for i in range(n_params)), "pi")

    def to_json(self, orbit_label: str = "S", param_label: str = "xi") -> dict:
        return {
            "orbit": f"{orbit_label}{self.orbit}",
            "members": [f"{param_label}{i}" for i in sorted(self.members, reverse=True)],
            "eta": {f"{param_label}{i}": self.eta[i] for i in sorted(self.eta, reverse=True)},
        }


def kottwitz_sign(real_form: str) -> int:
    return -1 if real_form == "compact" else 1


def packet_from_column_data(chi_row, orbit: int, param_orbit, dims, forms) -> MicroPacket:
    """Packet on ``orbit`` given chi(orbit, .) and per-parameter data."""
    eta = {}
    for xi, chi in enumerate(chi_row):
        if chi:
            sign = kottwitz_sign(forms[xi]) * (-1) ** (dims[param_orbit[xi]] - dims[orbit])
            eta[xi] = sign * int(chi)
    return MicroPacket(orbit, frozenset(eta), eta)


def micro_packet(cc: CCMatrix, orbit: int) -> MicroPacket:
    if not 0 <= orbit < cc.n_orbits:
        raise KeyError(f"no orbit S{orbit} for {cc.pair_key}")
    model = orbit_model(cc.pair_key)
    params = model.parameters()
    dims = [o.dim for o in model.orbits]
    forms = [p.real_form for p in params]
    return packet_from_column_data(
        [int(x) for x in cc.values[orbit]], orbit, cc.param_orbit, dims, forms
    )


def all_micro_packets(cc: CCMatrix | None = None) -> list:
    cc = cc or solve_integral().cc
    return [micro_packet(cc, j) for j in range(cc.n_orbits)]


def l_packet_nonintegral(pair, orbit: int) -> MicroPacket:
    """For non-integral pairs the micro-packet is the L-packet of the orbit."""
    return micro_packet(cc_nonintegral(pair), orbit)


# ---------------------------------------------------------------------------
# Arthur parameters


NILCLASSES = ("trivial", "long-root", "short-root", "subregular-a", "subregular-b", "regular")


@dataclass(frozen=True)
class ArthurClass:
    nilclass: str
    target: object  # orbit id, or a singular handle such as "psi_a"
    singular: bool
    infinitesimal_character: tuple
    p_word: str | None = None


def _dominant(lam):
    W = g2_weyl()
    for w in W.elements:
        v = W.apply(w, lam)
        if all(pairing(c, v) >= 0 for c in ((1, 0), (0, 1))):
            return w, v
    raise AssertionError("no dominant conjugate")


def _reflection_word(root) -> tuple:
    W = g2_weyl()
    coroot = g2().coroots[tuple(root)]
    for w in W.elements:
        m = W.matrix(w)
        if m[0][0] + m[1][1] == 0 and W.apply(w, root) == (-root[0], -root[1]):
            fixed = [v for v in ((1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3))
                     if pairing(coroot, v) == 0]
            if all(W.apply(w, v) == v for v in fixed):
                return w
    raise KeyError(root)


def _root_parameter(m: int, orth_root, shift) -> tuple:
    """Dominant infinitesimal character and the Weyl class of the tempered part."""
    lam = (m * orth_root[0] + shift[0], m * orth_root[1] + shift[1])
    w, dom = _dominant(lam)
    W = g2_weyl()
    p = W.canonical(w + _reflection_word(orth_root) + W.inverse(w))
    return dom, p


def _orbit_with_p(p) -> int:
    hits = [o.id for o in orbit_model("g2").orbits if o.p == p]
    if len(hits) != 1:
        raise AssertionError(f"{format_word(p)} names {len(hits)} orbits")
    return hits[0]


def arthur_target(nilclass: str, m: int | None = None) -> ArthurClass:
    """Which micro-packet (or singular handle) an A-parameter class lands on.

    ``m`` is the odd integer of the tempered part in the root cases; values
    that make the infinitesimal character singular are rejected.
    """
    rho = tuple(Fraction(x) for x in g2().rho)
    W = g2_weyl()
    if nilclass == "trivial":
        p = W.longest()
        return ArthurClass(nilclass, _orbit_with_p(p), False, rho, format_word(p))
    if nilclass == "regular":
        # p is the identity, which three closed orbits share; the split-form
        # trivial representation singles out S0
        return ArthurClass(nilclass, 0, False, rho, "e")
    if nilclass in ("long-root", "short-root"):
        if nilclass == "long-root":
            m = 3 if m is None else m
            orth, shift = (1, 0), (1, 2)
        else:
            m = 5 if m is None else m
            orth, shift = (1, 2), (1, 0)
        if m < 1 or m % 2 == 0:
            raise ValueError("m must be a positive odd integer")
        lam, p = _root_parameter(m, orth, shift)
        lam = tuple(Fraction(x) for x in lam)
        if not is_regular(lam) or integral_subsystem(lam) != "G2":
            raise ValueError(f"m = {m} gives a singular infinitesimal character; not treated")
        return ArthurClass(nilclass, _orbit_with_p(p), False, lam, format_word(p))
    if nilclass in ("subregular-a", "subregular-b"):
        lam = (Fraction(1), Fraction(2))
        assert not is_regular(lam)
        handle = "psi_a" if nilclass.endswith("a") else "psi_b"
        return ArthurClass(nilclass, handle, True, lam, None)
    raise ValueError(f"unknown nilpotent class {nilclass!r}; expected one of {NILCLASSES}")


def nonintegral_packets(pair) -> list:
    pair = get_pair(pair)
    return [l_packet_nonintegral(pair, o.id) for o in orbit_model(pair).orbits]
