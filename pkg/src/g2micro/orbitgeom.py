"""Orbits of a symmetric subgroup on the flag variety of G2 and its subsystems.

Orbits are computed, not tabulated.  An orbit is represented by a class
``e(v) * sigma_w`` in the Tits group of the integral root subsystem, taken up
to conjugation by the torus.  Closed orbits are the Weyl conjugates of the
element ``y`` that defines the symmetric subgroup.  The remaining orbits come
from repeated Cayley transforms (through noncompact imaginary roots) and cross
actions (through complex ascents).  Fixtures only fix the numbering and are
checked against the computed orbits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Sequence

from . import fixtures
from .rootsys import (
    WeylGroup,
    format_word,
    g2,
    pairing,
    parse_word,
    torus_component_group,
)

GROUP_TYPES = ("Torus", "GL2", "SL2xSL2", "SL3", "G2")
SUBSYSTEM_LABELS = {"Torus": "Empty", "GL2": "A1", "SL2xSL2": "A1xA1", "SL3": "A2", "G2": "G2"}
_TYPE_BY_POSITIVE_COUNT = {0: "Torus", 1: "GL2", 2: "SL2xSL2", 3: "SL3", 6: "G2"}

COMPACT = "compact_imaginary"
NONCOMPACT = "noncompact_imaginary"
REAL = "real"
COMPLEX = "complex"
NATURES = (COMPACT, NONCOMPACT, REAL, COMPLEX)

# One integrally dominant, regular infinitesimal character per subsystem type.
REPRESENTATIVE_LAMBDA = {
    "G2": (Fraction(3), Fraction(5)),
    "SL3": (Fraction(5, 3), Fraction(3)),
    "SL2xSL2": (Fraction(3, 2), Fraction(5, 2)),
    "GL2": (Fraction(11, 5), Fraction(17, 5)),
    "Torus": (Fraction(1, 7), Fraction(1, 5)),
}


def _frac_vec(v) -> tuple:
    return tuple(Fraction(x) for x in v)


def _mod1(v) -> tuple:
    return tuple(x - (x.numerator // x.denominator) for x in _frac_vec(v))


# ---------------------------------------------------------------------------
# infinitesimal characters


def integral_coroots(lam) -> list:
    """Positive coroots with integral pairing against ``lam``."""
    lam = _frac_vec(lam)
    return sorted(c for c in g2().positive_coroots() if Fraction(pairing(c, lam)).denominator == 1)


def integral_subsystem(lam) -> str:
    """Type of the integral coroot system of ``lam``, named by its group."""
    return _TYPE_BY_POSITIVE_COUNT[len(integral_coroots(lam))]


def is_regular(lam) -> bool:
    lam = _frac_vec(lam)
    return all(pairing(c, lam) != 0 for c in g2().positive_coroots())


def _root_of_coroot(coroot) -> tuple:
    rs = g2()
    for r, c in rs.coroots.items():
        if c == tuple(coroot):
            return r
    raise KeyError(coroot)


def simple_integral_coroots(lam) -> list:
    """Simple coroots of the integral system, ordered by height then coordinates."""
    pos = integral_coroots(lam)
    sums = {(a[0] + b[0], a[1] + b[1]) for a in pos for b in pos}
    simple = [c for c in pos if c not in sums]
    return sorted(simple, key=lambda c: (c[0] + c[1], tuple(-x for x in c)))


def _compact_type(lam, y) -> str:
    pos = integral_coroots(lam)
    compact = [c for c in pos if Fraction(pairing(c, y)).denominator == 1]
    return _TYPE_BY_POSITIVE_COUNT[len(compact)]


_HALF_LATTICE = tuple((Fraction(a, 2), Fraction(b, 2)) for a in (0, 1) for b in (0, 1))


def _y_candidates(lam):
    lam = _frac_vec(lam)
    for u in _HALF_LATTICE:
        yield (lam[0] / 2 + u[0], lam[1] / 2 + u[1])


@dataclass(frozen=True)
class SymmetricPair:
    group_type: str
    k_type: str

    @property
    def key(self) -> str:
        return f"{self.group_type}-{self.k_type}".lower()

    def __str__(self) -> str:
        return f"({self.group_type}, {self.k_type})"


def k_lambda_options(group_type: str) -> list:
    """Symmetric subgroups realised by elements y with y^2 = e(lambda)."""
    if group_type not in GROUP_TYPES:
        raise ValueError(f"unknown subsystem type {group_type!r}")
    lam = REPRESENTATIVE_LAMBDA[group_type]
    found = {_compact_type(lam, y) for y in _y_candidates(lam)}
    return [SymmetricPair(group_type, k) for k in GROUP_TYPES if k in found]


@lru_cache(maxsize=None)
def all_pairs() -> tuple:
    return tuple(p for t in GROUP_TYPES for p in k_lambda_options(t))


PAIR_ALIASES = {"g2": "g2-sl2xsl2", "sl3": "sl3-gl2"}
FIXTURE_STEMS = {"g2-sl2xsl2": "g2", "sl3-gl2": "sl3"}


def get_pair(spec) -> SymmetricPair:
    """Accept a SymmetricPair, a key like 'sl3-gl2', an alias, or a 2-tuple."""
    if isinstance(spec, SymmetricPair):
        pair = spec
    elif isinstance(spec, str):
        key = PAIR_ALIASES.get(spec.lower(), spec.lower())
        matches = [p for p in all_pairs() if p.key == key]
        if not matches:
            raise ValueError(f"unknown pair {spec!r}")
        pair = matches[0]
    else:
        pair = SymmetricPair(*spec)
    if pair not in all_pairs():
        raise ValueError(f"{pair} is not a symmetric pair for G2(lambda)")
    return pair


# ---------------------------------------------------------------------------
# Tits group of the integral system


class _Tits:
    """Elements e(v) sigma_w with v taken modulo the root lattice."""

    def __init__(self, weyl: WeylGroup):
        self.W = weyl
        self.half = [tuple(Fraction(x, 2) for x in r) for r in weyl.simple]

    def mul(self, a, b):
        (v, w), (v2, w2) = a, b
        wv2 = self.W.apply(w, v2)
        out = (_mod1((v[0] + wv2[0], v[1] + wv2[1])), w)
        for g in w2:
            out = self.mul_sigma(out, g)
        return out

    def mul_sigma(self, a, g):
        v, w = a
        wg = self.W.canonical(w + (g,))
        if len(wg) > len(w):
            return (v, wg)
        # sigma_w = sigma_{wg} sigma_g, and sigma_g^2 = e(beta_g / 2)
        shift = self.W.apply(wg, self.half[g - 1])
        return (_mod1((v[0] + shift[0], v[1] + shift[1])), wg)

    def sigma(self, g):
        return ((Fraction(0), Fraction(0)), (g,))

    def sigma_inv(self, g):
        return (_mod1(self.half[g - 1]), (g,))

    def cross(self, g, x):
        return self.mul(self.mul(self.sigma(g), x), self.sigma_inv(g))

    def class_key(self, x):
        """Invariant of the torus-conjugacy class: (1+w)v modulo (1+w)L."""
        v, w = x
        m = self.W.matrix(w)
        p = ((1 + m[0][0], m[0][1]), (m[1][0], 1 + m[1][1]))
        u = (p[0][0] * v[0] + p[0][1] * v[1], p[1][0] * v[0] + p[1][1] * v[1])
        det = p[0][0] * p[1][1] - p[0][1] * p[1][0]
        if det:
            sol = (
                Fraction(p[1][1] * u[0] - p[0][1] * u[1], det),
                Fraction(-p[1][0] * u[0] + p[0][0] * u[1], det),
            )
            return (w, _mod1(sol))
        cols = [(p[0][j], p[1][j]) for j in range(2) if (p[0][j], p[1][j]) != (0, 0)]
        if not cols:
            return (w, ())
        c = cols[0]
        g0 = gcd(*c)
        prim = (c[0] // g0, c[1] // g0)
        ks = [col[0] // prim[0] if prim[0] else col[1] // prim[1] for col in cols]
        gen_k = gcd(*ks)
        t = u[0] / (gen_k * prim[0]) if prim[0] else u[1] / (gen_k * prim[1])
        return (w, _mod1((t, Fraction(0)))[:1])


# ---------------------------------------------------------------------------
# orbit records and the model


@dataclass(frozen=True)
class OrbitRecord:
    id: int
    p: tuple
    dim: int
    nature: tuple
    is_closed: bool
    is_open: bool

    @property
    def p_word(self) -> str:
        return format_word(self.p)


@dataclass(frozen=True)
class OrbitPoset:
    orbits: tuple
    covers: frozenset  # (lower, upper, label) with label 's1', 's2' or 'dotted'

    def closure(self, j: int) -> frozenset:
        below = {j}
        frontier = [j]
        while frontier:
            u = frontier.pop()
            for lo, up, _ in self.covers:
                if up == u and lo not in below:
                    below.add(lo)
                    frontier.append(lo)
        return frozenset(below)

    def solid_edges(self) -> list:
        return sorted(c for c in self.covers if c[2] != "dotted")

    def dotted_edges(self) -> list:
        return sorted(c for c in self.covers if c[2] == "dotted")


@dataclass(frozen=True)
class GeometricParameter:
    id: int
    orbit: int
    local_system: str
    character: tuple
    real_form: str = "split"

    @property
    def is_compact_form(self) -> bool:
        return self.real_form == "compact"


class OrbitModel:
    """All orbit data for one symmetric pair, in the reference numbering."""

    def __init__(self, pair: SymmetricPair, fixture_dir=None):
        self.pair = pair
        self.lam = REPRESENTATIVE_LAMBDA[pair.group_type]
        simple_coroots = simple_integral_coroots(self.lam)
        self.simple_coroots = tuple(simple_coroots)
        self.simple_roots = tuple(_root_of_coroot(c) for c in simple_coroots)
        self.W = WeylGroup(self.simple_roots)
        self.tits = _Tits(self.W)
        self.rank = len(self.simple_roots)
        self.generators = tuple(range(1, self.rank + 1))
        self.y = next(y for y in _y_candidates(self.lam) if _compact_type(self.lam, y) == pair.k_type)
        self._generate()
        self._renumber(fixture_dir)
        self._closures()

    # -- generation -------------------------------------------------------
    def nature_of(self, x, g) -> str:
        v, w = x
        beta = self.simple_roots[g - 1]
        img = self.W.apply(w, beta)
        if img == beta:
            compact = Fraction(pairing(self.simple_coroots[g - 1], v)).denominator == 1
            return COMPACT if compact else NONCOMPACT
        if img == (-beta[0], -beta[1]):
            return REAL
        return COMPLEX

    def _is_ascent(self, x, g) -> bool:
        beta = self.simple_roots[g - 1]
        img = self.W.apply(x[1], beta)
        return img[0] >= 0 and img[1] >= 0

    def _m(self, x, g):
        nat = self.nature_of(x, g)
        if nat == NONCOMPACT:
            return self.tits.mul_sigma(x, g)
        if nat == COMPLEX and self._is_ascent(x, g):
            return self.tits.cross(g, x)
        return x

    def _generate(self) -> None:
        key = self.tits.class_key
        seed = (_mod1(self.y), ())
        reps = {key(seed): seed}
        frontier = [seed]
        while frontier:  # closed orbits: Weyl conjugates of y
            x = frontier.pop()
            for g in self.generators:
                z = self.tits.cross(g, x)
                if key(z) not in reps:
                    reps[key(z)] = z
                    frontier.append(z)
        closed = list(reps)
        n_compact = sum(
            1 for c in integral_coroots(self.lam) if Fraction(pairing(c, self.y)).denominator == 1
        )
        dims = {k: n_compact for k in closed}
        mtab = {}
        frontier = list(closed)
        while frontier:
            k = frontier.pop(0)
            for g in self.generators:
                z = self._m(reps[k], g)
                kz = key(z)
                mtab[(g, k)] = kz
                if kz == k:
                    continue
                d = dims[k] + 1
                if kz in reps:
                    if dims[kz] != d:
                        raise AssertionError("orbit dimension is not well defined")
                    continue
                reps[kz], dims[kz] = z, d
                frontier.append(kz)
        self._reps, self._dims, self._mkeys = reps, dims, mtab

    def _record_for(self, k, ident, is_open) -> OrbitRecord:
        x = self._reps[k]
        return OrbitRecord(
            id=ident,
            p=x[1],
            dim=self._dims[k],
            nature=tuple(self.nature_of(x, g) for g in self.generators),
            is_closed=(x[1] == ()),
            is_open=is_open,
        )

    def _renumber(self, fixture_dir) -> None:
        keys = sorted(
            self._reps,
            key=lambda k: (self._dims[k], len(self._reps[k][1]), self._reps[k][1],
                           tuple(NATURES.index(self.nature_of(self._reps[k], g)) for g in self.generators)),
        )
        top = max(self._dims.values())
        stem = FIXTURE_STEMS.get(self.pair.key)
        self.numbering_source = "computed"
        if stem and fixtures.has_fixture(f"orbits_{stem}.tsv", fixture_dir):
            keys = self._match_fixture(keys, fixture_dir, stem)
            self.numbering_source = "fixture"
        index = {k: i for i, k in enumerate(keys)}
        self.orbits = tuple(
            self._record_for(k, i, self._dims[k] == top) for i, k in enumerate(keys)
        )
        self._m_table = {(g, index[k]): index[kz] for (g, k), kz in self._mkeys.items()}

    def _match_fixture(self, keys, fixture_dir, stem) -> list:
        rows = fixtures.read_tsv(fixtures.fixture_path(f"orbits_{stem}.tsv", fixture_dir))
        if len(rows) != len(keys):
            raise fixtures.FixtureError(
                f"orbits_{stem}.tsv lists {len(rows)} orbits, computed {len(keys)}"
            )
        by_sig = {}
        for k in keys:
            x = self._reps[k]
            sig = (x[1], tuple(self.nature_of(x, g) for g in self.generators))
            by_sig[sig] = k
        ordered = [None] * len(rows)
        for row in rows:
            try:
                ident = int(row["id"])
                p = self.W.canonical(parse_word(row["p_word"]))
                nature = tuple(row[f"nature_a{g}"] for g in self.generators)
                dim = int(row["dim"])
                closed = row["closed"].strip().lower() in ("1", "true", "yes")
            except (KeyError, ValueError) as exc:
                raise fixtures.FixtureError(f"orbits_{stem}.tsv: bad row {row}: {exc}") from exc
            k = by_sig.get((p, nature))
            if k is None or not 0 <= ident < len(rows) or ordered[ident] is not None:
                raise fixtures.FixtureError(f"orbits_{stem}.tsv: row {row} matches no computed orbit")
            if self._dims[k] != dim or (p == ()) != closed:
                raise fixtures.FixtureError(f"orbits_{stem}.tsv: dim/closed mismatch in row {row}")
            ordered[ident] = k
        return ordered

    # -- closure order ----------------------------------------------------
    def m_action(self, g: int, j: int) -> int:
        return self._m_table[(g, j)]

    def line_class(self, g: int, j: int) -> frozenset:
        """Orbits in the same P_s-saturation as orbit j (s = generator g)."""
        top = self.m_action(g, j)
        return frozenset(i for i in range(len(self.orbits)) if self.m_action(g, i) == top)

    def _closures(self) -> None:
        n = len(self.orbits)
        clos = {o.id: frozenset([o.id]) for o in self.orbits if o.is_closed}
        order = sorted(range(n), key=lambda j: self.orbits[j].dim)
        for j in order:
            if j in clos:
                continue
            for g in self.generators:
                below = [i for i in range(n) if i != j and self.m_action(g, i) == j]
                if below:
                    src = below[0]
                    clos[j] = frozenset(
                        t for i in clos[src] for t in self.line_class(g, i)
                    )
                    break
            else:
                raise AssertionError(f"orbit {j} is not reachable from a closed orbit")
        self._closure = clos

    def closure(self, j: int) -> frozenset:
        return self._closure[j]

    def poset(self) -> OrbitPoset:
        n = len(self.orbits)
        covers = set()
        for up in range(n):
            strict = self._closure[up] - {up}
            maximal = [lo for lo in strict if not any(lo in self._closure[m] for m in strict if m != lo)]
            for lo in maximal:
                labels = [g for g in self.generators if self.m_action(g, lo) == up]
                label = f"s{labels[0]}" if labels else "dotted"
                covers.add((lo, up, label))
        return OrbitPoset(self.orbits, frozenset(covers))

    def weak_order_edges(self) -> list:
        return sorted(
            (j, self.m_action(g, j), g)
            for j in range(len(self.orbits))
            for g in self.generators
            if self.m_action(g, j) != j
        )

    # -- parameters -------------------------------------------------------
    def component_group(self, j: int) -> list:
        if self.pair.group_type != "G2":
            return []
        return torus_component_group(self.orbits[j].p)

    def parameters(self) -> tuple:
        params = [GeometricParameter(o.id, o.id, "trivial", ()) for o in self.orbits]
        extra = []
        for o in self.orbits:
            divisors = self.component_group(o.id)
            chars = _characters(divisors)[1:]
            for ch in chars:
                extra.append((o.id, ch))
        for offset, (orbit, ch) in enumerate(extra):
            ident = len(params)
            form = "split"
            if self.pair.key == "g2-sl2xsl2" and offset == len(extra) - 1:
                form = "compact"
            params.append(GeometricParameter(ident, orbit, f"L{ident}", ch, form))
        return tuple(params)


def _characters(divisors: Sequence[int]) -> list:
    """Characters of a product of cyclic groups, trivial first."""
    out = [()]
    for d in divisors:
        out = [c + (k,) for c in out for k in range(d)]
    out.sort(key=lambda c: (sum(1 for x in c if x), tuple(-x for x in c)))
    return out


@lru_cache(maxsize=None)
def _model_cached(key: str, fixture_dir) -> OrbitModel:
    return OrbitModel(get_pair(key), fixture_dir)


def orbit_model(pair, fixture_dir=None) -> OrbitModel:
    return _model_cached(get_pair(pair).key, None if fixture_dir is None else str(fixture_dir))


# ---------------------------------------------------------------------------
# functional surface


def orbit_table(pair, fixture_dir=None) -> tuple:
    return orbit_model(pair, fixture_dir).orbits


def m_action(pair, s: int, orbit: int, fixture_dir=None) -> int:
    return orbit_model(pair, fixture_dir).m_action(s, orbit)


def bruhat_order(pair, fixture_dir=None) -> OrbitPoset:
    return orbit_model(pair, fixture_dir).poset()


def parameter_component_group(pair, orbit: int, fixture_dir=None) -> list:
    return orbit_model(pair, fixture_dir).component_group(orbit)


def geometric_parameters(pair, fixture_dir=None) -> tuple:
    return orbit_model(pair, fixture_dir).parameters()


def hasse_dot(poset: OrbitPoset, name: str = "orbits") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for o in poset.orbits:
        lines.append(f'  S{o.id} [label="S{o.id}"];')
    for lo, up, label in sorted(poset.covers, key=lambda c: (c[1], c[0])):
        if label == "dotted":
            lines.append(f"  S{lo} -> S{up} [style=dashed, arrowhead=none];")
        else:
            lines.append(f'  S{lo} -> S{up} [label="{label}", arrowhead=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_hasse_fixture(stem: str, fixture_dir=None) -> frozenset:
    rows = fixtures.read_tsv(fixtures.fixture_path(f"hasse_{stem}.tsv", fixture_dir))
    return frozenset((int(r["lower"]), int(r["upper"]), r["label"]) for r in rows)


def orbit_count_by_dim(pair) -> dict:
    out: dict = {}
    for o in orbit_table(pair):
        out[o.dim] = out.get(o.dim, 0) + 1
    return out


def number_of_parameters(pair) -> int:
    model = orbit_model(pair)
    return sum(prod(model.component_group(o.id)) for o in model.orbits)
