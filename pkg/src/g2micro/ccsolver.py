"""Characteristic cycles by exhaustive search over a masked ansatz.

Unknowns are the microlocal multiplicities that survive four masks plus the
off-diagonal coefficients of the W-action on conormal classes.  The equations
say the characteristic-cycle map intertwines the coherent action with the
W-action on conormal classes.  They are bilinear.  A bounded domain search
with interval propagation enumerates every solution, so uniqueness is proved
rather than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .conormal import (
    LVector,
    forced_single_term,
    moment_image_map,
    nilpotent_poset,
    vertical_table,
)
from .grothendieck import CoherentAction, coherent_action, hc_cells, tau_invariant
from .orbitgeom import get_pair, orbit_model
from .rootsys import solve_integer_system


class SolverError(RuntimeError):
    def __init__(self, message: str, solutions=()):
        super().__init__(message)
        self.solutions = list(solutions)


class NoSolutionError(SolverError):
    pass


class NonUniqueError(SolverError):
    pass


class MaskError(SolverError):
    pass


# ---------------------------------------------------------------------------
# polynomials with integer coefficients, keyed by sorted variable tuples


def _padd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(sorted(ka + kb))
            out[k] = out.get(k, 0) + va * vb
            if out[k] == 0:
                del out[k]
    return out


def _const(c: int) -> dict:
    return {(): c} if c else {}


def _var(i: int) -> dict:
    return {(i,): 1}


def _format_poly(poly: dict, names) -> str:
    parts = []
    for mono in sorted(poly, key=lambda m: (len(m), m)):
        c = poly[mono]
        body = "*".join(names[i] for i in mono)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts).replace("+ -", "- ") + " = 0"


# ---------------------------------------------------------------------------
# bounded search


class BoundedIntegerSolver:
    """Enumerate all integer points of a box satisfying polynomial equations.

    Every variable is non-negative, so products of variable intervals are
    monotone.  Propagation tightens bounds term by term; the search branches
    on the smallest open domain.
    """

    def __init__(self, equations: list, domains: list):
        self.equations = [
            (poly.get((), 0), [(c, m) for m, c in poly.items() if m]) for poly in equations
        ]
        self.domains = [tuple(d) for d in domains]
        if any(d[0] < 0 for d in self.domains):
            raise ValueError("domains must be non-negative")
        self.nodes = 0

    @staticmethod
    def _mono_bounds(mono, lo, hi):
        a, b = 1, 1
        for v in mono:
            a *= lo[v]
            b *= hi[v]
        return a, b

    def _propagate(self, lo: list, hi: list) -> bool:
        changed = True
        while changed:
            changed = False
            for const, terms in self.equations:
                bounds = []
                tot_lo = tot_hi = const
                for c, mono in terms:
                    a, b = self._mono_bounds(mono, lo, hi)
                    t = (c * a, c * b) if c > 0 else (c * b, c * a)
                    bounds.append(t)
                    tot_lo += t[0]
                    tot_hi += t[1]
                if tot_lo > 0 or tot_hi < 0:
                    return False
                for (c, mono), (tlo, thi) in zip(terms, bounds):
                    need_lo, need_hi = -(tot_hi - thi), -(tot_lo - tlo)
                    if c > 0:
                        m_lo, m_hi = Fraction(need_lo, c), Fraction(need_hi, c)
                    else:
                        m_lo, m_hi = Fraction(need_hi, c), Fraction(need_lo, c)
                    if len(set(mono)) != len(mono):
                        continue
                    for v in mono:
                        plo, phi = 1, 1
                        for u in mono:
                            if u != v:
                                plo *= lo[u]
                                phi *= hi[u]
                        new_hi, new_lo = hi[v], lo[v]
                        if plo > 0:
                            new_hi = min(new_hi, math.floor(m_hi / plo))
                        if m_lo > 0 and phi > 0:
                            new_lo = max(new_lo, math.ceil(m_lo / phi))
                        if new_lo > new_hi:
                            return False
                        if (new_lo, new_hi) != (lo[v], hi[v]):
                            lo[v], hi[v] = new_lo, new_hi
                            changed = True
        return True

    def _check(self, values: list) -> bool:
        for const, terms in self.equations:
            total = const
            for c, mono in terms:
                p = c
                for v in mono:
                    p *= values[v]
                total += p
            if total:
                return False
        return True

    def solve(self) -> list:
        out: list = []
        lo = [d[0] for d in self.domains]
        hi = [d[1] for d in self.domains]
        self._search(lo, hi, out)
        return out

    def _search(self, lo, hi, out) -> None:
        self.nodes += 1
        if not self._propagate(lo, hi):
            return
        open_vars = [v for v in range(len(lo)) if lo[v] < hi[v]]
        if not open_vars:
            if self._check(lo):
                out.append(tuple(lo))
            return
        v = min(open_vars, key=lambda u: (hi[u] - lo[u], u))
        for val in range(lo[v], hi[v] + 1):
            lo2, hi2 = list(lo), list(hi)
            lo2[v] = hi2[v] = val
            self._search(lo2, hi2, out)


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class CCMatrix:
    """chi[S, xi]: multiplicity of [T_S] in the characteristic cycle of P(xi)."""

    pair_key: str
    values: np.ndarray = field(compare=False)
    param_orbit: tuple

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CCMatrix)
            and self.pair_key == other.pair_key
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.pair_key, self.values.tobytes()))

    @property
    def n_orbits(self) -> int:
        return self.values.shape[0]

    @property
    def n_params(self) -> int:
        return self.values.shape[1]

    def chi(self, orbit: int, param: int) -> int:
        return int(self.values[orbit, param])

    def cycle(self, param: int) -> LVector:
        return LVector.from_array(self.values[:, param])


@dataclass(frozen=True)
class WActionOnL:
    """W-action on conormal classes, column convention like the coherent action."""

    pair_key: str
    matrices: dict = field(compare=False)
    coefficients: dict = field(default_factory=dict)  # (g, S, S') -> n_{S,S'}

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def apply(self, g: int, v: LVector) -> LVector:
        return LVector.from_array(self.matrices[g] @ v.array())

    def n(self, g: int, source: int, target: int) -> int:
        return int(self.matrices[g][target, source])


def _frozen(m) -> np.ndarray:
    arr = np.array(m, dtype=np.int64)
    arr.setflags(write=False)
    return arr


# ---------------------------------------------------------------------------
# assembly


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str  # "chi" or "n"
    key: tuple  # (S, xi) for chi, (g, S, S') for n


@dataclass
class ConstraintSystem:
    pair_key: str
    n_orbits: int
    param_orbit: tuple
    variables: list
    cc_template: list  # [S][xi] -> int or ("var", index)
    w_templates: dict  # g -> [S'][S] -> int or ("var", index)
    equations: list
    masks: dict  # mask name -> list of (S, xi) removed by it
    lemma_variable: int | None = None

    def index(self, name: str) -> int:
        for i, v in enumerate(self.variables):
            if v.name == name:
                return i
        raise KeyError(name)

    @property
    def chi_unknowns(self) -> list:
        return [v for v in self.variables if v.kind == "chi"]

    @property
    def n_unknowns(self) -> list:
        return [v for v in self.variables if v.kind == "n"]

    def describe_equations(self) -> list:
        names = [v.name for v in self.variables]
        return [_format_poly(p, names) for p in self.equations]


def _entry_poly(entry) -> dict:
    if isinstance(entry, tuple):
        return _var(entry[1])
    return _const(entry)


LEMMA_TARGET = (2, 5)  # chi_{S2}(P5), settled by the lattice-complement argument


def assemble(pair="g2", coherent: CoherentAction | None = None, images: dict | None = None,
             cells=None) -> ConstraintSystem:
    pair = get_pair(pair)
    if pair.group_type != "G2" or pair.k_type != "SL2xSL2":
        raise ValueError("the masked ansatz is built for the integral (G2, SL2xSL2) pair")
    model = orbit_model(pair)
    coherent = coherent or coherent_action(pair.key)
    images = images or moment_image_map()
    cells = cells or hc_cells(coherent)
    params = model.parameters()
    n_orb, n_par = len(model.orbits), len(params)
    vert = vertical_table(pair, coherent)
    poset = nilpotent_poset()
    forced = forced_single_term(pair, coherent)

    av_of_cell = {}
    for k, block in enumerate(cells.blocks):
        avs = {images[params[i].orbit] for i in block if i in forced}
        if len(avs) != 1:
            raise MaskError(f"cell {sorted(block)} has no well-defined associated variety")
        av_of_cell[k] = avs.pop()

    variables: list = []
    masks = {"support": [], "tau-vertical": [], "special-AV": [], "cell-AV": []}
    cc = [[0] * n_par for _ in range(n_orb)]
    for p in params:
        cc[p.orbit][p.id] = 1
        av = av_of_cell[cells.index_of(p.id)]
        tau = tau_invariant(coherent, p.id)
        for S in range(n_orb):
            if S == p.orbit:
                continue
            if S not in model.closure(p.orbit):
                masks["support"].append((S, p.id))
            elif not all(S in vert[g] for g in tau):
                masks["tau-vertical"].append((S, p.id))
            elif images[S] in poset.special and images[S] != av:
                masks["special-AV"].append((S, p.id))
            elif not poset.leq(images[S], av):
                masks["cell-AV"].append((S, p.id))
            else:
                cc[S][p.id] = ("var", len(variables))
                variables.append(Variable(f"chi[S{S},P{p.id}]", "chi", (S, p.id)))

    w_templates = {}
    for g in model.generators:
        w = [[0] * n_orb for _ in range(n_orb)]
        for S in range(n_orb):
            if S in vert[g]:
                w[S][S] = -1
                continue
            w[S][S] = 1
            top = model.m_action(g, S)
            for T in sorted(model.closure(top)):
                if T != S and T in vert[g] and poset.leq(images[T], images[S]):
                    w[T][S] = ("var", len(variables))
                    variables.append(Variable(f"n[S{S},S{T}]", "n", (g, S, T)))
        w_templates[g] = w

    equations = []
    seen = set()
    for g in model.generators:
        mat = coherent.matrix(g)
        for xi in range(n_par):
            for S in range(n_orb):
                lhs: dict = {}
                for xj in range(n_par):
                    if mat[xj, xi]:
                        lhs = _padd(lhs, _pmul(_const(int(mat[xj, xi])), _entry_poly(cc[S][xj])))
                rhs: dict = {}
                for T in range(n_orb):
                    rhs = _padd(rhs, _pmul(_entry_poly(w_templates[g][S][T]), _entry_poly(cc[T][xi])))
                poly = _padd(lhs, rhs, -1)
                if not poly:
                    continue
                key = tuple(sorted(poly.items()))
                if key in seen:
                    continue
                seen.add(key)
                equations.append(poly)

    lemma = next(
        (i for i, v in enumerate(variables) if v.kind == "chi" and v.key == LEMMA_TARGET), None
    )
    return ConstraintSystem(
        pair.key, n_orb, tuple(p.orbit for p in params), variables, cc, w_templates,
        equations, masks, lemma,
    )


# ---------------------------------------------------------------------------
# solving


@dataclass(frozen=True)
class CCSolution:
    cc: CCMatrix
    waction: WActionOnL
    assignment: dict = field(compare=False)
    bound: int = 4
    active_constraints: tuple = ()
    solutions_without_lemma: int = 0
    search_nodes: int = 0


def enumerate_solutions(system: ConstraintSystem, bound: int = 4, use_lemma: bool = True) -> list:
    """Every assignment (dict name -> value) within ``bound`` meeting all equations."""
    domains = [(0, bound)] * len(system.variables)
    if use_lemma and system.lemma_variable is not None:
        allowed = [c for c in range(0, min(bound, 2) + 1) if complement_check(c)]
        if not allowed:
            return []
        domains = list(domains)
        domains[system.lemma_variable] = (min(allowed), max(allowed))
    solver = BoundedIntegerSolver(system.equations, domains)
    raw = solver.solve()
    names = [v.name for v in system.variables]
    out = [dict(zip(names, vals)) for vals in raw]
    if use_lemma and system.lemma_variable is not None:
        name = names[system.lemma_variable]
        out = [a for a in out if complement_check(a[name])]
    enumerate_solutions.last_nodes = solver.nodes
    return out


enumerate_solutions.last_nodes = 0


def materialize(system: ConstraintSystem, assignment: dict) -> tuple:
    names = [v.name for v in system.variables]

    def value(entry):
        return assignment[names[entry[1]]] if isinstance(entry, tuple) else entry

    cc = _frozen([[value(e) for e in row] for row in system.cc_template])
    mats, coeffs = {}, {}
    for g, tmpl in system.w_templates.items():
        mats[g] = _frozen([[value(e) for e in row] for row in tmpl])
    for v in system.variables:
        if v.kind == "n":
            coeffs[v.key] = assignment[v.name]
    return (CCMatrix(system.pair_key, cc, system.param_orbit),
            WActionOnL(system.pair_key, mats, coeffs))


def solve(system: ConstraintSystem, bound: int = 4, use_lemma: bool = True) -> CCSolution:
    """The unique solution within ``bound``; raises SolverError otherwise."""
    sols = enumerate_solutions(system, bound, use_lemma)
    nodes = enumerate_solutions.last_nodes
    if not sols:
        raise NoSolutionError(f"no solution with every unknown <= {bound}")
    if len(sols) > 1:
        raise NonUniqueError(f"{len(sols)} solutions with every unknown <= {bound}", sols)
    raw = enumerate_solutions(system, bound, use_lemma=False) if system.lemma_variable is not None else sols
    active = ["support", "tau-vertical", "special-AV", "cell-AV", "equivariance"]
    if use_lemma and system.lemma_variable is not None and len(raw) > 1:
        active.append("lattice-complement")
    cc, wact = materialize(system, sols[0])
    return CCSolution(cc, wact, sols[0], bound, tuple(active), len(raw), nodes)


@lru_cache(maxsize=None)
def solve_integral(bound: int = 4) -> CCSolution:
    return solve(assemble("g2"), bound)


# ---------------------------------------------------------------------------
# the lattice-complement check


def _sigma_matrices(c: int) -> dict:
    # columns are images of q2, q4, q5 in that basis
    s1 = [[1, 0, 0], [1, -1, 2 - c], [0, 0, 1]]
    s2 = [[-1, 1 + c, 0], [0, 1, 0], [0, 1, -1]]
    return {1: s1, 2: s2}


def _apply3(m, x):
    return tuple(sum(m[i][j] * x[j] for j in range(3)) for i in range(3))


def complement_check(c: int) -> bool:
    """Whether the invariant line of the rank-3 sigma-module has a W-stable complement.

    The line is spanned by v = (c - 2) q2 + q5.  Candidate complements are
    C(n, m) = <q2 + q5 + n v, q4 + m v>, each of index 3 - c.  For x in the
    span, x5 - x2 is (3 - c)(A n + B m) where x = A g1 + B g2, so membership
    of sigma(g) in C(n, m) is affine-linear in (n, m).
    """
    c = int(c)
    if not 0 <= c < 3:
        raise ValueError("the complement family needs 0 <= c <= 2")
    idx = Fraction(3 - c)
    v = (c - 2, 0, 1)
    sig = _sigma_matrices(c)

    def coords(x):
        grade = Fraction(x[2] - x[0]) / idx
        return Fraction(x[2]) - grade, Fraction(x[1]), grade  # A, B, G

    rows, rhs = [], []
    for m in sig.values():
        for base, which in (((1, 0, 1), 0), ((0, 1, 0), 1)):
            y = _apply3(m, base)
            # sigma(base + k v) = y + k v since v is invariant
            a, b, grade = coords(y)
            if a.denominator != 1 or b.denominator != 1:
                return False
            # grade + k - a n - b m = 0 with k = n or m
            coef_n = -a + (1 if which == 0 else 0)
            coef_m = -b + (1 if which == 1 else 0)
            if grade.denominator != 1:
                return False
            rows.append([int(coef_n), int(coef_m)])
            rhs.append(int(-grade))
    for m in sig.values():
        assert _apply3(m, v) in (v, tuple(-x for x in v))
    return solve_integer_system(rows, rhs) is not None


def complement_witness(c: int):
    """An (n, m) for which C(n, m) is stable, or None."""
    if not complement_check(c):
        return None
    idx = Fraction(3 - c)
    rows, rhs = [], []
    for m in _sigma_matrices(c).values():
        for base, which in (((1, 0, 1), 0), ((0, 1, 0), 1)):
            y = _apply3(m, base)
            grade = Fraction(y[2] - y[0]) / idx
            a, b = Fraction(y[2]) - grade, Fraction(y[1])
            rows.append([int(-a + (which == 0)), int(-b + (which == 1))])
            rhs.append(int(-grade))
    return solve_integer_system(rows, rhs)


# ---------------------------------------------------------------------------
# non-integral pairs and the equivariance gate


def cc_nonintegral(pair) -> CCMatrix:
    pair = get_pair(pair)
    if pair.group_type == "G2" and pair.k_type == "SL2xSL2":
        raise ValueError("the integral pair needs the full solve")
    model = orbit_model(pair)
    params = model.parameters()
    vals = np.zeros((len(model.orbits), len(params)), dtype=np.int64)
    for p in params:
        vals[p.orbit, p.id] = 1
    return CCMatrix(pair.key, _frozen(vals), tuple(p.orbit for p in params))


def waction_nonintegral(pair) -> WActionOnL:
    """With an identity cycle matrix, equivariance forces W_s = M_s."""
    pair = get_pair(pair)
    coh = coherent_action(pair.key)
    return WActionOnL(pair.key, {g: _frozen(m) for g, m in coh.matrices.items()})


def verify_equivariance(cc: CCMatrix, coherent: CoherentAction, waction: WActionOnL) -> bool:
    c = np.asarray(cc.values)
    for g, m in coherent.matrices.items():
        if g not in waction.matrices:
            return False
        if not np.array_equal(c @ m, waction.matrices[g] @ c):
            return False
    return True
