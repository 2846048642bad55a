"""Grothendieck group of equivariant perverse sheaves with its coherent W-action.

Matrices use the column convention: column ``j`` of ``M_s`` is ``s . P_j``
written in the basis of irreducibles, so acting on a coefficient vector is
an ordinary matrix-vector product.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import fixtures
from .orbitgeom import FIXTURE_STEMS, get_pair, orbit_model
from .rootsys import parse_word


@dataclass(frozen=True)
class IntVector:
    """Dense integer vector over a fixed basis labelled ``prefix + index``."""

    coeffs: tuple
    prefix: str = "P"

    @classmethod
    def basis(cls, n: int, i: int, prefix: str | None = None) -> "IntVector":
        vals = [0] * n
        vals[i] = 1
        return cls(tuple(vals), prefix or cls.prefix)

    @classmethod
    def from_array(cls, arr, prefix: str | None = None) -> "IntVector":
        return cls(tuple(int(x) for x in arr), prefix or cls.prefix)

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def support(self) -> dict:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def __add__(self, other):
        return type(self)(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.prefix)

    def __sub__(self, other):
        return type(self)(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.prefix)

    def __neg__(self):
        return type(self)(tuple(-a for a in self.coeffs), self.prefix)

    def __mul__(self, k: int):
        return type(self)(tuple(k * a for a in self.coeffs), self.prefix)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_combination(self.support(), lambda i: f"{self.prefix}{i}")


def format_combination(terms: dict, name) -> str:
    parts = []
    for i in sorted(terms):
        c = terms[i]
        mag = "" if abs(c) == 1 else f"{abs(c)}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{mag}{name(i)}"))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class KVector(IntVector):
    """Element of the Grothendieck group in the basis of irreducibles P(xi)."""


@dataclass(frozen=True)
class CoherentAction:
    pair_key: str
    size: int
    matrices: dict  # generator (1-based int) -> np.ndarray, read-only
    coxeter: dict  # (i, j) -> order of s_i s_j
    source: str

    @property
    def generators(self) -> tuple:
        return tuple(sorted(self.matrices))

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def apply(self, g: int, v: KVector) -> KVector:
        return KVector.from_array(self.matrices[g] @ v.array())


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=np.int64)
    m.setflags(write=False)
    return m


def validate_action(matrices: dict, coxeter: dict, label: str) -> None:
    """Raise FixtureError unless each matrix is an involution and braids hold."""
    for g, m in matrices.items():
        n = m.shape[0]
        if not np.array_equal(m @ m, np.eye(n, dtype=np.int64)):
            raise fixtures.FixtureError(f"{label}: s{g} does not square to the identity")
        diag = np.diag(m)
        if not np.all(np.abs(diag) == 1):
            raise fixtures.FixtureError(f"{label}: s{g} has a diagonal entry other than +-1")
    for (i, j), order in coxeter.items():
        prod = matrices[i] @ matrices[j]
        n = prod.shape[0]
        if not np.array_equal(np.linalg.matrix_power(prod, order), np.eye(n, dtype=np.int64)):
            raise fixtures.FixtureError(f"{label}: (s{i} s{j})^{order} is not the identity")


def _coxeter_orders(model) -> dict:
    gens = model.generators
    return {(i, j): model.W.coxeter_order(i, j) for i in gens for j in gens if i < j}


def parse_coherent_rows(rows: list, size: int, generators, label: str) -> dict:
    mats = {g: np.zeros((size, size), dtype=np.int64) for g in generators}
    seen = defaultdict(set)
    for row in rows:
        try:
            word = parse_word(row["generator"])
            src, tgt, coeff = int(row["source_id"]), int(row["target_id"]), int(row["coeff"])
        except (KeyError, ValueError) as exc:
            raise fixtures.FixtureError(f"{label}: bad row {row}") from exc
        if len(word) != 1 or word[0] not in mats:
            raise fixtures.FixtureError(f"{label}: unknown generator {row['generator']!r}")
        if not (0 <= src < size and 0 <= tgt < size):
            raise fixtures.FixtureError(f"{label}: parameter out of range in {row}")
        mats[word[0]][tgt, src] += coeff
        seen[word[0]].add(src)
    for g in generators:
        missing = sorted(set(range(size)) - seen[g])
        if missing:
            raise fixtures.FixtureError(f"{label}: no rows for s{g} on parameters {missing}")
    return mats


def generic_action_matrices(model) -> dict:
    """s.P = -P when m(s) fixes the orbit, else P + P_{m(s)S}.

    Used for the pairs whose parameters are exactly their orbits and whose
    coherent action is not tabulated.
    """
    n = len(model.orbits)
    mats = {}
    for g in model.generators:
        m = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            up = model.m_action(g, j)
            if up == j:
                m[j, j] = -1
            else:
                m[j, j] = 1
                m[up, j] = 1
        mats[g] = m
    return mats


def load_coherent_table(pair, fixture_dir=None) -> CoherentAction:
    """Coherent continuation matrices for ``pair``, validated on load."""
    pair = get_pair(pair)
    model = orbit_model(pair, fixture_dir)
    size = len(model.parameters())
    coxeter = _coxeter_orders(model)
    stem = FIXTURE_STEMS.get(pair.key)
    name = f"coherent_{stem}.tsv" if stem else None
    if name and fixtures.has_fixture(name, fixture_dir):
        rows = fixtures.read_tsv(fixtures.fixture_path(name, fixture_dir))
        mats = parse_coherent_rows(rows, size, model.generators, name)
        source = name
    else:
        if size != len(model.orbits):
            raise fixtures.FixtureError(f"no coherent table for {pair} and it has extra local systems")
        mats = generic_action_matrices(model)
        source = "m-action rule"
    validate_action(mats, coxeter, source)
    return CoherentAction(pair.key, size, {g: _frozen(m) for g, m in mats.items()}, coxeter, source)


@lru_cache(maxsize=None)
def coherent_action(pair_key: str = "g2-sl2xsl2") -> CoherentAction:
    return load_coherent_table(pair_key)


def coherent_apply(action: CoherentAction, w, v: KVector) -> KVector:
    """Apply the word ``w`` to ``v``, rightmost letter first."""
    word = parse_word(w) if isinstance(w, str) else tuple(getattr(w, "word", w))
    arr = v.array()
    for g in reversed(word):
        arr = action.matrices[g] @ arr
    return KVector.from_array(arr)


def tau_invariant(action: CoherentAction, param: int) -> frozenset:
    """Generators s with s . P = -P (returned as 1-based indices)."""
    return frozenset(
        g for g, m in action.matrices.items()
        if m[param, param] == -1 and np.count_nonzero(m[:, param]) == 1
    )


@dataclass(frozen=True)
class CellPartition:
    blocks: tuple  # tuple of frozensets, ordered by smallest member

    def cell_of(self, param: int) -> frozenset:
        for b in self.blocks:
            if param in b:
                return b
        raise KeyError(param)

    def index_of(self, param: int) -> int:
        return next(i for i, b in enumerate(self.blocks) if param in b)


def hc_cells(action: CoherentAction) -> CellPartition:
    """Strongly connected components of 'P occurs in s . P'' over all s."""
    n = action.size
    adj = np.zeros((n, n), dtype=np.int8)
    for m in action.matrices.values():
        adj |= (m.T != 0).astype(np.int8)  # edge src -> tgt
    ncomp, labels = connected_components(csr_matrix(adj), directed=True, connection="strong")
    groups = defaultdict(set)
    for i, lab in enumerate(labels):
        groups[lab].add(i)
    blocks = sorted((frozenset(g) for g in groups.values()), key=min)
    return CellPartition(tuple(blocks))
