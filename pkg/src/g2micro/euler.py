"""Local Euler obstructions from Kashiwara's local index formula.

With the matrices E[i, j] = a(S_i, S_j) (row i the smaller orbit),
D = diag((-1)^dim S) and the cycle matrix CC, the local multiplicities are

    LOC = E @ D @ CC.

Restricted to one constant-sheaf parameter per orbit, CC is unitriangular
in the closure order, so E is recovered by back substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import fixtures
from .ccsolver import CCMatrix, solve_integral
from .orbitgeom import orbit_model


class InconsistentSystemError(ValueError):
    pass


def _frozen(m) -> np.ndarray:
    arr = np.array(m, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class EulerMatrix:
    values: np.ndarray = field(compare=False)
    label: str = "S"

    def __eq__(self, other) -> bool:
        return isinstance(other, EulerMatrix) and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash(self.values.tobytes())

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def a(self, lower: int, upper: int) -> int:
        return int(self.values[lower, upper])


@dataclass(frozen=True)
class LocalMultMatrix:
    values: np.ndarray = field(compare=False)
    param_orbit: tuple

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalMultMatrix) and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash(self.values.tobytes())

    def chi_loc(self, orbit: int, param: int) -> int:
        return int(self.values[orbit, param])


def _sign_diag(dims) -> np.ndarray:
    return np.diag([(-1) ** int(d) for d in dims]).astype(np.int64)


def local_multiplicities(cc: CCMatrix, euler: EulerMatrix, dims) -> LocalMultMatrix:
    if euler.size != cc.n_orbits or len(dims) != cc.n_orbits:
        raise ValueError(
            f"size mismatch: {euler.size} obstructions, {cc.n_orbits} orbits, {len(dims)} dims"
        )
    loc = euler.values @ _sign_diag(dims) @ np.asarray(cc.values)
    return LocalMultMatrix(_frozen(loc), cc.param_orbit)


def _pivot_columns(cc: CCMatrix) -> list:
    cols = []
    for S in range(cc.n_orbits):
        match = [xi for xi, o in enumerate(cc.param_orbit) if o == S]
        if not match or cc.chi(S, match[0]) != 1:
            raise InconsistentSystemError(f"no unit pivot on orbit {S}")
        cols.append(match[0])
    return cols


def _exact_inverse(m) -> list:
    n = len(m)
    a = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise InconsistentSystemError("cycle matrix is singular")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def solve_euler(chi_loc: LocalMultMatrix, cc: CCMatrix, dims, method: str = "recursive",
                label: str = "S") -> EulerMatrix:
    """The obstruction matrix E with chi_loc = E D CC; checks every column."""
    n = cc.n_orbits
    if chi_loc.values.shape != cc.values.shape or len(dims) != n:
        raise ValueError("chi_loc, cc and dims disagree in shape")
    cols = _pivot_columns(cc)
    c_t = np.asarray(cc.values)[:, cols]
    l_t = np.asarray(chi_loc.values)[:, cols]
    if method == "recursive":
        x = np.zeros((n, n), dtype=object)
        for j in sorted(range(n), key=lambda k: (dims[k], k)):
            acc = l_t[:, j].astype(object)
            for k in range(n):
                if k != j and c_t[k, j]:
                    if dims[k] >= dims[j]:
                        raise InconsistentSystemError("cycle matrix is not triangular in dim")
                    acc = acc - x[:, k] * int(c_t[k, j])
            x[:, j] = acc  # pivot entry is 1
    elif method == "direct":
        inv = _exact_inverse(c_t)
        x = np.array(
            [[sum(Fraction(int(l_t[i, k])) * inv[k][j] for k in range(n)) for j in range(n)]
             for i in range(n)],
            dtype=object,
        )
        if any(v.denominator != 1 for v in x.flat):
            raise InconsistentSystemError("non-integral obstruction")
        x = np.vectorize(int, otypes=[object])(x)
    else:
        raise ValueError(f"unknown method {method!r}")
    signs = [(-1) ** int(d) for d in dims]
    e = np.array([[int(x[i, j]) * signs[j] for j in range(n)] for i in range(n)], dtype=np.int64)
    result = EulerMatrix(_frozen(e), label)
    if not np.array_equal(local_multiplicities(cc, result, dims).values, chi_loc.values):
        raise InconsistentSystemError("local multiplicities are not of the form E D CC")
    return result


def obstruction_report(e: EulerMatrix) -> list:
    """(upper, lower, a) for each off-diagonal obstruction outside {0, 1}."""
    out = []
    for upper in range(e.size):
        for lower in range(e.size):
            val = e.a(lower, upper)
            if lower != upper and val not in (0, 1):
                out.append((upper, lower, val))
    return out


def obstruction_summary(e: EulerMatrix) -> dict:
    """Per orbit closure: where it is detected singular, or 'no obstruction detected'."""
    report = obstruction_report(e)
    out = {}
    for j in range(e.size):
        lows = [f"{e.label}{lo}" for up, lo, _ in report if up == j]
        out[j] = f"singular along {', '.join(lows)}" if lows else "no obstruction detected"
    return out


# ---------------------------------------------------------------------------
# fixtures and named cases


def load_euler_fixture(case: str, fixture_dir=None) -> EulerMatrix:
    name = f"euler_{case}.tsv"
    rows = fixtures.read_tsv(fixtures.fixture_path(name, fixture_dir))
    try:
        cells = [(int(r["row"]), int(r["col"]), int(r["value"])) for r in rows]
    except (KeyError, ValueError) as exc:
        raise fixtures.FixtureError(f"{name}: bad row") from exc
    n = max(max(i, j) for i, j, _ in cells) + 1
    m = np.zeros((n, n), dtype=np.int64)
    for i, j, v in cells:
        m[i, j] = v
    return EulerMatrix(_frozen(m), "Q" if case == "subregular" else "S")


def load_chi_loc(case: str, fixture_dir=None) -> LocalMultMatrix:
    cc, _ = case_data(case)
    name = f"chi_loc_{case}.tsv"
    rows = fixtures.read_tsv(fixtures.fixture_path(name, fixture_dir))
    m = np.zeros(cc.values.shape, dtype=np.int64)
    try:
        for r in rows:
            m[int(r["orbit_id"]), int(r["param_id"])] = int(r["value"])
    except (KeyError, ValueError, IndexError) as exc:
        raise fixtures.FixtureError(f"{name}: bad row") from exc
    return LocalMultMatrix(_frozen(m), cc.param_orbit)


def chi_loc_tsv(loc: LocalMultMatrix) -> str:
    rows = [
        [i, j, int(loc.values[i, j])]
        for i in range(loc.values.shape[0])
        for j in range(loc.values.shape[1])
        if loc.values[i, j]
    ]
    return fixtures.to_tsv(["orbit_id", "param_id", "value"], rows)


def case_data(case: str) -> tuple:
    """(cycle matrix, orbit dims) for 'integral' or 'subregular'."""
    if case == "integral":
        model = orbit_model("g2")
        return solve_integral().cc, [o.dim for o in model.orbits]
    if case == "subregular":
        from .translation import singular_cc, subregular_block

        block = subregular_block()
        return singular_cc(block), list(block.dims)
    raise ValueError(f"unknown case {case!r}")


def solve_case(case: str, fixture_dir=None, method: str = "recursive") -> EulerMatrix:
    cc, dims = case_data(case)
    loc = load_chi_loc(case, fixture_dir)
    return solve_euler(loc, cc, dims, method, "Q" if case == "subregular" else "S")


def nonintegral_euler(pair="sl3") -> EulerMatrix:
    """All obstructions equal one on closure pairs: every orbit closure here is smooth."""
    model = orbit_model(pair)
    n = len(model.orbits)
    m = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        for i in model.closure(j):
            m[i, j] = 1
    return EulerMatrix(_frozen(m), "S")
