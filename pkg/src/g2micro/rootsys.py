"""Root datum of G2, Weyl groups of its subsystems, and integer lattice helpers.

Every vector lives in the simple-root basis (alpha1 long, alpha2 short).
Coroots are stored in the simple-coroot basis.  Coordinates may be
``int`` or ``fractions.Fraction``; nothing here uses floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

# CARTAN[i][j] = <coroot_i, root_j>; alpha1 long, alpha2 short.
CARTAN = ((2, -1), (-3, 2))

Vec = tuple  # 2-tuple of int/Fraction


def pairing(coroot: Sequence, v: Sequence):
    """<coroot, v> for a coroot in the coroot basis and v in the root basis."""
    return sum(coroot[i] * v[j] * CARTAN[i][j] for i in range(2) for j in range(2))


def _norm2(root: Sequence) -> Fraction:
    # invariant form normalised so that |alpha1|^2 = 3, |alpha2|^2 = 1
    a, b = root
    return Fraction(3 * a * a - 3 * a * b + b * b)


def coroot_of(root: Sequence) -> Vec:
    """The coroot attached to ``root``, in the simple-coroot basis."""
    n = _norm2(root)
    a, b = root
    c1, c2 = Fraction(3 * a) / n, Fraction(b) / n
    assert c1.denominator == 1 and c2.denominator == 1
    return (int(c1), int(c2))


def reflect(root: Sequence, coroot: Sequence, v: Sequence) -> Vec:
    k = pairing(coroot, v)
    return (v[0] - k * root[0], v[1] - k * root[1])


def is_positive(v: Sequence) -> bool:
    return all(x >= 0 for x in v) and any(x > 0 for x in v)


@dataclass(frozen=True)
class RootSystem:
    simple_roots: tuple
    positive_roots: tuple
    coroots: dict = field(compare=False)
    rho: Vec

    @property
    def roots(self) -> tuple:
        return self.positive_roots + tuple((-a, -b) for a, b in self.positive_roots)

    def positive_coroots(self) -> tuple:
        return tuple(self.coroots[r] for r in self.positive_roots)

    def cartan_matrix(self) -> tuple:
        return tuple(
            tuple(pairing(self.coroots[ai], aj) for aj in self.simple_roots)
            for ai in self.simple_roots
        )


@lru_cache(maxsize=None)
def g2() -> RootSystem:
    simple = ((1, 0), (0, 1))
    # close the simple roots under the two reflections
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        r = frontier.pop()
        for s in simple:
            img = reflect(s, coroot_of(s), r)
            if img not in roots:
                roots.add(img)
                frontier.append(img)
    positive = tuple(sorted(r for r in roots if is_positive(r)))
    coroots = {}
    for r in roots:
        coroots[r] = coroot_of(r)
    twice_rho = (sum(r[0] for r in positive), sum(r[1] for r in positive))
    rho = (twice_rho[0] // 2, twice_rho[1] // 2)
    return RootSystem(simple, positive, coroots, rho)


# ---------------------------------------------------------------------------
# Weyl words

_WORD_RE = re.compile(r"s(\d)")


def parse_word(text: str) -> tuple:
    """'s2s1s2' -> (2, 1, 2); 'e', '1' or '' -> ()."""
    text = text.strip()
    if text in ("", "e", "1", "id"):
        return ()
    letters = _WORD_RE.findall(text)
    if "".join(f"s{x}" for x in letters) != text.replace(" ", "").replace("*", ""):
        raise ValueError(f"not a Weyl word: {text!r}")
    return tuple(int(x) for x in letters)


def format_word(word: Sequence[int]) -> str:
    return "".join(f"s{i}" for i in word) if word else "e"


@dataclass(frozen=True)
class WeylWord:
    """A word in the simple reflections, read as a product applied right to left."""

    word: tuple

    @classmethod
    def parse(cls, text: str) -> "WeylWord":
        return cls(parse_word(text))

    @property
    def canonical_form(self) -> "WeylWord":
        return weyl_canonical(self)

    def __str__(self) -> str:
        return format_word(self.word)


Matrix2 = tuple  # ((a, b), (c, d)) acting on column vectors


def _matmul(a: Matrix2, b: Matrix2) -> Matrix2:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def _matvec(m: Matrix2, v: Sequence) -> Vec:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


_IDENTITY = ((1, 0), (0, 1))


def _reflection_matrix(root: Sequence, coroot: Sequence) -> Matrix2:
    cols = [reflect(root, coroot, e) for e in ((1, 0), (0, 1))]
    return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))


def _word_key(word: tuple) -> tuple:
    # ShortLex with s1 < s2, compared in application order (rightmost letter first)
    return (len(word), tuple(reversed(word)))


class WeylGroup:
    """Weyl group generated by reflections in a set of simple roots of G2.

    ``simple`` lists root vectors in the root basis; generator i (1-based)
    is the reflection in ``simple[i-1]``.
    """

    def __init__(self, simple: Sequence[Vec]):
        self.simple = tuple(tuple(r) for r in simple)
        self.simple_coroots = tuple(coroot_of(r) for r in self.simple)
        self.generators = tuple(
            _reflection_matrix(r, c) for r, c in zip(self.simple, self.simple_coroots)
        )
        self._by_matrix: dict = {}
        self._enumerate()

    @property
    def rank(self) -> int:
        return len(self.simple)

    def _enumerate(self) -> None:
        if not self.simple:
            self._by_matrix[_IDENTITY] = ()
            return
        length = 0
        frontier = [()]
        self._by_matrix[_IDENTITY] = ()
        while frontier:
            length += 1
            found = []
            for word in sorted(
                (tuple([g]) + w for w in frontier for g in range(1, self.rank + 1)),
                key=_word_key,
            ):
                m = self.matrix(word)
                if m not in self._by_matrix:
                    self._by_matrix[m] = word
                    found.append(word)
            frontier = found
        self.elements = tuple(sorted(self._by_matrix.values(), key=_word_key))

    @property
    def order(self) -> int:
        return len(self._by_matrix)

    def matrix(self, word: Sequence[int]) -> Matrix2:
        m = _IDENTITY
        for g in word:
            m = _matmul(m, self.generators[g - 1])
        return m

    def canonical(self, word: Sequence[int]) -> tuple:
        return self._by_matrix[self.matrix(word)]

    def word_of(self, matrix: Matrix2) -> tuple:
        return self._by_matrix[matrix]

    def length(self, word: Sequence[int]) -> int:
        return len(self.canonical(word))

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> tuple:
        return self.canonical(tuple(u) + tuple(v))

    def inverse(self, word: Sequence[int]) -> tuple:
        return self.canonical(tuple(reversed(word)))

    def apply(self, word: Sequence[int], v: Sequence) -> Vec:
        return _matvec(self.matrix(word), v)

    def longest(self) -> tuple:
        return self.elements[-1]

    def coxeter_order(self, i: int, j: int) -> int:
        m, k = self.matrix((i, j)), 1
        while m != _IDENTITY:
            m, k = _matmul(m, self.matrix((i, j))), k + 1
        return k

    def is_involution(self, word: Sequence[int]) -> bool:
        m = self.matrix(word)
        return _matmul(m, m) == _IDENTITY


@lru_cache(maxsize=None)
def g2_weyl() -> WeylGroup:
    return WeylGroup(g2().simple_roots)


def _as_word(w) -> tuple:
    if isinstance(w, WeylWord):
        return w.word
    if isinstance(w, str):
        return parse_word(w)
    return tuple(w)


def weyl_apply(w, v: Sequence) -> Vec:
    """Apply a Weyl word to a root-basis vector, rightmost reflection first."""
    out = tuple(v)
    for g in reversed(_as_word(w)):
        r = g2().simple_roots[g - 1]
        out = reflect(r, coroot_of(r), out)
    return out


def weyl_canonical(w) -> WeylWord:
    return WeylWord(g2_weyl().canonical(_as_word(w)))


# ---------------------------------------------------------------------------
# Smith normal form


def smith_decomposition(matrix) -> tuple:
    """Return (U, D, V) with U @ M @ V = D diagonal, U and V unimodular.

    All three are lists of lists of Python ints; the diagonal of D is a
    divisibility chain of non-negative integers.
    """
    a = [[int(x) for x in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for m in (a, v):
            for row in m:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for m in (a, v):
            for row in m:
                row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    add_row(t, i, -q)
                dirty |= a[i][t] != 0
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    add_col(t, j, -q)
                dirty |= a[t][j] != 0
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p]
            if bad:
                add_row(bad[0][0], t, 1)
                continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def smith_normal_form(matrix) -> list:
    """Elementary divisors d1 | d2 | ... (zeros mark rank deficiency)."""
    _, d, _ = smith_decomposition(matrix)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def solve_integer_system(a, b) -> tuple | None:
    """One integer solution x of A x = b, or None when none exists."""
    u, d, v = smith_decomposition(a)
    rows, cols = len(d), len(d[0])
    ub = [sum(u[i][k] * int(b[k]) for k in range(rows)) for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
    return tuple(sum(v[i][k] * y[k] for k in range(cols)) for i in range(cols))


def torus_component_group(w) -> list:
    """Torsion of Z^2 / (w - 1) Z^2 as a list of elementary divisors > 1."""
    m = g2_weyl().matrix(_as_word(w))
    shifted = [[m[i][j] - (i == j) for j in range(2)] for i in range(2)]
    return [d for d in smith_normal_form(shifted) if d > 1]


def even_positive_coroots() -> list:
    """Positive coroots whose pairing with rho is even."""
    rs = g2()
    return sorted(c for c in rs.positive_coroots() if pairing(c, rs.rho) % 2 == 0)


def all_words(max_len: int, rank: int = 2) -> Iterable[tuple]:
    for n in range(max_len + 1):
        yield from product(range(1, rank + 1), repeat=n)
