"""The twelve acceptance criteria, each an exact comparison against reference data.

Reference values below are transcribed independently of the fixture files so
that a corrupted fixture cannot pass by agreeing with itself.
"""

from __future__ import annotations

import io
import json
from contextlib import redirect_stdout
from dataclasses import dataclass

import numpy as np

from . import ccsolver, conormal, euler, grothendieck, orbitgeom, packets, translation
from .rootsys import g2_weyl

C, N, R, X = "compact_imaginary", "noncompact_imaginary", "real", "complex"

REF_ORBITS = [
    ("e", N, N), ("e", C, N), ("e", N, C), ("s2", X, R), ("s1", R, X),
    ("s2s1s2", X, X), ("s1s2s1", X, X), ("s2s1s2s1s2", N, X), ("s1s2s1s2s1", X, N),
    ("s2s1s2s1s2s1", R, R),
]
REF_HASSE_G2 = {
    (0, 3, "s2"), (1, 3, "s2"), (0, 4, "s1"), (2, 4, "s1"), (4, 5, "s2"), (3, 6, "s1"),
    (6, 7, "s2"), (5, 8, "s1"), (7, 9, "s1"), (8, 9, "s2"),
    (3, 5, "dotted"), (4, 6, "dotted"), (5, 7, "dotted"), (6, 8, "dotted"),
}
REF_HASSE_SL3 = {(0, 3, "s1"), (2, 3, "s1"), (0, 4, "s2"), (1, 4, "s2"), (3, 5, "s2"), (4, 5, "s1")}
REF_TAU = {1: {1, 4, 6, 8, 9, 10}, 2: {2, 3, 5, 7, 9, 11}}
REF_CELLS = [{0}, {1, 3, 6, 7, 10}, {2, 4, 5, 8, 11}, {9}]
REF_IMAGES = {0: "O6", 1: "O51", 3: "O51", 2: "O52", 4: "O52", 5: "O52",
              6: "O4", 7: "O4", 8: "O3", 9: "O0"}
REF_COUNTS = {"O6": 1, "O51": 2, "O52": 3, "O4": 2, "O3": 1, "O0": 1}
# characteristic cycles: parameter -> {orbit: multiplicity}
REF_CC = {
    0: {0: 1}, 1: {1: 1}, 2: {2: 1}, 3: {3: 1}, 4: {4: 1}, 9: {9: 1}, 12: {9: 1},
    5: {5: 1}, 6: {1: 2, 6: 1}, 7: {3: 1, 7: 1}, 8: {4: 1, 6: 1, 8: 1},
    10: {1: 1, 6: 1, 8: 1, 9: 1}, 11: {2: 1, 7: 1, 9: 1},
}
# W-action on conormal classes: (generator, orbit) -> image
REF_WACT = {
    (1, 0): {0: 1, 4: 1}, (2, 0): {0: 1, 3: 1},
    (1, 1): {1: -1}, (2, 1): {1: 1, 3: 1},
    (1, 2): {2: 1, 4: 1}, (2, 2): {2: -1},
    (1, 3): {1: 3, 3: 1, 6: 1}, (2, 3): {3: -1},
    (1, 4): {4: -1}, (2, 4): {2: 1, 4: 1, 5: 1},
    (1, 5): {4: 2, 5: 1, 6: 1, 8: 1}, (2, 5): {5: -1},
    (1, 6): {6: -1}, (2, 6): {6: 1, 7: 1},
    (1, 7): {6: 1, 7: 1, 8: 1, 9: 2}, (2, 7): {7: -1},
    (1, 8): {8: -1}, (2, 8): {8: 1, 9: 2},
    (1, 9): {9: -1}, (2, 9): {9: -1},
}
REF_PACKETS = {
    0: {0: 1}, 1: {10: 1, 6: 2, 1: 1}, 2: {11: 1, 2: 1}, 3: {7: 1, 3: 1}, 4: {8: 1, 4: 1},
    5: {5: 1}, 6: {10: 1, 8: -1, 6: 1}, 7: {11: -1, 7: 1}, 8: {10: -1, 8: 1},
    9: {9: 1, 10: 1, 11: 1, 12: -1},
}
REF_SINGULAR_CC = {2: {0: 2, 2: 1}, 3: {1: 1, 2: 1, 3: 1}, 5: {0: 1, 2: 1, 3: 1, 4: 1},
                   0: {0: 1}, 1: {1: 1}, 4: {4: 1}}
REF_PSI_A = {3: 1, 1: 1}
REF_PSI_B = {5: 1, 2: 2, 0: 1}
REF_EULER_INTEGRAL = [
    [1, 0, 0, 1, 1, 1, 1, 0, 0, 1],
    [0, 1, 0, 1, 0, 1, -1, 0, 2, 1],
    [0, 0, 1, 0, 1, 1, 1, 2, 0, 1],
    [0, 0, 0, 1, 0, 1, 1, 0, 1, 1],
    [0, 0, 0, 0, 1, 1, 1, 1, 0, 1],
    [0, 0, 0, 0, 0, 1, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
]
REF_EULER_SUBREGULAR = [
    [1, 0, 1, 1, 1],
    [0, 1, -1, 1, 1],
    [0, 0, 1, 2, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]


@dataclass(frozen=True)
class Outcome:
    number: int
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail and not self.passed else ""
        return f"[{status}] {self.number:2d}. {self.name}{tail}"


def _dense(d: dict, n: int) -> list:
    return [d.get(i, 0) for i in range(n)]


def _run_cli(argv) -> tuple:
    from . import cli

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


# ---------------------------------------------------------------------------


def criterion_orbit_table() -> tuple:
    code, out = _run_cli(["orbits", "--pair", "g2", "--format", "json"])
    rows = json.loads(out)["orbits"] if code == 0 else []
    got = [(r["p_word"], r["nature"]["a1"], r["nature"]["a2"]) for r in rows]
    return got == REF_ORBITS, f"got {got}"


def criterion_bruhat() -> tuple:
    g2 = set(orbitgeom.bruhat_order("g2").covers)
    sl3 = set(orbitgeom.bruhat_order("sl3").covers)
    return g2 == REF_HASSE_G2 and sl3 == REF_HASSE_SL3, f"g2 diff {g2 ^ REF_HASSE_G2}, sl3 diff {sl3 ^ REF_HASSE_SL3}"


def criterion_coherent() -> tuple:
    ok = True
    for key, order in (("g2", 6), ("sl3", 3)):
        action = grothendieck.load_coherent_table(key)
        m1, m2 = action.matrix(1), action.matrix(2)
        eye = np.eye(action.size, dtype=np.int64)
        ok &= np.array_equal(m1 @ m1, eye) and np.array_equal(m2 @ m2, eye)
        ok &= np.array_equal(np.linalg.matrix_power(m1 @ m2, order), eye)
        ok &= np.array_equal(np.linalg.matrix_power(m1 @ m2, 6), eye)
    return bool(ok), "involution or braid relation failed"


def criterion_tau_cells() -> tuple:
    action = grothendieck.coherent_action()
    tau = {g: {i for i in range(12) if g in grothendieck.tau_invariant(action, i)} for g in (1, 2)}
    cells = [set(b) for b in grothendieck.hc_cells(action).blocks]
    ok = tau == REF_TAU and all(c in cells for c in REF_CELLS) and {12} in cells and len(cells) == 5
    return ok, f"tau {tau}, cells {cells}"


def criterion_moment_images() -> tuple:
    res = conormal.moment_images()
    counts = conormal.springer_counts()
    ok = res.unique and res.assignment == REF_IMAGES and counts == REF_COUNTS
    return ok, f"{len(res.solutions)} solutions"


def criterion_core_solve() -> tuple:
    system = ccsolver.assemble("g2")
    ok = [ccsolver.complement_check(c) for c in (0, 1, 2)] == [True, False, False]
    expected_cc = np.array([_dense(REF_CC[x], 10) for x in range(13)]).T
    for bound in (4, 8):
        sol = ccsolver.solve(system, bound)
        ok &= np.array_equal(sol.cc.values, expected_cc)
        for (g, S), img in REF_WACT.items():
            ok &= list(sol.waction.matrix(g)[:, S]) == _dense(img, 10)
    sol = ccsolver.solve_integral()
    n = sol.waction
    ok &= (n.n(1, 3, 1), n.n(1, 5, 4), n.n(1, 7, 9), n.n(2, 8, 9)) == (3, 2, 2, 2)
    ok &= sol.cc.chi(2, 5) == 0
    return bool(ok), "cycle or W-action mismatch"


def criterion_equivariance() -> tuple:
    sol = ccsolver.solve_integral()
    coh = grothendieck.coherent_action()
    ok = ccsolver.verify_equivariance(sol.cc, coh, sol.waction)
    caught = total = 0
    for g in (1, 2):
        base = sol.waction.matrix(g)
        for i in range(base.shape[0]):
            for j in range(base.shape[1]):
                for delta in (1, -1):
                    mutated = np.array(base)
                    mutated[i, j] += delta
                    mats = dict(sol.waction.matrices)
                    mats[g] = mutated
                    w = ccsolver.WActionOnL(sol.waction.pair_key, mats)
                    total += 1
                    caught += not ccsolver.verify_equivariance(sol.cc, coh, w)
    return ok and caught == total, f"gate {ok}, caught {caught}/{total} mutations"


def criterion_packets() -> tuple:
    got = {p.orbit: p.eta for p in packets.all_micro_packets()}
    return got == REF_PACKETS, f"got {got}"


def criterion_nonintegral() -> tuple:
    ok = True
    for pair in orbitgeom.all_pairs():
        if pair.group_type == "G2":
            continue
        cc = ccsolver.cc_nonintegral(pair)
        ok &= np.array_equal(cc.values, np.eye(cc.n_orbits, dtype=np.int64))
        coh = grothendieck.load_coherent_table(pair)
        ok &= ccsolver.verify_equivariance(cc, coh, ccsolver.waction_nonintegral(pair))
        for j in range(cc.n_orbits):
            pk = packets.l_packet_nonintegral(pair, j)
            ok &= pk.members == frozenset({j}) and pk.eta == {j: 1}
    return bool(ok), "non-identity cycle or non-singleton packet"


def criterion_singular() -> tuple:
    block = translation.subregular_block()
    cc = translation.singular_cc(block)
    ok = all(list(cc.values[:, g]) == _dense(col, 5) for g, col in REF_SINGULAR_CC.items())
    ok &= translation.singular_packet(block, "psi_a").eta == REF_PSI_A
    ok &= translation.singular_packet(block, "psi_b").eta == REF_PSI_B
    ok &= block.pushforward == {0: 1, 1: 4, 2: 6, 3: 8, 4: 9, 5: 10}
    return bool(ok), "singular cycles or packets differ"


def random_unit_triangular(rng, n: int) -> np.ndarray:
    m = np.triu(rng.integers(-3, 4, size=(n, n)), k=1)
    return m + np.eye(n, dtype=np.int64)


def criterion_euler(trials: int = 100, seed: int = 0) -> tuple:
    ok = True
    for case, ref in (("integral", REF_EULER_INTEGRAL), ("subregular", REF_EULER_SUBREGULAR)):
        e = euler.solve_case(case)
        ok &= np.array_equal(e.values, np.array(ref))
    rng = np.random.default_rng(seed)
    cc, dims = euler.case_data("integral")
    for _ in range(trials):
        a = euler.EulerMatrix(random_unit_triangular(rng, cc.n_orbits))
        loc = euler.local_multiplicities(cc, a, dims)
        ok &= euler.solve_euler(loc, cc, dims) == a
    return bool(ok), "matrix or round trip mismatch"


def property_checks() -> dict:
    """Cross-module invariants; each value is a bool."""
    W = g2_weyl()
    out = {}
    out["weyl order 12, s^2 = 1, (s1 s2)^6 = 1"] = (
        W.order == 12 and W.canonical((1, 1)) == () and W.canonical((2, 2)) == ()
        and W.canonical((1, 2) * 6) == ()
    )
    model = orbitgeom.orbit_model("g2")
    out["p(S) is an involution"] = all(W.is_involution(o.p) for o in model.orbits)
    ok = True
    for lo, up, _ in model.weak_order_edges():
        ok &= model.orbits[up].dim == model.orbits[lo].dim + 1
    out["dim grows by one along m-steps"] = ok
    sol = ccsolver.solve_integral()
    images = conormal.moment_image_map()
    poset = conormal.nilpotent_poset()
    grading = all(
        poset.leq(images[T], images[S])
        for (g, S, T), val in sol.waction.coefficients.items() if val
    )
    out["W-action is graded by moment images"] = grading
    for g, m in sol.waction.matrices.items():
        out[f"W-action s{g} is an involution"] = np.array_equal(m @ m, np.eye(10, dtype=np.int64))
    m1, m2 = sol.waction.matrix(1), sol.waction.matrix(2)
    out["W-action braid relation"] = np.array_equal(
        np.linalg.matrix_power(m1 @ m2, 6), np.eye(10, dtype=np.int64)
    )
    params = model.parameters()
    support = all(
        sol.cc.chi(S, p.id) == 0
        for p in params for S in range(10) if S not in model.closure(p.orbit)
    )
    out["cycles supported in orbit closures"] = support
    out["unit multiplicity on own orbit"] = all(sol.cc.chi(p.orbit, p.id) == 1 for p in params)
    sign_ok = True
    dims = [o.dim for o in model.orbits]
    for pk in packets.all_micro_packets(sol.cc):
        for xi, c in pk.eta.items():
            odd = (dims[params[xi].orbit] - dims[pk.orbit]) % 2 == 1
            compact = params[xi].real_form == "compact"
            sign_ok &= (c < 0) == (odd != compact)
    out["packet sign rule"] = sign_ok
    out["complement exists for exactly one value"] = (
        sum(ccsolver.complement_check(c) for c in range(3)) == 1
    )
    return out


def criterion_properties() -> tuple:
    checks = property_checks()
    failed = [k for k, v in checks.items() if not v]
    return not failed, f"failed: {failed}"


CRITERIA = (
    (1, "orbit table and root natures", criterion_orbit_table),
    (2, "closure order for both pairs", criterion_bruhat),
    (3, "coherent tables are involutive and braid", criterion_coherent),
    (4, "tau-invariants and cells", criterion_tau_cells),
    (5, "unique moment images with Springer counts", criterion_moment_images),
    (6, "characteristic cycles and W-action, unique at bounds 4 and 8", criterion_core_solve),
    (7, "equivariance gate and mutation sweep", criterion_equivariance),
    (8, "micro-packets with signs", criterion_packets),
    (9, "non-integral cycles and L-packets", criterion_nonintegral),
    (10, "subregular singular block", criterion_singular),
    (11, "local Euler obstruction matrices and round trip", criterion_euler),
    (12, "cross-module invariants", criterion_properties),
)


def run_all() -> list:
    results = []
    for number, name, fn in CRITERIA:
        try:
            passed, detail = fn()
        except Exception as exc:  # a crash is a failure, reported with its message
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(Outcome(number, name, bool(passed), detail))
    return results
