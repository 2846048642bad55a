import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2micro import ccsolver as cs
from g2micro import grothendieck as gr
from g2micro import orbitgeom as og

SOL = cs.solve_integral()
COH = gr.coherent_action()
NONINTEGRAL = [p for p in og.all_pairs() if p.group_type != "G2"]


def test_system_shape():
    system = cs.assemble()
    assert len(system.chi_unknowns) == 11
    assert len(system.n_unknowns) == 16
    assert len(system.equations) == 28
    assert all(" = 0" in e for e in system.describe_equations())


def test_assemble_rejects_other_pairs():
    with pytest.raises(ValueError):
        cs.assemble("sl3")


@pytest.mark.parametrize("bound", [4, 8])
def test_lemma_is_what_makes_the_solution_unique(bound):
    system = cs.assemble()
    assert len(cs.enumerate_solutions(system, bound, use_lemma=False)) == 3
    assert len(cs.enumerate_solutions(system, bound, use_lemma=True)) == 1
    with pytest.raises(cs.NonUniqueError) as info:
        cs.solve(system, bound, use_lemma=False)
    assert len(info.value.solutions) == 3


def test_bound_eight_agrees_with_bound_four():
    assert cs.solve(cs.assemble(), 8).cc == SOL.cc


def test_tiny_bound_has_no_solution():
    with pytest.raises(cs.NoSolutionError):
        cs.solve(cs.assemble(), 1)


def test_multi_term_cycles():
    cyc = {p: str(SOL.cc.cycle(p)) for p in (6, 7, 8, 10, 11)}
    assert cyc == {6: "2T1 + T6", 7: "T3 + T7", 8: "T4 + T6 + T8",
                   10: "T1 + T6 + T8 + T9", 11: "T2 + T7 + T9"}
    assert SOL.cc.chi(2, 5) == 0
    assert SOL.cc.chi(5, 11) == 0


def test_w_action_coefficients():
    w = SOL.waction
    assert (w.n(1, 3, 1), w.n(1, 5, 4), w.n(1, 7, 9), w.n(2, 8, 9)) == (3, 2, 2, 2)
    assert "lattice-complement" in SOL.active_constraints
    assert SOL.solutions_without_lemma == 3


def test_complement_check():
    assert [cs.complement_check(c) for c in range(3)] == [True, False, False]
    assert cs.complement_witness(0) == (0, 0)
    assert cs.complement_witness(2) is None
    with pytest.raises(ValueError):
        cs.complement_check(3)


def test_bounded_solver_small():
    eq = [{(0,): 1, (1,): 1, (): -3}]
    assert cs.BoundedIntegerSolver(eq, [(0, 3), (0, 3)]).solve() == [(0, 3), (1, 2), (2, 1), (3, 0)]
    quad = [{(0, 0): 1, (): -4}]
    assert cs.BoundedIntegerSolver(quad, [(0, 3)]).solve() == [(2,)]
    with pytest.raises(ValueError):
        cs.BoundedIntegerSolver(quad, [(-3, 3)])


def test_equivariance_holds():
    assert cs.verify_equivariance(SOL.cc, COH, SOL.waction)


entries = st.tuples(st.sampled_from([1, 2]), st.integers(0, 9), st.integers(0, 9),
                    st.sampled_from([-2, -1, 1, 2]))


@given(entries)
def test_any_single_mutation_breaks_equivariance(e):
    g, i, j, delta = e
    mats = dict(SOL.waction.matrices)
    m = np.array(mats[g])
    m[i, j] += delta
    mats[g] = m
    assert not cs.verify_equivariance(SOL.cc, COH, cs.WActionOnL("g2-sl2xsl2", mats))


@pytest.mark.parametrize("pair", NONINTEGRAL, ids=lambda p: p.key)
def test_nonintegral_identity(pair):
    cc = cs.cc_nonintegral(pair)
    assert np.array_equal(cc.values, np.eye(cc.n_orbits, dtype=np.int64))
    assert cs.verify_equivariance(cc, gr.coherent_action(pair.key), cs.waction_nonintegral(pair))


def test_nonintegral_rejects_integral_pair():
    with pytest.raises(ValueError):
        cs.cc_nonintegral("g2")
