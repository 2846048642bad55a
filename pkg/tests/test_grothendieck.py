import shutil

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2micro import grothendieck as gr
from g2micro.fixtures import FixtureError, default_dir
from g2micro.rootsys import g2_weyl

W = g2_weyl()
ACT = gr.coherent_action()
words = st.lists(st.sampled_from([1, 2]), max_size=16).map(tuple)
params = st.integers(0, 12)


def test_sizes_and_source():
    assert ACT.size == 13
    assert ACT.source == "coherent_g2.tsv"
    assert gr.load_coherent_table("sl3").size == 6


def test_table_entries():
    # s1 . P0 = P0 + P4 and the compact parameter is negated by both
    assert list(ACT.matrix(1)[:, 0]) == [1, 0, 0, 0, 1] + [0] * 8
    for g in (1, 2):
        assert ACT.apply(g, gr.KVector.basis(13, 12, "P")).support() == {12: -1}


@given(words, params)
def test_action_factors_through_the_weyl_group(w, j):
    v = gr.KVector.basis(13, j, "P")
    assert gr.coherent_apply(ACT, w, v) == gr.coherent_apply(ACT, W.canonical(w), v)


@given(words, words, params)
def test_action_is_a_homomorphism(u, w, j):
    v = gr.KVector.basis(13, j, "P")
    assert gr.coherent_apply(ACT, u + w, v) == gr.coherent_apply(ACT, u, gr.coherent_apply(ACT, w, v))


def test_word_strings_accepted():
    v = gr.KVector.basis(13, 0, "P")
    assert gr.coherent_apply(ACT, "s1", v) == ACT.apply(1, v)


def test_tau_invariants():
    tau = {g: sorted(j for j in range(12) if g in gr.tau_invariant(ACT, j)) for g in (1, 2)}
    assert tau == {1: [1, 4, 6, 8, 9, 10], 2: [2, 3, 5, 7, 9, 11]}
    assert gr.tau_invariant(ACT, 0) == frozenset()


def test_cells():
    cells = gr.hc_cells(ACT)
    assert cells.blocks == (frozenset({0}), frozenset({1, 3, 6, 7, 10}),
                            frozenset({2, 4, 5, 8, 11}), frozenset({9}), frozenset({12}))
    assert cells.cell_of(6) == frozenset({1, 3, 6, 7, 10})
    assert cells.index_of(9) == 3


def test_sl3_cells():
    cells = gr.hc_cells(gr.coherent_action("sl3-gl2"))
    assert cells.blocks == (frozenset({0}), frozenset({1, 4}), frozenset({2, 3}), frozenset({5}))


def test_generic_rule_for_pairs_without_a_table():
    act = gr.load_coherent_table("gl2-torus")
    assert act.source == "m-action rule"
    for g in act.generators:
        m = act.matrix(g)
        assert np.array_equal(m @ m, np.eye(act.size, dtype=np.int64))


def test_formatting():
    v = gr.KVector.basis(13, 3, "P") * 2 - gr.KVector.basis(13, 1, "P")
    assert str(v) == "-P1 + 2P3"
    assert str(gr.KVector.basis(3, 0, "P") * 0) == "0"


def _copy_fixtures(tmp_path):
    for f in default_dir().glob("*.tsv"):
        shutil.copy(f, tmp_path)


def test_non_involutive_table_rejected(tmp_path):
    _copy_fixtures(tmp_path)
    path = tmp_path / "coherent_g2.tsv"
    lines = path.read_text().splitlines()
    lines = [ln.replace("s1\t1\t1\t-1", "s1\t1\t1\t1") for ln in lines]
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(FixtureError):
        gr.load_coherent_table("g2", tmp_path)


def test_ragged_table_rejected(tmp_path):
    _copy_fixtures(tmp_path)
    path = tmp_path / "coherent_sl3.tsv"
    path.write_text(path.read_text() + "s1\t0\n")
    with pytest.raises(FixtureError):
        gr.load_coherent_table("sl3", tmp_path)
