import shutil
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2micro import orbitgeom as og
from g2micro.fixtures import FixtureError, default_dir
from g2micro.rootsys import g2_weyl, torus_component_group

W = g2_weyl()
G2 = og.orbit_model("g2")
SL3 = og.orbit_model("sl3")


def test_k_lambda_options():
    table = {t: [p.k_type for p in og.k_lambda_options(t)] for t in og.GROUP_TYPES}
    assert table == {
        "Torus": ["Torus"], "GL2": ["Torus", "GL2"], "SL2xSL2": ["GL2"],
        "SL3": ["GL2", "SL3"], "G2": ["SL2xSL2", "G2"],
    }
    with pytest.raises(ValueError):
        og.k_lambda_options("E8")


@pytest.mark.parametrize("lam,kind", [
    ((3, 5), "G2"), ((F(1, 2), F(5, 2)), "SL2xSL2"), ((F(5, 3), 3), "SL3"),
    ((F(1, 7), F(1, 5)), "Torus"), ((F(1, 3), F(2, 3)), "GL2"),
])
def test_integral_subsystem(lam, kind):
    assert og.integral_subsystem(lam) == kind


def test_regularity():
    assert og.is_regular((3, 5))
    assert not og.is_regular((1, 2))


def test_get_pair_aliases_and_errors():
    assert og.get_pair("g2").key == "g2-sl2xsl2"
    assert og.get_pair(("SL3", "GL2")).key == "sl3-gl2"
    with pytest.raises(ValueError):
        og.get_pair("nope")
    with pytest.raises(ValueError):
        og.get_pair(("G2", "GL2"))


def test_g2_dimensions_and_closed_orbits():
    assert [o.dim for o in G2.orbits] == [2, 2, 2, 3, 3, 4, 4, 5, 5, 6]
    assert [o.id for o in G2.orbits if o.is_closed] == [0, 1, 2]
    assert [o.id for o in G2.orbits if o.is_open] == [9]


def test_hasse_matches_fixture():
    assert frozenset(G2.poset().covers) == og.load_hasse_fixture("g2")
    assert frozenset(SL3.poset().covers) == og.load_hasse_fixture("sl3")
    assert len(G2.poset().solid_edges()) == 10
    assert len(G2.poset().dotted_edges()) == 4


def test_closure():
    assert G2.closure(9) == frozenset(range(10))
    assert G2.closure(3) == frozenset({0, 1, 3})
    assert SL3.closure(5) == frozenset(range(6))


def test_parameters():
    params = G2.parameters()
    assert len(params) == 13
    assert [p.character for p in params if p.orbit == 9] == [(), (1, 0), (0, 1), (1, 1)]
    assert [p.id for p in params if p.is_compact_form] == [12]
    assert og.number_of_parameters("sl3") == 6


def test_component_groups():
    assert G2.component_group(9) == [2, 2]
    assert all(G2.component_group(j) == [] for j in range(9))


def test_hasse_dot_is_deterministic():
    a = og.hasse_dot(G2.poset())
    assert a == og.hasse_dot(og.bruhat_order("g2"))
    assert a.startswith("digraph") and "style=dashed" in a


orbit_ids = st.integers(0, 9)
gens = st.sampled_from([1, 2])
words = st.lists(gens, max_size=8).map(tuple)


@given(orbit_ids, gens)
def test_m_action_is_compatible_with_p(j, s):
    up = G2.m_action(s, j)
    if up == j:
        return
    p = G2.orbits[j].p
    assert G2.orbits[up].dim == G2.orbits[j].dim + 1
    assert G2.orbits[up].p in {W.canonical((s,) + p + (s,)), W.canonical((s,) + p)}


@given(orbit_ids, gens)
def test_m_action_is_idempotent(j, s):
    up = G2.m_action(s, j)
    assert G2.m_action(s, up) == up


@given(words, words)
def test_component_group_is_conjugation_invariant(w, v):
    conj = W.canonical(v + w + W.inverse(v))
    assert torus_component_group(conj) == torus_component_group(w)


@given(orbit_ids)
def test_p_is_an_involution(j):
    assert W.is_involution(G2.orbits[j].p)


def test_fixture_mismatch_is_reported(tmp_path):
    for f in default_dir().glob("*.tsv"):
        shutil.copy(f, tmp_path)
    path = tmp_path / "orbits_g2.tsv"
    text = path.read_text().replace("s1s2s1s2s1", "s1s2s1s2s2")
    path.write_text(text)
    with pytest.raises(FixtureError):
        og.OrbitModel(og.get_pair("g2"), tmp_path)
