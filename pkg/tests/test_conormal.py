import pytest

from g2micro import conormal as cn

REF = {0: "O6", 1: "O51", 3: "O51", 2: "O52", 4: "O52", 5: "O52",
       6: "O4", 7: "O4", 8: "O3", 9: "O0"}


def test_nilpotent_poset():
    poset = cn.nilpotent_poset()
    assert poset.leq("O0", "O6")
    assert poset.leq("O4", "O52")
    assert not poset.leq("O51", "O52")
    assert poset.closure("O3") == frozenset({"O3", "O0"})


def test_springer_counts():
    assert cn.springer_counts() == {"O6": 1, "O51": 2, "O52": 3, "O4": 2, "O3": 1, "O0": 1}
    assert sum(cn.springer_counts().values()) == 10


def test_forced_and_linked():
    assert cn.forced_single_term() == frozenset({0, 1, 2, 3, 4, 9, 12})
    assert cn.linked_orbits() == [(1, 3), (2, 4)]


def test_vertical_orbits():
    table = cn.vertical_table()
    assert table == {1: frozenset({1, 4, 6, 8, 9}), 2: frozenset({2, 3, 5, 7, 9})}


def test_moment_images_unique():
    res = cn.moment_images()
    assert res.unique
    assert res.assignment == REF
    assert cn.moment_image_map() == REF


def test_dropping_a_seed_loses_uniqueness():
    seeds = dict(cn.DEFAULT_SEEDS)
    del seeds[8]
    res = cn.moment_images(seeds=seeds)
    assert len(res.solutions) == 2
    assert res.assignment == {}
    assert REF in res.solutions


def test_inconsistent_seed_has_no_solution():
    seeds = {**cn.DEFAULT_SEEDS, 9: "O6"}
    assert cn.moment_images(seeds=seeds).solutions == ()


def test_moment_images_respect_weak_order():
    poset = cn.nilpotent_poset()
    for lo, up in cn.weak_order_edges():
        assert poset.leq(REF[up], REF[lo])


def test_lvector_prefix():
    assert str(cn.LVector.basis(10, 3)) == "T3"


@pytest.mark.parametrize("orbit", range(10))
def test_vertical_rejects_nothing_silently(orbit):
    for s in (1, 2):
        assert isinstance(cn.vertical(orbit, s), bool)
