import pytest

from g2micro import translation as tr

BLOCK = tr.subregular_block()


def test_q_orbits():
    assert BLOCK.dims == (1, 2, 3, 4, 5)
    assert [q.fibre for q in BLOCK.q_orbits] == [
        frozenset({1}), frozenset({0, 2, 4}), frozenset({3, 6}), frozenset({5, 8}), frozenset({7, 9}),
    ]
    assert [q.top for q in BLOCK.q_orbits] == [1, 4, 6, 8, 9]
    assert BLOCK.handle_orbit("psi_b") == 0
    assert BLOCK.handle_orbit("psi_a") == 1
    with pytest.raises(KeyError):
        BLOCK.handle_orbit("psi_c")


def test_closure_order():
    # the two one-point fibres sit side by side below Q2
    assert BLOCK.closure == {
        0: frozenset({0}), 1: frozenset({1}), 2: frozenset({0, 1, 2}),
        3: frozenset({0, 1, 2, 3}), 4: frozenset(range(5)),
    }


def test_pushforward_and_killed():
    assert BLOCK.pushforward == {0: 1, 1: 4, 2: 6, 3: 8, 4: 9, 5: 10}
    assert BLOCK.killed(13) == [0, 2, 3, 5, 7, 11, 12]


def test_fibre_partition_covers_every_orbit():
    assert sorted(BLOCK.fibre_partition) == list(range(10))


def test_provenance_labels():
    assert set(BLOCK.provenance.values()) <= {"stated", "derived"}
    assert BLOCK.provenance[("fibre", 0)] == "stated"
    assert BLOCK.provenance[("fibre", 9)] == "derived"


def test_multi_term_cycles():
    cc = tr.singular_cc(BLOCK)
    cols = {g: {i: int(v) for i, v in enumerate(cc.values[:, g]) if v} for g in range(6)}
    assert cols[2] == {0: 2, 2: 1}
    assert cols[3] == {1: 1, 2: 1, 3: 1}
    assert cols[5] == {0: 1, 2: 1, 3: 1, 4: 1}
    assert all(len(cols[g]) == 1 for g in (0, 1, 4))


def test_handle_packets():
    assert tr.singular_packet(BLOCK, "psi_a").eta == {1: 1, 3: 1}
    assert tr.singular_packet(BLOCK, "psi_b").eta == {0: 1, 2: 2, 5: 1}
    assert tr.singular_packet(None, 1) == tr.singular_packet(BLOCK, "psi_a")


def test_summary():
    assert tr.singular_summary((1, 2)).startswith("subregular")
    with pytest.raises(ValueError):
        tr.singular_summary((3, 5))
