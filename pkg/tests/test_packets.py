import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2micro import ccsolver as cs
from g2micro import orbitgeom as og
from g2micro import packets as pk

PACKETS = pk.all_micro_packets()
MODEL = og.orbit_model("g2")
PARAMS = MODEL.parameters()
DIMS = [o.dim for o in MODEL.orbits]


def test_negative_coefficients():
    neg = {p.orbit: sorted(x for x, c in p.eta.items() if c < 0) for p in PACKETS}
    assert neg == {0: [], 1: [], 2: [], 3: [], 4: [], 5: [], 6: [8], 7: [11], 8: [10], 9: [12]}


def test_s1_packet_has_multiplicity_two():
    assert PACKETS[1].eta == {1: 1, 6: 2, 10: 1}


@given(st.integers(0, 9))
def test_sign_rule(orbit):
    packet = PACKETS[orbit]
    for xi, c in packet.eta.items():
        parity = (DIMS[PARAMS[xi].orbit] - DIMS[orbit]) % 2
        expected = (-1) ** parity * pk.kottwitz_sign(PARAMS[xi].real_form)
        assert c == expected * abs(c)


@given(st.integers(0, 9))
def test_members_are_the_support(orbit):
    packet = PACKETS[orbit]
    assert packet.members == frozenset(packet.eta)
    assert orbit in packet.members


def test_json_ordering():
    assert PACKETS[9].to_json() == {
        "orbit": "S9", "members": ["xi12", "xi11", "xi10", "xi9"],
        "eta": {"xi12": -1, "xi11": 1, "xi10": 1, "xi9": 1},
    }


def test_eta_vector():
    assert str(PACKETS[6].eta_vector(13)) == "pi6 - pi8 + pi10"


def test_unknown_orbit():
    with pytest.raises(KeyError):
        pk.micro_packet(cs.solve_integral().cc, 10)


@pytest.mark.parametrize("pair", [p for p in og.all_pairs() if p.group_type != "G2"],
                         ids=lambda p: p.key)
def test_nonintegral_singletons(pair):
    for packet in pk.nonintegral_packets(pair):
        assert packet.members == frozenset({packet.orbit})
        assert packet.eta == {packet.orbit: 1}


@pytest.mark.parametrize("nilclass,target", [
    ("trivial", 9), ("regular", 0), ("long-root", 8), ("short-root", 7),
    ("subregular-a", "psi_a"), ("subregular-b", "psi_b"),
])
def test_arthur_targets(nilclass, target):
    assert pk.arthur_target(nilclass).target == target


def test_long_root_character():
    a = pk.arthur_target("long-root")
    assert a.infinitesimal_character == (6, 10)
    assert a.p_word == "s1s2s1s2s1"
    assert pk.arthur_target("long-root", 5).target == 8


def test_arthur_rejections():
    with pytest.raises(ValueError):
        pk.arthur_target("long-root", 1)
    with pytest.raises(ValueError):
        pk.arthur_target("long-root", 4)
    with pytest.raises(ValueError):
        pk.arthur_target("minimal")
