import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2micro import euler as eu
from g2micro.acceptance import random_unit_triangular


@pytest.mark.parametrize("case", ["integral", "subregular"])
@pytest.mark.parametrize("method", ["recursive", "direct"])
def test_solved_matrix_matches_fixture(case, method):
    assert eu.solve_case(case, method=method) == eu.load_euler_fixture(case)


def test_chi_loc_fixture_is_reproducible():
    for case in ("integral", "subregular"):
        cc, dims = eu.case_data(case)
        loc = eu.local_multiplicities(cc, eu.load_euler_fixture(case), dims)
        assert loc == eu.load_chi_loc(case)


def test_obstruction_reports():
    assert eu.obstruction_report(eu.solve_case("integral")) == [(6, 1, -1), (7, 2, 2), (8, 1, 2)]
    assert eu.obstruction_report(eu.solve_case("subregular")) == [(2, 1, -1), (3, 2, 2)]
    assert eu.obstruction_report(eu.nonintegral_euler("sl3")) == []


def test_summary_never_claims_smoothness():
    summary = eu.obstruction_summary(eu.solve_case("integral"))
    assert summary[6] == "singular along S1"
    assert summary[3] == "no obstruction detected"
    assert not any("smooth" in s for s in summary.values())


@given(st.integers(0, 2**32 - 1), st.sampled_from(["integral", "subregular"]),
       st.sampled_from(["recursive", "direct"]))
def test_round_trip(seed, case, method):
    cc, dims = eu.case_data(case)
    a = eu.EulerMatrix(random_unit_triangular(np.random.default_rng(seed), cc.n_orbits))
    loc = eu.local_multiplicities(cc, a, dims)
    assert eu.solve_euler(loc, cc, dims, method) == a


def test_inconsistent_input_rejected():
    cc, dims = eu.case_data("subregular")
    loc = eu.local_multiplicities(cc, eu.load_euler_fixture("subregular"), dims)
    bad = np.array(loc.values)
    bad[0, 5] += 1
    with pytest.raises(eu.InconsistentSystemError):
        eu.solve_euler(eu.LocalMultMatrix(bad, loc.param_orbit), cc, dims)


def test_shape_and_method_errors():
    cc, dims = eu.case_data("subregular")
    with pytest.raises(ValueError):
        eu.local_multiplicities(cc, eu.load_euler_fixture("integral"), dims)
    with pytest.raises(ValueError):
        eu.solve_euler(eu.load_chi_loc("subregular"), cc, dims, method="magic")
    with pytest.raises(ValueError):
        eu.case_data("regular")
