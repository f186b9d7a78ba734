import math

import numpy as np
import pytest
from conftest import rel
from hypothesis import given, settings
from hypothesis import strategies as st

from bidiagtrace import (
    METHODS,
    MonotonicityViolation,
    TraceBreakdown,
    bound_report,
    make_bidiagonal,
    sigma_min_oracle,
    theta,
    theta_sequence,
    trace_table,
)
from bidiagtrace.bounds import check_monotone, theta_from_trace
from bidiagtrace.cli.generators import Distribution, draw, suite

SIGMA_UNIT2 = math.sqrt((3 - math.sqrt(5)) / 2)


@pytest.mark.parametrize("backend", METHODS)
def test_scalar_is_exact(backend):
    b = make_bidiagonal([2.0], [])
    for m in range(1, 6):
        assert rel(theta(b, m, backend), math.sqrt(2.0)) <= 1e-15


@pytest.mark.parametrize("backend", METHODS)
def test_unit_examples(unit2, backend):
    assert rel(theta(unit2, 1, backend), 3**-0.5) <= 1e-15
    assert rel(theta(unit2, 2, backend), 7**-0.25) <= 1e-15


def test_sequence_example(unit2):
    s = theta_sequence(unit2, 2, with_reference=True)
    assert rel(s.thetas, [3**-0.5, 7**-0.25]) <= 1e-15
    assert np.all(s.thetas < s.sigma_min_ref)
    assert rel(s.sigma_min_ref, SIGMA_UNIT2) <= 1e-13
    assert s.gaps()[1] < s.gaps()[0]
    assert theta_sequence(unit2, 2).gaps() is None


def test_random_sequence_converges():
    b = suite(51, 1, sizes=(10,))[0]
    s = theta_sequence(b, 10, "new", with_reference=True)
    assert np.all(np.diff(s.thetas) > 0)
    assert np.all(s.thetas < s.sigma_min_ref)
    assert np.all(np.diff(s.gaps()) < 0)


def test_monotone_check():
    check_monotone([1.0, 1.0, 2.0])
    check_monotone([1.0, 1.0 - 1e-13])
    with pytest.raises(MonotonicityViolation):
        check_monotone([1.0, 0.9])


def test_theta_from_bad_trace():
    with pytest.raises(TraceBreakdown):
        theta_from_trace(-1.0, 2)
    with pytest.raises(TraceBreakdown):
        theta_from_trace(math.inf, 2)


def test_report_unit(unit2):
    r = bound_report(unit2, 2)
    assert set(r.sequences) == set(METHODS)
    assert not r.failures
    assert np.all(r.cross_deviation() <= 1e-10)
    with pytest.raises(ValueError):
        bound_report(unit2, 2, backends=[])


def test_report_scalar():
    r = bound_report(make_bidiagonal([5.0], []), 4)
    for seq in r.sequences.values():
        assert rel(seq.thetas, [r.sigma_min] * 4) <= 1e-14


def test_report_graded_stress():
    b = draw(Distribution("graded", ratio=10.0), 6, np.random.default_rng(0))
    r = bound_report(b, 4)
    for name in ("ykn12", "ykyy14", "new"):
        seq = r.sequences[name]
        assert np.all(seq.thetas > 0)
        assert np.all(np.diff(seq.thetas) >= 0)
        assert np.all(seq.thetas < r.sigma_min)


def test_trace_table_notes_overflow():
    b = suite(52, 1, sizes=(20,))[0]
    t = trace_table(b, 200, "ykyy14", mark_overflow=True)
    bad = sorted(t.notes)
    assert bad and bad[-1] == 200 and all(t.notes[m] == "overflow" for m in bad)
    assert np.all(np.isnan(t.values[bad[0] - 1 :]))
    assert np.all(np.isfinite(t.values[: bad[0] - 1]))


@given(
    st.integers(1, 10),
    st.integers(0, 2**32 - 1),
    st.sampled_from(["kyn11", "ykn12", "ykyy14", "new"]),
)
@settings(max_examples=60, deadline=None)
def test_scale_equivariance(n, seed, backend):
    b = draw(Distribution("uniform", lo=0.5, hi=2.0), n, np.random.default_rng(seed))
    s1 = theta_sequence(b, 6, backend).thetas
    s4 = theta_sequence(b.scaled(4.0), 6, backend).thetas
    assert rel(s4, 2.0 * s1) <= 1e-12
    assert rel(sigma_min_oracle(b.scaled(4.0)), 2.0 * sigma_min_oracle(b)) <= 1e-12
