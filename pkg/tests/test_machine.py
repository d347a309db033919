"""Machine solver: worked examples, oracle equivalence, output invariants."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intervalgames import (GuardError, Instance, Job, Profile, fixture, in_set,
                           prev_index, random_instance, random_profile,
                           solve_machine_bruteforce, solve_machine_dp,
                           validate_instance)
from conftest import check_schedule_invariants


def _inst(horizon, *jobs):
    return validate_instance(Instance(F(horizon), tuple(
        Job(i + 1, c, F(p), F(w)) for i, (c, p, w) in enumerate(jobs))))


def test_prev_disjoint():
    inst = _inst(4, (1, 1, 1), (2, 1, 1))
    profile = Profile.from_dict({1: F(0), 2: F(2)})
    assert prev_index(inst, profile, 2) == 1


def test_prev_overlap():
    inst = _inst(4, (1, 2, 1), (2, 2, 1))
    profile = Profile.from_dict({1: F(0), 2: F(1)})
    assert prev_index(inst, profile, 2) == 0


def test_prev_touching_is_compatible():
    # half-open intervals: [0,1) and [1,2) do not overlap
    inst = _inst(4, (1, 1, 1), (2, 1, 1))
    profile = Profile.from_dict({1: F(0), 2: F(1)})
    assert prev_index(inst, profile, 2) == 1


def test_prev_matches_definition_scan_on_ex1():
    fx = fixture("ex1")
    profile = fx.notable_profiles["figure_a"]
    starts = profile.as_dict()
    for j in fx.instance.jobs:
        expected = 0
        expected_f = None
        for k in fx.instance.jobs:
            if k.id == j.id:
                continue
            fk = starts[k.id] + k.length
            if fk <= starts[j.id] and (expected_f is None or (fk, k.id) > expected_f):
                expected, expected_f = k.id, (fk, k.id)
        assert prev_index(fx.instance, profile, j.id) == expected
    assert prev_index(fx.instance, profile, 1) == 0


def test_in_set_nested_same_color():
    fx = fixture("ex1")
    profile = fx.notable_profiles["figure_b"]  # job2 at [1,2) inside job1 [0,4)
    assert in_set(fx.instance, profile, 1) == frozenset({1, 2})


def test_in_set_singleton_and_color_filter():
    inst = _inst(3, (1, 1, 1))
    assert in_set(inst, Profile.from_dict({1: F(0)}), 1) == frozenset({1})
    inst2 = _inst(3, (1, 2, 1), (2, 2, 1))
    profile = Profile.from_dict({1: F(0), 2: F(0)})
    assert in_set(inst2, profile, 1) == frozenset({1})


def test_dp_example_profiles():
    fx = fixture("ex1")
    sched_a = solve_machine_dp(fx.instance, fx.notable_profiles["figure_a"])
    assert sched_a.value == 5 and sched_a.covered == frozenset({2, 3})
    sched_b = solve_machine_dp(fx.instance, fx.notable_profiles["figure_b"])
    assert sched_b.value == 4 and sched_b.covered == frozenset({1, 2})


def test_dp_single_job():
    inst = _inst(3, (1, 2, 7))
    sched = solve_machine_dp(inst, Profile.from_dict({1: F(1)}))
    assert sched.value == 7 and sched.covered == frozenset({1})


def test_dp_prop_fixture_overlap_outcome():
    # an overlap with any short job forces the machine onto the heavy color
    fx = fixture("prop_no_ne")
    sched = solve_machine_dp(fx.instance, fx.notable_profiles["overlap"])
    assert sched.value == 4 and sched.covered == frozenset({1, 2})


def test_brute_matches_on_examples():
    fx = fixture("ex1")
    for profile in fx.notable_profiles.values():
        assert (solve_machine_bruteforce(fx.instance, profile).value
                == solve_machine_dp(fx.instance, profile).value)


def test_empty_instance_value_zero():
    inst = Instance(F(2), ())
    sched = solve_machine_bruteforce(inst, Profile.from_dict({}))
    assert sched.value == 0 and sched.covered == frozenset()
    assert solve_machine_dp(inst, Profile.from_dict({})).value == 0


def test_brute_guard():
    inst = _inst(30, *(((i % 3) + 1, 1, 1) for i in range(21)))
    profile = Profile.from_dict({j.id: F(0) for j in inst.jobs})
    with pytest.raises(GuardError):
        solve_machine_bruteforce(inst, profile)
    assert solve_machine_bruteforce(inst, profile, force=True).value > 0


def test_zero_length_jobs_always_covered():
    inst = validate_instance(Instance(F(2), (
        Job(1, 1, F(0), F(5)), Job(2, 2, F(2), F(1)))))
    profile = Profile.from_dict({1: F(1), 2: F(0)})
    sched = solve_machine_dp(inst, profile)
    assert sched.covered == frozenset({1, 2})
    assert sched.value == 6
    assert solve_machine_bruteforce(inst, profile).value == 6


def test_oracle_equivalence_seeded():
    for i in range(120):
        n = 2 + i % 7
        inst = random_instance("general", n, min(n, 1 + i % 3), F(4), seed=900 + i)
        profile = random_profile(inst, seed=i)
        dp = solve_machine_dp(inst, profile)
        brute = solve_machine_bruteforce(inst, profile)
        assert dp.value == brute.value
        check_schedule_invariants(inst, profile, dp)
        check_schedule_invariants(inst, profile, brute)


def test_monotonicity_adding_a_job():
    for i in range(40):
        inst = random_instance("general", 4, 2, F(4), seed=500 + i)
        profile = random_profile(inst, seed=i)
        base = solve_machine_dp(inst, profile).value
        extra = Job(len(inst.jobs) + 1, 1, F(1), F(3, 2))
        bigger = validate_instance(Instance(inst.horizon, inst.jobs + (extra,)))
        starts = profile.as_dict()
        starts[extra.id] = F(i % 3)
        assert solve_machine_dp(bigger, Profile.from_dict(starts)).value >= base


@st.composite
def placed_instances(draw):
    horizon = F(4)
    n = draw(st.integers(min_value=1, max_value=6))
    jobs = []
    starts = {}
    for i in range(n):
        length = draw(st.fractions(min_value=F(1, 2), max_value=horizon,
                                   max_denominator=3))
        weight = draw(st.fractions(min_value=0, max_value=5, max_denominator=4))
        color = draw(st.integers(min_value=1, max_value=3))
        jobs.append(Job(i + 1, color, length, weight))
        starts[i + 1] = draw(st.fractions(min_value=0, max_value=horizon - length,
                                          max_denominator=3))
    inst = validate_instance(Instance(horizon, tuple(jobs)))
    return inst, Profile.from_dict(starts)


@given(placed_instances())
@settings(max_examples=80, deadline=None)
def test_oracle_equivalence_property(pair):
    inst, profile = pair
    assert (solve_machine_dp(inst, profile).value
            == solve_machine_bruteforce(inst, profile).value)


def test_touching_cross_color_chain():
    # three touching jobs of three colors all fit: [0,1) [1,2) [2,3)
    inst = _inst(3, (1, 1, 1), (2, 1, 2), (3, 1, 4))
    profile = Profile.from_dict({1: F(0), 2: F(1), 3: F(2)})
    sched = solve_machine_dp(inst, profile)
    assert sched.value == 7
    assert sched.covered == frozenset({1, 2, 3})
    assert sched.segments == ((F(0), F(1), 1), (F(1), F(2), 2), (F(2), F(3), 3))


def test_same_color_touching_merges_one_segment():
    inst = _inst(3, (1, 1, 1), (1, 1, 2))
    profile = Profile.from_dict({1: F(0), 2: F(1)})
    sched = solve_machine_dp(inst, profile)
    assert sched.value == 3
    assert sched.segments == ((F(0), F(2), 1),)
