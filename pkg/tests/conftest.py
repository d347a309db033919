"""Shared helpers: fixture-fact verification and schedule invariant checks."""

from fractions import Fraction

import pytest

from intervalgames import (Fixture, best_response, enumerate_grid_ne, is_nash,
                           social_optimum_enumerate, solve_machine_dp, utilities)


def check_schedule_invariants(instance, profile, schedule):
    """Segments ordered and disjoint inside [0, T); covered jobs nested in
    segments of their color; value is the covered weight; closure holds."""
    T = instance.horizon
    starts = profile.as_dict()
    prev_end = Fraction(0)
    for a, b, _ in schedule.segments:
        assert Fraction(0) <= a < b <= T
        assert a >= prev_end
        prev_end = b
    total = Fraction(0)
    for jid in schedule.covered:
        j = instance.job(jid)
        total += j.weight
        if j.length == 0:
            continue
        s = starts[jid]
        assert any(c == j.color and a <= s and s + j.length <= b
                   for a, b, c in schedule.segments), f"job {jid} not inside a segment"
    assert total == schedule.value
    # no two covered jobs of different colors overlap
    covered = sorted(schedule.covered)
    for x in range(len(covered)):
        jx = instance.job(covered[x])
        for y in range(x + 1, len(covered)):
            jy = instance.job(covered[y])
            if jx.color == jy.color:
                continue
            sx, sy = starts[jx.id], starts[jy.id]
            assert not (max(sx, sy) < min(sx + jx.length, sy + jy.length))
    # same-color closure: anything nested inside a segment of its color is covered
    for j in instance.jobs:
        if j.id in schedule.covered or j.length == 0:
            continue
        s = starts[j.id]
        nested = any(c == j.color and a <= s and s + j.length <= b
                     for a, b, c in schedule.segments)
        assert not nested, f"job {j.id} nested in its color's segment but uncovered"


def check_fact(fx: Fixture, fact, *, resolution=1):
    """Verify one fixture fact against the solver modules."""
    inst = fx.instance
    if fact.kind == "opt_value":
        _, opt = social_optimum_enumerate(inst)
        assert opt == fact.payload, f"{fx.name}: opt {opt} != {fact.payload}"
    elif fact.kind == "ne_value":
        profile = fx.notable_profiles[fact.profile]
        assert is_nash(inst, profile) is None, f"{fx.name}: {fact.profile} unstable"
        value = solve_machine_dp(inst, profile).value
        assert value == fact.payload
    elif fact.kind == "utilities":
        profile = fx.notable_profiles[fact.profile]
        sched = solve_machine_dp(inst, profile)
        assert utilities(inst, profile, sched).as_tuple() == tuple(fact.payload)
    elif fact.kind in ("no_ne", "has_ne"):
        found = enumerate_grid_ne(inst, resolution=resolution)
        if fact.kind == "no_ne":
            assert found == [], f"{fx.name}: expected no grid NE, found {len(found)}"
        else:
            ne_profile = fx.notable_profiles.get("ne")
            if ne_profile is not None:
                assert is_nash(inst, ne_profile) is None
            else:
                assert found, f"{fx.name}: expected a grid NE"
    elif fact.kind in ("poa", "pos"):
        _, opt = social_optimum_enumerate(inst)
        profile = fx.notable_profiles[fact.profile]
        value = solve_machine_dp(inst, profile).value
        assert opt / value == fact.payload
    elif fact.kind == "grid_poa":
        _, opt = social_optimum_enumerate(inst)
        found = enumerate_grid_ne(inst, resolution=resolution)
        assert found, f"{fx.name}: no grid NE for grid_poa"
        assert opt / found[0][1] == fact.payload
    elif fact.kind == "grid_ne_values":
        found = enumerate_grid_ne(inst, resolution=resolution)
        assert sorted(set(v for _, v in found)) == sorted(set(fact.payload))
    elif fact.kind == "machine_value":
        profile = fx.notable_profiles[fact.profile]
        assert solve_machine_dp(inst, profile).value == fact.payload
    elif fact.kind == "stable_players":
        profile = fx.notable_profiles[fact.profile]
        assert is_nash(inst, profile, players=fact.payload) is None
    elif fact.kind == "value_dominates":
        kept, alternative = fact.payload
        profile = fx.notable_profiles[fact.profile]
        assert solve_machine_dp(inst, profile).value == kept
        assert kept > alternative
    elif fact.kind == "br_value":
        profile = fx.notable_profiles[fact.profile]
        _, u = best_response(inst, profile, fact.player)
        assert u == fact.payload, f"{fx.name}: best response {u} != {fact.payload}"
    elif fact.kind == "br_below":
        profile = fx.notable_profiles[fact.profile]
        _, u = best_response(inst, profile, fact.player)
        assert u < fact.payload, f"{fx.name}: best response {u} !< {fact.payload}"
    else:
        pytest.fail(f"unknown fact kind {fact.kind}")
