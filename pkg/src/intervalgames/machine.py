"""Machine-side solver: value-optimal machine configuration for a fixed profile.

Two independent routes compute the maximum total weight of covered jobs:
a dynamic program over jobs sorted by finish time, and a subset-enumeration
brute force used as an oracle in tests. Both apply the same pre-pass (jobs of
length zero occupy an empty interval, so they are always covered) and the
same post-pass (any job whose whole interval lies inside a busy segment of
its own color is covered for free).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .model import ZERO, GuardError, Instance, Profile, Schedule

BRUTE_FORCE_MAX_JOBS = 20


def _ordered(instance: Instance, starts: dict[int, Fraction]):
    """Positive-length jobs sorted by (finish, id); zero-length jobs aside."""
    positive = [j for j in instance.jobs if j.length > 0]
    zero = [j for j in instance.jobs if j.length == 0]
    positive.sort(key=lambda j: (starts[j.id] + j.length, j.id))
    return positive, zero


def prev_index(instance: Instance, profile: Profile, job_id: int) -> int:
    """Id of the last job (in finish order) ending no later than this job
    starts, or 0 if none. Touching half-open intervals are compatible."""
    starts = profile.as_dict()
    jobs, _ = _ordered(instance, starts)
    s_j = starts[job_id]
    best = 0
    for k in jobs:
        if k.id == job_id:
            continue
        if starts[k.id] + k.length <= s_j:
            best = k.id  # scan is in finish order, so the last hit wins
    return best


def in_set(instance: Instance, profile: Profile, job_id: int) -> frozenset[int]:
    """Ids of same-color jobs whose interval is contained in this job's interval."""
    starts = profile.as_dict()
    j = instance.job(job_id)
    s_j, f_j = starts[job_id], starts[job_id] + j.length
    members = set()
    for k in instance.jobs:
        if k.color != j.color:
            continue
        s_k = starts[k.id]
        if s_j <= s_k and s_k + k.length <= f_j:
            members.add(k.id)
    return frozenset(members)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class _Static:
    """Per-instance constants for the integer-scaled solver core."""

    __slots__ = ("ids", "colors", "weights_scaled", "len_nd", "len_den",
                 "weight_den", "base_scaled", "zero_ids", "count")

    def __init__(self, instance: Instance):
        positive = [j for j in instance.jobs if j.length > 0]
        zero = [j for j in instance.jobs if j.length == 0]
        wd = 1
        for j in instance.jobs:
            wd = _lcm(wd, j.weight.denominator)
        ld = 1
        for j in positive:
            ld = _lcm(ld, j.length.denominator)
        self.ids = [j.id for j in positive]
        self.colors = [j.color for j in positive]
        self.weights_scaled = [j.weight.numerator * (wd // j.weight.denominator)
                               for j in positive]
        self.len_nd = [(j.length.numerator, j.length.denominator) for j in positive]
        self.len_den = ld
        self.weight_den = wd
        self.base_scaled = sum(j.weight.numerator * (wd // j.weight.denominator)
                               for j in zero)
        self.zero_ids = frozenset(j.id for j in zero)
        self.count = len(positive)


_STATICS: dict[int, tuple] = {}


def _static_for(instance: Instance) -> _Static:
    key = id(instance)
    hit = _STATICS.get(key)
    if hit is not None and hit[0] is instance:
        return hit[1]
    static = _Static(instance)
    if len(_STATICS) > 4096:
        _STATICS.clear()
    _STATICS[key] = (instance, static)  # keeps the instance alive; id stays valid
    return static


def _scaled(instance: Instance, starts: dict[int, Fraction]):
    """Integer-scaled view of one profile: all times over a common lcm
    denominator, all weights over theirs, sorted by (finish, id). Exact."""
    st = _static_for(instance)
    n = st.count
    td = st.len_den
    for jid in st.ids:
        d = starts[jid].denominator
        td = td * d // math.gcd(td, d)
    raw_s = []
    raw_f = []
    for i in range(n):
        x = starts[st.ids[i]]
        si = x.numerator * (td // x.denominator)
        num, den = st.len_nd[i]
        raw_s.append(si)
        raw_f.append(si + num * (td // den))
    order = sorted(range(n), key=lambda i: (raw_f[i], st.ids[i]))
    s = [raw_s[i] for i in order]
    f = [raw_f[i] for i in order]
    w = [st.weights_scaled[i] for i in order]
    col = [st.colors[i] for i in order]
    ids = [st.ids[i] for i in order]
    return s, f, w, col, ids, st


def _dp_core(instance: Instance, starts: dict[int, Fraction]):
    """Return (value, covered ids) for the optimal configuration."""
    s, f, w, col, ids, st = _scaled(instance, starts)
    wd = st.weight_den
    base = st.base_scaled
    covered_ids = set(st.zero_ids)
    n = st.count
    if n == 0:
        return Fraction(base, wd), frozenset(covered_ids)

    # nested[i]: bitmask of same-color jobs contained in job i's interval.
    nested = [0] * n
    nested_w = [0] * n
    for i in range(n):
        mask = 0
        acc = 0
        si, fi, ci = s[i], f[i], col[i]
        for k in range(n):
            if col[k] == ci and si <= s[k] and f[k] <= fi:
                mask |= 1 << k
                acc += w[k]
        nested[i] = mask
        nested_w[i] = acc

    # prev[i]: length of the finish-order prefix ending by s[i]; finishes are
    # sorted, so this is a simple count.
    prev = [0] * n
    for i in range(n):
        p = 0
        si = s[i]
        for k in range(i):
            if f[k] <= si:
                p = k + 1
        prev[i] = p

    A = [0] * (n + 1)
    back = [0] * (n + 1)  # predecessor cell (branch is irrelevant to backtrack)
    for i in range(n):
        cell = i + 1
        # Branch X: the previous covered job ends before this one starts.
        add = nested_w[i]
        best_v = add  # k = 0
        best_k = 0
        best_id = 0
        for k in range(1, prev[i] + 1):
            v = A[k] + add
            kid = ids[k - 1]
            if v > best_v or (v == best_v and kid < best_id):
                best_v, best_k, best_id = v, k, kid
        # Branch Y: extend a same-color configuration that this job intersects.
        mi, ci = nested[i], col[i]
        for k in range(i):
            if col[k] != ci or (mi >> k) & 1:
                continue
            rest = mi & ~nested[k]
            marginal = 0
            while rest:
                low = rest & -rest
                marginal += w[low.bit_length() - 1]
                rest ^= low
            v = A[k + 1] + marginal
            kid = ids[k]
            if v > best_v or (v == best_v and kid < best_id):
                best_v, best_k, best_id = v, k + 1, kid
        A[cell] = best_v
        back[cell] = best_k
    # Branch ties inside a cell prefer X implicitly: at equal value and equal
    # predecessor id the X candidate is scanned first and kept.

    # Final pick: maximum value; ties go to the smaller last-job id, with the
    # empty cover (cell 0, "id" 0) winning an all-zero tie.
    best_cell = 0
    best_val = 0
    best_id = 0
    for cell in range(1, n + 1):
        jid = ids[cell - 1]
        if A[cell] > best_val or (A[cell] == best_val and jid < best_id):
            best_cell, best_val, best_id = cell, A[cell], jid

    covered_mask = 0
    cell = best_cell
    while cell != 0:
        covered_mask |= nested[cell - 1]
        cell = back[cell]
    credited = best_val
    total = 0
    rest = covered_mask
    while rest:
        low = rest & -rest
        total += w[low.bit_length() - 1]
        rest ^= low
    assert total == credited, "dp credit mismatch: recurrence double-counted a job"
    covered_ids.update(ids[k] for k in range(n) if (covered_mask >> k) & 1)
    return Fraction(base + credited, wd), frozenset(covered_ids)


def _brute_core(instance: Instance, starts: dict[int, Fraction], force: bool):
    s, f, w, col, ids, st = _scaled(instance, starts)
    n = st.count
    if n > BRUTE_FORCE_MAX_JOBS and not force:
        raise GuardError(f"brute-force machine solver limited to "
                         f"{BRUTE_FORCE_MAX_JOBS} jobs, got {n}")
    covered_ids = set(st.zero_ids)
    conflict = [0] * n
    for i in range(n):
        for k in range(n):
            if i != k and col[i] != col[k] \
                    and max(s[i], s[k]) < min(f[i], f[k]):
                conflict[i] |= 1 << k
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + w[i]

    best_val = 0
    best_set: tuple[int, ...] = ()

    def search(i: int, mask: int, value: int, chosen: list[int]):
        nonlocal best_val, best_set
        if value + suffix[i] < best_val:
            return
        if i == n:
            key = tuple(sorted(ids[k] for k in chosen))
            if value > best_val or (value == best_val and key < best_set):
                best_val, best_set = value, key
            return
        if not (mask >> i) & 1:  # include first: favors low-id covers on ties
            chosen.append(i)
            search(i + 1, mask | conflict[i], value + w[i], chosen)
            chosen.pop()
        search(i + 1, mask, value, chosen)

    search(0, 0, 0, [])
    covered_ids.update(best_set)
    return Fraction(st.base_scaled + best_val, st.weight_den), frozenset(covered_ids)


def _segments_and_closure(instance: Instance, starts, value, covered):
    """Merge covered intervals into maximal per-color segments, then cover
    every job nested inside a segment of its own color (free additions)."""
    per_color: dict[int, list[tuple[Fraction, Fraction]]] = {}
    for jid in covered:
        j = instance.job(jid)
        if j.length == 0:
            continue
        per_color.setdefault(j.color, []).append((starts[jid], starts[jid] + j.length))
    segments = []
    for color, ivals in per_color.items():
        ivals.sort()
        cur_s, cur_f = ivals[0]
        for a, b in ivals[1:]:
            if a <= cur_f:  # merge overlapping and touching same-color intervals
                cur_f = max(cur_f, b)
            else:
                segments.append((cur_s, cur_f, color))
                cur_s, cur_f = a, b
        segments.append((cur_s, cur_f, color))
    segments.sort()
    for (a1, b1, _), (a2, _, _) in zip(segments, segments[1:]):
        assert a2 >= b1, "covered jobs of different colors overlap"

    closed = set(covered)
    extra = ZERO
    for j in instance.jobs:
        if j.id in closed or j.length == 0:
            continue
        sj, fj = starts[j.id], starts[j.id] + j.length
        for a, b, color in segments:
            if color == j.color and a <= sj and fj <= b:
                closed.add(j.id)
                extra += j.weight
                break
    assert extra == 0, "closure pass found uncounted positive weight (solver bug)"
    return Schedule(frozenset(closed), tuple(segments), value)


def solve_machine_dp(instance: Instance, profile: Profile) -> Schedule:
    """Optimal machine configuration via dynamic programming over finish times."""
    starts = profile.as_dict()
    value, covered = _dp_core(instance, starts)
    return _segments_and_closure(instance, starts, value, covered)


def solve_machine_bruteforce(instance: Instance, profile: Profile,
                             force: bool = False) -> Schedule:
    """Oracle: enumerate all cross-color-compatible job subsets (n <= 20)."""
    starts = profile.as_dict()
    value, covered = _brute_core(instance, starts, force)
    return _segments_and_closure(instance, starts, value, covered)


def machine_value_and_covered(instance: Instance,
                              starts: dict[int, Fraction]) -> tuple[Fraction, frozenset[int]]:
    """Fast-path entry used by the equilibrium search: no segment building."""
    return _dp_core(instance, starts)
