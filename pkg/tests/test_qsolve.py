import random

import pytest

from k3iso.errors import ZeroTarget
from k3iso.qsolve import (
    ConstraintSet,
    PellUnit,
    SquareDiscriminant,
    automorph,
    enumerate_bounded,
    form_disc,
    form_eval,
    pell_fundamental,
    represent,
    represent_detail,
    transport,
)


# --------------------------------------------------------------------------
# Pell units
# --------------------------------------------------------------------------

def test_pell_known_values():
    assert pell_fundamental(2) == PellUnit(3, 2)
    assert pell_fundamental(3) == PellUnit(2, 1)
    assert pell_fundamental(5) == PellUnit(9, 4)
    assert pell_fundamental(13) == PellUnit(649, 180)
    # the classical big one
    assert pell_fundamental(61) == PellUnit(1766319049, 226153980)


def test_pell_square_marker():
    assert pell_fundamental(1) == SquareDiscriminant(1)
    assert pell_fundamental(9) == SquareDiscriminant(3)
    assert pell_fundamental(144) == SquareDiscriminant(12)


def test_pell_minimality():
    # no smaller positive solution below the returned one
    for disc in (2, 3, 6, 7, 8, 10, 12):
        unit = pell_fundamental(disc)
        assert unit.t * unit.t - disc * unit.u * unit.u == 1
        for u in range(1, unit.u):
            t2 = 1 + disc * u * u
            r = int(t2**0.5)
            assert not any((r + e) ** 2 == t2 for e in (-1, 0, 1)), (disc, u)


def test_automorph_properties():
    rng = random.Random(99)
    checked = 0
    while checked < 40:
        a = rng.randint(-5, 5)
        b = rng.randint(-5, 5)
        c = rng.randint(-5, 5)
        if a == 0 or c == 0:
            continue
        form = (a, b, c)
        d = form_disc(form)
        if d <= 0 or isinstance(pell_fundamental(d), SquareDiscriminant):
            continue
        P = automorph(form)
        det = P[0][0] * P[1][1] - P[0][1] * P[1][0]
        assert det == 1
        assert transport(form, P) == form
        # applying it to any vector preserves the value
        for _ in range(5):
            z = (rng.randint(-9, 9), rng.randint(-9, 9))
            img = (P[0][0] * z[0] + P[0][1] * z[1], P[1][0] * z[0] + P[1][1] * z[1])
            assert form_eval(form, img) == form_eval(form, z)
        checked += 1


def test_automorph_rejects_split():
    with pytest.raises(ValueError):
        automorph((1, 0, -1))


# --------------------------------------------------------------------------
# represent: pinned instances
# --------------------------------------------------------------------------

def test_represent_unconstrained_split():
    assert represent(1, 1, 8) == (3, 1)


def test_represent_coupled_congruence():
    cs = ConstraintSet((1,), (1,), (1, 4))
    assert represent(1, 1, 8, cs) == (3, -1)


def test_represent_second_instance():
    cs = ConstraintSet((1,), (2,), (1, 2))
    assert represent(2, 2, 8, cs) == (2, 0)


def test_represent_negative_target():
    cs = ConstraintSet((1,), (1,), (1, 4))
    assert represent(1, 9, -8, cs) == (-1, -1)


def test_represent_simple_cases():
    assert represent(1, 1, 2) is None  # x^2 - y^2 = 2 has no solutions
    # ties in (|y|, |x|) break by discovery order, not by sign
    assert represent(3, 1, 2) == (-1, -1)
    assert represent(1, 2, 1) == (1, 0)
    assert represent(1, 2, -1) == (1, 1)
    assert represent(1, 2, -2) == (0, 1)


def test_represent_content_obstruction():
    res = represent_detail(2, 2, 3)
    assert res.witness is None
    assert res.status == "content"


def test_represent_rejects_zero():
    with pytest.raises(ZeroTarget):
        represent(1, 1, 0)


def test_represent_detail_stats():
    res = represent_detail(1, 1, 8)
    assert res.status == "found"
    assert res.stats["path"] == "split"
    res = represent_detail(1, 2, 1)
    assert res.stats["path"] == "cycle"
    assert res.stats["walk_points"] > 0


# --------------------------------------------------------------------------
# oracle agreement
# --------------------------------------------------------------------------

def _brute(gamma, delta, m, cs, bound):
    hits = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if gamma * x * x - delta * y * y != m:
                continue
            if cs is not None and not cs.satisfied_by(x, y):
                continue
            hits.append((x, y))
    return sorted(hits)


def _random_constraints(rng):
    roll = rng.random()
    if roll < 0.4:
        return None
    x_mod = (rng.choice([1, 1, 2, 3]),)
    y_mod = (rng.choice([1, 1, 2, 4]),)
    coupled = None
    if roll > 0.7:
        M = rng.choice([2, 3, 4, 5])
        mus = [u for u in range(M) if __import__("math").gcd(u, M) == 1]
        coupled = (rng.choice(mus), M)
    return ConstraintSet(x_mod, y_mod, coupled)


def test_enumerate_matches_brute_force():
    rng = random.Random(20260817)
    for _ in range(60):
        gamma = rng.randint(1, 10)
        delta = rng.randint(1, 10)
        m = rng.choice([v for v in range(-40, 41) if v])
        cs = _random_constraints(rng)
        got = enumerate_bounded(gamma, delta, m, cs, 25)
        want = _brute(gamma, delta, m, cs, 25)
        assert got == want, (gamma, delta, m, cs)


def test_represent_complete_on_sampled_grid():
    # None must mean no solutions at all, not just none found nearby
    rng = random.Random(4242)
    box = 400
    for _ in range(150):
        gamma = rng.randint(1, 12)
        delta = rng.randint(1, 12)
        m = rng.choice([v for v in range(-60, 61) if v])
        cs = _random_constraints(rng)
        wit = represent(gamma, delta, m, cs)
        scan = enumerate_bounded(gamma, delta, m, cs, box)
        if wit is None:
            assert scan == [], (gamma, delta, m, cs, scan[:3])
        else:
            x, y = wit
            assert gamma * x * x - delta * y * y == m
            if cs is not None:
                assert cs.satisfied_by(x, y)
            if abs(x) <= box and abs(y) <= box:
                assert tuple(wit) in set(scan)


def test_witness_is_minimal_in_scan_order():
    # the returned witness minimises (|y|, |x|) over all solutions
    rng = random.Random(11)
    for _ in range(80):
        gamma = rng.randint(1, 9)
        delta = rng.randint(1, 9)
        m = rng.choice([v for v in range(-30, 31) if v])
        wit = represent(gamma, delta, m)
        if wit is None:
            continue
        scan = enumerate_bounded(gamma, delta, m, None, 200)
        if not scan:
            continue
        best = min((abs(y), abs(x)) for x, y in scan)
        assert (abs(wit[1]), abs(wit[0])) <= best, (gamma, delta, m, wit)


def test_fast_and_slow_enumeration_agree():
    # large bound goes through the vectorised path; small stays pure python
    for gamma, delta, m in [(1, 1, 8), (1, 2, 1), (3, 5, 7), (2, 3, -10)]:
        wide = enumerate_bounded(gamma, delta, m, None, 1200)
        narrow = enumerate_bounded(gamma, delta, m, None, 90)
        boxed = sorted((x, y) for x, y in wide if abs(x) <= 90 and abs(y) <= 90)
        assert boxed == narrow
