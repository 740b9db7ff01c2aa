from math import gcd

import pytest

from k3iso.errors import NotIsotropic, NotPrimitive, PreconditionViolated
from k3iso.mukai_model import (
    GRAM,
    ModelVector,
    build_v,
    dot,
    model_report,
    perp_quotient,
    t_vector,
    verify_nu,
)


def test_ambient_pairing():
    e1 = ModelVector((1, 0, 0, 0))
    e2 = ModelVector((0, 1, 0, 0))
    f1 = ModelVector((0, 0, 1, 0))
    f2 = ModelVector((0, 0, 0, 1))
    assert dot(e1, e2) == -1
    assert dot(f1, f2) == 1
    for v in (e1, e2, f1, f2):
        assert dot(v, v) == 0
    assert dot(e1, f1) == dot(e1, f2) == dot(e2, f1) == dot(e2, f2) == 0
    # even with determinant 1: two hyperbolic planes
    assert len(GRAM) == 4


def test_build_v():
    assert build_v(2, 3, 6).coords == (12, 18, 216, 1)
    assert build_v(1, 1, 1).coords == (1, 1, 1, 1)
    assert build_v(1, 1, 2, 3, 1).coords == (18, 2, 12, 3)
    v = build_v(3, 5, 2, 3, 1)
    assert dot(v, v) == 0


def test_build_v_preconditions():
    with pytest.raises(PreconditionViolated):
        build_v(2, 4, 1)  # gcd(a, b) = 2
    with pytest.raises(PreconditionViolated):
        build_v(1, 2, 1, 2, 1)  # gcd(d1, b*c) = 2
    with pytest.raises(PreconditionViolated):
        build_v(2, 1, 1, 1, 2)  # gcd(d2, a*c) = 2
    with pytest.raises(PreconditionViolated):
        build_v(1, 1, 1, 2, 2)  # gcd(d1, d2) = 2


def test_t_vector():
    assert t_vector(2, 3, 6).coords == (0, 0, -216, 1)
    assert dot(t_vector(2, 3, 6), t_vector(2, 3, 6)) == -432


def test_perp_quotient_of_basis_vector():
    rep = perp_quotient(ModelVector((1, 0, 0, 0)))
    assert rep.gram == ((0, 1), (1, 0))


def test_perp_quotient_rejects():
    with pytest.raises(NotIsotropic):
        perp_quotient(ModelVector((1, 1, 0, 0)))  # square -2
    with pytest.raises(NotPrimitive):
        perp_quotient(ModelVector((2, 0, 0, 0)))


def test_quotient_gram_properties():
    # even, determinant -1, polarization square 2ab, index c
    for a, b, c in [(1, 1, 1), (2, 3, 1), (1, 1, 2), (3, 4, 2), (5, 6, 4)]:
        rep = model_report(a, b, c)
        g = rep.gram
        assert g[0][0] % 2 == 0 and g[1][1] % 2 == 0
        assert g[0][0] * g[1][1] - g[0][1] * g[1][0] == -1
        assert rep.h_sq == 2 * a * b
        assert rep.index == c
        # the recorded transform turns the Gram into the hyperbolic plane
        S = rep.u_transform
        cols = ((S[0][0], S[1][0]), (S[0][1], S[1][1]))
        det = S[0][0] * S[1][1] - S[0][1] * S[1][0]
        assert det in (1, -1)
        t = [
            [
                sum(cols[i][k] * g[k][l] * cols[j][l] for k in (0, 1) for l in (0, 1))
                for j in (0, 1)
            ]
            for i in (0, 1)
        ]
        assert t == [[0, 1], [1, 0]]


def test_worked_quotients():
    rep = model_report(2, 3, 1)
    assert rep.h_sq == 12
    assert rep.index == 1
    assert rep.gram == ((-2, -5), (-5, -12))
    rep = model_report(1, 1, 2)
    assert rep.gram == ((0, 1), (1, -2))
    assert rep.index == 2


def test_verify_nu_examples():
    assert verify_nu(1, 1, 2, 3, 1).ok
    assert verify_nu(2, 3, 1, 1, 5).ok
    assert verify_nu(1, 1, 1, 1, 1).ok
    rep = verify_nu(3, 5, 2, 3, 1)
    assert rep.ok, rep.detail
    assert rep.index == rep.index_1 == 2
    assert rep.h_sq == 30


def test_verify_nu_rejects_bad_divisors():
    with pytest.raises(PreconditionViolated):
        verify_nu(1, 2, 1, 2, 1)  # gcd(d1, b*c) = 2


def test_verify_nu_small_grid():
    for a in range(1, 4):
        for b in range(1, 4):
            if gcd(a, b) != 1:
                continue
            for c in range(1, 3):
                for d1 in range(1, 4):
                    if gcd(d1, b * c) != 1:
                        continue
                    for d2 in range(1, 4):
                        if gcd(d2, a * c * d1) != 1:
                            continue
                        rep = verify_nu(a, b, c, d1, d2)
                        assert rep.ok, (a, b, c, d1, d2, rep.detail)
