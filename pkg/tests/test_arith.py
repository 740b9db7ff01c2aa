import pytest

from k3iso.arith import gamma_split, invariants, n_of_v
from k3iso.errors import NotDivisible, NotPrimitive, SplitFailure

# (r, s, d) -> (c, a, b, d_a, d_b, a1, b1, n_half), all hand-computed
INVARIANT_TABLE = [
    ((1, 1, 1), (1, 1, 1, 1, 1, 1, 1, 1)),
    ((2, 1, 1), (1, 2, 1, 1, 1, 2, 1, 2)),
    ((2, 2, 1), (2, 1, 1, 1, 1, 1, 1, 4)),
    ((4, 2, 1), (2, 2, 1, 1, 1, 2, 1, 8)),
    ((6, 4, 1), (2, 3, 2, 1, 1, 3, 2, 24)),
    ((12, 10, 1), (2, 6, 5, 1, 1, 6, 5, 120)),
    ((4, 1, 2), (1, 4, 1, 2, 1, 1, 1, 1)),
    ((9, 1, 3), (1, 9, 1, 3, 1, 1, 1, 1)),
    ((12, 1, 2), (1, 12, 1, 2, 1, 3, 1, 3)),
    ((12, 5, 2), (1, 12, 5, 2, 1, 3, 5, 15)),
    ((9, 8, 6), (1, 9, 8, 3, 2, 1, 2, 2)),
    ((27, 4, 6), (1, 27, 4, 3, 2, 3, 1, 3)),
]


def test_invariants_table():
    for (r, s, d), expected in INVARIANT_TABLE:
        inv = invariants(r, s, d)
        got = (inv.c, inv.a, inv.b, inv.d_a, inv.d_b, inv.a1, inv.b1, inv.n_half)
        assert got == expected, (r, s, d, got, expected)


def test_invariants_consistency_grid():
    # structural identities on every valid triple in a box
    seen = 0
    for r in range(1, 13):
        for s in range(1, 13):
            for d in range(1, 5):
                try:
                    inv = invariants(r, s, d)
                except (NotPrimitive, NotDivisible):
                    continue
                seen += 1
                assert inv.c * inv.a == r
                assert inv.c * inv.b == s
                assert inv.d_a * inv.d_b == d
                assert inv.a1 * inv.d_a**2 == inv.a
                assert inv.b1 * inv.d_b**2 == inv.b
                assert inv.n_half == inv.a1 * inv.b1 * inv.c**2
                assert 2 * r * s == 2 * inv.n_half * d * d
    assert seen > 100


def test_invariants_rejects_imprimitive():
    # gcd(r, d, s) > 1
    with pytest.raises(NotPrimitive):
        invariants(2, 2, 2)
    with pytest.raises(NotPrimitive):
        invariants(6, 3, 3)
    with pytest.raises(NotPrimitive):
        invariants(9, 3, 3)


def test_invariants_rejects_bad_divisor():
    # gcd conditions fine, but d^2 does not divide r*s
    with pytest.raises(NotDivisible):
        invariants(2, 1, 2)
    with pytest.raises(NotDivisible):
        invariants(3, 1, 3)
    with pytest.raises(NotDivisible):
        invariants(5, 5, 2)


def test_n_of_v():
    assert n_of_v(2, 2, 2) == 2
    assert n_of_v(2, 2, 1) == 1
    assert n_of_v(2, 1, 2) == 1
    assert n_of_v(6, 4, 4) == 2
    assert n_of_v(12, 18, 9) == 3


def test_gamma_split_cases():
    s = gamma_split(1, 1, 1)
    assert (s.gamma_a, s.gamma_b, s.gamma2) == (1, 1, 1)
    s = gamma_split(2, 1, 1)
    assert (s.gamma_a, s.gamma_b, s.gamma2) == (1, 1, 2)
    s = gamma_split(6, 3, 2)
    assert (s.gamma_a, s.gamma_b, s.gamma2) == (3, 2, 1)
    s = gamma_split(12, 3, 2)
    assert (s.gamma_a, s.gamma_b, s.gamma2) == (3, 2, 2)


def test_gamma_split_rejects():
    with pytest.raises(SplitFailure):
        gamma_split(4, 1, 1)  # 4 does not divide 2*1*1
    with pytest.raises(SplitFailure):
        gamma_split(0, 1, 1)
