import pytest

from k3iso.errors import NotInLattice, PreconditionViolated
from k3iso.lattice import LatticeVector, PolarizedLattice
from k3iso.moduli import (
    Chain,
    ChainStep,
    MukaiVector,
    Nu,
    NuInverse,
    Reflection,
    TERMINAL,
    Twist,
    Tyurin,
    apply,
    build_chain,
    common_divisor,
    is_isotropic,
    is_primitive,
    mukai_square,
    twist_preserves,
    validate_chain,
)

L = PolarizedLattice(2, 1, 1, 1)  # M = 4, h = (4, 0), w = (1, 1)
H = LatticeVector(4, 0)


def test_mukai_square_and_divisor():
    v = MukaiVector(2, H, 1)
    assert mukai_square(v, L) == 0  # h^2 = 4 = 2*rho*sigma
    assert is_isotropic(v, L)
    assert common_divisor(v, L) == 1
    assert is_primitive(v, L)
    w = MukaiVector(2, LatticeVector(8, 0), 4)
    assert common_divisor(w, L) == 2
    assert mukai_square(w, L) == 16 - 16 == 0


def test_reflection():
    v = MukaiVector(2, H, 1)
    assert apply(Reflection(), v, L) == MukaiVector(1, H, 2)


def test_reflection_preconditions():
    with pytest.raises(PreconditionViolated):
        apply(Reflection(), MukaiVector(1, H, 1), L)  # square 2, not isotropic
    with pytest.raises(PreconditionViolated):
        apply(Reflection(), MukaiVector(0, LatticeVector(0, 0), 1), L)
    with pytest.raises(PreconditionViolated):
        apply(Reflection(), MukaiVector(2, LatticeVector(8, 0), 4), L)  # content 2


def test_twist():
    # tensoring (1, h, 2) by the class -w lands on (1, (3, -1), 1)
    v = MukaiVector(1, H, 2)
    out = apply(Twist(LatticeVector(-1, -1)), v, L)
    assert out == MukaiVector(1, LatticeVector(3, -1), 1)
    # and twisting back by +w returns the original
    back = apply(Twist(LatticeVector(1, 1)), out, L)
    assert back == v


def test_twist_membership_required():
    with pytest.raises(NotInLattice):
        apply(Twist(LatticeVector(1, 0)), MukaiVector(1, H, 2), L)


def test_twist_preserves_report():
    rep = twist_preserves(MukaiVector(1, H, 2), LatticeVector(-1, -1), L)
    assert rep.ok
    assert rep.square_before == rep.square_after == 0
    assert rep.gcd_before == rep.gcd_after == 1


def test_nu():
    v = MukaiVector(1, H, 1)
    out = apply(Nu(2, 3), v, L)
    assert out == MukaiVector(4, LatticeVector(24, 0), 9)


def test_nu_preconditions():
    v = MukaiVector(1, H, 1)
    with pytest.raises(PreconditionViolated):
        apply(Nu(2, 2), v, L)  # gcd(d1, d2) = 2
    with pytest.raises(PreconditionViolated):
        apply(Nu(1, 2), MukaiVector(2, H, 1), L)  # gcd(d2, rho) = 2
    with pytest.raises(PreconditionViolated):
        apply(Nu(2, 1), MukaiVector(1, H, 2), L)  # gcd(d1, sigma) = 2
    with pytest.raises(PreconditionViolated):
        apply(Nu(2, 3), MukaiVector(1, LatticeVector(8, 0), 1), L)  # content 2


def test_nu_inverse_round_trip():
    v = MukaiVector(1, H, 1)
    fwd = apply(Nu(2, 3), v, L)
    assert apply(NuInverse(2, 3), fwd, L) == v


def test_nu_inverse_rejects_indivisible():
    with pytest.raises(PreconditionViolated):
        apply(NuInverse(2, 1), MukaiVector(2, H, 1), L)  # 4 does not divide 2
    with pytest.raises(PreconditionViolated):
        apply(NuInverse(1, 3), MukaiVector(1, H, 3), L)  # 9 does not divide 3


def test_tyurin():
    v = MukaiVector(1, LatticeVector(3, -1), 1)  # (3,-1)^2 = 2
    assert apply(Tyurin(1, LatticeVector(3, -1)), v, L) == TERMINAL
    neg = MukaiVector(1, LatticeVector(-1, -1), -1)
    # (-1,-1) has square (1 - 9)/4... in L(2,1,9,1); here square is (1-1)/4 = 0
    with pytest.raises(PreconditionViolated):
        apply(Tyurin(-1, LatticeVector(-1, -1)), neg, L)  # zero square


def test_tyurin_shape_must_match():
    v = MukaiVector(2, LatticeVector(3, -1), 1)
    with pytest.raises(PreconditionViolated):
        apply(Tyurin(1, LatticeVector(3, -1)), v, L)
    with pytest.raises(PreconditionViolated):
        apply(Tyurin(2, LatticeVector(3, -1)), MukaiVector(1, LatticeVector(3, -1), 1), L)


def test_build_and_validate_chain():
    source = MukaiVector(2, H, 1)
    chain = build_chain(
        L,
        source,
        [
            NuInverse(1, 1),
            Reflection(),
            Nu(1, 1),
            Twist(LatticeVector(-1, -1)),
            Tyurin(1, LatticeVector(3, -1)),
        ],
    )
    assert len(chain.steps) == 5
    assert chain.steps[-1].target == TERMINAL
    report = validate_chain(chain)
    assert report.ok, report.failure
    assert report.steps_checked == 5


def test_validate_rejects_truncated_chain():
    source = MukaiVector(2, H, 1)
    chain = build_chain(L, source, [NuInverse(1, 1), Reflection()])
    report = validate_chain(chain)
    assert not report.ok
    assert "Tyurin" in report.failure


def test_validate_rejects_tampered_target():
    source = MukaiVector(2, H, 1)
    chain = build_chain(
        L,
        source,
        [
            Reflection(),
            Twist(LatticeVector(-1, -1)),
            Tyurin(1, LatticeVector(3, -1)),
        ],
    )
    assert validate_chain(chain).ok
    bad_step = ChainStep(
        chain.steps[1].morphism,
        chain.steps[1].source,
        MukaiVector(1, LatticeVector(7, 3), 1),
    )
    tampered = Chain(L, source, (chain.steps[0], bad_step, chain.steps[2]))
    report = validate_chain(tampered)
    assert not report.ok
    assert "mismatch" in report.failure


def test_validate_rejects_chain_past_terminal():
    source = MukaiVector(1, LatticeVector(3, -1), 1)
    with pytest.raises(PreconditionViolated):
        build_chain(
            L, source, [Tyurin(1, LatticeVector(3, -1)), Reflection()]
        )


def test_validate_rejects_empty():
    report = validate_chain(Chain(L, MukaiVector(2, H, 1), ()))
    assert not report.ok
