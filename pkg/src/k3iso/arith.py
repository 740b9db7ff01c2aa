"""Gcd-level invariants of an isotropic Mukai vector (r, H, s) with H = d*h, h primitive.

Everything here is pure integer arithmetic: the decompositions are gcd-based,
no prime factorization is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NotDivisible, NotPrimitive, SplitFailure


@dataclass(frozen=True)
class MukaiInput:
    """Rank r >= 1, divisibility d >= 1 of the polarization, Euler part s >= 1."""

    r: int
    s: int
    d: int = 1

    def __post_init__(self):
        if self.r < 1 or self.s < 1 or self.d < 1:
            raise NotPrimitive("r, s, d must all be >= 1")


@dataclass(frozen=True)
class MukaiInvariants:
    r: int
    s: int
    d: int
    c: int    # gcd(r, s)
    a: int    # r / c
    b: int    # s / c
    d_a: int  # gcd(d, a)
    d_b: int  # gcd(d, b)
    a1: int   # a / d_a^2
    b1: int   # b / d_b^2
    n_half: int  # a1 * b1 * c^2; the primitive polarization has square 2*n_half


def invariants(r: int, s: int, d: int = 1) -> MukaiInvariants:
    """Split (r, s, d) into the coprime pieces used everywhere else.

    Raises NotPrimitive when gcd(r, d, s) > 1, NotDivisible when d^2 does not
    divide r*s (so the primitive polarization square 2*r*s/d^2 is not an even
    integer).
    """
    MukaiInput(r, s, d)
    c = gcd(r, s)
    if gcd(c, d) != 1:
        raise NotPrimitive(f"gcd(r, d, s) = {gcd(c, d)} > 1; vector not primitive")
    if (r * s) % (d * d) != 0:
        raise NotDivisible(f"d^2 = {d * d} does not divide r*s = {r * s}")
    a, b = r // c, s // c
    d_a, d_b = gcd(d, a), gcd(d, b)
    # d^2 | a*b together with gcd(a, b) = 1 forces the clean split below.
    if d_a * d_b != d or a % (d_a * d_a) != 0 or b % (d_b * d_b) != 0:
        raise NotDivisible(f"d = {d} does not split along a = {a}, b = {b}")
    a1, b1 = a // (d_a * d_a), b // (d_b * d_b)
    return MukaiInvariants(r, s, d, c, a, b, d_a, d_b, a1, b1, a1 * b1 * c * c)


def n_of_v(r: int, s: int, gamma: int) -> int:
    """Index of the transcendental sublattice: gcd(r, s, gamma).

    A self-isomorphism of the moduli surface forces this to be 1.
    """
    return gcd(gcd(r, s), gamma)


@dataclass(frozen=True)
class GammaSplit:
    gamma_a: int  # gcd(gamma, a1)
    gamma_b: int  # gcd(gamma, b1)
    gamma2: int   # gamma / (gamma_a * gamma_b), always 1 or 2


def gamma_split(gamma: int, a1: int, b1: int) -> GammaSplit:
    """Split the pairing divisor gamma along a1 and b1.

    Precondition: gamma | 2*a1*b1 and gcd(a1, b1) = 1; then the cofactor
    gamma2 is 1 or 2.  SplitFailure signals a violated precondition.
    """
    if gamma < 1:
        raise SplitFailure("gamma must be >= 1")
    gamma_a, gamma_b = gcd(gamma, a1), gcd(gamma, b1)
    if gamma % (gamma_a * gamma_b) != 0:
        raise SplitFailure(f"{gamma_a} * {gamma_b} does not divide gamma = {gamma}")
    gamma2 = gamma // (gamma_a * gamma_b)
    if gamma2 not in (1, 2):
        raise SplitFailure(f"cofactor {gamma2} not in {{1, 2}}; gamma | 2*a1*b1 violated")
    return GammaSplit(gamma_a, gamma_b, gamma2)
