"""Symbolic Mukai vectors over a rank-2 polarized lattice and the universal
moduli morphisms that act on them.

A Mukai vector (rho, ell, sigma) tracks rank, first Chern class (a lattice
vector), and Euler data.  Four morphism kinds move between moduli spaces:

  * Reflection         (rho, ell, sigma) -> (sigma, ell, rho)
  * Twist(D)           (rho, ell, sigma) -> (rho, ell + rho*D,
                                             sigma + rho*D^2/2 + D.ell)
  * Nu(d1, d2)         (rho, ell, sigma) -> (d1^2 rho, d1 d2 ell, d2^2 sigma),
                        under the coprimality preconditions, and its inverse
  * Tyurin(sign, h1)   terminal step to the surface itself, applicable only
                        to vectors of the exact shape (sign*h1^2/2, h1, sign)

Only the Mukai-vector bookkeeping is modelled: each morphism is determined by
its effect on (rho, ell, sigma), which is what chain validation replays.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Union

from .errors import K3IsoError, NotInLattice, PreconditionViolated
from .lattice import LatticeVector, PolarizedLattice

#: Terminal target of a Tyurin step: the underlying surface, not a moduli space.
TERMINAL = "X"

#: The terminal step is a lattice-level certificate only; the geometric
#: regularity hypothesis behind it (vanishing of the section spaces of the
#: polarizing class and its negative) is not decidable from lattice data.
TYURIN_CAVEAT = (
    "terminal step assumes the regularity vanishing for +-h1; "
    "that hypothesis is geometric and is not checked by lattice arithmetic"
)


@dataclass(frozen=True)
class MukaiVector:
    """(rho, ell, sigma): rank, first Chern class, Euler component."""

    rho: int
    ell: LatticeVector
    sigma: int


def mukai_square(v: MukaiVector, lat: PolarizedLattice) -> int:
    """ell^2 - 2*rho*sigma; zero exactly for isotropic vectors."""
    return lat.pairing(v.ell, v.ell) - 2 * v.rho * v.sigma


def common_divisor(v: MukaiVector, lat: PolarizedLattice) -> int:
    """gcd of rho, sigma and the content of ell (0 for the zero vector)."""
    return gcd(gcd(abs(v.rho), abs(v.sigma)), lat.content(v.ell))


def is_isotropic(v: MukaiVector, lat: PolarizedLattice) -> bool:
    return mukai_square(v, lat) == 0


def is_primitive(v: MukaiVector, lat: PolarizedLattice) -> bool:
    return common_divisor(v, lat) == 1


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Reflection:
    """Swap rank and Euler components."""

    kind = "reflection"


@dataclass(frozen=True)
class Twist:
    """Tensor by the line bundle of class D."""

    d: LatticeVector
    kind = "twist"


@dataclass(frozen=True)
class Nu:
    """(rho, ell, sigma) -> (d1^2 rho, d1 d2 ell, d2^2 sigma)."""

    d1: int
    d2: int
    kind = "nu"


@dataclass(frozen=True)
class NuInverse:
    """Inverse of Nu(d1, d2) on vectors of the divisible shape."""

    d1: int
    d2: int
    kind = "nu_inverse"


@dataclass(frozen=True)
class Tyurin:
    """Terminal step: the moduli space of (sign*h1^2/2, h1, sign) is the
    surface itself (up to the regularity caveat)."""

    sign: int
    h1: LatticeVector
    kind = "tyurin"


Morphism = Union[Reflection, Twist, Nu, NuInverse, Tyurin]


def _require(cond: bool, kind: str, detail: str) -> None:
    if not cond:
        raise PreconditionViolated(f"{kind}: {detail}")


def _check_nu_preconditions(m: Nu, v: MukaiVector, lat: PolarizedLattice) -> None:
    _require(m.d1 >= 1 and m.d2 >= 1, m.kind, "d1, d2 must be positive")
    _require(gcd(m.d1, m.d2) == 1, m.kind, f"gcd(d1, d2) = {gcd(m.d1, m.d2)} != 1")
    _require(
        gcd(m.d1, v.sigma) == 1, m.kind, f"gcd(d1, sigma) = {gcd(m.d1, v.sigma)} != 1"
    )
    _require(gcd(m.d2, v.rho) == 1, m.kind, f"gcd(d2, rho) = {gcd(m.d2, v.rho)} != 1")
    _require(lat.content(v.ell) == 1, m.kind, "first Chern class must be primitive")


def apply(m: Morphism, v: MukaiVector, lat: PolarizedLattice) -> MukaiVector | str:
    """Apply one morphism, checking its preconditions.

    Returns the image Mukai vector, or TERMINAL for a Tyurin step.  Raises
    PreconditionViolated with the morphism kind and the failed condition.
    """
    if isinstance(m, Reflection):
        _require(v.rho >= 1 and v.sigma >= 1, m.kind, "needs rho >= 1 and sigma >= 1")
        _require(is_primitive(v, lat), m.kind, "vector must be primitive")
        _require(is_isotropic(v, lat), m.kind, "vector must be isotropic")
        return MukaiVector(v.sigma, v.ell, v.rho)

    if isinstance(m, Twist):
        d = lat.vector(m.d.x, m.d.y)  # validates membership
        dd = lat.pairing(d, d)
        half, rem = divmod(v.rho * dd, 2)
        assert rem == 0, "D^2 is even in an even lattice"
        ell = lat.vector(v.ell.x + v.rho * d.x, v.ell.y + v.rho * d.y)
        sigma = v.sigma + half + lat.pairing(d, v.ell)
        return MukaiVector(v.rho, ell, sigma)

    if isinstance(m, Nu):
        _check_nu_preconditions(m, v, lat)
        ell = lat.vector(m.d1 * m.d2 * v.ell.x, m.d1 * m.d2 * v.ell.y)
        return MukaiVector(m.d1 * m.d1 * v.rho, ell, m.d2 * m.d2 * v.sigma)

    if isinstance(m, NuInverse):
        _require(m.d1 >= 1 and m.d2 >= 1, m.kind, "d1, d2 must be positive")
        d1sq, d2sq, d12 = m.d1 * m.d1, m.d2 * m.d2, m.d1 * m.d2
        _require(v.rho % d1sq == 0, m.kind, f"d1^2 = {d1sq} must divide rho = {v.rho}")
        _require(
            v.sigma % d2sq == 0, m.kind, f"d2^2 = {d2sq} must divide sigma = {v.sigma}"
        )
        _require(
            v.ell.x % d12 == 0 and v.ell.y % d12 == 0,
            m.kind,
            "d1*d2 must divide the first Chern class",
        )
        try:
            ell = lat.vector(v.ell.x // d12, v.ell.y // d12)
        except NotInLattice as exc:
            raise PreconditionViolated(f"{m.kind}: {exc}") from exc
        out = MukaiVector(v.rho // d1sq, ell, v.sigma // d2sq)
        # the result must be a legal Nu source mapping back to v
        forward = Nu(m.d1, m.d2)
        _check_nu_preconditions(forward, out, lat)
        assert apply(forward, out, lat) == v
        return out

    if isinstance(m, Tyurin):
        _require(m.sign in (1, -1), m.kind, "sign must be +1 or -1")
        h1 = lat.vector(m.h1.x, m.h1.y)
        hsq = lat.pairing(h1, h1)
        _require(hsq != 0, m.kind, "h1 must have nonzero square")
        want = MukaiVector(m.sign * hsq // 2, h1, m.sign)
        _require(
            v == want,
            m.kind,
            f"vector {(v.rho, (v.ell.x, v.ell.y), v.sigma)} is not the Tyurin shape "
            f"{(want.rho, (h1.x, h1.y), want.sigma)}",
        )
        return TERMINAL

    raise PreconditionViolated(f"unknown morphism {m!r}")


# ---------------------------------------------------------------------------
# Twist conservation report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistReport:
    gcd_before: int
    gcd_after: int
    square_before: int
    square_after: int

    @property
    def ok(self) -> bool:
        return (
            self.gcd_before == self.gcd_after
            and self.square_before == self.square_after
        )


def twist_preserves(v: MukaiVector, d: LatticeVector, lat: PolarizedLattice) -> TwistReport:
    """Twisting never changes the common divisor or the Mukai square."""
    w = apply(Twist(d), v, lat)
    assert isinstance(w, MukaiVector)
    return TwistReport(
        gcd_before=common_divisor(v, lat),
        gcd_after=common_divisor(w, lat),
        square_before=mukai_square(v, lat),
        square_after=mukai_square(w, lat),
    )


# ---------------------------------------------------------------------------
# Chains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainStep:
    morphism: Morphism
    source: MukaiVector
    target: MukaiVector | str  # TERMINAL for the Tyurin step


@dataclass(frozen=True)
class Chain:
    """An ordered morphism chain with its source and every intermediate."""

    lattice: PolarizedLattice
    source: MukaiVector
    steps: tuple[ChainStep, ...]
    caveat: str = TYURIN_CAVEAT


def build_chain(
    lat: PolarizedLattice, source: MukaiVector, morphisms: list[Morphism]
) -> Chain:
    """Apply the morphisms in order, recording every intermediate vector."""
    steps = []
    cur: MukaiVector | str = source
    for m in morphisms:
        if not isinstance(cur, MukaiVector):
            raise PreconditionViolated("chain continues past its terminal step")
        nxt = apply(m, cur, lat)
        steps.append(ChainStep(m, cur, nxt))
        cur = nxt
    return Chain(lat, source, tuple(steps))


@dataclass(frozen=True)
class ChainReport:
    ok: bool
    failure: Optional[str]
    steps_checked: int


def validate_chain(chain: Chain) -> ChainReport:
    """Replay a chain from scratch and verify every claim it makes.

    Checks: consecutive sources and targets match; every morphism's
    preconditions hold; every intermediate Mukai vector is primitive and
    isotropic; the final step (and only the final step) is Tyurin, ending at
    the terminal target; at each Nu(1, d2) step, gcd(d2, rho) = 1 (implied by
    the preconditions; re-asserted explicitly because certificates rely on
    it).  Reports the first failure.
    """
    lat = chain.lattice

    def fail(i: int, msg: str) -> ChainReport:
        return ChainReport(False, f"step {i}: {msg}", i)

    if not chain.steps:
        return ChainReport(False, "empty chain", 0)
    cur = chain.source
    for i, step in enumerate(chain.steps):
        if step.source != cur:
            return fail(i, f"source mismatch: chain records {step.source}, replay has {cur}")
        if not is_primitive(cur, lat):
            return fail(i, f"intermediate {cur} is not primitive")
        if not is_isotropic(cur, lat):
            return fail(i, f"intermediate {cur} is not isotropic")
        last = i == len(chain.steps) - 1
        if last != isinstance(step.morphism, Tyurin):
            return fail(i, "Tyurin must be the final step and nothing else may be")
        if isinstance(step.morphism, Nu):
            d2, rho = step.morphism.d2, cur.rho
            if gcd(d2, rho) != 1:
                return fail(i, f"gcd(d2, rho) = gcd({d2}, {rho}) != 1")
        try:
            result = apply(step.morphism, cur, lat)
        except K3IsoError as exc:
            return fail(i, f"{type(exc).__name__}: {exc}")
        if result != step.target:
            return fail(i, f"target mismatch: chain records {step.target}, replay gives {result}")
        cur = result  # type: ignore[assignment]
    if cur != TERMINAL:
        return ChainReport(False, "chain does not end at the terminal target", len(chain.steps))
    return ChainReport(True, None, len(chain.steps))
