"""The decision procedure: is the moduli space of (r, H, s) isomorphic to the
underlying surface, for rank-2 Picard data presented as a polarized lattice?

Pipeline: validate the arithmetic invariants of (r, s, d) against the lattice;
gate on n(v) = gcd(r, s, gamma) (an isomorphism forces n(v) = 1, so n(v) > 1
is a No for full Picard data); search the two series of candidate classes
(a-side and b-side, signs + and -) through the complete form solver; and for
a hit, synthesize the certificate (p1, q1, d2, D) and the morphism chain that
realizes the isomorphism, validated end to end.

Verdict semantics: Yes always carries a validated certificate and is sound
unconditionally.  No is only emitted when the supplied lattice is the full
Picard lattice of a general surface (the flag on DecisionInput); for proper
sublattices a failed search means Unknown, because a witness may exist
outside the sublattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .arith import GammaSplit, MukaiInvariants, gamma_split, invariants, n_of_v
from .errors import HypothesisViolated, K3IsoError, LatticeMismatch, SynthesisFailure
from .lattice import LatticeVector, PolarizedLattice
from .moduli import (
    Chain,
    Morphism,
    MukaiVector,
    Nu,
    NuInverse,
    Reflection,
    Twist,
    Tyurin,
    build_chain,
    validate_chain,
)
from .qsolve import ConstraintSet, represent_detail

SERIES_A = "A"
SERIES_B = "B"

#: fixed search order; makes outputs reproducible
SEARCH_ORDER = ((SERIES_A, 1), (SERIES_A, -1), (SERIES_B, 1), (SERIES_B, -1))


@dataclass(frozen=True)
class DecisionInput:
    r: int
    s: int
    d: int
    lattice: PolarizedLattice
    full_picard_general: bool = False


@dataclass(frozen=True)
class SeriesSpec:
    """Derived constants of one series: the norm target and the congruence
    constraints a witness must satisfy, plus the divisors used by
    certificate synthesis."""

    name: str
    norm_base: int  # witness must have square +-2*norm_base/2 ... i.e. z^2 = sign*norm_base
    x_div: int
    y_div: int
    q_mod: int  # q1 must be divisible by this (automatic; asserted)
    t_den: int  # (p1 - mu*q1) must be divisible by this
    d2_mod: int  # d2 lives mod this; also the divisor extracting D


def series_spec(inv: MukaiInvariants, split: GammaSplit, name: str) -> SeriesSpec:
    c, a1, b1 = inv.c, inv.a1, inv.b1
    ga, gb, g2 = split.gamma_a, split.gamma_b, split.gamma2
    if name == SERIES_A:
        return SeriesSpec(
            name=SERIES_A,
            norm_base=2 * b1 * c,
            x_div=(b1 // gb) * c,
            y_div=b1 * c,
            q_mod=gb,
            t_den=(2 // g2) * (a1 // ga) * c,
            d2_mod=b1 * c,
        )
    if name == SERIES_B:
        return SeriesSpec(
            name=SERIES_B,
            norm_base=2 * a1 * c,
            x_div=(a1 // ga) * c,
            y_div=a1 * c,
            q_mod=ga,
            t_den=(2 // g2) * (b1 // gb) * c,
            d2_mod=a1 * c,
        )
    raise ValueError(f"unknown series {name!r}")


def check_series(
    lat: PolarizedLattice,
    inv: MukaiInvariants,
    z: LatticeVector,
    name: str,
) -> Optional[int]:
    """Sign (+1/-1) if z satisfies every condition of the series, else None.

    Conditions: z^2 = sign * 2*b1*c (series A; a1 for B), x divisible by
    (b1/gamma_b)*c, y divisible by b1*c — equivalently the pairing conditions
    H~.z = gamma*x and f.z = -delta*y hitting their moduli.
    """
    split = gamma_split(lat.gamma, inv.a1, inv.b1)
    spec = series_spec(inv, split, name)
    zz = lat.pairing(z, z)
    if zz == spec.norm_base:
        sign = 1
    elif zz == -spec.norm_base:
        sign = -1
    else:
        return None
    if z.x % spec.x_div or z.y % spec.y_div:
        return None
    return sign


@dataclass(frozen=True)
class Certificate:
    """Everything needed to replay a Yes verdict by hand."""

    series: str
    sign: int
    witness: LatticeVector
    p1: int
    q1: int
    d2: int
    big_d: LatticeVector
    chain: Chain


@dataclass
class Verdict:
    kind: str  # "yes" | "no" | "unknown"
    certificate: Optional[Certificate]
    reason: str
    stats: dict = field(default_factory=dict)


def _hypothesis_gcd(inv: MukaiInvariants, lat: PolarizedLattice) -> int:
    return gcd(inv.c, inv.d * lat.gamma)


def find_witness(
    lat: PolarizedLattice,
    inv: MukaiInvariants,
    series_filter: Optional[str] = None,
    stats: Optional[dict] = None,
) -> Optional[tuple[str, int, LatticeVector]]:
    """First (series, sign, witness) hit in the fixed order A/+, A/-, B/+, B/-.

    Each attempt is a complete decision, so None means no witness exists in
    this lattice for any admissible series and sign.
    """
    if _hypothesis_gcd(inv, lat) != 1:
        raise HypothesisViolated(
            f"gcd(c, d*gamma) = {_hypothesis_gcd(inv, lat)} != 1"
        )
    split = gamma_split(lat.gamma, inv.a1, inv.b1)
    for name, sign in SEARCH_ORDER:
        if series_filter is not None and name != series_filter:
            continue
        spec = series_spec(inv, split, name)
        cs = ConstraintSet(
            x_moduli=(spec.x_div,),
            y_moduli=(spec.y_div,),
            coupled=(lat.mu, lat.M),
        )
        res = represent_detail(lat.gamma, lat.delta, sign * spec.norm_base * lat.M, cs)
        if stats is not None:
            stats["attempts"] = stats.get("attempts", 0) + 1
            stats["candidate_forms"] = (
                stats.get("candidate_forms", 0) + res.stats["candidate_forms"]
            )
            stats["walk_points"] = stats.get("walk_points", 0) + res.stats["walk_points"]
        if res.witness is not None:
            z = lat.vector(*res.witness)
            got = check_series(lat, inv, z, name)
            assert got == sign, "solver witness must satisfy the series conditions"
            return (name, sign, z)
    return None


def certificate(
    lat: PolarizedLattice,
    inv: MukaiInvariants,
    series: str,
    sign: int,
    z: LatticeVector,
) -> Certificate:
    """Synthesize (p1, q1, d2, D) and the morphism chain for an accepted
    witness.  Every division is exact for a witness passing check_series;
    a failure is reported as SynthesisFailure (it indicates a bug, not a
    property of the input)."""
    if check_series(lat, inv, z, series) != sign:
        raise SynthesisFailure("witness does not satisfy the series conditions")
    split = gamma_split(lat.gamma, inv.a1, inv.b1)
    spec = series_spec(inv, split, series)

    def exact(num: int, den: int, what: str) -> int:
        q, rem = divmod(num, den)
        if rem:
            raise SynthesisFailure(f"{what}: {num} not divisible by {den}")
        return q

    p1 = exact(z.x, spec.x_div, "p1")
    q1 = exact(z.y, spec.x_div, "q1")
    if q1 % spec.q_mod:
        raise SynthesisFailure(f"q1 = {q1} not divisible by {spec.q_mod}")
    t = exact(p1 - lat.mu * q1, spec.t_den, "t")
    d2 = t % spec.d2_mod
    if d2 == 0:
        d2 = spec.d2_mod
    dx = exact(z.x - d2 * lat.M, spec.d2_mod, "D.x")
    dy = exact(z.y, spec.d2_mod, "D.y")
    try:
        big_d = lat.vector(dx, dy)
    except K3IsoError as exc:
        raise SynthesisFailure(f"D = ({dx}, {dy}) is not a lattice vector: {exc}") from exc

    source = MukaiVector(inv.r, lat.vector(inv.d * lat.M, 0), inv.s)
    morphisms: list[Morphism] = [NuInverse(inv.d_a, inv.d_b)]
    if series == SERIES_A:
        morphisms.append(Reflection())
    morphisms.append(Nu(1, d2))
    morphisms.append(Twist(big_d))
    morphisms.append(Tyurin(sign, z))
    try:
        chain = build_chain(lat, source, morphisms)
    except K3IsoError as exc:
        raise SynthesisFailure(f"chain assembly failed: {exc}") from exc
    report = validate_chain(chain)
    if not report.ok:
        raise SynthesisFailure(f"chain validation failed: {report.failure}")
    return Certificate(series, sign, z, p1, q1, d2, big_d, chain)


def decide(inp: DecisionInput, series_filter: Optional[str] = None) -> Verdict:
    """Decide whether the moduli space of (r, d*H~, s) is isomorphic to the
    surface, over the supplied rank-2 lattice.

    Yes verdicts carry a fully validated certificate chain and hold for any
    lattice containing the data.  No verdicts additionally require
    full_picard_general (otherwise the honest answer is Unknown).
    """
    inv = invariants(inp.r, inp.s, inp.d)
    lat = inp.lattice
    if lat.n_half != inv.n_half:
        raise LatticeMismatch(
            f"lattice has n_half = {lat.n_half}, but (r, s, d) = "
            f"({inp.r}, {inp.s}, {inp.d}) forces n_half = {inv.n_half}"
        )
    stats: dict = {}
    nv = n_of_v(inp.r, inp.s, lat.gamma)
    if nv != 1:
        reason = f"n(v) = gcd(r, s, gamma) = {nv} != 1"
        if inp.full_picard_general:
            return Verdict("no", None, reason + "; an isomorphism forces n(v) = 1", stats)
        return Verdict(
            "unknown",
            None,
            reason + "; criterion hypothesis gcd(c, d*gamma) = 1 fails for this sublattice",
            stats,
        )
    hit = find_witness(lat, inv, series_filter=series_filter, stats=stats)
    if hit is not None:
        series, sign, z = hit
        cert = certificate(lat, inv, series, sign, z)
        return Verdict("yes", cert, f"series {series}, sign {sign:+d} witness", stats)
    if inp.full_picard_general:
        return Verdict(
            "no",
            None,
            "no series witness exists (complete search over both series and signs)",
            stats,
        )
    return Verdict("unknown", None, "no witness in the given sublattice", stats)
