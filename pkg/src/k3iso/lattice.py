"""Rank-2 even hyperbolic lattices with a distinguished polarization.

A lattice is presented by (n_half, gamma, delta, mu): it is generated over Z by
h/1 and w = (mu*h + f)/M inside the rational span of h and f, where

    h^2 = 2*n_half > 0,    f is a generator of h-perp,    M = 2*n_half/gamma,
    h . N = gamma Z,       f^2 = -M*delta,                det N = -gamma*delta.

Vectors are coordinate pairs (x, y) meaning (x*h + y*f)/M; membership is the
congruence x = mu*y (mod M), and the pairing of (x, y) with (x', y') is
(gamma*x*x' - delta*y*y')/M.  mu is a unit mod M, determined up to sign;
we store the canonical residue min(mu mod M, -mu mod M) and fix the sign of f
by requiring w = (mu_canonical*h + f)/M to lie in the lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import (
    InvalidLattice,
    NotEven,
    NotHyperbolic,
    NotInLattice,
    NotPositive,
    NotPrimitivePolarization,
)


@dataclass(frozen=True)
class LatticeVector:
    x: int
    y: int

    def __iter__(self):
        return iter((self.x, self.y))


class PolarizedLattice:
    """Even hyperbolic rank-2 lattice with polarization h of square 2*n_half."""

    def __init__(self, n_half: int, gamma: int, delta: int, mu: int):
        if n_half < 1 or gamma < 1 or delta < 1:
            raise InvalidLattice("n_half, gamma, delta must all be >= 1")
        if (2 * n_half) % gamma != 0:
            raise InvalidLattice(f"gamma = {gamma} does not divide 2*n_half = {2 * n_half}")
        M = 2 * n_half // gamma
        mu = mu % M if M > 1 else 0
        if gcd(mu, M) != 1:
            raise InvalidLattice(f"mu = {mu} is not a unit mod M = {M}")
        if (delta - mu * mu * gamma) % (2 * M) != 0:
            raise InvalidLattice(
                f"delta = {delta} incompatible: delta = mu^2*gamma (mod {2 * M}) required")
        self.n_half = n_half
        self.gamma = gamma
        self.delta = delta
        self.mu = min(mu, (-mu) % M) if M > 1 else 0
        self.M = M

    def __eq__(self, other):
        return (isinstance(other, PolarizedLattice)
                and (self.n_half, self.gamma, self.delta, self.mu)
                == (other.n_half, other.gamma, other.delta, other.mu))

    def __hash__(self):
        return hash((self.n_half, self.gamma, self.delta, self.mu))

    def __repr__(self):
        return (f"PolarizedLattice(n_half={self.n_half}, gamma={self.gamma}, "
                f"delta={self.delta}, mu={self.mu})")

    # -- vectors ------------------------------------------------------------

    def is_member(self, x: int, y: int) -> bool:
        return (x - self.mu * y) % self.M == 0

    def vector(self, x: int, y: int) -> LatticeVector:
        if not self.is_member(x, y):
            raise NotInLattice(f"({x}, {y}): x = mu*y (mod {self.M}) fails")
        return LatticeVector(x, y)

    def h_vec(self) -> LatticeVector:
        return LatticeVector(self.M, 0)

    def w_vec(self) -> LatticeVector:
        return LatticeVector(self.mu, 1)

    def pairing(self, z1: LatticeVector, z2: LatticeVector) -> int:
        num = self.gamma * z1.x * z2.x - self.delta * z1.y * z2.y
        q, rem = divmod(num, self.M)
        if rem:
            raise NotInLattice(f"pairing of {z1} and {z2} is not integral")
        return q

    def norm(self, z: LatticeVector) -> int:
        return self.pairing(z, z)

    def content(self, z: LatticeVector) -> int:
        """gcd of the coefficients of z on the basis (h, w); 0 for the zero vector."""
        alpha, rem = divmod(z.x - self.mu * z.y, self.M)
        if rem:
            raise NotInLattice(f"{z} is not a lattice member")
        return gcd(alpha, z.y)

    def gram(self) -> list[list[int]]:
        """Gram matrix on the basis (h, w)."""
        wsq = (self.gamma * self.mu * self.mu - self.delta) // self.M
        return [[2 * self.n_half, self.gamma * self.mu], [self.gamma * self.mu, wsq]]

    def det(self) -> int:
        return -self.gamma * self.delta


def validate(n_half: int, gamma: int, delta: int, mu: int) -> bool:
    """True when the parameters present a lattice (mu taken up to sign)."""
    try:
        PolarizedLattice(n_half, gamma, delta, mu)
    except InvalidLattice:
        return False
    return True


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, p, q) with a*p + b*q = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class BasisMap:
    """Invertible map between Z^2 basis coordinates and (x, y) coordinates.

    h, f and w are recorded in the coordinates of the input Gram basis;
    z = (x*h + y*f)/M for lattice coordinates (x, y).
    """

    lattice: PolarizedLattice
    gram: tuple[tuple[int, int], tuple[int, int]]
    h: tuple[int, int]
    f: tuple[int, int]
    w: tuple[int, int]

    def _apply_gram(self, z: tuple[int, int]) -> tuple[int, int]:
        g = self.gram
        return (g[0][0] * z[0] + g[0][1] * z[1], g[1][0] * z[0] + g[1][1] * z[1])

    def _dot(self, u: tuple[int, int], z: tuple[int, int]) -> int:
        gz = self._apply_gram(z)
        return u[0] * gz[0] + u[1] * gz[1]

    def to_xy(self, z: tuple[int, int]) -> LatticeVector:
        L = self.lattice
        x, rx = divmod(self._dot(self.h, z), L.gamma)
        y, ry = divmod(-self._dot(self.f, z), L.delta)
        if rx or ry:
            raise NotInLattice(f"{z} has non-integral lattice coordinates")
        return L.vector(x, y)

    def from_xy(self, z: LatticeVector) -> tuple[int, int]:
        L = self.lattice
        out = []
        for i in (0, 1):
            num = z.x * self.h[i] + z.y * self.f[i]
            q, rem = divmod(num, L.M)
            if rem:
                raise NotInLattice(f"{z} does not map back to an integral vector")
            out.append(q)
        return (out[0], out[1])


def from_gram(gram, h) -> BasisMap:
    """Reconstruct the (n_half, gamma, delta, mu) presentation from a Gram matrix.

    gram is a symmetric 2x2 even integer matrix with det < 0 and h a primitive
    vector of positive square.  Returns the BasisMap carrying the presentation;
    the reconstruction is certified by an exact round-trip check.
    """
    g = [[int(gram[i][j]) for j in (0, 1)] for i in (0, 1)]
    if g[0][1] != g[1][0] or g[0][0] % 2 or g[1][1] % 2:
        raise NotEven("Gram matrix must be symmetric with even diagonal")
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    if det >= 0:
        raise NotHyperbolic(f"det = {det} is not negative")
    h = (int(h[0]), int(h[1]))
    if gcd(h[0], h[1]) != 1:
        raise NotPrimitivePolarization(f"h = {h} is not primitive")
    hG = (h[0] * g[0][0] + h[1] * g[1][0], h[0] * g[0][1] + h[1] * g[1][1])
    hsq = hG[0] * h[0] + hG[1] * h[1]
    if hsq <= 0:
        raise NotPositive(f"h^2 = {hsq} is not positive")
    n_half = hsq // 2
    gamma, p, q = _xgcd(hG[0], hG[1])
    delta = -det // gamma
    assert delta * gamma == -det, "gamma must divide det"
    M = 2 * n_half // gamma
    assert M * gamma == 2 * n_half, "gamma must divide 2*n_half"
    # primitive generator of h-perp; its square is forced to be -M*delta
    f0 = (hG[1] // gamma, -hG[0] // gamma)
    f0G = (f0[0] * g[0][0] + f0[1] * g[1][0], f0[0] * g[0][1] + f0[1] * g[1][1])
    assert f0G[0] * f0[0] + f0G[1] * f0[1] == -M * delta
    # w0 with h.w0 = gamma gives the second coordinate map
    w0 = (p, q)
    k = f0G[0] * w0[0] + f0G[1] * w0[1]
    assert k % delta == 0, "pairing ideal of f must be delta*Z"
    y0 = -k // delta
    assert gcd(y0, M) == 1
    mu_raw = pow(y0, -1, M) if M > 1 else 0
    mu = min(mu_raw, (-mu_raw) % M) if M > 1 else 0
    eps = 1 if mu == mu_raw else -1
    f = (eps * f0[0], eps * f0[1])
    lat = PolarizedLattice(n_half, gamma, delta, mu)
    # w = (mu*h + f)/M in Z^2 coordinates; integral because (mu, 1) is a member
    wz = []
    for i in (0, 1):
        num = lat.mu * h[i] + f[i]
        wi, rem = divmod(num, M)
        assert rem == 0, "w must be an integral vector"
        wz.append(wi)
    bm = BasisMap(lattice=lat, gram=(tuple(g[0]), tuple(g[1])), h=h, f=f,
                  w=(wz[0], wz[1]))
    _certify_round_trip(bm)
    return bm


def _certify_round_trip(bm: BasisMap) -> None:
    lat = bm.lattice
    # (h, w) must be a Z-basis of Z^2 and transport the Gram matrix exactly
    T = ((bm.h[0], bm.w[0]), (bm.h[1], bm.w[1]))
    if T[0][0] * T[1][1] - T[0][1] * T[1][0] not in (1, -1):
        raise InvalidLattice("reconstructed basis (h, w) is not unimodular")
    target = lat.gram()
    basis = [bm.h, bm.w]
    for i in (0, 1):
        for j in (0, 1):
            if bm._dot(basis[i], basis[j]) != target[i][j]:
                raise InvalidLattice("round-trip Gram mismatch")
    # coordinate maps invert each other on the basis vectors
    for vec, coords in ((lat.h_vec(), bm.h), (lat.w_vec(), bm.w)):
        if bm.from_xy(vec) != coords or bm.to_xy(coords) != vec:
            raise InvalidLattice("round-trip coordinate mismatch")
