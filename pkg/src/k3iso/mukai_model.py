"""Independent period-level oracle over the rank-4 model lattice U + U.

Works in the fixed basis (e1, e2, f1, f2) with e1.e2 = -1, f1.f2 = +1 and all
other products zero.  For the model vector

    v = d1^2*a*c e1 + d2^2*b*c e2 + d1*d2*a*b*c^2 f1 + d1*d2 f2

(the bookkeeping image of the Mukai vector (d1^2 ac, d1 d2 H, d2^2 bc) with
H = abc^2 f1 + f2), the quotient v_perp / Zv is computed by exact integral
linear algebra: clear the pairing form to find a kernel basis, complete the
coefficient vector of v to a basis of the kernel, and read the quotient off
the remaining two basis vectors.  The report carries the quotient Gram, the
image of the reference vector t = -abc^2 f1 + f2 with its divisibility (the
index), the transcendental generator t~ = t_bar / index, the orthogonal
Picard generator h with its square, and an explicit change of basis bringing
the Gram to [[0, 1], [1, 0]].

verify_nu replays the identification between the (1, 1) quotient and the
(d1, d2) quotient and checks it is an isometry matching the transcendental
generators up to sign — the period-level verification of the Nu morphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .errors import NotIsotropic, NotPrimitive, PreconditionViolated

Vec4 = tuple[int, int, int, int]

#: pairing matrix of (e1, e2, f1, f2)
GRAM = (
    (0, -1, 0, 0),
    (-1, 0, 0, 0),
    (0, 0, 0, 1),
    (0, 0, 1, 0),
)


@dataclass(frozen=True)
class ModelVector:
    coords: Vec4  # over (e1, e2, f1, f2)

    def __iter__(self):
        return iter(self.coords)


def dot(u: ModelVector | Vec4, v: ModelVector | Vec4) -> int:
    a = tuple(u)
    b = tuple(v)
    return -(a[0] * b[1] + a[1] * b[0]) + (a[2] * b[3] + a[3] * b[2])


def build_v(a: int, b: int, c: int, d1: int = 1, d2: int = 1) -> ModelVector:
    """Model vector of the Mukai vector (d1^2 ac, d1 d2 H, d2^2 bc)."""
    _check_model_preconditions(a, b, c, d1, d2)
    v = ModelVector((d1 * d1 * a * c, d2 * d2 * b * c, d1 * d2 * a * b * c * c, d1 * d2))
    assert dot(v, v) == 0
    return v


def t_vector(a: int, b: int, c: int) -> ModelVector:
    """Reference vector whose quotient image generates the transcendental
    direction: t = -abc^2 f1 + f2."""
    return ModelVector((0, 0, -a * b * c * c, 1))


def _check_model_preconditions(a: int, b: int, c: int, d1: int, d2: int) -> None:
    if min(a, b, c, d1, d2) < 1:
        raise PreconditionViolated("model parameters must be positive")
    if gcd(a, b) != 1:
        raise PreconditionViolated(f"gcd(a, b) = {gcd(a, b)} != 1")
    if gcd(d1, b * c) != 1:
        raise PreconditionViolated(f"gcd(d1, b*c) = {gcd(d1, b * c)} != 1")
    if gcd(d2, a * c) != 1:
        raise PreconditionViolated(f"gcd(d2, a*c) = {gcd(d2, a * c)} != 1")
    if gcd(d1, d2) != 1:
        raise PreconditionViolated(f"gcd(d1, d2) = {gcd(d1, d2)} != 1")


# ---------------------------------------------------------------------------
# Exact integer linear algebra (small fixed sizes)
# ---------------------------------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, p, q) with p*a + q*b = g = gcd(a, b) >= 0."""
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


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _clear_row(w: list[int]) -> tuple[int, list[list[int]], list[list[int]]]:
    """Unimodular U (and V = U^-1) with w . U = (g, 0, ..., 0), g = gcd >= 0."""
    n = len(w)
    u = _identity(n)
    v = _identity(n)
    w = list(w)
    for j in range(1, n):
        a, b = w[0], w[j]
        if b == 0:
            continue
        g, p, q = _xgcd(a, b)
        a_, b_ = a // g, b // g
        for i in range(n):  # columns 0 and j of U: right-multiply by R
            c0, cj = u[i][0], u[i][j]
            u[i][0] = p * c0 + q * cj
            u[i][j] = -b_ * c0 + a_ * cj
        r0 = v[0]
        rj = v[j]
        v[0] = [a_ * x + b_ * y for x, y in zip(r0, rj)]  # rows of V: R^-1 from the left
        v[j] = [-q * x + p * y for x, y in zip(r0, rj)]
        w[0], w[j] = g, 0
    if w[0] < 0:
        for i in range(n):
            u[i][0] = -u[i][0]
        v[0] = [-x for x in v[0]]
        w[0] = -w[0]
    return w[0], u, v


def _mat_vec(m: list[list[int]], z) -> list[int]:
    return [sum(mi * zi for mi, zi in zip(row, z)) for row in m]


# ---------------------------------------------------------------------------
# Quotient computation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientReport:
    """v_perp / Zv with its invariants.

    gram: 2x2 Gram of the quotient basis (u1_bar, u2_bar), determinant -1.
    u_transform: unimodular S with S^T gram S = [[0, 1], [1, 0]].
    t_bar/index/t_tilde/h/h_sq: present when a reference vector was supplied.
    """

    v: ModelVector
    reps: tuple[Vec4, Vec4]  # lifts of the quotient basis to v_perp
    gram: tuple[tuple[int, int], tuple[int, int]]
    u_transform: tuple[tuple[int, int], tuple[int, int]]
    t_bar: Optional[tuple[int, int]] = None
    index: Optional[int] = None
    t_tilde: Optional[tuple[int, int]] = None
    h: Optional[tuple[int, int]] = None
    h_sq: Optional[int] = None
    _coords_data: Optional[tuple] = None  # (V 4x4, W 3x3) for coords()

    def coords(self, z: ModelVector | Vec4) -> tuple[int, int]:
        """Quotient coordinates of a vector of v_perp in the report basis."""
        assert dot(self.v, z) == 0, "vector must pair to zero against v"
        v4, w3 = self._coords_data
        k = _mat_vec(v4, tuple(z))
        assert k[0] == 0
        c3 = _mat_vec(w3, k[1:])
        return (c3[1], c3[2])


def _gram2(u1, u2) -> tuple[tuple[int, int], tuple[int, int]]:
    return ((dot(u1, u1), dot(u1, u2)), (dot(u2, u1), dot(u2, u2)))


def _u_congruence(g: tuple[tuple[int, int], tuple[int, int]]):
    """Unimodular S with S^T g S = [[0,1],[1,0]] for an even 2x2 Gram of
    determinant -1 (always exists: such lattices are the hyperbolic plane)."""
    (a, b), (_, c) = g

    def q(x: int, y: int) -> int:
        return a * x * x + 2 * b * x * y + c * y * y

    if a == 0:
        e = (1, 0)
    elif c == 0:
        e = (0, 1)
    else:
        ex, ey = -b + 1, a
        gg = gcd(ex, ey)
        e = (ex // gg, ey // gg)
    assert q(*e) == 0
    # partner with pairing 1 against e
    px = a * e[0] + b * e[1]
    py = b * e[0] + c * e[1]
    gg, p, qq = _xgcd(px, py)
    assert gg == 1, "primitive isotropic vector in a unimodular lattice"
    ep = (p, qq)
    corr = q(*ep) // 2
    epp = (ep[0] - corr * e[0], ep[1] - corr * e[1])
    s = ((e[0], epp[0]), (e[1], epp[1]))
    det = s[0][0] * s[1][1] - s[0][1] * s[1][0]
    assert det in (1, -1)
    got = _transport2(g, s)
    assert got == ((0, 1), (1, 0)), got
    return s


def _transport2(g, s):
    rows = range(2)
    gs = [[sum(g[i][k] * s[k][j] for k in rows) for j in rows] for i in rows]
    out = [[sum(s[k][i] * gs[k][j] for k in rows) for j in rows] for i in rows]
    return tuple(tuple(r) for r in out)


def perp_quotient(v: ModelVector, t: Optional[ModelVector] = None) -> QuotientReport:
    """Compute v_perp / Zv for a primitive isotropic v, optionally carrying
    along the image of a reference vector t (which must lie in v_perp)."""
    coords = tuple(v)
    if gcd(gcd(coords[0], coords[1]), gcd(coords[2], coords[3])) != 1:
        raise NotPrimitive(f"model vector {coords} is not primitive")
    if dot(v, v) != 0:
        raise NotIsotropic(f"model vector {coords} has square {dot(v, v)}")

    w = _mat_vec([list(r) for r in GRAM], coords)  # pairing functional of v
    g, u, u_inv = _clear_row(list(w))
    assert g == 1, "primitive vector in a unimodular lattice has unit content"
    kernel = [[u[i][j] for j in (1, 2, 3)] for i in range(4)]  # columns

    vc = _mat_vec(u_inv, coords)
    assert vc[0] == 0
    cvec = vc[1:]
    assert gcd(gcd(cvec[0], cvec[1]), cvec[2]) == 1
    g3, u3, v3 = _clear_row(list(cvec))
    assert g3 == 1
    w3 = [list(r) for r in zip(*u3)]  # W = U3^T satisfies W c = e1
    w3_inv = [list(r) for r in zip(*v3)]  # (U3^T)^-1 = V3^T
    # new kernel basis: first vector is v itself, the other two span the quotient
    basis = [
        [sum(kernel[i][k] * w3_inv[k][j] for k in range(3)) for j in range(3)]
        for i in range(4)
    ]
    assert [basis[i][0] for i in range(4)] == list(coords)
    u1 = tuple(basis[i][1] for i in range(4))
    u2 = tuple(basis[i][2] for i in range(4))
    gram = _gram2(u1, u2)
    assert gram[0][0] % 2 == 0 and gram[1][1] % 2 == 0
    det = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0]
    assert det == -1, f"quotient of the model lattice must be unimodular, got det {det}"
    s = _u_congruence(gram)

    report = QuotientReport(
        v=v,
        reps=(u1, u2),
        gram=gram,
        u_transform=s,
        _coords_data=([list(r) for r in u_inv], w3),
    )
    if t is None:
        return report

    if dot(v, t) != 0:
        raise PreconditionViolated("reference vector t must pair to zero against v")
    t_bar = report.coords(t)
    assert t_bar != (0, 0), "reference vector must not collapse into Zv"
    index = gcd(abs(t_bar[0]), abs(t_bar[1]))
    t_tilde = (t_bar[0] // index, t_bar[1] // index)
    # h spans the orthogonal complement of t~ in the quotient
    wx = gram[0][0] * t_tilde[0] + gram[0][1] * t_tilde[1]
    wy = gram[1][0] * t_tilde[0] + gram[1][1] * t_tilde[1]
    hg = gcd(abs(wx), abs(wy))
    h = (-wy // hg, wx // hg)
    if h[0] < 0 or (h[0] == 0 and h[1] < 0):
        h = (-h[0], -h[1])
    h_sq = (
        gram[0][0] * h[0] * h[0]
        + 2 * gram[0][1] * h[0] * h[1]
        + gram[1][1] * h[1] * h[1]
    )
    return QuotientReport(
        v=v,
        reps=(u1, u2),
        gram=gram,
        u_transform=s,
        t_bar=t_bar,
        index=index,
        t_tilde=t_tilde,
        h=h,
        h_sq=h_sq,
        _coords_data=report._coords_data,
    )


# ---------------------------------------------------------------------------
# Period-level verification of Nu
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NuReport:
    ok: bool
    detail: str
    index: int
    index_1: int
    h_sq: int
    gram: tuple
    gram_1: tuple


def model_report(a: int, b: int, c: int, d1: int = 1, d2: int = 1) -> QuotientReport:
    """Quotient report of the model vector for (a, b, c, d1, d2), carrying
    the reference vector t of the same (a, b, c)."""
    return perp_quotient(build_v(a, b, c, d1, d2), t_vector(a, b, c))


def verify_nu(a: int, b: int, c: int, d1: int, d2: int) -> NuReport:
    """Check that the (d1, d2) model has the same period data as the (1, 1)
    model: the explicit basis identification (alpha_bar -> alpha1_bar/d2,
    beta_bar -> beta1_bar/d1) must be an isometry matching the transcendental
    generators up to sign, and both quotients must report the same index c."""
    _check_model_preconditions(a, b, c, d1, d2)
    rep = model_report(a, b, c, 1, 1)
    rep1 = model_report(a, b, c, d1, d2)

    alpha = (1, 0, b * c, 0)
    beta = (0, 1, a * c, 0)
    alpha1 = (d1, 0, d2 * b * c, 0)
    beta1 = (0, d2, d1 * a * c, 0)

    ab = rep.coords(alpha)
    bb = rep.coords(beta)
    det = ab[0] * bb[1] - ab[1] * bb[0]
    if det not in (1, -1):
        return _nu_fail(rep, rep1, f"(alpha, beta) is not a quotient basis (det {det})")

    a1b = rep1.coords(alpha1)
    b1b = rep1.coords(beta1)
    if a1b[0] % d2 or a1b[1] % d2:
        return _nu_fail(rep, rep1, f"alpha1 image {a1b} not divisible by d2 = {d2}")
    if b1b[0] % d1 or b1b[1] % d1:
        return _nu_fail(rep, rep1, f"beta1 image {b1b} not divisible by d1 = {d1}")
    at = (a1b[0] // d2, a1b[1] // d2)
    bt = (b1b[0] // d1, b1b[1] // d1)
    det1 = at[0] * bt[1] - at[1] * bt[0]
    if det1 not in (1, -1):
        return _nu_fail(rep, rep1, f"(alpha1/d2, beta1/d1) is not a basis (det {det1})")

    def pair(g, z1, z2):
        return (
            g[0][0] * z1[0] * z2[0]
            + g[0][1] * (z1[0] * z2[1] + z1[1] * z2[0])
            + g[1][1] * z1[1] * z2[1]
        )

    gram_src = (
        (pair(rep.gram, ab, ab), pair(rep.gram, ab, bb)),
        (pair(rep.gram, bb, ab), pair(rep.gram, bb, bb)),
    )
    gram_dst = (
        (pair(rep1.gram, at, at), pair(rep1.gram, at, bt)),
        (pair(rep1.gram, bt, at), pair(rep1.gram, bt, bt)),
    )
    if gram_src != gram_dst:
        return _nu_fail(rep, rep1, f"identification is not an isometry: {gram_src} vs {gram_dst}")

    # transcendental generators in the two bases, compared up to global sign
    src = _solve2((ab, bb), rep.t_tilde)
    dst = _solve2((at, bt), rep1.t_tilde)
    if src != dst and src != (-dst[0], -dst[1]):
        return _nu_fail(rep, rep1, f"transcendental generators differ: {src} vs {dst}")

    if rep.index != c or rep1.index != c:
        return _nu_fail(rep, rep1, f"index mismatch: {rep.index}, {rep1.index}, expected {c}")
    return NuReport(True, "ok", rep.index, rep1.index, rep.h_sq, rep.gram, rep1.gram)


def _nu_fail(rep: QuotientReport, rep1: QuotientReport, detail: str) -> NuReport:
    return NuReport(False, detail, rep.index, rep1.index, rep.h_sq, rep.gram, rep1.gram)


def _solve2(basis: tuple[tuple[int, int], tuple[int, int]], target) -> tuple[int, int]:
    """Coordinates of target in an unimodular 2x2 column basis, exactly."""
    b1, b2 = basis
    det = b1[0] * b2[1] - b1[1] * b2[0]
    assert det in (1, -1)
    x = (target[0] * b2[1] - target[1] * b2[0]) * det
    y = (b1[0] * target[1] - b1[1] * target[0]) * det
    assert (b1[0] * x + b2[0] * y, b1[1] * x + b2[1] * y) == tuple(target)
    return (x, y)
