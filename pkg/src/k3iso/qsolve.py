"""Exact solver for gamma*x^2 - delta*y^2 = m under divisibility constraints.

Decides solvability of the indefinite binary form equation completely: a None
answer is a proof of emptiness, not a failed bounded search.  The pipeline is

  1. substitute the constraints (y-divisibility, then the coupled congruence
     x = mu*y mod M, then x-divisibility) to get a sublattice basis B, pulling
     the form back to an unconstrained problem Q'(k) = m;
  2. divide out the content of Q';
  3. if disc(Q') is a perfect square, factor the split form (finitely many
     solutions, all enumerated); otherwise enumerate square roots of the
     discriminant modulo 4|n| for each square divisor e^2 | m, and test each
     candidate form for proper equivalence with Q' via reduction cycles,
     extracting an explicit transform when equivalent;
  4. map candidates back through B, minimise (|y|, |x|) lexicographically
     (stable over the fixed discovery order), and verify the winner exactly.

Also provides the independent bounded brute-force oracle enumerate_bounded,
and the Pell machinery (fundamental units, form automorphs) the non-split
branch needs for orbit minimisation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterator, Optional

from .errors import IncompatibleConstraints, ZeroTarget

try:  # optional fast path for the box scan; exact fallback always available
    import numpy as _np
except Exception:  # pragma: no cover - numpy is a declared dependency
    _np = None

Mat2 = tuple[tuple[int, int], tuple[int, int]]
Form = tuple[int, int, int]  # (a, b, c) for a*x^2 + b*x*y + c*y^2

_IDENT: Mat2 = ((1, 0), (0, 1))


# ---------------------------------------------------------------------------
# Pell units and automorphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PellUnit:
    """Minimal (t, u) with t^2 - disc*u^2 = 1 and u >= 1."""

    t: int
    u: int


@dataclass(frozen=True)
class SquareDiscriminant:
    """Marker: the discriminant is a perfect square, so no Pell unit exists."""

    root: int


def pell_fundamental(disc: int) -> PellUnit | SquareDiscriminant:
    """Fundamental solution of t^2 - disc*u^2 = 1 via continued fractions.

    Returns SquareDiscriminant(k) when disc = k^2 (the unit group is trivial).
    """
    if disc < 1:
        raise ValueError("discriminant must be a positive integer")
    a0 = isqrt(disc)
    if a0 * a0 == disc:
        return SquareDiscriminant(a0)
    # standard continued-fraction expansion of sqrt(disc); the convergents
    # p/q run through the fundamental solution of the +1 Pell equation
    m, d, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - disc * q * q != 1:
        m = d * a - m
        d = (disc - m * m) // d
        a = (a0 + m) // d
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return PellUnit(p, q)


def automorph(form: Form) -> Mat2:
    """Generator of the proper automorphism group of a nonsquare-disc form.

    For F = (a, b, c) with nonsquare positive discriminant D and (T, U) the
    Pell unit of D, the matrix [[T - U*b, -2*U*c], [2*U*a, T + U*b]] has
    determinant 1 and satisfies F(P*z) = F(z) for all z.
    """
    a, b, c = form
    unit = pell_fundamental(form_disc(form))
    if isinstance(unit, SquareDiscriminant):
        raise ValueError("split forms have no Pell automorph")
    t, u = unit.t, unit.u
    mat: Mat2 = ((t - u * b, -2 * u * c), (2 * u * a, t + u * b))
    assert transport(form, mat) == form
    return mat


# ---------------------------------------------------------------------------
# Binary form plumbing
# ---------------------------------------------------------------------------

def form_disc(form: Form) -> int:
    a, b, c = form
    return b * b - 4 * a * c


def transport(form: Form, mat: Mat2) -> Form:
    """The form F(mat * z), i.e. F transported along the column map mat."""
    a, b, c = form
    (p, q), (r, s) = mat
    return (
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


def form_eval(form: Form, z: tuple[int, int]) -> int:
    a, b, c = form
    x, y = z
    return a * x * x + b * x * y + c * y * y


def _mat_mul(u: Mat2, v: Mat2) -> Mat2:
    return (
        (u[0][0] * v[0][0] + u[0][1] * v[1][0], u[0][0] * v[0][1] + u[0][1] * v[1][1]),
        (u[1][0] * v[0][0] + u[1][1] * v[1][0], u[1][0] * v[0][1] + u[1][1] * v[1][1]),
    )


def _mat_vec(u: Mat2, z: tuple[int, int]) -> tuple[int, int]:
    return (u[0][0] * z[0] + u[0][1] * z[1], u[1][0] * z[0] + u[1][1] * z[1])


def _mat_inv_unimodular(u: Mat2) -> Mat2:
    det = u[0][0] * u[1][1] - u[0][1] * u[1][0]
    assert det in (1, -1)
    return (
        (u[1][1] * det, -u[0][1] * det),
        (-u[1][0] * det, u[0][0] * det),
    )


def _is_reduced(form: Form) -> bool:
    # classical: 0 < b < sqrt(D) and |sqrt(D) - 2|a|| < b, tested exactly
    a, b, _ = form
    d = form_disc(form)
    if b <= 0 or b * b >= d:
        return False
    t = d + 4 * a * a - b * b
    return t < 0 or t * t < 16 * a * a * d


def _rho(form: Form, sq: int) -> tuple[Form, Mat2]:
    """One reduction step; sq = isqrt(disc).  Returns (new form, column op)."""
    a, b, c = form
    ac = abs(c)
    if ac > sq:
        b1 = (-b) % (2 * ac)
        if b1 > ac:
            b1 -= 2 * ac
    else:
        b1 = sq - ((sq + b) % (2 * ac))
    n, rem = divmod(b + b1, 2 * c)
    assert rem == 0
    step: Mat2 = ((0, -1), (1, n))
    return (c, b1, a - b * n + c * n * n), step


def _reduce_form(form: Form) -> tuple[Form, Mat2]:
    """Reduce an indefinite nonsquare-disc form; returns (reduced, U) with
    reduced = form o U."""
    sq = isqrt(form_disc(form))
    u: Mat2 = _IDENT
    for _ in range(10000):
        if _is_reduced(form):
            return form, u
        form, step = _rho(form, sq)
        u = _mat_mul(u, step)
    raise AssertionError("form reduction failed to terminate")


def _cycle(reduced: Form) -> list[tuple[Form, Mat2]]:
    """The full cycle of a reduced form, each entry paired with the column
    transform from the cycle's base form."""
    sq = isqrt(form_disc(reduced))
    out = [(reduced, _IDENT)]
    form, step = _rho(reduced, sq)
    acc = step
    for _ in range(1000000):
        if form == reduced:
            return out
        out.append((form, acc))
        form, step = _rho(form, sq)
        acc = _mat_mul(acc, step)
    raise AssertionError("reduction cycle failed to close")


def _equiv_transform(src: Form, dst: Form, cycles: dict[Form, list[tuple[Form, Mat2]]]) -> Optional[Mat2]:
    """A unimodular U with dst = src o U if the forms are properly
    equivalent, else None.  `cycles` memoises reduction cycles."""
    red_s, u_s = _reduce_form(src)
    red_d, u_d = _reduce_form(dst)
    if red_s not in cycles:
        cycles[red_s] = _cycle(red_s)
    for candidate, walk in cycles[red_s]:
        if candidate == red_d:
            return _mat_mul(_mat_mul(u_s, walk), _mat_inv_unimodular(u_d))
    return None


# ---------------------------------------------------------------------------
# Split (square-discriminant) branch: complete factorisation
# ---------------------------------------------------------------------------

def _signed_divisors(n: int) -> Iterator[int]:
    """Divisors of |n|, positive ascending first, then negative.  The order is
    part of the witness-selection contract (discovery order breaks ties)."""
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    pos = small + large[::-1]
    yield from pos
    yield from (-d for d in pos)


def _split_all(form: Form, m: int) -> list[tuple[int, int]]:
    """All solutions of form(z) = m when disc(form) is a positive square.

    Split forms factor into two linear forms, so solutions biject with
    divisor pairs; the list is complete and ordered by divisor discovery.
    """
    a, b, c = form
    d = form_disc(form)
    k = isqrt(d)
    assert k * k == d and k > 0
    out: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    if a == 0:
        # F = y*(b*x + c*y); b = +-k != 0
        for y in _signed_divisors(m):
            rest = m // y - c * y
            x, rem = divmod(rest, b)
            if rem == 0 and (x, y) not in seen:
                seen.add((x, y))
                out.append((x, y))
    else:
        # 4a*F = (2a*x + (b-k)*y) * (2a*x + (b+k)*y)
        big = 4 * a * m
        for d1 in _signed_divisors(big):
            d2 = big // d1
            y, rem = divmod(d2 - d1, 2 * k)
            if rem:
                continue
            x, rem = divmod(d1 - (b - k) * y, 2 * a)
            if rem == 0 and (x, y) not in seen:
                seen.add((x, y))
                out.append((x, y))
    for z in out:
        assert form_eval(form, z) == m
    return out


# ---------------------------------------------------------------------------
# Nonsquare branch: square roots of the discriminant + cycle equivalence
# ---------------------------------------------------------------------------

def _square_divisors(m: int) -> list[int]:
    m = abs(m)
    return [e for e in range(1, isqrt(m) + 1) if m % (e * e) == 0]


def _nonsquare_candidates(form: Form, m: int, stats: dict) -> list[tuple[int, int]]:
    """One solution of form(z) = m per discovered (e, b)-class, in discovery
    order.  `form` must be primitive with nonsquare positive discriminant.
    Empty return is a completeness proof: every solution with content e would
    yield a square root b of the discriminant mod 4|m/e^2| and a properly
    equivalent candidate form, all of which were tested."""
    d = form_disc(form)
    cycles: dict[Form, list[tuple[Form, Mat2]]] = {}
    found: list[tuple[int, int]] = []
    for e in _square_divisors(m):
        n = m // (e * e)
        n4 = 4 * abs(n)
        for b in range(d % 2, 2 * abs(n), 2):
            if (b * b - d) % n4:
                continue
            stats["candidate_forms"] += 1
            cand: Form = (n, b, (b * b - d) // (4 * n))
            u = _equiv_transform(form, cand, cycles)
            if u is not None:
                found.append((e * u[0][0], e * u[1][0]))
    stats["cycle_forms"] = len(cycles)
    for z in found:
        assert form_eval(form, z) == m
    return found


def _walk_minimise(
    seed: tuple[int, int],
    step: Mat2,
    key,
) -> tuple[tuple[int, int], int]:
    """Minimise `key` over the orbit {step^n * seed : n in Z}.

    |y_n| is eventually increasing in both directions, so a windowed walk
    (stop after 3 consecutive non-improvements) finds the orbit minimum.
    Returns (best point, points visited).
    """
    best, best_key = seed, key(seed)
    visited = 1
    for mat in (step, _mat_inv_unimodular(step)):
        cur = seed
        misses = 0
        while misses < 3:
            cur = _mat_vec(mat, cur)
            visited += 1
            ck = key(cur)
            if ck < best_key:
                best, best_key = cur, ck
                misses = 0
            else:
                misses += 1
    return best, visited


# ---------------------------------------------------------------------------
# Constraints
# ---------------------------------------------------------------------------

def _lcm_all(moduli: tuple[int, ...]) -> int:
    out = 1
    for m in moduli:
        out = out // gcd(out, m) * m
    return out


@dataclass(frozen=True)
class ConstraintSet:
    """Divisibility constraints x ≡ 0 (mod n), y ≡ 0 (mod n), plus at most
    one coupled congruence x ≡ mu*y (mod M).

    All moduli must be >= 1.  General residues are rejected by construction:
    the complete reduction to unconstrained form problems needs the solution
    set to be a sublattice, which only homogeneous congruences give.
    """

    x_moduli: tuple[int, ...] = ()
    y_moduli: tuple[int, ...] = ()
    coupled: Optional[tuple[int, int]] = None  # (mu, M)

    def __post_init__(self) -> None:
        for m in (*self.x_moduli, *self.y_moduli):
            if m < 1:
                raise IncompatibleConstraints(f"modulus {m} < 1")
        if self.coupled is not None and self.coupled[1] < 1:
            raise IncompatibleConstraints(f"coupled modulus {self.coupled[1]} < 1")

    @property
    def x_lcm(self) -> int:
        return _lcm_all(self.x_moduli)

    @property
    def y_lcm(self) -> int:
        return _lcm_all(self.y_moduli)

    def satisfied_by(self, x: int, y: int) -> bool:
        if x % self.x_lcm or y % self.y_lcm:
            return False
        if self.coupled is not None:
            mu, mod = self.coupled
            if (x - mu * y) % mod:
                return False
        return True


def constraint_basis(cs: ConstraintSet) -> Mat2:
    """Column basis B of the sublattice {(x, y) satisfying cs}, built by the
    fixed substitution order: y = e_y * y', then x = mu*y + M*k, then the
    x-divisibility as a gcd condition on k."""
    e_x, e_y = cs.x_lcm, cs.y_lcm
    if cs.coupled is None:
        return ((e_x, 0), (0, e_y))
    mu, mod = cs.coupled
    g = gcd(mod, e_x)
    # x = mu*e_y*y1 + M*k must be divisible by e_x; solvable in k exactly
    # when g | mu*e_y*y1, so y1 runs over multiples of g2:
    g2 = g // gcd(g, mu * e_y)
    rhs = mu * e_y * g2 // g
    exg = e_x // g
    k0 = (-rhs * pow(mod // g, -1, exg)) % exg if exg > 1 else 0
    u1 = (mu * e_y * g2 + mod * k0, e_y * g2)
    u2 = (mod * exg, 0)
    basis: Mat2 = ((u1[0], u2[0]), (u1[1], u2[1]))
    assert cs.satisfied_by(*u1) and cs.satisfied_by(*u2)
    return basis


# ---------------------------------------------------------------------------
# The decision procedure
# ---------------------------------------------------------------------------

def _witness_key(z: tuple[int, int]) -> tuple[int, int]:
    return (abs(z[1]), abs(z[0]))


@dataclass
class RepResult:
    """Outcome of represent_detail: the chosen witness (or None, complete),
    plus solver statistics."""

    witness: Optional[tuple[int, int]]
    status: str  # "found" | "none" | "content"
    stats: dict = field(default_factory=dict)


def represent_detail(
    gamma: int,
    delta: int,
    m: int,
    constraints: Optional[ConstraintSet] = None,
) -> RepResult:
    """Complete decision for gamma*x^2 - delta*y^2 = m under `constraints`.

    The returned witness minimises (|y|, |x|) lexicographically among the
    deterministically discovered candidates (globally minimal in the split
    branch, which enumerates every solution).  A None witness carries a
    completeness guarantee.
    """
    if gamma < 1 or delta < 1:
        raise ValueError("gamma and delta must be positive integers")
    if m == 0:
        raise ZeroTarget("target m = 0 is rejected; the zero vector is not a witness")
    cs = constraints if constraints is not None else ConstraintSet()
    stats = {"path": "", "candidate_forms": 0, "cycle_forms": 0, "walk_points": 0}

    basis = constraint_basis(cs)
    pulled = transport((gamma, 0, -delta), basis)
    content = gcd(gcd(pulled[0], pulled[1]), pulled[2])
    if m % content:
        stats["path"] = "content"
        return RepResult(None, "content", stats)
    prim: Form = (pulled[0] // content, pulled[1] // content, pulled[2] // content)
    target = m // content

    disc = form_disc(prim)
    assert disc > 0, "gamma, delta >= 1 keeps the form indefinite"
    root = isqrt(disc)
    in_xy = lambda k: _mat_vec(basis, k)

    if root * root == disc:
        stats["path"] = "split"
        found_k = _split_all(prim, target)
    else:
        stats["path"] = "cycle"
        raw = _nonsquare_candidates(prim, target, stats)
        step = automorph(prim) if raw else None
        found_k = []
        seen: set[tuple[int, int]] = set()
        for z in raw:
            for seed in (z, (-z[0], -z[1])):
                best, visited = _walk_minimise(
                    seed, step, lambda k: _witness_key(in_xy(k))
                )
                stats["walk_points"] += visited
                if best not in seen:
                    seen.add(best)
                    found_k.append(best)

    if not found_k:
        return RepResult(None, "none", stats)
    solutions = [in_xy(k) for k in found_k]
    solutions.sort(key=_witness_key)  # stable: discovery order breaks ties
    x, y = solutions[0]
    assert gamma * x * x - delta * y * y == m and cs.satisfied_by(x, y)
    return RepResult((x, y), "found", stats)


def represent(
    gamma: int,
    delta: int,
    m: int,
    constraints: Optional[ConstraintSet] = None,
) -> Optional[tuple[int, int]]:
    """Witness of gamma*x^2 - delta*y^2 = m under the constraints, or None
    with a completeness guarantee.  See represent_detail."""
    return represent_detail(gamma, delta, m, constraints).witness


# ---------------------------------------------------------------------------
# Independent bounded oracle
# ---------------------------------------------------------------------------

def enumerate_bounded(
    gamma: int,
    delta: int,
    m: int,
    constraints: Optional[ConstraintSet] = None,
    bound: int = 10000,
) -> list[tuple[int, int]]:
    """All solutions with |x| <= bound and |y| <= bound, lexicographically
    ordered.  A plain box scan, independent of represent: for each admissible
    y it tests whether (m + delta*y^2)/gamma is a perfect square."""
    if gamma < 1 or delta < 1:
        raise ValueError("gamma and delta must be positive integers")
    if m == 0:
        raise ZeroTarget("target m = 0 is rejected; the zero vector is not a witness")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    cs = constraints if constraints is not None else ConstraintSet()
    e_y = cs.y_lcm
    y0 = -bound + ((bound) % e_y)  # smallest y >= -bound with e_y | y

    out: list[tuple[int, int]] = []
    use_numpy = (
        _np is not None
        and (bound // e_y) >= 512
        and abs(m) + delta * bound * bound < 2**52
    )
    if use_numpy:
        ys = _np.arange(y0, bound + 1, e_y, dtype=_np.int64)
        t = m + delta * ys * ys
        ok = (t >= 0) & (t % gamma == 0)
        ys, t = ys[ok], t[ok]
        q = t // gamma
        xf = _np.sqrt(q.astype(_np.float64)).astype(_np.int64)
        hit = None
        for shift in (-1, 0, 1):  # absorb float rounding at the edge
            cand = xf + shift
            good = (cand >= 0) & (cand * cand == q)
            hit = good if hit is None else (hit | good)
            xf = _np.where(good, cand, xf)
        pairs = [(int(x), int(y)) for x, y in zip(xf[hit], ys[hit])]
    else:
        pairs = []
        for y in range(y0, bound + 1, e_y):
            t = m + delta * y * y
            if t < 0:
                continue
            q, rem = divmod(t, gamma)
            if rem:
                continue
            x = isqrt(q)
            if x * x == q:
                pairs.append((x, y))

    for x, y in pairs:
        for sx in ((x, -x) if x else (0,)):
            if abs(sx) <= bound and cs.satisfied_by(sx, y):
                out.append((sx, y))
    out.sort()
    return out
